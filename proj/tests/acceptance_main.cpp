// Acceptance suite: one line per check, one summary line per criterion,
// nonzero exit on any failure.

#include <iostream>
#include <map>

#include "pvsum/verify.hpp"

int main() {
    std::vector<pvsum::CheckResult> results;
    try {
        results = pvsum::run_all_verify();
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 2;
    }
    std::map<int, bool> criterion_pass;
    for (const auto& c : results) {
        pvsum::print_check_line(c, std::cout);
        auto [it, inserted] = criterion_pass.try_emplace(c.criterion, c.pass);
        if (!inserted) it->second = it->second && c.pass;
    }
    bool all = true;
    std::cout << "----\n";
    for (const auto& [criterion, pass] : criterion_pass) {
        std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << criterion << "\n";
        all = all && pass;
    }
    std::cout << (all ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT")
              << "\n";
    return all ? 0 : 1;
}

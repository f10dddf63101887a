#ifndef PVSUM_VERIFY_HPP
#define PVSUM_VERIFY_HPP

#include <string>
#include <vector>

namespace pvsum {

struct CheckResult {
    int criterion = 0;
    std::string name;
    double observed = 0.0;   // the margin quantity (error, gap, |z|, ...)
    double threshold = 0.0;  // pass iff observed <= threshold
    bool pass = false;
    double seconds = 0.0;
};

// Acceptance criteria, grouped into named suites.
std::vector<std::string> verify_suite_names();
std::vector<CheckResult> run_verify_suite(const std::string& name);
std::vector<CheckResult> run_all_verify();

// One line per check: "PASS|FAIL  [k] name  observed <= threshold  (time)"
void print_check_line(const CheckResult& c, std::ostream& os);

}  // namespace pvsum

#endif

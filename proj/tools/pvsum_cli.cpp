// pvsum: batch front-end for the Hua-Pickrell / Bessel principal-value-sum
// library.  Subcommands compute moments, densities, characteristic and
// Laplace transforms, Painleve residual certificates, Monte Carlo estimates,
// and run the verification suites.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvsum/bessel_laguerre.hpp"
#include "pvsum/ensembles.hpp"
#include "pvsum/hua_charfn.hpp"
#include "pvsum/oracles.hpp"
#include "pvsum/painleve.hpp"
#include "pvsum/specfun.hpp"
#include "pvsum/verify.hpp"
#include "pvsum/xs_distribution.hpp"

#ifndef PVSUM_GIT_HASH
#define PVSUM_GIT_HASH "unknown"
#endif

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// "lo:hi:n" (linear), comma list, or a single value
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double lo, hi;
        int n;
        char c1, c2;
        std::istringstream is(spec);
        if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
            throw std::domain_error("bad grid spec: " + spec);
        if (n == 1) return {lo};
        for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
        return out;
    }
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw std::domain_error("empty grid spec");
    return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw std::domain_error("empty list");
    return out;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    json params;

    void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }
};

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    return q + "\"";
}

void emit(const Table& t, const std::string& format, const std::string& out_path) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        std::string path = out_path;
        const char* dir = std::getenv("PVSUM_OUT_DIR");
        if (dir && !out_path.empty() && out_path.front() != '/')
            path = std::string(dir) + "/" + out_path;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        os = &file;
    }
    if (format == "json") {
        json doc;
        doc["params"] = t.params;
        json rows = json::array();
        for (const auto& r : t.rows) {
            json row = json::object();
            for (size_t i = 0; i < t.header.size(); ++i) row[t.header[i]] = r[i];
            rows.push_back(row);
        }
        doc["rows"] = rows;
        doc["meta"] = {{"version", kVersion}, {"git_hash", PVSUM_GIT_HASH}};
        *os << doc.dump(2) << "\n";
    } else {
        for (size_t i = 0; i < t.header.size(); ++i)
            *os << (i ? "," : "") << csv_quote(t.header[i]);
        *os << "\r\n";
        for (const auto& r : t.rows) {
            for (size_t i = 0; i < r.size(); ++i) *os << (i ? "," : "") << csv_quote(r[i]);
            *os << "\r\n";
        }
    }
}

const char* moment_method_name(pvsum::MomentMethod m) {
    switch (m) {
        case pvsum::MomentMethod::closed_s0: return "closed_s0";
        case pvsum::MomentMethod::hyp_s1: return "hyp_s1";
        case pvsum::MomentMethod::hyp_s2: return "hyp_s2";
        case pvsum::MomentMethod::general_series: return "general_series";
        case pvsum::MomentMethod::lhopital: return "lhopital";
    }
    return "?";
}

const char* density_method_name(pvsum::DensityMethod m) {
    switch (m) {
        case pvsum::DensityMethod::cauchy_s0: return "cauchy_s0";
        case pvsum::DensityMethod::closed_s1: return "closed_s1";
        case pvsum::DensityMethod::hyp2f2_s2: return "hyp2f2_s2";
        case pvsum::DensityMethod::general_series: return "general_series";
    }
    return "?";
}

const char* charfn_method_name(pvsum::CharFnMethod m) {
    switch (m) {
        case pvsum::CharFnMethod::closed_form_s0: return "closed_form_s0";
        case pvsum::CharFnMethod::bessel_det: return "bessel_det";
        case pvsum::CharFnMethod::small_t_series: return "small_t_series";
        case pvsum::CharFnMethod::hankel_det: return "hankel_det";
        case pvsum::CharFnMethod::laguerre_det: return "laguerre_det";
    }
    return "?";
}

// JSON config support for CLI11 (flat keys, or one nesting level keyed by
// subcommand name).
class ConfigJson : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        input >> j;
        std::vector<CLI::ConfigItem> items;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_object()) {
                for (auto inner = it->begin(); inner != it->end(); ++inner) {
                    CLI::ConfigItem item;
                    item.parents = {it.key()};
                    item.name = inner.key();
                    item.inputs = {to_string(*inner)};
                    items.push_back(item);
                }
            } else {
                CLI::ConfigItem item;
                item.name = it.key();
                item.inputs = {to_string(*it)};
                items.push_back(item);
            }
        }
        return items;
    }

  private:
    static std::string to_string(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    }
};

int run(int argc, char** argv) {
    CLI::App app{"numerics for principal-value sums of Hua-Pickrell and Bessel "
                 "point processes and their sigma-Painleve certificates"};
    app.config_formatter(std::make_shared<ConfigJson>());
    app.set_config("--config", "", "JSON run configuration");
    app.require_subcommand(1);

    std::string format = "csv", out_path;
    app.add_option("--output", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default stdout; relative paths "
                                      "resolve against $PVSUM_OUT_DIR)");

    // ---- moment ----
    auto* cmd_moment = app.add_subcommand("moment", "joint-moment values R(s,h) and E|X|^{2h}");
    int m_s = 1;
    std::string m_h = "1";
    cmd_moment->add_option("--s", m_s, "integer parameter s >= 0")->required();
    cmd_moment->add_option("--h", m_h, "h value, comma list, or lo:hi:n grid")->required();

    // ---- density ----
    auto* cmd_density = app.add_subcommand("density", "density of X(s)");
    int d_s = 1;
    std::string d_x = "0";
    cmd_density->add_option("--s", d_s, "integer parameter s >= 0")->required();
    cmd_density->add_option("--x", d_x, "x value, comma list, or lo:hi:n grid")->required();

    // ---- charfn ----
    auto* cmd_charfn = app.add_subcommand("charfn", "characteristic function of X(s)");
    double c_s = 1.0;
    std::string c_t = "1";
    int c_finite_n = 0;
    cmd_charfn->add_option("--s", c_s, "parameter s > -1/2 (integer unless --finite-N)")
        ->required();
    cmd_charfn->add_option("--t", c_t, "t value, comma list, or lo:hi:n grid")->required();
    cmd_charfn->add_option("--finite-N", c_finite_n, "evaluate phi_N instead of the limit");

    // ---- residual ----
    auto* cmd_residual = app.add_subcommand("residual", "Painleve residual certificates");
    std::string r_eq = "sigma_p3_inf";
    double r_s = 1.0, r_nu = 1.0, r_alpha = 0.0, r_lambda = 0.0;
    int r_N = 4;
    std::string r_t = "0.05:8:16", r_N_list = "4,8,16";
    bool r_geometric = true;
    cmd_residual
        ->add_option("--equation", r_eq, "equation")
        ->check(CLI::IsMember({"sigma_p3_inf", "p5_finite_N", "hankel_sigma",
                               "bessel_inf", "bessel_finite_N"}));
    cmd_residual->add_option("--s", r_s, "s (sigma_p3_inf, p5_finite_N)");
    cmd_residual->add_option("--nu", r_nu, "nu (bessel equations)");
    cmd_residual->add_option("--alpha", r_alpha, "alpha (hankel_sigma)");
    cmd_residual->add_option("--lambda", r_lambda, "lambda (hankel_sigma)");
    cmd_residual->add_option("--N", r_N, "matrix size (finite-N equations)");
    cmd_residual->add_option("--N-list", r_N_list, "extrapolation ladder (bessel_inf)");
    cmd_residual->add_option("--t-grid", r_t, "grid spec lo:hi:n or comma list");
    cmd_residual->add_flag("--geometric,!--linear", r_geometric,
                           "geometric vs linear lo:hi:n grids");

    // ---- bessel ----
    auto* cmd_bessel = app.add_subcommand("bessel", "Laplace transforms psi_N and h extrapolation");
    double b_nu = 1.5;
    std::string b_N_list = "4,8,16", b_t = "0.5,1,2";
    cmd_bessel->add_option("--nu", b_nu, "nu > -1")->required();
    cmd_bessel->add_option("--N-list", b_N_list, "comma list of N");
    cmd_bessel->add_option("--t", b_t, "t value, comma list, or lo:hi:n grid");

    // ---- simulate ----
    auto* cmd_simulate = app.add_subcommand("simulate", "Monte Carlo ensemble estimates");
    std::string sim_ensemble = "hua_pickrell", sim_stat = "charfn", sim_t = "1";
    double sim_s = 0.0;
    int sim_N = 4, sim_n = 10000;
    std::uint64_t sim_seed = 1;
    int sim_thinning = 64, sim_burnin = 4000;
    cmd_simulate->add_option("--ensemble", sim_ensemble)
        ->check(CLI::IsMember({"hua_pickrell", "lue", "inverse_laguerre"}));
    cmd_simulate->add_option("--s,--nu", sim_s, "s or nu");
    cmd_simulate->add_option("--N", sim_N, "matrix size");
    cmd_simulate->add_option("--stat", sim_stat)
        ->check(CLI::IsMember({"charfn", "laplace", "mean"}));
    cmd_simulate->add_option("--t", sim_t, "t value, comma list, or lo:hi:n grid");
    cmd_simulate->add_option("--seed", sim_seed, "RNG seed");
    cmd_simulate->add_option("--n", sim_n, "number of samples");
    cmd_simulate->add_option("--thinning", sim_thinning, "MCMC thinning (hua_pickrell)");
    cmd_simulate->add_option("--burn-in", sim_burnin, "MCMC burn-in (hua_pickrell)");
    bool sim_export = false;
    cmd_simulate->add_flag("--export-samples", sim_export,
                           "emit the raw sample batch instead of estimates");

    // ---- verify ----
    auto* cmd_verify = app.add_subcommand("verify", "acceptance-criteria checks");
    std::string v_suite = "all";
    cmd_verify->add_option("--suite", v_suite, "suite name or 'all'");
    bool v_list = false;
    cmd_verify->add_flag("--list", v_list, "list available suites");

    CLI11_PARSE(app, argc, argv);

    Table table;

    if (*cmd_moment) {
        table.params = {{"command", "moment"}, {"s", m_s}, {"h", m_h}};
        table.header = {"h", "R", "abs_moment", "method", "err_est"};
        for (double h : parse_grid(m_h)) {
            pvsum::MomentResult r = pvsum::moment_R(m_s, pvsum::complex(h, 0.0));
            double am = pvsum::abs_moment(m_s, h);
            table.add_row({fmt17(h), fmt17(r.value.real()), fmt17(am),
                           moment_method_name(r.method), fmt17(r.err_est)});
        }
        emit(table, format, out_path);
        return 0;
    }
    if (*cmd_density) {
        table.params = {{"command", "density"}, {"s", d_s}, {"x", d_x}};
        table.header = {"x", "rho", "method", "err_est"};
        for (double x : parse_grid(d_x)) {
            pvsum::DensityValue v = pvsum::rho(d_s, x);
            table.add_row({fmt17(x), fmt17(v.rho), density_method_name(v.method),
                           fmt17(v.err_est)});
        }
        emit(table, format, out_path);
        return 0;
    }
    if (*cmd_charfn) {
        table.params = {{"command", "charfn"}, {"s", c_s}, {"t", c_t},
                        {"finite_N", c_finite_n}};
        table.header = {"t", "phi", "method", "err_est"};
        for (double t : parse_grid(c_t)) {
            pvsum::CharFnValue v;
            if (c_finite_n > 0) {
                v = pvsum::phi_finite_N(c_s, c_finite_n, t);
            } else {
                int si = static_cast<int>(std::lround(c_s));
                if (std::abs(c_s - si) > 1e-12)
                    throw std::domain_error(
                        "charfn: the N = infinity closed form needs integer s "
                        "(use --finite-N for real s)");
                v = pvsum::phi_exact(si, t);
            }
            table.add_row({fmt17(t), fmt17(v.value), charfn_method_name(v.method),
                           fmt17(v.err_est)});
        }
        emit(table, format, out_path);
        return 0;
    }
    if (*cmd_residual) {
        pvsum::PainleveEquation eq;
        if (r_eq == "sigma_p3_inf") eq = pvsum::PainleveEquation::sigma_p3_inf;
        else if (r_eq == "p5_finite_N") eq = pvsum::PainleveEquation::p5_finite_N;
        else if (r_eq == "hankel_sigma") eq = pvsum::PainleveEquation::hankel_sigma;
        else if (r_eq == "bessel_inf") eq = pvsum::PainleveEquation::bessel_inf;
        else eq = pvsum::PainleveEquation::bessel_finite_N;
        std::vector<double> grid;
        if (r_t.find(':') != std::string::npos && r_geometric) {
            double lo, hi;
            int n;
            char c1, c2;
            std::istringstream is(r_t);
            is >> lo >> c1 >> hi >> c2 >> n;
            grid = pvsum::geometric_grid(lo, hi, n);
        } else {
            grid = parse_grid(r_t);
        }
        pvsum::ResidualParams params;
        params.s = r_s;
        params.nu = r_nu;
        params.alpha = r_alpha;
        params.lambda = r_lambda;
        params.N = r_N;
        params.N_list = parse_int_list(r_N_list);
        pvsum::ResidualReport rep = pvsum::residual_report(eq, params, grid);
        table.params = {{"command", "residual"}, {"equation", r_eq}, {"s", r_s},
                        {"nu", r_nu},            {"alpha", r_alpha}, {"lambda", r_lambda},
                        {"N", r_N},              {"max_abs", rep.max_abs}};
        table.header = {"t", "residual_normalized", "residual_raw"};
        for (size_t i = 0; i < rep.grid.size(); ++i)
            table.add_row({fmt17(rep.grid[i]), fmt17(rep.residuals[i]),
                           fmt17(rep.raw_residuals[i])});
        emit(table, format, out_path);
        return 0;
    }
    if (*cmd_bessel) {
        std::vector<int> Ns = parse_int_list(b_N_list);
        table.params = {{"command", "bessel"}, {"nu", b_nu}, {"N_list", b_N_list}};
        table.header = {"t"};
        for (int N : Ns) table.header.push_back("psi_" + std::to_string(N));
        for (int N : Ns) table.header.push_back("xi_" + std::to_string(N));
        table.header.push_back("h_extrapolated");
        table.header.push_back("h_err_est");
        for (double t : parse_grid(b_t)) {
            std::vector<std::string> row = {fmt17(t)};
            for (int N : Ns) row.push_back(fmt17(pvsum::psi_N({b_nu, N, t}).value));
            for (int N : Ns) row.push_back(fmt17(pvsum::xi_N({b_nu, N, t}).tau));
            pvsum::HNuEstimate h = pvsum::h_nu_estimate(b_nu, t, Ns);
            row.push_back(fmt17(h.value));
            row.push_back(fmt17(h.err_est));
            table.rows.push_back(row);
        }
        emit(table, format, out_path);
        return 0;
    }
    if (*cmd_simulate) {
        pvsum::EnsembleSpec spec;
        if (sim_ensemble == "hua_pickrell") spec.kind = pvsum::EnsembleKind::hua_pickrell;
        else if (sim_ensemble == "lue") spec.kind = pvsum::EnsembleKind::lue;
        else spec.kind = pvsum::EnsembleKind::inverse_laguerre;
        spec.s_or_nu = sim_s;
        spec.N = sim_N;
        spec.seed = sim_seed;
        spec.n_samples = sim_n;
        spec.mcmc.thinning = sim_thinning;
        spec.mcmc.burn_in = sim_burnin;
        pvsum::Batch batch = pvsum::sample_ensemble(spec);
        if (sim_export) {
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path);
                os = &file;
            }
            pvsum::write_batch_csv(batch, *os);
            return 0;
        }
        table.params = {{"command", "simulate"}, {"ensemble", sim_ensemble},
                        {"s_or_nu", sim_s},      {"N", sim_N},
                        {"seed", sim_seed},      {"n", sim_n},
                        {"stat", sim_stat}};
        table.header = {"t", "estimate", "stderr", "reference"};
        for (double t : parse_grid(sim_t)) {
            pvsum::Estimate e;
            std::string ref = "";
            if (sim_stat == "charfn") {
                e = pvsum::empirical_charfn(batch, t);
                if (spec.kind == pvsum::EnsembleKind::hua_pickrell && sim_N <= 24)
                    ref = fmt17(pvsum::phi_finite_N(sim_s, sim_N, t).value);
            } else if (sim_stat == "laplace") {
                e = pvsum::empirical_laplace(batch, t);
                if (sim_N <= 16) ref = fmt17(pvsum::psi_N({sim_s, sim_N, t}).value);
            } else {
                std::vector<double> vals(batch.samples.size());
                for (size_t i = 0; i < vals.size(); ++i)
                    vals[i] = pvsum::trace_statistic(batch, static_cast<int>(i));
                e = pvsum::empirical_mean(vals);
                if (spec.kind == pvsum::EnsembleKind::inverse_laguerre && sim_s > 0)
                    ref = fmt17(2.0 / sim_s);
            }
            table.add_row({fmt17(t), fmt17(e.value), fmt17(e.stderr_), ref});
        }
        emit(table, format, out_path);
        return 0;
    }
    if (*cmd_verify) {
        if (v_list) {
            for (const auto& n : pvsum::verify_suite_names()) std::cout << n << "\n";
            return 0;
        }
        std::vector<pvsum::CheckResult> results =
            v_suite == "all" ? pvsum::run_all_verify() : pvsum::run_verify_suite(v_suite);
        bool all_pass = true;
        for (const auto& c : results) {
            pvsum::print_check_line(c, std::cout);
            all_pass = all_pass && c.pass;
        }
        std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << " ("
                  << results.size() << " checks)\n";
        return all_pass ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::domain_error& e) {
        nlohmann::json err = {{"error", {{"type", "domain"}, {"what", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const pvsum::accuracy_error& e) {
        nlohmann::json err = {{"error",
                               {{"type", "accuracy"},
                                {"what", e.what()},
                                {"best_estimate", e.best_estimate},
                                {"err_est", e.err_est}}}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        nlohmann::json err = {{"error", {{"type", "runtime"}, {"what", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 4;
    }
}

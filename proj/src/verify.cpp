#include "pvsum/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "pvsum/bessel_laguerre.hpp"
#include "pvsum/ensembles.hpp"
#include "pvsum/hua_charfn.hpp"
#include "pvsum/oracles.hpp"
#include "pvsum/painleve.hpp"
#include "pvsum/specfun.hpp"
#include "pvsum/xs_distribution.hpp"

namespace pvsum {

namespace {

using Clock = std::chrono::steady_clock;

class Suite {
  public:
    explicit Suite(int criterion) : criterion_(criterion) {}

    void check(const std::string& name, double observed, double threshold) {
        CheckResult c;
        c.criterion = criterion_;
        c.name = name;
        c.observed = observed;
        c.threshold = threshold;
        c.pass = observed <= threshold;
        auto now = Clock::now();
        c.seconds = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        results_.push_back(c);
    }

    std::vector<CheckResult> take() { return std::move(results_); }

  private:
    int criterion_;
    Clock::time_point last_ = Clock::now();
    std::vector<CheckResult> results_;
};

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

double moment_real(int s, double h) {
    return moment_R(s, complex(h, 0.0)).value.real();
}

// --- criterion 1-3: golden, half-integer and quarter-integer moments -----

std::vector<CheckResult> suite_moments() {
    Suite s1(1);
    s1.check("R(1,1) = 1/12", rel_err(moment_real(1, 1.0), 1.0 / 12.0), 1e-10);
    s1.check("R(2,1) = 1/720", rel_err(moment_real(2, 1.0), 1.0 / 720.0), 1e-10);
    s1.check("R(2,2) = 1/6720", rel_err(moment_real(2, 2.0), 1.0 / 6720.0), 1e-10);
    auto out = s1.take();

    Suite s2(2);
    double e2 = std::exp(2.0);
    s2.check("R(1,1/2) = (e^2-5)/(4pi)",
             rel_err(moment_R_halfint(1, 0).value.real(), (e2 - 5.0) / (4.0 * M_PI)),
             1e-10);
    double f33a = hyp_pfq({4.5, 1.0, 1.0}, {3.0, 6.0, 7.0}, 8.0).value;
    double ref_r2h = 7.0 / (180.0 * M_PI) * (15.0 / 7.0 - f33a);
    s2.check("R(2,1/2) 3F3 display",
             rel_err(moment_R_halfint(2, 0).value.real(), ref_r2h), 1e-9);
    double f33b = hyp_pfq({6.5, 1.0, 1.0}, {5.0, 8.0, 9.0}, 8.0).value;
    double ref_r23h = 11.0 / (3360.0 * M_PI) * (-28.0 / 33.0 + f33b);
    s2.check("R(2,3/2) 3F3 display",
             rel_err(moment_R_halfint(2, 1).value.real(), ref_r23h), 1e-9);
    for (auto& c : s2.take()) out.push_back(c);

    Suite s3(3);
    double i0 = bessel_i(0, 1.0), i1 = bessel_i(1, 1.0), e1 = std::exp(1.0);
    s3.check("R(1,-1/4) = 2e(I0-I1)",
             rel_err(moment_real(1, -0.25), 2.0 * e1 * (i0 - i1)), 1e-9);
    s3.check("R(1,1/4) = e/3(-I0+3I1)",
             rel_err(moment_real(1, 0.25), e1 / 3.0 * (-i0 + 3.0 * i1)), 1e-9);
    s3.check("R(1,3/4) = e/30(5I0-9I1)",
             rel_err(moment_real(1, 0.75), e1 / 30.0 * (5.0 * i0 - 9.0 * i1)), 1e-9);
    s3.check("R(1,5/4) = e/140(5I0-3I1)",
             rel_err(moment_real(1, 1.25), e1 / 140.0 * (5.0 * i0 - 3.0 * i1)), 1e-9);
    for (auto& c : s3.take()) out.push_back(c);
    return out;
}

// --- criterion 4: s = 0 exactness ---------------------------------------

std::vector<CheckResult> suite_s0() {
    Suite s(4);
    for (int N : {1, 2, 4, 8}) {
        double worst = 0.0;
        for (double t : {0.5, 1.0, 5.0}) {
            CharFnValue v = phi_finite_N(0.0, N, t);
            worst = std::max(worst, rel_err(v.value, std::exp(-t / 2.0)));
        }
        std::ostringstream name;
        name << "phi_N^(0) = e^{-|t|/2}, N=" << N;
        s.check(name.str(), worst, 1e-10);
    }
    EnsembleSpec spec;
    spec.kind = EnsembleKind::hua_pickrell;
    spec.s_or_nu = 0.0;
    spec.N = 1;
    spec.seed = 20240817ULL;
    spec.n_samples = 100000;
    Batch b = sample_hua_pickrell(spec);
    std::vector<double> xs(b.samples.size());
    for (size_t i = 0; i < xs.size(); ++i) xs[i] = b.samples[i][0];
    double d = ks_statistic(std::move(xs),
                            [](double x) { return 0.5 + std::atan(x) / M_PI; });
    s.check("Cauchy KS (N=1, 1e5 samples), sqrt(n) D",
            d * std::sqrt(100000.0), ks_critical_1pct);
    return s.take();
}

// --- criterion 5: Painleve residuals -------------------------------------

std::vector<CheckResult> suite_painleve() {
    Suite s(5);
    for (double sv : {1.0, 2.0, 3.0}) {
        ResidualParams p;
        p.s = sv;
        ResidualReport rep =
            residual_report(PainleveEquation::sigma_p3_inf, p, default_grid());
        std::ostringstream name;
        name << "sigma-P3' residual, s=" << sv;
        s.check(name.str(), rep.max_abs, 1e-6);
    }
    for (double sv : {0.5, 1.0, 2.0}) {
        for (int N : {4, 8}) {
            ResidualParams p;
            p.s = sv;
            p.N = N;
            bool integer_s = std::abs(sv - std::round(sv)) < 1e-12;
            auto grid = integer_s ? default_grid() : geometric_grid(0.25, 8.0, 16);
            ResidualReport rep =
                residual_report(PainleveEquation::p5_finite_N, p, grid);
            std::ostringstream name;
            name << "P5 finite-N residual, s=" << sv << ", N=" << N;
            s.check(name.str(), rep.max_abs, 1e-6);
        }
    }
    {
        struct Triple { int N; double alpha, lambda; };
        for (auto [N, alpha, lambda] :
             {Triple{2, 0.5, 0.7}, Triple{3, -0.4, 1.3}, Triple{2, -0.6, 0.9}}) {
            ResidualParams p;
            p.N = N;
            p.alpha = alpha;
            p.lambda = lambda;
            ResidualReport rep = residual_report(PainleveEquation::hankel_sigma, p,
                                                 geometric_grid(0.25, 4.0, 8));
            std::ostringstream name;
            name << "Hankel sigma-form residual, N=" << N << ", alpha=" << alpha
                 << ", lambda=" << lambda;
            s.check(name.str(), rep.max_abs, 1e-6);
        }
    }
    for (double nu : {0.5, 1.5, 2.0}) {
        for (int N : {2, 4, 8}) {
            ResidualParams p;
            p.nu = nu;
            p.N = N;
            ResidualReport rep = residual_report(PainleveEquation::bessel_finite_N, p,
                                                 geometric_grid(0.25, 8.0, 12));
            std::ostringstream name;
            name << "Bessel finite-N residual, nu=" << nu << ", N=" << N;
            s.check(name.str(), rep.max_abs, 1e-6);
        }
    }
    {
        ResidualParams p;
        p.nu = 1.5;
        p.N_list = {4, 8, 16};
        ResidualReport rep = residual_report(PainleveEquation::bessel_inf, p,
                                             geometric_grid(0.5, 4.0, 6));
        s.check("Bessel infinite-N residual (extrapolated h), nu=1.5", rep.max_abs,
                1e-4);
        // residual of the limit equation must decrease along the N ladder
        double t = 1.0;
        double worst_ratio = 0.0;
        for (double nu : {1.5, 2.0}) {
            auto res_at = [&](int N) {
                TauValue xv = xi_N({nu, N, t});
                return std::abs(residual_bessel_inf(nu, t, nu * nu / 4.0 + xv.tau,
                                                    xv.dtau, xv.d2tau)
                                    .normalized);
            };
            double r4 = res_at(4), r16 = res_at(16);
            worst_ratio = std::max(worst_ratio, r16 / r4);
        }
        s.check("Bessel residual decreasing in N (res16/res4)", worst_ratio, 1.0);
    }
    return s.take();
}

// --- criterion 6: boundary conditions ------------------------------------

std::vector<CheckResult> suite_boundary() {
    Suite s(6);
    for (double sv : {1.0, 2.0}) {
        BoundaryReport r = boundary_report(BoundaryKind::tau_zero, sv);
        std::ostringstream name;
        name << "tau(0+) = 0, s=" << sv;
        s.check(name.str(), std::abs(r.extrapolated - r.reference), r.tol);
        BoundaryReport rd = boundary_report(BoundaryKind::dtau_zero, sv);
        std::ostringstream named;
        named << "tau'(0+) = 0, s=" << sv;
        s.check(named.str(), std::abs(rd.extrapolated - rd.reference), rd.tol);
    }
    BoundaryReport h0 = boundary_report(BoundaryKind::h_nu_zero, 2.0);
    s.check("h(0+) = nu^2/4, nu=2", std::abs(h0.extrapolated - h0.reference), h0.tol);
    BoundaryReport h1 = boundary_report(BoundaryKind::dh_nu_zero, 2.0);
    s.check("h'(0+) = -1/nu, nu=2", std::abs(h1.extrapolated - h1.reference), h1.tol);
    return s.take();
}

// --- criterion 7: identity suite -----------------------------------------

std::vector<CheckResult> suite_identities() {
    Suite s(7);
    {
        double worst = 0.0;
        for (double sv : {-0.25, 0.0, 0.5, 1.0, 2.5})
            for (double t : {0.1, 1.0, 5.0})
                worst = std::max(worst, winn_identity_check_N1(sv, t).rel_gap);
        s.check("Winn N=1 identity rel gap (15 pairs)", worst, 1e-8);
    }
    {
        double worst = 0.0;
        for (int N : {1, 2})
            for (double sv : {0.0, 0.5, 1.0})
                worst = std::max(
                    worst, rel_err(selberg_norm_quadrature(N, sv), selberg_norm(N, sv)));
        s.check("Selberg normalizer vs quadrature (N<=2)", worst, 1e-6);
    }
    {
        double worst = 0.0;
        for (int N : {1, 2})
            for (int k = 0; k <= N; ++k)
                for (double alpha : {1.0, 2.0, 3.5})
                    worst = std::max(
                        worst, rel_err(aomoto_quadrature(N, k, alpha), aomoto(N, k, alpha)));
        s.check("Aomoto formula vs quadrature (N<=2)", worst, 1e-6);
    }
    {
        double worst = 0.0;
        for (int sv : {1, 2})
            for (int N : {2, 4, 8})
                for (double t : {0.5, 1.0, 5.0}) {
                    double a = phi_finite_N(sv, N, t).value;
                    double b = phi_finite_N_laguerre(sv, N, t).value;
                    worst = std::max(worst, rel_err(a, b));
                }
        s.check("phi_N Hankel vs Laguerre determinant routes", worst, 1e-9);
    }
    return s.take();
}

// --- criterion 8: density suite ------------------------------------------

std::vector<CheckResult> suite_density() {
    Suite s(8);
    for (int sv : {1, 2, 3}) {
        double norm = moment_by_quadrature(sv, 0.0);
        std::ostringstream name;
        name << "density normalization, s=" << sv;
        s.check(name.str(), std::abs(norm - 1.0), 1e-6);
        double worst = 0.0;
        for (double x : {0.0, 0.5, 1.0, 2.0, 5.0})
            worst = std::max(worst, std::abs(rho(sv, x).rho - density_by_inversion(sv, x)));
        std::ostringstream name2;
        name2 << "density vs Fourier-inversion oracle, s=" << sv;
        s.check(name2.str(), worst, 1e-7);
    }
    {
        double worst = 0.0;
        for (double x : {0.0, 0.3, 1.0, 2.5, 7.0}) {
            double a = rho(2, x).rho;
            double b = rho_series(2, x).rho;
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-12));
        }
        s.check("s=2 general series = 2F2 closed form", worst, 1e-9);
    }
    return s.take();
}

// --- criterion 9: vanishing property -------------------------------------

std::vector<CheckResult> suite_vanishing() {
    Suite s(9);
    for (int sv = 1; sv <= 3; ++sv) {
        double worst = 0.0;
        for (int m = 0; m < sv; ++m)
            worst = std::max(worst, std::abs(series_vanishing_check(sv, m)));
        std::ostringstream name;
        name << "moment bracket vanishes at half-integers, s=" << sv;
        s.check(name.str(), worst, 1e-9);
    }
    return s.take();
}

// --- criterion 10: Monte Carlo closure ------------------------------------

std::vector<CheckResult> suite_mc() {
    Suite s(10);
    {
        EnsembleSpec spec;
        spec.kind = EnsembleKind::hua_pickrell;
        spec.s_or_nu = 1.0;
        spec.N = 8;
        spec.seed = 777001ULL;
        spec.n_samples = 100000;
        spec.mcmc.thinning = 48;
        spec.mcmc.burn_in = 4000;
        Batch b = sample_hua_pickrell(spec);
        Estimate e = empirical_charfn(b, 1.0);
        double ref = phi_finite_N(1.0, 8, 1.0).value;
        s.check("Hua-Pickrell charfn MC vs phi_N (s=1, N=8, t=1), |z|",
                std::abs(e.value - ref) / e.stderr_, 3.0);
    }
    {
        Batch b = sample_inverse_laguerre(1.5, 8, 424242ULL, 100000);
        double worst = 0.0;
        for (double t : {0.5, 1.0, 2.0}) {
            Estimate e = empirical_laplace(b, t);
            double ref = psi_N({1.5, 8, t}).value;
            worst = std::max(worst, std::abs(e.value - ref) / e.stderr_);
        }
        s.check("inverse-Laguerre Laplace MC vs psi_N (nu=1.5, N=8), |z|", worst, 3.0);
        std::vector<double> means(b.samples.size());
        for (size_t i = 0; i < means.size(); ++i)
            means[i] = trace_statistic(b, static_cast<int>(i));
        Estimate m = empirical_mean(means);
        s.check("inverse-Laguerre mean = 2/nu, |z|",
                std::abs(m.value - 2.0 / 1.5) / m.stderr_, 3.0);
    }
    return s.take();
}

// --- criterion 11: coefficient expansion ----------------------------------

std::vector<CheckResult> suite_coeffs() {
    Suite s(11);
    for (int sv : {2, 3, 5}) {
        double worst = 0.0;
        for (int k = 0; k <= 4; ++k) {
            double closed = coeff_a(sv, k);
            double extracted = coeff_a_extracted(sv, k);
            worst = std::max(worst,
                             std::abs(closed - extracted) / std::max(1.0, std::abs(closed)));
        }
        std::ostringstream name;
        name << "rational coefficients a_k vs composition extraction, s=" << sv;
        s.check(name.str(), worst, 1e-12);
    }
    return s.take();
}

const std::map<std::string, std::function<std::vector<CheckResult>()>>& suites() {
    static const std::map<std::string, std::function<std::vector<CheckResult>()>> m = {
        {"moments", suite_moments},     {"s0", suite_s0},
        {"painleve", suite_painleve},   {"boundary", suite_boundary},
        {"identities", suite_identities}, {"density", suite_density},
        {"vanishing", suite_vanishing}, {"mc", suite_mc},
        {"coefficients", suite_coeffs}};
    return m;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : suites()) names.push_back(k);
    return names;
}

std::vector<CheckResult> run_verify_suite(const std::string& name) {
    auto it = suites().find(name);
    if (it == suites().end())
        throw std::domain_error("unknown verify suite: " + name);
    return it->second();
}

std::vector<CheckResult> run_all_verify() {
    std::vector<CheckResult> all;
    for (const auto& [k, fn] : suites()) {
        auto r = fn();
        all.insert(all.end(), r.begin(), r.end());
    }
    return all;
}

void print_check_line(const CheckResult& c, std::ostream& os) {
    std::ostringstream line;
    line << (c.pass ? "PASS" : "FAIL") << "  [" << c.criterion << "] " << c.name
         << "  ";
    line.setf(std::ios::scientific);
    line.precision(3);
    line << c.observed << " <= " << c.threshold;
    line.unsetf(std::ios::scientific);
    line.precision(1);
    line.setf(std::ios::fixed);
    line << "  (" << c.seconds << "s)";
    os << line.str() << "\n";
}

}  // namespace pvsum

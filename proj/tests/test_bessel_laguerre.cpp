#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pvsum/bessel_laguerre.hpp"
#include "pvsum/quad.hpp"
#include "pvsum/specfun.hpp"

using namespace pvsum;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// K_nu by its integral representation -- the independent oracle for the
// N = 1 closed forms.
double bessel_k_integral(double nu, double z) {
    QuadConfig q;
    q.abs_tol = q.rel_tol = 1e-12;
    double hi = std::acosh(50.0 / z + 1.0) + 5.0;
    return adaptive_quad(
               [&](double u) { return std::exp(-z * std::cosh(u)) * std::cosh(nu * u); },
               0.0, hi, q)
        .value;
}

}  // namespace

TEST_CASE("psi_N at t = 0 and monotonicity") {
    CHECK(psi_N({1.5, 4, 0.0}).value == 1.0);
    double prev = 1.0;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        double v = psi_N({1.5, 4, t}).value;
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("psi_1 matches the K-Bessel closed form") {
    // nu = 0: psi_1(t) = 2 sqrt(t) K_1(2 sqrt t)
    for (double t : {0.5, 1.0, 2.0}) {
        double want = 2.0 * std::sqrt(t) * bessel_k_integral(1.0, 2.0 * std::sqrt(t));
        CHECK(rel(psi_N({0.0, 1, t}).value, want) < 1e-10);
    }
    CHECK(rel(psi_N({0.0, 1, 1.0}).value, 0.27973176363304487) < 1e-10);
    // generic nu: psi_1 = 2 t^{(nu+1)/2} K_{nu+1}(2 sqrt t) / Gamma(nu+1)
    double nu = 2.0, t = 1.0;
    double want = 2.0 * std::pow(t, 0.5 * (nu + 1.0)) *
                  bessel_k_integral(nu + 1.0, 2.0 * std::sqrt(t)) /
                  std::exp(std::lgamma(nu + 1.0));
    CHECK(rel(psi_N({nu, 1, t}).value, want) < 1e-10);
}

TEST_CASE("psi_N is log-convex in t") {
    double nu = 1.5;
    int N = 4;
    std::vector<double> ts, ls;
    for (double t = 0.2; t <= 3.0; t += 0.2) {
        ts.push_back(t);
        ls.push_back(std::log(psi_N({nu, N, t}).value));
    }
    for (size_t i = 1; i + 1 < ts.size(); ++i) {
        double second = ls[i + 1] - 2.0 * ls[i] + ls[i - 1];
        CHECK(second >= -1e-8);
    }
}

TEST_CASE("moment-matrix determinant at t = 0 matches the Gamma product") {
    // det[Gamma(j+k+nu+1)]_{j,k<N} = prod_j j! Gamma(nu+1+j)
    double nu = 1.3;
    int N = 6;
    Matrix m(N);
    for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
            m(j, k) = std::exp(std::lgamma(j + k + nu + 1.0));
    LogDet d = det_logspace(std::move(m));
    double want = 0.0;
    for (int j = 0; j < N; ++j)
        want += std::lgamma(j + 1.0) + std::lgamma(nu + 1.0 + j);
    CHECK(d.sign == 1);
    CHECK(std::abs(d.log_abs - want) < 1e-10 * std::abs(want));
}

TEST_CASE("xi_1 matches the analytic K-Bessel log-derivative") {
    // xi_1 = (nu+1)/2 + sqrt(t) K'_{nu+1}(2 sqrt t)/K_{nu+1}(2 sqrt t)
    double nu = 2.0, t = 1.0;
    double z = 2.0 * std::sqrt(t);
    double k3 = bessel_k_integral(nu + 1.0, z);
    double kp = -0.5 * (bessel_k_integral(nu, z) + bessel_k_integral(nu + 2.0, z));
    double want = 0.5 * (nu + 1.0) + std::sqrt(t) * kp / k3;
    TauValue xv = xi_N({nu, 1, t});
    CHECK(std::abs(xv.tau - want) < 1e-7);
}

TEST_CASE("xi_N boundary behaviour") {
    // xi_N(t)/t -> -1/nu for nu > 1, every N
    for (int N : {1, 4}) {
        TauValue xv = xi_N({2.0, N, 0.02});
        CHECK(std::abs(xv.tau / 0.02 + 0.5) < 5e-3);
    }
    // xi_N(0+) = 0 for nu > 0
    TauValue xv = xi_N({1.5, 4, 0.01});
    CHECK(std::abs(xv.tau) < 1e-2);
    CHECK_THROWS_AS((void)xi_N({1.5, 4, 0.0}), std::domain_error);
}

TEST_CASE("h_nu_estimate stabilizes across the N ladder") {
    HNuEstimate h = h_nu_estimate(1.5, 1.0, {4, 8, 16});
    CHECK(std::isfinite(h.value));
    CHECK(h.err_est < 5e-3);
    // boundary: h(0+) ~ nu^2/4
    HNuEstimate h0 = h_nu_estimate(2.0, 0.02, {4, 8});
    CHECK(std::abs(h0.value - 1.0) < 2e-2);
    CHECK_THROWS_AS((void)h_nu_estimate(1.5, 1.0, {4}), std::domain_error);
    CHECK_THROWS_AS((void)h_nu_estimate(1.5, 1.0, {8, 4}), std::domain_error);
}

TEST_CASE("inverse-Gamma moments") {
    CHECK(inverse_gamma_moment(2.0, 0) == 1.0);
    CHECK(rel(inverse_gamma_moment(2.0, 1), 1.0) < 1e-14);  // E e_1 = 2/nu
    // nu = 3, k = 2 against quadrature of x^2 * density (integrated in
    // u = 1/x so the slow x^{-3} tail becomes a Gamma-type integrand)
    QuadConfig q;
    q.abs_tol = q.rel_tol = 1e-10;
    double via_quad =
        adaptive_quad(
            [](double u) {
                double x = 1.0 / u;
                return x * x * inverse_gamma_density(3.0, x) * x * x;
            },
            1e-8, 80.0, q)
            .value;
    CHECK(std::abs(inverse_gamma_moment(3.0, 2) - via_quad) < 1e-8);
    CHECK_THROWS_AS((void)inverse_gamma_moment(2.0, 3), std::domain_error);
}

TEST_CASE("Bessel kernel symmetry and diagonal") {
    CHECK(kernel_bessel(1.5, 0.7, 1.9) == kernel_bessel(1.5, 1.9, 0.7));
    CHECK(std::isfinite(kernel_bessel(1.5, 1.0, 1.0)));
    CHECK(kernel_bessel(0.5, 2.0, 2.0) > 0.0);
    CHECK_THROWS_AS((void)kernel_bessel(1.5, 0.0, 1.0), std::domain_error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pvsum/painleve.hpp"

using namespace pvsum;

TEST_CASE("sigma-P3' residual floor with the exact s = 0 function") {
    // tau = -t/2 solves the equation identically; plugging exact derivatives
    // establishes the arithmetic floor of the residual pipeline
    for (double t : {0.1, 1.0, 5.0}) {
        TauValue tv{t, -t / 2.0, -0.5, 0.0, 0.0};
        ResidualPoint p = residual_sigma_p3(0.0, tv);
        CHECK(std::abs(p.normalized) < 1e-12);
    }
    // and through the differentiation pipeline
    for (double t : {0.1, 1.0, 5.0})
        CHECK(std::abs(residual_sigma_p3_at(0.0, t).normalized) < 1e-12);
}

TEST_CASE("P5 finite-N residual vanishes for the s = 0 closed form") {
    for (int N : {1, 4, 16})
        for (double t : {0.2, 1.0, 4.0}) {
            TauValue tv{t, -t / 2.0, -0.5, 0.0, 0.0};
            CHECK(std::abs(residual_p5_finite(0.0, N, tv).normalized) < 1e-12);
        }
}

TEST_CASE("sigma-P3' residuals for integer s") {
    CHECK(std::abs(residual_sigma_p3_at(1.0, 1.0).normalized) < 1e-6);
    CHECK(std::abs(residual_sigma_p3_at(2.0, 3.0).normalized) < 1e-6);
    CHECK(std::abs(residual_sigma_p3_at(3.0, 0.05).normalized) < 1e-6);
    CHECK(std::abs(residual_sigma_p3_at(3.0, 8.0).normalized) < 1e-6);
}

TEST_CASE("residual evenness in t") {
    // the equations are built from even functions; residual(t) folds |t|
    TauValue a{1.5, 0.3, 0.2, 0.1, 0.0};
    TauValue b{-1.5, 0.3, 0.2, 0.1, 0.0};
    CHECK(residual_sigma_p3(1.0, a).raw == residual_sigma_p3(1.0, b).raw);
}

TEST_CASE("P5 finite-N residuals through the quadrature route") {
    CHECK(std::abs(residual_p5_finite_at(1.0, 4, 1.0).normalized) < 1e-6);
    CHECK(std::abs(residual_p5_finite_at(2.0, 8, 0.5).normalized) < 1e-6);
    CHECK(std::abs(residual_p5_finite_at(0.5, 6, 2.0).normalized) < 1e-5);
}

TEST_CASE("Hankel sigma-form residuals") {
    // lambda = 0 removes the t dependence entirely
    CHECK(std::abs(residual_hankel_at(2, 0.5, 0.0, 1.0).normalized) < 1e-9);
    CHECK(std::abs(residual_hankel_at(2, 0.5, 0.7, 1.0).normalized) < 1e-5);
    CHECK(std::abs(residual_hankel_at(3, -0.4, 1.3, 2.0).normalized) < 1e-5);
}

TEST_CASE("Bessel finite-N residuals") {
    CHECK(std::abs(residual_bessel_finite_at(1.5, 4, 1.0).normalized) < 1e-6);
    CHECK(std::abs(residual_bessel_finite_at(0.5, 2, 0.25).normalized) < 1e-6);
    CHECK(std::abs(residual_bessel_finite_at(2.0, 8, 0.5).normalized) < 1e-6);
}

TEST_CASE("Bessel infinite-N residual decreases along the N ladder") {
    double nu = 1.5, t = 1.0;
    auto res_at = [&](int N) {
        TauValue xv = xi_N({nu, N, t});
        return std::abs(
            residual_bessel_inf(nu, t, nu * nu / 4.0 + xv.tau, xv.dtau, xv.d2tau)
                .normalized);
    };
    double r4 = res_at(4), r16 = res_at(16);
    CHECK(r16 < r4);
    CHECK(std::abs(residual_bessel_inf_at(2.0, 0.5).normalized) < 1e-4);
    CHECK(std::abs(residual_bessel_inf_at(1.5, 1.0).normalized) < 1e-4);
}

TEST_CASE("step robustness of the residual pipeline") {
    DiffConfig coarse, fine;
    coarse.h0 = 0.02;
    fine.h0 = 0.01;
    auto logphi = [](double u) { return log_phi_exact(1, u); };
    double r1 = residual_sigma_p3(1.0, tau(1.0, logphi, coarse)).normalized;
    double r2 = residual_sigma_p3(1.0, tau(1.0, logphi, fine)).normalized;
    CHECK(std::abs(r1 - r2) < 2e-6);
}

TEST_CASE("grids") {
    auto g = default_grid();
    REQUIRE(g.size() == 16);
    CHECK(g.front() == doctest::Approx(0.05));
    CHECK(g.back() == doctest::Approx(8.0));
    for (size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    CHECK_THROWS_AS((void)geometric_grid(-1.0, 2.0, 4), std::domain_error);
}

TEST_CASE("residual_report aggregates the grid") {
    ResidualParams p;
    p.s = 1.0;
    ResidualReport rep = residual_report(PainleveEquation::sigma_p3_inf, p,
                                         geometric_grid(0.1, 4.0, 6));
    REQUIRE(rep.residuals.size() == 6);
    CHECK(rep.max_abs < 1e-6);
    for (double r : rep.residuals) CHECK(std::isfinite(r));
}

TEST_CASE("boundary reports") {
    BoundaryReport t0 = boundary_report(BoundaryKind::tau_zero, 1.0);
    CHECK(std::abs(t0.extrapolated) <= t0.tol);
    REQUIRE(t0.pass.has_value());
    CHECK(*t0.pass);
    BoundaryReport d0 = boundary_report(BoundaryKind::dtau_zero, 2.0);
    CHECK(std::abs(d0.extrapolated) <= d0.tol);
    BoundaryReport h0 = boundary_report(BoundaryKind::h_nu_zero, 2.0);
    CHECK(std::abs(h0.extrapolated - 1.0) <= h0.tol);
    BoundaryReport h1 = boundary_report(BoundaryKind::dh_nu_zero, 2.0);
    CHECK(std::abs(h1.extrapolated + 0.5) <= h1.tol);
    // s in (-1/2, 1/2]: reported without pass/fail semantics
    BoundaryReport prox = boundary_report(BoundaryKind::tau_zero, 0.25);
    CHECK(!prox.pass.has_value());
    CHECK(std::isfinite(prox.extrapolated));
}

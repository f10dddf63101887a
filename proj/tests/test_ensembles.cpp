#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pvsum/bessel_laguerre.hpp"
#include "pvsum/ensembles.hpp"
#include "pvsum/hua_charfn.hpp"
#include "pvsum/quad.hpp"

using namespace pvsum;

namespace {

// CDF of Gamma(shape, 1) by cumulative quadrature over sorted sample points.
std::function<double(double)> gamma_cdf(double shape) {
    return [shape](double x) {
        if (x <= 0.0) return 0.0;
        QuadConfig q;
        q.abs_tol = q.rel_tol = 1e-10;
        double norm = std::exp(std::lgamma(shape));
        auto dens = [&](double y) {
            return std::exp((shape - 1.0) * std::log(y) - y) / norm;
        };
        double hi = std::min(x, 60.0 + 10.0 * shape);
        double head = (shape < 1.0)
                          ? quad_algebraic_endpoint(dens, shape - 1.0, std::min(hi, 1.0), q).value
                          : adaptive_quad(dens, 0.0, std::min(hi, 1.0), q).value;
        if (hi <= 1.0) return head;
        return head + adaptive_quad(dens, 1.0, hi, q).value;
    };
}

}  // namespace

TEST_CASE("determinism and seed sensitivity") {
    Batch a = sample_lue(1.5, 3, 123, 500);
    Batch b = sample_lue(1.5, 3, 123, 500);
    Batch c = sample_lue(1.5, 3, 124, 500);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
    // prefix stability across batch sizes (shard streams)
    Batch d = sample_lue(1.5, 3, 123, 200);
    for (int i = 0; i < 200; ++i) CHECK(a.samples[i] == d.samples[i]);
}

TEST_CASE("LUE N = 1 marginal is Gamma(nu+1, 1)") {
    double nu = 1.5;
    Batch b = sample_lue(nu, 1, 2024, 20000);
    std::vector<double> xs(b.samples.size());
    for (size_t i = 0; i < xs.size(); ++i) xs[i] = b.samples[i][0];
    double d = ks_statistic(std::move(xs), gamma_cdf(nu + 1.0));
    CHECK(d * std::sqrt(20000.0) < ks_critical_1pct);
}

TEST_CASE("LUE mean trace matches the first moment") {
    // E sum x_i = N(N+nu) from the a_{N,1} Aomoto value
    double nu = 1.5;
    int N = 4, n = 20000;
    Batch b = sample_lue(nu, N, 515, n);
    std::vector<double> traces(n);
    for (int i = 0; i < n; ++i) traces[i] = trace_statistic(b, i) * N;
    Estimate e = empirical_mean(traces);
    CHECK(std::abs(e.value - N * (N + nu)) < 4.0 * e.stderr_);
}

TEST_CASE("inverse-Laguerre pushforward") {
    double nu = 2.0;
    Batch b = sample_inverse_laguerre(nu, 1, 99, 20000);
    for (int i = 0; i < 50; ++i) CHECK(b.samples[i][0] > 0.0);
    std::vector<double> ys(b.samples.size());
    for (size_t i = 0; i < ys.size(); ++i) ys[i] = b.samples[i][0];
    Estimate e = empirical_mean(ys);
    CHECK(std::abs(e.value - 1.0) < 4.0 * e.stderr_);  // E e_1 = 2/nu = 1
}

TEST_CASE("empirical Laplace transform matches psi_N") {
    Batch b = sample_inverse_laguerre(1.5, 8, 31337, 20000);
    for (double t : {0.5, 1.0, 2.0}) {
        Estimate e = empirical_laplace(b, t);
        double ref = psi_N({1.5, 8, t}).value;
        CHECK(std::abs(e.value - ref) < 4.0 * e.stderr_);
    }
    Estimate at0 = empirical_laplace(b, 0.0);
    CHECK(at0.value == 1.0);
    CHECK(at0.stderr_ == 0.0);
}

TEST_CASE("Hua-Pickrell N = 1 exact samplers") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::hua_pickrell;
    spec.N = 1;
    spec.n_samples = 20000;
    spec.seed = 7;

    spec.s_or_nu = 0.0;  // Cauchy
    Batch b = sample_hua_pickrell(spec);
    std::vector<double> xs(b.samples.size());
    for (size_t i = 0; i < xs.size(); ++i) xs[i] = b.samples[i][0];
    double d = ks_statistic(std::move(xs),
                            [](double x) { return 0.5 + std::atan(x) / M_PI; });
    CHECK(d * std::sqrt(20000.0) < ks_critical_1pct);

    spec.s_or_nu = 1.0;  // theta-density cos^2, CDF analytic
    Batch b1 = sample_hua_pickrell(spec);
    std::vector<double> th(b1.samples.size());
    for (size_t i = 0; i < th.size(); ++i) th[i] = std::atan(b1.samples[i][0]);
    double d1 = ks_statistic(std::move(th), [](double t) {
        return (t + M_PI_2 + std::sin(t) * std::cos(t)) / M_PI;
    });
    CHECK(d1 * std::sqrt(20000.0) < ks_critical_1pct);
}

TEST_CASE("trace of the s = 0 ensemble is Cauchy for N = 4") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::hua_pickrell;
    spec.s_or_nu = 0.0;
    spec.N = 4;
    spec.seed = 90210;
    spec.n_samples = 12000;
    spec.mcmc.thinning = 160;
    spec.mcmc.burn_in = 4000;
    Batch b = sample_hua_pickrell(spec);
    std::vector<double> traces(b.samples.size());
    for (size_t i = 0; i < traces.size(); ++i)
        traces[i] = trace_statistic(b, static_cast<int>(i));
    double d = ks_statistic(std::move(traces),
                            [](double x) { return 0.5 + std::atan(x) / M_PI; });
    CHECK(d * std::sqrt(static_cast<double>(b.samples.size())) < ks_critical_1pct);
}

TEST_CASE("MCMC charfn estimate agrees with the finite-N determinant") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::hua_pickrell;
    spec.s_or_nu = 1.0;
    spec.N = 8;
    spec.seed = 1234;
    spec.n_samples = 8000;
    spec.mcmc.thinning = 32;
    Batch b = sample_hua_pickrell(spec);
    Estimate e = empirical_charfn(b, 1.0);
    double ref = phi_finite_N(1.0, 8, 1.0).value;
    CHECK(std::abs(e.value - ref) < 5.0 * e.stderr_);
    // antisymmetry diagnostic
    Estimate im = empirical_charfn_imag(b, 1.0);
    CHECK(std::abs(im.value) < 4.0 * im.stderr_);
    Estimate at0 = empirical_charfn(b, 0.0);
    CHECK(at0.value == 1.0);
    CHECK(at0.stderr_ == 0.0);
}

TEST_CASE("Gelman-Rubin statistic close to one") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::hua_pickrell;
    spec.s_or_nu = 1.0;
    spec.N = 8;
    spec.seed = 5150;
    spec.n_samples = 1500;
    spec.mcmc.thinning = 24;
    spec.mcmc.burn_in = 3000;
    CHECK(gelman_rubin_trace(spec, 4) < 1.05);
}

TEST_CASE("inverse-Laguerre sample moments match inverse-Gamma moments") {
    double nu = 3.5;
    Batch b = sample_inverse_laguerre(nu, 4, 8181, 20000);
    for (int k : {1, 2}) {
        std::vector<double> vals(b.samples.size());
        for (size_t i = 0; i < vals.size(); ++i) {
            double m = 0.0;
            for (double y : b.samples[i]) m += std::pow(y, k);
            vals[i] = m / b.N;
        }
        Estimate e = empirical_mean(vals);
        double want = inverse_gamma_moment(nu, k);
        CHECK(std::abs(e.value - want) < 5.0 * e.stderr_);
    }
}

TEST_CASE("CSV export shape and quoting") {
    Batch b = sample_lue(0.5, 2, 5, 120);
    std::ostringstream os;
    write_batch_csv(b, os);
    std::string text = os.str();
    CHECK(text.substr(0, 12) == "sample,x1,x2");
    size_t rows = 0, pos = 0;
    while ((pos = text.find("\r\n", pos)) != std::string::npos) {
        ++rows;
        pos += 2;
    }
    CHECK(rows == 121);  // header + 120 samples
}

TEST_CASE("spec validation") {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::hua_pickrell;
    spec.s_or_nu = -0.6;
    spec.N = 2;
    spec.n_samples = 500;
    CHECK_THROWS_AS((void)sample_ensemble(spec), std::domain_error);
    spec.s_or_nu = 1.0;
    spec.n_samples = 10;
    CHECK_THROWS_AS((void)sample_ensemble(spec), std::domain_error);
}

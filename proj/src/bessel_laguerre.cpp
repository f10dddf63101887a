#include "pvsum/bessel_laguerre.hpp"

#include <cmath>
#include <string>

#include "pvsum/specfun.hpp"

namespace pvsum {

QuadConfig psi_gram_quad_defaults() {
    QuadConfig q;
    q.abs_tol = 1e-15;
    q.rel_tol = 5e-14;
    q.max_subdivisions = 3000;
    q.upper_cutoff = 0.0;
    return q;
}

DiffConfig psi_diff_defaults() {
    DiffConfig dc;
    dc.eval_noise = 5e-13;  // quadrature-grade log psi
    return dc;
}

namespace {

void monic_laguerre_values(int count, double alpha, double y, std::vector<double>& out) {
    out.resize(count);
    if (count == 0) return;
    out[0] = 1.0;
    if (count == 1) return;
    out[1] = y - (alpha + 1.0);
    for (int n = 1; n + 1 < count; ++n)
        out[n + 1] = (y - (2.0 * n + alpha + 1.0)) * out[n] - n * (n + alpha) * out[n - 1];
}

}  // namespace

double log_psi_N(const BesselParams& p, const QuadConfig& cfg) {
    if (!(p.nu > -1.0)) throw std::domain_error("psi_N: nu must be > -1");
    if (p.N < 1 || p.N > 16)
        throw std::domain_error("psi_N: N must be in [1, 16] for the quadrature route");
    if (p.t < 0.0) throw std::domain_error("psi_N: t must be >= 0");
    if (p.t == 0.0) return 0.0;
    const int N = p.N;
    const double nu = p.nu;
    const double c = p.t / N;  // coefficient of the essential-singularity factor
    // log det at t = 0 is exact: diag of monic Laguerre norms j! Gamma(j+nu+1)
    double logdet0 = 0.0;
    for (int j = 0; j < N; ++j)
        logdet0 += std::lgamma(j + 1.0) + std::lgamma(j + nu + 1.0);
    // u-space bounds: e^{-c e^{-u}} kills u below log(c/45); x^{nu+1} and
    // e^{-x} kill the ends beyond [u_lo, u_hi]
    double pmax = 2.0 * (N - 1) + nu;
    double u_hi = std::log(cutoff_for_power(std::max(pmax, 1.0), 1e-18));
    double u_lo = std::log(c / 45.0);
    u_lo = std::max(u_lo, -46.0 / (nu + 1.0));
    u_lo = std::min(u_lo, u_hi - 1.0);
    Matrix m(N);
    std::vector<double> pv;
    for (int j = 0; j < N; ++j) {
        for (int k = j; k < N; ++k) {
            double log_scale =
                0.5 * (std::lgamma(j + 1.0) + std::lgamma(j + nu + 1.0) +
                       std::lgamma(k + 1.0) + std::lgamma(k + nu + 1.0));
            auto integrand = [&](double u) {
                double x = std::exp(u);
                monic_laguerre_values(std::max(j, k) + 1, nu, x, pv);
                return pv[j] * pv[k] *
                       std::exp((nu + 1.0) * u - x - c / x - log_scale);
            };
            double v = adaptive_quad(integrand, u_lo, u_hi, cfg).value *
                       std::exp(log_scale);
            m(j, k) = v;
            m(k, j) = v;
        }
    }
    LogDet d = det_logspace(std::move(m));
    if (d.sign <= 0)
        throw consistency_error("psi_N: Gram determinant not positive");
    return d.log_abs - logdet0;
}

LaplaceValue psi_N(const BesselParams& p, const QuadConfig& cfg) {
    double lv = log_psi_N(p, cfg);
    LaplaceValue out;
    out.t = p.t;
    out.value = std::exp(lv);
    out.method = LaplaceMethod::hankel_quadrature;
    out.err_est = out.value * (2.0 * p.N * cfg.rel_tol + p.N * 4.4e-16);
    return out;
}

TauValue xi_N(const BesselParams& p, const DiffConfig& dc, const QuadConfig& cfg) {
    if (!(p.t > 0.0)) throw std::domain_error("xi_N: t must be > 0");
    BesselParams q = p;
    auto logpsi = [&](double t) {
        q.t = t;
        return log_psi_N(q, cfg);
    };
    return tau(p.t, logpsi, dc);
}

HNuEstimate h_nu_estimate(double nu, double t, const std::vector<int>& N_list,
                          const DiffConfig& dc, const QuadConfig& cfg) {
    if (N_list.size() < 2)
        throw std::domain_error("h_nu_estimate: need at least two N values");
    for (size_t i = 1; i < N_list.size(); ++i)
        if (N_list[i] <= N_list[i - 1])
            throw std::domain_error("h_nu_estimate: N_list must be ascending");
    std::vector<double> xi(N_list.size());
    for (size_t i = 0; i < N_list.size(); ++i)
        xi[i] = xi_N({nu, N_list[i], t}, dc, cfg).tau;
    // first-order model xi_N = xi_inf + c/N on the two largest N
    size_t n = N_list.size();
    double n1 = N_list[n - 2], n2 = N_list[n - 1];
    double extrap = xi[n - 1] + (xi[n - 1] - xi[n - 2]) / (n2 / n1 - 1.0);
    HNuEstimate out;
    out.value = nu * nu / 4.0 + extrap;
    out.err_est = std::abs(extrap - xi[n - 1]) * 0.5;
    if (n >= 3) {
        double prev = xi[n - 2] + (xi[n - 2] - xi[n - 3]) /
                                      (static_cast<double>(N_list[n - 2]) / N_list[n - 3] - 1.0);
        out.err_est = std::abs(extrap - prev);
        for (size_t i = 2; i < n; ++i)
            if (std::abs(xi[i] - xi[i - 1]) > std::abs(xi[i - 1] - xi[i - 2]))
                out.monotone = false;
    }
    return out;
}

double inverse_gamma_moment(double nu, int k) {
    if (k < 0) throw std::domain_error("inverse_gamma_moment: k must be >= 0");
    if (!(nu > -1.0)) throw std::domain_error("inverse_gamma_moment: nu must be > -1");
    if (!(k < nu + 1.0))
        throw std::domain_error(
            "inverse_gamma_moment: divergent, moments exist only for k < nu+1 = " +
            std::to_string(nu + 1.0));
    return std::exp(k * std::log(2.0) + std::lgamma(nu + 1.0 - k) - std::lgamma(nu + 1.0));
}

double inverse_gamma_density(double nu, double x) {
    if (!(x > 0.0)) return 0.0;
    return std::exp((nu + 1.0) * std::log(2.0) - std::lgamma(nu + 1.0) -
                    (nu + 2.0) * std::log(x) - 2.0 / x);
}

double kernel_bessel(double nu, double x, double y) {
    if (!(nu > -1.0)) throw std::domain_error("kernel_bessel: nu must be > -1");
    if (!(x > 0.0 && y > 0.0)) throw std::domain_error("kernel_bessel: x, y must be > 0");
    auto num = [&](double a, double b) {
        return std::sqrt(a) * bessel_j(nu + 1.0, std::sqrt(a)) * bessel_j(nu, std::sqrt(b));
    };
    if (std::abs(x - y) < 1e-6) {
        double mid = 0.5 * (x + y);
        double eps = 5e-7 * std::max(1.0, mid);
        double a = mid - eps, b = mid + eps;
        return (num(a, b) - num(b, a)) / (2.0 * (a - b));
    }
    return (num(x, y) - num(y, x)) / (2.0 * (x - y));
}

}  // namespace pvsum

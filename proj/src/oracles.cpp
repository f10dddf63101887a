#include "pvsum/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "pvsum/hua_charfn.hpp"
#include "pvsum/specfun.hpp"
#include "pvsum/xs_distribution.hpp"

namespace pvsum {

QuadConfig oracle_quad_defaults() {
    QuadConfig q;
    q.abs_tol = 1e-8;
    q.rel_tol = 1e-8;
    q.max_subdivisions = 6000;
    q.upper_cutoff = 60.0;
    return q;
}

double hankel_moment(int j, int k, double t, double alpha, double lambda,
                     const QuadConfig& cfg) {
    if (!(alpha > -1.0)) throw std::domain_error("hankel_moment: alpha must be > -1");
    if (j < 0 || k < 0 || t < 0.0)
        throw std::domain_error("hankel_moment: j, k, t must be nonnegative");
    double p = j + k + alpha + std::max(lambda, 0.0);
    double cut = cutoff_for_power(std::max(p, 1.0), 1e-17);
    // integrate against the Gamma(p+1) scale so abs_tol is meaningful
    double log_scale = std::lgamma(std::max(p, 0.0) + 1.0);
    auto f = [&](double y) {
        return std::pow(y, j + k + alpha) * std::pow(y + t, lambda) *
               std::exp(-y - log_scale);
    };
    double head;
    double a0 = j + k + alpha;  // endpoint exponent at y = 0
    if (a0 < 0.0)
        head = quad_algebraic_endpoint(f, a0, 1.0, cfg).value;
    else
        head = adaptive_quad(f, 0.0, 1.0, cfg).value;
    return (head + adaptive_quad(f, 1.0, cut, cfg).value) * std::exp(log_scale);
}

namespace {

// IBP tail of \int_X^infty f(x) cos(tx) dx through f''':
//   -f sin/t - f' cos/t^2 + f'' sin/t^3 + f''' cos/t^4 (evaluated at X)
double cosine_tail(double a, double X, double t) {
    // f = (1+x^2)^{-a} and its first three derivatives at X
    double w = 1.0 + X * X;
    double f = std::pow(w, -a);
    double f1 = -2.0 * a * X * std::pow(w, -a - 1.0);
    double f2 = -2.0 * a * std::pow(w, -a - 1.0) +
                4.0 * a * (a + 1.0) * X * X * std::pow(w, -a - 2.0);
    double f3 = 12.0 * a * (a + 1.0) * X * std::pow(w, -a - 2.0) -
                8.0 * a * (a + 1.0) * (a + 2.0) * X * X * X * std::pow(w, -a - 3.0);
    double s = std::sin(t * X), c = std::cos(t * X);
    return -f * s / t - f1 * c / (t * t) + f2 * s / (t * t * t) +
           f3 * c / (t * t * t * t);
}

}  // namespace

WinnCheck winn_identity_check_N1(double s, double t, const QuadConfig& cfg) {
    if (!(s > -0.5)) throw std::domain_error("winn_identity_check_N1: s must be > -1/2");
    if (!(t > 0.0)) throw std::domain_error("winn_identity_check_N1: t must be > 0");
    double a = s + 1.0;
    // the integration-by-parts tail needs tX >> 1
    double X = std::max(900.0 / t, 150.0);
    auto f = [&](double x) { return std::cos(t * x) * std::pow(1.0 + x * x, -a); };
    QuadConfig q = cfg;
    q.max_subdivisions = std::max(cfg.max_subdivisions, 8000);
    double lhs = 2.0 * (adaptive_quad(f, 0.0, X, q).value + cosine_tail(a, X, t));

    double cut = cutoff_for_power(std::max(2.0 * s, 1.0), 1e-17) + 2.0 * t;
    auto g = [&](double y) {
        return std::pow(y + 2.0 * t, s) * std::pow(y, s) * std::exp(-y);
    };
    double integral;
    if (s < 0.0)
        integral = quad_algebraic_endpoint(g, s, 1.0, q).value +
                   adaptive_quad(g, 1.0, cut, q).value;
    else
        integral = adaptive_quad(g, 0.0, 1.0, q).value +
                   adaptive_quad(g, 1.0, cut, q).value;
    double rhs = M_PI * std::exp(-2.0 * s * std::log(2.0) - 2.0 * std::lgamma(s + 1.0) - t) *
                 integral;
    double gap = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
    return {lhs, rhs, gap};
}

double selberg_norm_log(int N, double s) {
    if (N < 1) throw std::domain_error("selberg_norm: N must be >= 1");
    if (!(s > -0.5)) throw std::domain_error("selberg_norm: s must be > -1/2");
    double lg = N * std::log(M_PI) - N * (N + 2.0 * s - 1.0) * std::log(2.0);
    for (int j = 0; j < N; ++j)
        lg += std::lgamma(j + 1.0) + std::lgamma(2.0 * s + N - j) -
              2.0 * std::lgamma(s + N - j);
    return lg;
}

double selberg_norm(int N, double s) { return std::exp(selberg_norm_log(N, s)); }

double selberg_norm_quadrature(int N, double s, const QuadConfig& cfg) {
    // x = tan(theta) maps the whole line onto (-pi/2, pi/2) exactly;
    // (1+x^2)^{-s-N} dx = cos^{2s+2N-2}(theta) dtheta.
    if (N == 1) {
        auto f = [&](double th) { return std::pow(std::cos(th), 2.0 * s); };
        return adaptive_quad(f, -M_PI_2, M_PI_2, cfg).value;
    }
    if (N == 2) {
        QuadConfig inner = cfg;
        inner.abs_tol = cfg.abs_tol * 1e-2;
        inner.rel_tol = cfg.rel_tol * 1e-1;
        auto outer = [&](double th1) {
            double t1 = std::tan(th1);
            double c1 = std::pow(std::cos(th1), 2.0 * s + 2.0);
            auto f2 = [&](double th2) {
                double t2 = std::tan(th2);
                double d = t2 - t1;
                return d * d * std::pow(std::cos(th2), 2.0 * s + 2.0);
            };
            return c1 * adaptive_quad(f2, -M_PI_2, M_PI_2, inner).value;
        };
        return 0.5 * adaptive_quad(outer, -M_PI_2, M_PI_2, cfg).value;
    }
    throw std::domain_error("selberg_norm_quadrature: only N <= 2 supported");
}

double aomoto_log(int N, int k, double alpha) {
    if (N < 1 || k < 0 || k > N)
        throw std::domain_error("aomoto: need N >= 1 and 0 <= k <= N");
    if (!(alpha > 0.0)) throw std::domain_error("aomoto: alpha must be > 0");
    double lg = c_n_constant_log(N, 0.5 * (alpha - 1.0));
    for (int j = 1; j <= k; ++j) lg += std::log(alpha + N - j);
    return lg;
}

double aomoto(int N, int k, double alpha) { return std::exp(aomoto_log(N, k, alpha)); }

double aomoto_quadrature(int N, int k, double alpha, const QuadConfig& cfg) {
    double cut = cutoff_for_power(alpha + 2.0 * N + 1.0, 1e-16);
    if (N == 1) {
        auto f = [&](double y) {
            return std::pow(y, alpha - 1.0 + (k >= 1 ? 1.0 : 0.0)) * std::exp(-y);
        };
        return adaptive_quad(f, 0.0, cut, cfg).value;
    }
    if (N == 2) {
        QuadConfig inner = cfg;
        inner.abs_tol = cfg.abs_tol * 1e-2;
        inner.rel_tol = cfg.rel_tol * 1e-1;
        auto outer = [&](double y1) {
            double e1 = std::pow(y1, alpha - 1.0 + (k >= 1 ? 1.0 : 0.0)) * std::exp(-y1);
            auto f2 = [&](double y2) {
                double d = y2 - y1;
                return d * d * std::pow(y2, alpha - 1.0 + (k >= 2 ? 1.0 : 0.0)) *
                       std::exp(-y2);
            };
            return e1 * adaptive_quad(f2, 0.0, cut, inner).value;
        };
        return adaptive_quad(outer, 0.0, cut, cfg).value;
    }
    throw std::domain_error("aomoto_quadrature: only N <= 2 supported");
}

namespace {

// cutoff T for \int_0^infty cos(xt) phi^(s)(2t) dt from the Bessel-bound
// envelope phi^(s)(2t) <= const * e^{-t + 2 s sqrt(2t)} (poly factors taken
// up by slack).  Solves t - 2 s sqrt(2t) = -log(tol).
double inversion_cutoff(int s, double tol) {
    double target = -std::log(tol);
    double b = 2.0 * s * std::sqrt(2.0);  // in units of sqrt(t)
    double u = 0.5 * (b + std::sqrt(b * b + 4.0 * target));  // sqrt(t)
    return u * u * 1.3 + 10.0;
}

}  // namespace

double density_by_inversion(int s, double x, const QuadConfig& cfg) {
    if (s < 0) throw std::domain_error("density_by_inversion: s must be >= 0");
    double T = inversion_cutoff(s, 1e-15);
    // Monitored assumption for s > 0: the integrand must stay inside the
    // Bessel-bound envelope (the s <= 0 bound e^{-t/2} phi <= 1 is proven).
    double envelope_margin = 1e4;
    auto f = [&](double t) {
        double phi = phi_exact(s, 2.0 * t).value;
        double env = std::exp(-t + 2.0 * s * std::sqrt(2.0 * t));
        if (phi > envelope_margin * env)
            throw consistency_error(
                "density_by_inversion: characteristic function escaped its decay envelope");
        return std::cos(x * t) * phi;
    };
    QuadConfig q = cfg;
    q.max_subdivisions = std::max(cfg.max_subdivisions, 8000);
    return adaptive_quad(f, 0.0, T, q).value / M_PI;
}

namespace {

// Largest |x| at which the series/closed densities keep >= ~7 good digits;
// beyond it the x^{-2s-2} tail is fitted.
double density_safe_range(int s) {
    switch (s) {
        case 0: return 1e4;
        case 1: return 2e4;
        case 2: return 150.0;
        case 3: return 30.0;
        default: return 15.0;
    }
}

struct TailFit {
    std::array<double, 3> gamma;  // rho(x) ~ sum gamma_m (x/X)^{-q_m}
    std::array<double, 3> q;
    double X;
};

TailFit fit_density_tail(int s, double X, const SeriesConfig& scfg) {
    TailFit fit;
    fit.X = X;
    fit.q = {2.0 * s + 2.0, 2.0 * s + 4.0, 2.0 * s + 6.0};
    const int n = 8;
    std::array<std::array<double, 3>, 3> ata{};
    std::array<double, 3> atb{};
    for (int i = 0; i < n; ++i) {
        double x = X * std::pow(0.5, static_cast<double>(i) / (n - 1));
        double r = rho(s, x, scfg).rho;
        std::array<double, 3> row;
        for (int m = 0; m < 3; ++m) row[m] = std::pow(x / X, -fit.q[m]);
        for (int m = 0; m < 3; ++m) {
            atb[m] += row[m] * r;
            for (int l = 0; l < 3; ++l) ata[m][l] += row[m] * row[l];
        }
    }
    // 3x3 normal equations by Cramer
    auto det3 = [](const std::array<std::array<double, 3>, 3>& a) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    double d = det3(ata);
    for (int m = 0; m < 3; ++m) {
        auto a = ata;
        for (int r = 0; r < 3; ++r) a[r][m] = atb[r];
        fit.gamma[m] = det3(a) / d;
    }
    return fit;
}

}  // namespace

double moment_by_quadrature(int s, double h, const QuadConfig& cfg) {
    if (s < 0) throw std::domain_error("moment_by_quadrature: s must be >= 0");
    if (!(h > -0.5 && h < s + 0.5))
        throw std::domain_error("moment_by_quadrature: h outside (-1/2, s+1/2)");
    SeriesConfig scfg;
    double p = 2.0 * h;
    double X = density_safe_range(s);
    auto f = [&](double x) { return std::pow(x, p) * rho(s, x, scfg).rho; };
    QuadConfig q = cfg;
    q.abs_tol = std::min(q.abs_tol, 1e-10);
    q.rel_tol = std::min(q.rel_tol, 1e-9);
    q.max_subdivisions = 20000;
    double head;
    if (p < 0.0)
        head = quad_algebraic_endpoint(f, p, 1.0, q).value;
    else
        head = adaptive_quad(f, 0.0, 1.0, q).value;
    double mid = adaptive_quad(f, 1.0, X, q).value;
    TailFit fit = fit_density_tail(s, X, scfg);
    double tail = 0.0;
    for (int m = 0; m < 3; ++m) {
        double qm = fit.q[m];
        if (!(qm - p > 1.0))
            throw std::domain_error("moment_by_quadrature: tail does not converge");
        tail += fit.gamma[m] * std::pow(fit.X, p + 1.0) / (qm - p - 1.0);
    }
    return 2.0 * (head + mid + tail);
}

}  // namespace pvsum

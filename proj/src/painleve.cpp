#include "pvsum/painleve.hpp"

#include <algorithm>
#include <cmath>

#include "pvsum/oracles.hpp"
#include "pvsum/specfun.hpp"

namespace pvsum {

std::string equation_name(PainleveEquation eq) {
    switch (eq) {
        case PainleveEquation::sigma_p3_inf: return "sigma_p3_inf";
        case PainleveEquation::p5_finite_N: return "p5_finite_N";
        case PainleveEquation::hankel_sigma: return "hankel_sigma";
        case PainleveEquation::bessel_inf: return "bessel_inf";
        case PainleveEquation::bessel_finite_N: return "bessel_finite_N";
    }
    return "?";
}

namespace {

ResidualPoint combine(std::initializer_list<double> terms) {
    double raw = 0.0, largest = 0.0;
    for (double v : terms) {
        raw += v;
        largest = std::max(largest, std::abs(v));
    }
    return {raw, raw / std::max(1.0, largest)};
}

}  // namespace

ResidualPoint residual_sigma_p3(double s, const TauValue& tv) {
    double t = std::abs(tv.t);
    double tau = tv.tau, d1 = tv.dtau, d2 = tv.d2tau;
    return combine({t * d2 * t * d2, 4.0 * t * d1 * d1 * d1,
                    -(4.0 * s * s + 4.0 * tau) * d1 * d1, -t * d1, tau});
}

ResidualPoint residual_p5_finite(double s, int N, const TauValue& tv) {
    double t = std::abs(tv.t);
    double tau = tv.tau, d1 = tv.dtau, d2 = tv.d2tau;
    double n = N;
    return combine({t * d2 * t * d2, 4.0 * t * d1 * d1 * d1,
                    -(4.0 * s * s + 4.0 * tau + t * t / (n * n)) * d1 * d1,
                    -t * (1.0 + 2.0 * s / n - 2.0 * tau / (n * n)) * d1,
                    (1.0 + 2.0 * s / n - tau / (n * n)) * tau});
}

ResidualPoint residual_hankel(int N, double alpha, double lambda, const TauValue& hv) {
    double t = std::abs(hv.t);
    double H = hv.tau, d1 = hv.dtau, d2 = hv.d2tau;
    double n = N;
    double inner = t * d1 - H + d1 * (2.0 * n + alpha + lambda) + n * lambda;
    double rhs2 = 4.0 * d1 * (t * d1 - H + n * (n + alpha + lambda)) * (d1 + lambda);
    return combine({t * d2 * t * d2, -inner * inner, rhs2});
}

ResidualPoint residual_bessel_finite(double nu, int N, const TauValue& xv) {
    double t = std::abs(xv.t);
    double xi = xv.tau, d1 = xv.dtau, d2 = xv.d2tau;
    double n = N;
    return combine({t * d2 * t * d2, 4.0 * t * d1 * d1 * d1,
                    -(nu * nu + 4.0 * xi + 4.0 * t / n) * d1 * d1,
                    -(2.0 * nu - 4.0 * xi / n) * d1, -1.0});
}

ResidualPoint residual_bessel_inf(double nu, double t, double h, double dh, double d2h) {
    return combine({t * d2h * t * d2h, -4.0 * dh * dh * (h - t * dh), -2.0 * nu * dh,
                    -1.0});
}

ResidualPoint residual_sigma_p3_at(double s, double t, const SeriesConfig& cfg) {
    int si = static_cast<int>(std::lround(s));
    if (std::abs(s - si) > 1e-12 || si < 0)
        throw std::domain_error(
            "residual_sigma_p3_at: closed-form tau exists for integer s only");
    DiffConfig dc;
    dc.eval_noise = 1e-14;
    auto logphi = [&](double u) { return log_phi_exact(si, u, cfg); };
    TauValue tv = tau(t, logphi, dc);
    return residual_sigma_p3(s, tv);
}

ResidualPoint residual_p5_finite_at(double s, int N, double t) {
    QuadConfig q = phi_gram_quad_defaults();
    DiffConfig dc;
    dc.eval_noise = 5e-13;
    auto logphi = [&](double u) {
        CharFnValue c = phi_finite_N(s, N, u, q);
        return std::log(c.value);
    };
    TauValue tv = tau(t, logphi, dc);
    return residual_p5_finite(s, N, tv);
}

QuadConfig oracle_hankel_quad() {
    QuadConfig q;
    q.abs_tol = 1e-14;
    q.rel_tol = 5e-14;
    q.max_subdivisions = 4000;
    return q;
}

ResidualPoint residual_hankel_at(int N, double alpha, double lambda, double t,
                                 const QuadConfig& cfg) {
    if (N < 1 || N > 6)
        throw std::domain_error("residual_hankel_at: raw-moment route needs N <= 6");
    DiffConfig dc;
    dc.eval_noise = 5e-13;
    auto logF = [&](double u) {
        Matrix m(N);
        for (int j = 0; j < N; ++j)
            for (int k = j; k < N; ++k) {
                double v = hankel_moment(j, k, u, alpha, lambda, cfg);
                m(j, k) = v;
                m(k, j) = v;
            }
        LogDet d = det_logspace(std::move(m));
        if (d.sign <= 0)
            throw consistency_error("residual_hankel_at: F_N not positive");
        return d.log_abs;
    };
    TauValue hv = tau(t, logF, dc);
    return residual_hankel(N, alpha, lambda, hv);
}

ResidualPoint residual_bessel_finite_at(double nu, int N, double t) {
    TauValue xv = xi_N({nu, N, t});
    return residual_bessel_finite(nu, N, xv);
}

ResidualPoint residual_bessel_inf_at(double nu, double t,
                                     const std::vector<int>& N_list) {
    if (N_list.size() < 2)
        throw std::domain_error("residual_bessel_inf_at: need at least two N");
    // Richardson-extrapolate xi, xi', xi'' jointly in 1/N on the two largest N.
    size_t n = N_list.size();
    TauValue a = xi_N({nu, N_list[n - 2], t});
    TauValue b = xi_N({nu, N_list[n - 1], t});
    double r = static_cast<double>(N_list[n - 1]) / N_list[n - 2] - 1.0;
    double xi = b.tau + (b.tau - a.tau) / r;
    double dxi = b.dtau + (b.dtau - a.dtau) / r;
    double d2xi = b.d2tau + (b.d2tau - a.d2tau) / r;
    double h = nu * nu / 4.0 + xi;
    return residual_bessel_inf(nu, t, h, dxi, d2xi);
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi > lo) || n < 2)
        throw std::domain_error("geometric_grid: bad parameters");
    std::vector<double> g(n);
    double ratio = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = lo * std::exp(ratio * i);
    return g;
}

std::vector<double> default_grid() { return geometric_grid(0.05, 8.0, 16); }

ResidualReport residual_report(PainleveEquation eq, const ResidualParams& params,
                               const std::vector<double>& grid) {
    ResidualReport rep;
    rep.equation = eq;
    rep.grid = grid;
    rep.params = params;
    for (double t : grid) {
        ResidualPoint p;
        switch (eq) {
            case PainleveEquation::sigma_p3_inf:
                p = residual_sigma_p3_at(params.s, t);
                break;
            case PainleveEquation::p5_finite_N:
                p = residual_p5_finite_at(params.s, params.N, t);
                break;
            case PainleveEquation::hankel_sigma:
                p = residual_hankel_at(params.N, params.alpha, params.lambda, t);
                break;
            case PainleveEquation::bessel_finite_N:
                p = residual_bessel_finite_at(params.nu, params.N, t);
                break;
            case PainleveEquation::bessel_inf:
                p = residual_bessel_inf_at(
                    params.nu, t,
                    params.N_list.empty() ? std::vector<int>{4, 8, 16} : params.N_list);
                break;
        }
        rep.residuals.push_back(p.normalized);
        rep.raw_residuals.push_back(p.raw);
        rep.max_abs = std::max(rep.max_abs, std::abs(p.normalized));
    }
    DiffConfig dc;
    rep.diff_step = derivatives_123([](double) { return 0.0; }, grid.front(), dc).step;
    return rep;
}

namespace {

// Quadratic extrapolation to 0 through (t_i, f_i), i = 0..2.
double extrapolate_to_zero(const std::vector<double>& ts, const std::vector<double>& fs) {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) {
        double li = 1.0;
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            li *= (0.0 - ts[j]) / (ts[i] - ts[j]);
        }
        v += li * fs[i];
    }
    return v;
}

}  // namespace

BoundaryReport boundary_report(BoundaryKind kind, double param) {
    BoundaryReport rep;
    rep.kind = kind;
    rep.param = param;
    switch (kind) {
        case BoundaryKind::tau_zero:
        case BoundaryKind::dtau_zero: {
            double s = param;
            if (!(s > -0.5)) throw std::domain_error("boundary_report: s must be > -1/2");
            int si = static_cast<int>(std::lround(s));
            bool integer_s = std::abs(s - si) < 1e-12 && si >= 1;
            std::vector<double> ts = {0.04, 0.02, 0.01}, vals(3);
            DiffConfig dc;
            dc.eval_noise = integer_s ? 1e-14 : 5e-13;
            for (int i = 0; i < 3; ++i) {
                // exact series for integer s; finite-N proxy (values reported
                // without pass/fail, the paper gives no data there) otherwise
                std::function<double(double)> logphi;
                if (integer_s)
                    logphi = [&](double u) { return log_phi_exact(si, u); };
                else
                    logphi = [&](double u) {
                        return std::log(phi_finite_N(s, 16, u).value);
                    };
                TauValue tv = tau(ts[i], logphi, dc);
                vals[i] = (kind == BoundaryKind::tau_zero) ? tv.tau : tv.tau / ts[i];
            }
            rep.extrapolated = extrapolate_to_zero(ts, vals);
            rep.reference = 0.0;
            rep.tol = (kind == BoundaryKind::tau_zero) ? 1e-6 : 1e-5;
            bool guaranteed = (kind == BoundaryKind::tau_zero) ? (s > 0.0) : (s > 0.5);
            if (integer_s && guaranteed)
                rep.pass = std::abs(rep.extrapolated - rep.reference) <= rep.tol;
            break;
        }
        case BoundaryKind::h_nu_zero:
        case BoundaryKind::dh_nu_zero: {
            double nu = param;
            if (!(nu > -1.0)) throw std::domain_error("boundary_report: nu must be > -1");
            // xi_N(0) = 0 and xi_N'(0) = -1/nu hold for every N; extrapolate in t
            // at moderate N.
            std::vector<double> ts = {0.1, 0.05, 0.025}, vals(3);
            for (int i = 0; i < 3; ++i) {
                TauValue xv = xi_N({nu, 8, ts[i]});
                vals[i] = (kind == BoundaryKind::h_nu_zero)
                              ? nu * nu / 4.0 + xv.tau
                              : xv.tau / ts[i];
            }
            rep.extrapolated = extrapolate_to_zero(ts, vals);
            if (kind == BoundaryKind::h_nu_zero) {
                rep.reference = nu * nu / 4.0;
                rep.tol = 1e-5;
                if (nu > 0.0)
                    rep.pass = std::abs(rep.extrapolated - rep.reference) <= rep.tol;
            } else {
                rep.reference = -1.0 / nu;
                rep.tol = 1e-4;
                if (nu > 1.0)
                    rep.pass = std::abs(rep.extrapolated - rep.reference) <= rep.tol;
            }
            break;
        }
    }
    return rep;
}

}  // namespace pvsum

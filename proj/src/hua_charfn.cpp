#include "pvsum/hua_charfn.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "pvsum/specfun.hpp"

namespace pvsum {

double v_prefactor(int s) {
    if (s < 0) throw std::domain_error("v_prefactor: s must be >= 0");
    double sign = (((static_cast<long>(s) * (s - 1)) / 2) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(log_barnes_g(2.0 * s + 1.0) - 2.0 * log_barnes_g(s + 1.0));
}

namespace {

// det[1/(k_i+i+j-1)!]_{i,j=1..s} with rows rescaled by (k_i+i)! so entries
// are O(1); the scale factor is divided back in log-free double arithmetic.
double composition_det(const std::vector<int>& ks) {
    int s = static_cast<int>(ks.size());
    if (s == 1) {
        double f = 1.0;
        for (int l = 1; l <= ks[0] + 1; ++l) f *= l;
        return 1.0 / f;  // 1/(k_1+1)!
    }
    Matrix m(s);
    double scale = 1.0;  // prod_i 1/(k_i+i)!
    for (int i = 1; i <= s; ++i) {
        double fact = 1.0;
        for (int l = 1; l <= ks[i - 1] + i; ++l) fact *= l;
        scale /= fact;
        for (int j = 1; j <= s; ++j) {
            double e = 1.0;
            for (int l = 1; l < j; ++l) e /= (ks[i - 1] + i + l);
            m(i - 1, j - 1) = e;
        }
    }
    LogDet d = det_logspace(std::move(m));
    return d.value() * scale;
}

double b_coefficient(int s, int k) {
    double sum = 0.0;
    compositions(k, s, [&](const std::vector<int>& ks) {
        double inv_fact = 1.0;
        for (int v : ks)
            for (int l = 2; l <= v; ++l) inv_fact /= l;
        sum += composition_det(ks) * inv_fact;
    });
    return sum;
}

std::mutex g_coeff_mutex;
std::map<int, std::vector<double>> g_coeff_cache;

}  // namespace

const std::vector<double>& phi_series_coeffs(int s, int k_count) {
    if (s < 1) throw std::domain_error("phi_series_coeffs: s must be >= 1");
    std::lock_guard<std::mutex> lock(g_coeff_mutex);
    auto& v = g_coeff_cache[s];
    while (static_cast<int>(v.size()) < k_count)
        v.push_back(b_coefficient(s, static_cast<int>(v.size())));
    return v;
}

double c_n_constant_log(int N, double s) {
    if (N < 1) throw std::domain_error("c_n_constant_log: N must be >= 1");
    double lg = std::lgamma(N + 1.0);
    for (int j = 1; j <= N; ++j) lg += std::lgamma(static_cast<double>(j)) + std::lgamma(2.0 * s + j);
    return lg;
}

namespace {

struct SeriesSum {
    double scaled_sum;  // sum_k (V b_k) |t|^k
    double err_est;
    int terms;
};

SeriesSum phi_series_scaled(int s, double at, const SeriesConfig& cfg) {
    cfg.validate();
    double v = v_prefactor(s);
    double sum = 0.0;
    double err = 0.0;
    int consecutive_small = 0;
    int k = 0;
    double tpow = 1.0;
    for (; k < cfg.k_max; ++k) {
        const auto& coeffs = phi_series_coeffs(s, k + 1);
        double term = v * coeffs[k] * tpow;
        sum += term;
        tpow *= at;
        if (std::abs(term) < cfg.eps_rel * std::abs(sum))
            ++consecutive_small;
        else
            consecutive_small = 0;
        if (consecutive_small >= 3 && k >= 10) {
            err = std::abs(term);
            return {sum, err, k + 1};
        }
    }
    throw accuracy_error("phi_series: did not converge within k_max", sum, err);
}

}  // namespace

CharFnValue phi_series(int s, double t, const SeriesConfig& cfg) {
    if (s < 1) throw std::domain_error("phi_series: s must be >= 1");
    double at = std::abs(t);
    SeriesSum ss = phi_series_scaled(s, at, cfg);
    double val = std::exp(-at / 2.0) * ss.scaled_sum;
    return {t, val, CharFnMethod::small_t_series, ss.err_est * std::exp(-at / 2.0)};
}

double log_phi_exact(int s, double t, const SeriesConfig& cfg) {
    double at = std::abs(t);
    if (s == 0) return -at / 2.0;
    SeriesSum ss = phi_series_scaled(s, at, cfg);
    return -at / 2.0 + std::log(ss.scaled_sum);
}

CharFnValue phi_exact(int s, double t, const SeriesConfig& cfg) {
    if (s < 0) throw std::domain_error("phi_exact: s must be >= 0");
    cfg.validate();
    double at = std::abs(t);
    if (s == 0) return {t, std::exp(-at / 2.0), CharFnMethod::closed_form_s0, 0.0};
    if (at < cfg.t_switch) {
        CharFnValue c = phi_series(s, t, cfg);
        return c;
    }
    // V^(s) det[I_{j+k+1}(2 sqrt|t|)] / (e^{|t|/2} |t|^{s^2/2})
    double x = 2.0 * std::sqrt(at);
    Matrix m(s);
    double log_entry_scale = 0.0;
    for (int j = 0; j < s; ++j) {
        double row_max = 0.0;
        for (int k = 0; k < s; ++k) {
            m(j, k) = bessel_i(j + k + 1, x);
            row_max = std::max(row_max, std::abs(m(j, k)));
        }
        log_entry_scale += std::log(row_max);
    }
    LogDet d = det_logspace(std::move(m));
    double v = v_prefactor(s);
    if (d.sign * (v < 0 ? -1 : 1) <= 0)
        throw consistency_error("phi_exact: determinant sign inconsistent with positivity");
    double log_val = std::log(std::abs(v)) + d.log_abs - at / 2.0 -
                     0.5 * s * s * std::log(at);
    double value = std::exp(log_val);
    // cancellation estimate: Hadamard-style bound over the true determinant
    double err = value * 2.2e-16 * s * s *
                 std::exp(std::min(700.0, log_entry_scale - d.log_abs));
    return {t, value, CharFnMethod::bessel_det, err};
}

QuadConfig phi_gram_quad_defaults() {
    QuadConfig q;
    q.abs_tol = 1e-15;
    q.rel_tol = 5e-14;
    q.max_subdivisions = 2000;
    q.upper_cutoff = 0.0;  // set per entry from the polynomial degree
    return q;
}

namespace {

// Values of the monic Laguerre family for weight y^alpha e^{-y} at one point.
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

CharFnValue phi_finite_N(double s, int N, double t, const QuadConfig& cfg) {
    if (!(s > -0.5)) throw std::domain_error("phi_finite_N: s must be > -1/2");
    if (N < 1 || N > 24)
        throw std::domain_error("phi_finite_N: N must be in [1, 24]");
    double at = std::abs(t);
    if (at == 0.0) return {t, 1.0, CharFnMethod::hankel_det, 0.0};
    double u = at / N;
    double alpha = 2.0 * s;
    double p = 2.0 * (N - 1) + alpha;
    double cut = std::max(cutoff_for_power(std::max(p, 1.0), 1e-18),
                          cfg.upper_cutoff);
    Matrix m(N);
    std::vector<double> pv;
    for (int j = 0; j < N; ++j) {
        for (int k = j; k < N; ++k) {
            // scale by the geometric mean of the t = 0 diagonal norms so the
            // integrands are O(1) and abs_tol is meaningful for every entry
            double log_scale =
                0.5 * (std::lgamma(j + 1.0) + std::lgamma(j + alpha + 1.0) +
                       std::lgamma(k + 1.0) + std::lgamma(k + alpha + 1.0));
            auto integrand = [&](double y) {
                monic_laguerre_values(std::max(j, k) + 1, alpha, y, pv);
                return pv[j] * pv[k] * std::pow(y + u, s) * std::pow(y, s) *
                       std::exp(-y - log_scale);
            };
            double v;
            if (s < 0.0) {
                // integrand ~ y^s at 0 since (y+u)^s stays finite
                v = quad_algebraic_endpoint(integrand, s, 1.0, cfg).value +
                    adaptive_quad(integrand, 1.0, cut, cfg).value;
            } else {
                v = adaptive_quad(integrand, 0.0, 1.0, cfg).value +
                    adaptive_quad(integrand, 1.0, cut, cfg).value;
            }
            v *= std::exp(log_scale);
            m(j, k) = v;
            m(k, j) = v;
        }
    }
    LogDet d = det_logspace(std::move(m));
    if (d.sign <= 0)
        throw consistency_error("phi_finite_N: Gram determinant not positive");
    double log_cn = 0.0;  // N!/C_N^(s) cancels N!: divide by prod Gamma(j)Gamma(2s+j)
    for (int j = 1; j <= N; ++j)
        log_cn += std::lgamma(static_cast<double>(j)) + std::lgamma(2.0 * s + j);
    double value = std::exp(-at / 2.0 + d.log_abs - log_cn);
    double err = value * (2.0 * N * cfg.rel_tol + N * 4.4e-16);
    return {t, value, CharFnMethod::hankel_det, err};
}

CharFnValue phi_finite_N_laguerre(int s, int N, double t) {
    if (s < 1) throw std::domain_error("phi_finite_N_laguerre: s must be a positive integer");
    if (N < s) throw std::domain_error("phi_finite_N_laguerre: need N >= s");
    double at = std::abs(t);
    double sign = (((static_cast<long>(s) * (s - 1)) / 2) % 2 == 0) ? 1.0 : -1.0;
    double log_pref = 0.0;
    for (int j = 0; j < N; ++j)
        log_pref += 2.0 * std::lgamma(s + N - j + 0.0) - std::lgamma(j + 1.0) -
                    std::lgamma(2.0 * s + N - j + 0.0);
    Matrix m(s);
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            m(i, j) = laguerre(N + s - 1 - i - j, 2.0 * s - 1.0, -at / N);
    LogDet d = det_logspace(std::move(m));
    double value = sign * d.sign * std::exp(log_pref + d.log_abs - at / 2.0);
    if (value <= 0.0)
        throw consistency_error("phi_finite_N_laguerre: non-positive value");
    return {t, value, CharFnMethod::laguerre_det, value * 1e-14 * s * s};
}

TauValue tau(double t, const std::function<double(double)>& log_phi,
             const DiffConfig& cfg) {
    if (t == 0.0) throw std::domain_error("tau: t must be nonzero");
    double at = std::abs(t);
    // tau is even; work at |t| and map back.
    Derivatives d = derivatives_123(log_phi, at, cfg);
    TauValue tv;
    tv.t = t;
    tv.tau = at * d.d1;
    tv.dtau = d.d1 + at * d.d2;
    tv.d2tau = 2.0 * d.d2 + at * d.d3;
    tv.step = d.step;
    return tv;
}

double kernel_Cs(double s, double x, double y) {
    if (!(s > -0.5)) throw std::domain_error("kernel_Cs: s must be > -1/2");
    if (x == 0.0 || y == 0.0) throw std::domain_error("kernel_Cs: x, y must be nonzero");
    double log_t_pref = (2.0 * s - 0.5) * std::log(2.0) + std::lgamma(s + 0.5);
    double log_r_pref = (2.0 * s + 0.5) * std::log(2.0) + std::lgamma(s + 1.5);
    auto T = [&](double z) {
        return std::exp(log_t_pref) * bessel_j(s - 0.5, 1.0 / std::abs(z)) /
               std::sqrt(std::abs(z));
    };
    auto R = [&](double z) {
        return std::exp(log_r_pref) * bessel_j(s + 0.5, 1.0 / std::abs(z)) /
               std::sqrt(std::abs(z));
    };
    double pref = std::exp(2.0 * std::lgamma(s + 1.0) - std::lgamma(2.0 * s + 1.0) -
                           std::lgamma(2.0 * s + 2.0)) /
                  (2.0 * M_PI);
    if (std::abs(x - y) < 1e-6) {
        double mid = 0.5 * (x + y);
        double eps = 5e-7 * std::max(1.0, std::abs(mid));
        double a = mid - eps, b = mid + eps;
        return pref * (T(a) * R(b) - T(b) * R(a)) / (b - a);
    }
    return pref * (T(x) * R(y) - T(y) * R(x)) / (x - y);
}

}  // namespace pvsum

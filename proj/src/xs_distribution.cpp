#include "pvsum/xs_distribution.hpp"

#include <cmath>
#include <vector>

#include "pvsum/hua_charfn.hpp"
#include "pvsum/specfun.hpp"

namespace pvsum {

namespace {

void check_strip(int s, complex h) {
    if (s < 0) throw std::domain_error("moment_R: s must be >= 0");
    double re = h.real();
    if (!(re > -0.5 && re < s + 0.5))
        throw std::domain_error("moment_R: Re h outside (-1/2, s+1/2)");
}

double log_g_prefactor(int s) {
    // G(s+1)^2 / G(2s+1)
    return 2.0 * log_barnes_g(s + 1.0) - log_barnes_g(2.0 * s + 1.0);
}

}  // namespace

DensityValue rho_series(int s, double x, const SeriesConfig& cfg) {
    if (s < 1) throw std::domain_error("rho_series: s must be >= 1");
    cfg.validate();
    // V^(s)/(2 pi) Re sum_k k! b_k(s) (2/(1-ix))^{k+1}
    complex z = 2.0 / complex(1.0, -x);
    complex zpow = z;
    complex sum = 0.0;
    double kfact = 1.0;
    int consecutive_small = 0;
    double err = 0.0;
    int k = 0;
    for (; k < cfg.k_max; ++k) {
        if (k > 0) kfact *= k;
        const auto& b = phi_series_coeffs(s, k + 1);
        complex term = kfact * b[k] * zpow;
        sum += term;
        zpow *= z;
        if (std::abs(term) < cfg.eps_rel * std::abs(sum))
            ++consecutive_small;
        else
            consecutive_small = 0;
        if (consecutive_small >= 3 && k >= 10) {
            err = std::abs(term);
            break;
        }
    }
    if (k >= cfg.k_max)
        throw accuracy_error("rho_series: did not converge within k_max",
                             sum.real(), std::abs(sum));
    double v = v_prefactor(s);
    double val = v * sum.real() / (2.0 * M_PI);
    return {x, val, DensityMethod::general_series,
            std::abs(v) * err / (2.0 * M_PI) + 1e-16 * std::abs(v) / (2.0 * M_PI)};
}

DensityValue rho(int s, double x, const SeriesConfig& cfg) {
    if (s < 0) throw std::domain_error("rho: s must be >= 0");
    switch (s) {
        case 0:
            return {x, 1.0 / (M_PI * (1.0 + x * x)), DensityMethod::cauchy_s0, 0.0};
        case 1: {
            // (-1 + e^{2w} cos(2xw))/(2 pi), w = 1/(1+x^2), written as
            // -2 sin^2(xw) + expm1(2w) cos(2xw) so the tail does not cancel.
            double w = 1.0 / (1.0 + x * x);
            double sn = std::sin(x * w);
            double val = (-2.0 * sn * sn + std::expm1(2.0 * w) * std::cos(2.0 * x * w)) /
                         (2.0 * M_PI);
            return {x, val, DensityMethod::closed_s1, 4e-16 * w / M_PI};
        }
        case 2: {
            // (1/pi) Re[(1-ix)^{-1} 2F2(5/2, 1; 5, 4; 8/(1-ix))]
            complex zinv = 1.0 / complex(1.0, -x);
            SeriesConfig c = cfg;
            c.eps_rel = std::min(cfg.eps_rel, 1e-14);
            auto f = hyp_pfq({complex(2.5, 0.0), complex(1.0, 0.0)},
                             {complex(5.0, 0.0), complex(4.0, 0.0)}, 8.0 * zinv, c);
            double val = (zinv * f.value).real() / M_PI;
            return {x, val, DensityMethod::hyp2f2_s2,
                    (f.err_est + 1e-16) * std::abs(zinv) / M_PI};
        }
        default:
            return rho_series(s, x, cfg);
    }
}

namespace {

// Bracketed series of the general moment expansion:
// F_s(h) = sum_k b_k(s) (-2h)_k 2^k.
complex moment_bracket(int s, complex h, const SeriesConfig& cfg, double* err_out) {
    complex sum = 0.0;
    complex poch = 1.0;  // (-2h)_k
    double twopow = 1.0;
    int consecutive_small = 0;
    for (int k = 0; k < cfg.k_max; ++k) {
        const auto& b = phi_series_coeffs(s, k + 1);
        complex term = b[k] * poch * twopow;
        sum += term;
        poch *= (-2.0 * h + static_cast<double>(k));
        twopow *= 2.0;
        if (std::abs(term) < cfg.eps_rel * std::abs(sum) || std::abs(term) == 0.0)
            ++consecutive_small;
        else
            consecutive_small = 0;
        if (consecutive_small >= 3 && k >= 10) {
            if (err_out) *err_out = std::abs(term);
            return sum;
        }
    }
    throw accuracy_error("moment_R: bracket series did not converge",
                         sum.real(), std::abs(sum));
}

}  // namespace

MomentResult moment_R(int s, complex h, const SeriesConfig& cfg) {
    check_strip(s, h);
    cfg.validate();
    if (h.imag() == 0.0) {
        double hr = h.real();
        double m = std::round(hr - 0.5);
        if (m >= 0.0 && std::abs(hr - (m + 0.5)) < 1e-6)
            return moment_R_halfint(s, static_cast<int>(m), cfg);
    }
    complex cospi = std::cos(M_PI * h);
    if (std::abs(cospi) < 1e-14)
        throw std::domain_error(
            "moment_R: indeterminate form at half-integer h; use moment_R_halfint");
    complex pref = std::exp(-2.0 * h * std::log(2.0)) / cospi;
    MomentResult r;
    r.s = s;
    r.h = h;
    switch (s) {
        case 0:
            r.value = pref;
            r.method = MomentMethod::closed_s0;
            r.err_est = std::abs(r.value) * 4e-16;
            break;
        case 1: {
            auto f = hyp_pfq({-2.0 * h}, {complex(2.0, 0.0)}, complex(2.0, 0.0), cfg);
            r.value = pref * f.value;
            r.method = MomentMethod::hyp_s1;
            r.err_est = std::abs(pref) * (f.err_est + 1e-15 * std::abs(f.value));
            break;
        }
        case 2: {
            auto f = hyp_pfq({complex(2.5, 0.0), -2.0 * h},
                             {complex(5.0, 0.0), complex(4.0, 0.0)},
                             complex(8.0, 0.0), cfg);
            r.value = pref * f.value / 12.0;
            r.method = MomentMethod::hyp_s2;
            r.err_est = std::abs(pref) / 12.0 * (f.err_est + 1e-15 * std::abs(f.value));
            break;
        }
        default: {
            double sign = (((static_cast<long>(s) * (s - 1)) / 2) % 2 == 0) ? 1.0 : -1.0;
            double err = 0.0;
            complex bracket = moment_bracket(s, h, cfg, &err);
            r.value = sign * pref * bracket;
            r.method = MomentMethod::general_series;
            r.err_est = std::abs(pref) * (err + 1e-15 * std::abs(bracket));
            break;
        }
    }
    return r;
}

MomentResult moment_R_halfint(int s, int m, const SeriesConfig& cfg) {
    if (s < 1) throw std::domain_error("moment_R_halfint: s must be >= 1");
    if (m < 0 || !(m + 0.5 < s + 0.5))
        throw std::domain_error("moment_R_halfint: need 0 <= m < s");
    cfg.validate();
    // R(s, m+1/2) = sign(s) (-1)^{m+1} 2^{-(2m+1)} F'(m+1/2) / pi with
    // F'(h) = sum_k b_k(s) d/dh[(-2h)_k] 2^k (term-wise product rule).
    double sum = 0.0;
    double twopow = 1.0;
    int consecutive_small = 0;
    double err = 0.0;
    int k = 0;
    for (; k < cfg.k_max; ++k) {
        const auto& b = phi_series_coeffs(s, k + 1);
        double term = b[k] * pochhammer_neg2h_deriv(m, k) * twopow;
        sum += term;
        twopow *= 2.0;
        if (std::abs(term) < cfg.eps_rel * std::abs(sum) && k > 2 * m + 2)
            ++consecutive_small;
        else
            consecutive_small = 0;
        if (consecutive_small >= 3 && k >= 10) {
            err = std::abs(term);
            break;
        }
    }
    if (k >= cfg.k_max)
        throw accuracy_error("moment_R_halfint: series did not converge", sum, err);
    double sign_s = (((static_cast<long>(s) * (s - 1)) / 2) % 2 == 0) ? 1.0 : -1.0;
    double sign_m = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^{m+1}
    double value = sign_s * sign_m * std::exp(-(2.0 * m + 1.0) * std::log(2.0)) * sum / M_PI;
    MomentResult r;
    r.s = s;
    r.h = complex(m + 0.5, 0.0);
    r.value = complex(value, 0.0);
    r.method = MomentMethod::lhopital;
    r.err_est = std::abs(err / M_PI);
    return r;
}

double abs_moment(int s, double h, const SeriesConfig& cfg) {
    MomentResult r = moment_R(s, complex(h, 0.0), cfg);
    return r.value.real() *
           std::exp(2.0 * h * std::log(2.0) - log_g_prefactor(s));
}

double series_vanishing_check(int s, int m) {
    if (s < 1 || m < 0 || m >= s)
        throw std::domain_error("series_vanishing_check: need s >= 1, 0 <= m < s");
    // (-2h)_k at h = m+1/2 vanishes for k >= 2m+2: a finite sum.
    double sum = 0.0;
    const auto& b = phi_series_coeffs(s, 2 * m + 2);
    double twopow = 1.0;
    for (int k = 0; k <= 2 * m + 1; ++k) {
        sum += b[k] * pochhammer(-(2.0 * m + 1.0), k) * twopow;
        twopow *= 2.0;
    }
    return sum;
}

double coeff_a(int s, int k) {
    if (k < 0 || k > 4) throw std::domain_error("coeff_a: k must be in [0, 4]");
    if (k >= 3 && s < 2) throw std::domain_error("coeff_a: k in {3,4} requires s >= 2");
    if (s < 1) throw std::domain_error("coeff_a: s must be >= 1");
    double s2 = 4.0 * static_cast<double>(s) * s;
    switch (k) {
        case 0: return 1.0;
        case 1: return 1.0;
        case 2: return (s2 - 2.0) / (s2 - 1.0) / 2.0;
        case 3: return (s2 - 4.0) / (s2 - 1.0) / 6.0;
        default: {
            double n = (s2 - 8.0) * (s2 - 8.0) + 2.0;
            return n / ((s2 - 1.0) * (s2 - 9.0)) / 24.0;
        }
    }
}

double coeff_a_extracted(int s, int k) {
    if (s < 1 || k < 0) throw std::domain_error("coeff_a_extracted: bad arguments");
    const auto& b = phi_series_coeffs(s, k + 1);
    return v_prefactor(s) * b[k] * std::pow(2.0, k);
}

EvalResult arithmetic_factor(int s, long prime_cutoff, const SeriesConfig& cfg) {
    if (s < 1) throw std::domain_error("arithmetic_factor: s must be >= 1");
    if (prime_cutoff < 2)
        throw std::domain_error("arithmetic_factor: prime_cutoff must be >= 2");
    cfg.validate();
    std::vector<bool> sieve(prime_cutoff + 1, true);
    double log_sum = 0.0;
    double log_sum_half = 0.0;
    int n_primes = 0;
    double s2 = static_cast<double>(s) * s;
    for (long p = 2; p <= prime_cutoff; ++p) {
        if (!sieve[p]) continue;
        for (long q = p * p; q <= prime_cutoff; q += p) sieve[q] = false;
        // local factor (1 - 1/p)^{s^2} * sum_k [ (s)_k / k! ]^2 p^{-k}
        double z = 1.0 / static_cast<double>(p);
        double term = 1.0, inner = 1.0;
        for (int k = 0; k < cfg.k_max; ++k) {
            double c = (s + static_cast<double>(k)) / (k + 1.0);
            term *= c * c * z;
            inner += term;
            if (term < 1e-17 * inner) break;
        }
        log_sum += s2 * std::log1p(-z) + std::log(inner);
        if (p <= prime_cutoff / 2) log_sum_half = log_sum;
        ++n_primes;
    }
    double value = std::exp(log_sum);
    double err = std::abs(value - std::exp(log_sum_half));
    return {value, err, n_primes};
}

double conjecture_rhs(int s, double h, double x, long prime_cutoff,
                      const SeriesConfig& cfg) {
    if (s < 1) throw std::domain_error("conjecture_rhs: s must be >= 1");
    if (!(h >= 0.0 && h < s + 0.5))
        throw std::domain_error("conjecture_rhs: h must be in [0, s+1/2)");
    if (!(x > std::exp(1.0)))
        throw std::domain_error("conjecture_rhs: x must exceed e");
    double a = arithmetic_factor(s, prime_cutoff, cfg).value;
    double r = moment_R(s, complex(h, 0.0), cfg).value.real();
    return a * r * std::pow(std::log(x), static_cast<double>(s) * s + 2.0 * h);
}

}  // namespace pvsum

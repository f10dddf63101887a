#include "pvsum/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pvsum {

namespace {

// Lanczos coefficients, g = 607/128, as published by Godfrey.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kEulerGamma = 0.57721566490153286061;
// log G(1/2) = (1/24) log 2 - (1/4) log pi + 1/8 - (3/2) log A,
// A the Glaisher-Kinkelin constant.
constexpr double kLogBarnesHalf = -0.50543305448969538280;

}  // namespace

complex log_gamma(complex z) {
    if (z.imag() == 0.0) {
        if (z.real() <= 0.0)
            throw std::domain_error("log_gamma: require Re z > 0");
        return complex(log_gamma(z.real()), 0.0);
    }
    if (z.real() <= 0.0)
        throw std::domain_error("log_gamma: require Re z > 0");
    complex zm1 = z - 1.0;
    complex sum = kLanczos[0];
    for (int k = 1; k < 15; ++k) sum += kLanczos[k] / (zm1 + static_cast<double>(k));
    complex base = zm1 + kLanczosG + 0.5;
    return 0.5 * kLog2Pi + (zm1 + 0.5) * std::log(base) - base + std::log(sum);
}

double log_gamma(double x) {
    if (x <= 0.0) throw std::domain_error("log_gamma: require Re z > 0");
    return std::lgamma(x);
}

namespace {

bool is_half_integer_grid(double z) {
    double two_z = 2.0 * z;
    return std::abs(two_z - std::round(two_z)) < 1e-13;
}

// sum_{k > K} k^{-r} via Euler-Maclaurin with two Bernoulli corrections.
double zeta_tail(double r, double K) {
    double a = K + 1.0;
    double t = std::pow(a, 1.0 - r) / (r - 1.0) + 0.5 * std::pow(a, -r);
    t += (r / 12.0) * std::pow(a, -r - 1.0);
    t -= r * (r + 1.0) * (r + 2.0) / 720.0 * std::pow(a, -r - 3.0);
    return t;
}

double log_barnes_g_product(double z) {
    // log G(1+z) with the product over k <= K summed directly and the
    // remainder expanded as sum_{m>=3} (-1)^{m+1} z^m/m * zeta_tail(m-1, K).
    const int K = 256;
    double s = 0.5 * z * std::log(2.0 * M_PI) - 0.5 * (z + z * z * (1.0 + kEulerGamma));
    for (int k = 1; k <= K; ++k) {
        s += k * std::log1p(z / k) + z * z / (2.0 * k) - z;
    }
    double zpow = z * z * z;  // z^m starting at m = 3
    for (int m = 3; m < 200; ++m) {
        double term = ((m % 2 == 1) ? 1.0 : -1.0) * zpow / m * zeta_tail(m - 1.0, K);
        s += term;
        if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(s))) break;
        zpow *= z;
    }
    return s;
}

}  // namespace

double log_barnes_g(double z) {
    if (!(z > 0.0)) throw std::domain_error("barnes_g: require z > 0");
    if (is_half_integer_grid(z)) {
        // Recurrence up from G(1/2) or G(1).
        bool integral = std::abs(z - std::round(z)) < 1e-13;
        double base = integral ? 1.0 : 0.5;
        double log_g = integral ? 0.0 : kLogBarnesHalf;
        int steps = static_cast<int>(std::round(z - base));
        for (int i = 0; i < steps; ++i) log_g += std::lgamma(base + i);
        return log_g;
    }
    // Reduce to z' in (0,1] then apply the product form for log G(1+(z'-1)).
    double zz = z;
    double acc = 0.0;
    while (zz > 1.0) {
        zz -= 1.0;
        acc += std::lgamma(zz);
    }
    return acc + log_barnes_g_product(zz - 1.0);
}

double barnes_g(double z) { return std::exp(log_barnes_g(z)); }

double pochhammer(double a, int k) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= a + i;
    return p;
}

complex pochhammer(complex a, int k) {
    complex p = 1.0;
    for (int i = 0; i < k; ++i) p *= a + static_cast<double>(i);
    return p;
}

double pochhammer_neg2h_deriv(int m, int k) {
    // factors of (-2h)_k at h = m+1/2 are (i - 2m - 1), i = 0..k-1
    double sum = 0.0;
    for (int j = 0; j < k; ++j) {
        double prod = 1.0;
        for (int i = 0; i < k; ++i) {
            if (i == j) continue;
            prod *= static_cast<double>(i - 2 * m - 1);
        }
        sum += prod;
    }
    return -2.0 * sum;
}

double bessel_i(int order, double x) {
    if (order < 0) throw std::domain_error("bessel_i: order must be >= 0");
    if (x < 0.0) throw std::domain_error("bessel_i: x must be >= 0");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    double half = 0.5 * x;
    double term = std::exp(order * std::log(half) - std::lgamma(order + 1.0));
    double sum = term;
    for (int k = 1; k < 600; ++k) {
        term *= half * half / (k * (k + static_cast<double>(order)));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

double bessel_j(double order, double x) {
    if (!(order > -1.0)) throw std::domain_error("bessel_j: order must be > -1");
    if (!(x > 0.0)) throw std::domain_error("bessel_j: x must be > 0");
    if (x > bessel_j_max_x)
        throw std::range_error("bessel_j: x beyond series range");
    double half = 0.5 * x;
    double term = std::exp(order * std::log(half) - std::lgamma(order + 1.0));
    double sum = term;
    for (int k = 1; k < 600; ++k) {
        term *= -half * half / (k * (k + order));
        sum += term;
        if (std::abs(term) < 1e-17 * (std::abs(sum) + 1e-300) && k > order) break;
    }
    return sum;
}

double laguerre(int n, double alpha, double x) {
    if (n < 0) throw std::domain_error("laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        double lp1 = ((2.0 * k + 1.0 + alpha - x) * l - (k + alpha) * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

namespace {

template <typename T>
struct PfqResult {
    T value;
    double err_est;
    int terms_used;
};

template <typename T>
PfqResult<T> hyp_pfq_impl(const std::vector<T>& a, const std::vector<T>& b, T z,
                          const SeriesConfig& cfg) {
    cfg.validate();
    // Termination index if some upper parameter is a nonpositive integer.
    int terminate_at = -1;
    for (const T& ai : a) {
        double re = std::real(complex(ai));
        double im = std::imag(complex(ai));
        if (im == 0.0 && re <= 0.0 && std::abs(re - std::round(re)) == 0.0) {
            int kk = static_cast<int>(-std::round(re));
            if (terminate_at < 0 || kk < terminate_at) terminate_at = kk;
        }
    }
    T term = T(1);
    T sum = T(1);
    int consecutive_small = 0;
    int k = 0;
    for (; k < cfg.k_max; ++k) {
        if (terminate_at >= 0 && k >= terminate_at) {
            return {sum, 0.0, k + 1};
        }
        T num = T(1);
        for (const T& ai : a) num *= ai + static_cast<double>(k);
        T den = T(1);
        for (const T& bi : b) {
            T f = bi + static_cast<double>(k);
            if (std::abs(complex(f)) == 0.0)
                throw std::domain_error(
                    "hyp_pfq: nonpositive-integer denominator parameter reached");
            den *= f;
        }
        term *= num / den * z / static_cast<double>(k + 1);
        sum += term;
        if (std::abs(complex(term)) < cfg.eps_rel * std::abs(complex(sum)))
            ++consecutive_small;
        else
            consecutive_small = 0;
        if (consecutive_small >= 3 && k >= 10) {
            return {sum, std::abs(complex(term)), k + 2};
        }
    }
    throw accuracy_error("hyp_pfq: series did not converge within k_max",
                         std::real(complex(sum)), std::abs(complex(term)));
}

}  // namespace

EvalResult hyp_pfq(const std::vector<double>& a, const std::vector<double>& b,
                   double z, const SeriesConfig& cfg) {
    auto r = hyp_pfq_impl<double>(a, b, z, cfg);
    return {r.value, r.err_est, r.terms_used};
}

ComplexEvalResult hyp_pfq(const std::vector<complex>& a,
                          const std::vector<complex>& b, complex z,
                          const SeriesConfig& cfg) {
    auto r = hyp_pfq_impl<complex>(a, b, z, cfg);
    return {r.value, r.err_est, r.terms_used};
}

double LogDet::value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
}

LogDet det_logspace(Matrix m) {
    const int n = m.n;
    if (n < 1) throw std::domain_error("det_logspace: need n >= 1");
    int sign = 1;
    double log_abs = 0.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(m(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) {
            return {0, -std::numeric_limits<double>::infinity()};
        }
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            sign = -sign;
        }
        double d = m(col, col);
        if (d < 0.0) sign = -sign;
        log_abs += std::log(std::abs(d));
        for (int r = col + 1; r < n; ++r) {
            double f = m(r, col) / d;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
        }
    }
    return {sign, log_abs};
}

void compositions(int k, int s,
                  const std::function<void(const std::vector<int>&)>& visit) {
    if (k < 0 || s < 1) throw std::domain_error("compositions: need k >= 0, s >= 1");
    std::vector<int> tuple(s, 0);
    // lexicographic enumeration over (k_1, ..., k_{s-1}); last entry is forced
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == s - 1) {
            tuple[pos] = remaining;
            visit(tuple);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            tuple[pos] = v;
            rec(pos + 1, remaining - v);
        }
    };
    rec(0, k);
}

std::uint64_t compositions_count(int k, int s) {
    // C(k+s-1, s-1)
    std::uint64_t c = 1;
    for (int i = 1; i < s; ++i) c = c * static_cast<std::uint64_t>(k + i) / i;
    return c;
}

}  // namespace pvsum

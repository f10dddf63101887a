#ifndef PVSUM_SPECFUN_HPP
#define PVSUM_SPECFUN_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "pvsum/common.hpp"

namespace pvsum {

// Principal branch of log Gamma for Re z > 0 (Lanczos).  Real arguments are
// routed through std::lgamma, which is accurate to full double precision.
complex log_gamma(complex z);
double log_gamma(double x);

// Barnes G-function for z > 0.  Integer and half-integer arguments use the
// recurrence G(z+1) = Gamma(z) G(z) anchored at G(1) = 1 and G(1/2); other
// arguments use the Weierstrass-type product with an Euler-Maclaurin tail.
double barnes_g(double z);
double log_barnes_g(double z);

// (a)_k = a (a+1) ... (a+k-1), (a)_0 = 1, as an explicit product.
double pochhammer(double a, int k);
complex pochhammer(complex a, int k);

// d/dh (-2h)_k evaluated at h = m + 1/2, by the product rule:
// (-2) * sum_{j=0}^{k-1} prod_{i != j} (i - 2m - 1).
double pochhammer_neg2h_deriv(int m, int k);

// Modified Bessel I_n(x), integer order n >= 0, x >= 0, by power series.
double bessel_i(int order, double x);

// Bessel J_nu(x), nu > -1, 0 < x <= bessel_j_max_x, by power series.
inline constexpr double bessel_j_max_x = 30.0;
double bessel_j(double order, double x);

// Generalized Laguerre polynomial L_n^{(alpha)}(x), three-term recurrence.
double laguerre(int n, double alpha, double x);

// pFq(a; b; z) by direct term recursion.  Terminating series (some a_i a
// nonpositive integer) are summed exactly; otherwise stops per cfg.
EvalResult hyp_pfq(const std::vector<double>& a, const std::vector<double>& b,
                   double z, const SeriesConfig& cfg = {});
ComplexEvalResult hyp_pfq(const std::vector<complex>& a,
                          const std::vector<complex>& b, complex z,
                          const SeriesConfig& cfg = {});

// Dense square matrix, row major.  Only what the determinant and Gram
// builders need.
struct Matrix {
    explicit Matrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
    int n;
    std::vector<double> a;
    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// Determinant in (sign, log|det|) form via LU with partial pivoting.
// sign = 0 and log_abs = -inf flag an exactly singular matrix.
struct LogDet {
    int sign = 0;
    double log_abs = 0.0;
    double value() const;
};
LogDet det_logspace(Matrix m);

// Enumerates all (k_1, ..., k_s) with k_i >= 0 and sum k_i = k in
// lexicographic order; calls visit once per tuple.  The tuple count is
// C(k+s-1, s-1).
void compositions(int k, int s, const std::function<void(const std::vector<int>&)>& visit);
std::uint64_t compositions_count(int k, int s);

}  // namespace pvsum

#endif

#ifndef PVSUM_XS_DISTRIBUTION_HPP
#define PVSUM_XS_DISTRIBUTION_HPP

#include "pvsum/common.hpp"

namespace pvsum {

enum class MomentMethod { closed_s0, hyp_s1, hyp_s2, general_series, lhopital };

struct MomentResult {
    int s = 0;
    complex h{0.0, 0.0};
    complex value{0.0, 0.0};
    MomentMethod method = MomentMethod::closed_s0;
    double err_est = 0.0;
};

enum class DensityMethod { cauchy_s0, closed_s1, hyp2f2_s2, general_series };

struct DensityValue {
    double x = 0.0;
    double rho = 0.0;
    DensityMethod method = DensityMethod::cauchy_s0;
    double err_est = 0.0;
};

// Density of X(s) at x, integer s >= 0.  s = 0,1,2 use the closed forms
// (the s = 1 form rewritten with expm1 so the x^{-4} tail survives in
// doubles); s >= 3 sums the composition series.
DensityValue rho(int s, double x, const SeriesConfig& cfg = {});

// The composition-series route for any s >= 1 (used for the s = 2
// Vandermonde-collapse cross-check).
DensityValue rho_series(int s, double x, const SeriesConfig& cfg = {});

// R(s, h) for Re h in (-1/2, s+1/2).  Real h within 1e-6 of a half-integer
// m + 1/2 is rerouted through moment_R_halfint.
MomentResult moment_R(int s, complex h, const SeriesConfig& cfg = {});

// R(s, m+1/2) by L'Hopital, term-wise differentiated series.
MomentResult moment_R_halfint(int s, int m, const SeriesConfig& cfg = {});

// E|X(s)|^{2h} = R(s,h) * 2^{2h} G(2s+1)/G(s+1)^2; real h in the strip.
double abs_moment(int s, double h, const SeriesConfig& cfg = {});

// Value of the bracketed series of the moment expansion at h = m + 1/2;
// vanishes identically for m < s (the sum is finite: terms die at k = 2m+2).
double series_vanishing_check(int s, int m);

// Rational closed forms a_k(s), k <= 4, of the expansion
// R(s,h) = (G(s+1)^2/G(2s+1)) 2^{-2h} / cos(pi h) * sum_k a_k(s) (-2h)_k.
double coeff_a(int s, int k);

// The same coefficient extracted by brute force from the composition series:
// a_k(s) = V^(s) b_k(s) 2^k.
double coeff_a_extracted(int s, int k);

// Truncated Euler product of the arithmetic factor
// a(s) = prod_p (1-1/p)^{s^2} 2F1(s, s; 1; 1/p).
EvalResult arithmetic_factor(int s, long prime_cutoff, const SeriesConfig& cfg = {});

// a(s) * R(s,h) * (log x)^{s^2 + 2h} for h in [0, s+1/2), x > e.
double conjecture_rhs(int s, double h, double x, long prime_cutoff,
                      const SeriesConfig& cfg = {});

}  // namespace pvsum

#endif

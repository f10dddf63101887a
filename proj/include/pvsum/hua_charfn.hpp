#ifndef PVSUM_HUA_CHARFN_HPP
#define PVSUM_HUA_CHARFN_HPP

#include <functional>
#include <vector>

#include "pvsum/common.hpp"
#include "pvsum/numdiff.hpp"
#include "pvsum/quad.hpp"

namespace pvsum {

enum class CharFnMethod {
    closed_form_s0,
    bessel_det,
    small_t_series,
    hankel_det,
    laguerre_det,
};

struct CharFnValue {
    double t = 0.0;
    double value = 0.0;  // in (0, 1], equals 1 at t = 0, even in t
    CharFnMethod method = CharFnMethod::closed_form_s0;
    double err_est = 0.0;
};

struct TauValue {
    double t = 0.0;
    double tau = 0.0;
    double dtau = 0.0;
    double d2tau = 0.0;
    double step = 0.0;
};

// V^(s) = (-1)^{s(s-1)/2} G(2s+1)/G(s+1)^2, the Barnes-G prefactor of the
// Bessel determinant and of the composition series.
double v_prefactor(int s);

// Coefficients b_k(s) = sum_{k_1+...+k_s=k} det[1/(k_i+i+j-1)!] prod_j 1/k_j!
// of the expansion e^{|t|/2} phi^(s)(t) = V^(s) sum_k b_k(s) |t|^k.
// Cached per s; the returned reference stays valid for the process lifetime.
const std::vector<double>& phi_series_coeffs(int s, int k_count);

// log C_N^(s) = log N! + sum_{j=1}^N [log Gamma(j) + log Gamma(2s+j)].
double c_n_constant_log(int N, double s);

// Exact characteristic function of X(s), integer s >= 0.  s = 0 is
// e^{-|t|/2}; s >= 1 switches between the composition series (|t| below
// cfg.t_switch) and the Bessel-determinant closed form.
CharFnValue phi_exact(int s, double t, const SeriesConfig& cfg = {});

// The composition series route on its own, s >= 1 (valid for all t).
CharFnValue phi_series(int s, double t, const SeriesConfig& cfg = {});

// log of e^{|t|/2} phi^(s)(t) via the series; the numerically quiet route
// used to build tau for integer s.
double log_phi_exact(int s, double t, const SeriesConfig& cfg = {});

// Quadrature defaults tight enough for the determinant-accuracy criteria.
QuadConfig phi_gram_quad_defaults();

// Finite-N characteristic function of the scaled Hua-Pickrell trace,
// s > -1/2 real, N <= 24, via a Gram determinant of monic Laguerre
// polynomials against the weight (y + |t|/N)^s y^s e^{-y}.
CharFnValue phi_finite_N(double s, int N, double t,
                         const QuadConfig& cfg = phi_gram_quad_defaults());

// Same object through the s x s Laguerre-polynomial determinant, s in N,
// N >= s.
CharFnValue phi_finite_N_laguerre(int s, int N, double t);

// tau = t (log phi)'(t) with first and second tau-derivatives, from
// Richardson central differences of the supplied log phi.
TauValue tau(double t, const std::function<double(double)>& log_phi,
             const DiffConfig& cfg = {});

// Correlation kernel K^(s)(x, y) of the process C^(s); x, y nonzero.
// |x - y| below 1e-6 is evaluated by symmetric offsets about the midpoint.
double kernel_Cs(double s, double x, double y);

}  // namespace pvsum

#endif

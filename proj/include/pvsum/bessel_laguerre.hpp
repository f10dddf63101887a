#ifndef PVSUM_BESSEL_LAGUERRE_HPP
#define PVSUM_BESSEL_LAGUERRE_HPP

#include <vector>

#include "pvsum/common.hpp"
#include "pvsum/hua_charfn.hpp"
#include "pvsum/quad.hpp"

namespace pvsum {

struct BesselParams {
    double nu = 0.0;  // > -1
    int N = 1;
    double t = 0.0;  // >= 0
};

enum class LaplaceMethod { hankel_quadrature, monte_carlo };

struct LaplaceValue {
    double t = 0.0;
    double value = 1.0;  // in (0, 1], 1 at t = 0, non-increasing in t
    double err_est = 0.0;
    LaplaceMethod method = LaplaceMethod::hankel_quadrature;
};

QuadConfig psi_gram_quad_defaults();
DiffConfig psi_diff_defaults();

// psi_N^(nu)(t) = E exp(-t sum_j 1/(N x_j)) under the LUE, reduced to a Gram
// determinant of monic Laguerre polynomials against x^nu e^{-x - t/(Nx)}.
// The x -> e^u substitution makes the integrand decay doubly exponentially
// at both ends.  N <= 16 for the quadrature route.
LaplaceValue psi_N(const BesselParams& p,
                   const QuadConfig& cfg = psi_gram_quad_defaults());

double log_psi_N(const BesselParams& p,
                 const QuadConfig& cfg = psi_gram_quad_defaults());

// xi_N = t d/dt log psi_N and its derivatives by Richardson differences.
TauValue xi_N(const BesselParams& p, const DiffConfig& dc = psi_diff_defaults(),
              const QuadConfig& cfg = psi_gram_quad_defaults());

// nu^2/4 + Richardson-in-1/N extrapolation of xi_N(t) over N_list (ascending,
// at least two entries); err_est is the last extrapolation increment.
struct HNuEstimate {
    double value = 0.0;
    double err_est = 0.0;
    bool monotone = true;  // false flags non-monotone convergence in N
};
HNuEstimate h_nu_estimate(double nu, double t, const std::vector<int>& N_list,
                          const DiffConfig& dc = psi_diff_defaults(),
                          const QuadConfig& cfg = psi_gram_quad_defaults());

// E[e_1^k] = 2^k Gamma(nu+1-k)/Gamma(nu+1) for k < nu+1 (Inverse-Gamma law);
// larger k throws with the divergence threshold in the message.
double inverse_gamma_moment(double nu, int k);
double inverse_gamma_density(double nu, double x);

// Pointwise Bessel-process correlation kernel on (0, infty)^2.
double kernel_bessel(double nu, double x, double y);

}  // namespace pvsum

#endif

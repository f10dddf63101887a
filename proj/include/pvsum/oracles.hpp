#ifndef PVSUM_ORACLES_HPP
#define PVSUM_ORACLES_HPP

#include "pvsum/common.hpp"
#include "pvsum/quad.hpp"

namespace pvsum {

QuadConfig oracle_quad_defaults();  // 1e-8 abs / 1e-8 rel

// Moment of the deformed Laguerre weight:
// \int_0^infty y^{j+k} (y+t)^lambda y^alpha e^{-y} dy, alpha > -1.
// Split at y = 1; the y^alpha endpoint is removed by substitution when
// alpha < 0.
double hankel_moment(int j, int k, double t, double alpha, double lambda,
                     const QuadConfig& cfg = oracle_quad_defaults());

// Both sides of the N = 1 integral identity
// \int e^{itx} (1+x^2)^{-s-1} dx  =  pi 2^{-2s} Gamma(s+1)^{-2} e^{-t}
//                                    \int_0^infty (y+2t)^s y^s e^{-y} dy,
// each by adaptive quadrature (the oscillatory side gets an
// integration-by-parts tail), plus their relative gap.
struct WinnCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_gap = 0.0;
};
WinnCheck winn_identity_check_N1(double s, double t,
                                 const QuadConfig& cfg = oracle_quad_defaults());

// log of the Hua-Pickrell eigenvalue normalizer
// z_N^(s) = pi^N 2^{-N(N+2s-1)} prod_{j=0}^{N-1} j! Gamma(2s+N-j)/Gamma(s+N-j)^2
// (mass of Delta^2 prod (1+x^2)^{-s-N} over R^N / S_N).
double selberg_norm_log(int N, double s);
double selberg_norm(int N, double s);

// Quadrature cross-checks of the normalizer for N = 1, 2 (tan substitution,
// so the domain is exact).  Returns the integral, not its log.
double selberg_norm_quadrature(int N, double s,
                               const QuadConfig& cfg = oracle_quad_defaults());

// log a_{N,k}^{(alpha)} = log C_N^{((alpha-1)/2)} + sum_{j=1}^k log(alpha+N-j).
double aomoto_log(int N, int k, double alpha);
double aomoto(int N, int k, double alpha);
double aomoto_quadrature(int N, int k, double alpha,
                         const QuadConfig& cfg = oracle_quad_defaults());

// Density of X(s) by Fourier inversion of the exact characteristic function:
// rho(x) = (1/pi) \int_0^infty cos(xt) phi^(s)(2t) dt.  The cutoff comes from
// the Bessel-bound envelope e^{-t + 2s sqrt(2t)}, monitored during
// integration.
double density_by_inversion(int s, double x,
                            const QuadConfig& cfg = oracle_quad_defaults());

// E|X(s)|^{2h} by quadrature of |x|^{2h} against the stable density forms,
// split at |x| = 1, with a fitted power-law tail beyond the
// cancellation-safe range.
double moment_by_quadrature(int s, double h,
                            const QuadConfig& cfg = oracle_quad_defaults());

}  // namespace pvsum

#endif

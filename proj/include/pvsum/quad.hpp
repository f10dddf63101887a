#ifndef PVSUM_QUAD_HPP
#define PVSUM_QUAD_HPP

#include <functional>

#include "pvsum/common.hpp"

namespace pvsum {

struct QuadConfig {
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    int max_subdivisions = 4000;
    double upper_cutoff = 60.0;  // truncation point for integrals with e^{-y} decay

    void validate() const {
        if (!(abs_tol > 0.0 && abs_tol <= 1e-4) || !(rel_tol > 0.0 && rel_tol <= 1e-4))
            throw std::domain_error("QuadConfig: tolerances must be in (0, 1e-4]");
        if (max_subdivisions < 1)
            throw std::domain_error("QuadConfig: max_subdivisions must be positive");
        if (!(upper_cutoff > 0.0))
            throw std::domain_error("QuadConfig: upper_cutoff must be positive");
    }
};

// Adaptive Gauss-Kronrod (G7, K15) on [a, b].  Subdivides the interval with
// the largest error estimate until the QUADPACK-style global estimate meets
// max(abs_tol, rel_tol * |integral|); otherwise throws accuracy_error with
// the best estimate attached.
EvalResult adaptive_quad(const std::function<double(double)>& f, double a,
                         double b, const QuadConfig& cfg);

// Smallest c with y^p e^{-y} at y = c below tol relative to the peak at y = p.
double cutoff_for_power(double p, double tol);

// \int_a^infty f, truncated at max(cfg.upper_cutoff, a + 1).
EvalResult quad_to_infinity(const std::function<double(double)>& f, double a,
                            const QuadConfig& cfg);

// \int_0^b y^alpha g(y) dy with alpha in (-1, 0) handled by the exact
// substitution y = u^{1/(1+alpha)}.  f is the full integrand including y^alpha.
EvalResult quad_algebraic_endpoint(const std::function<double(double)>& f,
                                   double alpha, double b, const QuadConfig& cfg);

}  // namespace pvsum

#endif

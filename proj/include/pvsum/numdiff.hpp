#ifndef PVSUM_NUMDIFF_HPP
#define PVSUM_NUMDIFF_HPP

#include <functional>

namespace pvsum {

struct DiffConfig {
    // Initial step before noise balancing; 0 selects max(1e-3, 1e-3 |t|).
    double h0 = 0.0;
    // Relative evaluation noise of f, used to balance step against truncation.
    double eval_noise = 1e-13;
    // Keep t - 3h positive (and away from a nearby singular point).
    double max_step_fraction = 0.28;
};

struct Derivatives {
    double f0 = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double step = 0.0;     // base step actually used
    double err_est = 0.0;  // Richardson increment of the worst (third) derivative
};

// First three derivatives of f at t from O(h^4) central stencils evaluated at
// steps h and h/2, Richardson-combined.  The base step balances the stated
// evaluation noise against truncation for the third derivative.
Derivatives derivatives_123(const std::function<double(double)>& f, double t,
                            const DiffConfig& cfg = {});

}  // namespace pvsum

#endif

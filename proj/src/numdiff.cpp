#include "pvsum/numdiff.hpp"

#include <algorithm>
#include <cmath>

namespace pvsum {

namespace {

struct Stencil {
    double d1, d2, d3;
};

// O(h^4) central stencils on +-h, +-2h, +-3h.
Stencil stencil_123(const std::function<double(double)>& f, double t, double h,
                    double f0) {
    double f1 = f(t + h), fm1 = f(t - h);
    double f2 = f(t + 2 * h), fm2 = f(t - 2 * h);
    double f3 = f(t + 3 * h), fm3 = f(t - 3 * h);
    Stencil s;
    s.d1 = (fm2 - 8.0 * fm1 + 8.0 * f1 - f2) / (12.0 * h);
    s.d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * f1 - f2) / (12.0 * h * h);
    s.d3 = (-13.0 * (f1 - fm1) + 8.0 * (f2 - fm2) - (f3 - fm3)) / (8.0 * h * h * h);
    return s;
}

}  // namespace

Derivatives derivatives_123(const std::function<double(double)>& f, double t,
                            const DiffConfig& cfg) {
    double h = cfg.h0 > 0.0 ? cfg.h0 : std::max(1e-3, 1e-3 * std::abs(t));
    // noise/truncation balance for the third derivative: h ~ noise^{1/7}
    double h_noise = std::pow(std::max(cfg.eval_noise, 1e-16), 1.0 / 7.0) *
                     std::max(1.0, std::abs(t));
    h = std::max(h, h_noise);
    if (t != 0.0) h = std::min(h, cfg.max_step_fraction * std::abs(t));
    double f0 = f(t);
    Stencil coarse = stencil_123(f, t, h, f0);
    Stencil fine = stencil_123(f, t, 0.5 * h, f0);
    Derivatives d;
    d.f0 = f0;
    d.d1 = (16.0 * fine.d1 - coarse.d1) / 15.0;
    d.d2 = (16.0 * fine.d2 - coarse.d2) / 15.0;
    d.d3 = (16.0 * fine.d3 - coarse.d3) / 15.0;
    d.step = h;
    d.err_est = std::abs(fine.d3 - coarse.d3) / 15.0 +
                8.0 * cfg.eval_noise * std::max(1.0, std::abs(f0)) / (h * h * h / 8.0);
    return d;
}

}  // namespace pvsum

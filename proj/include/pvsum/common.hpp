#ifndef PVSUM_COMMON_HPP
#define PVSUM_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace pvsum {

using complex = std::complex<double>;

// Truncation policy shared by every infinite series in the library.
struct SeriesConfig {
    double eps_rel = 1e-12;   // relative term-stop threshold, in (0, 1e-3]
    int k_max = 400;          // hard cap on summed terms, >= 20
    double t_switch = 1.0;    // series <-> determinant switchover for phi

    void validate() const {
        if (!(eps_rel > 0.0 && eps_rel <= 1e-3))
            throw std::domain_error("SeriesConfig: eps_rel must be in (0, 1e-3]");
        if (k_max < 20)
            throw std::domain_error("SeriesConfig: k_max must be >= 20");
        if (!(t_switch > 0.0))
            throw std::domain_error("SeriesConfig: t_switch must be positive");
    }
};

struct EvalResult {
    double value = 0.0;
    double err_est = 0.0;
    int terms_used = 0;
};

struct ComplexEvalResult {
    complex value{0.0, 0.0};
    double err_est = 0.0;
    int terms_used = 0;
};

// Thrown when an iterative scheme stops before meeting its tolerance.
// Carries the best available estimate so callers can degrade gracefully.
class accuracy_error : public std::runtime_error {
  public:
    accuracy_error(const std::string& what, double best, double err)
        : std::runtime_error(what), best_estimate(best), err_est(err) {}
    double best_estimate;
    double err_est;
};

// Thrown when a quantity the theory guarantees (positivity of a
// characteristic function, of a Hankel determinant, ...) fails numerically.
class consistency_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pvsum

#endif

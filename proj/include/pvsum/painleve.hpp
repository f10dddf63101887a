#ifndef PVSUM_PAINLEVE_HPP
#define PVSUM_PAINLEVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "pvsum/bessel_laguerre.hpp"
#include "pvsum/hua_charfn.hpp"

namespace pvsum {

enum class PainleveEquation {
    sigma_p3_inf,
    p5_finite_N,
    hankel_sigma,
    bessel_inf,
    bessel_finite_N,
};

std::string equation_name(PainleveEquation eq);

struct ResidualParams {
    double s = 0.0;
    double nu = 0.0;
    double alpha = 0.0;
    double lambda = 0.0;
    int N = 0;
    std::vector<int> N_list;  // bessel_inf extrapolation ladder
};

struct ResidualPoint {
    double raw = 0.0;
    double normalized = 0.0;  // raw / max(1, largest constituent term)
};

// LHS - RHS of each sigma-form equation from tau-type values.
ResidualPoint residual_sigma_p3(double s, const TauValue& tv);
ResidualPoint residual_p5_finite(double s, int N, const TauValue& tv);
ResidualPoint residual_hankel(int N, double alpha, double lambda, const TauValue& hv);
ResidualPoint residual_bessel_finite(double nu, int N, const TauValue& xv);
// h-form: (t h'')^2 - 4 (h')^2 (h - t h') - 2 nu h' - 1, with h = nu^2/4 + xi.
ResidualPoint residual_bessel_inf(double nu, double t, double h, double dh, double d2h);

QuadConfig oracle_hankel_quad();

// Point evaluations that build the needed tau/xi internally.
ResidualPoint residual_sigma_p3_at(double s, double t, const SeriesConfig& cfg = {});
ResidualPoint residual_p5_finite_at(double s, int N, double t);
ResidualPoint residual_hankel_at(int N, double alpha, double lambda, double t,
                                 const QuadConfig& cfg = oracle_hankel_quad());
ResidualPoint residual_bessel_finite_at(double nu, int N, double t);
ResidualPoint residual_bessel_inf_at(double nu, double t,
                                     const std::vector<int>& N_list = {4, 8, 16});

struct ResidualReport {
    PainleveEquation equation = PainleveEquation::sigma_p3_inf;
    std::vector<double> grid;
    std::vector<double> residuals;      // normalized
    std::vector<double> raw_residuals;
    double max_abs = 0.0;               // of the normalized residuals
    double diff_step = 0.0;
    ResidualParams params;
};

std::vector<double> geometric_grid(double lo, double hi, int n);
std::vector<double> default_grid();  // 16 points in [0.05, 8]

ResidualReport residual_report(PainleveEquation eq, const ResidualParams& params,
                               const std::vector<double>& grid);

// Numerical t -> 0+ boundary data.  For parameters where the boundary value
// is only conjectured/out of guaranteed range, pass stays empty.
enum class BoundaryKind { tau_zero, dtau_zero, h_nu_zero, dh_nu_zero };

struct BoundaryReport {
    BoundaryKind kind = BoundaryKind::tau_zero;
    double param = 0.0;          // s or nu
    double extrapolated = 0.0;
    double reference = 0.0;
    double tol = 0.0;
    std::optional<bool> pass;
};

BoundaryReport boundary_report(BoundaryKind kind, double param);

}  // namespace pvsum

#endif

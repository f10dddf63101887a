#ifndef PVSUM_ENSEMBLES_HPP
#define PVSUM_ENSEMBLES_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

#include "pvsum/common.hpp"

namespace pvsum {

enum class EnsembleKind { hua_pickrell, lue, inverse_laguerre };

struct McmcConfig {
    double proposal_scale = 1.0;  // auto-tuned during burn-in, then frozen
    int burn_in = 4000;           // sweeps
    int thinning = 64;            // sweeps between recorded samples
};

struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::lue;
    double s_or_nu = 0.0;  // s > -1/2 (hua_pickrell) or nu > -1 (lue variants)
    int N = 1;
    std::uint64_t seed = 0;
    int n_samples = 1000;
    McmcConfig mcmc;  // hua_pickrell with N >= 2 only

    void validate() const;
};

struct Batch {
    EnsembleKind kind = EnsembleKind::lue;
    int N = 1;
    double s_or_nu = 0.0;
    std::vector<std::vector<double>> samples;  // one eigenvalue vector per row
};

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
    int n = 0;
};

// Exact LUE sampling through the bidiagonal beta = 2 Laguerre model;
// deterministic for a fixed seed (shard-derived streams, fixed merge order).
Batch sample_lue(double nu, int N, std::uint64_t seed, int n_samples);

// Elementwise pushforward y = 2/x of LUE samples.
Batch sample_inverse_laguerre(double nu, int N, std::uint64_t seed, int n_samples);

// N = 1: exact inverse-CDF sampling via x = tan(theta), theta-density
// proportional to cos^{2s}.  N >= 2: random-walk Metropolis with
// component-wise proposals, burn-in auto-tuning to ~0.3 acceptance.
Batch sample_hua_pickrell(const EnsembleSpec& spec);

Batch sample_ensemble(const EnsembleSpec& spec);

// sum(eigenvalues)/N
double trace_statistic(const Batch& batch, int row);

// Laplace-transform argument sum 1/(N x_j) (lue) or sum y_j/(2N)
// (inverse_laguerre); the two agree in law.
double laplace_statistic(const Batch& batch, int row);

// mean of cos(t S/2) over S = trace/N; stderr = sample sd / sqrt(n)
Estimate empirical_charfn(const Batch& batch, double t);
// antisymmetry diagnostic: mean of sin(t S/2)
Estimate empirical_charfn_imag(const Batch& batch, double t);
// mean of exp(-t L) over the Laplace statistic
Estimate empirical_laplace(const Batch& batch, double t);
// plain mean of a per-sample statistic
Estimate empirical_mean(const std::vector<double>& values);

// RFC-4180 CSV, one row per sample, columns = eigenvalues.
void write_batch_csv(const Batch& batch, std::ostream& os);

// Gelman-Rubin potential scale reduction of trace/N across chains.
double gelman_rubin_trace(const EnsembleSpec& spec, int n_chains);

// Kolmogorov-Smirnov distance of samples against a CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
// 1% critical value of sqrt(n) D_n
inline constexpr double ks_critical_1pct = 1.62762;

}  // namespace pvsum

#endif

#include "pvsum/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>

#include "pvsum/quad.hpp"
#include "pvsum/specfun.hpp"

extern "C" {
// LAPACK: eigenvalues of a symmetric tridiagonal matrix, Pal-Walker-Kahan QL
void dsterf_(const int* n, double* d, double* e, int* info);
}

namespace pvsum {

void EnsembleSpec::validate() const {
    if (kind == EnsembleKind::hua_pickrell) {
        if (!(s_or_nu > -0.5))
            throw std::domain_error("EnsembleSpec: s must be > -1/2");
        if (N > 32) throw std::domain_error("EnsembleSpec: hua_pickrell needs N <= 32");
    } else {
        if (!(s_or_nu > -1.0))
            throw std::domain_error("EnsembleSpec: nu must be > -1");
    }
    if (N < 1) throw std::domain_error("EnsembleSpec: N must be >= 1");
    if (n_samples < 100) throw std::domain_error("EnsembleSpec: n_samples must be >= 100");
    if (!(mcmc.proposal_scale > 0.0) || mcmc.burn_in < 0 || mcmc.thinning < 1)
        throw std::domain_error("EnsembleSpec: bad MCMC parameters");
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = seed ^ (0x9e3779b97f4a7c15ULL * (shard + 1));
    return a ^ splitmix64(s);
}

constexpr int kShardSize = 4096;

// Deterministic sampling layer on top of mt19937_64 (transforms hand-rolled
// so the stream does not depend on the standard library's distributions).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        // 53-bit mantissa uniform in (0, 1)
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Marsaglia-Tsang for shape >= 1, boosted by U^{1/a} below 1; scale 1.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi(double k) { return std::sqrt(2.0 * gamma(0.5 * k)); }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::vector<double> tridiag_eigenvalues(std::vector<double> diag,
                                        std::vector<double> off) {
    int n = static_cast<int>(diag.size());
    int info = 0;
    dsterf_(&n, diag.data(), off.data(), &info);
    if (info != 0)
        throw std::runtime_error("tridiag_eigenvalues: dsterf failed to converge");
    return diag;
}

}  // namespace

Batch sample_lue(double nu, int N, std::uint64_t seed, int n_samples) {
    if (!(nu > -1.0)) throw std::domain_error("sample_lue: nu must be > -1");
    if (N < 1) throw std::domain_error("sample_lue: N must be >= 1");
    Batch batch;
    batch.kind = EnsembleKind::lue;
    batch.N = N;
    batch.s_or_nu = nu;
    batch.samples.reserve(n_samples);
    std::vector<double> d(N), e(std::max(N - 1, 0));
    std::vector<double> bd(N), bo(std::max(N - 1, 0));
    std::unique_ptr<Rng> stream;
    for (int i = 0; i < n_samples; ++i) {
        // fresh stream per shard; shards merge in generation order
        if (i % kShardSize == 0)
            stream = std::make_unique<Rng>(
                shard_seed(seed, static_cast<std::uint64_t>(i / kShardSize)));
        // Bidiagonal model: diag chi_{2(nu+N-r)}, subdiag chi_{2(N-1-r)};
        // eigenvalues of B B^T halved land on the x^nu e^{-x} weight.
        for (int r = 0; r < N; ++r) bd[r] = stream->chi(2.0 * (nu + N - r));
        for (int r = 0; r + 1 < N; ++r) bo[r] = stream->chi(2.0 * (N - 1 - r));
        for (int r = 0; r < N; ++r)
            d[r] = bd[r] * bd[r] + (r > 0 ? bo[r - 1] * bo[r - 1] : 0.0);
        for (int r = 0; r + 1 < N; ++r) e[r] = bd[r] * bo[r];
        std::vector<double> eig = tridiag_eigenvalues(d, e);
        for (double& x : eig) x *= 0.5;
        batch.samples.push_back(std::move(eig));
    }
    return batch;
}

Batch sample_inverse_laguerre(double nu, int N, std::uint64_t seed, int n_samples) {
    Batch batch = sample_lue(nu, N, seed, n_samples);
    batch.kind = EnsembleKind::inverse_laguerre;
    for (auto& row : batch.samples)
        for (double& x : row) x = 2.0 / x;
    return batch;
}

namespace {

// Inverse-CDF table for theta with density proportional to cos^{2s} on
// (-pi/2, pi/2); cumulative Simpson on a fine grid plus Newton refinement.
class CosPowerSampler {
  public:
    CosPowerSampler(double s) : s_(s) {
        const int n = 8192;  // intervals (even)
        grid_.resize(n + 1);
        cdf_.resize(n + 1);
        double h = M_PI / n;
        for (int i = 0; i <= n; ++i) grid_[i] = -M_PI_2 + i * h;
        std::vector<double> f(n + 1);
        for (int i = 0; i <= n; ++i) f[i] = density(grid_[i]);
        cdf_[0] = 0.0;
        for (int i = 0; i + 2 <= n; i += 2)
            cdf_[i + 2] = cdf_[i] + h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        for (int i = 1; i < n; i += 2)
            cdf_[i] = cdf_[i - 1] + h / 3.0 * (1.25 * f[i - 1] + 2.0 * f[i] - 0.25 * f[i + 1]);
        double total = cdf_[n];
        for (double& c : cdf_) c /= total;
        norm_ = total;
    }

    double density(double th) const { return std::pow(std::cos(th), 2.0 * s_); }

    double sample(double u) const {
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        size_t hi = std::min<size_t>(cdf_.size() - 1, it - cdf_.begin());
        size_t lo = hi - 1;
        double th = grid_[lo] + (grid_[hi] - grid_[lo]) * (u - cdf_[lo]) /
                                    std::max(cdf_[hi] - cdf_[lo], 1e-300);
        for (int it2 = 0; it2 < 3; ++it2) {
            double c = cdf_at(th);
            double d = density(th) / norm_;
            if (d <= 0.0) break;
            th -= (c - u) / d;
            th = std::clamp(th, grid_[lo], grid_[hi]);
        }
        return th;
    }

  private:
    double cdf_at(double th) const {
        size_t i = std::min<size_t>(
            grid_.size() - 2,
            static_cast<size_t>((th + M_PI_2) / M_PI * (grid_.size() - 1)));
        // local trapezoid correction inside the cell
        double t0 = grid_[i];
        return cdf_[i] + 0.5 * (density(t0) + density(th)) * (th - t0) / norm_;
    }

    double s_;
    double norm_ = 1.0;
    std::vector<double> grid_;
    std::vector<double> cdf_;
};

double hp_log_density(const std::vector<double>& x, double s, int N) {
    double lp = 0.0;
    for (size_t l = 0; l < x.size(); ++l) {
        for (size_t k = l + 1; k < x.size(); ++k)
            lp += 2.0 * std::log(std::abs(x[k] - x[l]));
        lp -= (s + N) * std::log1p(x[l] * x[l]);
    }
    return lp;
}

}  // namespace

Batch sample_hua_pickrell(const EnsembleSpec& spec) {
    if (spec.kind != EnsembleKind::hua_pickrell)
        throw std::domain_error("sample_hua_pickrell: wrong ensemble kind");
    spec.validate();
    const double s = spec.s_or_nu;
    const int N = spec.N;
    Batch batch;
    batch.kind = EnsembleKind::hua_pickrell;
    batch.N = N;
    batch.s_or_nu = s;
    batch.samples.reserve(spec.n_samples);

    if (N == 1) {
        std::unique_ptr<CosPowerSampler> sampler;
        if (s != 0.0) sampler = std::make_unique<CosPowerSampler>(s);
        std::unique_ptr<Rng> stream;
        for (int i = 0; i < spec.n_samples; ++i) {
            if (i % kShardSize == 0)
                stream = std::make_unique<Rng>(
                    shard_seed(spec.seed, static_cast<std::uint64_t>(i / kShardSize)));
            double u = stream->uniform();
            double theta = sampler ? sampler->sample(u) : M_PI * (u - 0.5);
            batch.samples.push_back({std::tan(theta)});
        }
        return batch;
    }

    // Random-walk Metropolis, component-wise proposals.
    Rng rng(shard_seed(spec.seed, 0));
    std::vector<double> x(N);
    for (int i = 0; i < N; ++i) x[i] = std::tan(M_PI * (rng.uniform() - 0.5));
    double scale = spec.mcmc.proposal_scale;
    auto sweep = [&](double sc, int* accepted) {
        for (int i = 0; i < N; ++i) {
            double xi_new = x[i] + sc * rng.normal();
            double delta = -(s + N) * (std::log1p(xi_new * xi_new) -
                                       std::log1p(x[i] * x[i]));
            bool degenerate = false;
            for (int j = 0; j < N; ++j) {
                if (j == i) continue;
                double dn = std::abs(xi_new - x[j]);
                if (dn == 0.0) { degenerate = true; break; }
                delta += 2.0 * (std::log(dn) - std::log(std::abs(x[i] - x[j])));
            }
            if (degenerate) continue;
            if (delta >= 0.0 || std::log(rng.uniform()) < delta) {
                x[i] = xi_new;
                if (accepted) ++*accepted;
            }
        }
    };
    // burn-in with scale adaptation toward ~0.3 acceptance
    int window = 50, acc = 0;
    for (int it = 0; it < spec.mcmc.burn_in; ++it) {
        sweep(scale, &acc);
        if ((it + 1) % window == 0) {
            double rate = static_cast<double>(acc) / (window * N);
            scale *= std::exp(0.5 * (rate - 0.3));
            acc = 0;
        }
    }
    long total_acc = 0, total_prop = 0;
    for (int i = 0; i < spec.n_samples; ++i) {
        int a = 0;
        for (int th = 0; th < spec.mcmc.thinning; ++th) sweep(scale, &a);
        total_acc += a;
        total_prop += static_cast<long>(spec.mcmc.thinning) * N;
        std::vector<double> sorted = x;
        std::sort(sorted.begin(), sorted.end());
        batch.samples.push_back(std::move(sorted));
    }
    double rate = static_cast<double>(total_acc) / static_cast<double>(total_prop);
    if (rate < 0.1 || rate > 0.6)
        throw consistency_error("sample_hua_pickrell: acceptance rate " +
                                std::to_string(rate) + " outside [0.1, 0.6]");
    return batch;
}

Batch sample_ensemble(const EnsembleSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case EnsembleKind::lue:
            return sample_lue(spec.s_or_nu, spec.N, spec.seed, spec.n_samples);
        case EnsembleKind::inverse_laguerre:
            return sample_inverse_laguerre(spec.s_or_nu, spec.N, spec.seed,
                                           spec.n_samples);
        case EnsembleKind::hua_pickrell:
            return sample_hua_pickrell(spec);
    }
    throw std::domain_error("sample_ensemble: unknown kind");
}

double trace_statistic(const Batch& batch, int row) {
    const auto& v = batch.samples.at(row);
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / batch.N;
}

double laplace_statistic(const Batch& batch, int row) {
    const auto& v = batch.samples.at(row);
    double sum = 0.0;
    if (batch.kind == EnsembleKind::lue) {
        for (double x : v) sum += 1.0 / x;
        return sum / batch.N;
    }
    if (batch.kind == EnsembleKind::inverse_laguerre) {
        for (double y : v) sum += y;
        return sum / (2.0 * batch.N);
    }
    throw std::domain_error("laplace_statistic: needs a Laguerre-type batch");
}

namespace {

Estimate mean_of(const std::vector<double>& vals) {
    int n = static_cast<int>(vals.size());
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= std::max(n - 1, 1);
    return {mean, std::sqrt(var / n), n};
}

}  // namespace

Estimate empirical_charfn(const Batch& batch, double t) {
    std::vector<double> vals(batch.samples.size());
    for (size_t i = 0; i < vals.size(); ++i)
        vals[i] = std::cos(0.5 * t * trace_statistic(batch, static_cast<int>(i)));
    Estimate e = mean_of(vals);
    if (t == 0.0) e.stderr_ = 0.0;
    return e;
}

Estimate empirical_charfn_imag(const Batch& batch, double t) {
    std::vector<double> vals(batch.samples.size());
    for (size_t i = 0; i < vals.size(); ++i)
        vals[i] = std::sin(0.5 * t * trace_statistic(batch, static_cast<int>(i)));
    return mean_of(vals);
}

Estimate empirical_laplace(const Batch& batch, double t) {
    std::vector<double> vals(batch.samples.size());
    for (size_t i = 0; i < vals.size(); ++i)
        vals[i] = std::exp(-t * laplace_statistic(batch, static_cast<int>(i)));
    Estimate e = mean_of(vals);
    if (t == 0.0) e.stderr_ = 0.0;
    return e;
}

Estimate empirical_mean(const std::vector<double>& values) { return mean_of(values); }

void write_batch_csv(const Batch& batch, std::ostream& os) {
    os << "sample";
    for (int j = 0; j < batch.N; ++j) os << ",x" << j + 1;
    os << "\r\n";
    os.precision(17);
    for (size_t i = 0; i < batch.samples.size(); ++i) {
        os << i;
        for (double x : batch.samples[i]) os << "," << x;
        os << "\r\n";
    }
}

double gelman_rubin_trace(const EnsembleSpec& spec, int n_chains) {
    if (n_chains < 2) throw std::domain_error("gelman_rubin_trace: need >= 2 chains");
    std::vector<double> means(n_chains), vars(n_chains);
    int n = spec.n_samples;
    for (int c = 0; c < n_chains; ++c) {
        EnsembleSpec chain = spec;
        chain.seed = spec.seed + 7919ULL * static_cast<std::uint64_t>(c + 1);
        Batch b = sample_hua_pickrell(chain);
        std::vector<double> tr(n);
        for (int i = 0; i < n; ++i) tr[i] = trace_statistic(b, i);
        Estimate e = empirical_mean(tr);
        means[c] = e.value;
        vars[c] = e.stderr_ * e.stderr_ * n;
    }
    double grand = 0.0;
    for (double m : means) grand += m;
    grand /= n_chains;
    double B = 0.0;
    for (double m : means) B += (m - grand) * (m - grand);
    B *= static_cast<double>(n) / (n_chains - 1);
    double W = 0.0;
    for (double v : vars) W += v;
    W /= n_chains;
    double var_plus = (static_cast<double>(n - 1) / n) * W + B / n;
    return std::sqrt(var_plus / W);
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

}  // namespace pvsum

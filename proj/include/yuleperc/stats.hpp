#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "yuleperc/analytics.hpp"
#include "yuleperc/pmf.hpp"

namespace yuleperc {

// Poisson(lambda) mass at j, evaluated in log space so large j cannot
// underflow prematurely.
double poisson_pmf(double lambda, std::uint64_t j);

// Le Cam: L1(law of sum of Bernoulli(q_i), Poisson(sum q_i)) <= 2 sum q_i^2.
double lecam_bound(const std::vector<double>& q);

// Exact law of a sum of independent Bernoulli(q_i) by convolution.
// Quadratic in length; capped at 30 terms.
ExactPmf bernoulli_sum_pmf(const std::vector<double>& q);

// Total variation between two integer pmfs (each must sum to 1).
double tv_distance(const ExactPmf& f, const ExactPmf& g);

// L1 and TV against a full (untruncated) Poisson law; the reference
// tail beyond the pmf's support is accounted for.
double l1_to_poisson(const ExactPmf& f, double lambda);
double tv_to_poisson(const ExactPmf& f, double lambda);

// TV against Geometric(success) on {1,2,...}, tail included.
double tv_to_geometric(const ExactPmf& f, double success);

// Kolmogorov-Smirnov distance between samples and a reference cdf.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// One-sided test that a sequence of means drifts upward: least-squares
// slope positive at 95% confidence.  Needs at least 3 points.
bool divergence_check(const std::vector<double>& means);

// ---- Monte Carlo driver ----

enum class SamplerKind { JumpChain, RrtPercolation };

struct StatCountExceeding { std::uint64_t x = 0; };   // N(x)
struct StatCountEqual { std::uint64_t ell = 1; };     // X(ell)
struct StatLargest {};                                // C*
struct StatRootCluster {};                            // size of type 0
struct StatTauRescaled {};                            // n * exp(-tau_n)

using Statistic = std::variant<StatCountExceeding, StatCountEqual, StatLargest,
                               StatRootCluster, StatTauRescaled>;

std::string statistic_name(const Statistic& stat);

// Optional reference laws; when present the matching distance is
// reported.
struct McReferences {
    std::optional<double> poisson_lambda;
    std::optional<ExactPmf> oracle_pmf;
    bool ks_exp1 = false;                  // compare against Exp(1)
    std::optional<GumbelParams> gumbel;    // KS against Gumbel(location, scale)
};

struct McConfig {
    std::uint64_t n = 0;
    double p = 0.0; // ignored by StatTauRescaled
    Statistic statistic;
    std::uint64_t replicates = 10000;
    std::uint64_t master_seed = 0;
    unsigned threads = 0; // 0 = resolve from env/hardware
    SamplerKind sampler = SamplerKind::JumpChain;
    McReferences references;
};

struct McReport {
    McConfig config;
    unsigned threads_used = 1;
    double mean = 0.0;
    double variance = 0.0;
    double std_error = 0.0;
    ExactPmf empirical;                     // integer statistics only
    std::vector<double> values;             // per-replicate statistic
    std::map<std::string, double> distances;
};

// Thread-count resolution: explicit request, else YULE_PERC_THREADS,
// else hardware concurrency.
unsigned resolve_threads(unsigned requested);

// Replicate r draws only from stream (master_seed, r) and results are
// aggregated in replicate order, so the report is bit-identical for
// any thread count.
McReport run_mc(const McConfig& config);

} // namespace yuleperc

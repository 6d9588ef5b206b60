#include "yuleperc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "yuleperc/numerics.hpp"
#include "yuleperc/process.hpp"

namespace yuleperc {

double poisson_pmf(double lambda, std::uint64_t j) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("poisson_pmf needs lambda > 0");
    const double dj = static_cast<double>(j);
    return std::exp(dj * std::log(lambda) - lambda - log_gamma(dj + 1.0));
}

double lecam_bound(const std::vector<double>& q) {
    double sum_sq = 0.0;
    for (const double qi : q) {
        if (!(qi >= 0.0 && qi <= 1.0))
            throw std::invalid_argument("Bernoulli parameters must lie in [0,1]");
        sum_sq += qi * qi;
    }
    return 2.0 * sum_sq;
}

ExactPmf bernoulli_sum_pmf(const std::vector<double>& q) {
    if (q.size() > 30)
        throw std::invalid_argument("bernoulli_sum_pmf capped at 30 terms");
    std::vector<double> pmf{1.0};
    for (const double qi : q) {
        if (!(qi >= 0.0 && qi <= 1.0))
            throw std::invalid_argument("Bernoulli parameters must lie in [0,1]");
        pmf.push_back(0.0);
        for (std::size_t j = pmf.size() - 1; j > 0; --j)
            pmf[j] = pmf[j] * (1.0 - qi) + pmf[j - 1] * qi;
        pmf[0] *= 1.0 - qi;
    }
    ExactPmf out;
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        out.support.push_back(static_cast<std::int64_t>(j));
        out.prob.push_back(pmf[j]);
    }
    return out;
}

namespace {

void check_normalized(const ExactPmf& pmf, const char* who) {
    if (std::abs(pmf_total(pmf) - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(who) +
                                    ": pmf does not sum to 1");
}

} // namespace

double tv_distance(const ExactPmf& f, const ExactPmf& g) {
    check_normalized(f, "tv_distance");
    check_normalized(g, "tv_distance");
    double l1 = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < f.support.size() || j < g.support.size()) {
        if (j == g.support.size() ||
            (i < f.support.size() && f.support[i] < g.support[j])) {
            l1 += std::abs(f.prob[i]);
            ++i;
        } else if (i == f.support.size() || g.support[j] < f.support[i]) {
            l1 += std::abs(g.prob[j]);
            ++j;
        } else {
            l1 += std::abs(f.prob[i] - g.prob[j]);
            ++i;
            ++j;
        }
    }
    return 0.5 * l1;
}

double l1_to_poisson(const ExactPmf& f, double lambda) {
    check_normalized(f, "l1_to_poisson");
    if (f.support.empty())
        throw std::invalid_argument("l1_to_poisson: empty pmf");
    if (f.support.front() < 0)
        throw std::invalid_argument("l1_to_poisson: negative support");
    const std::int64_t top = f.support.back();
    double l1 = 0.0;
    double reference_mass = 0.0;
    std::size_t i = 0;
    for (std::int64_t j = 0; j <= top; ++j) {
        const double ref = poisson_pmf(lambda, static_cast<std::uint64_t>(j));
        reference_mass += ref;
        double fj = 0.0;
        if (i < f.support.size() && f.support[i] == j) {
            fj = f.prob[i];
            ++i;
        }
        l1 += std::abs(fj - ref);
    }
    l1 += std::max(0.0, 1.0 - reference_mass); // Poisson tail beyond support
    return l1;
}

double tv_to_poisson(const ExactPmf& f, double lambda) {
    return 0.5 * l1_to_poisson(f, lambda);
}

double tv_to_geometric(const ExactPmf& f, double success) {
    check_normalized(f, "tv_to_geometric");
    if (!(success > 0.0 && success <= 1.0))
        throw std::invalid_argument("tv_to_geometric needs success in (0,1]");
    if (f.support.empty() || f.support.front() < 1)
        throw std::invalid_argument("tv_to_geometric: support must start at 1");
    const std::int64_t top = f.support.back();
    double l1 = 0.0;
    double reference_mass = 0.0;
    double ref = success; // P(G = 1)
    std::size_t i = 0;
    for (std::int64_t j = 1; j <= top; ++j) {
        reference_mass += ref;
        double fj = 0.0;
        if (i < f.support.size() && f.support[i] == j) {
            fj = f.prob[i];
            ++i;
        }
        l1 += std::abs(fj - ref);
        ref *= 1.0 - success;
    }
    l1 += std::max(0.0, 1.0 - reference_mass);
    return 0.5 * l1;
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
    if (samples.empty())
        throw std::invalid_argument("ks_distance needs samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double fx = cdf(samples[i]);
        const double below = static_cast<double>(i) / n;
        const double above = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(fx - below, above - fx));
    }
    return d;
}

bool divergence_check(const std::vector<double>& means) {
    if (means.size() < 3)
        throw std::invalid_argument("divergence_check needs at least 3 points");
    const double m = static_cast<double>(means.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        mean_x += static_cast<double>(i);
        mean_y += means[i];
    }
    mean_x /= m;
    mean_y /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        const double dx = static_cast<double>(i) - mean_x;
        sxx += dx * dx;
        sxy += dx * (means[i] - mean_y);
    }
    const double slope = sxy / sxx;
    if (slope <= 0.0)
        return false;
    double rss = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        const double fit =
            mean_y + slope * (static_cast<double>(i) - mean_x);
        rss += (means[i] - fit) * (means[i] - fit);
    }
    const double se = std::sqrt(rss / (m - 2.0) / sxx);
    if (se == 0.0)
        return true; // exact upward line

    // One-sided 95% Student-t quantiles, df = 1..30; normal beyond.
    static const double t95[30] = {
        6.3138, 2.9200, 2.3534, 2.1318, 2.0150, 1.9432, 1.8946, 1.8595,
        1.8331, 1.8125, 1.7959, 1.7823, 1.7709, 1.7613, 1.7531, 1.7459,
        1.7396, 1.7341, 1.7291, 1.7247, 1.7207, 1.7171, 1.7139, 1.7109,
        1.7081, 1.7056, 1.7033, 1.7011, 1.6991, 1.6973};
    const std::size_t df = means.size() - 2;
    const double critical = df <= 30 ? t95[df - 1] : 1.6449;
    return slope / se > critical;
}

std::string statistic_name(const Statistic& stat) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StatCountExceeding>)
                return "count_exceeding:" + std::to_string(s.x);
            else if constexpr (std::is_same_v<T, StatCountEqual>)
                return "count_equal:" + std::to_string(s.ell);
            else if constexpr (std::is_same_v<T, StatLargest>)
                return "largest";
            else if constexpr (std::is_same_v<T, StatRootCluster>)
                return "root_cluster";
            else
                return "tau_rescaled";
        },
        stat);
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("YULE_PERC_THREADS")) {
        const long parsed = std::strtol(env, nullptr, 10);
        if (parsed > 0)
            return static_cast<unsigned>(parsed);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

double run_one(const McConfig& config, std::uint64_t replicate,
               std::vector<std::uint32_t>& cluster_buf,
               std::vector<std::uint32_t>& sizes_buf) {
    const SeedSpec seed{config.master_seed, replicate};
    if (std::holds_alternative<StatTauRescaled>(config.statistic)) {
        const double tau = sample_tau(config.n, seed);
        return static_cast<double>(config.n) * std::exp(-tau);
    }
    const std::uint32_t* begin = nullptr;
    std::size_t count = 0;
    ClusterState rrt_state;
    if (config.sampler == SamplerKind::RrtPercolation) {
        rrt_state = sample_rrt_percolation(config.n, config.p, seed);
        begin = rrt_state.sizes.data();
        count = rrt_state.sizes.size();
    } else {
        RandomStream rng(seed);
        grow_sizes(config.n, config.p, rng, cluster_buf, sizes_buf);
        begin = sizes_buf.data();
        count = sizes_buf.size();
    }
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, StatCountExceeding>) {
                std::uint64_t c = 0;
                for (std::size_t i = 0; i < count; ++i)
                    c += (begin[i] > s.x) ? 1 : 0;
                return static_cast<double>(c);
            } else if constexpr (std::is_same_v<T, StatCountEqual>) {
                std::uint64_t c = 0;
                for (std::size_t i = 0; i < count; ++i)
                    c += (begin[i] == s.ell) ? 1 : 0;
                return static_cast<double>(c);
            } else if constexpr (std::is_same_v<T, StatLargest>) {
                std::uint32_t best = 0;
                for (std::size_t i = 0; i < count; ++i)
                    best = std::max(best, begin[i]);
                return static_cast<double>(best);
            } else if constexpr (std::is_same_v<T, StatRootCluster>) {
                return static_cast<double>(begin[0]);
            } else {
                return 0.0; // unreachable, tau handled above
            }
        },
        config.statistic);
}

} // namespace

McReport run_mc(const McConfig& config) {
    if (config.replicates == 0)
        throw std::invalid_argument("replicates must be positive");
    if (config.n == 0)
        throw std::invalid_argument("population size n must be positive");
    const bool is_tau = std::holds_alternative<StatTauRescaled>(config.statistic);
    if (!is_tau && !(config.p >= 0.0 && config.p <= 1.0))
        throw std::invalid_argument("p must lie in [0,1]");

    McReport report;
    report.config = config;
    report.values.assign(config.replicates, 0.0);

    const unsigned threads = std::min<std::uint64_t>(
        resolve_threads(config.threads), config.replicates);
    report.threads_used = threads;

    const auto worker = [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint32_t> cluster_buf;
        std::vector<std::uint32_t> sizes_buf;
        for (std::uint64_t r = begin; r < end; ++r)
            report.values[r] = run_one(config, r, cluster_buf, sizes_buf);
    };

    if (threads <= 1) {
        worker(0, config.replicates);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t begin = config.replicates * t / threads;
            const std::uint64_t end = config.replicates * (t + 1) / threads;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool)
            th.join();
    }

    // Replicate-ordered aggregation keeps results independent of the
    // thread partition.
    const double r = static_cast<double>(config.replicates);
    double sum = 0.0;
    for (const double v : report.values)
        sum += v;
    report.mean = sum / r;
    double ss = 0.0;
    for (const double v : report.values)
        ss += (v - report.mean) * (v - report.mean);
    report.variance = config.replicates > 1 ? ss / (r - 1.0) : 0.0;
    report.std_error = std::sqrt(report.variance / r);

    if (!is_tau) {
        std::map<std::int64_t, double> freq;
        for (const double v : report.values)
            freq[static_cast<std::int64_t>(v)] += 1.0 / r;
        report.empirical = pmf_from_map(freq);
    }

    const McReferences& refs = config.references;
    if (refs.poisson_lambda && !is_tau)
        report.distances["tv_poisson"] =
            tv_to_poisson(report.empirical, *refs.poisson_lambda);
    if (refs.oracle_pmf && !is_tau)
        report.distances["tv_oracle"] =
            tv_distance(report.empirical, *refs.oracle_pmf);
    if (refs.ks_exp1)
        report.distances["ks_exp1"] = ks_distance(
            report.values, [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); });
    if (refs.gumbel) {
        const GumbelParams g = *refs.gumbel;
        report.distances["ks_gumbel"] =
            ks_distance(report.values, [g](double x) {
                return std::exp(-std::exp(-(x - g.location) / g.scale));
            });
    }
    return report;
}

} // namespace yuleperc

#include "yuleperc/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace yuleperc {

PartitionKey partition_of(const ClusterState& state) {
    PartitionKey parts(state.sizes.begin(), state.sizes.end());
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return parts;
}

namespace {

void check_oracle_args(std::uint32_t n, double p, std::uint32_t cap,
                       const char* what) {
    if (n == 0)
        throw std::invalid_argument("population size n must be positive");
    if (n > cap)
        throw std::invalid_argument(std::string(what) + ": n exceeds cap");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0,1]");
}

} // namespace

PartitionDist partition_distribution(std::uint32_t n, double p,
                                     std::uint32_t cap) {
    check_oracle_args(n, p, cap, "partition_distribution");

    PartitionDist current;
    current[{1}] = 1.0;
    for (std::uint32_t k = 1; k < n; ++k) {
        PartitionDist next;
        const double dk = static_cast<double>(k);
        for (const auto& [parts, weight] : current) {
            if (p < 1.0) { // new part of size 1, parts stay descending
                PartitionKey grown = parts;
                grown.push_back(1);
                next[grown] += weight * (1.0 - p);
            }
            if (p > 0.0) {
                // Grow one part per distinct value; incrementing the
                // first occurrence keeps the key descending.
                for (std::size_t i = 0; i < parts.size();) {
                    std::size_t j = i;
                    while (j < parts.size() && parts[j] == parts[i])
                        ++j;
                    const double mult = static_cast<double>(j - i);
                    const double prob =
                        p * static_cast<double>(parts[i]) * mult / dk;
                    PartitionKey grown = parts;
                    ++grown[i];
                    next[grown] += weight * prob;
                    i = j;
                }
            }
        }
        current = std::move(next);
    }
    return current;
}

ExactPmf exact_count_pmf(std::uint32_t n, double p, std::uint64_t x,
                         std::uint32_t cap) {
    const PartitionDist dist = partition_distribution(n, p, cap);
    std::map<std::int64_t, double> counts;
    for (const auto& [parts, weight] : dist) {
        std::int64_t exceeding = 0;
        for (const std::uint32_t part : parts)
            exceeding += (part > x) ? 1 : 0;
        counts[exceeding] += weight;
    }
    return pmf_from_map(counts);
}

ExactPmf root_cluster_pmf(std::uint32_t n, double p, std::uint32_t cap) {
    check_oracle_args(n, p, cap, "root_cluster_pmf");

    // dp[c] = P(root type has size c at population k).
    std::vector<double> dp(n + 1, 0.0);
    std::vector<double> next(n + 1, 0.0);
    dp[1] = 1.0;
    for (std::uint32_t k = 1; k < n; ++k) {
        const double dk = static_cast<double>(k);
        std::fill(next.begin(), next.begin() + k + 2, 0.0);
        for (std::uint32_t c = 1; c <= k; ++c) {
            const double w = dp[c];
            if (w == 0.0)
                continue;
            const double grow = p * static_cast<double>(c) / dk;
            next[c + 1] += w * grow;
            next[c] += w * (1.0 - grow);
        }
        dp.swap(next);
    }

    std::map<std::int64_t, double> out;
    for (std::uint32_t c = 1; c <= n; ++c)
        if (dp[c] > 0.0)
            out[c] = dp[c];
    return pmf_from_map(out);
}

namespace {

// Visit every (tree, kept-edge subset) pair with its probability and
// hand the component sizes (in birth order) to the sink.
void enumerate_configurations(
    std::uint32_t n, double p,
    const std::function<void(const std::vector<std::uint32_t>&, double)>&
        sink) {
    const std::uint32_t edges = n - 1;
    std::vector<std::uint32_t> parent(n, 0);
    std::vector<std::uint32_t> component(n, 0);
    std::vector<std::uint32_t> sizes;

    double tree_weight = 1.0;
    for (std::uint32_t v = 1; v < n; ++v)
        tree_weight /= static_cast<double>(v);

    const std::function<void(std::uint32_t)> recurse = [&](std::uint32_t v) {
        if (v == n) {
            for (std::uint32_t mask = 0; mask < (1u << edges); ++mask) {
                double weight = tree_weight;
                sizes.clear();
                sizes.push_back(0);
                component[0] = 0;
                for (std::uint32_t w = 1; w < n; ++w) {
                    if (mask & (1u << (w - 1))) {
                        weight *= p;
                        component[w] = component[parent[w]];
                    } else {
                        weight *= 1.0 - p;
                        component[w] = static_cast<std::uint32_t>(sizes.size());
                        sizes.push_back(0);
                    }
                }
                if (weight == 0.0)
                    continue;
                for (std::uint32_t w = 0; w < n; ++w)
                    ++sizes[component[w]];
                sink(sizes, weight);
            }
            return;
        }
        for (std::uint32_t choice = 0; choice < v; ++choice) {
            parent[v] = choice;
            recurse(v + 1);
        }
    };
    recurse(1);
}

} // namespace

PartitionDist enumerate_tiny(std::uint32_t n, double p, std::uint32_t cap) {
    check_oracle_args(n, p, cap, "enumerate_tiny");
    PartitionDist out;
    if (n == 1) {
        out[{1}] = 1.0;
        return out;
    }
    enumerate_configurations(
        n, p, [&](const std::vector<std::uint32_t>& sizes, double weight) {
            PartitionKey parts(sizes.begin(), sizes.end());
            std::sort(parts.begin(), parts.end(), std::greater<>());
            out[parts] += weight;
        });
    return out;
}

ExactPmf enumerate_tiny_root_pmf(std::uint32_t n, double p,
                                 std::uint32_t cap) {
    check_oracle_args(n, p, cap, "enumerate_tiny_root_pmf");
    std::map<std::int64_t, double> weights;
    if (n == 1) {
        weights[1] = 1.0;
        return pmf_from_map(weights);
    }
    enumerate_configurations(
        n, p, [&](const std::vector<std::uint32_t>& sizes, double weight) {
            weights[sizes[0]] += weight;
        });
    return pmf_from_map(weights);
}

double tv_partition(const PartitionDist& f, const PartitionDist& g) {
    double l1 = 0.0;
    auto it_f = f.begin();
    auto it_g = g.begin();
    while (it_f != f.end() || it_g != g.end()) {
        if (it_g == g.end() || (it_f != f.end() && it_f->first < it_g->first)) {
            l1 += std::abs(it_f->second);
            ++it_f;
        } else if (it_f == f.end() || it_g->first < it_f->first) {
            l1 += std::abs(it_g->second);
            ++it_g;
        } else {
            l1 += std::abs(it_f->second - it_g->second);
            ++it_f;
            ++it_g;
        }
    }
    return 0.5 * l1;
}

PartitionDist empirical_partition(std::uint64_t n, double p,
                                  std::uint64_t replicates,
                                  std::uint64_t master_seed, bool use_rrt) {
    if (replicates == 0)
        throw std::invalid_argument("replicates must be positive");
    PartitionDist out;
    const double weight = 1.0 / static_cast<double>(replicates);
    for (std::uint64_t r = 0; r < replicates; ++r) {
        const SeedSpec seed{master_seed, r};
        const ClusterState state =
            use_rrt ? sample_rrt_percolation(n, p, seed) : grow_chain(n, p, seed);
        out[partition_of(state)] += weight;
    }
    return out;
}

} // namespace yuleperc

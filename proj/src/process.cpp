#include "yuleperc/process.hpp"

#include <numeric>
#include <stdexcept>

namespace yuleperc {

namespace {

void check_args(std::uint64_t n, double p) {
    if (n == 0)
        throw std::invalid_argument("population size n must be positive");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("clone probability p must lie in [0,1]");
}

} // namespace

void grow_sizes(std::uint64_t n, double p, RandomStream& rng,
                std::vector<std::uint32_t>& cluster_of,
                std::vector<std::uint32_t>& sizes) {
    cluster_of.resize(n);
    sizes.clear();
    sizes.push_back(1);
    cluster_of[0] = 0;
    for (std::uint64_t k = 1; k < n; ++k) {
        const std::uint64_t parent = rng.uniform_below(k);
        if (rng.bernoulli(p)) {
            const std::uint32_t cid = cluster_of[parent];
            ++sizes[cid];
            cluster_of[k] = cid;
        } else {
            cluster_of[k] = static_cast<std::uint32_t>(sizes.size());
            sizes.push_back(1);
        }
    }
}

ClusterState grow_chain(std::uint64_t n, double p, SeedSpec seed) {
    check_args(n, p);
    RandomStream rng(seed);
    ClusterState state;
    state.n = n;
    std::vector<std::uint32_t> cluster_of;
    grow_sizes(n, p, rng, cluster_of, state.sizes);
    return state;
}

namespace {

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]]; // path halving
        v = parent[v];
    }
    return v;
}

} // namespace

ClusterState sample_rrt_percolation(std::uint64_t n, double p, SeedSpec seed) {
    check_args(n, p);
    RandomStream rng(seed);

    // Union-find over the kept edges.  Vertex v >= 1 attaches to a
    // uniform vertex among 0..v-1; the edge survives with probability p.
    std::vector<std::uint32_t> parent(n);
    std::vector<std::uint32_t> rank(n, 0);
    std::iota(parent.begin(), parent.end(), 0u);
    for (std::uint64_t v = 1; v < n; ++v) {
        const std::uint64_t attach = rng.uniform_below(v);
        if (!rng.bernoulli(p))
            continue;
        std::uint32_t a = find_root(parent, static_cast<std::uint32_t>(v));
        std::uint32_t b = find_root(parent, static_cast<std::uint32_t>(attach));
        if (a == b)
            continue;
        if (rank[a] < rank[b])
            std::swap(a, b);
        parent[b] = a;
        if (rank[a] == rank[b])
            ++rank[a];
    }

    // Components numbered by smallest vertex label; scanning labels in
    // increasing order meets each component at its minimum first.
    ClusterState state;
    state.n = n;
    std::vector<std::uint32_t> index_of_root(n, UINT32_MAX);
    for (std::uint64_t v = 0; v < n; ++v) {
        const std::uint32_t root = find_root(parent, static_cast<std::uint32_t>(v));
        if (index_of_root[root] == UINT32_MAX) {
            index_of_root[root] = static_cast<std::uint32_t>(state.sizes.size());
            state.sizes.push_back(0);
        }
        ++state.sizes[index_of_root[root]];
    }
    return state;
}

double sample_tau(std::uint64_t n, SeedSpec seed) {
    if (n == 0)
        throw std::invalid_argument("population size n must be positive");
    RandomStream rng(seed);
    double tau = 0.0;
    for (std::uint64_t j = 1; j < n; ++j)
        tau += rng.exponential() / static_cast<double>(j);
    return tau;
}

std::uint64_t count_exceeding(const ClusterState& state, std::uint64_t x) {
    std::uint64_t count = 0;
    for (const std::uint32_t s : state.sizes)
        count += (s > x) ? 1 : 0;
    return count;
}

std::uint64_t count_equal(const ClusterState& state, std::uint64_t ell) {
    std::uint64_t count = 0;
    for (const std::uint32_t s : state.sizes)
        count += (s == ell) ? 1 : 0;
    return count;
}

std::uint64_t largest(const ClusterState& state) {
    std::uint64_t best = 0;
    for (const std::uint32_t s : state.sizes)
        best = std::max<std::uint64_t>(best, s);
    return best;
}

} // namespace yuleperc

#pragma once

#include <cstdint>
#include <vector>

#include "yuleperc/rng.hpp"

namespace yuleperc {

// Subpopulation sizes of a Yule process with mutation observed when the
// total population first reaches n.  sizes[i] is the size of the i-th
// genetic type in order of appearance; sizes[0] is the ancestral type.
struct ClusterState {
    std::uint64_t n = 0;
    std::vector<std::uint32_t> sizes;
};

// Core jump-chain step loop writing into caller-owned buffers, so a
// Monte Carlo driver can run millions of replicates without
// reallocating.  cluster_of is scratch of length >= n.
void grow_sizes(std::uint64_t n, double p, RandomStream& rng,
                std::vector<std::uint32_t>& cluster_of,
                std::vector<std::uint32_t>& sizes);

// Embedded jump chain of the Yule process with clone probability p:
// at population k the next individual copies a uniformly chosen one,
// keeping its type with probability p and founding a new type
// otherwise.  O(n) time, O(n) space.
ClusterState grow_chain(std::uint64_t n, double p, SeedSpec seed);

// Independent construction of the same law: build a uniform random
// recursive tree on n vertices, keep each edge with probability p, and
// read off connected components ordered by smallest vertex label.
ClusterState sample_rrt_percolation(std::uint64_t n, double p, SeedSpec seed);

// First time the population reaches n, as the sum of independent
// exponentials E_j/j for j = 1..n-1.  tau_1 = 0.
double sample_tau(std::uint64_t n, SeedSpec seed);

// Number of types with more than x members.
std::uint64_t count_exceeding(const ClusterState& state, std::uint64_t x);

// Number of types with exactly ell members.
std::uint64_t count_equal(const ClusterState& state, std::uint64_t ell);

// Size of the largest type.
std::uint64_t largest(const ClusterState& state);

} // namespace yuleperc

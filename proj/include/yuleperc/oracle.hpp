#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "yuleperc/pmf.hpp"
#include "yuleperc/process.hpp"

namespace yuleperc {

// A partition of n as parts in descending order; the common currency
// for comparing cluster-size laws regardless of birth order.
using PartitionKey = std::vector<std::uint32_t>;
using PartitionDist = std::map<PartitionKey, double>;

PartitionKey partition_of(const ClusterState& state);

// Exact law of the sorted cluster sizes by dynamic programming over
// canonical partitions: from a partition of k, a new part 1 appears
// with probability 1-p, and a part of value c (multiplicity m) grows
// with probability p*c*m/k.  Exponential state space; capped.
PartitionDist partition_distribution(std::uint32_t n, double p,
                                     std::uint32_t cap = 40);

// Pushforward of partition_distribution under "number of parts > x".
ExactPmf exact_count_pmf(std::uint32_t n, double p, std::uint64_t x,
                         std::uint32_t cap = 40);

// Exact law of the ancestral type's size: DP on (population, root size)
// with growth probability p*c/k at population k.  O(n^2) time.
ExactPmf root_cluster_pmf(std::uint32_t n, double p,
                          std::uint32_t cap = 100000);

// Ground truth by brute force: every recursive tree on n vertices
// (uniform over the (n-1)! parent assignments) times every subset of
// kept edges, weighted by p^kept (1-p)^cut.
PartitionDist enumerate_tiny(std::uint32_t n, double p, std::uint32_t cap = 8);

// Same enumeration, marginalized to the component containing vertex 0.
ExactPmf enumerate_tiny_root_pmf(std::uint32_t n, double p,
                                 std::uint32_t cap = 8);

// Total variation between two partition laws.
double tv_partition(const PartitionDist& f, const PartitionDist& g);

// Empirical partition law from replicated sampling, for comparisons
// against the exact DP.
PartitionDist empirical_partition(std::uint64_t n, double p,
                                  std::uint64_t replicates,
                                  std::uint64_t master_seed, bool use_rrt);

} // namespace yuleperc

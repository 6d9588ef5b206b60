#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "yuleperc/analytics.hpp"
#include "yuleperc/oracle.hpp"

using namespace yuleperc;

TEST_CASE("partition DP small cases") {
    const auto trivial = partition_distribution(1, 0.3);
    REQUIRE(trivial.size() == 1);
    CHECK(trivial.at({1}) == 1.0);

    const auto dist = partition_distribution(3, 0.5);
    REQUIRE(dist.size() == 3);
    CHECK(dist.at({3}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(dist.at({2, 1}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(dist.at({1, 1, 1}) == doctest::Approx(0.25).epsilon(1e-14));

    const auto clones = partition_distribution(4, 1.0);
    REQUIRE(clones.size() == 1);
    CHECK(clones.at({4}) == 1.0);
    const auto mutants = partition_distribution(4, 0.0);
    REQUIRE(mutants.size() == 1);
    CHECK(mutants.at({1, 1, 1, 1}) == 1.0);
}

TEST_CASE("partition DP normalization and mean part count") {
    for (const std::uint32_t n : {5, 10, 20}) {
        for (const double p : {0.05, 0.3, 0.8}) {
            const auto dist = partition_distribution(n, p);
            double total = 0.0;
            double mean_parts = 0.0;
            for (const auto& [parts, weight] : dist) {
                total += weight;
                mean_parts += weight * static_cast<double>(parts.size());
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
            // Each of the n-1 arrivals founds a type with probability 1-p.
            CHECK(mean_parts ==
                  doctest::Approx(1.0 + (1.0 - p) * (n - 1.0)).epsilon(1e-10));
        }
    }
}

TEST_CASE("brute-force enumeration matches the DP") {
    const auto pair_law = enumerate_tiny(2, 0.3);
    CHECK(pair_law.at({2}) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(pair_law.at({1, 1}) == doctest::Approx(0.7).epsilon(1e-14));

    const auto three = enumerate_tiny(3, 0.25);
    CHECK(three.at({3}) == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(three.at({2, 1}) == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(three.at({1, 1, 1}) == doctest::Approx(0.5625).epsilon(1e-14));

    for (std::uint32_t n = 2; n <= 8; ++n)
        for (const double p : {0.3, 0.5})
            CHECK(tv_partition(enumerate_tiny(n, p),
                               partition_distribution(n, p)) <= 1e-12);
}

TEST_CASE("exceedance count pushforward") {
    const auto pmf = exact_count_pmf(3, 0.5, 1);
    REQUIRE(pmf.support.size() == 2);
    CHECK(pmf.support[0] == 0);
    CHECK(pmf.prob[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(pmf.support[1] == 1);
    CHECK(pmf.prob[1] == doctest::Approx(0.75).epsilon(1e-14));

    // x = 0 counts every type.
    const auto all_types = exact_count_pmf(6, 0.4, 0);
    CHECK(pmf_mean(all_types) ==
          doctest::Approx(1.0 + 0.6 * 5.0).epsilon(1e-10));
}

TEST_CASE("root cluster DP") {
    const auto pair = root_cluster_pmf(2, 0.3);
    REQUIRE(pair.support.size() == 2);
    CHECK(pair.prob[0] == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(pair.prob[1] == doctest::Approx(0.3).epsilon(1e-14));

    const auto three = root_cluster_pmf(3, 0.5);
    REQUIRE(three.support.size() == 3);
    CHECK(three.prob[0] == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(three.prob[1] == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(three.prob[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(pmf_mean(three) == doctest::Approx(1.875).epsilon(1e-14));

    const auto clones = root_cluster_pmf(5, 1.0);
    REQUIRE(clones.support.size() == 1);
    CHECK(clones.support[0] == 5);
    const auto mutants = root_cluster_pmf(5, 0.0);
    REQUIRE(mutants.support.size() == 1);
    CHECK(mutants.support[0] == 1);
}

TEST_CASE("root cluster mean equals the closed-form ancestral mean") {
    for (const std::uint32_t n : {2, 10, 100, 1000}) {
        for (const double p : {0.05, 0.1, 0.5}) {
            const auto pmf = root_cluster_pmf(n, p);
            CHECK(pmf_total(pmf) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(pmf_mean(pmf) ==
                  doctest::Approx(ancestral_mean(n, p)).epsilon(1e-11));
        }
    }
}

TEST_CASE("enumeration marginal matches the root DP") {
    for (std::uint32_t n = 2; n <= 8; ++n) {
        for (const double p : {0.3, 0.7}) {
            const auto brute = enumerate_tiny_root_pmf(n, p);
            const auto dp = root_cluster_pmf(n, p);
            REQUIRE(brute.support.size() == dp.support.size());
            for (std::size_t i = 0; i < brute.support.size(); ++i) {
                CHECK(brute.support[i] == dp.support[i]);
                CHECK(brute.prob[i] ==
                      doctest::Approx(dp.prob[i]).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("size caps and argument checks") {
    CHECK_THROWS_AS(partition_distribution(41, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_tiny(9, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(root_cluster_pmf(100001, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(partition_distribution(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(partition_distribution(5, 1.5), std::invalid_argument);
}

TEST_CASE("sampled partitions converge to the DP law") {
    const auto exact = partition_distribution(8, 0.3);
    const auto chain = empirical_partition(8, 0.3, 20000, 555, false);
    const auto rrt = empirical_partition(8, 0.3, 20000, 556, true);
    CHECK(tv_partition(chain, exact) < 0.02);
    CHECK(tv_partition(rrt, exact) < 0.02);
}

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "yuleperc/numerics.hpp"
#include "yuleperc/process.hpp"
#include "yuleperc/rng.hpp"
#include "yuleperc/stats.hpp"

using namespace yuleperc;

TEST_CASE("poisson pmf") {
    CHECK(poisson_pmf(2.0, 0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(poisson_pmf(2.0, 1) ==
          doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
    double total = 0.0;
    for (std::uint64_t j = 0; j <= 2 + 20 * 2; ++j)
        total += poisson_pmf(2.0, j);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    // Far tail stays meaningful instead of flushing to zero.
    const double far = poisson_pmf(1.0, 100);
    CHECK(far > 0.0);
    CHECK(std::log(far) ==
          doctest::Approx(-1.0 - log_gamma(101.0)).epsilon(1e-10));
    CHECK_THROWS_AS(poisson_pmf(0.0, 1), std::invalid_argument);
}

TEST_CASE("bernoulli sum convolution") {
    const auto fair = bernoulli_sum_pmf({0.5, 0.5});
    REQUIRE(fair.support.size() == 3);
    CHECK(fair.prob[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(fair.prob[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(fair.prob[2] == doctest::Approx(0.25).epsilon(1e-14));

    const auto empty = bernoulli_sum_pmf({});
    REQUIRE(empty.support.size() == 1);
    CHECK(empty.prob[0] == 1.0);

    CHECK_THROWS_AS(bernoulli_sum_pmf(std::vector<double>(31, 0.1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(bernoulli_sum_pmf({1.2}), std::invalid_argument);
}

TEST_CASE("le cam inequality holds for random parameter vectors") {
    CHECK(lecam_bound({0.1, 0.2}) == doctest::Approx(0.1).epsilon(1e-14));
    RandomStream rng({20260814, 0});
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = 1 + rng.uniform_below(20);
        std::vector<double> q(len);
        double lambda = 0.0;
        for (double& qi : q) {
            qi = 0.5 * rng.uniform01();
            lambda += qi;
        }
        if (lambda == 0.0)
            continue;
        const auto pmf = bernoulli_sum_pmf(q);
        const double l1 = l1_to_poisson(pmf, lambda);
        const double tv = tv_to_poisson(pmf, lambda);
        CHECK(l1 <= lecam_bound(q) + 1e-12);
        CHECK(tv <= 0.5 * lecam_bound(q) + 1e-12);
        CHECK(tv == doctest::Approx(0.5 * l1).epsilon(1e-12));
    }
}

TEST_CASE("total variation distance") {
    ExactPmf point0{{0}, {1.0}};
    ExactPmf point1{{1}, {1.0}};
    CHECK(tv_distance(point0, point0) == 0.0);
    CHECK(tv_distance(point0, point1) == 1.0);
    ExactPmf mixed{{0, 1}, {0.5, 0.5}};
    CHECK(tv_distance(point0, mixed) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(tv_distance(mixed, point0) == doctest::Approx(0.5).epsilon(1e-14));
    ExactPmf bad{{0}, {0.7}};
    CHECK_THROWS_AS(tv_distance(point0, bad), std::invalid_argument);

    // Against full reference laws the truncated tail is charged too.
    CHECK(tv_to_poisson(point0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(tv_to_geometric(point1, 0.25) ==
          doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("kolmogorov-smirnov distance") {
    // Exact plug-in quantiles of Exp(1) leave only the step error.
    const std::size_t n = 100;
    std::vector<double> quantiles(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / n;
        quantiles[i] = -std::log1p(-u);
    }
    const auto exp1 = [](double x) {
        return x <= 0.0 ? 0.0 : -std::expm1(-x);
    };
    CHECK(ks_distance(quantiles, exp1) ==
          doctest::Approx(0.5 / n).epsilon(1e-10));
    CHECK(ks_distance({std::log(2.0)}, exp1) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(ks_distance({}, exp1), std::invalid_argument);
}

TEST_CASE("divergence check") {
    CHECK(divergence_check({1.0, 2.0, 4.0, 8.0}));
    CHECK_FALSE(divergence_check({5.0, 5.0, 5.0, 5.0}));
    CHECK_FALSE(divergence_check({3.0, 2.0, 1.0}));
    CHECK(divergence_check({1.0, 2.0, 3.0})); // exact line
    CHECK_THROWS_AS(divergence_check({1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("monte carlo reports do not depend on the thread split") {
    McConfig config;
    config.n = 200;
    config.p = 0.3;
    config.statistic = StatLargest{};
    config.replicates = 500;
    config.master_seed = 42;

    config.threads = 1;
    const McReport solo = run_mc(config);
    config.threads = 4;
    const McReport pooled = run_mc(config);
    CHECK(solo.values == pooled.values);
    CHECK(solo.mean == pooled.mean);
    CHECK(solo.variance == pooled.variance);
    CHECK(solo.empirical.support == pooled.empirical.support);
    CHECK(solo.empirical.prob == pooled.empirical.prob);
}

TEST_CASE("monte carlo replicates reproduce the single-shot sampler") {
    McConfig config;
    config.n = 50;
    config.p = 0.6;
    config.statistic = StatCountExceeding{2};
    config.replicates = 20;
    config.master_seed = 987;
    config.threads = 2;
    const McReport report = run_mc(config);
    REQUIRE(report.values.size() == 20);
    for (std::uint64_t r = 0; r < 20; ++r) {
        const auto state = grow_chain(50, 0.6, {987, r});
        CHECK(report.values[r] ==
              static_cast<double>(count_exceeding(state, 2)));
    }
}

TEST_CASE("monte carlo degenerate runs and moments") {
    McConfig config;
    config.n = 5;
    config.p = 0.0;
    config.statistic = StatLargest{};
    config.replicates = 64;
    config.master_seed = 7;
    config.threads = 3;
    const McReport report = run_mc(config);
    CHECK(report.mean == 1.0);
    CHECK(report.variance == 0.0);
    CHECK(report.std_error == 0.0);
    REQUIRE(report.empirical.support.size() == 1);
    CHECK(report.empirical.support[0] == 1);
    CHECK(report.empirical.prob[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pmf_total(report.empirical) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("monte carlo reference distances") {
    McConfig config;
    config.n = 1000;
    config.statistic = StatTauRescaled{};
    config.replicates = 4000;
    config.master_seed = 20260101;
    config.references.ks_exp1 = true;
    const McReport report = run_mc(config);
    REQUIRE(report.distances.count("ks_exp1") == 1);
    CHECK(report.distances.at("ks_exp1") < 0.03);
    CHECK(report.empirical.support.empty()); // real-valued statistic

    McConfig root_config;
    root_config.n = 30;
    root_config.p = 0.4;
    root_config.statistic = StatRootCluster{};
    root_config.replicates = 5000;
    root_config.master_seed = 13;
    const McReport root_report = run_mc(root_config);
    CHECK(root_report.mean > 1.0);
    CHECK(pmf_total(root_report.empirical) ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(run_mc(McConfig{}), std::invalid_argument);
}

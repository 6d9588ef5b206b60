// Acceptance gate: one line per criterion, [PASS] or [FAIL], with every
// measured quantity and its pinned tolerance inline.  Run with no
// arguments for all criteria or with a single 1-based index.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "yuleperc/verify.hpp"

namespace {

using namespace yuleperc;

struct Criterion {
    int id;
    const char* title;
    ScenarioReport (*run)();
    double cap_seconds; // 0 = no runtime requirement
};

const std::vector<Criterion> kCriteria = {
    {1, "samplers match the exact small-n law",
     [] { return verify_oracle_equivalence(); }, 120.0},
    {2, "main term: gamma form vs quadrature vs product",
     [] { return verify_main_term_identity(); }, 0.0},
    {3, "main term Stirling approximations",
     [] { return verify_stirling(); }, 0.0},
    {4, "bounded regime: Poisson limit at the top size",
     [] { return verify_bounded(); }, 600.0},
    {5, "counts below the top size diverge",
     [] { return verify_divergence(); }, 0.0},
    {6, "sandwich bounds at the proof's bookkeeping size",
     [] { return verify_sandwich(); }, 0.0},
    {7, "ancestral cluster: exact mean and geometric limit",
     [] { return verify_ancestral(); }, 0.0},
    {8, "rescaled reach time converges to Exp(1)",
     [] { return verify_tau(); }, 0.0},
    {9, "Le Cam bounds for Bernoulli sums",
     [] { return verify_lecam(); }, 0.0},
    {10, "critical regime: largest-cluster window and Gumbel identity",
     [] { return verify_critical(); }, 600.0},
    {11, "intermediate regime: threshold counts",
     [] { return verify_intermediate(); }, 600.0},
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

bool run_criterion(const Criterion& criterion) {
    const auto start = std::chrono::steady_clock::now();
    ScenarioReport report = criterion.run();
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.cap_seconds > 0.0) {
        CheckResult runtime;
        runtime.name = "runtime-seconds";
        runtime.measured = elapsed;
        runtime.bound = criterion.cap_seconds;
        runtime.op = "<=";
        runtime.passed = elapsed <= criterion.cap_seconds;
        report.checks.push_back(runtime);
    }

    const bool passed = report.all_passed();
    std::string line = passed ? "[PASS]" : "[FAIL]";
    line += " criterion " + std::to_string(criterion.id) + " (" +
            criterion.title + "):";
    for (const CheckResult& check : report.checks) {
        line += " " + check.name + " " + fmt(check.measured) + check.op +
                fmt(check.bound) + (check.passed ? " ok;" : " VIOLATED;");
    }
    std::cout << line << "\n";
    return passed;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > static_cast<int>(kCriteria.size())) {
            std::cerr << "usage: acceptance [1.." << kCriteria.size()
                      << "]\n";
            return 2;
        }
    }
    bool all_passed = true;
    for (const Criterion& criterion : kCriteria) {
        if (only != 0 && criterion.id != only)
            continue;
        all_passed = run_criterion(criterion) && all_passed;
    }
    return all_passed ? 0 : 1;
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace yuleperc {

// One predicted bound checked against a measured quantity.  The detail
// string spells out the comparison direction and the inputs, so a
// failed line is diagnosable without rerunning.
struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string op = "<="; // direction the comparison must satisfy
    std::string detail;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

// Aligned multi-line table, one row per check.
void print_report(std::ostream& os, const ScenarioReport& report);

// Single-line digest: "PASS name: check m<=b; ..." for log-style output.
std::string one_line(const ScenarioReport& report);

// Each scenario bundles the checks of one verification story; the
// defaults reproduce the pinned acceptance runs, and the option structs
// expose what the command line may override.

struct OracleEquivalenceOptions {
    std::uint64_t n = 20;
    double p = 0.3;
    std::uint64_t x = 2; // count law N(x) compared against the DP
    std::uint64_t replicates = 100000;
    std::uint64_t master_seed = 11;
    unsigned threads = 0;
};
ScenarioReport verify_oracle_equivalence(const OracleEquivalenceOptions& opt = {});

// Gamma-ratio form against quadrature and telescoping product over a
// fixed (p, x) grid; pure computation, no options.
ScenarioReport verify_main_term_identity();

// Stirling approximations against the exact main term at the pinned
// fixed-x and growing-x evaluation points.
ScenarioReport verify_stirling();

struct BoundedOptions {
    std::uint64_t ell = 2;
    double a = 1.0;
    std::uint64_t n = 1000000;
    std::uint64_t replicates = 2000;
    std::uint64_t master_seed = 12;
    unsigned threads = 0;
};
ScenarioReport verify_bounded(const BoundedOptions& opt = {});

struct DivergenceOptions {
    std::uint64_t ell = 2;
    double a = 1.0;
    std::vector<std::uint64_t> ns = {1000, 10000, 100000, 1000000};
    std::uint64_t replicates = 400;
    std::uint64_t master_seed = 13;
    unsigned threads = 0;
};
ScenarioReport verify_divergence(const DivergenceOptions& opt = {});

struct SandwichOptions {
    std::uint64_t ell = 2;
    double a = 1.0;
    std::uint64_t n = 1000000;
};
ScenarioReport verify_sandwich(const SandwichOptions& opt = {});

struct AncestralOptions {
    std::uint64_t mc_n = 1000;
    double mc_p = 0.05;
    std::uint64_t replicates = 100000;
    std::uint64_t master_seed = 2;
    unsigned threads = 0;
};
ScenarioReport verify_ancestral(const AncestralOptions& opt = {});

struct TauOptions {
    std::uint64_t n = 10000;
    std::uint64_t replicates = 100000;
    std::uint64_t master_seed = 15;
    unsigned threads = 0;
};
ScenarioReport verify_tau(const TauOptions& opt = {});

struct LecamOptions {
    std::uint64_t vectors = 100;
    std::uint64_t master_seed = 16;
};
ScenarioReport verify_lecam(const LecamOptions& opt = {});

struct CriticalOptions {
    double a = 1.0;
    std::uint64_t n = 1000000;
    std::uint64_t replicates = 3000;
    std::uint64_t master_seed = 17;
    unsigned threads = 0;
};
ScenarioReport verify_critical(const CriticalOptions& opt = {});

struct IntermediateOptions {
    double lambda = 1.0;
    std::uint64_t n = 1000000;
    std::uint64_t replicates = 2000;
    std::uint64_t master_seed = 18;
    unsigned threads = 0;
};
ScenarioReport verify_intermediate(const IntermediateOptions& opt = {});

} // namespace yuleperc

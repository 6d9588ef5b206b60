#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace yuleperc {

// Mutation-probability schedules under which the largest subpopulations
// have nondegenerate limit laws.
struct BoundedRegime { // p_n = a * n^(-1/ell), largest clusters of size ell+1
    std::uint64_t ell = 1;
    double a = 1.0;
};

struct CriticalRegime { // p_n = a / ln n
    double a = 1.0;
};

// Named schedules between the critical and constant regimes,
// 1/ln n << p_n << 1.
enum class Schedule { LogLogOverLog, Power };

struct IntermediateRegime {
    Schedule schedule = Schedule::LogLogOverLog;
    double gamma = 0.5; // exponent for Schedule::Power, p_n = n^(-gamma)
};

struct ExplicitRegime { // fixed p supplied by the caller
    double p = 0.1;
};

using Regime = std::variant<BoundedRegime, CriticalRegime, IntermediateRegime,
                            ExplicitRegime>;

// Clone probability of the regime's schedule at population size n.
// Throws std::invalid_argument unless the result lies in (0,1).
double evaluate_p(const Regime& regime, std::uint64_t n);

std::string regime_name(const Regime& regime);

struct CriticalConstants {
    double a = 0.0;
    double t_star = 0.0;  // unique positive root of f_a
    double f_prime = 0.0; // f_a'(t_star), always negative
};

struct GumbelParams {
    double location = 0.0;
    double scale = 2.0;
};

struct BetaBounds {
    double lower = 0.0; // beta_low(i): ln i - ln(1+3k^(-1/3)) - ln k
    double upper = 0.0; // beta_up(i):  ln i - ln(1-3k^(-1/3)) - ln k
};

struct SandwichBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Closed-form prediction for the count of types larger than the regime
// threshold, together with the computable error terms around it.
struct Prediction {
    std::string regime;
    std::uint64_t n = 0;
    double p = 0.0;
    double lambda = 1.0;
    std::uint64_t threshold = 0; // x such that N(x) has the Poisson limit
    double intensity = 0.0;      // Poisson intensity of that limit
    double main_term = 0.0;      // I(n, p, threshold)
    std::uint64_t k = 0;         // bookkeeping population size used below
    double sigma1 = 0.0;
    double sigma3 = 0.0;
    SandwichBounds sandwich;
    // The middle error term of the proof's union bound depends on the
    // good-event coupling and has no closed form; flagged, not faked.
    bool sigma2_omitted = true;
    std::optional<double> y; // critical regime: real threshold before flooring
    std::optional<double> b; // critical regime: fractional part used
};

// Expected number of types exceeding size x, to leading order:
// I(n,p,x) = n * Gamma(1/p+1) * Gamma(x+1) / Gamma(1/p+x+1).
// Evaluated through log-gamma so large arguments cannot overflow.
double main_term(std::uint64_t n, double p, std::uint64_t x);
double log_main_term(std::uint64_t n, double p, std::uint64_t x);

// Same quantity by adaptive quadrature of the integral representation
// n * int_0^inf (1-e^(-ps))^x e^(-s) ds; an independent cross-check.
double main_term_quadrature(std::uint64_t n, double p, std::uint64_t x);
double log_main_term_quadrature(std::uint64_t n, double p, std::uint64_t x);

enum class AsympMode { FixedX, GrowingX };

// Stirling approximations of the main term: x! n p^x for fixed x,
// and the saddle form for x growing with n.  GrowingX needs x >= 1.
// The log form stays finite where the value underflows.
double asymp_main_term(std::uint64_t n, double p, std::uint64_t x,
                       AsympMode mode);
double log_asymp_main_term(std::uint64_t n, double p, std::uint64_t x,
                           AsympMode mode);

// f_a(t) = 1 + t ln(at) - ((1+at)/a) ln(1+at); its unique positive root
// t_star(a) sets the growth constant of the critical-regime threshold.
double f_a(double a, double t);
double f_a_prime(double a, double t); // ln(at) - ln(1+at)
double t_star(double a);
CriticalConstants critical_constants(double a);

// Real-valued critical threshold y_n; callers floor it and feed the
// fractional part back in as b.
double threshold_y(std::uint64_t n, double a, double lambda);

// Centering sequence for the largest cluster in the critical regime.
double threshold_b(std::uint64_t n, double a);

// Poisson intensity along subsequences with fractional part b.
double intensity_lambda(double a, double b, double lambda);

// Location/scale of the Gumbel-type limit of the largest cluster.
GumbelParams gumbel_params(double a, double b);

// Integer threshold in the intermediate regime,
// floor((sqrt(2 pi / p)/lambda)^p * e^(-1) * p^(-1) * n^p).
std::uint64_t threshold_x(std::uint64_t n, double p, double lambda);

// P(cluster alive for time t exceeds size x) = (1 - e^(-pt))^x.
double geom_tail(double p, double t, std::uint64_t x);

// Exact mean of the ancestral type's size at population n:
// 1 + p * sum_{i=1}^{n-1} (1/i!) prod_{j=2}^{i} (j-1+p).
double ancestral_mean(std::uint64_t n, double p);

// Time-window bounds for the birth of the i-th type relative to the
// moment the population was k.  Requires k >= 28 so 1-3k^(-1/3) > 0.
BetaBounds beta_bounds(std::uint64_t i, std::uint64_t k);

// Largest index whose early birth bound still fits below the late
// bound for n, and vice versa; the index ranges of the bracketing
// systems.
std::uint64_t n_star(std::uint64_t n, std::uint64_t k);
std::uint64_t n_sub(std::uint64_t n, std::uint64_t k);

// Computable error terms around the main term: contribution of the
// first 2k types, and the tail beyond the good-event window.
double sigma1(std::uint64_t n, double p, std::uint64_t x, std::uint64_t k);
double sigma3(std::uint64_t n, double p, std::uint64_t x, std::uint64_t k);

// upper = sigma1 + (1+10k^(-1/3)) I,  lower = (1-10k^(-1/3)) I - sigma3.
SandwichBounds sandwich(std::uint64_t n, double p, std::uint64_t x,
                        std::uint64_t k);

// Regime-default bookkeeping size (floor(ln n), floor(sqrt(ln n)) or
// floor(p^(-1/2))), clamped up to the validity guard k >= 28.
std::uint64_t default_k(const Regime& regime, std::uint64_t n,
                        std::optional<double> p_override = std::nullopt);

// Dispatcher: threshold and intensity per regime plus the error-term
// diagnostics at the regime-default k.  Critical regime requires b;
// p_override replaces the regime schedule in the p-dependent fields.
Prediction predict(const Regime& regime, std::uint64_t n, double lambda = 1.0,
                   std::optional<double> b = std::nullopt,
                   std::optional<double> p_override = std::nullopt);

} // namespace yuleperc

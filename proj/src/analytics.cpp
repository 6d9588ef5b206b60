#include "yuleperc/analytics.hpp"

#include <cmath>
#include <stdexcept>

#include "yuleperc/numerics.hpp"

namespace yuleperc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::uint64_t kMinBookkeepingK = 28; // smallest k with 1-3k^(-1/3) > 0

void check_np(std::uint64_t n, double p) {
    if (n == 0)
        throw std::invalid_argument("population size n must be positive");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in (0,1]");
}

void check_k(std::uint64_t k) {
    if (k < kMinBookkeepingK)
        throw std::invalid_argument("bookkeeping size k must be at least 28");
}

double require_unit_interval(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument(std::string(what) +
                                    " must evaluate into (0,1)");
    return p;
}

} // namespace

double evaluate_p(const Regime& regime, std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("population size n must be positive");
    return std::visit(
        [n](const auto& r) -> double {
            using T = std::decay_t<decltype(r)>;
            const double dn = static_cast<double>(n);
            if constexpr (std::is_same_v<T, BoundedRegime>) {
                if (r.ell < 1)
                    throw std::invalid_argument("bounded regime needs ell >= 1");
                if (!(r.a > 0.0))
                    throw std::invalid_argument("bounded regime needs a > 0");
                return require_unit_interval(
                    r.a * std::pow(dn, -1.0 / static_cast<double>(r.ell)),
                    "a * n^(-1/ell)");
            } else if constexpr (std::is_same_v<T, CriticalRegime>) {
                if (!(r.a > 0.0))
                    throw std::invalid_argument("critical regime needs a > 0");
                if (n < 2)
                    throw std::invalid_argument("critical regime needs n >= 2");
                return require_unit_interval(r.a / std::log(dn), "a / ln n");
            } else if constexpr (std::is_same_v<T, IntermediateRegime>) {
                if (r.schedule == Schedule::LogLogOverLog) {
                    if (n < 3)
                        throw std::invalid_argument(
                            "loglog schedule needs n >= 3");
                    return require_unit_interval(
                        std::log(std::log(dn)) / std::log(dn),
                        "ln ln n / ln n");
                }
                if (!(r.gamma > 0.0))
                    throw std::invalid_argument("power schedule needs gamma > 0");
                return require_unit_interval(std::pow(dn, -r.gamma),
                                             "n^(-gamma)");
            } else {
                static_assert(std::is_same_v<T, ExplicitRegime>);
                return require_unit_interval(r.p, "explicit p");
            }
        },
        regime);
}

std::string regime_name(const Regime& regime) {
    return std::visit(
        [](const auto& r) -> std::string {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, BoundedRegime>)
                return "bounded";
            else if constexpr (std::is_same_v<T, CriticalRegime>)
                return "critical";
            else if constexpr (std::is_same_v<T, IntermediateRegime>)
                return r.schedule == Schedule::LogLogOverLog
                           ? "intermediate:loglog"
                           : "intermediate:power";
            else
                return "explicit";
        },
        regime);
}

double log_main_term(std::uint64_t n, double p, std::uint64_t x) {
    check_np(n, p);
    const double inv_p = 1.0 / p;
    const double dx = static_cast<double>(x);
    return std::log(static_cast<double>(n)) + log_gamma(inv_p + 1.0) +
           log_gamma(dx + 1.0) - log_gamma(inv_p + dx + 1.0);
}

double main_term(std::uint64_t n, double p, std::uint64_t x) {
    return std::exp(log_main_term(n, p, x));
}

double log_main_term_quadrature(std::uint64_t n, double p, std::uint64_t x) {
    check_np(n, p);
    return std::log(static_cast<double>(n)) +
           log_tail_integral(p, static_cast<double>(x), 0.0);
}

double main_term_quadrature(std::uint64_t n, double p, std::uint64_t x) {
    return std::exp(log_main_term_quadrature(n, p, x));
}

double log_asymp_main_term(std::uint64_t n, double p, std::uint64_t x,
                           AsympMode mode) {
    check_np(n, p);
    const double log_n = std::log(static_cast<double>(n));
    const double dx = static_cast<double>(x);
    if (mode == AsympMode::FixedX)
        return log_gamma(dx + 1.0) + log_n + dx * std::log(p);
    if (x == 0)
        throw std::invalid_argument("growing-x asymptotics needs x >= 1");
    const double inv_p = 1.0 / p;
    return 0.5 * std::log(kTwoPi) + log_n + (inv_p + 0.5) * std::log(inv_p) +
           (dx + 0.5) * std::log(dx) -
           (inv_p + dx + 0.5) * std::log(inv_p + dx);
}

double asymp_main_term(std::uint64_t n, double p, std::uint64_t x,
                       AsympMode mode) {
    return std::exp(log_asymp_main_term(n, p, x, mode));
}

double f_a(double a, double t) {
    if (!(a > 0.0) || !(t > 0.0))
        throw std::invalid_argument("f_a requires a > 0 and t > 0");
    const double at = a * t;
    return 1.0 + t * std::log(at) - (1.0 + at) / a * std::log1p(at);
}

double f_a_prime(double a, double t) {
    if (!(a > 0.0) || !(t > 0.0))
        throw std::invalid_argument("f_a_prime requires a > 0 and t > 0");
    return std::log(a * t) - std::log1p(a * t);
}

double t_star(double a) {
    if (!(a > 0.0))
        throw std::invalid_argument("t_star requires a > 0");
    // f_a decreases from 1 at t -> 0+ to -infinity, so the root is
    // unique.  Expand the right endpoint until the sign flips, then
    // bisect.
    double lo = 1e-9;
    double hi = 1.0;
    while (f_a(a, hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300)
            throw std::invalid_argument("t_star bracket expansion failed");
    }
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (f_a(a, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CriticalConstants critical_constants(double a) {
    CriticalConstants c;
    c.a = a;
    c.t_star = t_star(a);
    c.f_prime = f_a_prime(a, c.t_star);
    return c;
}

double threshold_y(std::uint64_t n, double a, double lambda) {
    if (n < 3)
        throw std::invalid_argument("threshold_y needs n >= 3");
    if (!(lambda > 0.0))
        throw std::invalid_argument("threshold_y needs lambda > 0");
    const CriticalConstants c = critical_constants(a);
    const double log_n = std::log(static_cast<double>(n));
    const double at = a * c.t_star;
    return c.t_star * log_n -
           (std::log(log_n) +
            std::log(kTwoPi * c.t_star / (lambda * lambda * (1.0 + at)))) /
               (2.0 * c.f_prime);
}

double threshold_b(std::uint64_t n, double a) {
    if (n < 3)
        throw std::invalid_argument("threshold_b needs n >= 3");
    const CriticalConstants c = critical_constants(a);
    const double log_n = std::log(static_cast<double>(n));
    return c.t_star * log_n - std::log(log_n) / (2.0 * c.f_prime);
}

double intensity_lambda(double a, double b, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("intensity_lambda needs lambda > 0");
    const CriticalConstants c = critical_constants(a);
    return lambda * std::pow(1.0 + 1.0 / (a * c.t_star), b);
}

GumbelParams gumbel_params(double a, double b) {
    const CriticalConstants c = critical_constants(a);
    const double at = a * c.t_star;
    GumbelParams g;
    g.location = std::log(kTwoPi) - 2.0 * b * std::log(a) +
                 (1.0 - 2.0 * b) * std::log(c.t_star / (1.0 + at));
    g.scale = 2.0;
    return g;
}

std::uint64_t threshold_x(std::uint64_t n, double p, double lambda) {
    if (n == 0)
        throw std::invalid_argument("population size n must be positive");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("threshold_x needs p in (0,1)");
    if (!(lambda > 0.0))
        throw std::invalid_argument("threshold_x needs lambda > 0");
    const double log_val = p * (0.5 * std::log(kTwoPi / p) - std::log(lambda)) -
                           1.0 - std::log(p) +
                           p * std::log(static_cast<double>(n));
    return static_cast<std::uint64_t>(std::floor(std::exp(log_val)));
}

double geom_tail(double p, double t, std::uint64_t x) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("geom_tail needs p in [0,1]");
    if (!(t >= 0.0))
        throw std::invalid_argument("geom_tail needs t >= 0");
    if (x == 0)
        return 1.0;
    const double base = -std::expm1(-p * t); // 1 - e^(-pt), stable for small pt
    if (base <= 0.0)
        return 0.0;
    return std::exp(static_cast<double>(x) * std::log(base));
}

double ancestral_mean(std::uint64_t n, double p) {
    if (n == 0)
        throw std::invalid_argument("population size n must be positive");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("p must lie in [0,1]");
    // term_i = (1/i!) prod_{j=2}^{i} (j-1+p) satisfies
    // term_i = term_{i-1} * (i-1+p)/i with term_1 = 1.
    double sum = 0.0;
    double term = 1.0;
    for (std::uint64_t i = 1; i < n; ++i) {
        if (i > 1)
            term *= (static_cast<double>(i) - 1.0 + p) / static_cast<double>(i);
        sum += term;
    }
    return 1.0 + p * sum;
}

BetaBounds beta_bounds(std::uint64_t i, std::uint64_t k) {
    check_k(k);
    if (i == 0)
        throw std::invalid_argument("index i must be positive");
    const double c = 3.0 * std::pow(static_cast<double>(k), -1.0 / 3.0);
    const double log_i_over_k =
        std::log(static_cast<double>(i)) - std::log(static_cast<double>(k));
    BetaBounds b;
    b.lower = log_i_over_k - std::log1p(c);
    b.upper = log_i_over_k - std::log1p(-c);
    return b;
}

namespace {

// max { i >= 1 : key(i) <= bound }, starting from a closed-form guess
// and nudging to absorb floating-point edge effects.
template <typename KeyFn>
std::uint64_t adjust_max_index(std::uint64_t guess, KeyFn key, double bound) {
    std::uint64_t i = std::max<std::uint64_t>(guess, 1);
    while (key(i + 1) <= bound)
        ++i;
    while (i > 1 && key(i) > bound)
        --i;
    return (key(i) <= bound) ? i : 0;
}

} // namespace

std::uint64_t n_star(std::uint64_t n, std::uint64_t k) {
    check_k(k);
    if (n == 0)
        throw std::invalid_argument("population size n must be positive");
    const double c = 3.0 * std::pow(static_cast<double>(k), -1.0 / 3.0);
    const double ratio = (1.0 + c) / (1.0 - c);
    const double bound = beta_bounds(n, k).upper;
    const auto guess =
        static_cast<std::uint64_t>(static_cast<double>(n) * ratio);
    return adjust_max_index(
        guess, [k](std::uint64_t i) { return beta_bounds(i, k).lower; }, bound);
}

std::uint64_t n_sub(std::uint64_t n, std::uint64_t k) {
    check_k(k);
    if (n == 0)
        throw std::invalid_argument("population size n must be positive");
    const double c = 3.0 * std::pow(static_cast<double>(k), -1.0 / 3.0);
    const double ratio = (1.0 - c) / (1.0 + c);
    const double bound = beta_bounds(n, k).lower;
    const auto guess =
        static_cast<std::uint64_t>(static_cast<double>(n) * ratio);
    return adjust_max_index(
        guess, [k](std::uint64_t i) { return beta_bounds(i, k).upper; }, bound);
}

double sigma1(std::uint64_t n, double p, std::uint64_t x, std::uint64_t k) {
    check_np(n, p);
    check_k(k);
    const double log_k = std::log(static_cast<double>(k));
    const double t = beta_bounds(n, k).upper + log_k * log_k;
    return 2.0 * static_cast<double>(k) * geom_tail(p, t, x);
}

double sigma3(std::uint64_t n, double p, std::uint64_t x, std::uint64_t k) {
    check_np(n, p);
    check_k(k);
    const double c = 10.0 * std::pow(static_cast<double>(k), -1.0 / 3.0);
    // The prefactor 1-10k^(-1/3) goes negative for k < 1000; clamp at
    // zero so the term stays a nonnegative error bound.
    const double factor = std::max(1.0 - c, 0.0);
    if (factor == 0.0)
        return 0.0;
    const double lower = beta_bounds(n, k).lower - beta_bounds(2 * k, k).upper;
    const double log_integral =
        log_tail_integral(p, static_cast<double>(x), lower);
    const double log_val = std::log(static_cast<double>(n)) + log_integral;
    if (log_val < -745.0)
        return 0.0;
    return factor * std::exp(log_val);
}

SandwichBounds sandwich(std::uint64_t n, double p, std::uint64_t x,
                        std::uint64_t k) {
    const double c = 10.0 * std::pow(static_cast<double>(k), -1.0 / 3.0);
    const double main = main_term(n, p, x);
    SandwichBounds s;
    s.upper = sigma1(n, p, x, k) + (1.0 + c) * main;
    s.lower = (1.0 - c) * main - sigma3(n, p, x, k);
    return s;
}

std::uint64_t default_k(const Regime& regime, std::uint64_t n,
                        std::optional<double> p_override) {
    const double log_n = std::log(static_cast<double>(n == 0 ? 1 : n));
    const double raw = std::visit(
        [&](const auto& r) -> double {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, BoundedRegime>) {
                (void)r;
                return std::floor(log_n);
            } else if constexpr (std::is_same_v<T, CriticalRegime>) {
                (void)r;
                return std::floor(std::sqrt(log_n));
            } else {
                const double p =
                    p_override ? *p_override : evaluate_p(regime, n);
                return std::floor(1.0 / std::sqrt(p));
            }
        },
        regime);
    const double clamped = std::max(raw, static_cast<double>(kMinBookkeepingK));
    return static_cast<std::uint64_t>(clamped);
}

Prediction predict(const Regime& regime, std::uint64_t n, double lambda,
                   std::optional<double> b, std::optional<double> p_override) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("predict needs lambda > 0");
    if (p_override && !(*p_override > 0.0 && *p_override < 1.0))
        throw std::invalid_argument("overriding p must lie in (0,1)");
    Prediction out;
    out.regime = regime_name(regime);
    out.n = n;
    out.lambda = lambda;
    out.p = p_override ? *p_override : evaluate_p(regime, n);

    if (const auto* bounded = std::get_if<BoundedRegime>(&regime)) {
        out.threshold = bounded->ell;
        double intensity = 1.0;
        for (std::uint64_t j = 1; j <= bounded->ell; ++j)
            intensity *= static_cast<double>(j) * bounded->a;
        out.intensity = intensity; // ell! * a^ell
    } else if (const auto* critical = std::get_if<CriticalRegime>(&regime)) {
        if (!b.has_value())
            throw std::invalid_argument(
                "critical regime prediction needs the fractional part b");
        const double y = threshold_y(n, critical->a, lambda);
        out.y = y;
        out.b = *b;
        out.threshold = static_cast<std::uint64_t>(std::floor(y));
        out.intensity = intensity_lambda(critical->a, *b, lambda);
    } else {
        out.threshold = threshold_x(n, out.p, lambda);
        out.intensity = lambda;
    }

    out.k = default_k(regime, n, p_override);
    out.main_term = main_term(n, out.p, out.threshold);
    out.sigma1 = sigma1(n, out.p, out.threshold, out.k);
    out.sigma3 = sigma3(n, out.p, out.threshold, out.k);
    out.sandwich = sandwich(n, out.p, out.threshold, out.k);
    out.sigma2_omitted = true;
    return out;
}

} // namespace yuleperc

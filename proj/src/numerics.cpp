#include "yuleperc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace yuleperc {

double log_gamma(double z) {
    if (!(z > 0.0))
        throw std::invalid_argument("log_gamma requires z > 0");

    // Push the argument above 12 where the asymptotic series is sharp,
    // then undo the shift with ln Gamma(z) = ln Gamma(z+m) - sum ln(z+i).
    double shift = 0.0;
    while (z < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }

    // Stirling series with Bernoulli terms through 1/z^13; the first
    // omitted term is below 1e-18 at z = 12.
    const double w = 1.0 / (z * z);
    double series = 1.0 / 156.0;
    series = series * w - 691.0 / 360360.0;
    series = series * w + 1.0 / 1188.0;
    series = series * w - 1.0 / 1680.0;
    series = series * w + 1.0 / 1260.0;
    series = series * w - 1.0 / 360.0;
    series = series * w + 1.0 / 12.0;

    const double half_log_two_pi = 0.91893853320467274178; // ln(2*pi)/2
    return (z - 0.5) * std::log(z) - z + half_log_two_pi + series / z - shift;
}

namespace {

// Gauss-Kronrod 15(7) nodes and weights on [-1,1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

Interval eval_gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double result_gauss = kWg[3] * fc;
    double result_kronrod = kWgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double fsum = f(center - dx) + f(center + dx);
        result_kronrod += kWgk[j] * fsum;
        if (j % 2 == 1)
            result_gauss += kWg[j / 2] * fsum;
    }
    Interval out;
    out.a = a;
    out.b = b;
    out.value = result_kronrod * half;
    out.error = std::abs(result_kronrod - result_gauss) * half;
    return out;
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    const std::vector<double>& breakpoints,
                                    double rel_tol, double abs_tol,
                                    int max_intervals) {
    if (breakpoints.size() < 2)
        throw std::invalid_argument("integrate_adaptive needs at least two breakpoints");

    std::priority_queue<Interval> queue;
    double total = 0.0;
    double total_error = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw std::invalid_argument("breakpoints must be strictly increasing");
        Interval iv = eval_gk15(f, breakpoints[i], breakpoints[i + 1]);
        total += iv.value;
        total_error += iv.error;
        queue.push(iv);
        ++count;
    }

    while (count < max_intervals &&
           total_error > std::max(abs_tol, rel_tol * std::abs(total))) {
        Interval worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) { // interval at double resolution
            queue.push(worst);
            break;
        }
        Interval left = eval_gk15(f, worst.a, mid);
        Interval right = eval_gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++count;
    }

    QuadratureResult out;
    out.value = total;
    out.abs_error = total_error;
    out.intervals = count;
    return out;
}

double log_tail_integral(double p, double x, double lower) {
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("log_tail_integral requires p in (0,1]");
    if (!(x >= 0.0))
        throw std::invalid_argument("log_tail_integral requires x >= 0");

    const double left = std::max(lower, 0.0);
    if (x == 0.0)
        return -left; // integral of e^(-s) alone

    // Log-integrand g(s) = x ln(1-e^(-ps)) - s is strictly concave with
    // its stationary point at s* = log(1+xp)/p.
    const auto g = [p, x](double s) {
        return x * std::log(-std::expm1(-p * s)) - s;
    };
    const double s_peak = std::log1p(x * p) / p;
    const double mode = std::max(s_peak, left);
    const double g_mode = g(mode);
    const double sigma = std::sqrt(x / (1.0 + x * p)); // 1/sqrt(-g'' at s*)

    // Beyond U the remaining mass is under e^(-U), forced to be
    // negligible next to the peak contribution e^(g_mode) * sigma.
    const double safety = 46.0 + std::abs(std::log(std::max(sigma, 1e-12)));
    const double upper = std::max(mode + 10.0 * sigma, -g_mode + safety);

    std::vector<double> breaks;
    breaks.push_back(left);
    for (const double k : {-32.0, -16.0, -8.0, -4.0, -2.0, -1.0,
                           0.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        const double s = mode + k * sigma;
        if (s > left && s < upper)
            breaks.push_back(s);
    }
    breaks.push_back(upper);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    const auto shifted = [&](double s) {
        if (s <= 0.0)
            return 0.0;
        const double e = g(s) - g_mode;
        return (e < -745.0) ? 0.0 : std::exp(e);
    };
    const QuadratureResult q = integrate_adaptive(shifted, breaks, 1e-11);
    if (!(q.value > 0.0))
        return -std::numeric_limits<double>::infinity();
    return g_mode + std::log(q.value);
}

} // namespace yuleperc

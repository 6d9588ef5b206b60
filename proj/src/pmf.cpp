#include "yuleperc/pmf.hpp"

namespace yuleperc {

ExactPmf pmf_from_map(const std::map<std::int64_t, double>& weights) {
    ExactPmf pmf;
    pmf.support.reserve(weights.size());
    pmf.prob.reserve(weights.size());
    for (const auto& [value, weight] : weights) {
        pmf.support.push_back(value);
        pmf.prob.push_back(weight);
    }
    return pmf;
}

double pmf_total(const ExactPmf& pmf) {
    double total = 0.0;
    for (const double q : pmf.prob)
        total += q;
    return total;
}

double pmf_mean(const ExactPmf& pmf) {
    double mean = 0.0;
    for (std::size_t i = 0; i < pmf.prob.size(); ++i)
        mean += static_cast<double>(pmf.support[i]) * pmf.prob[i];
    return mean;
}

} // namespace yuleperc

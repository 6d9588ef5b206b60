#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace yuleperc {

// Probability mass function on integers, support ascending.
struct ExactPmf {
    std::vector<std::int64_t> support;
    std::vector<double> prob;
};

ExactPmf pmf_from_map(const std::map<std::int64_t, double>& weights);

double pmf_total(const ExactPmf& pmf);
double pmf_mean(const ExactPmf& pmf);

} // namespace yuleperc

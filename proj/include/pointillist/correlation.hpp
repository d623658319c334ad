#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pointillist {

struct Correlation {
    double r = 0.0;
    bool zero_variance = false;  // r forced to 0 because one input is constant
};

enum class CorrelationMethod { Pearson, Spearman };

/// Pearson product-moment coefficient. Requires equal lengths >= 2
/// (ParameterError otherwise). A constant input yields r = 0 with the flag set.
Correlation pearson(std::span<const double> x, std::span<const double> y);

/// Pearson over average ranks (ties share the mean rank).
Correlation spearman(std::span<const double> x, std::span<const double> y);

Correlation correlate(CorrelationMethod method, std::span<const double> x,
                      std::span<const double> y);

std::vector<double> to_real(std::span<const std::uint64_t> counts);

/// Average ranks, 1-based.
std::vector<double> average_ranks(std::span<const double> values);

} // namespace pointillist

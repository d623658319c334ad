#include "pointillist/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pointillist/errors.hpp"

namespace pointillist {

namespace {

bool is_constant(std::span<const double> v) noexcept
{
    return std::all_of(v.begin(), v.end(), [first = v.front()](double x) { return x == first; });
}

double mean_of(std::span<const double> v) noexcept
{
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

} // namespace

Correlation pearson(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw ParameterError("correlation inputs differ in length");
    if (x.size() < 2) throw ParameterError("correlation needs at least two points");
    if (is_constant(x) || is_constant(y)) return {0.0, true};

    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    // sqrt of the product keeps r(x, x) == 1 exactly.
    const double r = sxy / std::sqrt(sxx * syy);
    return {std::clamp(r, -1.0, 1.0), false};
}

std::vector<double> average_ranks(std::span<const double> values)
{
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

Correlation spearman(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) throw ParameterError("correlation inputs differ in length");
    if (x.size() < 2) throw ParameterError("correlation needs at least two points");
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

Correlation correlate(CorrelationMethod method, std::span<const double> x, std::span<const double> y)
{
    return method == CorrelationMethod::Spearman ? spearman(x, y) : pearson(x, y);
}

std::vector<double> to_real(std::span<const std::uint64_t> counts)
{
    return std::vector<double>(counts.begin(), counts.end());
}

} // namespace pointillist

#pragma once

#include <cstdint>
#include <vector>

#include "pointillist/gram_store.hpp"

namespace pointillist {

struct TrendParams {
    double threshold = 100.0;
    std::uint64_t min_count = 5;
    int baseline_days = 30;
    double epsilon = 0.5;
};

struct TrendCandidate {
    Gram gram;
    LocalDay day = 0;
    std::uint64_t day_count = 0;
    double baseline = 0.0;
    double spike_score = 0.0;

    friend bool operator==(const TrendCandidate&, const TrendCandidate&) = default;
};

struct TrendReport {
    std::vector<TrendCandidate> candidates;
    bool day_out_of_range = false;
};

/// day_count / max(baseline, epsilon). Throws ParameterError unless epsilon > 0
/// and baseline >= 0.
double spike_score(std::uint64_t day_count, double baseline, double epsilon);

/// Mean daily count over the window_days local days strictly before `day`
/// (store time zone). Days outside the corpus count as zero.
double baseline(const GramStore& store, GramView gram, LocalDay day, int window_days);

/// Strict weak ordering used for report output: score desc, count desc, gram asc.
bool trend_order(const TrendCandidate& a, const TrendCandidate& b) noexcept;

/// Reference kernel: scores every primary-order gram in one thread.
TrendReport trending_grams_serial(const GramStore& store, LocalDay day,
                                  const TrendParams& params = {});

/// OpenMP kernel; output identical to trending_grams_serial for any thread count.
TrendReport trending_grams(const GramStore& store, LocalDay day, const TrendParams& params = {});

} // namespace pointillist

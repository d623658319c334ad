#include "pointillist/trends.hpp"

#include <algorithm>

#include <omp.h>

#include "pointillist/errors.hpp"

namespace pointillist {

namespace {

void check_params(const TrendParams& p)
{
    if (!(p.threshold > 0.0)) throw ParameterError("threshold must be > 0");
    if (p.min_count < 1) throw ParameterError("min_count must be >= 1");
    if (p.baseline_days < 1) throw ParameterError("baseline window must be >= 1 day");
    if (!(p.epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
}

struct ScoringWindow {
    BinRange history;  // baseline days
    BinRange day;
    int baseline_days;
};

ScoringWindow scoring_window(LocalDay day, int baseline_days, UtcOffset tz)
{
    return {bins_of_days(day - baseline_days, day - 1, tz), bins_of_day(day, tz), baseline_days};
}

// Day count and baseline sum for one gram in a single pass over its runs.
std::pair<std::uint64_t, std::uint64_t> scan_gram(std::span<const BinCount> runs,
                                                  const ScoringWindow& w)
{
    auto it = std::lower_bound(runs.begin(), runs.end(), w.history.first,
                               [](const BinCount& r, TimeBin b) { return r.bin < b; });
    std::uint64_t history = 0;
    std::uint64_t today = 0;
    for (; it != runs.end() && it->bin <= w.day.last; ++it) {
        if (it->bin >= w.day.first)
            today += it->count;
        else
            history += it->count;
    }
    return {today, history};
}

bool day_in_corpus(const GramStore& store, LocalDay day)
{
    const auto range = store.stats().bin_range;
    if (!range) return false;
    const BinRange bins = bins_of_day(day, store.tz());
    return bins.last >= range->first && bins.first <= range->last;
}

void score_gram(const GramStore& store, std::size_t index, LocalDay day, const ScoringWindow& w,
                const TrendParams& p, std::vector<TrendCandidate>& out)
{
    const auto& gram = store.gram_at(index);
    if (gram.size() != static_cast<std::size_t>(store.order())) return;
    const auto [today, history] = scan_gram(store.runs_at(index), w);
    if (today < p.min_count) return;
    const double base = static_cast<double>(history) / w.baseline_days;
    const double score = spike_score(today, base, p.epsilon);
    if (score >= p.threshold) out.push_back({gram, day, today, base, score});
}

} // namespace

double spike_score(std::uint64_t day_count, double baseline, double epsilon)
{
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
    if (!(baseline >= 0.0)) throw ParameterError("baseline must be >= 0");
    return static_cast<double>(day_count) / std::max(baseline, epsilon);
}

double baseline(const GramStore& store, GramView gram, LocalDay day, int window_days)
{
    if (window_days < 1) throw ParameterError("baseline window must be >= 1 day");
    const auto daily = store.daily_counts(gram, day - window_days, day - 1, store.tz());
    std::uint64_t sum = 0;
    for (auto c : daily) sum += c;
    return static_cast<double>(sum) / window_days;
}

bool trend_order(const TrendCandidate& a, const TrendCandidate& b) noexcept
{
    if (a.spike_score != b.spike_score) return a.spike_score > b.spike_score;
    if (a.day_count != b.day_count) return a.day_count > b.day_count;
    return a.gram < b.gram;
}

TrendReport trending_grams_serial(const GramStore& store, LocalDay day, const TrendParams& params)
{
    check_params(params);
    TrendReport report;
    if (!day_in_corpus(store, day)) {
        report.day_out_of_range = true;
        return report;
    }
    const ScoringWindow w = scoring_window(day, params.baseline_days, store.tz());
    for (std::size_t i = 0; i < store.size(); ++i) score_gram(store, i, day, w, params, report.candidates);
    std::sort(report.candidates.begin(), report.candidates.end(), trend_order);
    return report;
}

TrendReport trending_grams(const GramStore& store, LocalDay day, const TrendParams& params)
{
    check_params(params);
    TrendReport report;
    if (!day_in_corpus(store, day)) {
        report.day_out_of_range = true;
        return report;
    }
    const ScoringWindow w = scoring_window(day, params.baseline_days, store.tz());
    const auto n = static_cast<std::ptrdiff_t>(store.size());
    std::vector<std::vector<TrendCandidate>> local(static_cast<std::size_t>(omp_get_max_threads()));

    #pragma omp parallel
    {
        auto& out = local[static_cast<std::size_t>(omp_get_thread_num())];
        #pragma omp for schedule(dynamic, 4096)
        for (std::ptrdiff_t i = 0; i < n; ++i) score_gram(store, static_cast<std::size_t>(i), day, w, params, out);
    }

    for (auto& part : local)
        report.candidates.insert(report.candidates.end(), std::make_move_iterator(part.begin()),
                                 std::make_move_iterator(part.end()));
    std::sort(report.candidates.begin(), report.candidates.end(), trend_order);
    return report;
}

} // namespace pointillist

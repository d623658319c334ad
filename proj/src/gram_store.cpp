#include "pointillist/gram_store.hpp"

#include <algorithm>
#include <numeric>

#include "pointillist/errors.hpp"

namespace pointillist {

namespace {

bool reversed_less(GramView a, GramView b) noexcept
{
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

void check_window(BinRange window)
{
    if (window.first > window.last) throw ParameterError("window start is after window end");
}

} // namespace

GramStore GramStore::from_series(std::vector<GramSeries> series, std::vector<int> orders,
                                 UtcOffset tz)
{
    std::sort(series.begin(), series.end(),
              [](const GramSeries& a, const GramSeries& b) { return a.gram < b.gram; });

    GramStore store;
    store.orders_ = std::move(orders);
    store.tz_ = tz;
    store.grams_.reserve(series.size());
    store.totals_.reserve(series.size());
    store.run_offsets_.reserve(series.size() + 1);
    store.run_offsets_.push_back(0);

    std::size_t run_total = 0;
    for (const auto& s : series) run_total += s.runs.size();
    store.runs_.reserve(run_total);

    for (auto& s : series) {
        if (!store.grams_.empty() && store.grams_.back() == s.gram)
            throw ParameterError("duplicate gram in series list");
        store.grams_.push_back(std::move(s.gram));
        store.runs_.insert(store.runs_.end(), s.runs.begin(), s.runs.end());
        store.run_offsets_.push_back(store.runs_.size());
        store.totals_.push_back(s.total);
    }
    store.rebuild_indexes();
    return store;
}

void GramStore::rebuild_indexes()
{
    by_suffix_.resize(grams_.size());
    std::iota(by_suffix_.begin(), by_suffix_.end(), 0u);
    std::sort(by_suffix_.begin(), by_suffix_.end(), [this](std::uint32_t a, std::uint32_t b) {
        return reversed_less(grams_[a], grams_[b]);
    });

    total_occurrences_ = std::accumulate(totals_.begin(), totals_.end(), std::uint64_t{0});
    bin_range_.reset();
    for (std::size_t i = 0; i < grams_.size(); ++i) {
        const auto runs = runs_at(i);
        if (runs.empty()) continue;
        const BinRange r{runs.front().bin, runs.back().bin};
        if (!bin_range_) {
            bin_range_ = r;
        } else {
            bin_range_->first = std::min(bin_range_->first, r.first);
            bin_range_->last = std::max(bin_range_->last, r.last);
        }
    }
}

StoreStats GramStore::stats() const
{
    return StoreStats{grams_.size(), total_occurrences_, bin_range_};
}

std::optional<std::size_t> GramStore::find(GramView gram) const
{
    auto it = std::lower_bound(grams_.begin(), grams_.end(), gram,
                               [](const Gram& g, GramView key) { return GramView(g) < key; });
    if (it == grams_.end() || *it != gram) return std::nullopt;
    return static_cast<std::size_t>(it - grams_.begin());
}

std::span<const BinCount> GramStore::runs_at(std::size_t index) const
{
    return std::span<const BinCount>(runs_).subspan(run_offsets_[index],
                                                    run_offsets_[index + 1] - run_offsets_[index]);
}

std::optional<GramSeries> GramStore::series_of(GramView gram) const
{
    const auto index = find(gram);
    if (!index) return std::nullopt;
    const auto runs = runs_at(*index);
    return GramSeries{grams_[*index], {runs.begin(), runs.end()}, totals_[*index]};
}

std::vector<std::uint64_t> GramStore::series(GramView gram, BinRange window) const
{
    check_window(window);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(window.width()), 0);
    const auto index = find(gram);
    if (!index) return out;
    const auto runs = runs_at(*index);
    auto it = std::lower_bound(runs.begin(), runs.end(), window.first,
                               [](const BinCount& r, TimeBin b) { return r.bin < b; });
    for (; it != runs.end() && it->bin <= window.last; ++it)
        out[static_cast<std::size_t>(it->bin - window.first)] = it->count;
    return out;
}

std::uint64_t GramStore::window_total_at(std::size_t index, BinRange window) const
{
    check_window(window);
    const auto runs = runs_at(index);
    auto it = std::lower_bound(runs.begin(), runs.end(), window.first,
                               [](const BinCount& r, TimeBin b) { return r.bin < b; });
    std::uint64_t total = 0;
    for (; it != runs.end() && it->bin <= window.last; ++it) total += it->count;
    return total;
}

std::uint64_t GramStore::window_total(GramView gram, BinRange window) const
{
    check_window(window);
    const auto index = find(gram);
    return index ? window_total_at(*index, window) : 0;
}

std::vector<std::uint64_t> GramStore::daily_counts_at(std::size_t index, LocalDay first,
                                                      LocalDay last, UtcOffset tz) const
{
    if (first > last) throw ParameterError("day range start is after its end");
    std::vector<std::uint64_t> out(static_cast<std::size_t>(last - first + 1), 0);
    const BinRange bins = bins_of_days(first, last, tz);
    const auto runs = runs_at(index);
    auto it = std::lower_bound(runs.begin(), runs.end(), bins.first,
                               [](const BinCount& r, TimeBin b) { return r.bin < b; });
    for (; it != runs.end() && it->bin <= bins.last; ++it)
        out[static_cast<std::size_t>(local_day_of_bin(it->bin, tz) - first)] += it->count;
    return out;
}

std::vector<std::uint64_t> GramStore::daily_counts(GramView gram, LocalDay first, LocalDay last,
                                                   UtcOffset tz) const
{
    if (first > last) throw ParameterError("day range start is after its end");
    const auto index = find(gram);
    if (!index) return std::vector<std::uint64_t>(static_cast<std::size_t>(last - first + 1), 0);
    return daily_counts_at(*index, first, last, tz);
}

std::vector<Gram> GramStore::grams_with_prefix(GramView prefix) const
{
    if (prefix.size() + 1 != static_cast<std::size_t>(order()))
        throw ParameterError("prefix length must be gram order - 1");
    std::vector<Gram> out;
    auto it = std::lower_bound(grams_.begin(), grams_.end(), prefix,
                               [](const Gram& g, GramView key) { return GramView(g) < key; });
    for (; it != grams_.end() && GramView(*it).starts_with(prefix); ++it)
        if (it->size() == prefix.size() + 1) out.push_back(*it);
    return out;
}

std::vector<Gram> GramStore::grams_with_suffix(GramView suffix) const
{
    if (suffix.size() + 1 != static_cast<std::size_t>(order()))
        throw ParameterError("suffix length must be gram order - 1");
    std::vector<Gram> out;
    auto it = std::lower_bound(by_suffix_.begin(), by_suffix_.end(), suffix,
                               [this](std::uint32_t i, GramView key) {
                                   return reversed_less(grams_[i], key);
                               });
    for (; it != by_suffix_.end() && GramView(grams_[*it]).ends_with(suffix); ++it)
        if (grams_[*it].size() == suffix.size() + 1) out.push_back(grams_[*it]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace pointillist

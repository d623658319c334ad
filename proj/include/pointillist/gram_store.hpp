#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pointillist/text.hpp"
#include "pointillist/time_bins.hpp"

namespace pointillist {

struct BinCount {
    TimeBin bin = 0;
    std::uint32_t count = 0;

    friend bool operator==(const BinCount&, const BinCount&) = default;
};

struct StoreStats {
    std::uint64_t distinct_grams = 0;
    std::uint64_t total_occurrences = 0;
    std::optional<BinRange> bin_range;

    friend bool operator==(const StoreStats&, const StoreStats&) = default;
};

/// One gram's sparse hourly series. Runs are sorted by bin, no zero counts.
struct GramSeries {
    Gram gram;
    std::vector<BinCount> runs;
    std::uint64_t total = 0;
};

struct IngestOptions {
    std::vector<int> orders{3};  // first entry is the primary (connector) order
    UtcOffset tz{};
    bool nfc = false;
    const BoundarySet* boundaries = nullptr;  // null means BoundarySet::defaults()
    int threads = 0;                          // 0 means the OpenMP default
};

/// Immutable gram index: per-gram hourly counts plus sorted canonical and
/// reversed-gram indexes for prefix/suffix lookups. Built by the ingest
/// kernels, or loaded from a snapshot.
class GramStore {
public:
    GramStore() = default;

    int order() const noexcept { return orders_.empty() ? 3 : orders_.front(); }
    const std::vector<int>& orders() const noexcept { return orders_; }
    UtcOffset tz() const noexcept { return tz_; }
    bool partial() const noexcept { return partial_; }
    void mark_partial() noexcept { partial_ = true; }

    StoreStats stats() const;
    std::size_t size() const noexcept { return grams_.size(); }
    bool empty() const noexcept { return grams_.empty(); }

    /// Canonical (lexicographic) position of the gram, if stored.
    std::optional<std::size_t> find(GramView gram) const;
    const Gram& gram_at(std::size_t index) const { return grams_[index]; }
    std::span<const BinCount> runs_at(std::size_t index) const;
    std::uint64_t total_at(std::size_t index) const { return totals_[index]; }
    std::span<const std::uint32_t> suffix_order() const noexcept { return by_suffix_; }

    std::optional<GramSeries> series_of(GramView gram) const;

    /// Dense counts over an inclusive window; zeros for unknown grams.
    std::vector<std::uint64_t> series(GramView gram, BinRange window) const;
    std::uint64_t window_total(GramView gram, BinRange window) const;
    std::uint64_t window_total_at(std::size_t index, BinRange window) const;

    /// Per-local-day totals for days [first, last].
    std::vector<std::uint64_t> daily_counts(GramView gram, LocalDay first, LocalDay last,
                                            UtcOffset tz) const;
    std::vector<std::uint64_t> daily_counts_at(std::size_t index, LocalDay first, LocalDay last,
                                               UtcOffset tz) const;

    /// Primary-order grams starting with `prefix` (|prefix| = order() - 1), canonical order.
    std::vector<Gram> grams_with_prefix(GramView prefix) const;
    /// Primary-order grams ending with `suffix` (|suffix| = order() - 1), canonical order.
    std::vector<Gram> grams_with_suffix(GramView suffix) const;

    /// Takes ownership of finished series; grams need not be sorted.
    static GramStore from_series(std::vector<GramSeries> series, std::vector<int> orders,
                                 UtcOffset tz);

    friend bool operator==(const GramStore&, const GramStore&) = default;

private:
    friend class SnapshotCodec;

    void rebuild_indexes();

    std::vector<int> orders_{3};
    UtcOffset tz_{};
    bool partial_ = false;

    std::vector<Gram> grams_;                 // sorted canonical
    std::vector<std::uint32_t> by_suffix_;    // indexes sorted by reversed gram
    std::vector<std::uint64_t> run_offsets_;  // size() + 1 entries into runs_
    std::vector<BinCount> runs_;
    std::vector<std::uint64_t> totals_;
    std::uint64_t total_occurrences_ = 0;
    std::optional<BinRange> bin_range_;
};

/// Reference kernel: single-threaded, one hash map.
GramStore ingest_serial(std::span<const Post> posts, const IngestOptions& options = {});

/// Data-parallel kernel: per-thread counting over post chunks, then a merge
/// sharded by gram hash. Produces a store identical to ingest_serial.
GramStore ingest(std::span<const Post> posts, const IngestOptions& options = {});

} // namespace pointillist

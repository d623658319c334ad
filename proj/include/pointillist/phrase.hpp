#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pointillist/correlation.hpp"
#include "pointillist/gram_store.hpp"

namespace pointillist {

/// Days around an event over which gram series are correlated.
struct ConnectionWindow {
    LocalDay center = 0;
    int days_before = 5;
    int days_after = 5;

    /// Inclusive bin range of 24 * (before + after + 1) bins. Throws
    /// ParameterError on negative day counts.
    BinRange resolve(UtcOffset tz) const;
};

enum class Side { Left, Right };

/// `left` overlaps `right` by n-1 units; r is the correlation of the newly
/// reached gram (right for Side::Right, left for Side::Left) with the seed.
struct OverlapEdge {
    Gram left;
    Gram right;
    double r = 0.0;
};

enum class ScoreAggregation { Min, Mean };

struct PhraseCandidate {
    std::u32string text;
    double score = 1.0;
    std::string trace;  // one 'R' or 'L' per accepted extension, in order

    friend bool operator==(const PhraseCandidate&, const PhraseCandidate&) = default;
};

struct ConnectParams {
    double r_min = 0.6;
    int beam = 8;
    int max_len = 16;
    std::uint64_t min_count = 3;
    int max_gram_repeats = 2;
    ScoreAggregation aggregation = ScoreAggregation::Min;
    CorrelationMethod method = CorrelationMethod::Pearson;
};

/// a[1..n) == b[0..n-1). Throws ParameterError if lengths differ or are zero.
bool overlaps(GramView a, GramView b);

std::vector<OverlapEdge> neighbor_edges(const GramStore& store, GramView current,
                                        std::span<const double> seed_series, BinRange window,
                                        Side side, double r_min, std::uint64_t min_count,
                                        CorrelationMethod method = CorrelationMethod::Pearson);

/// Output ordering: score desc, length desc, text asc.
bool phrase_order(const PhraseCandidate& a, const PhraseCandidate& b) noexcept;

/// Beam search over overlap edges starting from `seed`. Each round extends
/// every beam state to the right, then to the left; candidates are scored
/// against the seed's series and the best `beam` survive. Returns every
/// surviving phrase (seed included), capped at beam * max_len entries.
std::vector<PhraseCandidate> connect(const GramStore& store, GramView seed, BinRange window,
                                     const ConnectParams& params = {});

} // namespace pointillist

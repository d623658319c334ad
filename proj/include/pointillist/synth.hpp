#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pointillist/text.hpp"

namespace pointillist {

namespace detail {
// Relative activity per local hour, trough at 04:00 and peak at 21:00 (60:10).
inline constexpr std::array<int, 24> kDayShapeRaw = {
    40, 30, 20, 14, 10, 12, 16, 22, 28, 32, 34, 36,
    38, 36, 34, 34, 36, 38, 42, 48, 54, 60, 56, 48,
};

constexpr std::array<double, 24> normalized_day_shape()
{
    int sum = 0;
    for (int v : kDayShapeRaw) sum += v;
    std::array<double, 24> out{};
    for (std::size_t h = 0; h < out.size(); ++h) out[h] = kDayShapeRaw[h] * 24.0 / sum;
    return out;
}
} // namespace detail

/// Diurnal activity weights, version 1. Mean weight is 1.0 (they sum to 24).
inline constexpr int kDayShapeVersion = 1;
inline constexpr std::array<double, 24> kDayShape = detail::normalized_day_shape();

/// base * kDayShape[hour]. Throws ParameterError unless 0 <= hour < 24 and base > 0.
double diurnal_rate(int hour_of_day, double base);

struct PlantedEvent {
    std::u32string phrase;
    LocalDay burst_day = 0;
    std::uint32_t burst_volume = 1;  // posts on burst_day
    double decay = 1.0;              // per-day multiplier on following days, in (0, 1]
};

/// A word mixed into background posts, so it inherits their diurnal shape.
struct CommonWord {
    std::u32string text;
    double post_share = 0.1;  // probability a background post contains it
};

struct VocabularyConfig {
    int size = 400;
    int min_len = 2;
    int max_len = 5;
    char32_t first_scalar = 0xAC00;  // Hangul syllables
    std::uint32_t span = 2000;
    double overlap = 0.0;  // chance each word scalar is drawn from planted scalars
};

struct SynthConfig {
    std::uint64_t seed = 1;
    int n = 3;
    LocalDay start_day = 0;
    int days = 30;
    UtcOffset tz{};
    double posts_per_hour = 10.0;
    int min_items = 3;
    int max_items = 12;
    VocabularyConfig vocabulary;
    std::vector<CommonWord> common_words;
    std::vector<PlantedEvent> events;
    bool record_counts = true;  // fill the ledger's per-bin gram counts
};

/// Ground truth written from the same draws as the posts.
struct GroundTruthLedger {
    int n = 3;
    UtcOffset tz{};
    std::vector<PlantedEvent> events;
    std::vector<std::vector<std::uint32_t>> event_daily_posts;  // per event, from burst_day on
    std::map<Gram, std::map<TimeBin, std::uint64_t>> counts;    // order-n grams only
    std::uint64_t total_occurrences = 0;
};

struct SynthCorpus {
    std::vector<Post> posts;  // sorted by (ts, id)
    GroundTruthLedger ledger;
};

/// Deterministic in config.seed. Throws ConfigError on invalid config.
SynthCorpus generate(const SynthConfig& config);

/// Reads the JSON synth config (see README). Throws ConfigError.
SynthConfig parse_synth_config(std::string_view json_text);

void write_corpus(std::ostream& out, const std::vector<Post>& posts);
/// JSON lines: a header, one "event" line per planted event, one "count" line
/// per (gram, bin).
void write_ledger(std::ostream& out, const GroundTruthLedger& ledger);

} // namespace pointillist

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pointillist/time_bins.hpp"

namespace pointillist {

/// A gram is a fixed-length run of scalar values; the string itself is the
/// canonical encoding and its natural ordering is lexicographic by scalar.
using Gram = std::u32string;
using GramView = std::u32string_view;

struct Post {
    std::string id;
    std::int64_t ts = 0;  // UTC epoch seconds
    std::u32string text;

    friend bool operator==(const Post&, const Post&) = default;
};

/// Scalars that split text into segments, in addition to Unicode whitespace.
class BoundarySet {
public:
    BoundarySet() = default;
    explicit BoundarySet(std::vector<char32_t> scalars);

    /// ASCII punctuation plus CJK and full-width punctuation.
    static const BoundarySet& defaults();

    /// One scalar per line; blank lines and lines starting with '#' are skipped.
    static BoundarySet parse(std::string_view utf8);
    static BoundarySet load(const std::filesystem::path& path);

    bool contains(char32_t c) const noexcept;
    std::size_t size() const noexcept { return scalars_.size(); }
    const std::vector<char32_t>& scalars() const noexcept { return scalars_; }

private:
    std::vector<char32_t> scalars_;  // sorted, unique
};

bool is_segment_break(char32_t c, const BoundarySet& boundaries) noexcept;

/// Splits on whitespace and boundary scalars. Segments are nonempty and keep
/// their scalars verbatim (no case folding, no script filtering).
std::vector<std::u32string> normalize(std::u32string_view text,
                                      const BoundarySet& boundaries = BoundarySet::defaults());

/// All length-n windows of one segment, in order. Throws ParameterError if n < 1.
std::vector<Gram> extract_ngrams(std::u32string_view segment, int n);

/// Parses one input line: an object with fields id, ts, text. `ts` is either
/// integer epoch seconds or an ISO-8601 string with offset. Throws RecordError.
Post parse_post(std::string_view record, std::size_t line = 0);

/// Serializes a post in the same line format parse_post reads (ts as integer).
std::string format_post(const Post& post);

} // namespace pointillist

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pointillist {

/// Hour index since the epoch: floor(ts / 3600).
using TimeBin = std::int64_t;

/// Calendar day number (days since 1970-01-01) in some local UTC offset.
using LocalDay = std::int64_t;

inline constexpr std::int64_t kSecondsPerBin = 3600;
inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr std::int64_t kBinsPerDay = 24;

/// Fixed offset from UTC, in seconds. Days are aligned to it.
struct UtcOffset {
    std::int32_t seconds = 8 * 3600;

    friend bool operator==(UtcOffset, UtcOffset) = default;
};

/// Inclusive range of hour bins.
struct BinRange {
    TimeBin first = 0;
    TimeBin last = 0;

    std::int64_t width() const noexcept { return last - first + 1; }
    bool contains(TimeBin b) const noexcept { return b >= first && b <= last; }
    friend bool operator==(const BinRange&, const BinRange&) = default;
};

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept
{
    std::int64_t q = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

/// Requires ts >= 0 (ParameterError otherwise).
TimeBin bin_of(std::int64_t ts);

/// Local day containing the start of `bin`.
LocalDay local_day_of_bin(TimeBin bin, UtcOffset tz) noexcept;
/// First hour bin whose start falls on `day`; each day owns exactly 24 bins.
TimeBin first_bin_of_day(LocalDay day, UtcOffset tz) noexcept;
BinRange bins_of_day(LocalDay day, UtcOffset tz) noexcept;
BinRange bins_of_days(LocalDay first, LocalDay last, UtcOffset tz) noexcept;
/// Local hour of day (0..23) at the start of `bin`.
int local_hour_of_bin(TimeBin bin, UtcOffset tz) noexcept;

/// "+08:00", "-0530", "Z". Throws ParameterError.
UtcOffset parse_utc_offset(std::string_view text);
std::string format_utc_offset(UtcOffset tz);

/// "YYYY-MM-DD" to a day number. Throws ParameterError.
LocalDay parse_date(std::string_view text);
std::string format_date(LocalDay day);

/// ISO-8601 date-time with a mandatory offset ("Z" or ±HH:MM / ±HHMM),
/// optional fractional seconds (truncated). Returns UTC epoch seconds.
/// Throws ParameterError.
std::int64_t parse_iso8601(std::string_view text);

/// UTC rendering "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601_utc(std::int64_t ts);

} // namespace pointillist

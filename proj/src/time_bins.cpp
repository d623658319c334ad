#include "pointillist/time_bins.hpp"

#include <chrono>
#include <cstdio>

#include "pointillist/errors.hpp"

namespace pointillist {

namespace {

namespace chr = std::chrono;

int parse_fixed(std::string_view text, std::size_t pos, std::size_t len, std::string_view what)
{
    if (pos + len > text.size()) throw ParameterError("truncated " + std::string(what));
    int value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        const char c = text[i];
        if (c < '0' || c > '9') throw ParameterError("bad digit in " + std::string(what));
        value = value * 10 + (c - '0');
    }
    return value;
}

LocalDay days_from_ymd(int y, int m, int d, std::string_view text)
{
    const chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                                  chr::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw ParameterError("invalid calendar date: " + std::string(text));
    return chr::sys_days{ymd}.time_since_epoch().count();
}

// Parses "YYYY-MM-DD" at the start of text.
LocalDay parse_date_prefix(std::string_view text)
{
    if (text.size() < 10 || text[4] != '-' || text[7] != '-')
        throw ParameterError("expected YYYY-MM-DD: " + std::string(text));
    const int y = parse_fixed(text, 0, 4, "year");
    const int m = parse_fixed(text, 5, 2, "month");
    const int d = parse_fixed(text, 8, 2, "day");
    return days_from_ymd(y, m, d, text.substr(0, 10));
}

} // namespace

TimeBin bin_of(std::int64_t ts)
{
    if (ts < 0) throw ParameterError("timestamp must be nonnegative");
    return ts / kSecondsPerBin;
}

LocalDay local_day_of_bin(TimeBin bin, UtcOffset tz) noexcept
{
    return floor_div(bin * kSecondsPerBin + tz.seconds, kSecondsPerDay);
}

TimeBin first_bin_of_day(LocalDay day, UtcOffset tz) noexcept
{
    // Smallest bin b with b*3600 + offset >= day*86400.
    return -floor_div(-(day * kSecondsPerDay - tz.seconds), kSecondsPerBin);
}

BinRange bins_of_day(LocalDay day, UtcOffset tz) noexcept
{
    const TimeBin first = first_bin_of_day(day, tz);
    return {first, first + kBinsPerDay - 1};
}

BinRange bins_of_days(LocalDay first, LocalDay last, UtcOffset tz) noexcept
{
    return {first_bin_of_day(first, tz), first_bin_of_day(last + 1, tz) - 1};
}

int local_hour_of_bin(TimeBin bin, UtcOffset tz) noexcept
{
    const std::int64_t local = bin * kSecondsPerBin + tz.seconds;
    return static_cast<int>(floor_div(local - floor_div(local, kSecondsPerDay) * kSecondsPerDay,
                                      kSecondsPerBin));
}

UtcOffset parse_utc_offset(std::string_view text)
{
    if (text == "Z" || text == "z") return UtcOffset{0};
    if (text.empty() || (text[0] != '+' && text[0] != '-'))
        throw ParameterError("expected UTC offset like +08:00: " + std::string(text));
    int hours = 0;
    int minutes = 0;
    if (text.size() == 6 && text[3] == ':') {
        hours = parse_fixed(text, 1, 2, "offset hours");
        minutes = parse_fixed(text, 4, 2, "offset minutes");
    } else if (text.size() == 5) {
        hours = parse_fixed(text, 1, 2, "offset hours");
        minutes = parse_fixed(text, 3, 2, "offset minutes");
    } else if (text.size() == 3) {
        hours = parse_fixed(text, 1, 2, "offset hours");
    } else {
        throw ParameterError("expected UTC offset like +08:00: " + std::string(text));
    }
    if (hours > 23 || minutes > 59) throw ParameterError("UTC offset out of range: " + std::string(text));
    const int seconds = hours * 3600 + minutes * 60;
    return UtcOffset{text[0] == '-' ? -seconds : seconds};
}

std::string format_utc_offset(UtcOffset tz)
{
    const int abs = tz.seconds < 0 ? -tz.seconds : tz.seconds;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%02d:%02d", tz.seconds < 0 ? '-' : '+', abs / 3600,
                  (abs % 3600) / 60);
    return buf;
}

LocalDay parse_date(std::string_view text)
{
    if (text.size() != 10) throw ParameterError("expected YYYY-MM-DD: " + std::string(text));
    return parse_date_prefix(text);
}

std::string format_date(LocalDay day)
{
    const chr::year_month_day ymd{chr::sys_days{chr::days{day}}};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::int64_t parse_iso8601(std::string_view text)
{
    const LocalDay day = parse_date_prefix(text);
    if (text.size() < 19 || (text[10] != 'T' && text[10] != 't') || text[13] != ':' ||
        text[16] != ':')
        throw ParameterError("expected YYYY-MM-DDTHH:MM:SS with offset: " + std::string(text));
    const int hh = parse_fixed(text, 11, 2, "hour");
    const int mm = parse_fixed(text, 14, 2, "minute");
    const int ss = parse_fixed(text, 17, 2, "second");
    if (hh > 23 || mm > 59 || ss > 60) throw ParameterError("time of day out of range: " + std::string(text));

    std::size_t pos = 19;
    if (pos < text.size() && (text[pos] == '.' || text[pos] == ',')) {
        ++pos;
        const std::size_t digits = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == digits) throw ParameterError("empty fractional seconds: " + std::string(text));
    }
    if (pos == text.size()) throw ParameterError("timestamp lacks a UTC offset: " + std::string(text));
    const UtcOffset offset = parse_utc_offset(text.substr(pos));

    return day * kSecondsPerDay + hh * 3600 + mm * 60 + ss - offset.seconds;
}

std::string format_iso8601_utc(std::int64_t ts)
{
    const LocalDay day = floor_div(ts, kSecondsPerDay);
    const std::int64_t sod = ts - day * kSecondsPerDay;
    char buf[16];
    std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(sod / 3600),
                  static_cast<int>((sod % 3600) / 60), static_cast<int>(sod % 60));
    return format_date(day) + buf;
}

} // namespace pointillist

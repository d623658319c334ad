#include "pointillist/records.hpp"

#include <istream>
#include <string>

#include <json.hpp>

#include "pointillist/errors.hpp"
#include "pointillist/unicode.hpp"

namespace pointillist {

using Json = nlohmann::ordered_json;

std::string stats_record(const StoreStats& stats)
{
    Json j;
    j["distinct_grams"] = stats.distinct_grams;
    j["total_occurrences"] = stats.total_occurrences;
    if (stats.bin_range)
        j["bin_range"] = {stats.bin_range->first, stats.bin_range->last};
    else
        j["bin_range"] = nullptr;
    return j.dump();
}

std::string trend_record(const TrendCandidate& c)
{
    Json j;
    j["gram"] = encode_utf8(c.gram);
    j["day"] = format_date(c.day);
    j["day_count"] = c.day_count;
    j["baseline"] = c.baseline;
    j["spike_score"] = c.spike_score;
    return j.dump();
}

std::string phrase_record(const PhraseCandidate& phrase, GramView seed, LocalDay center, BinRange window)
{
    Json j;
    j["phrase"] = encode_utf8(phrase.text);
    j["score"] = phrase.score;
    j["seed"] = encode_utf8(seed);
    Json w;
    w["center"] = format_date(center);
    w["start_bin"] = window.first;
    w["end_bin"] = window.last;
    w["start"] = format_iso8601_utc(window.first * kSecondsPerBin);
    w["end"] = format_iso8601_utc((window.last + 1) * kSecondsPerBin);
    j["window"] = std::move(w);
    j["trace"] = phrase.trace;
    return j.dump();
}

std::string link_record(const TrendLink& link, bool linked)
{
    Json j;
    j["seed_a"] = encode_utf8(link.a);
    j["seed_b"] = encode_utf8(link.b);
    j["similarity"] = link.similarity;
    j["linked"] = linked;
    return j.dump();
}

TrendCluster read_cluster(std::istream& in)
{
    using Kind = RecordError::Kind;
    TrendCluster cluster;
    bool have_seed = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw RecordError(Kind::Malformed, line_no, std::string("malformed phrase record: ") + e.what());
        }
        for (const char* field : {"phrase", "score", "seed", "window"})
            if (!j.is_object() || !j.contains(field))
                throw RecordError(Kind::MissingField, line_no, std::string("missing field ") + field);
        try {
            const Gram seed = decode_utf8(j["seed"].get<std::string>());
            const BinRange window{j["window"].at("start_bin").get<TimeBin>(),
                                  j["window"].at("end_bin").get<TimeBin>()};
            if (!have_seed) {
                cluster.seed = seed;
                cluster.window = window;
                have_seed = true;
            } else if (seed != cluster.seed) {
                throw RecordError(Kind::Malformed, line_no, "cluster file mixes seeds");
            }
            cluster.phrases.push_back({decode_utf8(j["phrase"].get<std::string>()),
                                       j["score"].get<double>(), j.value("trace", std::string{})});
        } catch (const nlohmann::json::exception& e) {
            throw RecordError(Kind::Malformed, line_no, std::string("bad phrase record: ") + e.what());
        } catch (const ParameterError& e) {
            throw RecordError(Kind::Malformed, line_no, e.what());
        }
    }
    if (!have_seed) throw RecordError(Kind::MissingField, 0, "cluster file has no phrase records");
    return cluster;
}

std::string csv_field(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace pointillist

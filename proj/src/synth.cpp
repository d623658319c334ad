#include "pointillist/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <set>

#include <json.hpp>

#include "pointillist/errors.hpp"
#include "pointillist/unicode.hpp"

namespace pointillist {

namespace {

using Rng = std::mt19937_64;

void require(bool ok, const std::string& message)
{
    if (!ok) throw ConfigError(message);
}

void check_planted_text(const std::u32string& text, const std::string& what)
{
    for (char32_t c : text)
        require(!is_segment_break(c, BoundarySet::defaults()),
                what + " contains whitespace or boundary punctuation");
}

void validate(const SynthConfig& c)
{
    require(c.n >= 1, "n must be >= 1");
    require(c.days >= 1, "days must be >= 1");
    require(c.posts_per_hour > 0.0, "posts_per_hour must be > 0");
    require(c.min_items >= 1 && c.max_items >= c.min_items, "items_per_post must satisfy 1 <= min <= max");
    const auto& v = c.vocabulary;
    require(v.size >= 1, "vocabulary size must be >= 1");
    require(v.min_len >= 1 && v.max_len >= v.min_len, "vocabulary word lengths must satisfy 1 <= min <= max");
    require(v.span >= 1, "vocabulary span must be >= 1");
    require(v.overlap >= 0.0 && v.overlap <= 1.0, "vocabulary overlap must be in [0, 1]");
    for (const auto& e : c.events) {
        require(e.phrase.size() >= static_cast<std::size_t>(c.n), "planted phrase shorter than n");
        require(e.burst_volume >= 1, "burst_volume must be >= 1");
        require(e.decay > 0.0 && e.decay <= 1.0, "decay must be in (0, 1]");
        check_planted_text(e.phrase, "planted phrase");
    }
    for (const auto& w : c.common_words) {
        require(!w.text.empty(), "common word is empty");
        require(w.post_share >= 0.0 && w.post_share <= 1.0, "post_share must be in [0, 1]");
        check_planted_text(w.text, "common word");
    }
}

struct Alphabet {
    std::vector<char32_t> background;
    std::vector<char32_t> planted;
};

Alphabet build_alphabet(const SynthConfig& c)
{
    std::set<char32_t> planted;
    for (const auto& e : c.events) planted.insert(e.phrase.begin(), e.phrase.end());
    for (const auto& w : c.common_words) planted.insert(w.text.begin(), w.text.end());

    Alphabet a;
    a.planted.assign(planted.begin(), planted.end());
    for (std::uint32_t i = 0; i < c.vocabulary.span; ++i) {
        const char32_t s = c.vocabulary.first_scalar + i;
        if (s > 0x10FFFF) break;
        if ((s >= 0xD800 && s <= 0xDFFF) || planted.contains(s) ||
            is_segment_break(s, BoundarySet::defaults()))
            continue;
        a.background.push_back(s);
    }
    require(!a.background.empty(), "background alphabet is empty");
    return a;
}

std::vector<std::u32string> build_vocabulary(const SynthConfig& c, const Alphabet& a, Rng& rng)
{
    const auto& v = c.vocabulary;
    std::uniform_int_distribution<int> len(v.min_len, v.max_len);
    std::uniform_int_distribution<std::size_t> bg(0, a.background.size() - 1);
    std::bernoulli_distribution from_planted(a.planted.empty() ? 0.0 : v.overlap);
    std::uniform_int_distribution<std::size_t> pl(0, a.planted.empty() ? 0 : a.planted.size() - 1);

    std::vector<std::u32string> words;
    words.reserve(static_cast<std::size_t>(v.size));
    for (int i = 0; i < v.size; ++i) {
        std::u32string w(static_cast<std::size_t>(len(rng)), U'\0');
        for (auto& ch : w) ch = from_planted(rng) ? a.planted[pl(rng)] : a.background[bg(rng)];
        words.push_back(std::move(w));
    }
    return words;
}

struct PendingPost {
    std::int64_t ts;
    std::vector<std::u32string> items;
};

} // namespace

double diurnal_rate(int hour_of_day, double base)
{
    if (hour_of_day < 0 || hour_of_day > 23) throw ParameterError("hour of day must be in 0..23");
    if (!(base > 0.0)) throw ParameterError("base rate must be > 0");
    return base * kDayShape[static_cast<std::size_t>(hour_of_day)];
}

SynthCorpus generate(const SynthConfig& config)
{
    validate(config);
    Rng rng(config.seed);
    const Alphabet alphabet = build_alphabet(config);
    const auto vocabulary = build_vocabulary(config, alphabet, rng);

    std::vector<double> zipf(vocabulary.size());
    for (std::size_t i = 0; i < zipf.size(); ++i) zipf[i] = 1.0 / static_cast<double>(i + 1);
    std::discrete_distribution<std::size_t> pick_word(zipf.begin(), zipf.end());
    std::discrete_distribution<int> pick_hour(kDayShape.begin(), kDayShape.end());
    std::uniform_int_distribution<int> pick_items(config.min_items, config.max_items);
    std::uniform_int_distribution<std::int64_t> pick_second(0, kSecondsPerBin - 1);

    SynthCorpus corpus;
    auto& ledger = corpus.ledger;
    ledger.n = config.n;
    ledger.tz = config.tz;
    ledger.events = config.events;
    ledger.event_daily_posts.resize(config.events.size());

    const LocalDay end_day = config.start_day + config.days;  // exclusive
    const auto n = static_cast<std::size_t>(config.n);

    auto background_items = [&](int count) {
        std::vector<std::u32string> items;
        for (int i = 0; i < count; ++i) items.push_back(vocabulary[pick_word(rng)]);
        return items;
    };
    auto insert_at_random = [&](std::vector<std::u32string>& items, const std::u32string& word) {
        std::uniform_int_distribution<std::size_t> pos(0, items.size());
        items.insert(items.begin() + static_cast<std::ptrdiff_t>(pos(rng)), word);
    };

    for (LocalDay day = config.start_day; day < end_day; ++day) {
        // Local hour assignments for today's planted-event posts.
        std::array<std::vector<std::size_t>, 24> event_posts_by_hour;
        for (std::size_t e = 0; e < config.events.size(); ++e) {
            const auto& ev = config.events[e];
            if (day < ev.burst_day) continue;
            const auto k = static_cast<double>(day - ev.burst_day);
            const auto volume = static_cast<std::uint32_t>(std::llround(ev.burst_volume * std::pow(ev.decay, k)));
            if (volume == 0) continue;
            ledger.event_daily_posts[e].resize(static_cast<std::size_t>(day - ev.burst_day) + 1, 0);
            ledger.event_daily_posts[e].back() = volume;
            for (std::uint32_t i = 0; i < volume; ++i)
                event_posts_by_hour[static_cast<std::size_t>(pick_hour(rng))].push_back(e);
        }

        const BinRange bins = bins_of_day(day, config.tz);
        for (TimeBin bin = bins.first; bin <= bins.last; ++bin) {
            const int hour = local_hour_of_bin(bin, config.tz);
            std::poisson_distribution<int> volume(diurnal_rate(hour, config.posts_per_hour));
            std::vector<PendingPost> pending;

            const int background = volume(rng);
            for (int p = 0; p < background; ++p) {
                auto items = background_items(pick_items(rng));
                for (const auto& cw : config.common_words)
                    if (std::bernoulli_distribution(cw.post_share)(rng)) insert_at_random(items, cw.text);
                pending.push_back({bin * kSecondsPerBin + pick_second(rng), std::move(items)});
            }
            for (std::size_t e : event_posts_by_hour[static_cast<std::size_t>(hour)]) {
                auto items = background_items(pick_items(rng) - 1);
                insert_at_random(items, config.events[e].phrase);
                pending.push_back({bin * kSecondsPerBin + pick_second(rng), std::move(items)});
            }

            std::stable_sort(pending.begin(), pending.end(),
                             [](const PendingPost& a, const PendingPost& b) { return a.ts < b.ts; });
            for (auto& p : pending) {
                Post post;
                post.ts = p.ts;
                for (std::size_t i = 0; i < p.items.size(); ++i) {
                    if (i) post.text.push_back(U' ');
                    post.text += p.items[i];
                    const auto& item = p.items[i];
                    if (item.size() < n) continue;
                    ledger.total_occurrences += item.size() - n + 1;
                    if (!config.record_counts) continue;
                    for (std::size_t j = 0; j + n <= item.size(); ++j) ++ledger.counts[item.substr(j, n)][bin];
                }
                char id[32];
                std::snprintf(id, sizeof id, "p%08zu", corpus.posts.size());
                post.id = id;
                corpus.posts.push_back(std::move(post));
            }
        }
    }
    return corpus;
}

SynthConfig parse_synth_config(std::string_view json_text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("synth config is not valid JSON: ") + e.what());
    }
    require(j.is_object(), "synth config must be an object");

    static const std::set<std::string> known = {"seed", "n", "start", "days", "tz", "posts_per_hour",
                                                "items_per_post", "vocabulary", "common_words", "events"};
    for (const auto& [key, _] : j.items()) require(known.contains(key), "unknown synth config key " + key);

    SynthConfig c;
    auto text_of = [](const nlohmann::json& v, const char* what) {
        require(v.is_string(), std::string(what) + " must be a string");
        try {
            return decode_utf8(v.get_ref<const std::string&>());
        } catch (const ParameterError& e) {
            throw ConfigError(std::string(what) + ": " + e.what());
        }
    };
    auto date_of = [](const nlohmann::json& v, const char* what) {
        require(v.is_string(), std::string(what) + " must be a YYYY-MM-DD string");
        try {
            return parse_date(v.get_ref<const std::string&>());
        } catch (const ParameterError& e) {
            throw ConfigError(std::string(what) + ": " + e.what());
        }
    };

    try {
        c.seed = j.value("seed", c.seed);
        c.n = j.value("n", c.n);
        c.days = j.value("days", c.days);
        c.posts_per_hour = j.value("posts_per_hour", c.posts_per_hour);
        if (j.contains("start")) c.start_day = date_of(j["start"], "start");
        if (j.contains("tz")) {
            require(j["tz"].is_string(), "tz must be a string");
            c.tz = parse_utc_offset(j["tz"].get<std::string>());
        }
        if (j.contains("items_per_post")) {
            const auto& ipp = j["items_per_post"];
            require(ipp.is_array() && ipp.size() == 2, "items_per_post must be [min, max]");
            c.min_items = ipp[0].get<int>();
            c.max_items = ipp[1].get<int>();
        }
        if (j.contains("vocabulary")) {
            const auto& v = j["vocabulary"];
            require(v.is_object(), "vocabulary must be an object");
            c.vocabulary.size = v.value("size", c.vocabulary.size);
            c.vocabulary.min_len = v.value("min_len", c.vocabulary.min_len);
            c.vocabulary.max_len = v.value("max_len", c.vocabulary.max_len);
            c.vocabulary.first_scalar = v.value("first_scalar", static_cast<std::uint32_t>(c.vocabulary.first_scalar));
            c.vocabulary.span = v.value("span", c.vocabulary.span);
            c.vocabulary.overlap = v.value("overlap", c.vocabulary.overlap);
        }
        for (const auto& w : j.value("common_words", nlohmann::json::array())) {
            require(w.is_object() && w.contains("text"), "common word needs a text field");
            c.common_words.push_back({text_of(w["text"], "common word text"), w.value("post_share", 0.1)});
        }
        for (const auto& e : j.value("events", nlohmann::json::array())) {
            require(e.is_object() && e.contains("phrase") && e.contains("burst_day"),
                    "event needs phrase and burst_day");
            PlantedEvent ev;
            ev.phrase = text_of(e["phrase"], "event phrase");
            ev.burst_day = date_of(e["burst_day"], "event burst_day");
            ev.burst_volume = e.value("burst_volume", 1u);
            ev.decay = e.value("decay", 1.0);
            c.events.push_back(std::move(ev));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("synth config has a field of the wrong type: ") + e.what());
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    validate(c);
    return c;
}

void write_corpus(std::ostream& out, const std::vector<Post>& posts)
{
    for (const auto& p : posts) out << format_post(p) << '\n';
}

void write_ledger(std::ostream& out, const GroundTruthLedger& ledger)
{
    nlohmann::ordered_json header;
    header["type"] = "header";
    header["n"] = ledger.n;
    header["tz"] = format_utc_offset(ledger.tz);
    header["day_shape_version"] = kDayShapeVersion;
    header["total_occurrences"] = ledger.total_occurrences;
    out << header.dump() << '\n';

    for (std::size_t e = 0; e < ledger.events.size(); ++e) {
        const auto& ev = ledger.events[e];
        nlohmann::ordered_json rec;
        rec["type"] = "event";
        rec["phrase"] = encode_utf8(ev.phrase);
        rec["burst_day"] = format_date(ev.burst_day);
        rec["burst_volume"] = ev.burst_volume;
        rec["decay"] = ev.decay;
        rec["daily_posts"] = ledger.event_daily_posts[e];
        out << rec.dump() << '\n';
    }
    for (const auto& [gram, bins] : ledger.counts) {
        const std::string g = encode_utf8(gram);
        for (const auto& [bin, count] : bins) {
            nlohmann::ordered_json rec;
            rec["type"] = "count";
            rec["gram"] = g;
            rec["bin"] = bin;
            rec["count"] = count;
            out << rec.dump() << '\n';
        }
    }
}

} // namespace pointillist

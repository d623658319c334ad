#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pointillist/errors.hpp"
#include "pointillist/gram_store.hpp"
#include "pointillist/synth.hpp"
#include "test_support.hpp"

using namespace pointillist;
using testing_support::post;
using testing_support::store_of;
using testing_support::u32;

namespace {

std::vector<Gram> grams(std::initializer_list<const char*> items)
{
    std::vector<Gram> out;
    for (const char* s : items) out.push_back(u32(s));
    return out;
}

SynthConfig small_corpus_config(std::uint64_t seed)
{
    SynthConfig c;
    c.seed = seed;
    c.start_day = parse_date("2011-07-20");
    c.days = 20;
    c.posts_per_hour = 6;
    c.vocabulary.size = 150;
    c.events.push_back({u32("万为开拓团拍电视"), parse_date("2011-08-04"), 60, 0.5});
    return c;
}

} // namespace

TEST(Ingest, SameHourCountsAccumulate)
{
    const GramStore s = store_of({"abc", "xx abc"}, 7200);
    EXPECT_EQ(s.series(U"abc", {2, 2}), (std::vector<std::uint64_t>{2}));
    const auto stats = s.stats();
    EXPECT_EQ(stats.distinct_grams, 1u);
    EXPECT_EQ(stats.total_occurrences, 2u);
    EXPECT_EQ(stats.bin_range, (BinRange{2, 2}));
}

TEST(Ingest, RepeatedGramWithinPost)
{
    const GramStore s = store_of({"aaaa"});
    EXPECT_EQ(s.series(U"aaa", {0, 0}), (std::vector<std::uint64_t>{2}));
}

TEST(Ingest, EmptyCorpus)
{
    const GramStore s = ingest({}, {});
    EXPECT_EQ(s.stats(), (StoreStats{0, 0, std::nullopt}));
}

TEST(Ingest, RejectsBadOrders)
{
    IngestOptions opts;
    opts.orders = {};
    EXPECT_THROW(ingest_serial({}, opts), ParameterError);
    opts.orders = {0};
    EXPECT_THROW(ingest({}, opts), ParameterError);
}

TEST(Ingest, MultipleOrders)
{
    IngestOptions opts;
    opts.orders = {3, 2};
    const GramStore s = store_of({"abcd"}, 0, opts);
    EXPECT_EQ(s.order(), 3);
    EXPECT_EQ(s.stats().total_occurrences, 2u + 3u);
    EXPECT_EQ(s.grams_with_prefix(U"bc"), grams({"bcd"}));
    EXPECT_EQ(s.series(U"cd", {0, 0}), (std::vector<std::uint64_t>{1}));
}

TEST(Ingest, NfcPrePass)
{
    // "e" + combining acute composes to U+00E9 under NFC.
    std::vector<Post> posts{{"a", 0, U"éxy"}};
    IngestOptions opts;
    EXPECT_EQ(ingest_serial(posts, opts).stats().total_occurrences, 2u);
    opts.nfc = true;
    const GramStore s = ingest_serial(posts, opts);
    EXPECT_EQ(s.stats().total_occurrences, 1u);
    EXPECT_TRUE(s.find(U"éxy").has_value());
}

TEST(Ingest, ParallelMatchesSerial)
{
    const auto corpus = generate(small_corpus_config(9));
    const GramStore serial = ingest_serial(corpus.posts);
    for (int threads : {1, 2, 3, 8}) {
        IngestOptions opts;
        opts.threads = threads;
        EXPECT_TRUE(ingest(corpus.posts, opts) == serial) << threads << " threads";
    }
}

TEST(Ingest, CountConservationAgainstRecount)
{
    const auto corpus = generate(small_corpus_config(21));
    const GramStore s = ingest(corpus.posts);
    std::uint64_t recount = 0;
    for (const auto& p : corpus.posts)
        recount += oracle::count_grams_single_pass(p.text, 3, [](char32_t c) {
            return is_segment_break(c, BoundarySet::defaults());
        });
    EXPECT_EQ(s.stats().total_occurrences, recount);
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < s.size(); ++i) sum += s.total_at(i);
    EXPECT_EQ(sum, recount);
}

TEST(Series, UnknownGramIsZeros)
{
    const GramStore s = store_of({"abc"});
    EXPECT_EQ(s.series(U"zzz", {10, 14}), (std::vector<std::uint64_t>(5, 0)));
    EXPECT_THROW(s.series(U"abc", {5, 4}), ParameterError);
}

TEST(Series, MatchesGeneratorLedger)
{
    const auto corpus = generate(small_corpus_config(4));
    const GramStore s = ingest(corpus.posts);
    ASSERT_EQ(s.stats().total_occurrences, corpus.ledger.total_occurrences);
    const BinRange all = *s.stats().bin_range;
    const auto planted = s.series(u32("拓团拍"), all);
    std::uint64_t from_ledger = 0;
    for (const auto& [bin, count] : corpus.ledger.counts.at(u32("拓团拍"))) {
        EXPECT_EQ(planted[static_cast<std::size_t>(bin - all.first)], count);
        from_ledger += count;
    }
    std::uint64_t from_series = 0;
    for (auto c : planted) from_series += c;
    EXPECT_EQ(from_series, from_ledger);
}

TEST(Series, ReadOnlyRepeatable)
{
    const GramStore s = store_of({"abcabc", "bca"}, 3600 * 5);
    EXPECT_EQ(s.series(U"bca", {0, 10}), s.series(U"bca", {0, 10}));
}

TEST(DailyCounts, OneDayOfHourlyCounts)
{
    const UtcOffset tz{8 * 3600};
    const LocalDay day = parse_date("2011-08-04");
    std::vector<Post> posts;
    const BinRange bins = bins_of_day(day, tz);
    for (TimeBin b = bins.first; b <= bins.last; ++b)
        posts.push_back({"h" + std::to_string(b), b * 3600 + 10, U"abc"});
    const GramStore s = ingest_serial(posts, {});
    EXPECT_EQ(s.daily_counts(U"abc", day, day, tz), (std::vector<std::uint64_t>{24}));
    EXPECT_EQ(s.daily_counts(U"abc", day - 1, day + 1, tz), (std::vector<std::uint64_t>{0, 24, 0}));
    // The same hours straddle two UTC days.
    EXPECT_EQ(s.daily_counts(U"abc", day - 1, day, UtcOffset{0}), (std::vector<std::uint64_t>{8, 16}));
}

TEST(DailyCounts, EmptyStoreIsZeros)
{
    const GramStore s;
    EXPECT_EQ(s.daily_counts(U"abc", 100, 104, UtcOffset{}), (std::vector<std::uint64_t>(5, 0)));
    EXPECT_THROW(s.daily_counts(U"abc", 5, 4, UtcOffset{}), ParameterError);
}

TEST(DailyCounts, MatchesEventLedger)
{
    const auto cfg = small_corpus_config(33);
    const auto corpus = generate(cfg);
    const GramStore s = ingest(corpus.posts);
    const LocalDay burst = cfg.events[0].burst_day;
    const auto& daily = corpus.ledger.event_daily_posts[0];
    const auto counts = s.daily_counts(u32("团拍电"), burst, burst + static_cast<LocalDay>(daily.size()) - 1, s.tz());
    ASSERT_EQ(counts.size(), daily.size());
    for (std::size_t i = 0; i < daily.size(); ++i) EXPECT_EQ(counts[i], daily[i]);
}

TEST(PrefixSuffix, ToyStore)
{
    const GramStore s = store_of({"abc", "abd", "xyz", "xbc"});
    EXPECT_EQ(s.grams_with_prefix(U"ab"), grams({"abc", "abd"}));
    EXPECT_TRUE(s.grams_with_prefix(U"qq").empty());
    EXPECT_EQ(s.grams_with_suffix(U"bc"), grams({"abc", "xbc"}));
    EXPECT_TRUE(s.grams_with_suffix(U"qq").empty());
    EXPECT_THROW(s.grams_with_prefix(U"a"), ParameterError);
    EXPECT_THROW(s.grams_with_suffix(U"abc"), ParameterError);
}

TEST(PrefixSuffix, EventChain)
{
    const GramStore s = store_of({"万为开拓团"});
    EXPECT_EQ(s.grams_with_prefix(u32("为开")), grams({"为开拓"}));
    EXPECT_EQ(s.grams_with_suffix(u32("为开")), grams({"万为开"}));
}

TEST(PrefixSuffix, PrefixesPartitionVocabulary)
{
    const auto corpus = generate(small_corpus_config(2));
    const GramStore s = ingest(corpus.posts);
    std::set<Gram> prefixes;
    for (std::size_t i = 0; i < s.size(); ++i) prefixes.insert(s.gram_at(i).substr(0, 2));
    std::vector<Gram> union_prefix;
    std::set<Gram> suffixes;
    for (std::size_t i = 0; i < s.size(); ++i) suffixes.insert(s.gram_at(i).substr(1));
    for (const auto& p : prefixes) {
        auto part = s.grams_with_prefix(p);
        union_prefix.insert(union_prefix.end(), part.begin(), part.end());
    }
    std::vector<Gram> union_suffix;
    for (const auto& x : suffixes) {
        auto part = s.grams_with_suffix(x);
        union_suffix.insert(union_suffix.end(), part.begin(), part.end());
    }
    std::vector<Gram> all;
    for (std::size_t i = 0; i < s.size(); ++i) all.push_back(s.gram_at(i));
    // Prefix groups arrive in canonical order, so concatenation is the vocabulary.
    EXPECT_EQ(union_prefix, all);
    std::sort(union_suffix.begin(), union_suffix.end());
    EXPECT_EQ(union_suffix, all);
}

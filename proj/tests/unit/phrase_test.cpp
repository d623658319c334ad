#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "pointillist/errors.hpp"
#include "pointillist/phrase.hpp"
#include "pointillist/synth.hpp"
#include "test_support.hpp"

using namespace pointillist;
using testing_support::u32;
using testing_support::u8;

namespace {

const UtcOffset kCst{8 * 3600};

const PhraseCandidate* find_phrase(const std::vector<PhraseCandidate>& ps, const std::string& text)
{
    const auto t = u32(text);
    for (const auto& p : ps)
        if (p.text == t) return &p;
    return nullptr;
}

SynthConfig replay_config(std::uint64_t seed)
{
    SynthConfig c;
    c.seed = seed;
    c.start_day = parse_date("2011-07-15");
    c.days = 30;
    c.posts_per_hour = 10;
    c.vocabulary.size = 300;
    const LocalDay day = parse_date("2011-08-04");
    c.events = {{u32("万为开拓团拍电视"), day, 120, 0.4},
                {u32("万为开拓团纪念碑被砸"), day, 90, 0.4},
                {u32("万为开拓团纪念碑被泼红漆"), day, 70, 0.4}};
    return c;
}

} // namespace

TEST(Overlaps, Examples)
{
    EXPECT_TRUE(overlaps(U"abc", U"bcd"));
    EXPECT_FALSE(overlaps(U"abc", U"abc"));
    EXPECT_TRUE(overlaps(U"aaa", U"aaa"));
    EXPECT_TRUE(overlaps(u32("万为开"), u32("为开拓")));
    EXPECT_FALSE(overlaps(u32("为开拓"), u32("万为开")));
    EXPECT_THROW(overlaps(U"abc", U"ab"), ParameterError);
    EXPECT_THROW(overlaps(U"", U""), ParameterError);
}

TEST(ConnectionWindow, PlusMinusFiveDays)
{
    const ConnectionWindow w{parse_date("2011-08-04"), 5, 5};
    const BinRange r = w.resolve(kCst);
    EXPECT_EQ(r.width(), 264);
    EXPECT_EQ(r.first, first_bin_of_day(parse_date("2011-07-30"), kCst));
    EXPECT_THROW((ConnectionWindow{0, -1, 5}.resolve(kCst)), ParameterError);
}

TEST(NeighborEdges, CoBurstingChainAgainstDirectOracle)
{
    // abcd bursts; abc also appears alone at a low noise level.
    std::mt19937 rng(4);
    std::poisson_distribution<int> noise(0.3);
    const BinRange window{1000, 1047};
    std::vector<int> chain(48), alone(48);
    std::vector<Post> posts;
    for (int h = 0; h < 48; ++h) {
        chain[h] = (h >= 20 && h < 30) ? 30 - h + 5 : 0;
        alone[h] = noise(rng);
        const std::int64_t ts = (window.first + h) * 3600;
        for (int k = 0; k < chain[h]; ++k) posts.push_back({"c" + std::to_string(posts.size()), ts, U"abcd"});
        for (int k = 0; k < alone[h]; ++k) posts.push_back({"a" + std::to_string(posts.size()), ts, U"abc"});
    }
    const GramStore s = ingest_serial(posts);
    std::vector<double> seed(48), right(48);
    for (int h = 0; h < 48; ++h) {
        seed[h] = chain[h] + alone[h];
        right[h] = chain[h];
    }
    const auto seed_series = to_real(s.series(U"abc", window));
    ASSERT_EQ(seed_series, seed);

    const auto edges = neighbor_edges(s, U"abc", seed_series, window, Side::Right, 0.6, 3);
    ASSERT_EQ(edges.size(), 1u);
    EXPECT_EQ(edges[0].left, U"abc");
    EXPECT_EQ(edges[0].right, U"bcd");
    EXPECT_NEAR(edges[0].r, oracle::pearson_direct(right, seed), 1e-12);
    EXPECT_GT(edges[0].r, 0.95);

    EXPECT_TRUE(neighbor_edges(s, U"abc", seed_series, window, Side::Left, 0.6, 3).empty());
    EXPECT_TRUE(neighbor_edges(s, U"bcd", seed_series, window, Side::Right, 0.6, 3).empty());
    const auto left = neighbor_edges(s, U"bcd", seed_series, window, Side::Left, 0.6, 3);
    ASSERT_EQ(left.size(), 1u);
    EXPECT_EQ(left[0].left, U"abc");
    EXPECT_EQ(left[0].r, 1.0);
}

TEST(NeighborEdges, FlatSeriesExcludedWhenRMinPositive)
{
    const BinRange window{0, 23};
    std::vector<Post> posts;
    for (TimeBin b = 0; b < 24; ++b) posts.push_back({"f" + std::to_string(b), b * 3600, U"abce"});
    for (int k = 0; k < 10; ++k) posts.push_back({"s" + std::to_string(k), 5 * 3600, U"abc"});
    const GramStore s = ingest_serial(posts);
    const auto seed = to_real(s.series(U"abc", window));
    EXPECT_TRUE(neighbor_edges(s, U"abc", seed, window, Side::Right, 0.1, 3).empty());
    const auto loose = neighbor_edges(s, U"abc", seed, window, Side::Right, -0.5, 3);
    ASSERT_EQ(loose.size(), 1u);
    EXPECT_EQ(loose[0].r, 0.0);
    // Window totals below min_count also drop the candidate.
    EXPECT_TRUE(neighbor_edges(s, U"abc", seed, window, Side::Right, -0.5, 25).empty());
}

TEST(NeighborEdges, SortedByCorrelationThenGram)
{
    const BinRange window{0, 9};
    std::vector<Post> posts;
    auto add = [&](const char32_t* text, TimeBin bin, int times) {
        for (int k = 0; k < times; ++k) posts.push_back({"p" + std::to_string(posts.size()), bin * 3600, text});
    };
    add(U"abz", 2, 5);
    add(U"aby", 2, 5);
    add(U"abx", 2, 4);
    add(U"abx", 3, 1);
    const GramStore s = ingest_serial(posts);
    std::vector<double> seed(10, 0.0);
    seed[2] = 1.0;
    const auto edges = neighbor_edges(s, U"zab", seed, window, Side::Right, 0.0, 1);
    ASSERT_EQ(edges.size(), 3u);
    EXPECT_EQ(edges[0].right, U"aby");
    EXPECT_EQ(edges[1].right, U"abz");
    EXPECT_EQ(edges[2].right, U"abx");
    EXPECT_THROW(neighbor_edges(s, U"zab", std::vector<double>(3), window, Side::Right, 0.0, 1), ParameterError);
}

TEST(Connect, SeedWithoutNeighbours)
{
    const GramStore s = testing_support::store_of({"abc", "xyz"}, 3600);
    const auto out = connect(s, U"abc", {0, 47});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].text, U"abc");
    EXPECT_EQ(out[0].score, 1.0);
}

TEST(Connect, Errors)
{
    const GramStore s = testing_support::store_of({"abcd"});
    EXPECT_THROW(connect(s, U"zzz", {0, 47}), NotFoundError);
    EXPECT_THROW(connect(s, U"abc", {0, 0}), ParameterError);
    ConnectParams p;
    p.beam = 0;
    EXPECT_THROW(connect(s, U"abc", {0, 47}, p), ParameterError);
    p = {};
    p.max_len = 2;
    EXPECT_THROW(connect(s, U"abc", {0, 47}, p), ParameterError);
}

TEST(Connect, ReplayedStatueEventKeepsBothBranches)
{
    const auto cfg = replay_config(804);
    const GramStore s = ingest(generate(cfg).posts);
    const BinRange window = ConnectionWindow{parse_date("2011-08-04"), 5, 5}.resolve(s.tz());
    const auto out = connect(s, u32("万为开"), window);

    EXPECT_NE(find_phrase(out, "万为开拓团"), nullptr);
    EXPECT_NE(find_phrase(out, "万为开拓团拍电视"), nullptr);
    EXPECT_NE(find_phrase(out, "万为开拓团纪念碑被砸"), nullptr);
    EXPECT_NE(find_phrase(out, "万为开拓团纪念碑被泼红漆"), nullptr);
    EXPECT_LE(out.size(), 8u * 16u);
}

TEST(Connect, PlantedPhraseIsTopResult)
{
    SynthConfig c;
    c.seed = 77;
    c.start_day = parse_date("2011-07-20");
    c.days = 25;
    c.posts_per_hour = 10;
    const std::string planted = "开拓团纪念碑被砸";
    c.events = {{u32(planted), parse_date("2011-08-04"), 150, 0.5}};
    const GramStore s = ingest(generate(c).posts);
    const BinRange window = ConnectionWindow{parse_date("2011-08-04"), 5, 5}.resolve(s.tz());
    const auto out = connect(s, u32("开拓团"), window);
    ASSERT_FALSE(out.empty());
    EXPECT_EQ(u8(out[0].text), planted);
    EXPECT_GE(out[0].score, 0.8);
}

TEST(Connect, ChainSoundnessMonotoneScoresDeterminism)
{
    const auto cfg = replay_config(31);
    const GramStore s = ingest(generate(cfg).posts);
    const BinRange window = ConnectionWindow{parse_date("2011-08-04"), 5, 5}.resolve(s.tz());
    ConnectParams p;
    p.r_min = 0.3;
    const auto out = connect(s, u32("开拓团"), window, p);
    EXPECT_EQ(out, connect(s, u32("开拓团"), window, p));
    EXPECT_TRUE(std::is_sorted(out.begin(), out.end(), phrase_order));

    std::map<std::u32string, double> score_of;
    for (const auto& ph : out) score_of[ph.text] = ph.score;
    for (const auto& ph : out) {
        ASSERT_GE(ph.text.size(), 3u);
        EXPECT_GE(ph.score, -1.0);
        EXPECT_LE(ph.score, 1.0);
        const auto grams = extract_ngrams(ph.text, 3);
        for (std::size_t i = 0; i < grams.size(); ++i) {
            if (i) EXPECT_TRUE(overlaps(grams[i - 1], grams[i]));
            EXPECT_GT(s.window_total(grams[i], window), 0u) << u8(grams[i]);
        }
        EXPECT_EQ(ph.trace.size(), ph.text.size() - 3);
        if (ph.trace.empty()) {
            EXPECT_EQ(ph.score, 1.0);
            continue;
        }
        // Undo the last extension to get the beam parent.
        const std::u32string parent = ph.trace.back() == 'R' ? ph.text.substr(0, ph.text.size() - 1)
                                                             : ph.text.substr(1);
        if (score_of.contains(parent)) EXPECT_LE(ph.score, score_of[parent]);
    }
}

TEST(Connect, MeanAggregationNeverBelowMin)
{
    const auto cfg = replay_config(8);
    const GramStore s = ingest(generate(cfg).posts);
    const BinRange window = ConnectionWindow{parse_date("2011-08-04"), 5, 5}.resolve(s.tz());
    ConnectParams p;
    const auto by_min = connect(s, u32("万为开"), window, p);
    p.aggregation = ScoreAggregation::Mean;
    const auto by_mean = connect(s, u32("万为开"), window, p);
    std::map<std::u32string, double> mean_of;
    for (const auto& ph : by_mean) mean_of[ph.text] = ph.score;
    for (const auto& ph : by_min)
        if (mean_of.contains(ph.text)) EXPECT_GE(mean_of[ph.text], ph.score);
}

TEST(Connect, RepeatLimitStopsCycles)
{
    std::vector<Post> posts;
    for (int h = 0; h < 6; ++h)
        for (int k = 0; k <= h; ++k) posts.push_back({"p" + std::to_string(posts.size()), h * 3600, U"aaaaaaaa"});
    const GramStore s = ingest_serial(posts);
    const auto out = connect(s, U"aaa", {0, 5});
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].text, U"aaaa");
    EXPECT_EQ(out[1].text, U"aaa");
}

TEST(Connect, BeamCapsSurvivors)
{
    // Many parallel continuations of one seed.
    std::vector<Post> posts;
    const std::u32string tails = U"defghijklmnop";
    for (int h = 0; h < 4; ++h)
        for (char32_t t : tails)
            for (int k = 0; k <= h; ++k)
                posts.push_back({"p" + std::to_string(posts.size()), h * 3600, std::u32string(U"abc") + t});
    const GramStore s = ingest_serial(posts);
    ConnectParams p;
    p.beam = 3;
    p.max_len = 4;
    const auto out = connect(s, U"abc", {0, 3}, p);
    EXPECT_EQ(out.size(), 4u);
    EXPECT_EQ(out[0].text, U"abcd");
    EXPECT_EQ(out.back().text, U"abc");
}

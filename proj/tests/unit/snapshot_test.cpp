#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "pointillist/errors.hpp"
#include "pointillist/snapshot.hpp"
#include "pointillist/synth.hpp"
#include "test_support.hpp"

using namespace pointillist;
using testing_support::store_of;
using testing_support::u32;

namespace {

std::string bytes_of(const GramStore& s)
{
    std::ostringstream out(std::ios::binary);
    write_snapshot(s, out);
    return out.str();
}

GramStore from_bytes(const std::string& b, bool allow_partial = false)
{
    std::istringstream in(b, std::ios::binary);
    return read_snapshot(in, allow_partial);
}

SnapshotError::Kind failure_kind(const std::string& b)
{
    try {
        from_bytes(b);
    } catch (const SnapshotError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "load unexpectedly succeeded";
    return SnapshotError::Kind::Io;
}

std::uint32_t le32(const std::string& b, std::size_t at)
{
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[at + i]);
    return v;
}

} // namespace

TEST(Snapshot, EmptyStoreRoundTrip)
{
    const GramStore loaded = from_bytes(bytes_of(GramStore{}));
    EXPECT_EQ(loaded.stats(), (StoreStats{0, 0, std::nullopt}));
}

TEST(Snapshot, HeaderLayout)
{
    IngestOptions opts;
    opts.tz = UtcOffset{-5 * 3600};
    const std::string b = bytes_of(store_of({"abcd"}, 0, opts));
    ASSERT_GE(b.size(), kSnapshotHeaderSize);
    EXPECT_EQ(b.substr(0, 4), "PNTL");
    EXPECT_EQ(le32(b, 4), kSnapshotVersion);
    EXPECT_EQ(le32(b, 8), 3u);
    EXPECT_EQ(static_cast<std::int32_t>(le32(b, 12)), -5 * 3600);
    EXPECT_EQ(le32(b, 16), 0u);
    std::uint64_t len = 0;
    for (int i = 7; i >= 0; --i) len = (len << 8) | static_cast<unsigned char>(b[24 + i]);
    EXPECT_EQ(len, b.size() - kSnapshotHeaderSize);
}

TEST(Snapshot, LargeStoreRoundTripPreservesSeries)
{
    SynthConfig cfg;
    cfg.seed = 99;
    cfg.days = 14;
    cfg.posts_per_hour = 30;  // ~10k posts
    cfg.start_day = parse_date("2011-07-25");
    cfg.events.push_back({u32("万为开拓团拍电视"), parse_date("2011-08-01"), 100, 0.5});
    const auto corpus = generate(cfg);
    ASSERT_GT(corpus.posts.size(), 9000u);
    IngestOptions opts;
    opts.orders = {3, 2};
    const GramStore original = ingest(corpus.posts, opts);
    const GramStore loaded = from_bytes(bytes_of(original));

    EXPECT_TRUE(loaded == original);
    EXPECT_EQ(loaded.stats(), original.stats());
    std::mt19937 rng(1);
    std::uniform_int_distribution<std::size_t> pick(0, original.size() - 1);
    const BinRange all = *original.stats().bin_range;
    for (int i = 0; i < 100; ++i) {
        const Gram& g = original.gram_at(pick(rng));
        EXPECT_EQ(loaded.series(g, all), original.series(g, all));
    }
    EXPECT_EQ(loaded.grams_with_suffix(u32("开拓")), original.grams_with_suffix(u32("开拓")));
}

TEST(Snapshot, DistinctLoadErrors)
{
    const std::string good = bytes_of(store_of({"abcdef", "xyz"}));

    std::string bad_crc = good;
    bad_crc.back() ^= 0x01;
    EXPECT_EQ(failure_kind(bad_crc), SnapshotError::Kind::ChecksumMismatch);

    std::string bad_magic = good;
    bad_magic[0] = 'X';
    EXPECT_EQ(failure_kind(bad_magic), SnapshotError::Kind::BadMagic);

    std::string bad_version = good;
    bad_version[4] = 9;
    EXPECT_EQ(failure_kind(bad_version), SnapshotError::Kind::VersionMismatch);

    EXPECT_EQ(failure_kind(good.substr(0, good.size() - 3)), SnapshotError::Kind::Truncated);
    EXPECT_EQ(failure_kind(good.substr(0, 20)), SnapshotError::Kind::Truncated);
}

TEST(Snapshot, PartialFlagGatesLoading)
{
    GramStore s = store_of({"abcd"});
    s.mark_partial();
    const std::string b = bytes_of(s);
    EXPECT_EQ(failure_kind(b), SnapshotError::Kind::Partial);
    const GramStore loaded = from_bytes(b, true);
    EXPECT_TRUE(loaded.partial());
    EXPECT_EQ(loaded.stats().total_occurrences, 2u);
}

TEST(Snapshot, FileRoundTrip)
{
    const auto path = std::filesystem::temp_directory_path() / "pointillist_snapshot_test.pntl";
    const GramStore s = store_of({"中华人民共和国"}, 1312387200);
    save_snapshot(s, path);
    EXPECT_TRUE(load_snapshot(path) == s);
    std::filesystem::remove(path);
    try {
        load_snapshot(path);
        FAIL();
    } catch (const SnapshotError& e) {
        EXPECT_EQ(e.kind(), SnapshotError::Kind::Io);
    }
}

TEST(Snapshot, TextExport)
{
    std::vector<Post> posts{{"a", 0, U"abcd"}, {"b", 7200, U"abc"}};
    std::ostringstream out;
    export_text(ingest_serial(posts), out);
    EXPECT_EQ(out.str(), "abc\t0\t1\nabc\t2\t1\nbcd\t0\t1\n");
}

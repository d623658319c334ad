#include "pointillist/snapshot.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <zlib.h>

#include "pointillist/errors.hpp"
#include "pointillist/unicode.hpp"

namespace pointillist {

namespace {

constexpr std::array<char, 4> kMagic = {'P', 'N', 'T', 'L'};
constexpr std::uint32_t kFlagPartial = 1u;

class ByteWriter {
public:
    void u32(std::uint32_t v)
    {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void u64(std::uint64_t v)
    {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void bytes(const char* p, std::size_t n) { buf_.append(p, n); }

    std::string& str() noexcept { return buf_; }

private:
    std::string buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::string_view data) : data_(data) {}

    std::uint32_t u32() { return static_cast<std::uint32_t>(take(4)); }
    std::uint64_t u64() { return take(8); }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    bool done() const noexcept { return pos_ == data_.size(); }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }

private:
    std::uint64_t take(int width)
    {
        if (remaining() < static_cast<std::size_t>(width))
            throw SnapshotError(SnapshotError::Kind::Corrupt, "snapshot payload ends mid-record");
        std::uint64_t v = 0;
        for (int i = 0; i < width; ++i)
            v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
        pos_ += static_cast<std::size_t>(width);
        return v;
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

std::uint32_t crc_of(std::string_view data)
{
    return static_cast<std::uint32_t>(
        crc32_z(0L, reinterpret_cast<const Bytef*>(data.data()), data.size()));
}

[[noreturn]] void corrupt(const std::string& what)
{
    throw SnapshotError(SnapshotError::Kind::Corrupt, "corrupt snapshot: " + what);
}

} // namespace

class SnapshotCodec {
public:
    static std::string payload(const GramStore& s)
    {
        ByteWriter w;
        w.u32(static_cast<std::uint32_t>(s.orders_.size()));
        for (int n : s.orders_) w.u32(static_cast<std::uint32_t>(n));
        w.u64(s.grams_.size());
        for (const auto& g : s.grams_) {
            w.u32(static_cast<std::uint32_t>(g.size()));
            for (char32_t c : g) w.u32(static_cast<std::uint32_t>(c));
        }
        for (std::uint32_t i : s.by_suffix_) w.u32(i);
        for (std::size_t i = 0; i < s.grams_.size(); ++i) {
            const auto runs = s.runs_at(i);
            w.u64(s.totals_[i]);
            w.u32(static_cast<std::uint32_t>(runs.size()));
            for (const auto& r : runs) {
                w.i64(r.bin);
                w.u32(r.count);
            }
        }
        return std::move(w.str());
    }

    static GramStore decode(std::string_view payload, std::uint32_t header_order, UtcOffset tz,
                            bool partial)
    {
        ByteReader r(payload);
        GramStore s;
        s.tz_ = tz;
        s.partial_ = partial;

        const std::uint32_t order_count = r.u32();
        if (order_count == 0 || order_count > 64) corrupt("bad order count");
        s.orders_.clear();
        for (std::uint32_t i = 0; i < order_count; ++i) {
            const std::uint32_t n = r.u32();
            if (n == 0 || n > 1024) corrupt("bad gram order");
            s.orders_.push_back(static_cast<int>(n));
        }
        if (static_cast<std::uint32_t>(s.orders_.front()) != header_order)
            corrupt("header order disagrees with payload");

        const std::uint64_t count = r.u64();
        if (count > r.remaining() / 4) corrupt("gram count exceeds payload");
        s.grams_.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            const std::uint32_t len = r.u32();
            if (len == 0 || len > r.remaining() / 4) corrupt("bad gram length");
            Gram g(len, U'\0');
            for (auto& c : g) {
                const std::uint32_t v = r.u32();
                if (v > 0x10FFFF) corrupt("scalar out of range");
                c = static_cast<char32_t>(v);
            }
            if (!s.grams_.empty() && !(s.grams_.back() < g)) corrupt("canonical index out of order");
            s.grams_.push_back(std::move(g));
        }

        s.by_suffix_.resize(count);
        std::vector<bool> seen(count, false);
        for (auto& i : s.by_suffix_) {
            i = r.u32();
            if (i >= count || seen[i]) corrupt("reversed index is not a permutation");
            seen[i] = true;
        }

        s.run_offsets_.assign(1, 0);
        s.totals_.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            const std::uint64_t total = r.u64();
            const std::uint32_t runs = r.u32();
            std::uint64_t sum = 0;
            for (std::uint32_t k = 0; k < runs; ++k) {
                BinCount bc{r.i64(), r.u32()};
                if (bc.count == 0) corrupt("zero count run");
                if (k > 0 && s.runs_.back().bin >= bc.bin) corrupt("runs out of order");
                sum += bc.count;
                s.runs_.push_back(bc);
            }
            if (sum != total) corrupt("gram total disagrees with its runs");
            s.totals_.push_back(total);
            s.run_offsets_.push_back(s.runs_.size());
        }
        if (!r.done()) corrupt("trailing bytes");

        const auto stored_suffix = s.by_suffix_;
        s.rebuild_indexes();
        if (stored_suffix != s.by_suffix_) corrupt("reversed index out of order");
        return s;
    }
};

void write_snapshot(const GramStore& store, std::ostream& out)
{
    const std::string payload = SnapshotCodec::payload(store);
    ByteWriter h;
    h.bytes(kMagic.data(), kMagic.size());
    h.u32(kSnapshotVersion);
    h.u32(static_cast<std::uint32_t>(store.order()));
    h.i32(store.tz().seconds);
    h.u32(store.partial() ? kFlagPartial : 0u);
    h.u32(crc_of(payload));
    h.u64(payload.size());
    out.write(h.str().data(), static_cast<std::streamsize>(h.str().size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw SnapshotError(SnapshotError::Kind::Io, "snapshot write failed");
}

void save_snapshot(const GramStore& store, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError(SnapshotError::Kind::Io, "cannot create " + path.string());
    write_snapshot(store, out);
    out.close();
    if (!out) throw SnapshotError(SnapshotError::Kind::Io, "cannot write " + path.string());
}

GramStore read_snapshot(std::istream& in, bool allow_partial)
{
    using Kind = SnapshotError::Kind;
    std::string header(kSnapshotHeaderSize, '\0');
    in.read(header.data(), kSnapshotHeaderSize);
    const auto got = static_cast<std::size_t>(in.gcount());
    if (got >= 4 && std::memcmp(header.data(), kMagic.data(), 4) != 0)
        throw SnapshotError(Kind::BadMagic, "not a snapshot (bad magic)");
    if (got < kSnapshotHeaderSize) throw SnapshotError(Kind::Truncated, "snapshot header truncated");

    ByteReader h(std::string_view(header).substr(4));
    const std::uint32_t version = h.u32();
    const std::uint32_t order = h.u32();
    const UtcOffset tz{h.i32()};
    const std::uint32_t flags = h.u32();
    const std::uint32_t crc = h.u32();
    const std::uint64_t length = h.u64();
    if (version != kSnapshotVersion)
        throw SnapshotError(Kind::VersionMismatch, "snapshot version " + std::to_string(version) +
                                                       ", expected " + std::to_string(kSnapshotVersion));

    std::string payload;
    constexpr std::size_t kChunk = 1 << 20;
    while (payload.size() < length) {
        const std::size_t want = std::min<std::uint64_t>(kChunk, length - payload.size());
        const std::size_t old = payload.size();
        payload.resize(old + want);
        in.read(payload.data() + old, static_cast<std::streamsize>(want));
        const auto n = static_cast<std::size_t>(in.gcount());
        payload.resize(old + n);
        if (n < want) throw SnapshotError(Kind::Truncated, "snapshot payload truncated");
    }
    if (crc_of(payload) != crc) throw SnapshotError(Kind::ChecksumMismatch, "snapshot checksum mismatch");

    const bool partial = (flags & kFlagPartial) != 0;
    if (partial && !allow_partial)
        throw SnapshotError(Kind::Partial, "snapshot is from an incomplete ingest (use --allow-partial)");
    return SnapshotCodec::decode(payload, order, tz, partial);
}

GramStore load_snapshot(const std::filesystem::path& path, bool allow_partial)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError(SnapshotError::Kind::Io, "cannot open " + path.string());
    return read_snapshot(in, allow_partial);
}

void export_text(const GramStore& store, std::ostream& out)
{
    for (std::size_t i = 0; i < store.size(); ++i) {
        const std::string gram = encode_utf8(store.gram_at(i));
        for (const auto& r : store.runs_at(i)) out << gram << '\t' << r.bin << '\t' << r.count << '\n';
    }
}

} // namespace pointillist

#include "pointillist/text.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pointillist/errors.hpp"
#include "pointillist/unicode.hpp"

namespace pointillist {

namespace {

std::vector<char32_t> default_boundary_scalars()
{
    std::vector<char32_t> out;
    auto range = [&out](char32_t lo, char32_t hi) {
        for (char32_t c = lo; c <= hi; ++c) out.push_back(c);
    };
    // ASCII punctuation and symbols; digits and letters stay.
    range(0x21, 0x2F);
    range(0x3A, 0x40);
    range(0x5B, 0x60);
    range(0x7B, 0x7E);
    // Latin-1 punctuation: ¡ « · » ¿
    for (char32_t c : {0xA1, 0xAB, 0xB7, 0xBB, 0xBF}) out.push_back(c);
    // General punctuation: dashes, quotes, ellipsis, primes, etc.
    range(0x2010, 0x2027);
    range(0x2030, 0x205E);
    // CJK symbols and punctuation: 、。〃 〈〉《》「」『』【】 〔〕〖〗〘〙〚〛〜〝〞〟
    range(0x3001, 0x3003);
    range(0x3008, 0x3011);
    range(0x3014, 0x301F);
    out.push_back(0x30FB);  // ・
    // Full-width and half-width forms: ！＂＃…／ ：；＜＝＞？＠ ［＼］＾＿｀ ｛｜｝～｟｠｡｢｣､･
    range(0xFF01, 0xFF0F);
    range(0xFF1A, 0xFF20);
    range(0xFF3B, 0xFF40);
    range(0xFF5B, 0xFF65);
    return out;
}

const nlohmann::json& require_field(const nlohmann::json& obj, const char* name, std::size_t line)
{
    auto it = obj.find(name);
    if (it == obj.end() || it->is_null())
        throw RecordError(RecordError::Kind::MissingField, line, std::string("missing field ") + name);
    return *it;
}

} // namespace

BoundarySet::BoundarySet(std::vector<char32_t> scalars) : scalars_(std::move(scalars))
{
    std::sort(scalars_.begin(), scalars_.end());
    scalars_.erase(std::unique(scalars_.begin(), scalars_.end()), scalars_.end());
}

const BoundarySet& BoundarySet::defaults()
{
    static const BoundarySet set(default_boundary_scalars());
    return set;
}

BoundarySet BoundarySet::parse(std::string_view utf8)
{
    std::vector<char32_t> scalars;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= utf8.size()) {
        std::size_t end = utf8.find('\n', pos);
        if (end == std::string_view::npos) end = utf8.size();
        std::string_view line = utf8.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        std::u32string decoded;
        try {
            decoded = decode_utf8(line);
        } catch (const ParameterError& e) {
            throw ParameterError("boundary file line " + std::to_string(line_no) + ": " + e.what());
        }
        if (decoded.size() != 1)
            throw ParameterError("boundary file line " + std::to_string(line_no) +
                                 ": expected exactly one scalar");
        scalars.push_back(decoded.front());
    }
    return BoundarySet(std::move(scalars));
}

BoundarySet BoundarySet::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open boundary file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool BoundarySet::contains(char32_t c) const noexcept
{
    return std::binary_search(scalars_.begin(), scalars_.end(), c);
}

bool is_segment_break(char32_t c, const BoundarySet& boundaries) noexcept
{
    return is_unicode_whitespace(c) || boundaries.contains(c);
}

std::vector<std::u32string> normalize(std::u32string_view text, const BoundarySet& boundaries)
{
    std::vector<std::u32string> segments;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || is_segment_break(text[i], boundaries)) {
            if (i > start) segments.emplace_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return segments;
}

std::vector<Gram> extract_ngrams(std::u32string_view segment, int n)
{
    if (n < 1) throw ParameterError("gram order must be >= 1");
    const auto order = static_cast<std::size_t>(n);
    std::vector<Gram> grams;
    if (segment.size() < order) return grams;
    grams.reserve(segment.size() - order + 1);
    for (std::size_t i = 0; i + order <= segment.size(); ++i) grams.emplace_back(segment.substr(i, order));
    return grams;
}

Post parse_post(std::string_view record, std::size_t line)
{
    using Kind = RecordError::Kind;
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(record);
    } catch (const nlohmann::json::parse_error& e) {
        throw RecordError(Kind::Malformed, line, std::string("malformed record: ") + e.what());
    }
    if (!obj.is_object()) throw RecordError(Kind::Malformed, line, "record is not an object");

    Post post;
    const auto& id = require_field(obj, "id", line);
    const auto& ts = require_field(obj, "ts", line);
    const auto& text = require_field(obj, "text", line);

    if (!id.is_string() || id.get_ref<const std::string&>().empty())
        throw RecordError(Kind::Malformed, line, "field id must be a nonempty string");
    post.id = id.get<std::string>();

    if (ts.is_number_unsigned()) {
        post.ts = static_cast<std::int64_t>(ts.get<std::uint64_t>());
    } else if (ts.is_number_integer()) {
        post.ts = ts.get<std::int64_t>();
    } else if (ts.is_string()) {
        try {
            post.ts = parse_iso8601(ts.get_ref<const std::string&>());
        } catch (const ParameterError& e) {
            throw RecordError(Kind::Malformed, line, std::string("bad ts: ") + e.what());
        }
    } else {
        throw RecordError(Kind::Malformed, line, "field ts must be an integer or ISO-8601 string");
    }
    if (post.ts < 0) throw RecordError(Kind::Range, line, "ts is negative");

    if (!text.is_string()) throw RecordError(Kind::Malformed, line, "field text must be a string");
    try {
        post.text = decode_utf8(text.get_ref<const std::string&>());
    } catch (const ParameterError& e) {
        throw RecordError(Kind::Malformed, line, e.what());
    }
    return post;
}

std::string format_post(const Post& post)
{
    nlohmann::ordered_json obj;
    obj["id"] = post.id;
    obj["ts"] = post.ts;
    obj["text"] = encode_utf8(post.text);
    return obj.dump(-1, ' ', false);
}

} // namespace pointillist

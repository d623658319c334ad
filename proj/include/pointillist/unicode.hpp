#pragma once

#include <string>
#include <string_view>

namespace pointillist {

/// Decodes UTF-8 into scalar values. Throws ParameterError on ill-formed input
/// (overlongs, surrogates, truncated sequences, values above U+10FFFF).
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view scalars);

/// Unicode White_Space property.
bool is_unicode_whitespace(char32_t c) noexcept;

/// Canonical composition (NFC), backed by ICU.
std::u32string to_nfc(std::u32string_view text);

} // namespace pointillist

#pragma once

#include <string>
#include <string_view>

namespace claimrank::uni {

/// True if `s` is well-formed UTF-8 (no overlongs, surrogates, or values
/// beyond U+10FFFF).
bool valid_utf8(std::string_view s);

/// Decodes UTF-8 to code points. Invalid sequences become U+FFFD, one
/// replacement per rejected byte.
std::u32string decode_utf8(std::string_view s);

std::string encode_utf8(std::u32string_view s);

/// Word characters: Unicode letters and numbers, plus underscore.
bool is_word_char(char32_t cp);

/// Unicode whitespace.
bool is_space(char32_t cp);

/// Per-code-point lowercase mapping (full mappings, so the result may be
/// longer than the input).
std::u32string to_lower(std::u32string_view s);

/// Canonical composition (NFC).
std::u32string nfc(std::u32string_view s);

}  // namespace claimrank::uni

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace deid {

/// UTF-8 -> Unicode scalar values. Throws ParseError on malformed input.
std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);

std::uint64_t fnv1a64(std::string_view s, std::uint64_t basis = 14695981039346656037ULL);

// ASCII-only character classes; every non-ASCII scalar counts as a letter.
inline bool is_space(char32_t c) { return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' || c == 0xA0; }
inline bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
inline bool is_upper(char32_t c) { return c >= U'A' && c <= U'Z'; }
inline bool is_lower(char32_t c) { return c >= U'a' && c <= U'z'; }
inline bool is_letter(char32_t c) { return is_upper(c) || is_lower(c) || c > 0x7F; }
inline bool is_punct(char32_t c) { return c < 0x80 && c > U' ' && !is_digit(c) && !is_upper(c) && !is_lower(c) && c != 0x7F; }

std::string ascii_lower(std::string_view s);

}  // namespace deid

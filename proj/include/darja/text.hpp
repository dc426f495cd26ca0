#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace darja {

inline constexpr char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(ascii_lower(c));
    return out;
}

inline constexpr bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline constexpr bool is_ascii_letter(char c) { return c >= 'a' && c <= 'z'; }

inline constexpr bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

// The character class a stem may use. Digits are legitimate letters here:
// 3, 7 and 9 stand for consonants that have no Latin equivalent.
inline constexpr bool is_stem_char(char c) {
    return is_ascii_letter(c) || is_ascii_digit(c) || c == '\'';
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

// Byte offset of the first invalid UTF-8 sequence, or nullopt when the whole
// buffer is well formed. Rejects overlong encodings, surrogates and
// code points above U+10FFFF.
inline std::optional<std::size_t> find_invalid_utf8(std::string_view s) {
    const auto* p = reinterpret_cast<const unsigned char*>(s.data());
    std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char b = p[i];
        if (b < 0x80) {
            ++i;
            continue;
        }
        std::size_t extra;
        unsigned long cp;
        unsigned long min_cp;
        if ((b & 0xE0u) == 0xC0u) {
            extra = 1;
            cp = b & 0x1Fu;
            min_cp = 0x80;
        } else if ((b & 0xF0u) == 0xE0u) {
            extra = 2;
            cp = b & 0x0Fu;
            min_cp = 0x800;
        } else if ((b & 0xF8u) == 0xF0u) {
            extra = 3;
            cp = b & 0x07u;
            min_cp = 0x10000;
        } else {
            return i;
        }
        if (i + extra >= n) return i;
        for (std::size_t k = 1; k <= extra; ++k) {
            if ((p[i + k] & 0xC0u) != 0x80u) return i;
            cp = (cp << 6) | (p[i + k] & 0x3Fu);
        }
        if (cp < min_cp || cp > 0x10FFFFul || (cp >= 0xD800ul && cp <= 0xDFFFul)) return i;
        i += extra + 1;
    }
    return std::nullopt;
}

// Number of bytes in the UTF-8 sequence starting at s[pos]; assumes valid input.
inline std::size_t utf8_seq_len(std::string_view s, std::size_t pos) {
    unsigned char b = static_cast<unsigned char>(s[pos]);
    if (b < 0x80) return 1;
    if ((b & 0xE0u) == 0xC0u) return 2;
    if ((b & 0xF0u) == 0xE0u) return 3;
    return 4;
}

}  // namespace darja

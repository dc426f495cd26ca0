#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "text.hpp"

namespace darja {

// One line of corpus input. message_id is the zero-based line index.
struct RawMessage {
    std::size_t message_id = 0;
    std::string text;
};

// A tokenized word with its normalization candidates, tried in order by the
// analyzer. candidates[0] is the lowercased surface when exaggerated=false.
struct Token {
    std::size_t message_id = 0;
    std::size_t token_index = 0;
    std::string surface;
    std::vector<std::string> candidates;
    bool exaggerated = false;
};

namespace detail {

// Strips leading/trailing code points outside [a-z0-9']. Interior characters
// (apostrophes, digits, stray accents) are left alone. Works on whole UTF-8
// sequences so a stripped edge never cuts a multibyte character in half.
inline std::string strip_edges(std::string_view s) {
    std::size_t b = 0;
    while (b < s.size()) {
        if (is_stem_char(s[b])) break;
        b += utf8_seq_len(s, b);
    }
    std::size_t e = s.size();
    while (e > b) {
        std::size_t last = e - 1;
        while (last > b && (static_cast<unsigned char>(s[last]) & 0xC0u) == 0x80u) --last;
        if (is_stem_char(s[last])) break;
        e = last;
    }
    return std::string(s.substr(b, e - b));
}

inline bool has_ascii_letter(std::string_view s) {
    for (char c : s) {
        if (is_ascii_letter(c)) return true;
    }
    return false;
}

}  // namespace detail

// Whitespace split, lowercase, strip edge punctuation. Fragments left with no
// letter at all (pure punctuation, pure digits) are dropped; token_index
// numbers the kept tokens in reading order.
inline std::vector<Token> tokenize_message(const RawMessage& msg) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::string& text = msg.text;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_ascii_space(text[i])) ++i;
        if (i == start) continue;
        std::string frag = to_lower(std::string_view(text).substr(start, i - start));
        frag = detail::strip_edges(frag);
        if (frag.empty() || !detail::has_ascii_letter(frag)) continue;
        Token t;
        t.message_id = msg.message_id;
        t.token_index = tokens.size();
        t.surface = frag;
        t.candidates = {frag};
        tokens.push_back(std::move(t));
    }
    return tokens;
}

namespace detail {

// Rewrites every run of 3+ identical bytes to length `keep`.
inline std::string collapse_runs(std::string_view s, std::size_t keep) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        std::size_t run = j - i;
        std::size_t n = (run >= 3) ? keep : run;
        out.append(n, s[i]);
        i = j;
    }
    return out;
}

}  // namespace detail

// Marks character runs of length >= 3 as exaggeration and proposes two
// normalizations: runs cut to two, then runs cut to one. Runs of two stay
// untouched in both ("bezzzzzaf" -> bezzaf, bezaf). Tokens without long runs
// pass through with their surface as sole candidate.
inline Token collapse_exaggeration(Token token) {
    const std::string& base = token.candidates.empty() ? token.surface : token.candidates[0];
    bool has_long_run = false;
    std::size_t i = 0;
    while (i < base.size()) {
        std::size_t j = i;
        while (j < base.size() && base[j] == base[i]) ++j;
        if (j - i >= 3) {
            has_long_run = true;
            break;
        }
        i = j;
    }
    if (!has_long_run) {
        token.exaggerated = false;
        token.candidates = {base};
        return token;
    }
    token.exaggerated = true;
    std::string two = detail::collapse_runs(base, 2);
    std::string one = detail::collapse_runs(base, 1);
    token.candidates = {two};
    if (one != two) token.candidates.push_back(one);
    return token;
}

inline std::vector<Token> normalize_message(const RawMessage& msg) {
    std::vector<Token> tokens = tokenize_message(msg);
    for (auto& t : tokens) t = collapse_exaggeration(std::move(t));
    return tokens;
}

}  // namespace darja

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace darja::csv {

// Minimal RFC-4180 style record handling: double-quoted fields, "" escapes
// inside quotes, no embedded record separators. Enough for the lexicon and
// label table formats; not a general CSV engine.

inline std::vector<std::string> split_record(std::string_view line, std::string_view source,
                                             std::size_t line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    std::size_t i = 0;
    bool field_started_quoted = false;
    while (i < line.size()) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"' && cur.empty() && !field_started_quoted) {
            in_quotes = true;
            field_started_quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
            field_started_quoted = false;
        } else {
            cur.push_back(c);
        }
        ++i;
    }
    if (in_quotes) {
        throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                 ": unterminated quoted field");
    }
    fields.push_back(cur);
    return fields;
}

inline std::string escape_field(std::string_view f) {
    bool needs_quotes = false;
    for (char c : f) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return std::string(f);
    std::string out;
    out.reserve(f.size() + 2);
    out.push_back('"');
    for (char c : f) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string join_record(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape_field(fields[i]);
    }
    return out;
}

}  // namespace darja::csv

#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "csv.hpp"
#include "morphology.hpp"
#include "normalizer.hpp"
#include "text.hpp"

namespace darja {

// Reads a corpus file: UTF-8, one message per line, zero-based line index as
// message_id. Blank lines stay in as empty messages so ids line up with the
// file. Invalid UTF-8 is a hard error naming the byte offset.
inline std::vector<RawMessage> ingest_corpus(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    if (auto bad = find_invalid_utf8(content))
        throw std::runtime_error(path + ": invalid UTF-8 at byte offset " + std::to_string(*bad));

    std::vector<RawMessage> messages;
    std::size_t start = 0;
    while (start <= content.size()) {
        auto nl = content.find('\n', start);
        if (nl == std::string::npos) {
            if (start < content.size())
                messages.push_back({messages.size(), content.substr(start)});
            break;
        }
        std::string line = content.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        messages.push_back({messages.size(), std::move(line)});
        start = nl + 1;
    }
    return messages;
}

// Frequencies of normalized terms: each token contributes its first
// normalization candidate once.
struct TermFrequencyModel {
    std::map<std::string, std::size_t> counts;
    std::size_t total_tokens = 0;

    // (term, count) rows sorted by count descending, term ascending
    std::vector<std::pair<std::string, std::size_t>> sorted_terms() const {
        std::vector<std::pair<std::string, std::size_t>> rows(counts.begin(), counts.end());
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        return rows;
    }
};

inline TermFrequencyModel build_term_frequency_model(const std::vector<RawMessage>& messages) {
    TermFrequencyModel model;
    for (const auto& msg : messages) {
        for (const auto& token : normalize_message(msg)) {
            ++model.counts[token.candidates.front()];
            ++model.total_tokens;
        }
    }
    return model;
}

inline constexpr std::string_view kFrequencyHeader = "term,count";

inline void write_frequency_csv(const TermFrequencyModel& model, std::ostream& out) {
    out << kFrequencyHeader << '\n';
    for (const auto& [term, count] : model.sorted_terms())
        out << csv::join_record({term, std::to_string(count)}) << '\n';
}

// One labeled token: the ranked top reading (if any) plus how many readings
// the token had in total. Unrecognized tokens keep candidate_count == 0.
struct LabelRow {
    Token token;
    std::optional<Analysis> top;
    std::size_t candidate_count = 0;
};

// All rows of an analyzed corpus in (message_id, token_index) order. Every
// token lands in exactly one group: its top reading's part of speech, or
// unrecognized.
struct LabelTable {
    std::vector<LabelRow> rows;

    std::vector<const LabelRow*> group(Pos pos) const {
        std::vector<const LabelRow*> sel;
        for (const auto& row : rows) {
            if (row.top && row.top->pos == pos) sel.push_back(&row);
        }
        return sel;
    }

    std::vector<const LabelRow*> unrecognized() const {
        std::vector<const LabelRow*> sel;
        for (const auto& row : rows) {
            if (!row.top) sel.push_back(&row);
        }
        return sel;
    }
};

inline LabelTable analyze_corpus(const std::vector<RawMessage>& messages,
                                 const VariantIndex& index, const MorphAutomaton& automaton) {
    LabelTable table;
    for (const auto& msg : messages) {
        for (auto& token : normalize_message(msg)) {
            LabelRow row;
            std::vector<Analysis> analyses = analyze_token(token, index, automaton);
            row.candidate_count = analyses.size();
            if (!analyses.empty()) row.top = std::move(analyses.front());
            row.token = std::move(token);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

inline constexpr std::string_view kLabelHeader =
    "message_id,token_index,surface,normalized,exaggerated,pos,stem,canonical_stem,gloss_fr,"
    "subject_prefix,plural_suffix,cod,coi,possessive,feminine,negation,mood,candidate_count";

inline void write_label_rows(const std::vector<const LabelRow*>& rows, std::ostream& out) {
    out << kLabelHeader << '\n';
    auto opt = [](const std::optional<std::string>& o) { return o ? *o : std::string(); };
    for (const LabelRow* row : rows) {
        const Token& t = row->token;
        std::vector<std::string> fields;
        fields.push_back(std::to_string(t.message_id));
        fields.push_back(std::to_string(t.token_index));
        fields.push_back(t.surface);
        if (row->top) {
            const Analysis& an = *row->top;
            fields.push_back(an.normalized);
            fields.push_back(t.exaggerated ? "true" : "false");
            fields.push_back(to_string(an.pos));
            fields.push_back(an.stem);
            fields.push_back(an.canonical_stem);
            fields.push_back(an.gloss_fr);
            fields.push_back(opt(an.subject_prefix));
            fields.push_back(opt(an.plural_suffix));
            fields.push_back(opt(an.cod));
            fields.push_back(opt(an.coi));
            fields.push_back(opt(an.possessive));
            fields.push_back(an.feminine ? "true" : "false");
            fields.push_back(an.negation ? "true" : "false");
            fields.push_back(to_string(an.mood));
        } else {
            fields.push_back(t.candidates.front());
            fields.push_back(t.exaggerated ? "true" : "false");
            for (int i = 0; i < 12; ++i) fields.emplace_back();  // pos through mood
        }
        fields.push_back(std::to_string(row->candidate_count));
        out << csv::join_record(fields) << '\n';
    }
}

// Writes verbs.csv, nouns.csv, adjectives.csv, particles.csv and
// unrecognized.csv into out_dir (created if missing). Deterministic: equal
// inputs give byte-identical files. Returns the paths written.
inline std::vector<std::filesystem::path> emit_label_tables(const LabelTable& table,
                                                            const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " +
                                 ec.message());

    const std::vector<std::pair<std::string, std::vector<const LabelRow*>>> groups = {
        {"verbs.csv", table.group(Pos::verb)},
        {"nouns.csv", table.group(Pos::noun)},
        {"adjectives.csv", table.group(Pos::adjective)},
        {"particles.csv", table.group(Pos::particle)},
        {"unrecognized.csv", table.unrecognized()},
    };

    std::vector<std::filesystem::path> written;
    for (const auto& [name, rows] : groups) {
        std::filesystem::path path = out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        write_label_rows(rows, out);
        if (!out) throw std::runtime_error("write failed for " + path.string());
        written.push_back(path);
    }
    return written;
}

}  // namespace darja

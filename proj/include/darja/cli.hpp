#pragma once

#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "lexicon.hpp"
#include "morphology.hpp"

namespace darja {

// Everything a run needs. Paths are validated before any processing; output
// files land under out_dir. Diagnostics go to the error stream only, so data
// files and the summary lines on stdout never interleave with them.
struct RunConfig {
    std::string lexicon_path;
    std::string rules_path;  // empty: built-in rule set
    std::string corpus_path;
    std::string out_dir;
    std::size_t variant_cap = 64;
    bool short_stem_vowel_expansion = false;
    bool noun_plural = false;
    int verbosity = 0;
    std::string automaton_dump_path;  // analyze only; empty: no dump
};

namespace detail {

inline void require_readable(const std::string& path, const char* what) {
    if (path.empty()) throw std::runtime_error(std::string("missing ") + what + " path");
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw std::runtime_error(std::string("cannot open ") + what + " file: " + path);
}

inline RuleSet load_rules(const RunConfig& cfg) {
    if (cfg.rules_path.empty()) return default_rule_set();
    return parse_rule_file(cfg.rules_path);
}

inline VariantIndex load_index(const RunConfig& cfg) {
    std::vector<LexiconEntry> entries = parse_lexicon_file(cfg.lexicon_path);
    RuleSet rules = load_rules(cfg);
    ExpandOptions opt;
    opt.cap = cfg.variant_cap;
    opt.short_stem_vowel_expansion = cfg.short_stem_vowel_expansion;
    return build_variant_index(std::move(entries), rules, opt);
}

inline std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
    if (cfg.out_dir.empty()) throw std::runtime_error("missing output directory path");
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir.string() + ": " +
                                 ec.message());
    return dir;
}

}  // namespace detail

// expand: write the full variant listing of the lexicon as CSV.
inline int cmd_expand(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        detail::require_readable(cfg.lexicon_path, "lexicon");
        if (!cfg.rules_path.empty()) detail::require_readable(cfg.rules_path, "rules");
        std::filesystem::path dir = detail::prepare_out_dir(cfg);
        VariantIndex index = detail::load_index(cfg);

        std::filesystem::path csv_path = dir / "expanded_lexicon.csv";
        std::ofstream csv_out(csv_path, std::ios::binary);
        if (!csv_out) throw std::runtime_error("cannot write " + csv_path.string());
        write_expanded_lexicon(index, csv_out);
        if (!csv_out) throw std::runtime_error("write failed for " + csv_path.string());

        out << "entries: " << index.entries.size() << '\n';
        out << "variants: " << index.total_variants() << '\n';
        out << "truncated: " << index.truncated_entries() << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

// freq: term frequency CSV over the corpus.
inline int cmd_freq(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        detail::require_readable(cfg.corpus_path, "corpus");
        std::filesystem::path dir = detail::prepare_out_dir(cfg);

        std::vector<RawMessage> messages = ingest_corpus(cfg.corpus_path);
        TermFrequencyModel model = build_term_frequency_model(messages);

        std::filesystem::path csv_path = dir / "frequencies.csv";
        std::ofstream csv_out(csv_path, std::ios::binary);
        if (!csv_out) throw std::runtime_error("cannot write " + csv_path.string());
        write_frequency_csv(model, csv_out);
        if (!csv_out) throw std::runtime_error("write failed for " + csv_path.string());

        out << "messages: " << messages.size() << '\n';
        out << "tokens: " << model.total_tokens << '\n';
        out << "terms: " << model.counts.size() << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

// analyze: label every corpus token and emit the per-group tables.
inline int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        detail::require_readable(cfg.lexicon_path, "lexicon");
        if (!cfg.rules_path.empty()) detail::require_readable(cfg.rules_path, "rules");
        detail::require_readable(cfg.corpus_path, "corpus");
        std::filesystem::path dir = detail::prepare_out_dir(cfg);

        VariantIndex index = detail::load_index(cfg);
        MorphAutomaton automaton = build_automaton(AffixInventory::defaults(cfg.noun_plural));
        if (!cfg.automaton_dump_path.empty()) {
            std::ofstream dump(cfg.automaton_dump_path, std::ios::binary);
            if (!dump)
                throw std::runtime_error("cannot write " + cfg.automaton_dump_path);
            automaton.dump(dump);
        }

        std::vector<RawMessage> messages = ingest_corpus(cfg.corpus_path);
        LabelTable table = analyze_corpus(messages, index, automaton);
        emit_label_tables(table, dir);

        if (cfg.verbosity > 0) {
            for (const auto& row : table.rows) {
                out << row.token.message_id << ':' << row.token.token_index << ' '
                    << row.token.surface << " -> ";
                if (row.top)
                    out << to_string(row.top->pos) << ' ' << row.top->canonical_stem;
                else
                    out << "unrecognized";
                out << " (" << row.candidate_count << " readings)\n";
                if (cfg.verbosity > 1 && row.top) {
                    auto opt = [](const std::optional<std::string>& o) {
                        return o ? *o : std::string("-");
                    };
                    out << "  stem=" << row.top->stem << " prefix=" << opt(row.top->subject_prefix)
                        << " suffix=" << opt(row.top->plural_suffix)
                        << " cod=" << opt(row.top->cod) << " coi=" << opt(row.top->coi)
                        << " poss=" << opt(row.top->possessive)
                        << " fem=" << (row.top->feminine ? "true" : "false")
                        << " neg=" << (row.top->negation ? "true" : "false") << '\n';
                }
            }
        }

        out << "verbs: " << table.group(Pos::verb).size() << '\n';
        out << "nouns: " << table.group(Pos::noun).size() << '\n';
        out << "adjectives: " << table.group(Pos::adjective).size() << '\n';
        out << "particles: " << table.group(Pos::particle).size() << '\n';
        out << "unrecognized: " << table.unrecognized().size() << '\n';
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace darja

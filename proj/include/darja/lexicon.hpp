#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "csv.hpp"
#include "text.hpp"

namespace darja {

enum class Pos { verb, noun, adjective, particle };

enum class Polarity { positive, negative, neutral, unspecified };

inline const char* to_string(Pos p) {
    switch (p) {
        case Pos::verb: return "verb";
        case Pos::noun: return "noun";
        case Pos::adjective: return "adjective";
        case Pos::particle: return "particle";
    }
    return "?";
}

inline std::optional<Pos> parse_pos(std::string_view s) {
    if (s == "verb") return Pos::verb;
    if (s == "noun") return Pos::noun;
    if (s == "adjective") return Pos::adjective;
    if (s == "particle") return Pos::particle;
    return std::nullopt;
}

inline const char* to_string(Polarity p) {
    switch (p) {
        case Polarity::positive: return "positive";
        case Polarity::negative: return "negative";
        case Polarity::neutral: return "neutral";
        case Polarity::unspecified: return "";
    }
    return "";
}

inline std::optional<Polarity> parse_polarity(std::string_view s) {
    if (s.empty()) return Polarity::unspecified;
    if (s == "positive") return Polarity::positive;
    if (s == "negative") return Polarity::negative;
    if (s == "neutral") return Polarity::neutral;
    return std::nullopt;
}

// One dictionary entry. The stem is the bare citation form: no affixes, all
// lowercase, drawn from [a-z0-9'] (digits 3/7/9 act as consonants).
// Irregular entries are memorised surface forms (auxiliary conjugations and
// similar); they never combine with affixes.
struct LexiconEntry {
    std::string stem;
    Pos pos = Pos::particle;
    std::string gloss_fr;
    Polarity polarity = Polarity::unspecified;
    bool irregular = false;
};

// A substitution class: graphemes users write interchangeably for the same
// sound (q/k/9, h/7, ch/sh, ...). Order is meaningful: it fixes the
// enumeration order of expanded variants. A disabled rule still contributes
// its multigraphs to segmentation but offers no substitutions.
struct PhonoRule {
    std::string class_id;
    std::vector<std::string> variants;
    bool enabled = true;
};

// Rules plus "stable" multigraphs (gh, kh, ...) that segment as one unit so
// that single-letter rules cannot rewrite their insides, e.g. the h of gh.
struct RuleSet {
    std::vector<PhonoRule> rules;
    std::vector<std::string> stable_units;
};

inline void validate_grapheme(std::string_view g, std::string_view source, std::size_t line_no) {
    if (g.empty())
        throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                 ": empty grapheme in rule");
    for (char c : g) {
        if (!is_ascii_letter(c) && !is_ascii_digit(c))
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": invalid character in grapheme '" + std::string(g) + "'");
    }
}

inline RuleSet default_rule_set() {
    RuleSet rs;
    rs.rules = {
        {"q", {"q", "k", "9"}, true}, {"h", {"h", "7"}, true},  {"ch", {"ch", "sh"}, true},
        {"o", {"o", "ou"}, true},     {"a", {"a", "e"}, true},  {"3", {"3", "aa"}, true},
        {"j", {"j", "dj"}, true},     {"w", {"w", "oua"}, true},
    };
    rs.stable_units = {"gh", "kh", "y"};
    return rs;
}

// Rule config format: one class per line, "id: v1|v2|v3", '#' comments.
// A line holding a bare grapheme (or a class with a single variant) declares
// a stable unit instead of a substitution.
inline RuleSet parse_rules(std::istream& in, std::string_view source) {
    RuleSet rs;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    auto add_stable = [&rs](const std::string& unit) {
        if (std::find(rs.stable_units.begin(), rs.stable_units.end(), unit) ==
            rs.stable_units.end())
            rs.stable_units.push_back(unit);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos) {
            std::string unit = to_lower(t);
            bool plain = std::all_of(unit.begin(), unit.end(), is_stem_char);
            if (!plain)
                throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                         ": expected 'class_id: v1|v2|...'");
            add_stable(unit);
            continue;
        }
        std::string id = trim(t.substr(0, colon));
        if (id.empty())
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": empty class id");
        if (!seen_ids.insert(id).second)
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": duplicate class id '" + id + "'");
        std::vector<std::string> variants;
        std::string rest = t.substr(colon + 1);
        std::size_t start = 0;
        while (true) {
            auto bar = rest.find('|', start);
            std::string piece = trim(rest.substr(start, bar == std::string::npos
                                                             ? std::string::npos
                                                             : bar - start));
            piece = to_lower(piece);
            validate_grapheme(piece, source, line_no);
            if (std::find(variants.begin(), variants.end(), piece) == variants.end())
                variants.push_back(piece);
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
        if (variants.size() == 1) {
            add_stable(variants[0]);
        } else {
            rs.rules.push_back(PhonoRule{id, std::move(variants), true});
        }
    }
    return rs;
}

inline RuleSet parse_rule_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open rule file: " + path);
    return parse_rules(in, path);
}

// A class counts as vocalic when every variant is spelled with plain vowel
// letters. Those classes stay inert for very short stems (<= 3 chars), where
// a vowel swap is as likely to reach a different word as a variant spelling.
inline bool is_vowel_class(const PhonoRule& rule) {
    for (const auto& v : rule.variants) {
        for (char c : v) {
            if (c != 'a' && c != 'e' && c != 'i' && c != 'o' && c != 'u') return false;
        }
    }
    return !rule.variants.empty();
}

struct ExpandOptions {
    std::size_t cap = 64;
    bool short_stem_vowel_expansion = false;
};

inline constexpr std::size_t kShortStemLimit = 3;

// Copy of `rs` with vowel classes switched off for short stems, unless the
// caller opted in to short-stem vowel expansion.
inline RuleSet gate_rules_for_stem(const RuleSet& rs, std::string_view stem,
                                   const ExpandOptions& opt) {
    RuleSet out = rs;
    if (!opt.short_stem_vowel_expansion && stem.size() <= kShortStemLimit) {
        for (auto& rule : out.rules) {
            if (is_vowel_class(rule)) rule.enabled = false;
        }
    }
    return out;
}

struct ExpansionResult {
    std::vector<std::string> variants;
    bool truncated = false;
};

namespace detail {

// Greedy longest-match segmentation of a stem into grapheme units. The unit
// inventory is the union of every rule variant (enabled or not) and every
// stable unit; anything else falls back to a single character.
inline std::vector<std::string> segment_stem(std::string_view stem, const RuleSet& rs) {
    std::vector<std::string> multigraphs;
    for (const auto& rule : rs.rules)
        for (const auto& v : rule.variants)
            if (v.size() > 1) multigraphs.push_back(v);
    for (const auto& u : rs.stable_units)
        if (u.size() > 1) multigraphs.push_back(u);
    std::sort(multigraphs.begin(), multigraphs.end(),
              [](const std::string& a, const std::string& b) { return a.size() > b.size(); });

    std::vector<std::string> units;
    std::size_t pos = 0;
    while (pos < stem.size()) {
        std::string_view rest = stem.substr(pos);
        std::size_t taken = 1;
        for (const auto& m : multigraphs) {
            if (rest.size() >= m.size() && rest.substr(0, m.size()) == m) {
                taken = m.size();
                break;
            }
        }
        units.emplace_back(rest.substr(0, taken));
        pos += taken;
    }
    return units;
}

// Substitution choices for one unit: the variant list of the first enabled
// rule containing it, else just the unit itself.
inline const std::vector<std::string>* choices_for_unit(const std::string& unit,
                                                        const RuleSet& rs) {
    for (const auto& rule : rs.rules) {
        if (!rule.enabled) continue;
        if (std::find(rule.variants.begin(), rule.variants.end(), unit) != rule.variants.end())
            return &rule.variants;
    }
    return nullptr;
}

}  // namespace detail

// All spelling variants of a stem under the given rules. The stem is split
// into grapheme units (greedy longest match), each unit in a substitution
// class contributes that class's full variant list, and the output is the
// deduplicated cross product, enumerated in lexicographic order of choice
// vectors (leftmost unit most significant, variants in class order).
// The original stem is always present: if the cap cuts the enumeration off
// before reaching it, the last kept variant is sacrificed for it.
inline ExpansionResult expand_entry_variants(const LexiconEntry& entry, const RuleSet& rules,
                                             std::size_t cap) {
    if (cap == 0) throw std::invalid_argument("variant cap must be >= 1");
    for (const auto& rule : rules.rules) {
        if (rule.variants.size() < 2)
            throw std::invalid_argument("substitution class '" + rule.class_id +
                                        "' needs at least 2 variants");
    }

    ExpansionResult res;
    const std::vector<std::string> units = detail::segment_stem(entry.stem, rules);
    std::vector<const std::vector<std::string>*> choices(units.size(), nullptr);
    std::vector<std::vector<std::string>> singleton(units.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
        const auto* c = detail::choices_for_unit(units[i], rules);
        if (c) {
            choices[i] = c;
        } else {
            singleton[i] = {units[i]};
            choices[i] = &singleton[i];
        }
    }

    std::vector<std::size_t> idx(units.size(), 0);
    std::set<std::string> seen;
    bool exhausted = units.empty();
    if (units.empty()) {
        res.variants.push_back(entry.stem);  // degenerate: empty stem
        return res;
    }
    // Duplicate-free enumerations stop after at most `cap` steps; the guard
    // only bounds adversarial rule sets that keep colliding after dedup.
    std::size_t steps = 0;
    const std::size_t step_guard = std::max<std::size_t>(cap, 1) * 1024 + (1u << 20);
    while (true) {
        std::string v;
        for (std::size_t i = 0; i < units.size(); ++i) v += (*choices[i])[idx[i]];
        if (seen.insert(v).second) res.variants.push_back(std::move(v));
        if (++steps >= step_guard) break;

        // odometer step, rightmost digit fastest
        std::size_t i = units.size();
        while (i > 0) {
            --i;
            if (++idx[i] < choices[i]->size()) break;
            idx[i] = 0;
            if (i == 0) exhausted = true;
        }
        if (exhausted) break;
        if (res.variants.size() >= cap) break;
    }

    if (!exhausted) res.truncated = true;
    if (std::find(res.variants.begin(), res.variants.end(), entry.stem) == res.variants.end()) {
        // identity got truncated away; make room for it
        res.variants.pop_back();
        res.variants.push_back(entry.stem);
        res.truncated = true;
    }
    return res;
}

// Lookup structure mapping every variant spelling to the entries that can
// produce it. Homographs are kept: a variant reachable from several stems
// maps to all of them.
struct VariantIndex {
    struct EntryStats {
        std::size_t variant_count = 0;
        bool truncated = false;
    };

    std::vector<LexiconEntry> entries;  // file order
    std::vector<EntryStats> stats;
    std::unordered_map<std::string, std::vector<std::size_t>> by_variant;

    const LexiconEntry& entry(std::size_t id) const { return entries.at(id); }

    // Exact-string lookup; entry ids sorted ascending. Never fails: unknown
    // strings return an empty set.
    std::vector<std::size_t> lookup(std::string_view candidate) const {
        auto it = by_variant.find(std::string(candidate));
        if (it == by_variant.end()) return {};
        return it->second;
    }

    std::size_t total_variants() const {
        std::size_t n = 0;
        for (const auto& s : stats) n += s.variant_count;
        return n;
    }

    std::size_t truncated_entries() const {
        std::size_t n = 0;
        for (const auto& s : stats)
            if (s.truncated) ++n;
        return n;
    }
};

inline VariantIndex build_variant_index(std::vector<LexiconEntry> entries, const RuleSet& rules,
                                        const ExpandOptions& opt = {}) {
    VariantIndex index;
    index.entries = std::move(entries);
    index.stats.resize(index.entries.size());
    for (std::size_t id = 0; id < index.entries.size(); ++id) {
        const LexiconEntry& e = index.entries[id];
        RuleSet gated = gate_rules_for_stem(rules, e.stem, opt);
        ExpansionResult exp = expand_entry_variants(e, gated, opt.cap);
        index.stats[id].variant_count = exp.variants.size();
        index.stats[id].truncated = exp.truncated;
        for (auto& v : exp.variants) {
            auto& ids = index.by_variant[std::move(v)];
            if (ids.empty() || ids.back() != id) ids.push_back(id);
        }
    }
    for (auto& [variant, ids] : index.by_variant) std::sort(ids.begin(), ids.end());
    return index;
}

inline std::vector<std::size_t> lookup_stem(const VariantIndex& index, std::string_view candidate) {
    return index.lookup(candidate);
}

inline constexpr std::string_view kLexiconHeader = "stem,pos,gloss_fr,polarity,irregular";

// Reads the dictionary CSV. Stems are lowercased and whitespace-trimmed;
// malformed rows, unknown pos/polarity values and duplicate (stem, pos)
// pairs are hard errors that name the offending line.
inline std::vector<LexiconEntry> parse_lexicon(std::istream& in, std::string_view source) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw std::runtime_error(std::string(source) + ": missing header row");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
        static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF)
        line.erase(0, 3);
    if (trim(line) != kLexiconHeader)
        throw std::runtime_error(std::string(source) + ":1: expected header '" +
                                 std::string(kLexiconHeader) + "', found '" + trim(line) + "'");

    std::vector<LexiconEntry> entries;
    std::map<std::pair<std::string, int>, std::size_t> first_seen;  // (stem,pos) -> line
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = csv::split_record(line, source, line_no);
        if (fields.size() != 5)
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": expected 5 columns, found " +
                                     std::to_string(fields.size()));
        LexiconEntry e;
        e.stem = to_lower(trim(fields[0]));
        if (e.stem.empty())
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": empty stem");
        for (char c : e.stem) {
            if (!is_stem_char(c))
                throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                         ": invalid character in stem '" + e.stem + "'");
        }
        auto pos = parse_pos(trim(fields[1]));
        if (!pos)
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": unknown pos value '" + trim(fields[1]) + "'");
        e.pos = *pos;
        e.gloss_fr = trim(fields[2]);
        auto pol = parse_polarity(trim(fields[3]));
        if (!pol)
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": unknown polarity value '" + trim(fields[3]) + "'");
        e.polarity = *pol;
        std::string irr = trim(fields[4]);
        if (irr == "true") {
            e.irregular = true;
        } else if (irr == "false" || irr.empty()) {
            e.irregular = false;
        } else {
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": unknown irregular value '" + irr + "'");
        }

        auto key = std::make_pair(e.stem, static_cast<int>(e.pos));
        auto [it, inserted] = first_seen.emplace(key, line_no);
        if (!inserted)
            throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) +
                                     ": duplicate entry for stem '" + e.stem + "' (" +
                                     to_string(e.pos) + "); first defined at line " +
                                     std::to_string(it->second));
        entries.push_back(std::move(e));
    }
    return entries;
}

inline std::vector<LexiconEntry> parse_lexicon_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
    return parse_lexicon(in, path);
}

inline constexpr std::string_view kExpandedHeader = "variant,stem,pos,gloss_fr,polarity";

// One row per (variant, entry) pair, sorted by variant, then stem, then pos,
// so reruns are byte identical.
inline void write_expanded_lexicon(const VariantIndex& index, std::ostream& out) {
    out << kExpandedHeader << '\n';
    std::vector<std::pair<std::string, std::size_t>> rows;
    rows.reserve(index.by_variant.size());
    for (const auto& [variant, ids] : index.by_variant)
        for (std::size_t id : ids) rows.emplace_back(variant, id);
    std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        const LexiconEntry& ea = index.entries[a.second];
        const LexiconEntry& eb = index.entries[b.second];
        if (ea.stem != eb.stem) return ea.stem < eb.stem;
        return static_cast<int>(ea.pos) < static_cast<int>(eb.pos);
    });
    for (const auto& [variant, id] : rows) {
        const LexiconEntry& e = index.entries[id];
        out << csv::join_record({variant, e.stem, to_string(e.pos), e.gloss_fr,
                                 to_string(e.polarity)})
            << '\n';
    }
}

}  // namespace darja

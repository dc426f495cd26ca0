#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "lexicon.hpp"
#include "normalizer.hpp"

namespace darja {

enum class Mood { indicative_present, imperative, none };

inline const char* to_string(Mood m) {
    switch (m) {
        case Mood::indicative_present: return "indicative_present";
        case Mood::imperative: return "imperative";
        case Mood::none: return "";
    }
    return "";
}

// Closed affix sets. Member order is fixed so enumeration and the automaton
// dump stay deterministic. noun_plural_suffixes ships empty by default; pass
// with_noun_plural=true to turn the suffixes on.
struct AffixInventory {
    std::vector<std::string> subject_prefixes;
    std::vector<std::string> plural_suffixes;
    std::vector<std::string> imperative_suffixes;
    std::vector<std::string> neg_open;
    std::vector<std::string> neg_close;
    std::vector<std::string> cod_pronouns;
    std::vector<std::string> coi_pronouns;
    std::vector<std::string> possessive_suffixes;
    std::vector<std::string> feminine_suffixes;
    std::vector<std::string> noun_plural_suffixes;

    static AffixInventory defaults(bool with_noun_plural = false) {
        AffixInventory inv;
        inv.subject_prefixes = {"n", "t", "y", "i", "ne", "te", "ye", "na", "ta", "ya"};
        inv.plural_suffixes = {"ou", "iw"};
        inv.imperative_suffixes = {"i", "ou", "iw"};
        inv.neg_open = {"ma"};
        inv.neg_close = {"ch", "che", "sh"};
        inv.cod_pronouns = {"ni", "ek", "k", "ou", "h", "ha", "na", "kom", "hom"};
        inv.coi_pronouns = {"li",  "lek",   "lou",  "lha",   "ena",  "elna",
                            "lna", "elkom", "lkom", "elhom", "lhom"};
        inv.possessive_suffixes = {"i", "ek", "k", "ou", "h", "ha", "na", "kom", "hom"};
        inv.feminine_suffixes = {"a"};
        if (with_noun_plural) inv.noun_plural_suffixes = {"in", "yn"};
        return inv;
    }

    // Construction-time sanity: lowercase members only, and the direct/indirect
    // object sets must not overlap or object attachment becomes ambiguous at
    // the slot level.
    void validate() const {
        auto check_set = [](const std::vector<std::string>& set, const char* name) {
            for (const auto& m : set) {
                if (m.empty())
                    throw std::invalid_argument(std::string("affix set ") + name +
                                                " contains an empty member");
                for (char c : m) {
                    if (!is_ascii_letter(c) && !is_ascii_digit(c))
                        throw std::invalid_argument(std::string("affix set ") + name +
                                                    " member '" + m + "' is not lowercase [a-z0-9]");
                }
            }
        };
        check_set(subject_prefixes, "subject_prefixes");
        check_set(plural_suffixes, "plural_suffixes");
        check_set(imperative_suffixes, "imperative_suffixes");
        check_set(neg_open, "neg_open");
        check_set(neg_close, "neg_close");
        check_set(cod_pronouns, "cod_pronouns");
        check_set(coi_pronouns, "coi_pronouns");
        check_set(possessive_suffixes, "possessive_suffixes");
        check_set(feminine_suffixes, "feminine_suffixes");
        check_set(noun_plural_suffixes, "noun_plural_suffixes");
        for (const auto& c : cod_pronouns) {
            if (std::find(coi_pronouns.begin(), coi_pronouns.end(), c) != coi_pronouns.end())
                throw std::invalid_argument("cod and coi pronoun sets overlap on '" + c + "'");
        }
    }
};

enum class SlotLabel {
    neg_open,
    subject_prefix,
    stem_verb,
    stem_noun,
    stem_adjective,
    stem_particle,
    stem_irregular,
    plural_suffix,
    imperative_suffix,
    noun_plural,
    cod,
    coi,
    possessive,
    feminine,
    neg_close,
};

inline const char* to_string(SlotLabel l) {
    switch (l) {
        case SlotLabel::neg_open: return "neg_open";
        case SlotLabel::subject_prefix: return "subject_prefix";
        case SlotLabel::stem_verb: return "stem_verb";
        case SlotLabel::stem_noun: return "stem_noun";
        case SlotLabel::stem_adjective: return "stem_adjective";
        case SlotLabel::stem_particle: return "stem_particle";
        case SlotLabel::stem_irregular: return "stem_irregular";
        case SlotLabel::plural_suffix: return "plural_suffix";
        case SlotLabel::imperative_suffix: return "imperative_suffix";
        case SlotLabel::noun_plural: return "noun_plural";
        case SlotLabel::cod: return "cod";
        case SlotLabel::coi: return "coi";
        case SlotLabel::possessive: return "possessive";
        case SlotLabel::feminine: return "feminine";
        case SlotLabel::neg_close: return "neg_close";
    }
    return "?";
}

// Slot-level automaton over word structure. Labels name slot categories, not
// characters; (state, label) -> state is single valued. Verb, noun, adjective
// and particle paths fan out from the start state; the stem label is split by
// part of speech to keep the table deterministic.
struct MorphAutomaton {
    AffixInventory inventory;
    int start = 0;
    std::vector<bool> is_final;
    std::vector<std::vector<std::pair<SlotLabel, int>>> transitions;  // sorted by label

    // fixed state ids, assigned in build order
    int st_neg = -1;            // "ma" consumed
    int st_pref = -1;           // subject prefix, no negation
    int st_neg_pref = -1;       // "ma" + subject prefix
    int st_verb_bare = -1;      // bare verb stem (imperative context)
    int st_verb_pref = -1;      // prefixed verb stem
    int st_verb_neg = -1;       // verb stem inside an open negation
    int st_verb_sfx = -1;       // plural/imperative suffix, no negation
    int st_verb_neg_sfx = -1;   // suffix inside an open negation
    int st_verb_obj = -1;       // object pronoun, no negation
    int st_verb_neg_obj = -1;   // object pronoun inside an open negation
    int st_verb_closed = -1;    // negation closed
    int st_noun = -1;
    int st_noun_plural = -1;    // only allocated when noun plural suffixes exist
    int st_noun_poss = -1;
    int st_adj = -1;
    int st_adj_fem = -1;
    int st_particle = -1;
    int st_irregular = -1;

    std::size_t state_count() const { return is_final.size(); }

    int next_state(int state, SlotLabel label) const {
        for (const auto& [l, to] : transitions[static_cast<std::size_t>(state)]) {
            if (l == label) return to;
        }
        return -1;
    }

    // Text form: one "state,label,next_state" line per transition, sorted by
    // (state, label), then a "final:" line listing accepting states.
    void dump(std::ostream& out) const {
        for (std::size_t s = 0; s < transitions.size(); ++s) {
            for (const auto& [label, to] : transitions[s])
                out << s << ',' << to_string(label) << ',' << to << '\n';
        }
        out << "final:";
        bool first = true;
        for (std::size_t s = 0; s < is_final.size(); ++s) {
            if (!is_final[s]) continue;
            out << (first ? "" : ",") << s;
            first = false;
        }
        out << '\n';
    }
};

inline MorphAutomaton build_automaton(const AffixInventory& inventory) {
    inventory.validate();
    MorphAutomaton a;
    a.inventory = inventory;

    auto new_state = [&](bool final_state) {
        a.is_final.push_back(final_state);
        a.transitions.emplace_back();
        return static_cast<int>(a.is_final.size() - 1);
    };
    auto link = [&](int from, SlotLabel label, int to) {
        a.transitions[static_cast<std::size_t>(from)].emplace_back(label, to);
    };

    a.start = new_state(false);
    a.st_neg = new_state(false);
    a.st_pref = new_state(false);
    a.st_neg_pref = new_state(false);
    a.st_verb_bare = new_state(true);
    a.st_verb_pref = new_state(true);
    a.st_verb_neg = new_state(false);
    a.st_verb_sfx = new_state(true);
    a.st_verb_neg_sfx = new_state(false);
    a.st_verb_obj = new_state(true);
    a.st_verb_neg_obj = new_state(false);
    a.st_verb_closed = new_state(true);
    a.st_noun = new_state(true);
    if (!inventory.noun_plural_suffixes.empty()) a.st_noun_plural = new_state(true);
    a.st_noun_poss = new_state(true);
    a.st_adj = new_state(true);
    a.st_adj_fem = new_state(true);
    a.st_particle = new_state(true);
    a.st_irregular = new_state(true);

    // verb path: neg_open? subject_prefix? STEM suffix? (cod|coi)? neg_close?
    link(a.start, SlotLabel::neg_open, a.st_neg);
    link(a.start, SlotLabel::subject_prefix, a.st_pref);
    link(a.st_neg, SlotLabel::subject_prefix, a.st_neg_pref);
    link(a.start, SlotLabel::stem_verb, a.st_verb_bare);
    link(a.st_pref, SlotLabel::stem_verb, a.st_verb_pref);
    link(a.st_neg, SlotLabel::stem_verb, a.st_verb_neg);
    link(a.st_neg_pref, SlotLabel::stem_verb, a.st_verb_neg);
    // a prefixless, unnegated verb is an imperative, so its suffix slot draws
    // from the imperative set; everywhere else the plural set applies
    link(a.st_verb_bare, SlotLabel::imperative_suffix, a.st_verb_sfx);
    link(a.st_verb_pref, SlotLabel::plural_suffix, a.st_verb_sfx);
    link(a.st_verb_neg, SlotLabel::plural_suffix, a.st_verb_neg_sfx);
    for (int from : {a.st_verb_bare, a.st_verb_pref, a.st_verb_sfx}) {
        link(from, SlotLabel::cod, a.st_verb_obj);
        link(from, SlotLabel::coi, a.st_verb_obj);
    }
    for (int from : {a.st_verb_neg, a.st_verb_neg_sfx}) {
        link(from, SlotLabel::cod, a.st_verb_neg_obj);
        link(from, SlotLabel::coi, a.st_verb_neg_obj);
    }
    for (int from : {a.st_verb_neg, a.st_verb_neg_sfx, a.st_verb_neg_obj})
        link(from, SlotLabel::neg_close, a.st_verb_closed);

    // noun path: STEM noun_plural? possessive?
    link(a.start, SlotLabel::stem_noun, a.st_noun);
    if (a.st_noun_plural >= 0) {
        link(a.st_noun, SlotLabel::noun_plural, a.st_noun_plural);
        link(a.st_noun_plural, SlotLabel::possessive, a.st_noun_poss);
    }
    link(a.st_noun, SlotLabel::possessive, a.st_noun_poss);

    // adjective path: STEM feminine?
    link(a.start, SlotLabel::stem_adjective, a.st_adj);
    link(a.st_adj, SlotLabel::feminine, a.st_adj_fem);

    // particles and irregular forms are whole-token matches
    link(a.start, SlotLabel::stem_particle, a.st_particle);
    link(a.start, SlotLabel::stem_irregular, a.st_irregular);

    for (auto& out : a.transitions)
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
            return static_cast<int>(x.first) < static_cast<int>(y.first);
        });
    return a;
}

// One reading of a token. `stem` is the substring actually matched;
// `canonical_stem` is the dictionary form it maps to (tro7 -> roh).
// Concatenating neg_open + subject_prefix + stem + plural_suffix + object +
// possessive/feminine + neg_close (absent slots empty) reproduces
// `normalized` exactly.
struct Analysis {
    std::string surface;
    std::string normalized;
    bool exaggerated = false;
    Pos pos = Pos::particle;
    std::string stem;
    std::string canonical_stem;
    std::string gloss_fr;
    std::optional<std::string> subject_prefix;
    std::optional<std::string> plural_suffix;
    std::optional<std::string> cod;
    std::optional<std::string> coi;
    std::optional<std::string> possessive;
    std::optional<std::string> neg_close;  // closer as matched, for reconstruction
    bool feminine = false;
    bool negation = false;
    Mood mood = Mood::none;

    std::size_t filled_slots() const {
        std::size_t n = 0;
        n += subject_prefix.has_value();
        n += plural_suffix.has_value();
        n += cod.has_value();
        n += coi.has_value();
        n += possessive.has_value();
        n += feminine ? 1 : 0;
        n += negation ? 1 : 0;
        return n;
    }

    bool bare_whole_token() const { return filled_slots() == 0 && stem == normalized; }

    auto key() const {
        auto opt = [](const std::optional<std::string>& o) { return o ? *o : std::string(); };
        return std::make_tuple(normalized, static_cast<int>(pos), canonical_stem, stem, gloss_fr,
                               opt(subject_prefix), opt(plural_suffix), opt(cod), opt(coi),
                               opt(possessive), opt(neg_close), feminine, negation,
                               static_cast<int>(mood), surface, exaggerated);
    }

    friend bool operator==(const Analysis& a, const Analysis& b) { return a.key() == b.key(); }
    friend bool operator<(const Analysis& a, const Analysis& b) { return a.key() < b.key(); }
};

namespace detail {

inline bool starts_with_at(std::string_view s, std::size_t pos, std::string_view piece) {
    return s.size() - pos >= piece.size() && s.substr(pos, piece.size()) == piece;
}

// Stem-final vowel sandhi at the verb suffix boundary. A stem-final 'i'
// merges with an i-initial suffix in every mood (ebki+iw -> ebkiw) and drops
// before an o-initial suffix only outside the imperative (n+ebki+ou ->
// nebkou, but imperative ebki+ou -> ebkiou). The analyzer mirrors this by
// re-attaching the 'i' before the lexicon lookup.
inline bool verb_elision_applies(std::string_view suffix, bool imperative_context) {
    if (suffix.empty()) return false;
    if (suffix[0] == 'i') return true;
    if (suffix[0] == 'o') return !imperative_context;
    return false;
}

struct WalkState {
    std::size_t pos = 0;
    std::optional<std::string> neg_open_matched;
    std::optional<std::string> subject_prefix;
    std::optional<std::string> suffix;
    std::optional<std::string> cod;
    std::optional<std::string> coi;
    std::optional<std::string> possessive;
    std::optional<std::string> neg_close;
    bool feminine = false;
    std::size_t entry_id = 0;
    bool have_stem = false;
    std::string matched_stem;
    // pending sandhi: the matched stem borrowed a final letter that the next
    // suffix must justify
    char pending_restore = '\0';  // 'i' on verbs, 'e' on adjectives
};

inline Analysis make_analysis(std::string_view candidate, const LexiconEntry& entry,
                              const WalkState& w) {
    Analysis an;
    an.surface = std::string(candidate);
    an.normalized = std::string(candidate);
    an.pos = entry.pos;
    an.stem = w.matched_stem;
    an.canonical_stem = entry.stem;
    an.gloss_fr = entry.gloss_fr;
    an.subject_prefix = w.subject_prefix;
    an.plural_suffix = w.suffix;
    an.cod = w.cod;
    an.coi = w.coi;
    an.possessive = w.possessive;
    an.neg_close = w.neg_close;
    an.feminine = w.feminine;
    an.negation = w.neg_open_matched.has_value();
    if (entry.pos == Pos::verb && !entry.irregular) {
        an.mood = (an.subject_prefix || an.negation) ? Mood::indicative_present
                                                     : Mood::imperative;
    } else {
        an.mood = Mood::none;
    }
    return an;
}

}  // namespace detail

// Every reading of one normalization candidate, as a deduplicated set in a
// canonical order (not ranked). Walks the automaton; the stem transition
// consults the variant index, every other transition consults the closed
// affix sets.
inline std::vector<Analysis> enumerate_analyses(std::string_view candidate,
                                                const VariantIndex& index,
                                                const MorphAutomaton& automaton) {
    const AffixInventory& inv = automaton.inventory;
    const std::size_t n = candidate.size();
    std::vector<Analysis> out;
    if (n == 0) return out;

    // members of an affix-slot label
    auto members = [&](SlotLabel label) -> const std::vector<std::string>* {
        switch (label) {
            case SlotLabel::neg_open: return &inv.neg_open;
            case SlotLabel::subject_prefix: return &inv.subject_prefixes;
            case SlotLabel::plural_suffix: return &inv.plural_suffixes;
            case SlotLabel::imperative_suffix: return &inv.imperative_suffixes;
            case SlotLabel::noun_plural: return &inv.noun_plural_suffixes;
            case SlotLabel::cod: return &inv.cod_pronouns;
            case SlotLabel::coi: return &inv.coi_pronouns;
            case SlotLabel::possessive: return &inv.possessive_suffixes;
            case SlotLabel::feminine: return &inv.feminine_suffixes;
            case SlotLabel::neg_close: return &inv.neg_close;
            default: return nullptr;
        }
    };

    auto stem_pos = [](SlotLabel label) -> std::optional<Pos> {
        switch (label) {
            case SlotLabel::stem_verb: return Pos::verb;
            case SlotLabel::stem_noun: return Pos::noun;
            case SlotLabel::stem_adjective: return Pos::adjective;
            case SlotLabel::stem_particle: return Pos::particle;
            default: return std::nullopt;
        }
    };

    auto walk = [&](auto&& self, int state, detail::WalkState w) -> void {
        if (w.pos == n && automaton.is_final[static_cast<std::size_t>(state)] &&
            w.pending_restore == '\0' && w.have_stem) {
            out.push_back(detail::make_analysis(candidate, index.entry(w.entry_id), w));
            // keep exploring: other transitions may still extend shorter matches
        }
        for (const auto& [label, next] : automaton.transitions[static_cast<std::size_t>(state)]) {
            if (label == SlotLabel::stem_irregular) {
                if (w.pos != 0) continue;
                auto ids = index.lookup(candidate);
                for (std::size_t id : ids) {
                    if (!index.entry(id).irregular) continue;
                    detail::WalkState next_w = w;
                    next_w.pos = n;
                    next_w.entry_id = id;
                    next_w.have_stem = true;
                    next_w.matched_stem = std::string(candidate);
                    self(self, next, next_w);
                }
                continue;
            }
            if (auto want_pos = stem_pos(label)) {
                for (std::size_t end = w.pos + 1; end <= n; ++end) {
                    std::string sub(candidate.substr(w.pos, end - w.pos));
                    for (std::size_t id : index.lookup(sub)) {
                        const LexiconEntry& e = index.entry(id);
                        if (e.pos != *want_pos || e.irregular) continue;
                        detail::WalkState next_w = w;
                        next_w.pos = end;
                        next_w.entry_id = id;
                        next_w.have_stem = true;
                        next_w.matched_stem = sub;
                        self(self, next, next_w);
                    }
                    // sandhi: a verb stem may have lost a final 'i' to the
                    // following suffix, an adjective a final 'e' to the
                    // feminine 'a'
                    char restore = (*want_pos == Pos::verb)        ? 'i'
                                   : (*want_pos == Pos::adjective) ? 'e'
                                                                   : '\0';
                    if (restore != '\0') {
                        for (std::size_t id : index.lookup(sub + restore)) {
                            const LexiconEntry& e = index.entry(id);
                            if (e.pos != *want_pos || e.irregular) continue;
                            detail::WalkState next_w = w;
                            next_w.pos = end;
                            next_w.entry_id = id;
                            next_w.have_stem = true;
                            next_w.matched_stem = sub;
                            next_w.pending_restore = restore;
                            self(self, next, next_w);
                        }
                    }
                }
                continue;
            }
            const auto* set = members(label);
            if (!set) continue;
            if (w.pending_restore == 'i' &&
                label != SlotLabel::plural_suffix && label != SlotLabel::imperative_suffix)
                continue;
            if (w.pending_restore == 'e' && label != SlotLabel::feminine) continue;
            for (const auto& m : *set) {
                if (!detail::starts_with_at(candidate, w.pos, m)) continue;
                if (w.pending_restore == 'i') {
                    bool imperative_context =
                        !w.subject_prefix.has_value() && !w.neg_open_matched.has_value();
                    if (!detail::verb_elision_applies(m, imperative_context)) continue;
                }
                if (w.pending_restore == 'e' && (m.empty() || m[0] != 'a')) continue;
                detail::WalkState next_w = w;
                next_w.pos = w.pos + m.size();
                next_w.pending_restore = '\0';
                switch (label) {
                    case SlotLabel::neg_open: next_w.neg_open_matched = m; break;
                    case SlotLabel::subject_prefix: next_w.subject_prefix = m; break;
                    case SlotLabel::plural_suffix:
                    case SlotLabel::imperative_suffix:
                    case SlotLabel::noun_plural: next_w.suffix = m; break;
                    case SlotLabel::cod: next_w.cod = m; break;
                    case SlotLabel::coi: next_w.coi = m; break;
                    case SlotLabel::possessive: next_w.possessive = m; break;
                    case SlotLabel::feminine: next_w.feminine = true; break;
                    case SlotLabel::neg_close: next_w.neg_close = m; break;
                    default: break;
                }
                self(self, next, next_w);
            }
        }
    };

    walk(walk, automaton.start, detail::WalkState{});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Stable total order over readings: whole-token dictionary matches first,
// then longer matched stems, fewer filled slots, part-of-speech priority
// (verb, noun, adjective, particle), canonical stem, and finally the full
// slot tuple so equal-priority readings keep one fixed order.
inline std::vector<Analysis> rank_analyses(std::vector<Analysis> analyses) {
    auto pos_rank = [](Pos p) {
        switch (p) {
            case Pos::verb: return 0;
            case Pos::noun: return 1;
            case Pos::adjective: return 2;
            case Pos::particle: return 3;
        }
        return 4;
    };
    std::stable_sort(analyses.begin(), analyses.end(), [&](const Analysis& a, const Analysis& b) {
        int a_whole = a.bare_whole_token() ? 0 : 1;
        int b_whole = b.bare_whole_token() ? 0 : 1;
        if (a_whole != b_whole) return a_whole < b_whole;
        if (a.stem.size() != b.stem.size()) return a.stem.size() > b.stem.size();
        if (a.filled_slots() != b.filled_slots()) return a.filled_slots() < b.filled_slots();
        if (pos_rank(a.pos) != pos_rank(b.pos)) return pos_rank(a.pos) < pos_rank(b.pos);
        if (a.canonical_stem != b.canonical_stem) return a.canonical_stem < b.canonical_stem;
        return a.key() < b.key();
    });
    return analyses;
}

// Tries the token's normalization candidates in order and returns the ranked
// readings of the first candidate that has any. Unknown tokens yield an
// empty vector, never an error.
inline std::vector<Analysis> analyze_token(const Token& token, const VariantIndex& index,
                                           const MorphAutomaton& automaton) {
    for (const auto& candidate : token.candidates) {
        std::vector<Analysis> analyses = enumerate_analyses(candidate, index, automaton);
        if (analyses.empty()) continue;
        for (auto& an : analyses) {
            an.surface = token.surface;
            an.exaggerated = token.exaggerated;
        }
        return rank_analyses(std::move(analyses));
    }
    return {};
}

// Requested slots for generate_form. `suffix` is the verb plural/imperative
// suffix, or the noun plural suffix when those are enabled.
struct FormSpec {
    Mood mood = Mood::none;
    std::optional<std::string> subject_prefix;
    std::optional<std::string> suffix;
    std::optional<std::string> cod;
    std::optional<std::string> coi;
    std::optional<std::string> possessive;
    bool feminine = false;
    bool negation = false;
};

namespace detail {

inline void require_member(const std::vector<std::string>& set, const std::string& value,
                           const char* what) {
    if (std::find(set.begin(), set.end(), value) == set.end())
        throw std::invalid_argument(std::string("illegal slot combination: '") + value +
                                    "' is not a valid " + what);
}

}  // namespace detail

// Surface form for an entry plus slots. Rejects combinations the word
// grammar cannot produce, naming the violated constraint. The inverse of
// analysis: analyze_token on the result recovers the generating slots.
inline std::string generate_form(const LexiconEntry& entry, const FormSpec& spec,
                                 const AffixInventory& inv) {
    auto forbid = [](bool cond, const char* msg) {
        if (cond) throw std::invalid_argument(std::string("illegal slot combination: ") + msg);
    };

    if (entry.irregular) {
        forbid(spec.mood != Mood::none, "irregular entries carry no mood");
        forbid(spec.subject_prefix || spec.suffix || spec.cod || spec.coi || spec.possessive ||
                   spec.feminine || spec.negation,
               "irregular entries take no affixes");
        return entry.stem;
    }

    switch (entry.pos) {
        case Pos::particle:
            forbid(spec.mood != Mood::none, "particles carry no mood");
            forbid(spec.subject_prefix || spec.suffix || spec.cod || spec.coi ||
                       spec.possessive || spec.feminine || spec.negation,
                   "particles take no affixes");
            return entry.stem;

        case Pos::noun: {
            forbid(spec.mood != Mood::none, "nouns carry no mood");
            forbid(spec.subject_prefix.has_value(), "nouns take no subject prefix");
            forbid(spec.cod.has_value() || spec.coi.has_value(),
                   "nouns take no object pronouns");
            forbid(spec.feminine, "the feminine suffix attaches to adjectives only");
            forbid(spec.negation, "negation applies to verbs only");
            std::string form = entry.stem;
            if (spec.suffix) {
                forbid(inv.noun_plural_suffixes.empty(), "noun plural suffixes are disabled");
                detail::require_member(inv.noun_plural_suffixes, *spec.suffix,
                                       "noun plural suffix");
                form += *spec.suffix;
            }
            if (spec.possessive) {
                detail::require_member(inv.possessive_suffixes, *spec.possessive,
                                       "possessive suffix");
                form += *spec.possessive;
            }
            return form;
        }

        case Pos::adjective: {
            forbid(spec.mood != Mood::none, "adjectives carry no mood");
            forbid(spec.subject_prefix || spec.suffix || spec.cod || spec.coi ||
                       spec.possessive || spec.negation,
                   "adjectives take only the feminine suffix");
            std::string form = entry.stem;
            if (spec.feminine) {
                forbid(inv.feminine_suffixes.empty(), "feminine suffixes are disabled");
                const std::string& fem = inv.feminine_suffixes.front();
                // meskine + a -> meskina: a final 'e' yields to the feminine vowel
                if (!form.empty() && form.back() == 'e' && !fem.empty() && fem[0] == 'a')
                    form.pop_back();
                form += fem;
            }
            return form;
        }

        case Pos::verb: {
            forbid(spec.possessive.has_value(), "verbs take no possessive suffix");
            forbid(spec.feminine, "the feminine suffix attaches to adjectives only");
            forbid(spec.mood == Mood::none, "verbs require indicative_present or imperative mood");
            forbid(spec.cod.has_value() && spec.coi.has_value(),
                   "at most one object pronoun per form");
            if (spec.mood == Mood::imperative) {
                forbid(spec.subject_prefix.has_value(), "imperatives take no subject prefix");
                forbid(spec.negation, "imperatives take no negation");
            } else {
                forbid(!spec.subject_prefix && !spec.negation,
                       "indicative_present requires a subject prefix or negation");
            }
            if (spec.subject_prefix)
                detail::require_member(inv.subject_prefixes, *spec.subject_prefix,
                                       "subject prefix");
            if (spec.suffix) {
                if (spec.mood == Mood::imperative)
                    detail::require_member(inv.imperative_suffixes, *spec.suffix,
                                           "imperative suffix");
                else
                    detail::require_member(inv.plural_suffixes, *spec.suffix, "plural suffix");
            }
            if (spec.cod) detail::require_member(inv.cod_pronouns, *spec.cod, "cod pronoun");
            if (spec.coi) detail::require_member(inv.coi_pronouns, *spec.coi, "coi pronoun");
            forbid(spec.negation && (inv.neg_open.empty() || inv.neg_close.empty()),
                   "negation affixes are disabled");

            std::string stem = entry.stem;
            if (spec.suffix && !stem.empty() && stem.back() == 'i' &&
                detail::verb_elision_applies(*spec.suffix, spec.mood == Mood::imperative))
                stem.pop_back();

            std::string form;
            if (spec.negation) form += inv.neg_open.front();
            if (spec.subject_prefix) form += *spec.subject_prefix;
            form += stem;
            if (spec.suffix) form += *spec.suffix;
            if (spec.cod) form += *spec.cod;
            if (spec.coi) form += *spec.coi;
            if (spec.negation) form += inv.neg_close.front();
            return form;
        }
    }
    throw std::invalid_argument("illegal slot combination: unknown part of speech");
}

// Exhaustive reference segmenter. Enumerates every slot split with plain
// loops over the affix sets, no automaton involved; analysis enumeration
// must produce exactly this set.
inline std::vector<Analysis> brute_force_segment(std::string_view candidate,
                                                 const VariantIndex& index,
                                                 const AffixInventory& inv) {
    std::vector<Analysis> out;
    const std::string cand(candidate);
    const std::size_t n = cand.size();
    if (n == 0) return out;

    auto push = [&](const LexiconEntry& entry, detail::WalkState w) {
        out.push_back(detail::make_analysis(cand, entry, w));
    };

    // whole-token irregular and particle matches
    for (std::size_t id : index.lookup(cand)) {
        const LexiconEntry& e = index.entry(id);
        detail::WalkState w;
        w.matched_stem = cand;
        w.have_stem = true;
        if (e.irregular) {
            push(e, w);
        } else if (e.pos == Pos::particle) {
            push(e, w);
        }
    }

    auto ends_with = [&](const std::string& s, const std::string& piece) {
        return s.size() >= piece.size() && s.compare(s.size() - piece.size(), piece.size(),
                                                     piece) == 0;
    };

    // verb path
    {
        std::vector<std::string> opens = {""};
        for (const auto& o : inv.neg_open) opens.push_back(o);
        for (const auto& open : opens) {
            if (!detail::starts_with_at(cand, 0, open)) continue;
            std::vector<std::string> closers;
            if (open.empty()) {
                closers = {""};
            } else {
                closers = inv.neg_close;  // circumfix: open requires close
            }
            for (const auto& close : closers) {
                std::string core = cand.substr(open.size());
                if (!ends_with(core, close)) continue;
                core.resize(core.size() - close.size());

                std::vector<std::string> prefixes = {""};
                for (const auto& p : inv.subject_prefixes) prefixes.push_back(p);
                for (const auto& prefix : prefixes) {
                    if (!detail::starts_with_at(core, 0, prefix)) continue;
                    std::string body = core.substr(prefix.size());
                    bool imperative_context = open.empty() && prefix.empty();

                    std::vector<std::string> objects = {""};
                    for (const auto& c : inv.cod_pronouns) objects.push_back(c);
                    for (const auto& c : inv.coi_pronouns) objects.push_back(c);
                    for (const auto& object : objects) {
                        if (!ends_with(body, object)) continue;
                        std::string mid = body.substr(0, body.size() - object.size());

                        const auto& sfx_set = imperative_context ? inv.imperative_suffixes
                                                                 : inv.plural_suffixes;
                        std::vector<std::string> suffixes = {""};
                        for (const auto& s : sfx_set) suffixes.push_back(s);
                        for (const auto& suffix : suffixes) {
                            if (!ends_with(mid, suffix)) continue;
                            std::string stem = mid.substr(0, mid.size() - suffix.size());
                            if (stem.empty()) continue;

                            auto emit = [&](const LexiconEntry& e) {
                                detail::WalkState w;
                                w.matched_stem = stem;
                                w.have_stem = true;
                                if (!open.empty()) {
                                    w.neg_open_matched = open;
                                    w.neg_close = close;
                                }
                                if (!prefix.empty()) w.subject_prefix = prefix;
                                if (!suffix.empty()) w.suffix = suffix;
                                if (!object.empty()) {
                                    bool is_cod =
                                        std::find(inv.cod_pronouns.begin(),
                                                  inv.cod_pronouns.end(),
                                                  object) != inv.cod_pronouns.end();
                                    if (is_cod)
                                        w.cod = object;
                                    else
                                        w.coi = object;
                                }
                                push(e, w);
                            };

                            for (std::size_t id : index.lookup(stem)) {
                                const LexiconEntry& e = index.entry(id);
                                if (e.pos == Pos::verb && !e.irregular) emit(e);
                            }
                            if (!suffix.empty() &&
                                detail::verb_elision_applies(suffix, imperative_context)) {
                                for (std::size_t id : index.lookup(stem + "i")) {
                                    const LexiconEntry& e = index.entry(id);
                                    if (e.pos == Pos::verb && !e.irregular) emit(e);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // noun path
    {
        std::vector<std::string> possessives = {""};
        for (const auto& p : inv.possessive_suffixes) possessives.push_back(p);
        std::vector<std::string> plurals = {""};
        for (const auto& p : inv.noun_plural_suffixes) plurals.push_back(p);
        for (const auto& poss : possessives) {
            if (!ends_with(cand, poss)) continue;
            std::string mid = cand.substr(0, n - poss.size());
            for (const auto& plural : plurals) {
                if (!ends_with(mid, plural)) continue;
                std::string stem = mid.substr(0, mid.size() - plural.size());
                if (stem.empty()) continue;
                for (std::size_t id : index.lookup(stem)) {
                    const LexiconEntry& e = index.entry(id);
                    if (e.pos != Pos::noun || e.irregular) continue;
                    detail::WalkState w;
                    w.matched_stem = stem;
                    w.have_stem = true;
                    if (!plural.empty()) w.suffix = plural;
                    if (!poss.empty()) w.possessive = poss;
                    push(e, w);
                }
            }
        }
    }

    // adjective path
    {
        for (const auto& fem : inv.feminine_suffixes) {
            if (!ends_with(cand, fem)) continue;
            std::string stem = cand.substr(0, n - fem.size());
            if (stem.empty()) continue;
            auto emit = [&](const LexiconEntry& e, const std::string& matched) {
                detail::WalkState w;
                w.matched_stem = matched;
                w.have_stem = true;
                w.feminine = true;
                push(e, w);
            };
            for (std::size_t id : index.lookup(stem)) {
                const LexiconEntry& e = index.entry(id);
                if (e.pos == Pos::adjective && !e.irregular) emit(e, stem);
            }
            if (!fem.empty() && fem[0] == 'a') {
                for (std::size_t id : index.lookup(stem + "e")) {
                    const LexiconEntry& e = index.entry(id);
                    if (e.pos == Pos::adjective && !e.irregular) emit(e, stem);
                }
            }
        }
        for (std::size_t id : index.lookup(cand)) {
            const LexiconEntry& e = index.entry(id);
            if (e.pos != Pos::adjective || e.irregular) continue;
            detail::WalkState w;
            w.matched_stem = cand;
            w.have_stem = true;
            push(e, w);
        }
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace darja

// Acceptance checks for the full pipeline, run against the shipped data
// files. Each criterion prints exactly one PASS/FAIL line; the exit code is
// the number of failed criteria. All comparisons are exact: counts, strings
// and slot tuples, no tolerances.

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "darja/darja.hpp"

using namespace darja;

namespace {

namespace fs = std::filesystem;

std::string g_data_dir = DARJA_DATA_DIR;

std::string data_path(const std::string& name) { return g_data_dir + "/" + name; }

Token tok(const std::string& s) {
    Token t;
    t.surface = s;
    t.candidates = {s};
    return t;
}

std::string opt(const std::optional<std::string>& o) { return o ? *o : std::string(); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return "<unreadable:" + p.string() + ">";
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Env {
    VariantIndex index;
    MorphAutomaton automaton;
};

Env load_env() {
    Env env;
    env.index = build_variant_index(parse_lexicon_file(data_path("lexicon.csv")),
                                    default_rule_set());
    env.automaton = build_automaton(AffixInventory::defaults());
    return env;
}

bool slots_match(const Analysis& an, const std::string& canonical, Pos pos, const FormSpec& spec) {
    return an.canonical_stem == canonical && an.pos == pos &&
           an.subject_prefix == spec.subject_prefix && an.plural_suffix == spec.suffix &&
           an.cod == spec.cod && an.coi == spec.coi && an.possessive == spec.possessive &&
           an.feminine == spec.feminine && an.negation == spec.negation && an.mood == spec.mood;
}

bool recovers(const Env& env, const std::string& form, const LexiconEntry& entry,
              const FormSpec& spec) {
    auto ranked = analyze_token(tok(form), env.index, env.automaton);
    return std::any_of(ranked.begin(), ranked.end(), [&](const Analysis& an) {
        return slots_match(an, entry.stem, entry.pos, spec);
    });
}

// ---------------------------------------------------------------------------

bool criterion_negated_and_variant_analyses(const Env& env) {
    bool ok = true;

    auto ranked = analyze_token(tok("mandirhach"), env.index, env.automaton);
    if (ranked.size() != 1) {
        std::cerr << "  mandirhach: expected 1 reading, got " << ranked.size() << "\n";
        ok = false;
    } else {
        const Analysis& an = ranked[0];
        if (an.pos != Pos::verb || an.canonical_stem != "dir" || opt(an.subject_prefix) != "n" ||
            opt(an.cod) != "ha" || an.coi || an.plural_suffix || !an.negation ||
            opt(an.neg_close) != "ch" || an.mood != Mood::indicative_present) {
            std::cerr << "  mandirhach: wrong slots (stem=" << an.canonical_stem
                      << " prefix=" << opt(an.subject_prefix) << " cod=" << opt(an.cod)
                      << " neg=" << an.negation << ")\n";
            ok = false;
        }
    }

    ranked = analyze_token(tok("tro7"), env.index, env.automaton);
    if (ranked.size() != 1) {
        std::cerr << "  tro7: expected 1 reading, got " << ranked.size() << "\n";
        ok = false;
    } else {
        const Analysis& an = ranked[0];
        if (an.pos != Pos::verb || an.stem != "ro7" || an.canonical_stem != "roh" ||
            opt(an.subject_prefix) != "t" || an.negation ||
            an.mood != Mood::indicative_present) {
            std::cerr << "  tro7: wrong slots (stem=" << an.stem << " canonical="
                      << an.canonical_stem << " prefix=" << opt(an.subject_prefix) << ")\n";
            ok = false;
        }
    }
    return ok;
}

// One conjugation cell: expected surface for a slot layout of hab or ebki.
struct Cell {
    const char* stem;
    Mood mood;
    const char* prefix;  // nullptr: none
    const char* suffix;
    const char* cod;
    const char* coi;
    bool neg;
    const char* expected;
};

bool criterion_conjugation_tables(const Env& env) {
    const LexiconEntry hab{"hab", Pos::verb, "aimer", Polarity::positive, false};
    const LexiconEntry ebki{"ebki", Pos::verb, "pleurer", Polarity::negative, false};
    const auto& inv = env.automaton.inventory;
    const Mood IMP = Mood::imperative;
    const Mood IND = Mood::indicative_present;

    const std::vector<Cell> cells = {
        // imperatives
        {"hab", IMP, nullptr, nullptr, nullptr, nullptr, false, "hab"},
        {"hab", IMP, nullptr, "i", nullptr, nullptr, false, "habi"},
        {"hab", IMP, nullptr, "ou", nullptr, nullptr, false, "habou"},
        {"ebki", IMP, nullptr, nullptr, nullptr, nullptr, false, "ebki"},
        {"ebki", IMP, nullptr, "ou", nullptr, nullptr, false, "ebkiou"},
        {"ebki", IMP, nullptr, "iw", nullptr, nullptr, false, "ebkiw"},
        // indicative singular/plural
        {"hab", IND, "n", nullptr, nullptr, nullptr, false, "nhab"},
        {"hab", IND, "y", nullptr, nullptr, nullptr, false, "yhab"},
        {"hab", IND, "n", "ou", nullptr, nullptr, false, "nhabou"},
        {"hab", IND, "y", "ou", nullptr, nullptr, false, "yhabou"},
        {"ebki", IND, "n", nullptr, nullptr, nullptr, false, "nebki"},
        {"ebki", IND, "y", nullptr, nullptr, nullptr, false, "yebki"},
        {"ebki", IND, "n", "ou", nullptr, nullptr, false, "nebkou"},
        {"ebki", IND, "n", "iw", nullptr, nullptr, false, "nebkiw"},
        {"ebki", IND, "y", "ou", nullptr, nullptr, false, "yebkou"},
        {"ebki", IND, "y", "iw", nullptr, nullptr, false, "yebkiw"},
        // negation circumfix
        {"hab", IND, "n", nullptr, nullptr, nullptr, true, "manhabch"},
        {"hab", IND, "y", nullptr, nullptr, nullptr, true, "mayhabch"},
        {"hab", IND, "n", "ou", nullptr, nullptr, true, "manhabouch"},
        {"hab", IND, "y", "ou", nullptr, nullptr, true, "mayhabouch"},
        {"ebki", IND, "n", nullptr, nullptr, nullptr, true, "manebkich"},
        {"ebki", IND, "y", nullptr, nullptr, nullptr, true, "mayebkich"},
        {"ebki", IND, "n", "ou", nullptr, nullptr, true, "manebkouch"},
        {"ebki", IND, "n", "iw", nullptr, nullptr, true, "manebkiwch"},
        {"ebki", IND, "y", "ou", nullptr, nullptr, true, "mayebkouch"},
        {"ebki", IND, "y", "iw", nullptr, nullptr, true, "mayebkiwch"},
        // direct object pronouns
        {"hab", IND, "y", nullptr, "ni", nullptr, false, "yhabni"},
        {"hab", IND, "y", nullptr, "ek", nullptr, false, "yhabek"},
        {"hab", IND, "y", nullptr, "ou", nullptr, false, "yhabou"},
        {"hab", IND, "y", nullptr, "ha", nullptr, false, "yhabha"},
        {"hab", IND, "y", nullptr, "na", nullptr, false, "yhabna"},
        {"hab", IND, "y", nullptr, "kom", nullptr, false, "yhabkom"},
        {"hab", IND, "y", nullptr, "hom", nullptr, false, "yhabhom"},
        {"ebki", IND, "y", nullptr, "ni", nullptr, false, "yebkini"},
        {"ebki", IND, "y", nullptr, "ha", nullptr, false, "yebkiha"},
        {"ebki", IND, "y", nullptr, "na", nullptr, false, "yebkina"},
        {"ebki", IND, "y", nullptr, "kom", nullptr, false, "yebkikom"},
        {"ebki", IND, "y", nullptr, "hom", nullptr, false, "yebkihom"},
        // indirect object pronouns
        {"hab", IND, "y", nullptr, nullptr, "li", false, "yhabli"},
        {"hab", IND, "y", nullptr, nullptr, "lek", false, "yhablek"},
        {"hab", IND, "y", nullptr, nullptr, "lou", false, "yhablou"},
        {"hab", IND, "y", nullptr, nullptr, "ena", false, "yhabena"},
        {"hab", IND, "y", nullptr, nullptr, "elna", false, "yhabelna"},
        {"hab", IND, "y", nullptr, nullptr, "elkom", false, "yhabelkom"},
        {"hab", IND, "y", nullptr, nullptr, "elhom", false, "yhabelhom"},
        {"ebki", IND, "y", nullptr, nullptr, "li", false, "yebkili"},
        {"ebki", IND, "y", nullptr, nullptr, "lek", false, "yebkilek"},
        {"ebki", IND, "y", nullptr, nullptr, "lou", false, "yebkilou"},
        {"ebki", IND, "y", nullptr, nullptr, "lha", false, "yebkilha"},
    };

    std::size_t bad = 0;
    for (const Cell& c : cells) {
        const LexiconEntry& entry = (std::string(c.stem) == "hab") ? hab : ebki;
        FormSpec spec;
        spec.mood = c.mood;
        if (c.prefix) spec.subject_prefix = c.prefix;
        if (c.suffix) spec.suffix = c.suffix;
        if (c.cod) spec.cod = c.cod;
        if (c.coi) spec.coi = c.coi;
        spec.negation = c.neg;

        std::string form;
        try {
            form = generate_form(entry, spec, inv);
        } catch (const std::exception& e) {
            std::cerr << "  " << c.expected << ": generation failed: " << e.what() << "\n";
            ++bad;
            continue;
        }
        if (form != c.expected) {
            std::cerr << "  generated '" << form << "', expected '" << c.expected << "'\n";
            ++bad;
            continue;
        }
        if (!recovers(env, form, entry, spec)) {
            std::cerr << "  " << form << ": analysis did not recover its slots\n";
            ++bad;
        }
    }
    std::cerr << "  (" << cells.size() - bad << "/" << cells.size()
              << " conjugation cells verified)\n";
    return bad == 0;
}

// Every legal slot layout for every lexicon entry, generated then re-analyzed.
// Returns the distinct surface forms for reuse by the equivalence criterion.
bool criterion_roundtrip(const Env& env, std::set<std::string>& forms_out) {
    const auto& inv = env.automaton.inventory;
    std::size_t total = 0;
    std::size_t failed = 0;

    auto try_one = [&](const LexiconEntry& entry, const FormSpec& spec) {
        std::string form = generate_form(entry, spec, inv);
        forms_out.insert(form);
        ++total;
        if (!recovers(env, form, entry, spec)) {
            if (failed < 5)
                std::cerr << "  roundtrip lost " << form << " (" << entry.stem << ")\n";
            ++failed;
        }
    };

    std::vector<std::optional<std::string>> objects = {std::nullopt};
    for (const auto& c : inv.cod_pronouns) objects.push_back(c);
    for (const auto& c : inv.coi_pronouns) objects.push_back(c);
    auto is_coi = [&](const std::string& o) {
        return std::find(inv.coi_pronouns.begin(), inv.coi_pronouns.end(), o) !=
               inv.coi_pronouns.end();
    };

    for (const auto& entry : env.index.entries) {
        if (entry.irregular) {
            try_one(entry, FormSpec{});
            continue;
        }
        switch (entry.pos) {
            case Pos::particle: try_one(entry, FormSpec{}); break;
            case Pos::noun: {
                try_one(entry, FormSpec{});
                for (const auto& p : inv.possessive_suffixes) {
                    FormSpec spec;
                    spec.possessive = p;
                    try_one(entry, spec);
                }
                break;
            }
            case Pos::adjective: {
                try_one(entry, FormSpec{});
                FormSpec spec;
                spec.feminine = true;
                try_one(entry, spec);
                break;
            }
            case Pos::verb: {
                std::vector<std::optional<std::string>> imp_suffixes = {std::nullopt};
                for (const auto& s : inv.imperative_suffixes) imp_suffixes.push_back(s);
                for (const auto& sfx : imp_suffixes) {
                    for (const auto& obj : objects) {
                        FormSpec spec;
                        spec.mood = Mood::imperative;
                        spec.suffix = sfx;
                        if (obj) (is_coi(*obj) ? spec.coi : spec.cod) = obj;
                        try_one(entry, spec);
                    }
                }
                std::vector<std::optional<std::string>> ind_suffixes = {std::nullopt};
                for (const auto& s : inv.plural_suffixes) ind_suffixes.push_back(s);
                for (const auto& prefix : inv.subject_prefixes) {
                    for (const auto& sfx : ind_suffixes) {
                        for (const auto& obj : objects) {
                            for (bool neg : {false, true}) {
                                FormSpec spec;
                                spec.mood = Mood::indicative_present;
                                spec.subject_prefix = prefix;
                                spec.suffix = sfx;
                                if (obj) (is_coi(*obj) ? spec.coi : spec.cod) = obj;
                                spec.negation = neg;
                                try_one(entry, spec);
                            }
                        }
                    }
                }
                break;
            }
        }
    }

    std::cerr << "  (" << total - failed << "/" << total << " forms recovered, "
              << forms_out.size() << " distinct)\n";
    return failed == 0 && total >= 1000;
}

bool criterion_enumeration_equals_reference(const Env& env,
                                            const std::set<std::string>& forms) {
    std::set<std::string> candidates = forms;
    for (const auto& msg : ingest_corpus(data_path("desk_corpus.txt")))
        for (const auto& token : normalize_message(msg))
            for (const auto& c : token.candidates) candidates.insert(c);
    for (const char* c : {"mahab", "habch", "xyz", "manhabou", "nhabi", "ranih", "a",
                          "ktabin", "walou", "sahbii"})
        candidates.insert(c);

    std::size_t mismatched = 0;
    for (const auto& c : candidates) {
        auto via_automaton = enumerate_analyses(c, env.index, env.automaton);
        auto via_loops = brute_force_segment(c, env.index, env.automaton.inventory);
        if (via_automaton != via_loops) {
            if (mismatched < 5) std::cerr << "  enumeration diverges on '" << c << "'\n";
            ++mismatched;
        }
    }
    std::cerr << "  (" << candidates.size() - mismatched << "/" << candidates.size()
              << " candidates agree)\n";
    return mismatched == 0;
}

bool criterion_variant_expansion(const Env&) {
    RuleSet rs;
    rs.rules = {{"o", {"o", "ou"}, true}, {"q", {"q", "k", "9"}, true}};
    LexiconEntry entry{"oq3od", Pos::verb, "s'asseoir", Polarity::unspecified, false};
    auto res = expand_entry_variants(entry, rs, 64);
    std::set<std::string> got(res.variants.begin(), res.variants.end());

    const std::set<std::string> attested = {
        "oq3oud", "ok3od", "ok3oud", "o93od", "o93oud",
        "ouq3od", "ouq3oud", "ouk3od", "ouk3oud",
    };

    bool ok = true;
    if (got.size() != 12) {
        std::cerr << "  expected 12 variants, got " << got.size() << "\n";
        ok = false;
    }
    if (res.truncated) {
        std::cerr << "  expansion unexpectedly truncated\n";
        ok = false;
    }
    if (got.count("oq3od") != 1) {
        std::cerr << "  original spelling missing\n";
        ok = false;
    }
    for (const auto& v : attested) {
        if (got.count(v) != 1) {
            std::cerr << "  missing attested variant " << v << "\n";
            ok = false;
        }
    }
    return ok;
}

bool criterion_exaggeration(const Env& env) {
    auto collapse = [](const std::string& s) {
        Token t;
        t.surface = s;
        t.candidates = {s};
        return collapse_exaggeration(t);
    };

    bool ok = true;
    auto expect = [&](const std::string& in, bool exaggerated,
                      const std::vector<std::string>& cands) {
        Token t = collapse(in);
        if (t.exaggerated != exaggerated || t.candidates != cands) {
            std::cerr << "  " << in << ": got [";
            for (const auto& c : t.candidates) std::cerr << ' ' << c;
            std::cerr << " ] exaggerated=" << t.exaggerated << "\n";
            ok = false;
        }
    };
    expect("bezzzzzaf", true, {"bezzaf", "bezaf"});
    expect("sahiiiiit", true, {"sahiit", "sahit"});
    expect("khoya", false, {"khoya"});
    expect("bezzaf", false, {"bezzaf"});

    // end to end: the exaggerated token still reaches its dictionary entry
    auto ranked = analyze_token(collapse("bezzzzzaf"), env.index, env.automaton);
    if (ranked.empty() || ranked[0].canonical_stem != "bezzaf" || !ranked[0].exaggerated ||
        ranked[0].normalized != "bezzaf") {
        std::cerr << "  bezzzzzaf did not analyze to bezzaf\n";
        ok = false;
    }
    return ok;
}

bool criterion_determinism(const Env&) {
    fs::path base = fs::temp_directory_path() / "darja_acceptance";
    fs::remove_all(base);

    auto analyze_into = [&](const std::string& sub) {
        RunConfig cfg;
        cfg.lexicon_path = data_path("lexicon.csv");
        cfg.corpus_path = data_path("desk_corpus.txt");
        cfg.out_dir = (base / sub).string();
        std::ostringstream out, err;
        return cmd_analyze(cfg, out, err) == 0;
    };
    auto expand_into = [&](const std::string& sub) {
        RunConfig cfg;
        cfg.lexicon_path = data_path("lexicon.csv");
        cfg.out_dir = (base / sub).string();
        std::ostringstream out, err;
        return cmd_expand(cfg, out, err) == 0;
    };
    auto freq_into = [&](const std::string& sub) {
        RunConfig cfg;
        cfg.corpus_path = data_path("freq_corpus.txt");
        cfg.out_dir = (base / sub).string();
        std::ostringstream out, err;
        return cmd_freq(cfg, out, err) == 0;
    };

    bool ok = analyze_into("a1") && analyze_into("a2") && expand_into("e1") &&
              expand_into("e2") && freq_into("f1") && freq_into("f2");
    if (!ok) {
        std::cerr << "  a pipeline run failed\n";
        return false;
    }

    auto same = [&](const std::string& d1, const std::string& d2, const std::string& name) {
        std::string x = slurp(base / d1 / name);
        std::string y = slurp(base / d2 / name);
        if (x != y || x.empty()) {
            std::cerr << "  " << name << " differs between runs\n";
            return false;
        }
        return true;
    };
    for (const char* name :
         {"verbs.csv", "nouns.csv", "adjectives.csv", "particles.csv", "unrecognized.csv"})
        ok = same("a1", "a2", name) && ok;
    ok = same("e1", "e2", "expanded_lexicon.csv") && ok;
    ok = same("f1", "f2", "frequencies.csv") && ok;
    return ok;
}

bool criterion_frequencies(const Env&) {
    auto model = build_term_frequency_model(ingest_corpus(data_path("freq_corpus.txt")));
    const std::map<std::string, std::size_t> expected = {
        {"rabi", 2},   {"khoya", 1},  {"inchlah", 1}, {"nafozo", 1}, {"ma3kom", 1},
        {"sahiit", 1}, {"sahit", 1},  {"bezzaf", 1},  {"ch7al", 1},  {"7ala", 1},
    };
    bool ok = model.counts == expected && model.total_tokens == 11;
    if (!ok) {
        std::cerr << "  tally mismatch; got " << model.counts.size() << " terms, "
                  << model.total_tokens << " tokens\n";
        for (const auto& [term, count] : model.counts) {
            auto it = expected.find(term);
            if (it == expected.end() || it->second != count)
                std::cerr << "    unexpected " << term << "=" << count << "\n";
        }
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_data_dir = argv[1];

    Env env = load_env();
    std::set<std::string> generated_forms;

    int failures = 0;
    auto report = [&](const char* name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << ": " << name << "\n";
        if (!ok) ++failures;
    };

    report("negated verb and variant-stem tokens analyze to full slot tuples",
           criterion_negated_and_variant_analyses(env));
    report("conjugation table forms generate and re-analyze exactly",
           criterion_conjugation_tables(env));
    report("systematic generate/analyze roundtrip recovers every form",
           criterion_roundtrip(env, generated_forms));
    report("automaton enumeration equals the brute-force reference",
           criterion_enumeration_equals_reference(env, generated_forms));
    report("variant expansion of oq3od yields the full 12-form set",
           criterion_variant_expansion(env));
    report("exaggerated spellings collapse to analyzable candidates",
           criterion_exaggeration(env));
    report("repeated pipeline runs emit byte-identical tables",
           criterion_determinism(env));
    report("term frequencies match the hand tally", criterion_frequencies(env));

    if (failures) std::cout << failures << " criterion(s) failed\n";
    return failures;
}

// Command line front end: expand / freq / analyze.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <darja/cli.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Morphological analysis toolkit for Algerian dialect text in Latin script"};
    app.require_subcommand(1);
    // let the global -v appear after the subcommand as well
    app.fallthrough();

    darja::RunConfig cfg;

    auto add_lexicon_opts = [&](CLI::App* cmd) {
        cmd->add_option("--lexicon", cfg.lexicon_path, "Lexicon CSV (stem,pos,gloss_fr,polarity,irregular)")
            ->required();
        cmd->add_option("--rules", cfg.rules_path,
                        "Substitution rule config (default: built-in classes)");
        cmd->add_option("--cap", cfg.variant_cap, "Variant cap per entry")->default_val(64);
        cmd->add_flag("--short-stem-vowels", cfg.short_stem_vowel_expansion,
                      "Apply vowel substitution classes to stems of 3 characters or fewer");
    };

    CLI::App* expand = app.add_subcommand("expand", "Write the expanded variant lexicon as CSV");
    add_lexicon_opts(expand);
    expand->add_option("--out", cfg.out_dir, "Output directory")->required();

    CLI::App* freq = app.add_subcommand("freq", "Write normalized term frequencies as CSV");
    freq->add_option("--corpus", cfg.corpus_path, "Corpus file, one message per line")->required();
    freq->add_option("--out", cfg.out_dir, "Output directory")->required();

    CLI::App* analyze =
        app.add_subcommand("analyze", "Label every corpus token and write per-group tables");
    add_lexicon_opts(analyze);
    analyze->add_option("--corpus", cfg.corpus_path, "Corpus file, one message per line")
        ->required();
    analyze->add_option("--out", cfg.out_dir, "Output directory")->required();
    analyze->add_flag("--noun-plural", cfg.noun_plural,
                      "Enable the regular noun plural suffixes");
    analyze->add_option("--dump-automaton", cfg.automaton_dump_path,
                        "Also write the slot automaton transition table to this file");

    app.add_flag("-v,--verbose", cfg.verbosity, "Verbose progress output (repeat for more)");

    CLI11_PARSE(app, argc, argv);

    if (expand->parsed()) return darja::cmd_expand(cfg, std::cout, std::cerr);
    if (freq->parsed()) return darja::cmd_freq(cfg, std::cout, std::cerr);
    return darja::cmd_analyze(cfg, std::cout, std::cerr);
}

// citesum: summarize a scientific article from the sentences that cite it.
//
// Subcommands: summarize, evaluate, rank-measures, cluster. A JSON config
// file supplies the run manifest; flags override individual fields.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "citesum/pipeline.hpp"

namespace {

struct FlagOverrides {
    std::optional<std::string> config_path;
    std::optional<std::string> sentences;
    std::optional<std::string> facts;
    std::optional<std::string> df_table;
    std::optional<std::string> df_corpus;
    std::optional<std::string> measure;
    std::optional<std::string> method;
    std::vector<std::string> methods;
    std::vector<std::string> rank_measures;
    std::vector<int> ks;
    std::optional<int> limit;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<double> cutoff;
    std::optional<double> mu;
    bool ordered_pairs = false;
};

void add_shared_options(CLI::App* cmd, FlagOverrides& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file");
    cmd->add_option("--sentences", flags.sentences, "citation summary JSONL file");
    cmd->add_option("--facts", flags.facts, "fact matrix JSON file");
    cmd->add_option("--df-table", flags.df_table, "document-frequency table JSON file");
    cmd->add_option("--df-corpus", flags.df_corpus,
                    "background corpus, one document per line");
    cmd->add_option("--measure", flags.measure, "similarity measure name");
    cmd->add_option("--limit", flags.limit, "summary length limit (default 5)");
    cmd->add_option("--seed", flags.seed, "random seed");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--cutoff", flags.cutoff, "sparsification cutoff in [0,1]");
    cmd->add_option("--mu", flags.mu, "generation-probability smoothing weight");
}

citesum::PipelineConfig merge_config(const FlagOverrides& flags) {
    citesum::PipelineConfig config;
    if (flags.config_path) config = citesum::load_config(*flags.config_path);
    if (flags.sentences) config.sentences_path = *flags.sentences;
    if (flags.facts) config.facts_path = *flags.facts;
    if (flags.df_table) config.df_table_path = *flags.df_table;
    if (flags.df_corpus) config.df_corpus_path = *flags.df_corpus;
    if (flags.measure) config.measure_name = *flags.measure;
    if (flags.method) config.method = *flags.method;
    if (!flags.methods.empty()) config.methods = flags.methods;
    if (!flags.rank_measures.empty()) config.rank_measures = flags.rank_measures;
    if (!flags.ks.empty()) config.ks = flags.ks;
    if (flags.limit) config.limit = *flags.limit;
    if (flags.seed) config.seed = *flags.seed;
    if (flags.out_dir) config.out_dir = *flags.out_dir;
    if (flags.cutoff) config.cutoff = *flags.cutoff;
    if (flags.mu) config.mu = *flags.mu;
    if (flags.ordered_pairs) config.ordered_pairs = true;
    if (config.limit < 1) citesum::throw_validation("limit must be >= 1");
    return config;
}

int exit_code_for(citesum::ErrorKind kind) {
    switch (kind) {
        case citesum::ErrorKind::parse: return 2;
        case citesum::ErrorKind::validation: return 3;
        case citesum::ErrorKind::runtime: return 4;
    }
    return 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"citation summary toolkit"};
    app.require_subcommand(1);

    FlagOverrides flags;
    auto* summarize = app.add_subcommand(
        "summarize", "extract a fixed-length summary from a citation summary");
    add_shared_options(summarize, flags);
    summarize->add_option("--method", flags.method,
                          "c_rr | c_lexrank | lexrank | random | gold");

    auto* evaluate =
        app.add_subcommand("evaluate", "pyramid-score summaries for each method");
    add_shared_options(evaluate, flags);
    evaluate->add_option("--methods", flags.methods, "methods to evaluate")
        ->delimiter(',');

    auto* rank = app.add_subcommand(
        "rank-measures", "count fact-sharing pairs among top-k similar pairs");
    add_shared_options(rank, flags);
    rank->add_option("--measures", flags.rank_measures, "measures to rank")
        ->delimiter(',');
    rank->add_option("--ks", flags.ks, "top-k cutoffs")->delimiter(',');
    rank->add_flag("--ordered-pairs", flags.ordered_pairs,
                   "count ordered pairs even for symmetric measures");

    auto* cluster =
        app.add_subcommand("cluster", "build and cluster the citation summary network");
    add_shared_options(cluster, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        citesum::PipelineConfig config = merge_config(flags);
        if (summarize->parsed()) citesum::run_summarize(config);
        else if (evaluate->parsed()) citesum::run_evaluate(config);
        else if (rank->parsed()) citesum::run_rank_measures(config);
        else if (cluster->parsed()) citesum::run_cluster(config, std::cout);
        return 0;
    } catch (const citesum::Error& e) {
        std::cerr << "citesum: error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "citesum: error: " << e.what() << '\n';
        return 4;
    }
}

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "citesum/corpus.hpp"
#include "citesum/error.hpp"
#include "citesum/evaluation.hpp"
#include "citesum/extraction.hpp"
#include "citesum/network.hpp"
#include "citesum/similarity.hpp"

namespace citesum {

/// Declarative run manifest. A config file provides the values; command-line
/// flags override individual fields afterwards.
struct PipelineConfig {
    std::string sentences_path;
    std::string facts_path;
    std::string df_table_path;
    std::string df_corpus_path;
    std::string out_dir = "out";

    std::string measure_name = "tfidf_cosine";
    double mu = kDefaultGenerationMu;
    std::string method = "c_lexrank";
    std::vector<std::string> methods;          // evaluate; empty = default set
    std::vector<std::string> rank_measures;    // rank-measures; empty = all
    std::vector<int> ks = {100, 200, 300};
    bool ordered_pairs = false;

    int limit = 5;
    std::uint64_t seed = 1;
    double cutoff = 0.0;
    double damping = kDefaultDamping;
    double tol = kDefaultLexrankTol;
    TokenizerConfig tokenizer;
};

inline const std::vector<std::string>& default_report_methods() {
    static const std::vector<std::string> methods = {"gold", "random", "lexrank", "c_rr",
                                                     "c_lexrank"};
    return methods;
}

inline const std::vector<std::string>& all_measure_names() {
    static const std::vector<std::string> names = {
        "tfidf_cosine", "tf_cosine", "lcss", "levenshtein", "generation_probability"};
    return names;
}

namespace detail {

inline std::string resolve_against(const std::filesystem::path& base,
                                   const std::string& path) {
    if (path.empty()) return path;
    std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (base / p).lexically_normal().string();
}

template <class F>
auto stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), name + ": " + e.what());
    } catch (const std::exception& e) {
        throw Error(ErrorKind::runtime, name + ": " + e.what());
    }
}

inline std::ifstream open_input(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw_runtime("cannot open " + what + " file '" + path + "'");
    return in;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw_runtime("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace detail

/// Loads a JSON config. Input paths are resolved relative to the config
/// file's directory; the output directory stays relative to the working
/// directory.
inline PipelineConfig load_config(const std::string& config_path) {
    auto in = detail::open_input(config_path, "config");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw_parse("config '" + config_path + "': " + e.what());
    }
    if (!doc.is_object()) throw_parse("config '" + config_path + "': expected an object");

    PipelineConfig config;
    auto base = std::filesystem::path(config_path).parent_path();
    auto get_string = [&](const char* key, std::string& field) {
        if (doc.contains(key)) {
            if (!doc[key].is_string())
                throw_parse(std::string("config: '") + key + "' must be a string");
            field = doc[key].get<std::string>();
        }
    };
    get_string("sentences", config.sentences_path);
    get_string("facts", config.facts_path);
    get_string("df_table", config.df_table_path);
    get_string("df_corpus", config.df_corpus_path);
    get_string("out", config.out_dir);
    get_string("measure", config.measure_name);
    get_string("method", config.method);
    config.sentences_path = detail::resolve_against(base, config.sentences_path);
    config.facts_path = detail::resolve_against(base, config.facts_path);
    config.df_table_path = detail::resolve_against(base, config.df_table_path);
    config.df_corpus_path = detail::resolve_against(base, config.df_corpus_path);

    try {
        if (doc.contains("methods")) {
            config.methods = doc["methods"].get<std::vector<std::string>>();
            if (config.methods.empty())
                throw_validation("config: methods list is empty");
        }
        if (doc.contains("rank_measures")) {
            config.rank_measures = doc["rank_measures"].get<std::vector<std::string>>();
            if (config.rank_measures.empty())
                throw_validation("config: rank_measures list is empty");
        }
        if (doc.contains("ks")) config.ks = doc["ks"].get<std::vector<int>>();
        if (doc.contains("ordered_pairs")) config.ordered_pairs = doc["ordered_pairs"].get<bool>();
        if (doc.contains("mu")) config.mu = doc["mu"].get<double>();
        if (doc.contains("limit")) config.limit = doc["limit"].get<int>();
        if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
        if (doc.contains("cutoff")) config.cutoff = doc["cutoff"].get<double>();
        if (doc.contains("damping")) config.damping = doc["damping"].get<double>();
        if (doc.contains("tol")) config.tol = doc["tol"].get<double>();
        if (doc.contains("tokenizer")) {
            const auto& tok = doc["tokenizer"];
            if (tok.contains("remove_stopwords"))
                config.tokenizer.remove_stopwords = tok["remove_stopwords"].get<bool>();
            if (tok.contains("stem")) config.tokenizer.stem = tok["stem"].get<bool>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw_parse("config '" + config_path + "': " + e.what());
    }
    if (config.limit < 1) throw_validation("config: limit must be >= 1");
    return config;
}

struct LoadedInputs {
    CitationSummary summary;
    std::optional<FactMatrix> matrix;
    DfTable df;
};

inline LoadedInputs load_inputs(const PipelineConfig& config, bool need_facts) {
    LoadedInputs inputs;
    inputs.summary = detail::stage("corpus", [&] {
        if (config.sentences_path.empty())
            throw_validation("no citation sentences path configured");
        auto in = detail::open_input(config.sentences_path, "citation summary");
        return load_citation_summary(in, config.tokenizer);
    });
    if (!config.facts_path.empty()) {
        inputs.matrix = detail::stage("facts", [&] {
            auto in = detail::open_input(config.facts_path, "fact matrix");
            return load_fact_matrix(in, inputs.summary);
        });
    } else if (need_facts) {
        throw Error(ErrorKind::validation, "facts: no fact matrix path configured");
    }
    inputs.df = detail::stage("df", [&]() -> DfTable {
        if (!config.df_table_path.empty()) {
            auto in = detail::open_input(config.df_table_path, "df table");
            return load_df_table(in);
        }
        if (!config.df_corpus_path.empty()) {
            auto in = detail::open_input(config.df_corpus_path, "df corpus");
            auto docs = tokenized_documents_from_lines(in, config.tokenizer);
            return build_df_table(docs);
        }
        return df_from_summary(inputs.summary);
    });
    return inputs;
}

namespace detail {

inline SimilarityMeasure configured_measure(const PipelineConfig& config) {
    return SimilarityMeasure::from_name(config.measure_name, config.mu);
}

inline std::filesystem::path prepare_out_dir(const PipelineConfig& config) {
    std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw_runtime("cannot create output directory '" + dir.string() + "'");
    return dir;
}

inline std::vector<std::string> reference_target_comments() {
    return {
        "reference (original AAN data, P99-1065, |S|=5): gold P = 0.94",
        "reference (original AAN data, 25-paper mean, |S|=5): gold 0.99, random 0.41, "
        "lexrank 0.71, c_rr 0.69, c_lexrank 0.75",
    };
}

}  // namespace detail

/// summarize: load -> similarity network -> clustering -> extraction; writes
/// summary.json, network.tsv and clustering.json into the output directory.
inline void run_summarize(const PipelineConfig& config) {
    Method method = method_from_name(config.method);
    LoadedInputs inputs = load_inputs(config, method == Method::gold);
    auto measure = detail::configured_measure(config);

    SummaryNetwork network = detail::stage("network", [&] {
        auto net = build_network(inputs.summary, measure, inputs.df);
        return config.cutoff > 0.0 ? sparsify(net, config.cutoff) : net;
    });
    CnmResult clustered = detail::stage("clustering", [&] { return cnm_cluster_trace(network); });

    Summary summary = detail::stage("extraction", [&] {
        switch (method) {
            case Method::c_rr: return c_rr(clustered.clustering, inputs.summary, config.limit);
            case Method::c_lexrank:
                return c_lexrank(clustered.clustering, network, config.limit, config.damping,
                                 config.tol);
            case Method::lexrank:
                return lexrank_summary(network, config.limit, config.damping, config.tol);
            case Method::random: return random_summary(inputs.summary, config.limit, config.seed);
            case Method::gold: return gold_summary(*inputs.matrix, inputs.summary, config.limit);
        }
        throw_runtime("unreachable method");
    });

    detail::stage("io", [&] {
        auto dir = detail::prepare_out_dir(config);
        auto summary_out = detail::open_output(dir / "summary.json");
        save_summary_json(summary_out, summary, inputs.summary);
        auto network_out = detail::open_output(dir / "network.tsv");
        save_edge_list(network_out, network);
        auto clustering_out = detail::open_output(dir / "clustering.json");
        save_clustering_json(clustering_out, clustered.clustering, clustered.peak_modularity);
    });
}

/// evaluate: pyramid-scores every requested method and writes report.csv /
/// report.json. Reference targets from the original AAN experiments are
/// appended as CSV comments, never asserted.
inline void run_evaluate(const PipelineConfig& config) {
    LoadedInputs inputs = load_inputs(config, true);
    ReportOptions options{detail::configured_measure(config), inputs.df, config.cutoff,
                          config.damping, config.tol};
    const auto& names = config.methods.empty() ? default_report_methods() : config.methods;
    std::vector<Method> methods;
    for (const auto& name : names) methods.push_back(method_from_name(name));

    auto rows = detail::stage("evaluation", [&] {
        return evaluation_report(inputs.summary, *inputs.matrix, methods, config.limit,
                                 config.seed, options);
    });
    detail::stage("io", [&] {
        auto dir = detail::prepare_out_dir(config);
        auto csv = detail::open_output(dir / "report.csv");
        save_report_csv(csv, rows, detail::reference_target_comments());
        auto json = detail::open_output(dir / "report.json");
        save_report_json(json, rows);
    });
}

/// rank-measures: fact-sharing counts among the top-k most similar pairs for
/// every configured measure, one CSV row per measure.
inline void run_rank_measures(const PipelineConfig& config) {
    LoadedInputs inputs = load_inputs(config, true);
    const auto& names =
        config.rank_measures.empty() ? all_measure_names() : config.rank_measures;

    auto csv = detail::stage("io", [&] {
        auto dir = detail::prepare_out_dir(config);
        return detail::open_output(dir / "measures.csv");
    });

    csv << "measure";
    for (int k : config.ks) csv << ",top_" << k;
    csv << '\n';
    std::vector<std::string> clamp_notes;
    for (const auto& name : names) {
        auto measure = SimilarityMeasure::from_name(name, config.mu);
        auto ranking = detail::stage("similarity", [&] {
            return rank_pairs(inputs.summary, measure, inputs.df,
                              config.ordered_pairs ? std::optional<bool>(true) : std::nullopt);
        });
        csv << name;
        for (int k : config.ks) {
            int clamped = std::min<int>(k, static_cast<int>(ranking.pairs.size()));
            if (clamped != k)
                clamp_notes.push_back("top_" + std::to_string(k) + " clamped to " +
                                      std::to_string(clamped) + " pairs for " + name);
            csv << ',' << fact_sharing_at_k(ranking, *inputs.matrix, clamped);
        }
        csv << '\n';
    }
    for (const auto& note : clamp_notes) csv << "# " << note << '\n';
    csv << "# reference (original AAN data, P99-1065): tfidf_cosine (general idf) = "
           "34/66/74 at top 100/200/300\n";
}

/// cluster: writes network.tsv and clustering.json; prints modularity (and
/// purity, when a fact matrix is configured) to stdout.
inline void run_cluster(const PipelineConfig& config, std::ostream& out) {
    LoadedInputs inputs = load_inputs(config, false);
    auto measure = detail::configured_measure(config);
    SummaryNetwork network = detail::stage("network", [&] {
        auto net = build_network(inputs.summary, measure, inputs.df);
        return config.cutoff > 0.0 ? sparsify(net, config.cutoff) : net;
    });
    CnmResult clustered = detail::stage("clustering", [&] { return cnm_cluster_trace(network); });

    detail::stage("io", [&] {
        auto dir = detail::prepare_out_dir(config);
        auto network_out = detail::open_output(dir / "network.tsv");
        save_edge_list(network_out, network);
        auto clustering_out = detail::open_output(dir / "clustering.json");
        save_clustering_json(clustering_out, clustered.clustering, clustered.peak_modularity);
    });

    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", clustered.peak_modularity);
    out << "clusters\t" << clustered.clustering.clusters.size() << '\n';
    out << "modularity\t" << buf << '\n';
    if (inputs.matrix) {
        auto labeling = fact_labeling(*inputs.matrix);
        if (!labeling.labels.empty()) {
            std::snprintf(buf, sizeof(buf), "%.6f",
                          purity(clustered.clustering, labeling));
            out << "purity\t" << buf << '\n';
        }
    }
}

}  // namespace citesum

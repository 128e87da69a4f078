#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "citesum/clustering.hpp"
#include "citesum/corpus.hpp"
#include "citesum/error.hpp"
#include "citesum/extraction.hpp"
#include "citesum/network.hpp"
#include "citesum/similarity.hpp"

namespace citesum {

/// Facts grouped into tiers by occurrence count: a fact cited by i sentences
/// sits in tier i and weighs i. Zero-count facts belong to no tier.
struct Pyramid {
    // tier index -> facts, highest tier first
    std::map<int, std::vector<std::string>, std::greater<int>> tiers;
    int top_tier = 0;
    int total_facts = 0;

    int tier_of(const std::string& fact) const {
        for (const auto& [tier, facts] : tiers)
            for (const auto& f : facts)
                if (f == fact) return tier;
        return 0;
    }
};

inline Pyramid build_pyramid(const FactMatrix& matrix) {
    Pyramid pyramid;
    auto counts = fact_counts(matrix);
    for (size_t f = 0; f < matrix.facts.size(); ++f)
        if (counts[f] > 0) pyramid.tiers[counts[f]].push_back(matrix.facts[f]);
    if (pyramid.tiers.empty())
        throw_validation("build_pyramid: no fact occurs in any sentence");
    pyramid.top_tier = pyramid.tiers.begin()->first;
    for (const auto& [tier, facts] : pyramid.tiers)
        pyramid.total_facts += static_cast<int>(facts.size());
    return pyramid;
}

namespace detail {

/// Distinct facts covered by the summary's sentences, as matrix column
/// indices, restricted to facts that occur at least once.
inline std::set<size_t> covered_facts(const Summary& summary, const FactMatrix& matrix,
                                      const std::vector<int>& counts) {
    std::set<size_t> covered;
    for (const auto& id : summary.sentences) {
        const auto& row = matrix.row(id);
        for (size_t f = 0; f < row.size(); ++f)
            if (row[f] && counts[f] > 0) covered.insert(f);
    }
    return covered;
}

}  // namespace detail

/// Total fact weight D = sum_i i * D_i: each distinct covered fact
/// contributes its tier index once.
inline int summary_weight(const Summary& summary, const FactMatrix& matrix,
                          const Pyramid& pyramid) {
    auto counts = fact_counts(matrix);
    int d = 0;
    for (size_t f : detail::covered_facts(summary, matrix, counts))
        d += pyramid.tier_of(matrix.facts[f]);
    return d;
}

/// Optimal weight for a summary covering X facts: the sum of the X largest
/// tier indices over all facts (greedy top-down fill).
inline int optimal_weight(const Pyramid& pyramid, int x) {
    if (x < 1 || x > pyramid.total_facts)
        throw_validation("optimal_weight: X outside [1, total facts]");
    int remaining = x;
    int max_weight = 0;
    for (const auto& [tier, facts] : pyramid.tiers) {
        int take = std::min<int>(remaining, static_cast<int>(facts.size()));
        max_weight += tier * take;
        remaining -= take;
        if (remaining == 0) break;
    }
    return max_weight;
}

struct PyramidScore {
    int d = 0;
    int max = 0;
    double p = 0.0;
};

/// P = D/Max with X = the number of distinct facts the summary covers. A
/// summary covering no facts scores 0 (Max evaluated at X = 1).
inline PyramidScore pyramid_score(const Summary& summary, const FactMatrix& matrix) {
    Pyramid pyramid = build_pyramid(matrix);
    auto counts = fact_counts(matrix);
    auto covered = detail::covered_facts(summary, matrix, counts);
    PyramidScore score;
    if (covered.empty()) {
        score.max = optimal_weight(pyramid, 1);
        return score;
    }
    for (size_t f : covered) score.d += counts[f];
    score.max = optimal_weight(pyramid, static_cast<int>(covered.size()));
    score.p = static_cast<double>(score.d) / static_cast<double>(score.max);
    return score;
}

// --- report generation -------------------------------------------------------

struct ReportRow {
    std::string target;
    std::string method;
    int limit = 0;
    int d = 0;
    int max = 0;
    double p = 0.0;
};

struct ReportOptions {
    SimilarityMeasure measure{MeasureKind::tfidf_cosine};
    std::optional<DfTable> df;  // defaults to the summary's own sentences
    double cutoff = 0.0;
    double damping = kDefaultDamping;
    double tol = kDefaultLexrankTol;
};

/// Runs each requested method end to end (network -> clustering where
/// applicable -> extraction -> pyramid score) and emits one row per method,
/// in request order with duplicates dropped.
inline std::vector<ReportRow> evaluation_report(const CitationSummary& summary_src,
                                                const FactMatrix& matrix,
                                                const std::vector<Method>& methods,
                                                int limit, std::uint64_t seed,
                                                const ReportOptions& options = {}) {
    if (methods.empty()) throw_validation("evaluation_report: no methods requested");
    if (limit < 1) throw_validation("evaluation_report: limit must be >= 1");

    std::optional<SummaryNetwork> network;
    std::optional<Clustering> clustering;
    auto net = [&]() -> const SummaryNetwork& {
        if (!network) {
            DfTable df = options.df ? *options.df : df_from_summary(summary_src);
            network = build_network(summary_src, options.measure, df);
            if (options.cutoff > 0.0) network = sparsify(*network, options.cutoff);
        }
        return *network;
    };
    auto clusters = [&]() -> const Clustering& {
        if (!clustering) clustering = cnm_cluster(net());
        return *clustering;
    };

    std::vector<ReportRow> rows;
    std::set<Method> emitted;
    for (Method method : methods) {
        if (!emitted.insert(method).second) continue;
        Summary summary;
        switch (method) {
            case Method::gold: summary = gold_summary(matrix, summary_src, limit); break;
            case Method::random: summary = random_summary(summary_src, limit, seed); break;
            case Method::lexrank:
                summary = lexrank_summary(net(), limit, options.damping, options.tol);
                break;
            case Method::c_rr: summary = c_rr(clusters(), summary_src, limit); break;
            case Method::c_lexrank:
                summary = c_lexrank(clusters(), net(), limit, options.damping, options.tol);
                break;
        }
        auto score = pyramid_score(summary, matrix);
        rows.push_back({summary_src.target_doc, std::string(method_name(method)), limit,
                        score.d, score.max, score.p});
    }
    return rows;
}

/// CSV mirror of the evaluation table; P is printed with 2 decimals.
inline void save_report_csv(std::ostream& out, const std::vector<ReportRow>& rows,
                            const std::vector<std::string>& trailer_comments = {}) {
    out << "target,method,limit,D,Max,P\n";
    char buf[32];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.2f", row.p);
        out << row.target << ',' << row.method << ',' << row.limit << ',' << row.d << ','
            << row.max << ',' << buf << '\n';
    }
    for (const auto& comment : trailer_comments) out << "# " << comment << '\n';
}

inline void save_report_json(std::ostream& out, const std::vector<ReportRow>& rows) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& row : rows)
        doc.push_back({{"target", row.target},
                       {"method", row.method},
                       {"limit", row.limit},
                       {"D", row.d},
                       {"Max", row.max},
                       {"P", row.p}});
    out << doc.dump(2) << '\n';
}

}  // namespace citesum

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "citesum/clustering.hpp"
#include "citesum/corpus.hpp"
#include "citesum/error.hpp"
#include "citesum/network.hpp"

namespace citesum {

enum class Method { c_rr, c_lexrank, lexrank, random, gold };

inline std::string_view method_name(Method m) {
    switch (m) {
        case Method::c_rr: return "c_rr";
        case Method::c_lexrank: return "c_lexrank";
        case Method::lexrank: return "lexrank";
        case Method::random: return "random";
        case Method::gold: return "gold";
    }
    return "unknown";
}

inline Method method_from_name(std::string_view name) {
    if (name == "c_rr") return Method::c_rr;
    if (name == "c_lexrank") return Method::c_lexrank;
    if (name == "lexrank") return Method::lexrank;
    if (name == "random") return Method::random;
    if (name == "gold") return Method::gold;
    throw_validation("unknown extraction method '" + std::string(name) + "'");
}

/// A fixed-length extractive summary. Sentences are listed in extraction
/// order and are always distinct members of the source citation summary.
struct Summary {
    std::string target_doc;
    Method method = Method::lexrank;
    int limit = 0;
    std::vector<SentenceId> sentences;
};

/// Stationary probabilities of the damped random walk, aligned with `nodes`.
struct CentralityScores {
    std::vector<SentenceId> nodes;
    std::vector<double> score;

    double of(const SentenceId& id) const {
        for (size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == id) return score[i];
        throw_validation("no centrality score for " + id.str());
    }
};

inline constexpr double kDefaultDamping = 0.85;
inline constexpr double kDefaultLexrankTol = 1e-8;

/// Power iteration for the walk P = d*U + (1-d)*W_rownorm. Rows with zero
/// outgoing weight are treated as uniformly linked to every node. Iterates
/// until an update moves the distribution by less than `tol` in L1 and
/// returns that fixed point.
inline CentralityScores lexrank_scores(const SummaryNetwork& network,
                                       double damping = kDefaultDamping,
                                       double tol = kDefaultLexrankTol) {
    const size_t n = network.size();
    if (n == 0) throw_validation("lexrank_scores: empty network");
    if (!(damping > 0.0 && damping < 1.0))
        throw_validation("lexrank_scores: damping must lie in (0,1)");
    if (!(tol > 0.0)) throw_validation("lexrank_scores: tol must be > 0");

    std::vector<double> row_sum(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) row_sum[i] += network.weight(i, j);

    const double uniform = 1.0 / static_cast<double>(n);
    std::vector<double> p(n, uniform), next(n, 0.0);
    constexpr int kMaxIterations = 100000;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        for (size_t u = 0; u < n; ++u) {
            double walk = 0.0;
            for (size_t v = 0; v < n; ++v) {
                double t = row_sum[v] > 0.0 ? network.weight(v, u) / row_sum[v] : uniform;
                walk += p[v] * t;
            }
            next[u] = damping * uniform + (1.0 - damping) * walk;
        }
        double change = 0.0;
        for (size_t u = 0; u < n; ++u) change += std::abs(next[u] - p[u]);
        if (change < tol) break;
        std::swap(p, next);
    }
    return CentralityScores{network.nodes(), std::move(p)};
}

namespace detail {

/// Round-robin over clusters in canonical order: round r takes the r-th
/// entry of every per-cluster list until `limit` sentences are collected.
inline std::vector<SentenceId> round_robin(
    const std::vector<std::vector<SentenceId>>& per_cluster, int limit) {
    std::vector<SentenceId> picked;
    size_t total = 0;
    for (const auto& list : per_cluster) total += list.size();
    size_t want = std::min<size_t>(static_cast<size_t>(limit), total);
    for (size_t round = 0; picked.size() < want; ++round) {
        for (const auto& list : per_cluster) {
            if (round < list.size()) {
                picked.push_back(list[round]);
                if (picked.size() == want) break;
            }
        }
    }
    return picked;
}

inline std::vector<size_t> node_positions(const SummaryNetwork& network,
                                          const std::vector<SentenceId>& members) {
    std::vector<size_t> idx;
    idx.reserve(members.size());
    for (const auto& id : members) idx.push_back(network.index_of(id));
    return idx;
}

}  // namespace detail

/// Cluster Round-Robin: clusters in decreasing size; within each cluster,
/// sentences in the order they appear in the citation summary.
inline Summary c_rr(const Clustering& clustering, const CitationSummary& summary_src,
                    int limit) {
    if (limit < 1) throw_validation("c_rr: limit must be >= 1");
    auto pos = summary_src.position_index();
    std::vector<std::vector<SentenceId>> per_cluster;
    per_cluster.reserve(clustering.clusters.size());
    for (const auto& members : clustering.clusters) {
        auto list = members;
        std::sort(list.begin(), list.end(), [&](const SentenceId& a, const SentenceId& b) {
            return pos.at(a) < pos.at(b);
        });
        per_cluster.push_back(std::move(list));
    }
    return Summary{summary_src.target_doc, Method::c_rr, limit,
                   detail::round_robin(per_cluster, limit)};
}

/// Cluster LexRank: per-cluster centrality on the induced subnetwork, then
/// round-robin over the most salient sentences of each cluster. Ranking ties
/// fall back to citation-summary order.
inline Summary c_lexrank(const Clustering& clustering, const SummaryNetwork& network,
                         int limit, double damping = kDefaultDamping,
                         double tol = kDefaultLexrankTol) {
    if (limit < 1) throw_validation("c_lexrank: limit must be >= 1");
    std::vector<std::vector<SentenceId>> per_cluster;
    per_cluster.reserve(clustering.clusters.size());
    for (const auto& members : clustering.clusters) {
        auto idx = detail::node_positions(network, members);
        std::sort(idx.begin(), idx.end());
        const size_t k = idx.size();
        std::vector<SentenceId> sub_nodes;
        sub_nodes.reserve(k);
        for (size_t i : idx) sub_nodes.push_back(network.nodes()[i]);
        std::vector<double> sub_weights(k * k, 0.0);
        for (size_t a = 0; a < k; ++a)
            for (size_t b = 0; b < k; ++b)
                if (a != b) sub_weights[a * k + b] = network.weight(idx[a], idx[b]);
        SummaryNetwork sub(network.target_doc(), std::move(sub_nodes),
                           std::move(sub_weights));
        auto scores = lexrank_scores(sub, damping, tol);
        std::vector<size_t> order(k);
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (scores.score[a] != scores.score[b]) return scores.score[a] > scores.score[b];
            return idx[a] < idx[b];
        });
        std::vector<SentenceId> ranked;
        ranked.reserve(k);
        for (size_t o : order) ranked.push_back(scores.nodes[o]);
        per_cluster.push_back(std::move(ranked));
    }
    return Summary{network.target_doc(), Method::c_lexrank, limit,
                   detail::round_robin(per_cluster, limit)};
}

/// Plain LexRank baseline over the full network, ties by citation-summary
/// order.
inline Summary lexrank_summary(const SummaryNetwork& network, int limit,
                               double damping = kDefaultDamping,
                               double tol = kDefaultLexrankTol) {
    if (limit < 1) throw_validation("lexrank_summary: limit must be >= 1");
    auto scores = lexrank_scores(network, damping, tol);
    std::vector<size_t> order(network.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (scores.score[a] != scores.score[b]) return scores.score[a] > scores.score[b];
        return a < b;
    });
    size_t want = std::min<size_t>(static_cast<size_t>(limit), network.size());
    std::vector<SentenceId> picked;
    picked.reserve(want);
    for (size_t i = 0; i < want; ++i) picked.push_back(network.nodes()[order[i]]);
    return Summary{network.target_doc(), Method::lexrank, limit, std::move(picked)};
}

namespace detail {

/// Uniform integer in [0, bound) via rejection sampling; stable across
/// platforms, unlike std::uniform_int_distribution.
inline std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

}  // namespace detail

/// Uniform sample without replacement, reproducible from `seed`; the
/// selection keeps the original citation-summary order.
inline Summary random_summary(const CitationSummary& summary_src, int limit,
                              std::uint64_t seed) {
    if (limit < 1) throw_validation("random_summary: limit must be >= 1");
    const size_t n = summary_src.size();
    const size_t want = std::min<size_t>(static_cast<size_t>(limit), n);
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::mt19937_64 rng(seed);
    for (size_t i = 0; i < want; ++i) {
        size_t j = i + static_cast<size_t>(detail::bounded_uniform(rng, n - i));
        std::swap(idx[i], idx[j]);
    }
    std::vector<size_t> chosen(idx.begin(), idx.begin() + static_cast<long>(want));
    std::sort(chosen.begin(), chosen.end());
    std::vector<SentenceId> picked;
    picked.reserve(want);
    for (size_t i : chosen) picked.push_back(summary_src.sentences[i].id);
    return Summary{summary_src.target_doc, Method::random, limit, std::move(picked)};
}

/// Greedy gold standard: each step picks the sentence adding the largest
/// total weight of uncovered facts (fact weight = occurrence count), ties by
/// citation-summary order.
inline Summary gold_summary(const FactMatrix& matrix, const CitationSummary& summary_src,
                            int limit) {
    if (limit < 1) throw_validation("gold_summary: limit must be >= 1");
    const size_t n = summary_src.size();
    const size_t want = std::min<size_t>(static_cast<size_t>(limit), n);
    auto counts = fact_counts(matrix);
    std::vector<bool> covered(matrix.facts.size(), false);
    std::vector<bool> chosen(n, false);
    std::vector<SentenceId> picked;
    picked.reserve(want);
    for (size_t step = 0; step < want; ++step) {
        long long best_gain = -1;
        size_t best_pos = n;
        for (size_t i = 0; i < n; ++i) {
            if (chosen[i]) continue;
            const auto& row = matrix.row(summary_src.sentences[i].id);
            long long gain = 0;
            for (size_t f = 0; f < row.size(); ++f)
                if (row[f] && !covered[f]) gain += counts[f];
            if (gain > best_gain) {
                best_gain = gain;
                best_pos = i;
            }
        }
        chosen[best_pos] = true;
        picked.push_back(summary_src.sentences[best_pos].id);
        const auto& row = matrix.row(summary_src.sentences[best_pos].id);
        for (size_t f = 0; f < row.size(); ++f)
            if (row[f]) covered[f] = true;
    }
    return Summary{summary_src.target_doc, Method::gold, limit, std::move(picked)};
}

inline void save_summary_json(std::ostream& out, const Summary& summary,
                              const CitationSummary& summary_src) {
    auto pos = summary_src.position_index();
    nlohmann::json sentences = nlohmann::json::array();
    for (const auto& id : summary.sentences) {
        const auto& sentence = summary_src.sentences[pos.at(id)];
        sentences.push_back({{"id", id.str()}, {"text", sentence.text}});
    }
    nlohmann::json doc = {{"target", summary.target_doc},
                          {"method", std::string(method_name(summary.method))},
                          {"limit", summary.limit},
                          {"sentences", std::move(sentences)}};
    out << doc.dump(2) << '\n';
}

}  // namespace citesum

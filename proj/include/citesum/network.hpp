#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "citesum/corpus.hpp"
#include "citesum/error.hpp"
#include "citesum/similarity.hpp"

namespace citesum {

/// Complete undirected weighted graph over the citing sentences of one
/// target document. Dense storage: citation summaries top out at a few
/// hundred sentences.
class SummaryNetwork {
public:
    SummaryNetwork(std::string target_doc, std::vector<SentenceId> nodes,
                   std::vector<double> weights)
        : target_doc_(std::move(target_doc)),
          nodes_(std::move(nodes)),
          weights_(std::move(weights)) {
        check_invariants();
    }

    size_t size() const { return nodes_.size(); }
    const std::string& target_doc() const { return target_doc_; }
    const std::vector<SentenceId>& nodes() const { return nodes_; }

    double weight(size_t i, size_t j) const { return weights_[i * nodes_.size() + j]; }

    size_t index_of(const SentenceId& id) const {
        for (size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i] == id) return i;
        throw_validation("sentence " + id.str() + " is not a network node");
    }

    /// Sum of w_ij over all ordered pairs (the 2m of the modularity formula).
    double total_weight() const {
        double total = 0.0;
        for (double w : weights_) total += w;
        return total;
    }

private:
    void check_invariants() const {
        const size_t n = nodes_.size();
        if (weights_.size() != n * n)
            throw_validation("network: weight matrix dimension mismatch");
        for (size_t i = 0; i < n; ++i) {
            if (weights_[i * n + i] != 0.0)
                throw_validation("network: nonzero diagonal at node " + nodes_[i].str());
            for (size_t j = i + 1; j < n; ++j) {
                double w = weights_[i * n + j];
                if (w != weights_[j * n + i])
                    throw_validation("network: asymmetric weight between " +
                                     nodes_[i].str() + " and " + nodes_[j].str());
                if (!(w >= 0.0 && w <= 1.0))
                    throw_validation("network: weight outside [0,1] between " +
                                     nodes_[i].str() + " and " + nodes_[j].str());
            }
        }
    }

    std::string target_doc_;
    std::vector<SentenceId> nodes_;
    std::vector<double> weights_;
};

/// Builds the citation summary network: one node per sentence, edge weight =
/// similarity. Asymmetric measures are symmetrized as the mean of the two
/// directions.
inline SummaryNetwork build_network(const CitationSummary& summary,
                                    const SimilarityMeasure& measure, const DfTable& df) {
    const auto& s = summary.sentences;
    if (s.empty()) throw_validation("build_network: empty citation summary");
    const size_t n = s.size();
    std::vector<SentenceId> nodes;
    nodes.reserve(n);
    for (const auto& sentence : s) nodes.push_back(sentence.id);
    std::vector<double> weights(n * n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            double w = measure.symmetric()
                           ? measure.score(s[i], s[j], df)
                           : 0.5 * (measure.score(s[i], s[j], df) +
                                    measure.score(s[j], s[i], df));
            weights[i * n + j] = w;
            weights[j * n + i] = w;
        }
    }
    return SummaryNetwork(summary.target_doc, std::move(nodes), std::move(weights));
}

/// Zeroes every weight strictly below `cutoff`. Idempotent at a fixed cutoff.
inline SummaryNetwork sparsify(const SummaryNetwork& network, double cutoff) {
    const size_t n = network.size();
    std::vector<double> weights(n * n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            double w = network.weight(i, j);
            weights[i * n + j] = w < cutoff ? 0.0 : w;
        }
    }
    return SummaryNetwork(network.target_doc(), network.nodes(), std::move(weights));
}

/// Edge-list text format: a node-count header, then one line per unordered
/// positive-weight edge.
inline void save_edge_list(std::ostream& out, const SummaryNetwork& network) {
    out << "# nodes: " << network.size() << '\n';
    char buf[64];
    for (size_t i = 0; i < network.size(); ++i) {
        for (size_t j = i + 1; j < network.size(); ++j) {
            double w = network.weight(i, j);
            if (w <= 0.0) continue;
            std::snprintf(buf, sizeof(buf), "%.12g", w);
            out << network.nodes()[i].str() << '\t' << network.nodes()[j].str() << '\t'
                << buf << '\n';
        }
    }
}

}  // namespace citesum

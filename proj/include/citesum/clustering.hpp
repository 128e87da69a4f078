#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "citesum/corpus.hpp"
#include "citesum/error.hpp"
#include "citesum/network.hpp"

namespace citesum {

/// A partition of the network's sentences. Clusters are kept in canonical
/// order: decreasing size, ties by the smallest contained node position;
/// members are listed in node order.
struct Clustering {
    std::vector<std::vector<SentenceId>> clusters;
    std::map<SentenceId, size_t> assignment;
};

/// Canonicalizes raw index groups against the network's node order and
/// checks that they form a partition.
inline Clustering make_clustering(const SummaryNetwork& network,
                                  std::vector<std::vector<size_t>> groups) {
    const size_t n = network.size();
    std::vector<bool> seen(n, false);
    size_t covered = 0;
    for (auto& group : groups) {
        std::sort(group.begin(), group.end());
        for (size_t idx : group) {
            if (idx >= n) throw_validation("clustering: node index out of range");
            if (seen[idx])
                throw_validation("clustering: node " + network.nodes()[idx].str() +
                                 " appears in two clusters");
            seen[idx] = true;
            ++covered;
        }
    }
    if (covered != n) throw_validation("clustering: not a total partition");
    std::sort(groups.begin(), groups.end(),
              [](const std::vector<size_t>& a, const std::vector<size_t>& b) {
                  if (a.size() != b.size()) return a.size() > b.size();
                  return a.front() < b.front();
              });
    Clustering clustering;
    for (size_t c = 0; c < groups.size(); ++c) {
        std::vector<SentenceId> members;
        members.reserve(groups[c].size());
        for (size_t idx : groups[c]) {
            members.push_back(network.nodes()[idx]);
            clustering.assignment.emplace(network.nodes()[idx], c);
        }
        clustering.clusters.push_back(std::move(members));
    }
    return clustering;
}

/// Weighted modularity Q = sum_c [ in_c/(2m) - (K_c/(2m))^2 ], with in_c the
/// intra-cluster weight over ordered pairs and K_c the summed weighted
/// degree. The all-in-one-cluster partition scores exactly 0.
inline double modularity(const SummaryNetwork& network, const Clustering& clustering) {
    const size_t n = network.size();
    std::vector<double> degree(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) degree[i] += network.weight(i, j);
    double two_m = 0.0;
    for (size_t i = 0; i < n; ++i) two_m += degree[i];
    if (two_m <= 0.0) throw_validation("modularity: network has zero total weight");

    double q = 0.0;
    for (const auto& members : clustering.clusters) {
        std::vector<size_t> idx;
        idx.reserve(members.size());
        for (const auto& id : members) idx.push_back(network.index_of(id));
        std::sort(idx.begin(), idx.end());
        double in_c = 0.0, k_c = 0.0;
        for (size_t i : idx) {
            // Per-row partial sums keep the accumulation order identical to
            // the degree sums, so the one-cluster partition lands on 0 exactly.
            double row = 0.0;
            for (size_t j : idx) row += network.weight(i, j);
            in_c += row;
            k_c += degree[i];
        }
        double frac = k_c / two_m;
        q += in_c / two_m - frac * frac;
    }
    return q;
}

struct CnmMerge {
    size_t cluster_a = 0;  // surviving cluster id (smallest contained node index)
    size_t cluster_b = 0;
    double delta_q = 0.0;
    double q_after = 0.0;
};

struct CnmResult {
    Clustering clustering;
    double peak_modularity = 0.0;
    std::vector<CnmMerge> trace;
};

/// Greedy modularity agglomeration over the weighted graph. Starts from
/// singletons, repeatedly applies the merge with the largest positive gain
/// (ties: lexicographically smallest (min id, max id)), and stops when no
/// merge improves Q. A zero-weight network stays as singletons.
inline CnmResult cnm_cluster_trace(const SummaryNetwork& network) {
    const size_t n = network.size();
    if (n == 0) throw_validation("cnm_cluster: empty network");
    CnmResult result;

    std::vector<double> degree(n, 0.0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) degree[i] += network.weight(i, j);
    double two_m = 0.0;
    for (size_t i = 0; i < n; ++i) two_m += degree[i];

    std::vector<std::vector<size_t>> members(n);
    for (size_t i = 0; i < n; ++i) members[i] = {i};

    if (two_m <= 0.0) {
        result.clustering = make_clustering(network, std::move(members));
        result.peak_modularity = 0.0;
        return result;
    }

    // e[a][b]: fraction of total weight between clusters a and b; e[a][a]
    // holds the intra-cluster fraction. a_frac[c] = K_c / 2m.
    std::vector<std::vector<double>> e(n, std::vector<double>(n, 0.0));
    std::vector<double> a_frac(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        a_frac[i] = degree[i] / two_m;
        for (size_t j = 0; j < n; ++j)
            if (i != j) e[i][j] = network.weight(i, j) / two_m;
    }
    std::vector<bool> active(n, true);
    double q = 0.0;
    for (size_t i = 0; i < n; ++i) q -= a_frac[i] * a_frac[i];

    while (true) {
        double best_gain = 0.0;
        size_t best_a = n, best_b = n;
        for (size_t a = 0; a < n; ++a) {
            if (!active[a]) continue;
            for (size_t b = a + 1; b < n; ++b) {
                if (!active[b]) continue;
                double gain = 2.0 * (e[a][b] - a_frac[a] * a_frac[b]);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a == n) break;  // no merge with positive gain

        // Fold b into a (a < b keeps the smallest contained node index).
        e[best_a][best_a] += e[best_b][best_b] + 2.0 * e[best_a][best_b];
        for (size_t c = 0; c < n; ++c) {
            if (!active[c] || c == best_a || c == best_b) continue;
            e[best_a][c] += e[best_b][c];
            e[c][best_a] = e[best_a][c];
        }
        a_frac[best_a] += a_frac[best_b];
        active[best_b] = false;
        members[best_a].insert(members[best_a].end(), members[best_b].begin(),
                               members[best_b].end());
        members[best_b].clear();
        q += best_gain;
        result.trace.push_back({best_a, best_b, best_gain, q});
    }

    std::vector<std::vector<size_t>> groups;
    for (size_t c = 0; c < n; ++c)
        if (active[c]) groups.push_back(std::move(members[c]));
    result.clustering = make_clustering(network, std::move(groups));
    result.peak_modularity = q;
    return result;
}

inline Clustering cnm_cluster(const SummaryNetwork& network) {
    return cnm_cluster_trace(network).clustering;
}

/// Sentence -> fact-class label; fact-free sentences carry no entry.
struct FactLabeling {
    std::map<SentenceId, std::string> labels;
};

/// Assigns each sentence its contained fact with the highest global
/// occurrence count, ties broken by fact order in the matrix.
inline FactLabeling fact_labeling(const FactMatrix& matrix) {
    FactLabeling labeling;
    auto counts = fact_counts(matrix);
    for (size_t r = 0; r < matrix.rows.size(); ++r) {
        int best_count = -1;
        size_t best_fact = matrix.facts.size();
        for (size_t f = 0; f < matrix.facts.size(); ++f) {
            if (matrix.rows[r][f] && counts[f] > best_count) {
                best_count = counts[f];
                best_fact = f;
            }
        }
        if (best_fact < matrix.facts.size())
            labeling.labels.emplace(matrix.row_ids[r], matrix.facts[best_fact]);
    }
    return labeling;
}

/// purity = (1/N) * sum_k max_j |cluster_k intersect class_j| over labeled
/// sentences only; unlabeled sentences are excluded from both the numerator
/// and N.
inline double purity(const Clustering& clustering, const FactLabeling& labeling) {
    size_t labeled = 0;
    size_t correct = 0;
    for (const auto& members : clustering.clusters) {
        std::map<std::string, size_t> votes;
        for (const auto& id : members) {
            auto it = labeling.labels.find(id);
            if (it == labeling.labels.end()) continue;
            ++votes[it->second];
            ++labeled;
        }
        size_t best = 0;
        for (const auto& [label, count] : votes) best = std::max(best, count);
        correct += best;
    }
    if (labeled == 0) throw_validation("purity: no labeled sentences");
    return static_cast<double>(correct) / static_cast<double>(labeled);
}

inline void save_clustering_json(std::ostream& out, const Clustering& clustering,
                                 double modularity_value) {
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& members : clustering.clusters) {
        nlohmann::json group = nlohmann::json::array();
        for (const auto& id : members) group.push_back(id.str());
        clusters.push_back(std::move(group));
    }
    nlohmann::json doc = {{"clusters", std::move(clusters)},
                          {"modularity", modularity_value}};
    out << doc.dump(2) << '\n';
}

}  // namespace citesum

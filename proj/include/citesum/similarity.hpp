#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "citesum/corpus.hpp"
#include "citesum/error.hpp"

namespace citesum {

/// Smoothed IDF: ln((N+1)/(df+1)) + 1, finite for unseen tokens.
inline double idf_value(const DfTable& table, const std::string& token) {
    return std::log((table.num_docs + 1.0) / (table.df_of(token) + 1.0)) + 1.0;
}

namespace detail {

template <class IdfFn>
std::map<std::string, double> term_weights(const std::vector<std::string>& tokens,
                                           IdfFn&& idf) {
    std::map<std::string, double> tf;
    for (const auto& t : tokens) tf[t] += 1.0;
    for (auto& [t, w] : tf) w *= idf(t);
    return tf;
}

/// Cosine of the two weighted term vectors. Sentences with no tokens score 0;
/// identical weighted vectors score exactly 1.
template <class IdfFn>
double weighted_cosine(const std::vector<std::string>& a,
                       const std::vector<std::string>& b, IdfFn&& idf) {
    if (a.empty() || b.empty()) return 0.0;
    auto wa = term_weights(a, idf);
    auto wb = term_weights(b, idf);
    if (wa == wb) return 1.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (const auto& [t, w] : wa) {
        na += w * w;
        auto it = wb.find(t);
        if (it != wb.end()) dot += w * it->second;
    }
    for (const auto& [t, w] : wb) nb += w * w;
    if (dot <= 0.0 || na <= 0.0 || nb <= 0.0) return 0.0;
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

}  // namespace detail

inline double tfidf_cosine(const CitationSentence& a, const CitationSentence& b,
                           const DfTable& df) {
    if (df.num_docs < 1) throw_validation("tfidf_cosine: empty df table");
    return detail::weighted_cosine(a.tokens, b.tokens,
                                   [&](const std::string& t) { return idf_value(df, t); });
}

inline double tf_cosine(const CitationSentence& a, const CitationSentence& b) {
    return detail::weighted_cosine(a.tokens, b.tokens, [](const std::string&) { return 1.0; });
}

/// Length of the longest common contiguous character substring.
inline size_t longest_common_substring(std::string_view a, std::string_view b) {
    if (a.empty() || b.empty()) return 0;
    std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    size_t best = 0;
    for (size_t i = 1; i <= a.size(); ++i) {
        for (size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
            best = std::max(best, cur[j]);
        }
        std::swap(prev, cur);
    }
    return best;
}

/// LCSS length normalized by the longer raw text. Two empty texts score 0.
inline double lcss_similarity(const CitationSentence& a, const CitationSentence& b) {
    size_t longer = std::max(a.text.size(), b.text.size());
    if (longer == 0) return 0.0;
    return static_cast<double>(longest_common_substring(a.text, b.text)) /
           static_cast<double>(longer);
}

/// Unit-cost character edit distance (two-row dynamic program).
inline size_t edit_distance(std::string_view a, std::string_view b) {
    if (a.empty()) return b.size();
    if (b.empty()) return a.size();
    std::vector<size_t> row(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        size_t diag = row[0];
        row[0] = i;
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t up = row[j];
            size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
            diag = up;
        }
    }
    return row[b.size()];
}

/// 1 - d/max(|a|,|b|); two empty texts have distance 0 and score 1.
inline double levenshtein_similarity(const CitationSentence& a, const CitationSentence& b) {
    size_t longer = std::max(a.text.size(), b.text.size());
    if (longer == 0) return 1.0;
    return 1.0 - static_cast<double>(edit_distance(a.text, b.text)) /
                     static_cast<double>(longer);
}

inline constexpr double kDefaultGenerationMu = 1000.0;

/// Length-normalized probability that `generator`'s Dirichlet-smoothed unigram
/// model emits `target`'s tokens:
///   exp((1/|target|) * sum_t ln p(t|generator)),
///   p(t|gen) = (tf_gen(t) + mu * p_bg(t)) / (|gen| + mu).
/// The background model is p_bg(t) = df(t)/M for seen tokens (M = total df
/// mass) with floor 1/(M+V) for unseen ones. Asymmetric in general.
inline double generation_probability(const CitationSentence& generator,
                                     const CitationSentence& target, const DfTable& df,
                                     double mu = kDefaultGenerationMu) {
    if (mu <= 0.0) throw_validation("generation_probability: mu must be > 0");
    if (target.tokens.empty())
        throw_validation("generation_probability: empty target sentence");
    const double mass = static_cast<double>(df.total_mass());
    const double vocab = static_cast<double>(df.df.size());
    const double floor_p = 1.0 / std::max(mass + vocab, 1.0);
    std::map<std::string, double> tf;
    for (const auto& t : generator.tokens) tf[t] += 1.0;
    const double gen_len = static_cast<double>(generator.tokens.size());
    double log_sum = 0.0;
    for (const auto& t : target.tokens) {
        auto it = tf.find(t);
        double count = it == tf.end() ? 0.0 : it->second;
        int d = df.df_of(t);
        double p_bg = d > 0 ? static_cast<double>(d) / mass : floor_p;
        log_sum += std::log((count + mu * p_bg) / (gen_len + mu));
    }
    return std::clamp(std::exp(log_sum / static_cast<double>(target.tokens.size())), 0.0,
                      1.0);
}

// --- measure dispatch -------------------------------------------------------

enum class MeasureKind {
    tfidf_cosine,
    tf_cosine,
    lcss,
    levenshtein,
    generation_probability,
};

class SimilarityMeasure {
public:
    explicit SimilarityMeasure(MeasureKind kind, double mu = kDefaultGenerationMu)
        : kind_(kind), mu_(mu) {}

    static SimilarityMeasure from_name(std::string_view name,
                                       double mu = kDefaultGenerationMu) {
        if (name == "tfidf_cosine") return SimilarityMeasure(MeasureKind::tfidf_cosine);
        if (name == "tf_cosine") return SimilarityMeasure(MeasureKind::tf_cosine);
        if (name == "lcss") return SimilarityMeasure(MeasureKind::lcss);
        if (name == "levenshtein") return SimilarityMeasure(MeasureKind::levenshtein);
        if (name == "generation_probability")
            return SimilarityMeasure(MeasureKind::generation_probability, mu);
        throw_validation("unknown similarity measure '" + std::string(name) + "'");
    }

    MeasureKind kind() const { return kind_; }
    double mu() const { return mu_; }

    bool symmetric() const { return kind_ != MeasureKind::generation_probability; }

    std::string_view name() const {
        switch (kind_) {
            case MeasureKind::tfidf_cosine: return "tfidf_cosine";
            case MeasureKind::tf_cosine: return "tf_cosine";
            case MeasureKind::lcss: return "lcss";
            case MeasureKind::levenshtein: return "levenshtein";
            case MeasureKind::generation_probability: return "generation_probability";
        }
        return "unknown";
    }

    /// Directional score a -> b (for generation probability, a is the
    /// generator). Symmetric measures ignore the direction.
    double score(const CitationSentence& a, const CitationSentence& b,
                 const DfTable& df) const {
        switch (kind_) {
            case MeasureKind::tfidf_cosine: return tfidf_cosine(a, b, df);
            case MeasureKind::tf_cosine: return tf_cosine(a, b);
            case MeasureKind::lcss: return lcss_similarity(a, b);
            case MeasureKind::levenshtein: return levenshtein_similarity(a, b);
            case MeasureKind::generation_probability:
                return generation_probability(a, b, df, mu_);
        }
        throw_runtime("unreachable measure kind");
    }

private:
    MeasureKind kind_;
    double mu_;
};

// --- pair ranking ------------------------------------------------------------

struct ScoredPair {
    SentenceId a;
    SentenceId b;
    double score = 0.0;
};

/// All sentence pairs sorted by score descending. Symmetric measures produce
/// the n(n-1)/2 unordered pairs, asymmetric ones all n(n-1) ordered pairs.
struct PairRanking {
    std::vector<ScoredPair> pairs;
    bool ordered = false;
};

/// Ties are broken by (first id, second id) ascending so rankings are
/// deterministic. `force_ordered` overrides the symmetry-derived pair
/// convention (used to reproduce ordered-pair counting).
inline PairRanking rank_pairs(const CitationSummary& summary,
                              const SimilarityMeasure& measure, const DfTable& df,
                              std::optional<bool> force_ordered = std::nullopt) {
    const auto& s = summary.sentences;
    if (s.size() < 2) throw_validation("rank_pairs: need at least 2 sentences");
    PairRanking ranking;
    ranking.ordered = force_ordered.value_or(!measure.symmetric());
    if (ranking.ordered) {
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = 0; j < s.size(); ++j)
                if (i != j)
                    ranking.pairs.push_back(
                        {s[i].id, s[j].id, measure.score(s[i], s[j], df)});
    } else {
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                ranking.pairs.push_back({s[i].id, s[j].id, measure.score(s[i], s[j], df)});
    }
    std::sort(ranking.pairs.begin(), ranking.pairs.end(),
              [](const ScoredPair& x, const ScoredPair& y) {
                  if (x.score != y.score) return x.score > y.score;
                  if (x.a != y.a) return x.a < y.a;
                  return x.b < y.b;
              });
    return ranking;
}

inline void save_pair_ranking_csv(std::ostream& out, const PairRanking& ranking) {
    out << "id_a,id_b,score\n";
    char buf[64];
    for (const auto& p : ranking.pairs) {
        std::snprintf(buf, sizeof(buf), "%.12g", p.score);
        out << p.a.str() << ',' << p.b.str() << ',' << buf << '\n';
    }
}

/// Number of pairs among the top k whose two sentences share at least one
/// fact.
inline int fact_sharing_at_k(const PairRanking& ranking, const FactMatrix& matrix,
                             int k) {
    if (k < 0 || static_cast<size_t>(k) > ranking.pairs.size())
        throw_validation("fact_sharing_at_k: k outside [0, pair count]");
    int shared = 0;
    for (int i = 0; i < k; ++i) {
        const auto& ra = matrix.row(ranking.pairs[i].a);
        const auto& rb = matrix.row(ranking.pairs[i].b);
        for (size_t j = 0; j < ra.size(); ++j) {
            if (ra[j] && rb[j]) {
                ++shared;
                break;
            }
        }
    }
    return shared;
}

}  // namespace citesum

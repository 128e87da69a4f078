#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "citesum/extraction.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

using namespace citesum;
using testsupport::make_network;
using testsupport::make_summary;

TEST(LexrankScores, UniformCompleteGraphIsExactlyUniform) {
    for (size_t n : {2u, 3u, 5u, 7u}) {
        auto net = make_network(n, [](size_t, size_t) { return 0.3; });
        auto scores = lexrank_scores(net);
        for (size_t i = 0; i < n; ++i)
            EXPECT_EQ(scores.score[i], 1.0 / static_cast<double>(n)) << "n=" << n;
    }
}

TEST(LexrankScores, TwoNodeSingleEdge) {
    auto net = make_network(2, [](size_t, size_t) { return 1.0; });
    auto scores = lexrank_scores(net);
    EXPECT_EQ(scores.score[0], 0.5);
    EXPECT_EQ(scores.score[1], 0.5);
}

TEST(LexrankScores, MatchesDenseLinearSolveOracle) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = 2 + rng() % 19;
        auto net = testsupport::random_network(rng, n, 0.7);
        auto scores = lexrank_scores(net, kDefaultDamping, 1e-12);
        auto oracle = oracles::stationary_distribution(net, kDefaultDamping);
        for (size_t i = 0; i < n; ++i)
            EXPECT_NEAR(scores.score[i], oracle[i], 1e-8) << "n=" << n << " i=" << i;
    }
}

TEST(LexrankScores, SumsToOneAndScaleInvariant) {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 25; ++trial) {
        size_t n = 2 + rng() % 10;
        std::vector<std::vector<double>> base(n, std::vector<double>(n, 0.0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                base[i][j] = 0.5 * testsupport::uniform01(rng);
        double scale = 0.1 + 1.8 * testsupport::uniform01(rng);
        auto net = make_network(n, [&](size_t i, size_t j) { return base[i][j]; });
        auto scaled = make_network(n, [&](size_t i, size_t j) { return scale * base[i][j]; });
        auto s1 = lexrank_scores(net, kDefaultDamping, 1e-12);
        auto s2 = lexrank_scores(scaled, kDefaultDamping, 1e-12);
        double sum = 0.0;
        for (size_t i = 0; i < n; ++i) {
            sum += s1.score[i];
            EXPECT_NEAR(s1.score[i], s2.score[i], 1e-12);
        }
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
}

TEST(LexrankScores, IsolatedNodesAreUniformlyLinked) {
    // One pair with an edge plus an isolated node: the walk stays proper.
    auto net = make_network(3, [](size_t i, size_t j) {
        return (i == 0 && j == 1) ? 1.0 : 0.0;
    });
    auto scores = lexrank_scores(net);
    double sum = scores.score[0] + scores.score[1] + scores.score[2];
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_GT(scores.score[0], scores.score[2]);
    EXPECT_EQ(scores.score[0], scores.score[1]);
}

TEST(LexrankScores, ParameterValidation) {
    auto net = make_network(2, [](size_t, size_t) { return 1.0; });
    EXPECT_THROW(lexrank_scores(net, 0.0), Error);
    EXPECT_THROW(lexrank_scores(net, 1.0), Error);
    EXPECT_THROW(lexrank_scores(net, 0.85, 0.0), Error);
    SummaryNetwork empty("X", {}, {});
    EXPECT_THROW(lexrank_scores(empty), Error);
}

TEST(CRr, RoundRobinSpecExample) {
    // Clusters A:{s1,s3} and B:{s2}; A is larger, limit 3 -> [s1, s2, s3].
    auto summary = make_summary("X", {"s one", "s two", "s three"});
    auto net = make_network(3, [](size_t, size_t) { return 0.5; });
    auto clustering = make_clustering(net, {{0, 2}, {1}});
    auto result = c_rr(clustering, summary, 3);
    ASSERT_EQ(result.sentences.size(), 3u);
    EXPECT_EQ(result.sentences[0].str(), "d1:1");
    EXPECT_EQ(result.sentences[1].str(), "d2:2");
    EXPECT_EQ(result.sentences[2].str(), "d3:3");
    EXPECT_EQ(result.method, Method::c_rr);

    auto spill = c_rr(clustering, summary, 10);
    EXPECT_EQ(spill.sentences.size(), 3u);  // capped at the available sentences
    EXPECT_THROW(c_rr(clustering, summary, 0), Error);
}

TEST(CRr, ConsumesAtMostCeilLimitOverKPerCluster) {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        size_t clusters = 2 + rng() % 3;
        size_t per_cluster = 2 + rng() % 3;
        size_t n = clusters * per_cluster;
        std::vector<std::string> texts(n, "w");
        auto summary = make_summary("X", texts);
        auto net = make_network(n, [](size_t, size_t) { return 0.5; });
        std::vector<std::vector<size_t>> groups(clusters);
        for (size_t i = 0; i < n; ++i) groups[i % clusters].push_back(i);
        auto clustering = make_clustering(net, groups);
        int limit = 1 + static_cast<int>(rng() % n);
        auto result = c_rr(clustering, summary, limit);
        size_t ceil_share =
            (static_cast<size_t>(limit) + clusters - 1) / clusters;
        std::map<size_t, size_t> used;
        for (const auto& id : result.sentences)
            ++used[clustering.assignment.at(id)];
        for (const auto& [cluster, count] : used) EXPECT_LE(count, ceil_share);
        EXPECT_EQ(result.sentences.size(), static_cast<size_t>(limit));
    }
}

TEST(CLexrank, SingletonClustersFollowClusterOrder) {
    auto net = make_network(4, [](size_t, size_t) { return 0.0; });
    auto clustering = cnm_cluster(net);  // all singletons on a zero-weight network
    auto result = c_lexrank(clustering, net, 2);
    ASSERT_EQ(result.sentences.size(), 2u);
    EXPECT_EQ(result.sentences[0].str(), "d1:1");
    EXPECT_EQ(result.sentences[1].str(), "d2:2");
}

TEST(CLexrank, SingleClusterEqualsPlainLexrank) {
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 10; ++trial) {
        size_t n = 3 + rng() % 8;
        auto net = testsupport::random_network(rng, n, 0.9);
        std::vector<size_t> all(n);
        for (size_t i = 0; i < n; ++i) all[i] = i;
        auto clustering = make_clustering(net, {all});
        for (int limit : {1, 2, static_cast<int>(n)}) {
            auto clustered = c_lexrank(clustering, net, limit);
            auto plain = lexrank_summary(net, limit);
            EXPECT_EQ(clustered.sentences, plain.sentences) << "n=" << n;
        }
    }
}

TEST(CLexrank, TwoClusterRoundRobinMatchesPerClusterOracle) {
    // Two 3-node communities with distinct internal centrality orderings.
    auto net = make_network(6, [](size_t i, size_t j) {
        if (i > j) std::swap(i, j);
        if (i == 0 && j == 1) return 0.9;
        if (i == 0 && j == 2) return 0.8;
        if (i == 1 && j == 2) return 0.1;
        if (i == 3 && j == 4) return 0.2;
        if (i == 3 && j == 5) return 0.7;
        if (i == 4 && j == 5) return 0.9;
        return 0.0;
    });
    auto clustering = make_clustering(net, {{0, 1, 2}, {3, 4, 5}});

    // Oracle: rank each cluster by the dense stationary solve on its induced
    // subgraph, then interleave starting with the first cluster.
    auto rank_cluster = [&](const std::vector<size_t>& members) {
        std::vector<SentenceId> ids;
        std::vector<double> w(members.size() * members.size(), 0.0);
        for (size_t a = 0; a < members.size(); ++a) {
            ids.push_back(net.nodes()[members[a]]);
            for (size_t b = 0; b < members.size(); ++b)
                if (a != b)
                    w[a * members.size() + b] = net.weight(members[a], members[b]);
        }
        SummaryNetwork sub("X", ids, w);
        auto p = oracles::stationary_distribution(sub, kDefaultDamping);
        std::vector<size_t> order(members.size());
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (p[a] != p[b]) return p[a] > p[b];
            return members[a] < members[b];
        });
        std::vector<SentenceId> ranked;
        for (size_t o : order) ranked.push_back(ids[o]);
        return ranked;
    };
    auto first = rank_cluster({0, 1, 2});
    auto second = rank_cluster({3, 4, 5});
    std::vector<SentenceId> expected = {first[0], second[0], first[1], second[1]};

    auto result = c_lexrank(clustering, net, 4);
    ASSERT_EQ(result.sentences.size(), 4u);
    EXPECT_EQ(result.sentences, expected);
}

TEST(LexrankSummary, UniformGraphUsesInputOrderTieBreak) {
    auto net = make_network(5, [](size_t, size_t) { return 0.4; });
    auto result = lexrank_summary(net, 3);
    ASSERT_EQ(result.sentences.size(), 3u);
    EXPECT_EQ(result.sentences[0].str(), "d1:1");
    EXPECT_EQ(result.sentences[1].str(), "d2:2");
    EXPECT_EQ(result.sentences[2].str(), "d3:3");
}

TEST(LexrankSummary, StarGraphRanksHubFirst) {
    auto net = make_network(5, [](size_t i, size_t j) {
        return (i == 0 || j == 0) ? 1.0 : 0.0;
    });
    auto result = lexrank_summary(net, 1);
    ASSERT_EQ(result.sentences.size(), 1u);
    EXPECT_EQ(result.sentences[0].str(), "d1:1");
    EXPECT_THROW(lexrank_summary(net, 0), Error);
}

TEST(RandomSummary, DeterministicAndOrderPreserving) {
    auto summary = make_summary("X", {"a", "b", "c", "d", "e", "f"});
    auto first = random_summary(summary, 3, 99);
    auto second = random_summary(summary, 3, 99);
    EXPECT_EQ(first.sentences, second.sentences);
    EXPECT_EQ(first.sentences.size(), 3u);

    auto pos = summary.position_index();
    for (size_t i = 1; i < first.sentences.size(); ++i)
        EXPECT_LT(pos.at(first.sentences[i - 1]), pos.at(first.sentences[i]));

    auto all = random_summary(summary, 42, 7);
    EXPECT_EQ(all.sentences.size(), summary.size());
    EXPECT_THROW(random_summary(summary, 0, 1), Error);
}

TEST(RandomSummary, UniformSelectionFrequencies) {
    auto summary = make_summary("X", {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"});
    std::vector<int> hits(10, 0);
    const int seeds = 10000;
    auto pos = summary.position_index();
    for (int seed = 0; seed < seeds; ++seed) {
        auto result = random_summary(summary, 5, static_cast<std::uint64_t>(seed));
        std::set<SentenceId> distinct(result.sentences.begin(), result.sentences.end());
        EXPECT_EQ(distinct.size(), 5u);
        for (const auto& id : result.sentences) ++hits[pos.at(id)];
    }
    for (int i = 0; i < 10; ++i) {
        double freq = static_cast<double>(hits[static_cast<size_t>(i)]) / seeds;
        EXPECT_NEAR(freq, 0.5, 0.02) << "sentence " << i;
    }
}

TEST(GoldSummary, SingleFactSingleSentence) {
    auto summary = make_summary("X", {"noise", "the fact", "noise"});
    auto matrix = testsupport::make_matrix(summary, {"f"}, {{0}, {1}, {0}});
    auto result = gold_summary(matrix, summary, 1);
    ASSERT_EQ(result.sentences.size(), 1u);
    EXPECT_EQ(result.sentences[0].str(), "d2:2");
}

TEST(GoldSummary, GreedyMatchesExhaustiveOnFriendlyInstance) {
    // counts: A=3, B=2, C=1; built so the greedy choice is globally optimal.
    auto summary = make_summary("X", {"s1", "s2", "s3", "s4", "s5", "s6"});
    auto matrix = testsupport::make_matrix(
        summary, {"A", "B", "C"},
        {{1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}, {0, 0, 0}});
    auto counts = fact_counts(matrix);
    const int limit = 2;
    auto result = gold_summary(matrix, summary, limit);

    auto covered_weight = [&](const std::vector<size_t>& picks) {
        std::set<size_t> facts;
        for (size_t i : picks) {
            const auto& row = matrix.rows[i];
            for (size_t f = 0; f < row.size(); ++f)
                if (row[f]) facts.insert(f);
        }
        int weight = 0;
        for (size_t f : facts) weight += counts[f];
        return weight;
    };
    int best = 0;
    for (size_t i = 0; i < summary.size(); ++i)
        for (size_t j = i + 1; j < summary.size(); ++j)
            best = std::max(best, covered_weight({i, j}));

    auto pos = summary.position_index();
    std::vector<size_t> picks;
    for (const auto& id : result.sentences) picks.push_back(pos.at(id));
    EXPECT_EQ(covered_weight(picks), best);
    EXPECT_EQ(result.sentences[0].str(), "d2:2");  // gain 5 beats gain 3
}

TEST(GoldSummary, TieBrokenByCitationOrderAndPadsWithEarliest) {
    auto summary = make_summary("X", {"s1", "s2", "s3", "s4"});
    auto matrix =
        testsupport::make_matrix(summary, {"A"}, {{0}, {1}, {1}, {0}});
    auto result = gold_summary(matrix, summary, 3);
    ASSERT_EQ(result.sentences.size(), 3u);
    EXPECT_EQ(result.sentences[0].str(), "d2:2");  // first sentence carrying A
    EXPECT_EQ(result.sentences[1].str(), "d1:1");  // zero-gain picks in input order
    EXPECT_EQ(result.sentences[2].str(), "d3:3");
}

TEST(Summaries, DistinctSentencesAndExactLength) {
    std::mt19937_64 rng(81);
    for (int trial = 0; trial < 10; ++trial) {
        size_t n = 4 + rng() % 8;
        std::vector<std::string> texts;
        for (size_t i = 0; i < n; ++i)
            texts.push_back("tok" + std::to_string(rng() % 5) + " tok" +
                            std::to_string(rng() % 5));
        auto summary = make_summary("X", texts);
        DfTable df = df_from_summary(summary);
        auto net = build_network(summary, SimilarityMeasure(MeasureKind::tf_cosine), df);
        auto clustering = cnm_cluster(net);
        int limit = 1 + static_cast<int>(rng() % (n + 2));
        size_t expect_len = std::min<size_t>(static_cast<size_t>(limit), n);
        for (const Summary& s :
             {c_rr(clustering, summary, limit), c_lexrank(clustering, net, limit),
              lexrank_summary(net, limit), random_summary(summary, limit, rng())}) {
            EXPECT_EQ(s.sentences.size(), expect_len);
            std::set<SentenceId> distinct(s.sentences.begin(), s.sentences.end());
            EXPECT_EQ(distinct.size(), s.sentences.size());
        }
    }
}

TEST(SummaryJson, SerializesIdsAndTexts) {
    auto summary = make_summary("X99-0042", {"first sentence", "second sentence"});
    auto result = random_summary(summary, 2, 5);
    std::ostringstream out;
    save_summary_json(out, result, summary);
    auto doc = nlohmann::json::parse(out.str());
    EXPECT_EQ(doc["target"], "X99-0042");
    EXPECT_EQ(doc["method"], "random");
    EXPECT_EQ(doc["limit"], 2);
    ASSERT_EQ(doc["sentences"].size(), 2u);
    EXPECT_EQ(doc["sentences"][0]["id"], "d1:1");
    EXPECT_EQ(doc["sentences"][0]["text"], "first sentence");
}

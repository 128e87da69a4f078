#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "citesum/network.hpp"

#include "test_support.hpp"

using namespace citesum;
using testsupport::make_summary;

TEST(BuildNetwork, FiftyFourNodesCompleteGraph) {
    std::vector<std::string> texts(54);
    for (size_t i = 0; i < texts.size(); ++i)
        texts[i] = "shared w" + std::to_string(i);  // every pair overlaps on "shared"
    auto summary = make_summary("P99-1065", texts);
    DfTable df = df_from_summary(summary);
    auto network = build_network(summary, SimilarityMeasure(MeasureKind::tf_cosine), df);
    EXPECT_EQ(network.size(), 54u);
    EXPECT_EQ(network.target_doc(), "P99-1065");

    std::ostringstream out;
    save_edge_list(out, network);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "# nodes: 54");
    size_t edges = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++edges;
    EXPECT_EQ(edges, 1431u);  // 54*53/2 unordered edges, all positive here
}

TEST(BuildNetwork, SingleSentenceAndEmptyInput) {
    auto summary = make_summary("X", {"only"});
    DfTable df = df_from_summary(summary);
    auto network = build_network(summary, SimilarityMeasure(MeasureKind::tf_cosine), df);
    EXPECT_EQ(network.size(), 1u);
    EXPECT_EQ(network.weight(0, 0), 0.0);

    CitationSummary empty;
    empty.target_doc = "X";
    EXPECT_THROW(build_network(empty, SimilarityMeasure(MeasureKind::tf_cosine), df), Error);
}

TEST(BuildNetwork, WeightsMatchElementwiseRecomputation) {
    auto summary = make_summary(
        "X", {"czech parser trees", "czech parser is fast", "tags reduced set",
              "tags and labels", "punctuation attachment"});
    DfTable df = df_from_summary(summary);
    SimilarityMeasure measure(MeasureKind::tfidf_cosine);
    auto network = build_network(summary, measure, df);
    for (size_t i = 0; i < summary.size(); ++i) {
        for (size_t j = 0; j < summary.size(); ++j) {
            double expected =
                i == j ? 0.0
                       : measure.score(summary.sentences[i], summary.sentences[j], df);
            EXPECT_EQ(network.weight(i, j), expected) << i << "," << j;
        }
    }
}

TEST(BuildNetwork, AsymmetricMeasureIsSymmetrizedByAveraging) {
    auto summary = make_summary("X", {"a", "a b c", "b c"});
    DfTable df = df_from_summary(summary);
    SimilarityMeasure measure(MeasureKind::generation_probability, 10.0);
    auto network = build_network(summary, measure, df);
    for (size_t i = 0; i < summary.size(); ++i) {
        for (size_t j = i + 1; j < summary.size(); ++j) {
            double forward = measure.score(summary.sentences[i], summary.sentences[j], df);
            double backward = measure.score(summary.sentences[j], summary.sentences[i], df);
            EXPECT_EQ(network.weight(i, j), 0.5 * (forward + backward));
            EXPECT_EQ(network.weight(i, j), network.weight(j, i));
        }
    }
}

TEST(BuildNetwork, PermutationEquivariant) {
    std::vector<std::string> texts = {"czech parser trees", "czech parser fast",
                                      "tags reduced", "tags labels", "punct attach"};
    auto summary = make_summary("X", texts);
    DfTable df = df_from_summary(summary);
    SimilarityMeasure measure(MeasureKind::tf_cosine);
    auto network = build_network(summary, measure, df);

    // Reverse the sentence order; ids travel with their sentences.
    CitationSummary reversed;
    reversed.target_doc = summary.target_doc;
    reversed.sentences.assign(summary.sentences.rbegin(), summary.sentences.rend());
    auto flipped = build_network(reversed, measure, df);
    const size_t n = summary.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            EXPECT_EQ(flipped.weight(i, j), network.weight(n - 1 - i, n - 1 - j));
}

TEST(Sparsify, CutoffSemantics) {
    auto network = testsupport::make_network(4, [](size_t i, size_t j) {
        return 0.05 * static_cast<double>(i + j);  // 0.05, 0.1, 0.15, 0.15, 0.2, 0.25
    });
    auto same = sparsify(network, 0.0);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) EXPECT_EQ(same.weight(i, j), network.weight(i, j));

    auto cut = sparsify(network, 0.1);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            double w = network.weight(i, j);
            EXPECT_EQ(cut.weight(i, j), w < 0.1 ? 0.0 : w);
        }

    auto none = sparsify(network, 1.0);  // all weights here are < 1
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) EXPECT_EQ(none.weight(i, j), 0.0);
}

TEST(Sparsify, IdempotentAtFixedCutoff) {
    std::mt19937_64 rng(7);
    auto network = testsupport::random_network(rng, 8);
    auto once = sparsify(network, 0.4);
    auto twice = sparsify(once, 0.4);
    for (size_t i = 0; i < 8; ++i)
        for (size_t j = 0; j < 8; ++j) EXPECT_EQ(once.weight(i, j), twice.weight(i, j));
}

TEST(SummaryNetwork, ConstructionRejectsInvariantViolations) {
    std::vector<SentenceId> nodes = {{"a", 1}, {"b", 2}};
    EXPECT_THROW(SummaryNetwork("X", nodes, {0.0, 0.5, 0.4, 0.0}), Error);  // asymmetric
    EXPECT_THROW(SummaryNetwork("X", nodes, {0.1, 0.5, 0.5, 0.0}), Error);  // diagonal
    EXPECT_THROW(SummaryNetwork("X", nodes, {0.0, 1.5, 1.5, 0.0}), Error);  // range
    EXPECT_THROW(SummaryNetwork("X", nodes, {0.0, 0.5, 0.5}), Error);       // shape
    EXPECT_NO_THROW(SummaryNetwork("X", nodes, {0.0, 0.5, 0.5, 0.0}));
}

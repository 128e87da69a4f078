#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "citesum/error.hpp"
#include "citesum/tokenize.hpp"

namespace citesum {

/// Identifies one citing sentence: the citing document plus the sentence's
/// 1-based position in the citation summary.
struct SentenceId {
    std::string citing_doc;
    int index = 0;

    auto operator<=>(const SentenceId&) const = default;

    std::string str() const { return citing_doc + ":" + std::to_string(index); }

    static SentenceId parse(const std::string& s) {
        auto pos = s.rfind(':');
        if (pos == std::string::npos || pos == 0 || pos + 1 == s.size())
            throw_parse("malformed sentence id '" + s + "' (expected doc:index)");
        SentenceId id;
        id.citing_doc = s.substr(0, pos);
        try {
            id.index = std::stoi(s.substr(pos + 1));
        } catch (const std::exception&) {
            throw_parse("malformed sentence id '" + s + "' (index is not an integer)");
        }
        return id;
    }
};

struct CitationSentence {
    SentenceId id;
    std::string text;
    std::vector<std::string> tokens;
};

/// The ordered set of sentences citing one target document. Order is the
/// canonical input order and defines "order they appear" everywhere.
struct CitationSummary {
    std::string target_doc;
    std::vector<CitationSentence> sentences;

    size_t size() const { return sentences.size(); }

    std::map<SentenceId, size_t> position_index() const {
        std::map<SentenceId, size_t> pos;
        for (size_t i = 0; i < sentences.size(); ++i) pos.emplace(sentences[i].id, i);
        return pos;
    }
};

/// Binary sentence-by-fact incidence matrix, rows aligned to the citation
/// summary order.
struct FactMatrix {
    std::vector<std::string> facts;
    std::vector<SentenceId> row_ids;
    std::vector<std::vector<std::uint8_t>> rows;

    size_t fact_index(const std::string& fact) const {
        auto it = std::find(facts.begin(), facts.end(), fact);
        if (it == facts.end()) throw_validation("unknown fact label '" + fact + "'");
        return static_cast<size_t>(it - facts.begin());
    }

    const std::vector<std::uint8_t>& row(const SentenceId& id) const {
        for (size_t i = 0; i < row_ids.size(); ++i)
            if (row_ids[i] == id) return rows[i];
        throw_validation("no fact row for sentence " + id.str());
    }
};

/// Document-frequency table over some background corpus. One table per IDF
/// policy (general, collection-specific, cluster-specific): the policy is
/// just the choice of corpus the table was built from.
struct DfTable {
    int num_docs = 0;
    std::map<std::string, int> df;

    int df_of(const std::string& token) const {
        auto it = df.find(token);
        return it == df.end() ? 0 : it->second;
    }

    long long total_mass() const {
        long long m = 0;
        for (const auto& [tok, c] : df) m += c;
        return m;
    }
};

// --- loading / saving ------------------------------------------------------

inline CitationSummary load_citation_summary(std::istream& in,
                                             const TokenizerConfig& tok_config = {}) {
    CitationSummary summary;
    std::set<SentenceId> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw_parse("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!record.is_object() || !record.contains("target") ||
            !record.contains("citing_doc") || !record.contains("index") ||
            !record.contains("text") || !record["target"].is_string() ||
            !record["citing_doc"].is_string() ||
            !record["index"].is_number_integer() || !record["text"].is_string())
            throw_parse("line " + std::to_string(line_no) +
                        ": expected {target, citing_doc, index, text}");

        CitationSentence sentence;
        sentence.id.citing_doc = record["citing_doc"].get<std::string>();
        sentence.id.index = record["index"].get<int>();
        sentence.text = record["text"].get<std::string>();
        auto target = record["target"].get<std::string>();

        if (summary.sentences.empty())
            summary.target_doc = target;
        else if (target != summary.target_doc)
            throw_validation("line " + std::to_string(line_no) + ": target '" + target +
                             "' does not match '" + summary.target_doc + "'");
        if (sentence.id.index < 1)
            throw_validation("line " + std::to_string(line_no) + ": index must be >= 1");
        if (sentence.text.empty())
            throw_validation("line " + std::to_string(line_no) + ": empty sentence text");
        if (!seen.insert(sentence.id).second)
            throw_validation("duplicate sentence id " + sentence.id.str());

        sentence.tokens = tokenize(sentence.text, tok_config);
        summary.sentences.push_back(std::move(sentence));
    }
    if (summary.sentences.empty()) throw_validation("citation summary is empty");
    return summary;
}

inline void save_citation_summary(std::ostream& out, const CitationSummary& summary) {
    for (const auto& s : summary.sentences) {
        nlohmann::json record = {{"target", summary.target_doc},
                                 {"citing_doc", s.id.citing_doc},
                                 {"index", s.id.index},
                                 {"text", s.text}};
        out << record.dump() << '\n';
    }
}

/// Loads the fact matrix and aligns its rows to `summary` order. Every
/// sentence must either have a binary row or an explicit `null` row (meaning
/// annotated as fact-free); a sentence missing from the file is an error.
inline FactMatrix load_fact_matrix(std::istream& in, const CitationSummary& summary) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw_parse(std::string("fact matrix: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("facts") || !doc.contains("rows") ||
        !doc["facts"].is_array() || !doc["rows"].is_object())
        throw_parse("fact matrix: expected {facts: [...], rows: {...}}");

    FactMatrix matrix;
    for (const auto& f : doc["facts"]) {
        if (!f.is_string()) throw_parse("fact matrix: fact labels must be strings");
        matrix.facts.push_back(f.get<std::string>());
    }
    std::set<std::string> distinct(matrix.facts.begin(), matrix.facts.end());
    if (distinct.size() != matrix.facts.size())
        throw_validation("fact matrix: fact labels are not distinct");

    const size_t m = matrix.facts.size();
    std::map<SentenceId, std::vector<std::uint8_t>> parsed;
    for (const auto& [key, value] : doc["rows"].items()) {
        SentenceId id = SentenceId::parse(key);
        std::vector<std::uint8_t> row(m, 0);
        if (!value.is_null()) {
            if (!value.is_array() || value.size() != m)
                throw_validation("fact matrix: row " + key + " must have " +
                                 std::to_string(m) + " entries");
            for (size_t j = 0; j < m; ++j) {
                if (!value[j].is_number_integer())
                    throw_validation("fact matrix: non-binary entry in row " + key);
                auto v = value[j].get<long long>();
                if (v != 0 && v != 1)
                    throw_validation("fact matrix: non-binary entry in row " + key);
                row[j] = static_cast<std::uint8_t>(v);
            }
        }
        if (!parsed.emplace(id, std::move(row)).second)
            throw_validation("fact matrix: duplicate row for " + key);
    }

    auto positions = summary.position_index();
    for (const auto& [id, row] : parsed)
        if (!positions.count(id))
            throw_validation("fact matrix: unknown sentence id " + id.str());
    for (const auto& s : summary.sentences) {
        auto it = parsed.find(s.id);
        if (it == parsed.end())
            throw_validation("fact matrix: missing row for sentence " + s.id.str());
        matrix.row_ids.push_back(s.id);
        matrix.rows.push_back(std::move(it->second));
    }
    return matrix;
}

inline void save_fact_matrix(std::ostream& out, const FactMatrix& matrix) {
    nlohmann::json rows = nlohmann::json::object();
    for (size_t i = 0; i < matrix.rows.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (auto v : matrix.rows[i]) row.push_back(static_cast<int>(v));
        rows[matrix.row_ids[i].str()] = std::move(row);
    }
    nlohmann::json doc = {{"facts", matrix.facts}, {"rows", std::move(rows)}};
    out << doc.dump(2) << '\n';
}

/// Per-fact occurrence counts: column sums of the matrix, aligned with
/// `matrix.facts`.
inline std::vector<int> fact_counts(const FactMatrix& matrix) {
    std::vector<int> counts(matrix.facts.size(), 0);
    for (const auto& row : matrix.rows)
        for (size_t j = 0; j < row.size(); ++j) counts[j] += row[j];
    return counts;
}

/// Builds a document-frequency table: df counts the number of documents a
/// token appears in, not occurrences.
inline DfTable build_df_table(const std::vector<std::vector<std::string>>& documents) {
    if (documents.empty()) throw_validation("df table: empty corpus");
    DfTable table;
    table.num_docs = static_cast<int>(documents.size());
    for (const auto& doc : documents) {
        std::set<std::string> distinct(doc.begin(), doc.end());
        for (const auto& tok : distinct) ++table.df[tok];
    }
    return table;
}

/// One document per line, tokenized with `config`. Blank lines are skipped.
inline std::vector<std::vector<std::string>> tokenized_documents_from_lines(
    std::istream& in, const TokenizerConfig& config = {}) {
    std::vector<std::vector<std::string>> docs;
    std::string line;
    while (std::getline(in, line)) {
        auto tokens = tokenize(line, config);
        if (!tokens.empty()) docs.push_back(std::move(tokens));
    }
    return docs;
}

/// Cluster-specific fallback policy: each sentence of the citation summary
/// counts as one background document.
inline DfTable df_from_summary(const CitationSummary& summary) {
    std::vector<std::vector<std::string>> docs;
    docs.reserve(summary.sentences.size());
    for (const auto& s : summary.sentences) docs.push_back(s.tokens);
    return build_df_table(docs);
}

inline DfTable load_df_table(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw_parse(std::string("df table: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("num_docs") || !doc.contains("df") ||
        !doc["num_docs"].is_number_integer() || !doc["df"].is_object())
        throw_parse("df table: expected {num_docs: int, df: {...}}");
    DfTable table;
    table.num_docs = doc["num_docs"].get<int>();
    if (table.num_docs < 1) throw_validation("df table: num_docs must be >= 1");
    for (const auto& [tok, value] : doc["df"].items()) {
        if (!value.is_number_integer())
            throw_validation("df table: df counts must be integers");
        int c = value.get<int>();
        if (c < 1 || c > table.num_docs)
            throw_validation("df table: df for '" + tok + "' outside [1, num_docs]");
        table.df[tok] = c;
    }
    return table;
}

inline void save_df_table(std::ostream& out, const DfTable& table) {
    nlohmann::json doc = {{"num_docs", table.num_docs}, {"df", table.df}};
    out << doc.dump(2) << '\n';
}

}  // namespace citesum

#pragma once

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace citesum {

/// Tokenizer switches. Defaults keep every token: no stopword removal,
/// no stemming.
struct TokenizerConfig {
    bool remove_stopwords = false;
    bool stem = false;
};

namespace detail {

inline const std::unordered_set<std::string>& stopword_set() {
    static const std::unordered_set<std::string> words = {
        "a",    "an",    "and",   "are",   "as",    "at",    "be",   "been",
        "but",  "by",    "can",   "could", "did",   "do",    "does", "for",
        "from", "had",   "has",   "have",  "he",    "her",   "his",  "if",
        "in",   "into",  "is",    "it",    "its",   "may",   "no",   "not",
        "of",   "on",    "or",    "our",   "she",   "should", "so",  "such",
        "than", "that",  "the",   "their", "then",  "there", "these", "they",
        "this", "those", "to",    "was",   "we",    "were",  "which", "who",
        "will", "with",  "would",
    };
    return words;
}

// Porter stemmer. Operates on lowercase ASCII words; callers skip tokens
// that carry digits.
class PorterStemmer {
public:
    static std::string stem(std::string w) {
        if (w.size() < 3) return w;
        PorterStemmer s(std::move(w));
        s.step1a();
        s.step1b();
        s.step1c();
        s.step2();
        s.step3();
        s.step4();
        s.step5a();
        s.step5b();
        return std::move(s.w_);
    }

private:
    explicit PorterStemmer(std::string w) : w_(std::move(w)) {}

    bool is_consonant(size_t i) const {
        char c = w_[i];
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
        if (c == 'y') return i == 0 ? true : !is_consonant(i - 1);
        return true;
    }

    // Number of vowel-consonant transitions in w_[0..end): Porter's m.
    int measure(size_t end) const {
        int m = 0;
        bool prev_vowel = false;
        for (size_t i = 0; i < end; ++i) {
            bool vowel = !is_consonant(i);
            if (!vowel && prev_vowel) ++m;
            prev_vowel = vowel;
        }
        return m;
    }

    bool has_vowel(size_t end) const {
        for (size_t i = 0; i < end; ++i)
            if (!is_consonant(i)) return true;
        return false;
    }

    bool ends_with(std::string_view suffix) const {
        return w_.size() >= suffix.size() &&
               std::string_view(w_).substr(w_.size() - suffix.size()) == suffix;
    }

    size_t stem_len(std::string_view suffix) const { return w_.size() - suffix.size(); }

    bool double_consonant_at_end() const {
        size_t n = w_.size();
        return n >= 2 && w_[n - 1] == w_[n - 2] && is_consonant(n - 1);
    }

    // cvc at the end of w_[0..end), where the final consonant is not w, x or y.
    bool cvc_at(size_t end) const {
        if (end < 3) return false;
        if (!is_consonant(end - 3) || is_consonant(end - 2) || !is_consonant(end - 1))
            return false;
        char c = w_[end - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    void replace_suffix(std::string_view suffix, std::string_view repl) {
        w_.resize(w_.size() - suffix.size());
        w_.append(repl);
    }

    void step1a() {
        if (ends_with("sses")) replace_suffix("sses", "ss");
        else if (ends_with("ies")) replace_suffix("ies", "i");
        else if (ends_with("ss")) {}
        else if (ends_with("s")) replace_suffix("s", "");
    }

    void step1b() {
        if (ends_with("eed")) {
            if (measure(stem_len("eed")) > 0) replace_suffix("eed", "ee");
            return;
        }
        bool stripped = false;
        if (ends_with("ed") && has_vowel(stem_len("ed"))) {
            replace_suffix("ed", "");
            stripped = true;
        } else if (ends_with("ing") && has_vowel(stem_len("ing"))) {
            replace_suffix("ing", "");
            stripped = true;
        }
        if (!stripped) return;
        if (ends_with("at")) replace_suffix("at", "ate");
        else if (ends_with("bl")) replace_suffix("bl", "ble");
        else if (ends_with("iz")) replace_suffix("iz", "ize");
        else if (double_consonant_at_end()) {
            char c = w_.back();
            if (c != 'l' && c != 's' && c != 'z') w_.pop_back();
        } else if (measure(w_.size()) == 1 && cvc_at(w_.size())) {
            w_.push_back('e');
        }
    }

    void step1c() {
        if (ends_with("y") && has_vowel(stem_len("y"))) w_.back() = 'i';
    }

    void rule_m0(std::string_view suffix, std::string_view repl, bool& done) {
        if (done || !ends_with(suffix)) return;
        done = true;  // longest match in the table decides the step
        if (measure(stem_len(suffix)) > 0) replace_suffix(suffix, repl);
    }

    void step2() {
        bool done = false;
        rule_m0("ational", "ate", done);
        rule_m0("tional", "tion", done);
        rule_m0("enci", "ence", done);
        rule_m0("anci", "ance", done);
        rule_m0("izer", "ize", done);
        rule_m0("abli", "able", done);
        rule_m0("alli", "al", done);
        rule_m0("entli", "ent", done);
        rule_m0("eli", "e", done);
        rule_m0("ousli", "ous", done);
        rule_m0("ization", "ize", done);
        rule_m0("ation", "ate", done);
        rule_m0("ator", "ate", done);
        rule_m0("alism", "al", done);
        rule_m0("iveness", "ive", done);
        rule_m0("fulness", "ful", done);
        rule_m0("ousness", "ous", done);
        rule_m0("aliti", "al", done);
        rule_m0("iviti", "ive", done);
        rule_m0("biliti", "ble", done);
    }

    void step3() {
        bool done = false;
        rule_m0("icate", "ic", done);
        rule_m0("ative", "", done);
        rule_m0("alize", "al", done);
        rule_m0("iciti", "ic", done);
        rule_m0("ical", "ic", done);
        rule_m0("ful", "", done);
        rule_m0("ness", "", done);
    }

    bool rule_m1(std::string_view suffix, bool& done) {
        if (done || !ends_with(suffix)) return false;
        done = true;
        if (measure(stem_len(suffix)) > 1) {
            replace_suffix(suffix, "");
            return true;
        }
        return false;
    }

    void step4() {
        bool done = false;
        rule_m1("ement", done);
        rule_m1("ance", done);
        rule_m1("ence", done);
        rule_m1("able", done);
        rule_m1("ible", done);
        rule_m1("ment", done);
        if (!done && ends_with("ion")) {
            done = true;
            size_t sl = stem_len("ion");
            if (measure(sl) > 1 && sl > 0 && (w_[sl - 1] == 's' || w_[sl - 1] == 't'))
                replace_suffix("ion", "");
        }
        rule_m1("ant", done);
        rule_m1("ent", done);
        rule_m1("ism", done);
        rule_m1("ate", done);
        rule_m1("iti", done);
        rule_m1("ous", done);
        rule_m1("ive", done);
        rule_m1("ize", done);
        rule_m1("al", done);
        rule_m1("er", done);
        rule_m1("ic", done);
        rule_m1("ou", done);
    }

    void step5a() {
        if (!ends_with("e")) return;
        int m = measure(w_.size() - 1);
        if (m > 1 || (m == 1 && !cvc_at(w_.size() - 1))) w_.pop_back();
    }

    void step5b() {
        if (w_.size() >= 2 && w_.back() == 'l' && double_consonant_at_end() &&
            measure(w_.size()) > 1)
            w_.pop_back();
    }

    std::string w_;
};

}  // namespace detail

/// Porter-stem a lowercase word. Words shorter than three characters are
/// returned unchanged.
inline std::string porter_stem(std::string word) {
    return detail::PorterStemmer::stem(std::move(word));
}

inline bool is_stopword(const std::string& token) {
    return detail::stopword_set().count(token) > 0;
}

/// Lowercase `text` and split it on runs of non-alphanumeric bytes.
/// Digit-bearing tokens are kept as-is (never stemmed); stopword removal
/// runs before stemming when both are enabled. Deterministic, never
/// produces empty tokens; empty input yields an empty list.
inline std::vector<std::string> tokenize(std::string_view text,
                                         const TokenizerConfig& config = {}) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.empty()) return;
        std::string tok = std::move(current);
        current.clear();
        if (config.remove_stopwords && is_stopword(tok)) return;
        if (config.stem && tok.find_first_of("0123456789") == std::string::npos)
            tok = porter_stem(std::move(tok));
        if (!tok.empty()) tokens.push_back(std::move(tok));
    };
    for (unsigned char c : text) {
        if (std::isalnum(c))
            current.push_back(static_cast<char>(std::tolower(c)));
        else
            flush();
    }
    flush();
    return tokens;
}

}  // namespace citesum

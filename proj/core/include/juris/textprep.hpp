#pragma once

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

namespace juris::text {

/// Tokenized document. `tokens` are lowercased maximal alphanumeric runs,
/// `raw` keeps the original-case surface form of each token.
struct TokenStream {
    std::vector<std::string> tokens;
    std::vector<std::string> raw;
    /// One-past-the-end token index of each sentence; strictly increasing,
    /// last entry equals tokens.size(). Empty when there are no tokens.
    std::vector<std::size_t> sentence_boundaries;
    /// Indices i such that a phrase delimiter (punctuation or a sentence
    /// break) occurs between tokens[i-1] and tokens[i].
    std::vector<std::size_t> phrase_breaks;

    bool empty() const { return tokens.empty(); }
    std::size_t size() const { return tokens.size(); }
};

struct StopwordList {
    std::unordered_set<std::string> words;
    std::string source = "builtin";

    bool contains(const std::string& w) const { return words.count(w) > 0; }
    bool empty() const { return words.empty(); }
    std::size_t size() const { return words.size(); }
};

/// Bundled English stop-word list (~170 lowercased words).
StopwordList builtin_stopwords();

/// One word per line, UTF-8, '#' comments allowed.
StopwordList load_stopwords(const std::string& path);

/// Split on [.?!] followed by whitespace and a capital letter, with an
/// abbreviation guard list (No, Mr, v, Art, ...). Never yields empty strings.
std::vector<std::string> split_sentences(const std::string& text);

TokenStream tokenize(const std::string& text);

/// Optional stop-word removal (applied when the list is non-empty) followed
/// by Porter stemming when stem is true. Boundaries are remapped.
TokenStream preprocess(const TokenStream& ts, bool stem, const StopwordList& stopwords);

/// Porter (1980) stemmer, behaviour of the canonical implementation.
/// Tokens containing non-letters are returned unchanged (lowercased).
std::string porter_stem(const std::string& word);

/// Default keyword-candidacy predicate: token contains at least one letter.
bool is_content_token(const std::string& token);

}  // namespace juris::text

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "juris/textprep.hpp"

namespace juris::keywords {

enum class Extractor { TextRank, Rake, Yake, Lda };
std::string to_string(Extractor e);
Extractor extractor_from_string(const std::string& name);  // throws UnsupportedFormat

enum class ScoreDirection { HigherBetter, LowerBetter };

struct RankedKeywords {
    Extractor extractor = Extractor::TextRank;
    std::vector<std::pair<std::string, double>> items;  // best first, unique keywords
    ScoreDirection direction = ScoreDirection::HigherBetter;
};

/// Result of one damped score iteration, exposed so convergence behaviour
/// is testable. scores follow the vertex order passed in.
struct IterationTrace {
    std::vector<double> scores;
    std::vector<double> residuals;  // L1 residual after each sweep
    std::size_t iterations = 0;
};

/// Damped vertex scoring S(i) = (1-d) + d * sum_j w(j,i)/outweight(j) * S(j)
/// over a weighted undirected adjacency, iterated until the L1 residual
/// drops below tol. Used by both keyword and sentence ranking.
IterationTrace damped_rank(const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency,
                           double damping, double tol, std::size_t max_iter);

struct TextRankOptions {
    double damping = 0.85;
    std::size_t window = 4;
    double tol = 1e-6;
    std::size_t max_iter = 100;
    bool stem = true;
};

/// Co-occurrence TextRank over stemmed, stop-word-filtered content tokens.
/// Throws EmptyDocument when the stream has no tokens at all.
RankedKeywords textrank_keywords(const text::TokenStream& doc, const text::StopwordList& stopwords,
                                 std::size_t top_k, const TextRankOptions& opts = {});

/// Candidate phrases are maximal token runs between stop-words and phrase
/// delimiters; word score deg(w)/freq(w); phrase score is the sum.
RankedKeywords rake_keywords(const text::TokenStream& doc, const text::StopwordList& stopwords,
                             std::size_t top_k);

struct YakeOptions {
    std::size_t ngram_max = 3;
    std::size_t window = 1;          // co-occurrence distance for relatedness
    double dedup_threshold = 0.9;    // stem-overlap Jaccard
};

/// Statistical-feature extractor (casing, position, frequency, relatedness,
/// sentence dispersion); candidates combined multiplicatively, lower-better.
RankedKeywords yake_keywords(const text::TokenStream& doc, const text::StopwordList& stopwords,
                             std::size_t top_k, const YakeOptions& opts = {});

/// Combination score prod(S) / (KF * (1 + sum(S))).
double yake_combine(const std::vector<double>& term_scores, std::size_t keyword_frequency);

struct LdaOptions {
    double alpha = 0.1;   // document-topic prior, sparse (< 1)
    double beta = 0.01;   // topic-word prior, sparse (< 1)
    std::size_t iterations = 500;
    std::uint64_t seed = 1;
};

struct LdaModel {
    std::size_t topics = 1;
    double alpha = 0.1;
    double beta = 0.01;
    std::vector<std::string> vocabulary;                      // word id -> token
    std::vector<std::vector<std::size_t>> topic_word_counts;  // K x V
    std::vector<std::vector<std::size_t>> doc_topic_counts;   // M x K
    std::vector<std::vector<int>> assignments;                // per doc, per token
    std::vector<std::vector<std::size_t>> doc_words;          // word ids per doc
    std::uint64_t seed = 0;
};

/// Collapsed Gibbs sampling, deterministic for a fixed seed. Tokens without
/// a letter are excluded. Throws EmptyCorpus.
LdaModel lda_fit(const std::vector<text::TokenStream>& docs, std::size_t topics,
                 const LdaOptions& opts = {});

/// Highest-probability words of a topic under (count + beta)/(total + V*beta).
std::vector<std::pair<std::string, double>> lda_top_words(const LdaModel& m, std::size_t topic,
                                                          std::size_t n);

/// Single-document, single-topic convenience wrapper.
RankedKeywords lda_keywords(const text::TokenStream& doc, std::size_t top_k,
                            const LdaOptions& opts = {});

/// Jaccard index over the stemmed, lowercased top_k keyword sets.
double keyword_overlap(const RankedKeywords& a, const RankedKeywords& b, std::size_t top_k = 20);

/// Per court: mean pairwise overlap for every extractor pair.
struct OverlapMatrix {
    std::map<std::string, std::map<std::pair<Extractor, Extractor>, double>> by_court;
    std::map<std::string, std::size_t> case_count;
};

}  // namespace juris::keywords

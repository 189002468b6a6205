#pragma once

// Test-side reference implementations, kept independent of the library code
// paths they check.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace oracles {

/// Dense power-iteration PageRank over an explicit transition matrix.
/// Nodes are 0..n-1; edges are (from, to) pairs, duplicates ignored.
std::vector<double> dense_pagerank(std::size_t n,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                   double damping, double tol = 1e-13,
                                   std::size_t max_iter = 100000);

struct RougeOracle {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Clipped n-gram overlap computed over joined-token keys.
RougeOracle rouge_ngram(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
                        std::size_t n);

/// LCS via memoized recursion (the library uses an iterative DP table).
RougeOracle rouge_lcs(const std::vector<std::string>& cand, const std::vector<std::string>& ref);

/// Brute-force Bayes posteriors from raw labelled count vectors, one of
/// "bernoulli", "multinomial" or "complement". Probabilities are built with
/// plain products over features (no logs) and normalized.
std::array<double, 4> nb_posterior_bruteforce(
    const std::vector<std::vector<double>>& docs,  // dense feature vectors
    const std::vector<int>& labels, const std::vector<double>& query, const std::string& variant,
    double alpha);

/// Frequency ranking with the library's tie rule (count desc, token asc).
std::vector<std::string> frequency_ranking(const std::vector<std::string>& tokens, std::size_t n);

}  // namespace oracles

#include <algorithm>
#include <map>

#include "juris/errors.hpp"
#include "juris/keywords.hpp"
#include "juris/rng.hpp"

namespace juris::keywords {

LdaModel lda_fit(const std::vector<text::TokenStream>& docs, std::size_t topics,
                 const LdaOptions& opts) {
    if (topics < 1) throw ConfigError("lda topic count must be >= 1");
    if (opts.alpha <= 0.0 || opts.alpha >= 1.0 || opts.beta <= 0.0 || opts.beta >= 1.0) {
        throw ConfigError("lda priors must be sparse: alpha, beta in (0, 1)");
    }

    LdaModel model;
    model.topics = topics;
    model.alpha = opts.alpha;
    model.beta = opts.beta;
    model.seed = opts.seed;

    std::map<std::string, std::size_t> word_ids;
    for (const text::TokenStream& doc : docs) {
        std::vector<std::size_t> ids;
        for (const std::string& tok : doc.tokens) {
            if (!text::is_content_token(tok)) continue;
            auto [it, inserted] = word_ids.try_emplace(tok, word_ids.size());
            ids.push_back(it->second);
        }
        model.doc_words.push_back(std::move(ids));
    }
    const std::size_t vocab = word_ids.size();
    std::size_t total_tokens = 0;
    for (const auto& ids : model.doc_words) total_tokens += ids.size();
    if (docs.empty() || total_tokens == 0) throw EmptyCorpus();

    model.vocabulary.resize(vocab);
    for (const auto& [word, id] : word_ids) model.vocabulary[id] = word;

    const std::size_t M = model.doc_words.size();
    const std::size_t K = topics;
    model.topic_word_counts.assign(K, std::vector<std::size_t>(vocab, 0));
    model.doc_topic_counts.assign(M, std::vector<std::size_t>(K, 0));
    std::vector<std::size_t> topic_totals(K, 0);

    Rng rng(opts.seed);
    model.assignments.resize(M);
    for (std::size_t d = 0; d < M; ++d) {
        model.assignments[d].resize(model.doc_words[d].size());
        for (std::size_t n = 0; n < model.doc_words[d].size(); ++n) {
            const int z = static_cast<int>(rng.below(K));
            model.assignments[d][n] = z;
            model.topic_word_counts[z][model.doc_words[d][n]] += 1;
            model.doc_topic_counts[d][z] += 1;
            topic_totals[z] += 1;
        }
    }

    const double v_beta = static_cast<double>(vocab) * opts.beta;
    std::vector<double> weights(K);
    for (std::size_t iter = 0; iter < opts.iterations; ++iter) {
        for (std::size_t d = 0; d < M; ++d) {
            for (std::size_t n = 0; n < model.doc_words[d].size(); ++n) {
                const std::size_t w = model.doc_words[d][n];
                const int old_z = model.assignments[d][n];
                model.topic_word_counts[old_z][w] -= 1;
                model.doc_topic_counts[d][old_z] -= 1;
                topic_totals[old_z] -= 1;

                double total = 0.0;
                for (std::size_t k = 0; k < K; ++k) {
                    const double p =
                        (static_cast<double>(model.doc_topic_counts[d][k]) + opts.alpha) *
                        (static_cast<double>(model.topic_word_counts[k][w]) + opts.beta) /
                        (static_cast<double>(topic_totals[k]) + v_beta);
                    weights[k] = p;
                    total += p;
                }
                double u = rng.uniform01() * total;
                int new_z = static_cast<int>(K) - 1;
                for (std::size_t k = 0; k < K; ++k) {
                    u -= weights[k];
                    if (u <= 0.0) {
                        new_z = static_cast<int>(k);
                        break;
                    }
                }
                model.assignments[d][n] = new_z;
                model.topic_word_counts[new_z][w] += 1;
                model.doc_topic_counts[d][new_z] += 1;
                topic_totals[new_z] += 1;
            }
        }
    }
    return model;
}

std::vector<std::pair<std::string, double>> lda_top_words(const LdaModel& m, std::size_t topic,
                                                          std::size_t n) {
    if (topic >= m.topics) throw ConfigError("lda topic index out of range");
    const std::vector<std::size_t>& counts = m.topic_word_counts[topic];
    const std::size_t vocab = m.vocabulary.size();
    std::size_t total = 0;
    for (std::size_t c : counts) total += c;
    const double denom = static_cast<double>(total) + static_cast<double>(vocab) * m.beta;

    std::vector<std::pair<std::string, double>> words;
    words.reserve(vocab);
    for (std::size_t w = 0; w < vocab; ++w) {
        words.emplace_back(m.vocabulary[w],
                           (static_cast<double>(counts[w]) + m.beta) / denom);
    }
    std::sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (words.size() > n) words.resize(n);
    return words;
}

RankedKeywords lda_keywords(const text::TokenStream& doc, std::size_t top_k,
                            const LdaOptions& opts) {
    if (doc.empty()) throw EmptyDocument();
    LdaModel model = lda_fit({doc}, /*topics=*/1, opts);
    RankedKeywords result;
    result.extractor = Extractor::Lda;
    result.direction = ScoreDirection::HigherBetter;
    result.items = lda_top_words(model, 0, top_k);
    return result;
}

}  // namespace juris::keywords

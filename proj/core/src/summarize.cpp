#include "juris/summarize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "juris/errors.hpp"
#include "juris/keywords.hpp"
#include "juris/textprep.hpp"

namespace juris::summarize {

Summary textrank_summary(const corpus::Judgment& j, std::size_t budget, const SummaryOptions& opts) {
    if (budget < 1) throw ConfigError("summary budget must be >= 1");

    std::vector<corpus::Segment> body = corpus::paragraphs_of(j);
    if (body.empty()) body = j.segments;

    std::vector<std::string> sentences;
    for (const corpus::Segment& seg : body) {
        for (std::string& s : text::split_sentences(seg.text)) {
            sentences.push_back(std::move(s));
        }
    }
    if (sentences.empty()) throw EmptyDocument();

    std::vector<std::set<std::string>> token_sets(sentences.size());
    std::vector<double> sizes(sentences.size(), 0.0);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        const text::TokenStream ts = text::tokenize(sentences[i]);
        token_sets[i].insert(ts.tokens.begin(), ts.tokens.end());
        sizes[i] = static_cast<double>(ts.tokens.size());
    }

    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        for (std::size_t k = i + 1; k < sentences.size(); ++k) {
            const auto& small = token_sets[i].size() <= token_sets[k].size() ? token_sets[i]
                                                                             : token_sets[k];
            const auto& large = token_sets[i].size() <= token_sets[k].size() ? token_sets[k]
                                                                             : token_sets[i];
            std::size_t common = 0;
            for (const std::string& t : small) common += large.count(t);
            if (common == 0) continue;
            const double denom = std::log(sizes[i]) + std::log(sizes[k]);
            if (denom <= 0.0) continue;
            const double w = static_cast<double>(common) / denom;
            adjacency[i].emplace_back(k, w);
            adjacency[k].emplace_back(i, w);
        }
    }

    const keywords::IterationTrace trace =
        keywords::damped_rank(adjacency, opts.damping, opts.tol, opts.max_iter);

    std::vector<std::size_t> order(sentences.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (trace.scores[a] != trace.scores[b]) return trace.scores[a] > trace.scores[b];
        return a < b;  // ties go to the earlier sentence
    });

    Summary summary;
    summary.caseno = j.caseno;
    summary.budget = budget;
    for (std::size_t i = 0; i < order.size() && i < budget; ++i) {
        summary.sentences.push_back(
            SummarySentence{order[i], sentences[order[i]], trace.scores[order[i]]});
    }
    return summary;
}

std::string to_string(RougeVariant v) {
    switch (v) {
        case RougeVariant::Rouge1: return "rouge1";
        case RougeVariant::Rouge2: return "rouge2";
        case RougeVariant::RougeL: return "rougeL";
    }
    return "rouge1";
}

namespace {

std::vector<std::string> rouge_tokens(const std::string& s) {
    return text::tokenize(s).tokens;
}

std::size_t clipped_ngram_overlap(const std::vector<std::string>& cand,
                                  const std::vector<std::string>& ref, std::size_t n) {
    if (cand.size() < n || ref.size() < n) return 0;
    auto grams = [n](const std::vector<std::string>& toks) {
        std::map<std::vector<std::string>, std::size_t> counts;
        for (std::size_t i = 0; i + n <= toks.size(); ++i) {
            counts[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)] += 1;
        }
        return counts;
    };
    const auto cand_grams = grams(cand);
    const auto ref_grams = grams(ref);
    std::size_t overlap = 0;
    for (const auto& [gram, count] : cand_grams) {
        auto it = ref_grams.find(gram);
        if (it != ref_grams.end()) overlap += std::min(count, it->second);
    }
    return overlap;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 1; k <= m; ++k) {
            cur[k] = a[i - 1] == b[k - 1] ? prev[k - 1] + 1 : std::max(prev[k], cur[k - 1]);
        }
        prev.swap(cur);
    }
    return prev[m];
}

RougeScore from_counts(RougeVariant variant, std::size_t overlap, std::size_t cand_units,
                       std::size_t ref_units) {
    RougeScore score;
    score.variant = variant;
    score.precision = cand_units > 0 ? static_cast<double>(overlap) / static_cast<double>(cand_units) : 0.0;
    score.recall = ref_units > 0 ? static_cast<double>(overlap) / static_cast<double>(ref_units) : 0.0;
    const double pr = score.precision + score.recall;
    score.f1 = pr > 0.0 ? 2.0 * score.precision * score.recall / pr : 0.0;
    return score;
}

}  // namespace

RougeScore rouge(const std::string& candidate, const std::string& reference, RougeVariant variant) {
    const std::vector<std::string> cand = rouge_tokens(candidate);
    const std::vector<std::string> ref = rouge_tokens(reference);
    switch (variant) {
        case RougeVariant::Rouge1: {
            const std::size_t overlap = clipped_ngram_overlap(cand, ref, 1);
            return from_counts(variant, overlap, cand.size(), ref.size());
        }
        case RougeVariant::Rouge2: {
            const std::size_t overlap = clipped_ngram_overlap(cand, ref, 2);
            const std::size_t cu = cand.size() > 1 ? cand.size() - 1 : 0;
            const std::size_t ru = ref.size() > 1 ? ref.size() - 1 : 0;
            return from_counts(variant, overlap, cu, ru);
        }
        case RougeVariant::RougeL: {
            const std::size_t lcs = lcs_length(cand, ref);
            return from_counts(variant, lcs, cand.size(), ref.size());
        }
    }
    return {};
}

}  // namespace juris::summarize

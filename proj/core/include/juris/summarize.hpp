#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "juris/corpus.hpp"

namespace juris::summarize {

struct SummarySentence {
    std::size_t index = 0;  // position in the document's sentence sequence
    std::string text;
    double score = 0.0;
};

struct Summary {
    std::string caseno;
    std::vector<SummarySentence> sentences;  // score desc, index asc on ties
    std::size_t budget = 1;
};

struct SummaryOptions {
    double damping = 0.85;
    double tol = 1e-6;
    std::size_t max_iter = 100;
};

/// Extractive summary over the judgment's para segments (all segments when
/// there are no paras). Sentence graph weights are
/// |common tokens| / (log|Si| + log|Sj|), zero when undefined.
/// Throws EmptyDocument.
Summary textrank_summary(const corpus::Judgment& j, std::size_t budget = 1,
                         const SummaryOptions& opts = {});

enum class RougeVariant { Rouge1, Rouge2, RougeL };
std::string to_string(RougeVariant v);

struct RougeScore {
    RougeVariant variant = RougeVariant::Rouge1;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// rouge1/rouge2 use clipped n-gram multiset overlap; rougeL uses the token
/// LCS length. Empty candidate or reference scores 0 without error.
RougeScore rouge(const std::string& candidate, const std::string& reference, RougeVariant variant);

}  // namespace juris::summarize

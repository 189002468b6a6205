#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "juris/citegraph.hpp"
#include "juris/classify.hpp"
#include "juris/corpus.hpp"
#include "juris/keywords.hpp"
#include "juris/sentiment.hpp"
#include "juris/summarize.hpp"

namespace juris::pipeline {

struct PipelineConfig {
    std::string corpus_dir;
    std::string output_dir;
    double damping = 0.85;
    std::size_t top_k_pagerank = 20;
    std::set<keywords::Extractor> keyword_methods = {
        keywords::Extractor::TextRank, keywords::Extractor::Rake, keywords::Extractor::Yake,
        keywords::Extractor::Lda};
    std::optional<std::string> stopwords_path;
    std::string lexicon_path;
    std::uint64_t seed = 1;

    std::size_t top_k_keywords = 20;
    std::size_t summary_budget = 1;
    std::size_t jobs = 1;
    std::optional<std::string> patterns_path;
    bool stem = true;
};

/// Flat key=value file, '#' comments. Unknown keys are an error.
void apply_config_file(PipelineConfig& cfg, const std::string& path);
PipelineConfig load_config_file(const std::string& path);

struct StageStatus {
    std::string stage;
    std::string message;
};

struct PipelineResult {
    bool ok = true;
    std::vector<StageStatus> stages;   // completed stages with a short note
    std::string failed_stage;          // set when ok == false
    std::string message;
};

/// ingest -> graph -> pagerank -> keywords/overlap -> summaries -> sentiment
/// -> per-case reports. Artifacts land under cfg.output_dir; a rerun with
/// the same seed rewrites them byte-identically.
PipelineResult run_pipeline(const PipelineConfig& cfg);

struct CaseReport {
    std::string caseno;
    double pagerank_score = 0.0;
    std::map<keywords::Extractor, keywords::RankedKeywords> keyword_sections;
    summarize::Summary summary;
    sentiment::ParagraphSentimentSeries sentiment_series;
    std::map<std::size_t, classify::Label> paragraph_tags;  // empty => skipped
};

/// Assemble the per-case exhibit on demand. Throws UnknownCase.
CaseReport report_case(const std::string& case_key, const PipelineConfig& cfg);

/// JSON rendering of a report (the same document run_pipeline writes).
std::string case_report_json(const CaseReport& report);

/// Map paragraph index -> label name, read from a predictions JSON file
/// ({"1": "About", ...} or [{"index": 1, "label": "About"}, ...]).
std::map<std::size_t, std::string> load_tags_file(const std::string& path);

/// Run fn(i) for i in [0, count) on up to jobs threads; results ordered.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace juris::pipeline

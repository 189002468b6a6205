#include "juris/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "juris/csv.hpp"
#include "juris/errors.hpp"

namespace juris::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::set<keywords::Extractor> parse_methods(const std::string& value) {
    std::set<keywords::Extractor> methods;
    std::stringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) methods.insert(keywords::extractor_from_string(item));
    }
    if (methods.empty()) throw ConfigError("keyword_methods lists no extractor");
    return methods;
}

}  // namespace

void apply_config_file(PipelineConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            if (key == "corpus_dir") cfg.corpus_dir = value;
            else if (key == "output_dir") cfg.output_dir = value;
            else if (key == "damping") cfg.damping = std::stod(value);
            else if (key == "top_k_pagerank") cfg.top_k_pagerank = std::stoul(value);
            else if (key == "top_k_keywords") cfg.top_k_keywords = std::stoul(value);
            else if (key == "summary_budget") cfg.summary_budget = std::stoul(value);
            else if (key == "keyword_methods") cfg.keyword_methods = parse_methods(value);
            else if (key == "stopwords") cfg.stopwords_path = value;
            else if (key == "lexicon") cfg.lexicon_path = value;
            else if (key == "patterns") cfg.patterns_path = value;
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "jobs") cfg.jobs = std::stoul(value);
            else if (key == "stem") cfg.stem = value == "true" || value == "1";
            else throw ConfigError("unknown config key: " + key);
        } catch (const std::invalid_argument&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": bad value for " + key);
        }
    }
}

PipelineConfig load_config_file(const std::string& path) {
    PipelineConfig cfg;
    apply_config_file(cfg, path);
    return cfg;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    const std::size_t workers = std::max<std::size_t>(1, std::min(jobs, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (std::thread& t : pool) t.join();
}

namespace {

struct CaseAnalysis {
    std::string key;                      // canonical citation key
    const corpus::Judgment* judgment = nullptr;
    std::map<keywords::Extractor, keywords::RankedKeywords> keyword_sections;
    summarize::Summary summary;
    sentiment::ParagraphSentimentSeries sentiment_series;
};

std::string canonical_key(const std::string& caseno) {
    auto key = cite::normalize_citation(caseno);
    if (key) return key->text;
    return caseno;
}

std::string sanitize_filename(const std::string& key) {
    std::string out;
    for (char c : key) {
        out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    }
    return out;
}

keywords::RankedKeywords run_extractor(keywords::Extractor method, const text::TokenStream& ts,
                                       const text::StopwordList& stopwords,
                                       const PipelineConfig& cfg) {
    switch (method) {
        case keywords::Extractor::TextRank:
            return keywords::textrank_keywords(
                ts, stopwords, cfg.top_k_keywords,
                {.damping = cfg.damping, .stem = cfg.stem});
        case keywords::Extractor::Rake:
            return keywords::rake_keywords(ts, stopwords, cfg.top_k_keywords);
        case keywords::Extractor::Yake:
            return keywords::yake_keywords(ts, stopwords, cfg.top_k_keywords);
        case keywords::Extractor::Lda: {
            keywords::LdaOptions opts;
            opts.seed = cfg.seed;
            const text::TokenStream filtered = text::preprocess(ts, /*stem=*/false, stopwords);
            return keywords::lda_keywords(filtered, cfg.top_k_keywords, opts);
        }
    }
    throw ConfigError("unhandled keyword extractor");
}

std::string document_text(const corpus::Judgment& j) {
    std::string text;
    for (const corpus::Segment& seg : j.segments) {
        if (!text.empty()) text += '\n';
        text += seg.text;
    }
    return text;
}

CaseAnalysis analyze_case(const corpus::Judgment& j, const text::StopwordList& stopwords,
                          const sentiment::SentimentLexicon& lexicon, const PipelineConfig& cfg) {
    CaseAnalysis analysis;
    analysis.key = canonical_key(j.caseno);
    analysis.judgment = &j;
    const text::TokenStream ts = text::tokenize(document_text(j));
    for (keywords::Extractor method : cfg.keyword_methods) {
        analysis.keyword_sections[method] = run_extractor(method, ts, stopwords, cfg);
    }
    analysis.summary = summarize::textrank_summary(j, cfg.summary_budget, {.damping = cfg.damping});
    analysis.sentiment_series = sentiment::score_paragraphs(j, lexicon);
    return analysis;
}

json keywords_to_json(const keywords::RankedKeywords& kw) {
    json items = json::array();
    for (const auto& [keyword, score] : kw.items) {
        items.push_back({{"keyword", keyword}, {"score", score}});
    }
    return {{"direction",
             kw.direction == keywords::ScoreDirection::HigherBetter ? "higher-better"
                                                                    : "lower-better"},
            {"items", std::move(items)}};
}

json report_to_json(const CaseReport& report) {
    json root;
    root["case"] = report.caseno;
    root["pagerank"] = report.pagerank_score;
    json sections = json::object();
    for (keywords::Extractor method :
         {keywords::Extractor::TextRank, keywords::Extractor::Rake, keywords::Extractor::Yake,
          keywords::Extractor::Lda}) {
        auto it = report.keyword_sections.find(method);
        sections[keywords::to_string(method)] =
            it == report.keyword_sections.end() ? json("skipped") : keywords_to_json(it->second);
    }
    root["keywords"] = std::move(sections);
    json sentences = json::array();
    for (const auto& s : report.summary.sentences) {
        sentences.push_back({{"index", s.index}, {"score", s.score}, {"text", s.text}});
    }
    root["summary"] = {{"budget", report.summary.budget}, {"sentences", std::move(sentences)}};
    json points = json::array();
    for (const auto& p : report.sentiment_series.points) {
        json point = {{"paragraph", p.paragraph_index},
                      {"compound", p.score.compound},
                      {"pos", p.score.pos},
                      {"neg", p.score.neg},
                      {"neu", p.score.neu}};
        point["tag"] = p.tag ? json(*p.tag) : json(nullptr);
        points.push_back(std::move(point));
    }
    root["sentiment"] = std::move(points);
    if (report.paragraph_tags.empty()) {
        root["tags"] = "skipped";
    } else {
        json tags = json::object();
        for (const auto& [index, label] : report.paragraph_tags) {
            tags[std::to_string(index)] = classify::to_string(label);
        }
        root["tags"] = std::move(tags);
    }
    return root;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
}

std::string sentiment_csv(const sentiment::ParagraphSentimentSeries& series) {
    std::string out = csv::row({"paragraph_index", "compound", "pos", "neg", "neu", "tag"});
    for (const auto& p : series.points) {
        out += csv::row({std::to_string(p.paragraph_index), csv::fmt_double(p.score.compound),
                         csv::fmt_double(p.score.pos), csv::fmt_double(p.score.neg),
                         csv::fmt_double(p.score.neu), p.tag.value_or("")});
    }
    return out;
}

}  // namespace

std::map<std::size_t, std::string> load_tags_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open tags file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    json root = json::parse(buf.str(), nullptr, false);
    if (root.is_discarded()) throw MalformedJson("tags file " + path);

    std::map<std::size_t, std::string> tags;
    if (root.is_object()) {
        for (const auto& [key, value] : root.items()) {
            tags[std::stoul(key)] = value.get<std::string>();
        }
    } else if (root.is_array()) {
        for (const auto& entry : root) {
            tags[entry.at("index").get<std::size_t>()] = entry.at("label").get<std::string>();
        }
    } else {
        throw MalformedJson("tags file must hold an object or an array");
    }
    return tags;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    PipelineResult result;
    std::string stage = "setup";
    try {
        if (cfg.damping <= 0.0 || cfg.damping >= 1.0) {
            throw ConfigError("damping must lie in (0, 1)");
        }

        stage = "ingest";
        corpus::LoadResult loaded = corpus::load_corpus_dir(cfg.corpus_dir);
        if (loaded.judgments.empty()) {
            throw EmptyCorpus();
        }
        fs::create_directories(cfg.output_dir);
        fs::create_directories(fs::path(cfg.output_dir) / "graph");
        fs::create_directories(fs::path(cfg.output_dir) / "reports");
        fs::create_directories(fs::path(cfg.output_dir) / "sentiment");

        corpus::CorpusStats stats = corpus::corpus_stats(loaded.judgments);
        stats.decode_warnings = loaded.skipped;
        {
            json out;
            out["doc_count"] = stats.doc_count;
            out["total_words"] = stats.total_words;
            out["avg_words_per_doc"] = stats.avg_words_per_doc;
            out["court_histogram"] = stats.court_histogram;
            out["decode_warnings"] = stats.decode_warnings;
            write_file(fs::path(cfg.output_dir) / "corpus_stats.json", out.dump(1) + "\n");
        }
        result.stages.push_back({"ingest", std::to_string(loaded.judgments.size()) + " documents, " +
                                               std::to_string(loaded.skipped) + " skipped"});

        stage = "graph";
        const cite::PatternSet patterns =
            cfg.patterns_path ? cite::PatternSet::load(*cfg.patterns_path)
                              : cite::PatternSet::defaults();
        const cite::StateSpaceGraph state_space =
            cite::build_state_space_graph(loaded.judgments, patterns);
        const cite::CitationDiGraph graph = cite::to_digraph(state_space);
        write_file(fs::path(cfg.output_dir) / "graph" / "citation_graph.dot",
                   cite::export_graph(graph, cite::ExportFormat::Dot));
        write_file(fs::path(cfg.output_dir) / "graph" / "citation_graph.graphml",
                   cite::export_graph(graph, cite::ExportFormat::GraphMl));
        write_file(fs::path(cfg.output_dir) / "graph" / "edges.csv",
                   cite::export_graph(graph, cite::ExportFormat::EdgeCsv));
        result.stages.push_back({"graph", std::to_string(graph.node_count()) + " nodes, " +
                                              std::to_string(graph.edge_count()) + " edges"});

        stage = "pagerank";
        const cite::RankedScores ranked = cite::pagerank(graph, cfg.damping);
        {
            std::string out = csv::row({"case", "score"});
            for (const auto& [key, score] : cite::top_scores(ranked, cfg.top_k_pagerank)) {
                out += csv::row({key, csv::fmt_double(score)});
            }
            write_file(fs::path(cfg.output_dir) / "pagerank_top.csv", out);
        }
        result.stages.push_back({"pagerank", std::to_string(ranked.iterations) + " iterations"});

        stage = "analyze";
        const text::StopwordList stopwords = cfg.stopwords_path
                                                 ? text::load_stopwords(*cfg.stopwords_path)
                                                 : text::builtin_stopwords();
        const sentiment::SentimentLexicon lexicon = sentiment::load_lexicon(cfg.lexicon_path);
        std::vector<CaseAnalysis> analyses(loaded.judgments.size());
        std::vector<std::string> analysis_errors(loaded.judgments.size());
        parallel_for(loaded.judgments.size(), cfg.jobs, [&](std::size_t i) {
            try {
                analyses[i] = analyze_case(loaded.judgments[i], stopwords, lexicon, cfg);
            } catch (const std::exception& e) {
                analysis_errors[i] = loaded.judgments[i].caseno + ": " + e.what();
            }
        });
        for (const std::string& err : analysis_errors) {
            if (!err.empty()) throw Error("case analysis failed: " + err);
        }
        result.stages.push_back({"analyze", std::to_string(analyses.size()) + " cases"});

        stage = "overlap";
        {
            std::vector<keywords::Extractor> methods(cfg.keyword_methods.begin(),
                                                     cfg.keyword_methods.end());
            std::map<std::string, std::vector<const CaseAnalysis*>> by_court;
            for (const CaseAnalysis& a : analyses) {
                by_court[corpus::court_code(a.judgment->caseno)].push_back(&a);
            }
            std::string out;
            std::vector<std::string> header = {"pair"};
            for (const auto& [court, cases] : by_court) header.push_back(court);
            out += csv::row(header);
            std::vector<std::string> counts = {"case_count"};
            for (const auto& [court, cases] : by_court) {
                counts.push_back(std::to_string(cases.size()));
            }
            out += csv::row(counts);
            for (std::size_t a = 0; a < methods.size(); ++a) {
                for (std::size_t b = a + 1; b < methods.size(); ++b) {
                    std::vector<std::string> row = {keywords::to_string(methods[a]) + "-" +
                                                    keywords::to_string(methods[b])};
                    for (const auto& [court, cases] : by_court) {
                        double mean = 0.0;
                        for (const CaseAnalysis* c : cases) {
                            mean += keywords::keyword_overlap(c->keyword_sections.at(methods[a]),
                                                              c->keyword_sections.at(methods[b]),
                                                              cfg.top_k_keywords);
                        }
                        mean /= static_cast<double>(cases.size());
                        row.push_back(csv::fmt_double(mean));
                    }
                    out += csv::row(row);
                }
            }
            write_file(fs::path(cfg.output_dir) / "overlap_matrix.csv", out);
        }
        result.stages.push_back({"overlap", "overlap_matrix.csv"});

        stage = "report";
        for (const CaseAnalysis& a : analyses) {
            CaseReport report;
            report.caseno = a.key;
            auto it = ranked.scores.find(a.key);
            report.pagerank_score = it == ranked.scores.end() ? 0.0 : it->second;
            report.keyword_sections = a.keyword_sections;
            report.summary = a.summary;
            report.sentiment_series = a.sentiment_series;
            write_file(fs::path(cfg.output_dir) / "reports" / (sanitize_filename(a.key) + ".json"),
                       report_to_json(report).dump(1) + "\n");
            write_file(fs::path(cfg.output_dir) / "sentiment" / (sanitize_filename(a.key) + ".csv"),
                       sentiment_csv(a.sentiment_series));
        }
        result.stages.push_back({"report", std::to_string(analyses.size()) + " case reports"});
    } catch (const std::exception& e) {
        result.ok = false;
        result.failed_stage = stage;
        result.message = e.what();
    }
    return result;
}

CaseReport report_case(const std::string& case_key, const PipelineConfig& cfg) {
    corpus::LoadResult loaded = corpus::load_corpus_dir(cfg.corpus_dir);
    const std::string wanted = canonical_key(case_key);
    const corpus::Judgment* judgment = nullptr;
    for (const corpus::Judgment& j : loaded.judgments) {
        if (canonical_key(j.caseno) == wanted) {
            judgment = &j;
            break;
        }
    }
    if (!judgment) throw UnknownCase(case_key);

    const text::StopwordList stopwords = cfg.stopwords_path
                                             ? text::load_stopwords(*cfg.stopwords_path)
                                             : text::builtin_stopwords();
    const sentiment::SentimentLexicon lexicon = sentiment::load_lexicon(cfg.lexicon_path);
    CaseAnalysis analysis = analyze_case(*judgment, stopwords, lexicon, cfg);

    const cite::StateSpaceGraph state_space = cite::build_state_space_graph(
        loaded.judgments,
        cfg.patterns_path ? cite::PatternSet::load(*cfg.patterns_path) : cite::PatternSet::defaults());
    const cite::RankedScores ranked = cite::pagerank(cite::to_digraph(state_space), cfg.damping);

    CaseReport report;
    report.caseno = analysis.key;
    auto it = ranked.scores.find(analysis.key);
    report.pagerank_score = it == ranked.scores.end() ? 0.0 : it->second;
    report.keyword_sections = std::move(analysis.keyword_sections);
    report.summary = std::move(analysis.summary);
    report.sentiment_series = std::move(analysis.sentiment_series);
    return report;
}

std::string case_report_json(const CaseReport& report) {
    return report_to_json(report).dump(1) + "\n";
}

}  // namespace juris::pipeline

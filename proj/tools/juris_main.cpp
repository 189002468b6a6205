// juris: corpus analytics for court judgments
// (citation graphs, PageRank, keywords, summaries, sentiment, classifiers)

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "juris/citegraph.hpp"
#include "juris/classify.hpp"
#include "juris/corpus.hpp"
#include "juris/csv.hpp"
#include "juris/errors.hpp"
#include "juris/fixtures.hpp"
#include "juris/keywords.hpp"
#include "juris/pipeline.hpp"
#include "juris/sentiment.hpp"
#include "juris/summarize.hpp"
#include "juris/textprep.hpp"

namespace fs = std::filesystem;
using namespace juris;

namespace {

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + out_path);
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

corpus::Judgment find_case(const std::vector<corpus::Judgment>& docs, const std::string& key) {
    auto canonical = [](const std::string& caseno) {
        auto k = cite::normalize_citation(caseno);
        return k ? k->text : caseno;
    };
    const std::string wanted = canonical(key);
    for (const corpus::Judgment& j : docs) {
        if (canonical(j.caseno) == wanted) return j;
    }
    throw UnknownCase(key);
}

text::StopwordList stopwords_for(const pipeline::PipelineConfig& cfg) {
    return cfg.stopwords_path ? text::load_stopwords(*cfg.stopwords_path)
                              : text::builtin_stopwords();
}

cite::ExportFormat format_for(const std::string& format_flag, const std::string& out_path) {
    if (!format_flag.empty()) return cite::export_format_from_string(format_flag);
    const std::string ext = fs::path(out_path).extension().string();
    if (ext == ".dot" || ext == ".gv") return cite::ExportFormat::Dot;
    if (ext == ".graphml" || ext == ".xml") return cite::ExportFormat::GraphMl;
    if (ext == ".csv") return cite::ExportFormat::EdgeCsv;
    return cite::ExportFormat::Dot;
}

std::string keywords_csv(const keywords::RankedKeywords& kw) {
    std::string out = csv::row({"keyword", "score"});
    for (const auto& [keyword, score] : kw.items) {
        out += csv::row({keyword, csv::fmt_double(score)});
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"juris - court judgment corpus analytics"};
    app.require_subcommand(1);

    pipeline::PipelineConfig cfg;
    std::string config_path;  // filled by --config or the JURIS_CONFIG env var

    // Globals (flags beat the config file, which beats defaults.)
    std::string corpus_flag, out_flag, stopwords_flag, lexicon_flag, patterns_flag;
    std::optional<double> damping_flag;
    std::optional<std::uint64_t> seed_flag;
    std::optional<std::size_t> jobs_flag;
    app.add_option("--config", config_path, "pipeline config file (key=value)")
        ->envname("JURIS_CONFIG");
    app.add_option("--corpus", corpus_flag, "corpus directory of .json judgments");
    app.add_option("--stopwords", stopwords_flag, "stop-word file, one word per line");
    app.add_option("--lexicon", lexicon_flag, "sentiment lexicon TSV");
    app.add_option("--patterns", patterns_flag, "citation regex patterns file");
    app.add_option("--damping", damping_flag, "PageRank/TextRank damping factor");
    app.add_option("--seed", seed_flag, "random seed");
    app.add_option("--jobs", jobs_flag, "parallel workers for per-document stages");
    bool no_stem = false;
    app.add_flag("--no-stem", no_stem, "disable Porter stemming in keyword extraction");

    auto finalize_config = [&]() {
        if (!config_path.empty()) pipeline::apply_config_file(cfg, config_path);
        if (!corpus_flag.empty()) cfg.corpus_dir = corpus_flag;
        if (!stopwords_flag.empty()) cfg.stopwords_path = stopwords_flag;
        if (!lexicon_flag.empty()) cfg.lexicon_path = lexicon_flag;
        if (!patterns_flag.empty()) cfg.patterns_path = patterns_flag;
        if (damping_flag) cfg.damping = *damping_flag;
        if (seed_flag) cfg.seed = *seed_flag;
        if (jobs_flag) cfg.jobs = *jobs_flag;
        if (no_stem) cfg.stem = false;
    };

    auto load_docs = [&]() {
        auto loaded = corpus::load_corpus_dir(cfg.corpus_dir);
        for (const std::string& warning : loaded.warnings) {
            std::cerr << "warning: " << warning << "\n";
        }
        return loaded;
    };
    auto patterns_for = [&]() {
        return cfg.patterns_path ? cite::PatternSet::load(*cfg.patterns_path)
                                 : cite::PatternSet::defaults();
    };

    // ---- ingest ------------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "parse a corpus directory and print stats")->fallthrough();
    ingest->callback([&]() {
        finalize_config();
        auto loaded = load_docs();
        auto stats = corpus::corpus_stats(loaded.judgments);
        stats.decode_warnings = loaded.skipped;
        std::cout << "documents: " << stats.doc_count << "\n"
                  << "skipped: " << stats.decode_warnings << "\n"
                  << "total_words: " << stats.total_words << "\n"
                  << "avg_words_per_doc: " << csv::fmt_double(stats.avg_words_per_doc) << "\n";
        for (const auto& [court, count] : stats.court_histogram) {
            std::cout << "court " << court << ": " << count << "\n";
        }
    });

    // ---- graph -------------------------------------------------------------
    auto* graph = app.add_subcommand("graph", "citation graph operations")->fallthrough();
    graph->require_subcommand(1);

    std::string graph_out, graph_format;
    auto* graph_build = graph->add_subcommand("build", "build and export the citation graph")->fallthrough();
    graph_build->add_option("--out", graph_out, "output file (.dot/.graphml/.csv)")->required();
    graph_build->add_option("--format", graph_format, "dot|graphml|edge-csv");
    graph_build->callback([&]() {
        finalize_config();
        auto loaded = load_docs();
        auto digraph = cite::to_digraph(cite::build_state_space_graph(loaded.judgments, patterns_for()));
        emit(cite::export_graph(digraph, format_for(graph_format, graph_out)), graph_out);
        std::cerr << "graph: " << digraph.node_count() << " nodes, " << digraph.edge_count()
                  << " edges, density "
                  << csv::fmt_double(cite::graph_density(digraph.node_count(), digraph.edge_count()))
                  << "\n";
    });

    std::size_t pagerank_top = 20;
    std::string pagerank_out;
    auto* graph_pagerank = graph->add_subcommand("pagerank", "rank cases by PageRank")->fallthrough();
    graph_pagerank->add_option("--top", pagerank_top, "rows to emit");
    graph_pagerank->add_option("--out", pagerank_out, "output CSV (stdout when omitted)");
    graph_pagerank->callback([&]() {
        finalize_config();
        auto loaded = load_docs();
        auto digraph = cite::to_digraph(cite::build_state_space_graph(loaded.judgments, patterns_for()));
        auto ranked = cite::pagerank(digraph, cfg.damping);
        std::string out = csv::row({"case", "score"});
        for (const auto& [key, score] : cite::top_scores(ranked, pagerank_top)) {
            out += csv::row({key, csv::fmt_double(score)});
        }
        emit(out, pagerank_out);
    });

    std::string color_case, color_out, color_format;
    auto* graph_color = graph->add_subcommand("color", "color the citation network of a case")->fallthrough();
    graph_color->add_option("--case", color_case, "lead case key")->required();
    graph_color->add_option("--out", color_out, "output file")->required();
    graph_color->add_option("--format", color_format, "dot|graphml|edge-csv");
    graph_color->callback([&]() {
        finalize_config();
        auto loaded = load_docs();
        auto digraph = cite::to_digraph(cite::build_state_space_graph(loaded.judgments, patterns_for()));
        auto key = cite::normalize_citation(color_case);
        auto sub = cite::color_citation_network(digraph, key ? key->text : color_case);
        emit(cite::export_graph(sub, format_for(color_format, color_out)), color_out);
    });

    // ---- keywords ----------------------------------------------------------
    auto* kw_cmd = app.add_subcommand("keywords", "keyword extraction and overlap metrics")->fallthrough();
    std::string kw_method = "textrank", kw_case, kw_out;
    std::size_t kw_top = 20;
    kw_cmd->add_option("--method", kw_method, "textrank|rake|yake|lda");
    kw_cmd->add_option("--case", kw_case, "case key");
    kw_cmd->add_option("--top", kw_top, "keywords to emit");
    kw_cmd->add_option("--out", kw_out, "output CSV (stdout when omitted)");

    std::string overlap_methods = "textrank,rake,yake,lda", overlap_court, overlap_out;
    auto* kw_overlap = kw_cmd->add_subcommand("overlap", "pairwise keyword overlap per court")->fallthrough();
    kw_overlap->add_option("--methods", overlap_methods, "comma list of extractors");
    kw_overlap->add_option("--court", overlap_court, "restrict to one court code");
    kw_overlap->add_option("--out", overlap_out, "output CSV (stdout when omitted)");

    kw_cmd->callback([&]() {
        finalize_config();
        if (kw_overlap->parsed()) {
            std::set<keywords::Extractor> methods;
            std::stringstream in(overlap_methods);
            std::string item;
            while (std::getline(in, item, ',')) {
                if (!item.empty()) methods.insert(keywords::extractor_from_string(item));
            }
            if (methods.size() < 2) throw ConfigError("overlap needs at least two methods");
            auto loaded = load_docs();
            auto stopwords = stopwords_for(cfg);

            std::map<std::string, std::vector<std::map<keywords::Extractor, keywords::RankedKeywords>>>
                by_court;
            for (const corpus::Judgment& j : loaded.judgments) {
                const std::string court = corpus::court_code(j.caseno);
                if (!overlap_court.empty() && court != overlap_court) continue;
                std::string full_text;
                for (const auto& seg : j.segments) {
                    full_text += seg.text;
                    full_text += '\n';
                }
                const auto ts = text::tokenize(full_text);
                std::map<keywords::Extractor, keywords::RankedKeywords> sections;
                for (keywords::Extractor method : methods) {
                    switch (method) {
                        case keywords::Extractor::TextRank:
                            sections[method] = keywords::textrank_keywords(
                                ts, stopwords, kw_top, {.damping = cfg.damping, .stem = cfg.stem});
                            break;
                        case keywords::Extractor::Rake:
                            sections[method] = keywords::rake_keywords(ts, stopwords, kw_top);
                            break;
                        case keywords::Extractor::Yake:
                            sections[method] = keywords::yake_keywords(ts, stopwords, kw_top);
                            break;
                        case keywords::Extractor::Lda: {
                            keywords::LdaOptions opts;
                            opts.seed = cfg.seed;
                            sections[method] = keywords::lda_keywords(
                                text::preprocess(ts, false, stopwords), kw_top, opts);
                            break;
                        }
                    }
                }
                by_court[court].push_back(std::move(sections));
            }
            if (by_court.empty()) throw UnknownCase(overlap_court.empty() ? "corpus" : overlap_court);

            std::vector<keywords::Extractor> ordered(methods.begin(), methods.end());
            std::string out;
            std::vector<std::string> header = {"pair"};
            for (const auto& [court, cases] : by_court) header.push_back(court);
            out += csv::row(header);
            std::vector<std::string> counts = {"case_count"};
            for (const auto& [court, cases] : by_court) counts.push_back(std::to_string(cases.size()));
            out += csv::row(counts);
            for (std::size_t a = 0; a < ordered.size(); ++a) {
                for (std::size_t b = a + 1; b < ordered.size(); ++b) {
                    std::vector<std::string> row = {keywords::to_string(ordered[a]) + "-" +
                                                    keywords::to_string(ordered[b])};
                    for (const auto& [court, cases] : by_court) {
                        double mean = 0.0;
                        for (const auto& sections : cases) {
                            mean += keywords::keyword_overlap(sections.at(ordered[a]),
                                                              sections.at(ordered[b]), kw_top);
                        }
                        row.push_back(csv::fmt_double(mean / static_cast<double>(cases.size())));
                    }
                    out += csv::row(row);
                }
            }
            emit(out, overlap_out);
            return;
        }

        if (kw_case.empty()) throw ConfigError("keywords requires --case (or the overlap subcommand)");
        auto loaded = load_docs();
        const corpus::Judgment j = find_case(loaded.judgments, kw_case);
        std::string full_text;
        for (const auto& seg : j.segments) {
            full_text += seg.text;
            full_text += '\n';
        }
        const auto ts = text::tokenize(full_text);
        const auto stopwords = stopwords_for(cfg);
        keywords::RankedKeywords kw;
        switch (keywords::extractor_from_string(kw_method)) {
            case keywords::Extractor::TextRank:
                kw = keywords::textrank_keywords(ts, stopwords, kw_top,
                                                 {.damping = cfg.damping, .stem = cfg.stem});
                break;
            case keywords::Extractor::Rake:
                kw = keywords::rake_keywords(ts, stopwords, kw_top);
                break;
            case keywords::Extractor::Yake:
                kw = keywords::yake_keywords(ts, stopwords, kw_top);
                break;
            case keywords::Extractor::Lda: {
                keywords::LdaOptions opts;
                opts.seed = cfg.seed;
                kw = keywords::lda_keywords(text::preprocess(ts, false, stopwords), kw_top, opts);
                break;
            }
        }
        emit(keywords_csv(kw), kw_out);
    });

    // ---- summarize ---------------------------------------------------------
    auto* summ = app.add_subcommand("summarize", "extractive TextRank summary for a case")->fallthrough();
    std::string summ_case, summ_out;
    std::size_t summ_budget = 1;
    summ->add_option("--case", summ_case, "case key")->required();
    summ->add_option("--budget", summ_budget, "sentences to keep");
    summ->add_option("--out", summ_out, "output CSV (stdout when omitted)");
    summ->callback([&]() {
        finalize_config();
        auto loaded = load_docs();
        const corpus::Judgment j = find_case(loaded.judgments, summ_case);
        auto summary = summarize::textrank_summary(j, summ_budget, {.damping = cfg.damping});
        std::string out = csv::row({"index", "score", "sentence"});
        for (const auto& s : summary.sentences) {
            out += csv::row({std::to_string(s.index), csv::fmt_double(s.score), s.text});
        }
        emit(out, summ_out);
    });

    // ---- rouge ---------------------------------------------------------------
    auto* rouge_cmd = app.add_subcommand("rouge", "ROUGE-1/2/L between two text files")->fallthrough();
    std::string rouge_cand, rouge_ref, rouge_out;
    rouge_cmd->add_option("--candidate", rouge_cand, "candidate text file")->required();
    rouge_cmd->add_option("--reference", rouge_ref, "reference text file")->required();
    rouge_cmd->add_option("--out", rouge_out, "output CSV (stdout when omitted)");
    rouge_cmd->callback([&]() {
        finalize_config();
        const std::string cand = slurp(rouge_cand);
        const std::string ref = slurp(rouge_ref);
        std::string out = csv::row({"variant", "precision", "recall", "f1"});
        for (auto variant : {summarize::RougeVariant::Rouge1, summarize::RougeVariant::Rouge2,
                             summarize::RougeVariant::RougeL}) {
            const auto score = summarize::rouge(cand, ref, variant);
            out += csv::row({summarize::to_string(variant), csv::fmt_double(score.precision),
                             csv::fmt_double(score.recall), csv::fmt_double(score.f1)});
        }
        emit(out, rouge_out);
    });

    // ---- sentiment -----------------------------------------------------------
    auto* senti = app.add_subcommand("sentiment", "paragraph-wise polarity series for a case")->fallthrough();
    std::string senti_case, senti_tags, senti_out;
    senti->add_option("--case", senti_case, "case key")->required();
    senti->add_option("--tags", senti_tags, "predictions JSON mapping paragraph index -> label");
    senti->add_option("--out", senti_out, "output CSV (stdout when omitted)");
    senti->callback([&]() {
        finalize_config();
        if (cfg.lexicon_path.empty()) throw ConfigError("sentiment requires --lexicon");
        auto loaded = load_docs();
        const corpus::Judgment j = find_case(loaded.judgments, senti_case);
        const auto lexicon = sentiment::load_lexicon(cfg.lexicon_path);
        std::map<std::size_t, std::string> tags;
        if (!senti_tags.empty()) tags = pipeline::load_tags_file(senti_tags);
        auto series = sentiment::score_paragraphs(j, lexicon, senti_tags.empty() ? nullptr : &tags);
        std::string out = csv::row({"paragraph_index", "compound", "pos", "neg", "neu", "tag"});
        for (const auto& p : series.points) {
            out += csv::row({std::to_string(p.paragraph_index), csv::fmt_double(p.score.compound),
                             csv::fmt_double(p.score.pos), csv::fmt_double(p.score.neg),
                             csv::fmt_double(p.score.neu), p.tag.value_or("")});
        }
        emit(out, senti_out);
    });

    // ---- classify ------------------------------------------------------------
    auto* cls = app.add_subcommand("classify", "paragraph classification models")->fallthrough();
    cls->require_subcommand(1);

    std::string train_kind = "logreg", train_data, train_out, train_mode;
    bool train_smooth_idf = false;
    std::size_t train_epochs = 50, train_hidden = 64;
    double train_lr = 0.01, train_l2 = 1e-4;
    auto* cls_train = cls->add_subcommand("train", "fit a model on label<TAB>text data")->fallthrough();
    cls_train->add_option("--kind", train_kind,
                          "bernoulli_nb|multinomial_nb|complement_nb|logreg|linear_svm|mlp|rbm_logistic");
    cls_train->add_option("--data", train_data, "training TSV")->required();
    cls_train->add_option("--out", train_out, "model JSON path")->required();
    cls_train->add_option("--mode", train_mode, "count|tfidf vectorizer override");
    cls_train->add_flag("--smooth-idf", train_smooth_idf, "use ln((1+N)/(1+df)) + 1");
    cls_train->add_option("--epochs", train_epochs, "SGD epochs");
    cls_train->add_option("--hidden", train_hidden, "hidden units (mlp / rbm)");
    cls_train->add_option("--lr", train_lr, "learning rate");
    cls_train->add_option("--l2", train_l2, "L2 regularization strength");
    cls_train->callback([&]() {
        finalize_config();
        auto data = classify::load_labelled_tsv(train_data);
        classify::Hyper hyper;
        hyper.epochs = train_epochs;
        hyper.hidden = train_hidden;
        hyper.learning_rate = train_lr;
        hyper.l2 = train_l2;
        hyper.smooth_idf = train_smooth_idf;
        if (!train_mode.empty()) {
            hyper.vectorizer = train_mode == "count" ? classify::VectorizerMode::Count
                                                     : classify::VectorizerMode::Tfidf;
        }
        auto model = classify::train(data, classify::model_kind_from_string(train_kind), hyper,
                                     cfg.seed);
        classify::save_model(model, train_out);
        std::cerr << "trained " << train_kind << " on " << data.size() << " paragraphs, vocab "
                  << model.vectorizer.vocabulary_size() << ", saved to " << train_out << "\n";
    });

    std::string eval_model, eval_data, eval_out;
    auto* cls_eval = cls->add_subcommand("eval", "evaluate a saved model")->fallthrough();
    cls_eval->add_option("--model", eval_model, "model JSON path")->required();
    cls_eval->add_option("--data", eval_data, "labelled TSV")->required();
    cls_eval->add_option("--out", eval_out, "output CSV (stdout when omitted)");
    cls_eval->callback([&]() {
        finalize_config();
        auto model = classify::load_model(eval_model);
        auto data = classify::load_labelled_tsv(eval_data);
        std::vector<std::string> texts;
        std::vector<classify::Label> truth;
        for (const auto& p : data) {
            texts.push_back(p.text);
            truth.push_back(p.label);
        }
        auto report = classify::evaluate(truth, classify::predict(model, texts));
        std::string out = csv::row({"average", "accuracy", "precision", "recall", "f1"});
        out += csv::row({"macro", csv::fmt_double(report.accuracy),
                         csv::fmt_double(report.macro_precision),
                         csv::fmt_double(report.macro_recall), csv::fmt_double(report.macro_f1)});
        out += csv::row({"weighted", csv::fmt_double(report.accuracy),
                         csv::fmt_double(report.weighted_precision),
                         csv::fmt_double(report.weighted_recall),
                         csv::fmt_double(report.weighted_f1)});
        emit(out, eval_out);
    });

    // ---- report --------------------------------------------------------------
    auto* report_cmd = app.add_subcommand("report", "full per-case analysis report (JSON)")->fallthrough();
    std::string report_case_key, report_out;
    report_cmd->add_option("--case", report_case_key, "case key")->required();
    report_cmd->add_option("--out", report_out, "output JSON (stdout when omitted)");
    report_cmd->callback([&]() {
        finalize_config();
        if (cfg.lexicon_path.empty()) throw ConfigError("report requires --lexicon");
        auto report = pipeline::report_case(report_case_key, cfg);
        emit(pipeline::case_report_json(report), report_out);
    });

    // ---- run -------------------------------------------------------------------
    auto* run = app.add_subcommand("run", "run the full pipeline into an output directory")->fallthrough();
    std::string run_out;
    run->add_option("--out", run_out, "output directory (overrides config output_dir)");
    run->callback([&]() {
        finalize_config();
        if (!run_out.empty()) cfg.output_dir = run_out;
        if (cfg.output_dir.empty()) throw ConfigError("run requires --out or output_dir");
        auto result = pipeline::run_pipeline(cfg);
        for (const auto& stage : result.stages) {
            std::cerr << stage.stage << ": " << stage.message << "\n";
        }
        if (!result.ok) {
            std::cerr << result.failed_stage << ": " << result.message << "\n";
            throw Error(result.failed_stage + ": " + result.message);
        }
    });

    // ---- fixtures ----------------------------------------------------------------
    auto* fixtures_cmd = app.add_subcommand("fixtures", "synthetic data for tests and demos")->fallthrough();
    auto* fixtures_generate = fixtures_cmd->add_subcommand("generate", "write the fixture set")->fallthrough();
    std::string fixtures_out;
    fixtures_generate->add_option("--out", fixtures_out, "output directory")->required();
    fixtures_generate->callback([&]() {
        finalize_config();
        fixtures::generate_all(fixtures_out, cfg.seed);
        std::cerr << "fixtures written to " << fixtures_out << "\n";
    });

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "juris/citegraph.hpp"
#include "juris/classify.hpp"
#include "juris/corpus.hpp"
#include "juris/fixtures.hpp"
#include "juris/keywords.hpp"
#include "juris/pipeline.hpp"
#include "juris/rng.hpp"
#include "juris/sentiment.hpp"
#include "juris/summarize.hpp"
#include "juris/textprep.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace juris;

namespace {

int failures = 0;

class CheckFailure : public std::runtime_error {
public:
    explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

void require(bool condition, const std::string& what) {
    if (!condition) throw CheckFailure(what);
}

void require_close(double actual, double expected, double tol, const std::string& what) {
    if (!(std::fabs(actual - expected) <= tol)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": got " << actual << ", want " << expected << " +/- " << tol;
        throw CheckFailure(msg.str());
    }
}

void criterion(const std::string& name, const std::function<void()>& body) {
    try {
        body();
        std::printf("PASS  %s\n", name.c_str());
    } catch (const std::exception& e) {
        ++failures;
        std::printf("FAIL  %s\n      %s\n", name.c_str(), e.what());
    }
    std::fflush(stdout);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---- criteria --------------------------------------------------------------

void density_consistency() {
    require_close(cite::graph_density(12068, 12663), 8.695648829995403e-05, 1e-15,
                  "density(12068, 12663)");
    require(cite::graph_density(1, 0) == 0.0, "degenerate density");
}

void pagerank_oracle() {
    Rng rng(20240801);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 2 + rng.below(5);  // up to 6 nodes
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("N" + std::to_string(i));
        std::vector<std::pair<std::string, std::string>> edges;
        std::vector<std::pair<std::size_t, std::size_t>> id_edges;
        const std::size_t m = rng.below(n * n + 1);
        for (std::size_t e = 0; e < m; ++e) {
            const std::size_t u = rng.below(n), v = rng.below(n);
            edges.emplace_back(names[u], names[v]);
            id_edges.emplace_back(u, v);
        }
        const auto g = cite::CitationDiGraph::build(names, edges);
        const auto ranked = cite::pagerank(g);
        const auto expected = oracles::dense_pagerank(n, id_edges, 0.85);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            require_close(ranked.scores.at(names[i]), expected[i], 1e-9,
                          "round " + std::to_string(round) + " node " + names[i]);
            total += ranked.scores.at(names[i]);
        }
        require_close(total, 1.0, 1e-9, "score sum");
    }
    const auto cycle2 =
        cite::pagerank(cite::CitationDiGraph::build({}, {{"A", "B"}, {"B", "A"}}));
    require(cycle2.scores.at("A") == cycle2.scores.at("B"), "2-cycle symmetry");
    require_close(cycle2.scores.at("A"), 0.5, 1e-12, "2-cycle value");
    const auto cycle3 = cite::pagerank(
        cite::CitationDiGraph::build({}, {{"A", "B"}, {"B", "C"}, {"C", "A"}}));
    for (const auto& [key, score] : cycle3.scores) {
        require_close(score, 1.0 / 3.0, 1e-12, "3-cycle value");
    }
}

void algorithm_traces() {
    const auto docs = fixtures::fixture_corpus();
    const auto g = cite::build_state_space_graph(docs);
    require(g.cited_by.size() == 3, "state-space key count");
    require(g.cited_by.at("7 HKCFAR 187") ==
                std::vector<std::string>{"2 HKLRD 1121", "CACV 284/2017"},
            "citers of the lead case");
    require(g.cited_by.at("2 HKLRD 1121") == std::vector<std::string>{"CACV 284/2017"},
            "citers of the second case");
    require(g.cited_by.at("CACV 284/2017").empty(), "third case has no citers");

    const auto chain = cite::color_citation_network(
        cite::CitationDiGraph::build({}, {{"B", "A"}, {"C", "B"}}), "A");
    require(chain.colors.at("A") == cite::ColorClass::Red, "chain lead red");
    require(chain.colors.at("B") == cite::ColorClass::Blue, "chain level-1 blue");
    require(chain.colors.at("C") == cite::ColorClass::Green, "chain level-2 green");

    const auto cross = cite::color_citation_network(
        cite::CitationDiGraph::build({}, {{"B", "A"}, {"C", "B"}, {"C", "A"}}), "A");
    require(cross.levels.at("C") == std::set<int>{1, 2}, "cross-citing levels");
    require(cross.colors.at("C") == cite::ColorClass::Pink, "cross-citing pink");

    const auto fixture_colors = cite::color_citation_network(cite::to_digraph(g), "7 HKCFAR 187");
    require(fixture_colors.colors.at("CACV 284/2017") == cite::ColorClass::Pink,
            "fixture pink assignment");
}

void formula_plugins() {
    const auto isolated =
        keywords::textrank_keywords(text::tokenize("court"), text::StopwordList{}, 3);
    require(isolated.items.size() == 1, "isolated vertex emitted");
    require_close(isolated.items[0].second, 0.15, 1e-9, "textrank isolated vertex");

    require_close(keywords::yake_combine({0.1, 0.2}, 3), (0.1 * 0.2) / (3.0 * 1.3), 1e-9,
                  "yake combination");

    const auto vec = classify::Vectorizer::fit(
        {"term a0", "term a1", "term a2", "term a3", "b0", "b1", "b2", "b3", "b4", "b5"},
        classify::VectorizerMode::Tfidf);
    require_close(vec.idf()[vec.vocabulary().at("term")], std::log(2.0), 1e-12,
                  "idf of a 4-of-10 term");

    const auto rake = keywords::rake_keywords(
        text::tokenize("keyword extraction. keyword analysis. rapid extraction"),
        text::StopwordList{}, 10);
    require(rake.items.size() == 3, "rake phrase count");
    for (const auto& [phrase, score] : rake.items) {
        require(score == 4.0, "rake phrase score for '" + phrase + "'");
    }
}

void lda_analytic() {
    Rng rng(99);
    const std::vector<std::string> vocab = {"alpha", "beta",  "gamma", "delta",
                                            "ethos", "zetas", "omega"};
    for (int round = 0; round < 10; ++round) {
        std::vector<std::string> tokens;
        std::string doc;
        const std::size_t len = 30 + rng.below(50);
        for (std::size_t i = 0; i < len; ++i) {
            const std::string& w = vocab[rng.below(vocab.size())];
            tokens.push_back(w);
            doc += w;
            doc += ' ';
        }
        keywords::LdaOptions opts;
        opts.iterations = 50;
        opts.seed = 1000 + static_cast<std::uint64_t>(round);
        const auto kw = keywords::lda_keywords(text::tokenize(doc), 10, opts);
        const auto expected = oracles::frequency_ranking(tokens, 10);
        require(kw.items.size() == expected.size(),
                "round " + std::to_string(round) + " size");
        for (std::size_t i = 0; i < expected.size(); ++i) {
            require(kw.items[i].first == expected[i],
                    "round " + std::to_string(round) + " rank " + std::to_string(i));
        }
    }

    std::vector<text::TokenStream> streams;
    for (const auto& j : fixtures::fixture_corpus()) {
        std::string all;
        for (const auto& seg : j.segments) {
            all += seg.text;
            all += '\n';
        }
        streams.push_back(text::tokenize(all));
    }
    keywords::LdaOptions opts;
    opts.iterations = 100;
    opts.seed = 7;
    const auto a = keywords::lda_fit(streams, 2, opts);
    const auto b = keywords::lda_fit(streams, 2, opts);
    require(a.assignments == b.assignments, "seeded assignments bit-identical");
}

void rouge_oracle() {
    Rng rng(4096);
    static const std::vector<std::string> vocab = {"a", "b", "c", "cat", "sat", "the", "mat"};
    auto join = [](const std::vector<std::string>& tokens) {
        std::string out;
        for (const auto& t : tokens) {
            if (!out.empty()) out += ' ';
            out += t;
        }
        return out;
    };
    for (int round = 0; round < 50; ++round) {
        std::vector<std::string> cand, ref;
        const std::size_t nc = rng.below(12), nr = rng.below(12);
        for (std::size_t i = 0; i < nc; ++i) cand.push_back(vocab[rng.below(vocab.size())]);
        for (std::size_t i = 0; i < nr; ++i) ref.push_back(vocab[rng.below(vocab.size())]);

        const auto r1 = summarize::rouge(join(cand), join(ref), summarize::RougeVariant::Rouge1);
        const auto o1 = oracles::rouge_ngram(cand, ref, 1);
        require(r1.precision == o1.precision && r1.recall == o1.recall && r1.f1 == o1.f1,
                "rouge1 mismatch round " + std::to_string(round));

        const auto r2 = summarize::rouge(join(cand), join(ref), summarize::RougeVariant::Rouge2);
        const auto o2 = oracles::rouge_ngram(cand, ref, 2);
        require(r2.precision == o2.precision && r2.recall == o2.recall && r2.f1 == o2.f1,
                "rouge2 mismatch round " + std::to_string(round));

        const auto rl = summarize::rouge(join(cand), join(ref), summarize::RougeVariant::RougeL);
        const auto ol = oracles::rouge_lcs(cand, ref);
        require(rl.precision == ol.precision && rl.recall == ol.recall && rl.f1 == ol.f1,
                "rougeL mismatch round " + std::to_string(round));
    }
    const auto cat = summarize::rouge("the cat sat", "the cat", summarize::RougeVariant::Rouge1);
    require_close(cat.precision, 2.0 / 3.0, 1e-12, "cat precision");
    require_close(cat.recall, 1.0, 1e-12, "cat recall");
    require_close(cat.f1, 0.8, 1e-12, "cat f1");
}

sentiment::SentimentLexicon acceptance_lexicon() {
    const fs::path path = fs::temp_directory_path() / "juris_acceptance_lexicon.tsv";
    std::ofstream(path) << fixtures::fixture_lexicon_tsv();
    return sentiment::load_lexicon(path.string());
}

void sentiment_checks() {
    const auto lex = acceptance_lexicon();
    const auto good = sentiment::score_text("good", lex);
    require_close(good.compound, 0.4404, 1e-4, "compound('good')");

    auto mirrored = lex;
    for (auto& [token, valence] : mirrored.valence) valence = -valence;
    std::vector<std::string> words;
    for (const auto& [token, valence] : lex.valence) words.push_back(token);
    words.insert(words.end(), {"the", "order", "court", "not", "never", "hearing"});
    Rng rng(31337);
    for (int round = 0; round < 100; ++round) {
        std::string text;
        const std::size_t len = 1 + rng.below(12);
        for (std::size_t i = 0; i < len; ++i) {
            if (!text.empty()) text += ' ';
            text += words[rng.below(words.size())];
        }
        const auto a = sentiment::score_text(text, lex);
        const auto b = sentiment::score_text(text, mirrored);
        require(a.compound == -b.compound, "odd symmetry on \"" + text + "\"");
        require(a.pos == b.neg && a.neg == b.pos, "pos/neg swap on \"" + text + "\"");
    }
}

void classifier_oracles() {
    const std::vector<classify::LabelledParagraph> toy = {
        {"torture claim refugee", classify::Label::About, std::nullopt},
        {"torture refugee refugee status", classify::Label::About, std::nullopt},
        {"appeal allowed costs granted", classify::Label::Allowed, std::nullopt},
        {"appeal allowed granted", classify::Label::Allowed, std::nullopt},
        {"application dismissed costs refused", classify::Label::Dismissal, std::nullopt},
        {"dismissed refused hopeless", classify::Label::Dismissal, std::nullopt},
        {"the court holds the statute plain", classify::Label::Ruling, std::nullopt},
        {"the court holds authority binding", classify::Label::Ruling, std::nullopt},
    };
    for (auto [kind, variant] :
         {std::pair{classify::ModelKind::BernoulliNb, std::string("bernoulli")},
          std::pair{classify::ModelKind::MultinomialNb, std::string("multinomial")},
          std::pair{classify::ModelKind::ComplementNb, std::string("complement")}}) {
        const auto model = classify::train(toy, kind, {}, 1);
        std::vector<std::vector<double>> docs;
        std::vector<int> labels;
        for (const auto& p : toy) {
            std::vector<double> dense(model.vectorizer.vocabulary_size(), 0.0);
            for (const auto& [col, val] : model.vectorizer.transform(p.text)) dense[col] = val;
            docs.push_back(std::move(dense));
            labels.push_back(static_cast<int>(p.label));
        }
        for (const std::string query :
             {"torture refugee", "appeal granted", "dismissed costs", "court statute"}) {
            std::vector<double> dense(model.vectorizer.vocabulary_size(), 0.0);
            for (const auto& [col, val] : model.vectorizer.transform(query)) dense[col] = val;
            const auto mine = classify::nb_posterior(model, query);
            const auto want = oracles::nb_posterior_bruteforce(docs, labels, dense, variant, 1.0);
            for (std::size_t c = 0; c < classify::kNumLabels; ++c) {
                require_close(mine[c], want[c], 1e-12, variant + " posterior class " +
                                                           std::to_string(c) + " on \"" + query +
                                                           "\"");
            }
        }
    }

    // gradient vs central differences (1e-5 relative)
    Rng rng(271828);
    const std::size_t features = 6;
    std::vector<classify::SparseVector> xs;
    std::vector<int> ys;
    for (int i = 0; i < 15; ++i) {
        classify::SparseVector x;
        for (std::size_t f = 0; f < features; ++f) {
            if (rng.uniform01() < 0.7) x.emplace_back(f, rng.uniform01() * 2.0 - 1.0);
        }
        xs.push_back(std::move(x));
        ys.push_back(static_cast<int>(rng.below(4)));
    }
    std::vector<std::vector<double>> w(4, std::vector<double>(features));
    std::vector<double> b(4);
    for (auto& row : w) {
        for (double& v : row) v = rng.uniform01() - 0.5;
    }
    for (double& v : b) v = rng.uniform01() - 0.5;
    std::vector<std::vector<double>> grad_w;
    std::vector<double> grad_b;
    classify::logreg_gradient(w, b, xs, ys, 1e-3, grad_w, grad_b);
    const double h = 1e-6;
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t f = 0; f < features; ++f) {
            auto wp = w, wm = w;
            wp[c][f] += h;
            wm[c][f] -= h;
            const double fd = (classify::logreg_objective(wp, b, xs, ys, 1e-3) -
                               classify::logreg_objective(wm, b, xs, ys, 1e-3)) /
                              (2.0 * h);
            const double scale = std::max(1.0, std::fabs(fd));
            require(std::fabs(grad_w[c][f] - fd) <= 1e-5 * scale,
                    "gradient w[" + std::to_string(c) + "][" + std::to_string(f) + "]");
        }
    }

    // separable fixture: perfect training fit
    const std::vector<classify::LabelledParagraph> separable = {
        {"alpha alpha beta", classify::Label::About, std::nullopt},
        {"alpha beta beta", classify::Label::About, std::nullopt},
        {"alpha alpha alpha beta", classify::Label::About, std::nullopt},
        {"gamma delta delta", classify::Label::Dismissal, std::nullopt},
        {"gamma gamma delta", classify::Label::Dismissal, std::nullopt},
        {"gamma delta gamma delta", classify::Label::Dismissal, std::nullopt},
    };
    std::vector<std::string> sep_texts;
    std::vector<classify::Label> sep_labels;
    for (const auto& p : separable) {
        sep_texts.push_back(p.text);
        sep_labels.push_back(p.label);
    }
    for (auto kind : {classify::ModelKind::LogReg, classify::ModelKind::LinearSvm}) {
        const auto model = classify::train(separable, kind, {}, 7);
        const auto report =
            classify::evaluate(sep_labels, classify::predict(model, sep_texts));
        require(report.accuracy == 1.0,
                classify::to_string(kind) + " training accuracy on the separable fixture");
    }

    // 1000-paragraph synthetic corpus, seeded 80-20 split, >= 90% test accuracy
    const auto synthetic = fixtures::synthetic_labels(1000, 2024);
    const auto [train_set, test_set] = classify::split(synthetic, 0.8, 2024);
    require(train_set.size() == 800 && test_set.size() == 200, "80-20 split sizes");
    std::vector<std::string> test_texts;
    std::vector<classify::Label> test_labels;
    for (const auto& p : test_set) {
        test_texts.push_back(p.text);
        test_labels.push_back(p.label);
    }
    for (auto kind : {classify::ModelKind::LogReg, classify::ModelKind::LinearSvm}) {
        const auto model = classify::train(train_set, kind, {}, 2024);
        const auto report =
            classify::evaluate(test_labels, classify::predict(model, test_texts));
        require(report.accuracy >= 0.90, classify::to_string(kind) + " test accuracy " +
                                             std::to_string(report.accuracy) + " < 0.90");
    }
}

void attention_primitive() {
    classify::Matrix q(2, 3), k(4, 3), v(4, 2);
    for (std::size_t j = 0; j < 4; ++j) {
        v.at(j, 0) = static_cast<double>(j);
        v.at(j, 1) = 2.0 * static_cast<double>(j) + 1.0;
    }
    const auto uniform = classify::attention(q, k, v);
    for (std::size_t i = 0; i < 2; ++i) {
        require_close(uniform.at(i, 0), 1.5, 1e-12, "uniform mean column 0");
        require_close(uniform.at(i, 1), 4.0, 1e-12, "uniform mean column 1");
    }

    classify::Matrix q1(3, 2), k1(1, 2), v1(1, 3);
    q1.at(0, 0) = 4.0;
    q1.at(1, 1) = -3.0;
    k1.at(0, 1) = 2.0;
    v1.at(0, 0) = 0.5;
    v1.at(0, 1) = -1.25;
    v1.at(0, 2) = 9.0;
    const auto single = classify::attention(q1, k1, v1);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t d = 0; d < 3; ++d) {
            require(single.at(i, d) == v1.at(0, d), "single-key identity");
        }
    }

    Rng rng(515);
    for (int round = 0; round < 10; ++round) {
        const std::size_t qr = 1 + rng.below(6), kr = 1 + rng.below(6), dim = 1 + rng.below(5);
        classify::Matrix rq(qr, dim), rk(kr, dim);
        for (double& x : rq.data) x = rng.uniform01() * 6.0 - 3.0;
        for (double& x : rk.data) x = rng.uniform01() * 6.0 - 3.0;
        const auto weights = classify::attention_weights(rq, rk);
        for (std::size_t i = 0; i < qr; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < kr; ++j) sum += weights.at(i, j);
            require_close(sum, 1.0, 1e-12, "row-stochastic weights");
        }
    }
}

void pipeline_determinism() {
    const fs::path root = fs::temp_directory_path() / "juris_acceptance_pipeline";
    fs::remove_all(root);
    fs::create_directories(root);
    fixtures::write_fixture_corpus((root / "corpus").string());
    fixtures::write_fixture_lexicon((root / "lexicon.tsv").string());

    pipeline::PipelineConfig cfg;
    cfg.corpus_dir = (root / "corpus").string();
    cfg.lexicon_path = (root / "lexicon.tsv").string();
    cfg.seed = 7;

    cfg.output_dir = (root / "out1").string();
    auto first = pipeline::run_pipeline(cfg);
    require(first.ok, "first run: " + first.failed_stage + ": " + first.message);
    cfg.output_dir = (root / "out2").string();
    auto second = pipeline::run_pipeline(cfg);
    require(second.ok, "second run: " + second.failed_stage + ": " + second.message);

    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(root / "out1")) {
        if (!entry.is_regular_file()) continue;
        const fs::path relative = fs::relative(entry.path(), root / "out1");
        const fs::path twin = root / "out2" / relative;
        require(fs::exists(twin), "missing twin artifact " + relative.string());
        require(slurp(entry.path()) == slurp(twin), "artifact differs: " + relative.string());
        ++compared;
    }
    require(compared >= 10, "expected at least 10 artifacts, saw " + std::to_string(compared));
    fs::remove_all(root);
}

}  // namespace

int main() {
    criterion("density consistency (printed value to 1e-15)", density_consistency);
    criterion("pagerank vs dense power-iteration oracle (25 graphs, 1e-9)", pagerank_oracle);
    criterion("state-space and coloring traces (fixture corpus, exact)", algorithm_traces);
    criterion("formula plug-ins (textrank 0.15, yake, idf ln2, rake)", formula_plugins);
    criterion("lda single-topic analytic check (10 corpora + seed determinism)", lda_analytic);
    criterion("rouge vs brute-force oracle (50 strings, exact)", rouge_oracle);
    criterion("sentiment compound oracle and odd symmetry (100 texts)", sentiment_checks);
    criterion("classifier oracles (nb 1e-12, gradient 1e-5, accuracy gates)", classifier_oracles);
    criterion("attention primitive (mean, identity, row-stochastic 1e-12)", attention_primitive);
    criterion("pipeline determinism (byte-identical artifacts)", pipeline_determinism);

    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}

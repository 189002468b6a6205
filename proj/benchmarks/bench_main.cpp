#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "juris/citegraph.hpp"
#include "juris/keywords.hpp"
#include "juris/rng.hpp"
#include "juris/summarize.hpp"
#include "juris/textprep.hpp"

using namespace juris;

namespace {

cite::CitationDiGraph random_graph(std::size_t nodes, std::size_t edges, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> names;
    names.reserve(nodes);
    for (std::size_t i = 0; i < nodes; ++i) names.push_back("CASE " + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> edge_list;
    edge_list.reserve(edges);
    for (std::size_t e = 0; e < edges; ++e) {
        edge_list.emplace_back(names[rng.below(nodes)], names[rng.below(nodes)]);
    }
    return cite::CitationDiGraph::build(names, edge_list);
}

std::string random_prose(std::size_t sentences, std::uint64_t seed) {
    static const std::vector<std::string> vocab = {
        "court",   "appeal",  "sentence", "judge",   "drug",    "claim",  "order",
        "statute", "counsel", "evidence", "hearing", "trial",   "ruling", "costs",
        "leave",   "party",   "witness",  "offence", "verdict", "remedy",
    };
    Rng rng(seed);
    std::string text;
    for (std::size_t s = 0; s < sentences; ++s) {
        const std::size_t len = 8 + rng.below(10);
        for (std::size_t i = 0; i < len; ++i) {
            text += i == 0 ? "The" : vocab[rng.below(vocab.size())];
            text += ' ';
        }
        text.back() = '.';
        text += ' ';
    }
    return text;
}

void BM_Pagerank(benchmark::State& state) {
    const auto g = random_graph(static_cast<std::size_t>(state.range(0)),
                                static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cite::pagerank(g));
    }
}
BENCHMARK(BM_Pagerank)->Arg(1000)->Arg(10000);

void BM_TextrankKeywords(benchmark::State& state) {
    const auto ts = text::tokenize(random_prose(static_cast<std::size_t>(state.range(0)), 2));
    const auto stops = text::builtin_stopwords();
    for (auto _ : state) {
        benchmark::DoNotOptimize(keywords::textrank_keywords(ts, stops, 20));
    }
}
BENCHMARK(BM_TextrankKeywords)->Arg(50)->Arg(200);

void BM_Rake(benchmark::State& state) {
    const auto ts = text::tokenize(random_prose(static_cast<std::size_t>(state.range(0)), 3));
    const auto stops = text::builtin_stopwords();
    for (auto _ : state) {
        benchmark::DoNotOptimize(keywords::rake_keywords(ts, stops, 20));
    }
}
BENCHMARK(BM_Rake)->Arg(200);

void BM_Yake(benchmark::State& state) {
    const auto ts = text::tokenize(random_prose(static_cast<std::size_t>(state.range(0)), 4));
    const auto stops = text::builtin_stopwords();
    for (auto _ : state) {
        benchmark::DoNotOptimize(keywords::yake_keywords(ts, stops, 20));
    }
}
BENCHMARK(BM_Yake)->Arg(200);

void BM_LdaGibbs(benchmark::State& state) {
    std::vector<text::TokenStream> docs;
    for (std::uint64_t d = 0; d < 20; ++d) {
        docs.push_back(text::tokenize(random_prose(20, d)));
    }
    keywords::LdaOptions opts;
    opts.iterations = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(keywords::lda_fit(docs, 4, opts));
    }
}
BENCHMARK(BM_LdaGibbs)->Arg(50);

void BM_Rouge(benchmark::State& state) {
    const std::string cand = random_prose(20, 5);
    const std::string ref = random_prose(20, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(summarize::rouge(cand, ref, summarize::RougeVariant::RougeL));
    }
}
BENCHMARK(BM_Rouge);

void BM_PorterStem(benchmark::State& state) {
    const std::vector<std::string> words = {"trafficking", "sentencing",   "consideration",
                                            "authorities", "imprisonment", "classification"};
    for (auto _ : state) {
        for (const auto& w : words) benchmark::DoNotOptimize(text::porter_stem(w));
    }
}
BENCHMARK(BM_PorterStem);

}  // namespace

BENCHMARK_MAIN();

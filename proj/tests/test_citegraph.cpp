#include <doctest.h>

#include <algorithm>
#include <set>

#include "juris/citegraph.hpp"
#include "juris/errors.hpp"
#include "juris/fixtures.hpp"
#include "juris/rng.hpp"
#include "oracles.hpp"

using namespace juris;

namespace {

corpus::Judgment doc_with_text(std::string caseno, std::string text,
                               std::vector<std::string> refs = {}) {
    corpus::Judgment j;
    j.caseno = std::move(caseno);
    j.segments = {corpus::Segment{std::move(text), corpus::SegmentKind::Para, 0}};
    j.refs = std::move(refs);
    return j;
}

std::vector<std::string> citation_texts(const cite::Extraction& ex) {
    std::vector<std::string> out;
    for (const auto& key : ex.citations) out.push_back(key.text);
    return out;
}

}  // namespace

TEST_CASE("extract_citations finds both citation families") {
    auto j = doc_with_text("X 1/2000", "...as held in 7 HKCFAR 187 and CACV 284/2017...");
    auto ex = cite::extract_citations(j);
    CHECK(citation_texts(ex) == std::vector<std::string>{"7 HKCFAR 187", "CACV 284/2017"});
}

TEST_CASE("extract_citations rejects pre-handover years") {
    auto j = doc_with_text("X 1/2000", "applied [1996] 2 HKLR 100 in terms");
    auto ex = cite::extract_citations(j);
    CHECK(ex.citations.empty());
    CHECK(ex.filtered_pre_handover == 1);

    auto post = doc_with_text("X 1/2000", "applied [1998] 2 HKLR 100 in terms");
    auto ex2 = cite::extract_citations(post);
    REQUIRE(ex2.citations.size() == 1);
    CHECK(ex2.citations[0].text == "2 HKLR 100");
    CHECK(ex2.citations[0].year_hint == 1998);
}

TEST_CASE("extract_citations on citation-free text") {
    auto j = doc_with_text("X 1/2000", "no patterns at all here");
    CHECK(cite::extract_citations(j).citations.empty());
}

TEST_CASE("extract_citations normalizes refs and keeps year hints") {
    auto j = doc_with_text("X 1/2000", "plain text", {"  facv   No. 16 of 2008 ", ""});
    auto ex = cite::extract_citations(j);
    REQUIRE(ex.citations.size() == 1);
    CHECK(ex.citations[0].text == "FACV NO 16 OF 2008");
    CHECK(ex.citations[0].year_hint == 2008);
    CHECK(ex.dropped == 1);  // the empty ref
}

TEST_CASE("extract_citations is idempotent on canonical strings") {
    for (const std::string canonical :
         {"7 HKCFAR 187", "CACV 284/2017", "FACV NO 16 OF 2008", "2 HKLRD 1121"}) {
        auto j = doc_with_text("X 1/2000", canonical);
        auto ex = cite::extract_citations(j);
        REQUIRE(ex.citations.size() == 1);
        CHECK(ex.citations[0].text == canonical);
    }
}

TEST_CASE("build_state_space_graph hand trace") {
    // C1 refs [R1, R2]; C2 refs [R1]
    cite::StateSpaceGraph g = cite::build_state_space_graph(
        std::vector<std::pair<std::string, std::vector<std::string>>>{
            {"C1", {"R1", "R2"}},
            {"C2", {"R1"}},
        });
    REQUIRE(g.cited_by.size() == 4);
    CHECK(g.cited_by.at("C1").empty());
    CHECK(g.cited_by.at("C2").empty());
    CHECK(g.cited_by.at("R1") == std::vector<std::string>{"C1", "C2"});
    CHECK(g.cited_by.at("R2") == std::vector<std::string>{"C1"});
}

TEST_CASE("build_state_space_graph deduplicates citers") {
    cite::StateSpaceGraph g = cite::build_state_space_graph(
        std::vector<std::pair<std::string, std::vector<std::string>>>{{"C1", {"R1", "R1"}}});
    CHECK(g.cited_by.at("R1") == std::vector<std::string>{"C1"});
}

TEST_CASE("build_state_space_graph empty corpus") {
    CHECK(cite::build_state_space_graph(std::vector<corpus::Judgment>{}).cited_by.empty());
}

TEST_CASE("state space graph value lists stay duplicate-free on random corpora") {
    Rng rng(99);
    for (int round = 0; round < 20; ++round) {
        std::vector<std::pair<std::string, std::vector<std::string>>> cases;
        const std::size_t n_cases = 1 + rng.below(8);
        for (std::size_t c = 0; c < n_cases; ++c) {
            std::vector<std::string> refs;
            const std::size_t n_refs = rng.below(6);
            for (std::size_t r = 0; r < n_refs; ++r) {
                refs.push_back("R" + std::to_string(rng.below(4)));
            }
            cases.emplace_back("C" + std::to_string(c), std::move(refs));
        }
        auto g = cite::build_state_space_graph(cases);
        for (const auto& [key, citers] : g.cited_by) {
            std::set<std::string> unique(citers.begin(), citers.end());
            CHECK(unique.size() == citers.size());
        }
    }
}

TEST_CASE("to_digraph emits citer->cited edges") {
    cite::StateSpaceGraph g;
    g.cited_by["R1"] = {"C1", "C2"};
    auto dg = cite::to_digraph(g);
    CHECK(dg.node_count() == 3);
    CHECK(dg.edge_count() == 2);
    auto r1 = dg.index_of("R1");
    REQUIRE(r1.has_value());
    CHECK(dg.predecessors(*r1).size() == 2);
    CHECK(dg.successors(*r1).empty());
}

TEST_CASE("to_digraph drops self-loops") {
    cite::StateSpaceGraph g;
    g.cited_by["A"] = {"A"};
    auto dg = cite::to_digraph(g);
    CHECK(dg.node_count() == 1);
    CHECK(dg.edge_count() == 0);
}

TEST_CASE("to_digraph on empty map") {
    auto dg = cite::to_digraph(cite::StateSpaceGraph{});
    CHECK(dg.node_count() == 0);
    CHECK(dg.edge_count() == 0);
}

TEST_CASE("graph_density") {
    CHECK(cite::graph_density(12068, 12663) ==
          doctest::Approx(8.695648829995403e-05).epsilon(1e-15));
    CHECK(cite::graph_density(2, 1) == 0.5);
    CHECK(cite::graph_density(1, 0) == 0.0);
    CHECK(cite::graph_density(0, 0) == 0.0);
}

TEST_CASE("density times n(n-1) recovers the edge count") {
    for (std::size_t n = 2; n < 40; ++n) {
        for (std::size_t e : {std::size_t(0), std::size_t(1), n, n * (n - 1)}) {
            const double d = cite::graph_density(n, e);
            CHECK(d * static_cast<double>(n) * static_cast<double>(n - 1) ==
                  doctest::Approx(static_cast<double>(e)).epsilon(1e-12));
        }
    }
}

TEST_CASE("pagerank on a 2-cycle is exactly symmetric") {
    auto g = cite::CitationDiGraph::build({}, {{"A", "B"}, {"B", "A"}});
    auto ranked = cite::pagerank(g);
    CHECK(ranked.scores.at("A") == ranked.scores.at("B"));
    CHECK(ranked.scores.at("A") == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("pagerank on a 3-cycle is uniform") {
    auto g = cite::CitationDiGraph::build({}, {{"A", "B"}, {"B", "C"}, {"C", "A"}});
    auto ranked = cite::pagerank(g);
    for (const auto& [key, score] : ranked.scores) {
        CHECK(score == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("pagerank star matches the dense oracle") {
    // C1, C2, C3 all cite H
    auto g = cite::CitationDiGraph::build({}, {{"C1", "H"}, {"C2", "H"}, {"C3", "H"}});
    auto ranked = cite::pagerank(g);
    // node order is sorted: C1, C2, C3, H
    auto oracle = oracles::dense_pagerank(4, {{0, 3}, {1, 3}, {2, 3}}, 0.85);
    CHECK(ranked.scores.at("C1") == doctest::Approx(oracle[0]).epsilon(1e-9));
    CHECK(ranked.scores.at("C2") == doctest::Approx(oracle[1]).epsilon(1e-9));
    CHECK(ranked.scores.at("C3") == doctest::Approx(oracle[2]).epsilon(1e-9));
    CHECK(ranked.scores.at("H") == doctest::Approx(oracle[3]).epsilon(1e-9));
    CHECK(ranked.scores.at("H") > ranked.scores.at("C1"));
}

TEST_CASE("pagerank scores sum to one and stay positive on random graphs") {
    Rng rng(321);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 2 + rng.below(5);
        std::vector<std::pair<std::string, std::string>> edges;
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("N" + std::to_string(i));
        const std::size_t m = rng.below(n * n);
        for (std::size_t e = 0; e < m; ++e) {
            edges.emplace_back(names[rng.below(n)], names[rng.below(n)]);
        }
        auto g = cite::CitationDiGraph::build(names, edges);
        auto ranked = cite::pagerank(g);
        double total = 0.0;
        for (const auto& [key, score] : ranked.scores) {
            CHECK(score > 0.0);
            total += score;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("adding an isolated node strictly lowers the maximum score") {
    auto g = cite::CitationDiGraph::build({}, {{"A", "B"}, {"C", "B"}, {"B", "D"}});
    auto base = cite::pagerank(g);
    double base_max = 0.0;
    for (const auto& [key, score] : base.scores) base_max = std::max(base_max, score);

    auto bigger = cite::CitationDiGraph::build({"A", "B", "C", "D", "ISOLATED"},
                                               {{"A", "B"}, {"C", "B"}, {"B", "D"}});
    auto grown = cite::pagerank(bigger);
    double grown_max = 0.0;
    for (const auto& [key, score] : grown.scores) grown_max = std::max(grown_max, score);
    CHECK(grown_max < base_max);
}

TEST_CASE("pagerank rejects an empty graph") {
    CHECK_THROWS_AS(cite::pagerank(cite::CitationDiGraph{}), EmptyGraph);
}

TEST_CASE("coloring a citation chain") {
    // B cites A, C cites B
    auto g = cite::CitationDiGraph::build({}, {{"B", "A"}, {"C", "B"}});
    auto sub = cite::color_citation_network(g, "A");
    CHECK(sub.colors.at("A") == cite::ColorClass::Red);
    CHECK(sub.colors.at("B") == cite::ColorClass::Blue);
    CHECK(sub.colors.at("C") == cite::ColorClass::Green);
    CHECK(sub.levels.at("A") == std::set<int>{0});
    CHECK(sub.levels.at("B") == std::set<int>{1});
    CHECK(sub.levels.at("C") == std::set<int>{2});
    CHECK(sub.edges == std::vector<std::pair<std::string, std::string>>{{"B", "A"}, {"C", "B"}});
}

TEST_CASE("cross-citing node turns pink") {
    // chain plus C cites A directly
    auto g = cite::CitationDiGraph::build({}, {{"B", "A"}, {"C", "B"}, {"C", "A"}});
    auto sub = cite::color_citation_network(g, "A");
    CHECK(sub.levels.at("C") == std::set<int>{1, 2});
    CHECK(sub.colors.at("C") == cite::ColorClass::Pink);
    CHECK(sub.colors.at("B") == cite::ColorClass::Blue);
}

TEST_CASE("coloring a lead with no citers") {
    auto g = cite::CitationDiGraph::build({"A", "B"}, {{"A", "B"}});
    auto sub = cite::color_citation_network(g, "A");
    CHECK(sub.colors.size() == 1);
    CHECK(sub.colors.at("A") == cite::ColorClass::Red);
    CHECK(sub.edges.empty());
}

TEST_CASE("coloring depth stops at purple") {
    auto g = cite::CitationDiGraph::build(
        {}, {{"B", "A"}, {"C", "B"}, {"D", "C"}, {"E", "D"}, {"F", "E"}});
    auto sub = cite::color_citation_network(g, "A");
    CHECK(sub.colors.at("E") == cite::ColorClass::Purple);
    CHECK(sub.colors.count("F") == 0);  // beyond depth 4
}

TEST_CASE("unknown lead case") {
    auto g = cite::CitationDiGraph::build({"A"}, {});
    CHECK_THROWS_AS(cite::color_citation_network(g, "NOPE"), UnknownCase);
}

TEST_CASE("pink iff multiple levels; edges link adjacent levels") {
    Rng rng(555);
    for (int round = 0; round < 20; ++round) {
        const std::size_t n = 3 + rng.below(6);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("N" + std::to_string(i));
        std::vector<std::pair<std::string, std::string>> edges;
        const std::size_t m = 2 + rng.below(2 * n);
        for (std::size_t e = 0; e < m; ++e) {
            edges.emplace_back(names[rng.below(n)], names[rng.below(n)]);
        }
        auto g = cite::CitationDiGraph::build(names, edges);
        auto sub = cite::color_citation_network(g, names[0]);
        for (const auto& [node, levels] : sub.levels) {
            const bool is_pink = sub.colors.at(node) == cite::ColorClass::Pink;
            CHECK(is_pink == (levels.size() >= 2));
        }
        for (const auto& [tail, head] : sub.edges) {
            const auto& head_levels = sub.levels.at(head);
            bool adjacent = false;
            if (sub.levels.count(tail) > 0) {
                for (int lv : head_levels) {
                    if (sub.levels.at(tail).count(lv + 1) > 0) adjacent = true;
                }
            }
            const bool pink_link = tail == sub.lead ||
                                   (sub.levels.count(tail) > 0 &&
                                    (sub.levels.at(tail).size() >= 2 || head_levels.size() >= 2));
            CHECK((adjacent || pink_link));
        }
    }
}

TEST_CASE("fixture corpus reproduces the hand-derived graph and colors") {
    auto docs = fixtures::fixture_corpus();
    auto g = cite::build_state_space_graph(docs);
    REQUIRE(g.cited_by.size() == 3);
    CHECK(g.cited_by.at("7 HKCFAR 187") ==
          std::vector<std::string>{"2 HKLRD 1121", "CACV 284/2017"});
    CHECK(g.cited_by.at("2 HKLRD 1121") == std::vector<std::string>{"CACV 284/2017"});
    CHECK(g.cited_by.at("CACV 284/2017").empty());

    auto dg = cite::to_digraph(g);
    CHECK(dg.node_count() == 3);
    CHECK(dg.edge_count() == 3);

    auto sub = cite::color_citation_network(dg, "7 HKCFAR 187");
    CHECK(sub.colors.at("7 HKCFAR 187") == cite::ColorClass::Red);
    CHECK(sub.colors.at("2 HKLRD 1121") == cite::ColorClass::Blue);
    CHECK(sub.colors.at("CACV 284/2017") == cite::ColorClass::Pink);
}

TEST_CASE("export determinism and formats") {
    auto g = cite::CitationDiGraph::build({}, {{"B", "A"}, {"C", "B"}});
    auto sub = cite::color_citation_network(g, "A");

    auto dot = cite::export_graph(sub, cite::ExportFormat::Dot);
    CHECK(dot == cite::export_graph(sub, cite::ExportFormat::Dot));
    CHECK(dot.find("\"A\" [fillcolor=red]") != std::string::npos);
    CHECK(dot.find("\"B\" [fillcolor=blue]") != std::string::npos);
    CHECK(dot.find("\"B\" -> \"A\";") != std::string::npos);

    auto csv = cite::export_graph(sub, cite::ExportFormat::EdgeCsv);
    CHECK(csv == "citer,cited\r\nB,A\r\nC,B\r\n");

    auto graphml = cite::export_graph(sub, cite::ExportFormat::GraphMl);
    CHECK(graphml.find("<node id=\"A\"><data key=\"color\">red</data></node>") !=
          std::string::npos);
    CHECK(graphml.find("<edge source=\"C\" target=\"B\"/>") != std::string::npos);
}

TEST_CASE("single red node DOT export") {
    auto g = cite::CitationDiGraph::build({"A"}, {});
    auto sub = cite::color_citation_network(g, "A");
    auto dot = cite::export_graph(sub, cite::ExportFormat::Dot);
    CHECK(dot.find("\"A\" [fillcolor=red]") != std::string::npos);
}

TEST_CASE("export format parsing") {
    CHECK(cite::export_format_from_string("dot") == cite::ExportFormat::Dot);
    CHECK(cite::export_format_from_string("graphml") == cite::ExportFormat::GraphMl);
    CHECK(cite::export_format_from_string("edge-csv") == cite::ExportFormat::EdgeCsv);
    CHECK_THROWS_AS(cite::export_format_from_string("svg"), UnsupportedFormat);
}

TEST_CASE("plain digraph export lists sorted edges") {
    auto g = cite::CitationDiGraph::build({}, {{"Z", "A"}, {"B", "A"}});
    auto csv = cite::export_graph(g, cite::ExportFormat::EdgeCsv);
    CHECK(csv == "citer,cited\r\nB,A\r\nZ,A\r\n");
    auto dot = cite::export_graph(g, cite::ExportFormat::Dot);
    CHECK(dot.find("fillcolor") == std::string::npos);
}

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "juris/corpus.hpp"
#include "juris/errors.hpp"
#include "juris/fixtures.hpp"
#include "juris/rng.hpp"

using namespace juris;

namespace {

const char* kMinimalDoc = R"({
  "judgement": [["The court finds the appeal made out.", "para"]],
  "ref": [],
  "date": [],
  "parties": [],
  "coram": [],
  "representation": [],
  "caseno": ["FACV 16/2008"]
})";

}  // namespace

TEST_CASE("parse_judgment maps the schema") {
    corpus::Judgment j = corpus::parse_judgment(kMinimalDoc);
    CHECK(j.caseno == "FACV 16/2008");
    REQUIRE(j.segments.size() == 1);
    CHECK(j.segments[0].kind == corpus::SegmentKind::Para);
    CHECK(j.segments[0].index == 0);
    CHECK(j.refs.empty());
}

TEST_CASE("parse_judgment missing caseno") {
    CHECK_THROWS_AS(corpus::parse_judgment(R"({"judgement": [["x", "para"]]})"), MissingField);
    CHECK_THROWS_AS(corpus::parse_judgment(R"({"judgement": [["x", "para"]], "caseno": []})"),
                    MissingField);
}

TEST_CASE("parse_judgment missing judgement") {
    CHECK_THROWS_AS(corpus::parse_judgment(R"({"caseno": ["A 1/2000"]})"), MissingField);
}

TEST_CASE("parse_judgment unknown segment kind") {
    CHECK_THROWS_AS(corpus::parse_judgment(
                        R"({"judgement": [["x", "footnote"]], "caseno": ["A 1/2000"]})"),
                    UnknownSegmentKind);
}

TEST_CASE("parse_judgment malformed json") {
    CHECK_THROWS_AS(corpus::parse_judgment("{not json"), MalformedJson);
    CHECK_THROWS_AS(corpus::parse_judgment("[1, 2]"), MalformedJson);
}

TEST_CASE("parse_judgment accepts type as singleton list or bare string") {
    auto a = corpus::parse_judgment(
        R"({"judgement": [["x", ["quote"]]], "caseno": ["A 1/2000"]})");
    auto b = corpus::parse_judgment(R"({"judgement": [["x", "quote"]], "caseno": ["A 1/2000"]})");
    CHECK(a.segments[0].kind == corpus::SegmentKind::Quote);
    CHECK(a.segments[0].kind == b.segments[0].kind);
}

TEST_CASE("parse_judgment accepts caseno as bare string") {
    auto j = corpus::parse_judgment(R"({"judgement": [["x", "para"]], "caseno": "CACV 1/2001"})");
    CHECK(j.caseno == "CACV 1/2001");
}

TEST_CASE("round-trip through the table schema") {
    for (const corpus::Judgment& j : fixtures::fixture_corpus()) {
        corpus::Judgment back = corpus::parse_judgment(corpus::to_table_json(j));
        corpus::Judgment original = j;
        original.source_path.clear();
        CHECK(back == original);
    }
}

TEST_CASE("segment order preserved") {
    auto j = corpus::parse_judgment(
        R"({"judgement": [["a","heading"],["b","para"],["c","quote"],["d","para"]],
            "caseno": ["A 1/2000"]})");
    REQUIRE(j.segments.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(j.segments[i].index == i);
}

TEST_CASE("paragraphs_of filters by kind in order") {
    auto j = corpus::parse_judgment(
        R"({"judgement": [["a","heading"],["b","para"],["c","quote"],["d","para"]],
            "caseno": ["A 1/2000"]})");
    auto paras = corpus::paragraphs_of(j);
    REQUIRE(paras.size() == 2);
    CHECK(paras[0].text == "b");
    CHECK(paras[1].text == "d");

    corpus::Judgment no_paras;
    no_paras.caseno = "X";
    no_paras.segments = {corpus::Segment{"h", corpus::SegmentKind::Heading, 0}};
    CHECK(corpus::paragraphs_of(no_paras).empty());

    corpus::Judgment all_paras;
    all_paras.caseno = "Y";
    all_paras.segments = {corpus::Segment{"p1", corpus::SegmentKind::Para, 0},
                          corpus::Segment{"p2", corpus::SegmentKind::Para, 1}};
    CHECK(corpus::paragraphs_of(all_paras) == all_paras.segments);
}

TEST_CASE("corpus_stats arithmetic") {
    CHECK(corpus::corpus_stats({}).doc_count == 0);
    CHECK(corpus::corpus_stats({}).avg_words_per_doc == 0.0);

    corpus::Judgment ten, twenty;
    ten.caseno = "FACV 1/2001";
    ten.segments = {corpus::Segment{"one two three four five six seven eight nine ten",
                                    corpus::SegmentKind::Para, 0}};
    twenty.caseno = "HCAL 2/2002";
    twenty.segments = {
        corpus::Segment{"one two three four five six seven eight nine ten", corpus::SegmentKind::Para, 0},
        corpus::Segment{"one two three four five six seven eight nine ten", corpus::SegmentKind::Para, 1}};
    auto stats = corpus::corpus_stats({ten, twenty});
    CHECK(stats.doc_count == 2);
    CHECK(stats.total_words == 30);
    CHECK(stats.avg_words_per_doc == doctest::Approx(15.0));
    CHECK(stats.court_histogram.at("FACV") == 1);
    CHECK(stats.court_histogram.at("HCAL") == 1);
}

TEST_CASE("corpus_stats is permutation invariant") {
    auto docs = fixtures::fixture_corpus();
    auto base = corpus::corpus_stats(docs);
    Rng rng(7);
    for (int round = 0; round < 5; ++round) {
        rng.shuffle(docs);
        auto stats = corpus::corpus_stats(docs);
        CHECK(stats.doc_count == base.doc_count);
        CHECK(stats.total_words == base.total_words);
        CHECK(stats.avg_words_per_doc == base.avg_words_per_doc);
        CHECK(stats.court_histogram == base.court_histogram);
    }
}

TEST_CASE("court_code extraction") {
    CHECK(corpus::court_code("7 HKCFAR 187") == "HKCFAR");
    CHECK(corpus::court_code("FACV 16/2008") == "FACV");
    CHECK(corpus::court_code("12345") == "UNK");
}

TEST_CASE("utf8 validation") {
    CHECK(corpus::utf8_valid("plain ascii"));
    CHECK(corpus::utf8_valid("caf\xc3\xa9"));
    CHECK(!corpus::utf8_valid("bad \xff byte"));
    CHECK(!corpus::utf8_valid("truncated \xc3"));
    CHECK(!corpus::utf8_valid("overlong \xc0\xaf"));
}

TEST_CASE("load_corpus_dir skips undecodable files and ignores non-json") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "juris_corpus_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    std::ofstream(dir / "good.json") << kMinimalDoc;
    std::ofstream(dir / "bad_utf8.json") << "{\"caseno\": [\"\xff\xfe\"]}";
    std::ofstream(dir / "bad_schema.json") << R"({"caseno": ["X 1/2000"]})";
    std::ofstream(dir / "notes.txt") << "ignored";

    auto result = corpus::load_corpus_dir(dir.string());
    CHECK(result.judgments.size() == 1);
    CHECK(result.skipped == 2);
    CHECK(result.warnings.size() == 2);
    CHECK(result.judgments[0].source_path == (dir / "good.json").string());
    fs::remove_all(dir);
}

TEST_CASE("load_corpus_dir on a missing directory") {
    CHECK_THROWS_AS(corpus::load_corpus_dir("/nonexistent/juris"), IoError);
}

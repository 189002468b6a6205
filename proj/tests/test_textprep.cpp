#include <doctest.h>

#include <fstream>

#include "juris/errors.hpp"
#include "juris/textprep.hpp"

using namespace juris;

TEST_CASE("split_sentences basic") {
    auto s = text::split_sentences("The appeal fails. Costs follow.");
    REQUIRE(s.size() == 2);
    CHECK(s[0] == "The appeal fails.");
    CHECK(s[1] == "Costs follow.");
}

TEST_CASE("split_sentences empty input") {
    CHECK(text::split_sentences("").empty());
    CHECK(text::split_sentences("   \n ").empty());
}

TEST_CASE("split_sentences abbreviation guards") {
    // validated by hand against the guard list
    CHECK(text::split_sentences("FACV No 16 of 2008 was cited.").size() == 1);
    CHECK(text::split_sentences("Seen in FACV No. 16 of 2008 and applied.").size() == 1);
    CHECK(text::split_sentences("Mr. Justice Chan agreed with Ms. Wong.").size() == 1);
    CHECK(text::split_sentences("He agreed. Justice prevailed.").size() == 2);
    CHECK(text::split_sentences("A v. B decides the point. See para. 12 there.").size() == 2);
}

TEST_CASE("split_sentences never yields empty strings") {
    for (const auto& s : text::split_sentences("One...   Two!! ?? Three.")) {
        CHECK(!s.empty());
    }
}

TEST_CASE("tokenize lowercases alphanumeric runs") {
    auto ts = text::tokenize("The Court held.");
    REQUIRE(ts.tokens.size() == 3);
    CHECK(ts.tokens[0] == "the");
    CHECK(ts.tokens[1] == "court");
    CHECK(ts.tokens[2] == "held");
    CHECK(ts.raw[1] == "Court");
    REQUIRE(ts.sentence_boundaries.size() == 1);
    CHECK(ts.sentence_boundaries.back() == 3);
}

TEST_CASE("tokenize keeps digits") {
    auto ts = text::tokenize("7 HKCFAR 187");
    REQUIRE(ts.tokens.size() == 3);
    CHECK(ts.tokens == std::vector<std::string>{"7", "hkcfar", "187"});
}

TEST_CASE("tokenize empty string") {
    auto ts = text::tokenize("");
    CHECK(ts.empty());
    CHECK(ts.sentence_boundaries.empty());
}

TEST_CASE("tokenize records phrase breaks at punctuation") {
    auto ts = text::tokenize("keyword extraction. keyword analysis, rapid extraction");
    REQUIRE(ts.tokens.size() == 6);
    CHECK(ts.phrase_breaks == std::vector<std::size_t>{2, 4});
}

TEST_CASE("tokenize boundaries strictly increasing, last equals size") {
    auto ts = text::tokenize("First point here. Second one. Third!");
    REQUIRE(!ts.sentence_boundaries.empty());
    for (std::size_t i = 1; i < ts.sentence_boundaries.size(); ++i) {
        CHECK(ts.sentence_boundaries[i] > ts.sentence_boundaries[i - 1]);
    }
    CHECK(ts.sentence_boundaries.back() == ts.tokens.size());
}

TEST_CASE("preprocess identity with no stopwords and no stemming") {
    auto ts = text::tokenize("The court allowed the appeal. Costs follow.");
    auto out = text::preprocess(ts, false, text::StopwordList{});
    CHECK(out.tokens == ts.tokens);
    CHECK(out.sentence_boundaries == ts.sentence_boundaries);
    CHECK(out.phrase_breaks == ts.phrase_breaks);
}

TEST_CASE("preprocess stems per the published vocabulary") {
    CHECK(text::porter_stem("trafficking") == "traffick");
    CHECK(text::porter_stem("sentencing") == "sentenc");
    auto ts = text::tokenize("trafficking sentencing");
    auto out = text::preprocess(ts, true, text::StopwordList{});
    CHECK(out.tokens == std::vector<std::string>{"traffick", "sentenc"});
}

TEST_CASE("preprocess removes stopwords and remaps boundaries") {
    auto stops = text::builtin_stopwords();
    auto ts = text::tokenize("The appeal is allowed. The costs follow the event.");
    auto out = text::preprocess(ts, false, stops);
    for (const auto& tok : out.tokens) CHECK(!stops.contains(tok));
    REQUIRE(!out.sentence_boundaries.empty());
    CHECK(out.sentence_boundaries.back() == out.tokens.size());
}

TEST_CASE("preprocess leaves an existing stem unchanged when stem=false") {
    auto ts = text::tokenize("traffick");
    auto out = text::preprocess(ts, false, text::StopwordList{});
    CHECK(out.tokens == std::vector<std::string>{"traffick"});
}

TEST_CASE("builtin stopwords look sane") {
    auto stops = text::builtin_stopwords();
    CHECK(stops.size() > 150);
    CHECK(stops.contains("the"));
    CHECK(stops.contains("whether"));
    CHECK(!stops.contains("court"));
    CHECK(!stops.contains("would"));  // survives filtering on purpose
    CHECK(stops.source == "builtin");
}

TEST_CASE("porter stemmer reproduces the 100-word reference fixture") {
    std::ifstream in(std::string(JURIS_TEST_DATA_DIR) + "/porter_100.tsv");
    REQUIRE(in.good());
    std::string line;
    std::size_t checked = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        REQUIRE(tab != std::string::npos);
        const std::string word = line.substr(0, tab);
        const std::string want = line.substr(tab + 1);
        CHECK_MESSAGE(text::porter_stem(word) == want, "word: ", word);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("porter leaves non-alpha tokens untouched") {
    CHECK(text::porter_stem("187") == "187");
    CHECK(text::porter_stem("hkcfar7") == "hkcfar7");
}

TEST_CASE("is_content_token") {
    CHECK(text::is_content_token("court"));
    CHECK(!text::is_content_token("187"));
    CHECK(text::is_content_token("s8"));
}

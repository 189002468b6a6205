#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "juris/classify.hpp"
#include "juris/corpus.hpp"

namespace juris::fixtures {

/// The three-judgment synthetic corpus used by the test and acceptance
/// suites: a cited lead case, a second case citing it, and a third case
/// citing both (which therefore shows up at two citation depths).
std::vector<corpus::Judgment> fixture_corpus();

/// Ten-word sentiment lexicon matching the fixture corpus vocabulary.
std::string fixture_lexicon_tsv();

/// Four-class synthetic paragraphs drawn from class-specific word pools.
std::vector<classify::LabelledParagraph> synthetic_labels(std::size_t count, std::uint64_t seed);

void write_fixture_corpus(const std::string& dir);
void write_fixture_lexicon(const std::string& path);
void write_synthetic_labels(const std::string& path, std::size_t count, std::uint64_t seed);

/// corpus/ + lexicon.tsv + labels.tsv under out_dir.
void generate_all(const std::string& out_dir, std::uint64_t seed);

}  // namespace juris::fixtures

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "juris/corpus.hpp"

namespace juris::sentiment {

/// Valence lexicon plus the rule constants. Valences come from a file; the
/// heuristic constants and modifier sets have builtin defaults that the
/// file may override.
struct SentimentLexicon {
    std::map<std::string, double> valence;   // lowercased token -> valence
    std::map<std::string, double> boosters;  // token -> increment (+/-)
    std::set<std::string> negations;
    double negation_factor = -0.74;
    double caps_boost = 0.733;
    double exclaim_boost = 0.292;
    double normalization_alpha = 15.0;
    std::string source;

    bool empty() const { return valence.empty(); }
};

/// Lexicon file: `token<TAB>valence` lines, '#' comments. Directives:
///   !booster<TAB>token<TAB>increment
///   !negation<TAB>token
///   !const<TAB>{negation_factor|caps_boost|exclaim_boost|normalization_alpha}<TAB>value
SentimentLexicon load_lexicon(const std::string& path);

/// Builtin booster/negation sets used when a lexicon file adds none.
void apply_default_modifiers(SentimentLexicon& lex);

struct PolarityScore {
    double compound = 0.0;  // in [-1, 1]
    double pos = 0.0;
    double neg = 0.0;
    double neu = 0.0;
};

/// Valence summation with negation flip within 3 tokens, booster increments,
/// all-caps emphasis and exclamation amplification;
/// compound = x / sqrt(x^2 + alpha). Throws LexiconMissing on an empty
/// lexicon.
PolarityScore score_text(const std::string& text, const SentimentLexicon& lex);

struct SentimentPoint {
    std::size_t paragraph_index = 0;  // segment index of the para segment
    PolarityScore score;
    std::optional<std::string> tag;
};

struct ParagraphSentimentSeries {
    std::string caseno;
    std::vector<SentimentPoint> points;  // one per para segment, in order
};

ParagraphSentimentSeries score_paragraphs(
    const corpus::Judgment& j, const SentimentLexicon& lex,
    const std::map<std::size_t, std::string>* tags = nullptr);

}  // namespace juris::sentiment

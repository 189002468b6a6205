#include "juris/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "juris/errors.hpp"

namespace juris::sentiment {

namespace {

std::string to_lower(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_all_caps(const std::string& s) {
    bool has_alpha = false;
    for (unsigned char c : s) {
        if (std::isalpha(c)) {
            has_alpha = true;
            if (!std::isupper(c)) return false;
        }
    }
    return has_alpha;
}

// Whitespace tokens with outer punctuation stripped (short tokens kept as-is).
std::vector<std::string> word_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::size_t a = 0, b = tok.size();
        while (a < b && std::ispunct(static_cast<unsigned char>(tok[a]))) ++a;
        while (b > a && std::ispunct(static_cast<unsigned char>(tok[b - 1]))) --b;
        std::string stripped = tok.substr(a, b - a);
        tokens.push_back(stripped.size() > 2 ? stripped : tok);
    }
    return tokens;
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

const std::set<std::string>& default_negations() {
    static const std::set<std::string> negations = {
        "aint",    "arent",    "cannot",  "cant",    "couldnt", "darent",  "didnt",
        "doesnt",  "dont",     "hadnt",   "hasnt",   "havent",  "isnt",    "mightnt",
        "mustnt",  "neither",  "neednt",  "never",   "none",    "nope",    "nor",
        "not",     "nothing",  "nowhere", "oughtnt", "shant",   "shouldnt", "wasnt",
        "werent",  "without",  "wont",    "wouldnt", "rarely",  "seldom",  "despite",
        "ain't",   "aren't",   "can't",   "couldn't", "daren't", "didn't", "doesn't",
        "don't",   "hadn't",   "hasn't",  "haven't", "isn't",   "mightn't", "mustn't",
        "needn't", "oughtn't", "shan't",  "shouldn't", "wasn't", "weren't", "won't",
        "wouldn't",
    };
    return negations;
}

const std::map<std::string, double>& default_boosters() {
    constexpr double up = 0.293;
    constexpr double down = -0.293;
    static const std::map<std::string, double> boosters = {
        {"absolutely", up},  {"amazingly", up},   {"awfully", up},     {"completely", up},
        {"considerably", up}, {"decidedly", up},  {"deeply", up},      {"enormously", up},
        {"entirely", up},    {"especially", up},  {"exceptionally", up}, {"extremely", up},
        {"fully", up},       {"greatly", up},     {"highly", up},      {"hugely", up},
        {"incredibly", up},  {"intensely", up},   {"majorly", up},     {"more", up},
        {"most", up},        {"particularly", up}, {"purely", up},     {"quite", up},
        {"really", up},      {"remarkably", up},  {"so", up},          {"substantially", up},
        {"thoroughly", up},  {"totally", up},     {"tremendously", up}, {"unbelievably", up},
        {"unusually", up},   {"utterly", up},     {"very", up},
        {"almost", down},    {"barely", down},    {"hardly", down},    {"kinda", down},
        {"less", down},      {"little", down},    {"marginally", down}, {"occasionally", down},
        {"partly", down},    {"scarcely", down},  {"slightly", down},  {"somewhat", down},
        {"sorta", down},
    };
    return boosters;
}

}  // namespace

void apply_default_modifiers(SentimentLexicon& lex) {
    if (lex.negations.empty()) lex.negations = default_negations();
    if (lex.boosters.empty()) lex.boosters = default_boosters();
}

SentimentLexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LexiconMissing("cannot open " + path);
    SentimentLexicon lex;
    lex.source = path;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        try {
            if (fields[0] == "!booster" && fields.size() >= 3) {
                lex.boosters[to_lower(fields[1])] = std::stod(fields[2]);
            } else if (fields[0] == "!negation" && fields.size() >= 2) {
                lex.negations.insert(to_lower(fields[1]));
            } else if (fields[0] == "!const" && fields.size() >= 3) {
                const double v = std::stod(fields[2]);
                if (fields[1] == "negation_factor") lex.negation_factor = v;
                else if (fields[1] == "caps_boost") lex.caps_boost = v;
                else if (fields[1] == "exclaim_boost") lex.exclaim_boost = v;
                else if (fields[1] == "normalization_alpha") lex.normalization_alpha = v;
                else throw ConfigError("unknown lexicon constant: " + fields[1]);
            } else if (fields.size() >= 2) {
                lex.valence[to_lower(fields[0])] = std::stod(fields[1]);
            } else {
                throw ConfigError("expected token<TAB>valence");
            }
        } catch (const std::invalid_argument&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    if (lex.valence.empty()) throw LexiconMissing(path + " has no valence entries");
    apply_default_modifiers(lex);
    return lex;
}

PolarityScore score_text(const std::string& text, const SentimentLexicon& lex) {
    if (lex.empty()) throw LexiconMissing("no lexicon loaded");

    PolarityScore score;
    if (text.empty()) return score;

    const std::vector<std::string> tokens = word_tokens(text);
    if (tokens.empty()) return score;

    // All-caps emphasis applies only when the text mixes cased styles.
    std::size_t caps = 0;
    for (const std::string& t : tokens) {
        if (is_all_caps(t)) ++caps;
    }
    const bool cap_differential = caps > 0 && caps < tokens.size();

    std::vector<double> sentiments;
    sentiments.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string lowered = to_lower(tokens[i]);
        double v = 0.0;
        auto it = lex.valence.find(lowered);
        // modifier words carry no valence of their own
        if (it != lex.valence.end() && lex.boosters.count(lowered) == 0 &&
            lex.negations.count(lowered) == 0) {
            v = it->second;
            if (cap_differential && is_all_caps(tokens[i])) {
                v += sign_of(v) * lex.caps_boost;
            }
            for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
                const std::string prev = to_lower(tokens[i - back]);
                auto booster = lex.boosters.find(prev);
                if (booster != lex.boosters.end()) {
                    double bump = booster->second;
                    if (back == 2) bump *= 0.95;
                    if (back == 3) bump *= 0.9;
                    v += sign_of(v) * bump;
                }
                if (lex.negations.count(prev) > 0) {
                    v *= lex.negation_factor;
                }
            }
        }
        sentiments.push_back(v);
    }

    double total = 0.0;
    for (double s : sentiments) total += s;

    std::size_t exclaims = 0;
    for (char c : text) {
        if (c == '!') ++exclaims;
    }
    const double emphasis = static_cast<double>(std::min<std::size_t>(exclaims, 4)) * lex.exclaim_boost;
    if (total != 0.0) total += sign_of(total) * emphasis;

    const double denom = std::sqrt(total * total + lex.normalization_alpha);
    score.compound = std::clamp(denom > 0.0 ? total / denom : 0.0, -1.0, 1.0);

    double pos_sum = 0.0, neg_sum = 0.0;
    std::size_t neu_count = 0;
    for (double s : sentiments) {
        if (s > 0.0) pos_sum += s + 1.0;
        else if (s < 0.0) neg_sum += s - 1.0;
        else ++neu_count;
    }
    if (pos_sum > std::fabs(neg_sum)) pos_sum += emphasis;
    else if (pos_sum < std::fabs(neg_sum)) neg_sum -= emphasis;

    const double norm = pos_sum + std::fabs(neg_sum) + static_cast<double>(neu_count);
    if (norm > 0.0) {
        score.pos = std::fabs(pos_sum / norm);
        score.neg = std::fabs(neg_sum / norm);
        score.neu = std::fabs(static_cast<double>(neu_count) / norm);
    }
    return score;
}

ParagraphSentimentSeries score_paragraphs(const corpus::Judgment& j, const SentimentLexicon& lex,
                                          const std::map<std::size_t, std::string>* tags) {
    ParagraphSentimentSeries series;
    series.caseno = j.caseno;
    for (const corpus::Segment& seg : corpus::paragraphs_of(j)) {
        SentimentPoint point;
        point.paragraph_index = seg.index;
        point.score = score_text(seg.text, lex);
        if (tags) {
            auto it = tags->find(seg.index);
            if (it != tags->end()) point.tag = it->second;
        }
        series.points.push_back(std::move(point));
    }
    return series;
}

}  // namespace juris::sentiment

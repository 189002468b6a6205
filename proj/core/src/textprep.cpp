#include "juris/textprep.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "juris/errors.hpp"
#include "juris_builtin_stopwords.hpp"

namespace juris::text {

namespace {

bool is_ascii_alnum(unsigned char c) { return std::isalnum(c) != 0; }

// Bytes >= 0x80 (multi-byte UTF-8) are treated as token characters so that
// non-Latin text survives tokenization as opaque runs.
bool is_token_char(unsigned char c) { return is_ascii_alnum(c) || c >= 0x80; }

std::string to_lower_ascii(const std::string& s) {
    std::string out = s;
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// Abbreviations that commonly precede a period without ending a sentence
// in legal prose. Compared case-insensitively.
const std::unordered_set<std::string>& sentence_guards() {
    static const std::unordered_set<std::string> guards = {
        "no",  "nos", "mr",   "mrs", "ms",  "dr",  "prof", "hon", "v",
        "vs",  "art", "arts", "st",  "co",  "ltd", "j",    "jj",  "cj",
        "pj",  "npj", "p",    "pp",  "para", "paras", "cf", "viz", "etc",
        "s",   "ss",  "ors",  "anor",
    };
    return guards;
}

}  // namespace

StopwordList builtin_stopwords() {
    StopwordList list;
    list.source = "builtin";
    std::istringstream in(detail::kBuiltinStopwords);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        list.words.insert(to_lower_ascii(line));
    }
    return list;
}

StopwordList load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file: " + path);
    StopwordList list;
    list.source = path;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        list.words.insert(to_lower_ascii(line));
    }
    return list;
}

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    const std::size_t n = text.size();
    std::size_t start = 0;

    auto flush = [&](std::size_t end) {
        std::size_t a = start;
        std::size_t b = end;
        while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
        if (b > a) sentences.push_back(text.substr(a, b - a));
        start = end;
    };

    std::size_t i = 0;
    while (i < n) {
        char c = text[i];
        if (c != '.' && c != '?' && c != '!') {
            ++i;
            continue;
        }
        bool only_periods = true;
        std::size_t punct_end = i;
        while (punct_end < n && (text[punct_end] == '.' || text[punct_end] == '?' || text[punct_end] == '!')) {
            if (text[punct_end] != '.') only_periods = false;
            ++punct_end;
        }
        // Look ahead: need whitespace then a capital letter to break.
        std::size_t after = punct_end;
        while (after < n && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
        const bool has_gap = after > punct_end;
        if (after >= n) {
            flush(punct_end);
            i = punct_end;
            continue;
        }
        if (!has_gap || !std::isupper(static_cast<unsigned char>(text[after]))) {
            i = punct_end;
            continue;
        }
        if (only_periods) {
            // Word immediately before the period: abbreviation guard.
            std::size_t we = i;
            std::size_t ws = we;
            while (ws > start && std::isalpha(static_cast<unsigned char>(text[ws - 1]))) --ws;
            if (we > ws) {
                std::string word = to_lower_ascii(text.substr(ws, we - ws));
                if (sentence_guards().count(word) > 0) {
                    i = punct_end;
                    continue;
                }
            }
        }
        flush(punct_end);
        i = punct_end;
    }
    flush(n);
    return sentences;
}

TokenStream tokenize(const std::string& text) {
    TokenStream ts;
    bool pending_break = false;

    auto scan_sentence = [&](const std::string& sentence) {
        const std::size_t n = sentence.size();
        std::size_t i = 0;
        while (i < n) {
            unsigned char c = static_cast<unsigned char>(sentence[i]);
            if (is_token_char(c)) {
                std::size_t j = i;
                while (j < n && is_token_char(static_cast<unsigned char>(sentence[j]))) ++j;
                std::string raw = sentence.substr(i, j - i);
                if (pending_break && !ts.tokens.empty()) {
                    if (ts.phrase_breaks.empty() || ts.phrase_breaks.back() != ts.tokens.size()) {
                        ts.phrase_breaks.push_back(ts.tokens.size());
                    }
                }
                pending_break = false;
                ts.tokens.push_back(to_lower_ascii(raw));
                ts.raw.push_back(std::move(raw));
                i = j;
            } else {
                if (!std::isspace(c)) pending_break = true;
                ++i;
            }
        }
    };

    for (const std::string& sentence : split_sentences(text)) {
        scan_sentence(sentence);
        const std::size_t count = ts.tokens.size();
        if (count > 0 && (ts.sentence_boundaries.empty() || ts.sentence_boundaries.back() != count)) {
            ts.sentence_boundaries.push_back(count);
        }
        pending_break = true;
    }
    return ts;
}

TokenStream preprocess(const TokenStream& ts, bool stem, const StopwordList& stopwords) {
    TokenStream out;
    const bool remove_stops = !stopwords.empty();

    std::size_t next_break = 0;
    std::size_t next_boundary = 0;
    bool pending_break = false;

    for (std::size_t i = 0; i < ts.tokens.size(); ++i) {
        while (next_break < ts.phrase_breaks.size() && ts.phrase_breaks[next_break] == i) {
            pending_break = true;
            ++next_break;
        }
        while (next_boundary < ts.sentence_boundaries.size() && ts.sentence_boundaries[next_boundary] == i) {
            const std::size_t count = out.tokens.size();
            if (count > 0 && (out.sentence_boundaries.empty() || out.sentence_boundaries.back() != count)) {
                out.sentence_boundaries.push_back(count);
            }
            ++next_boundary;
        }
        const std::string& tok = ts.tokens[i];
        if (remove_stops && stopwords.contains(tok)) continue;
        if (pending_break && !out.tokens.empty()) {
            if (out.phrase_breaks.empty() || out.phrase_breaks.back() != out.tokens.size()) {
                out.phrase_breaks.push_back(out.tokens.size());
            }
        }
        pending_break = false;
        out.tokens.push_back(stem ? porter_stem(tok) : tok);
        out.raw.push_back(ts.raw[i]);
    }
    const std::size_t count = out.tokens.size();
    if (count > 0 && (out.sentence_boundaries.empty() || out.sentence_boundaries.back() != count)) {
        out.sentence_boundaries.push_back(count);
    }
    return out;
}

bool is_content_token(const std::string& token) {
    for (unsigned char c : token) {
        if (std::isalpha(c) || c >= 0x80) return true;
    }
    return false;
}

}  // namespace juris::text

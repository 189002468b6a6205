#include "juris/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "juris/errors.hpp"

namespace juris::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

SegmentKind segment_kind_from_string(const std::string& s) {
    if (s == "other") return SegmentKind::Other;
    if (s == "para") return SegmentKind::Para;
    if (s == "heading") return SegmentKind::Heading;
    if (s == "quote") return SegmentKind::Quote;
    throw UnknownSegmentKind(s);
}

std::string to_string(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::Other: return "other";
        case SegmentKind::Para: return "para";
        case SegmentKind::Heading: return "heading";
        case SegmentKind::Quote: return "quote";
    }
    return "other";
}

namespace {

std::vector<std::string> string_list(const json& j, const std::string& key) {
    std::vector<std::string> out;
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return out;
    if (!it->is_array()) throw MalformedJson("key '" + key + "' is not a list");
    for (const auto& entry : *it) {
        if (!entry.is_string()) throw MalformedJson("key '" + key + "' holds a non-string entry");
        out.push_back(entry.get<std::string>());
    }
    return out;
}

// The type slot is written either as a bare string or as a singleton list.
std::string segment_type_string(const json& slot) {
    if (slot.is_string()) return slot.get<std::string>();
    if (slot.is_array() && slot.size() == 1 && slot[0].is_string()) return slot[0].get<std::string>();
    throw MalformedJson("segment type slot is neither a string nor a singleton list");
}

}  // namespace

Judgment parse_judgment(const std::string& raw) {
    json root = json::parse(raw, nullptr, false);
    if (root.is_discarded()) throw MalformedJson("unparseable document");
    if (!root.is_object()) throw MalformedJson("top-level value is not an object");

    Judgment j;

    auto caseno_it = root.find("caseno");
    if (caseno_it == root.end()) throw MissingField("caseno");
    if (caseno_it->is_string()) {
        j.caseno = caseno_it->get<std::string>();
    } else if (caseno_it->is_array()) {
        if (caseno_it->empty()) throw MissingField("caseno");
        if (!(*caseno_it)[0].is_string()) throw MalformedJson("caseno[0] is not a string");
        j.caseno = (*caseno_it)[0].get<std::string>();
    } else {
        throw MalformedJson("caseno is neither a string nor a list");
    }
    if (j.caseno.empty()) throw MissingField("caseno");

    auto judgement_it = root.find("judgement");
    if (judgement_it == root.end()) throw MissingField("judgement");
    if (!judgement_it->is_array()) throw MalformedJson("judgement is not a list");
    if (judgement_it->empty()) throw MalformedJson("judgement list is empty");
    std::size_t index = 0;
    for (const auto& entry : *judgement_it) {
        if (!entry.is_array() || entry.empty()) {
            throw MalformedJson("judgement entry is not a [text, type] pair");
        }
        if (!entry[0].is_string()) throw MalformedJson("judgement entry text is not a string");
        Segment seg;
        seg.text = entry[0].get<std::string>();
        seg.kind = entry.size() > 1 ? segment_kind_from_string(segment_type_string(entry[1]))
                                    : SegmentKind::Other;
        seg.index = index++;
        j.segments.push_back(std::move(seg));
    }

    j.refs = string_list(root, "ref");
    j.dates = string_list(root, "date");
    j.parties = string_list(root, "parties");
    j.coram = string_list(root, "coram");
    j.representation = string_list(root, "representation");
    return j;
}

std::string to_table_json(const Judgment& j) {
    json root = json::object();
    json segments = json::array();
    for (const Segment& seg : j.segments) {
        segments.push_back(json::array({seg.text, to_string(seg.kind)}));
    }
    root["judgement"] = std::move(segments);
    root["ref"] = j.refs;
    root["date"] = j.dates;
    root["parties"] = j.parties;
    root["coram"] = j.coram;
    root["representation"] = j.representation;
    root["caseno"] = json::array({j.caseno});
    return root.dump(1);
}

std::vector<Segment> paragraphs_of(const Judgment& j) {
    std::vector<Segment> out;
    for (const Segment& seg : j.segments) {
        if (seg.kind == SegmentKind::Para) out.push_back(seg);
    }
    return out;
}

std::string court_code(const std::string& caseno) {
    std::size_t i = 0;
    const std::size_t n = caseno.size();
    while (i < n) {
        if (std::isupper(static_cast<unsigned char>(caseno[i]))) {
            std::size_t j = i;
            while (j < n && std::isupper(static_cast<unsigned char>(caseno[j]))) ++j;
            return caseno.substr(i, j - i);
        }
        ++i;
    }
    return "UNK";
}

namespace {

std::size_t whitespace_word_count(const std::string& text) {
    std::size_t count = 0;
    bool in_word = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++count;
        }
    }
    return count;
}

}  // namespace

CorpusStats corpus_stats(const std::vector<Judgment>& corpus) {
    CorpusStats stats;
    stats.doc_count = corpus.size();
    for (const Judgment& j : corpus) {
        for (const Segment& seg : j.segments) {
            stats.total_words += whitespace_word_count(seg.text);
        }
        stats.court_histogram[court_code(j.caseno)] += 1;
    }
    stats.avg_words_per_doc =
        stats.doc_count > 0 ? static_cast<double>(stats.total_words) / static_cast<double>(stats.doc_count)
                            : 0.0;
    return stats;
}

bool utf8_valid(const std::string& bytes) {
    const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
    std::size_t n = bytes.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = p[i];
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len;
        unsigned cp;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((p[i + k] & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (p[i + k] & 0x3F);
        }
        if (len == 2 && cp < 0x80) return false;            // overlong
        if (len == 3 && cp < 0x800) return false;           // overlong
        if (len == 4 && cp < 0x10000) return false;         // overlong
        if (cp > 0x10FFFF) return false;                    // out of range
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;     // surrogate
        i += len;
    }
    return true;
}

LoadResult load_corpus_dir(const std::string& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec) || ec) {
        throw IoError("corpus directory not readable: " + dir);
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    LoadResult result;
    for (const fs::path& path : files) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            ++result.skipped;
            result.warnings.push_back(path.string() + ": unreadable");
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string raw = buf.str();
        if (!utf8_valid(raw)) {
            ++result.skipped;
            result.warnings.push_back(path.string() + ": invalid utf-8, skipped");
            continue;
        }
        try {
            Judgment j = parse_judgment(raw);
            j.source_path = path.string();
            result.judgments.push_back(std::move(j));
        } catch (const Error& e) {
            ++result.skipped;
            result.warnings.push_back(path.string() + ": " + e.what());
        }
    }
    return result;
}

}  // namespace juris::corpus

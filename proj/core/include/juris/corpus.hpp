#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace juris::corpus {

enum class SegmentKind { Other, Para, Heading, Quote };

/// Throws UnknownSegmentKind for anything outside {other, para, heading, quote}.
SegmentKind segment_kind_from_string(const std::string& s);
std::string to_string(SegmentKind kind);

struct Segment {
    std::string text;
    SegmentKind kind = SegmentKind::Other;
    std::size_t index = 0;  // 0-based ordinal within the document

    bool operator==(const Segment&) const = default;
};

/// One parsed court judgment (ingest schema: judgement, ref, date, parties,
/// coram, representation, caseno).
struct Judgment {
    std::string caseno;
    std::vector<Segment> segments;
    std::vector<std::string> refs;
    std::vector<std::string> dates;
    std::vector<std::string> parties;
    std::vector<std::string> coram;
    std::vector<std::string> representation;
    std::string source_path;

    bool operator==(const Judgment&) const = default;
};

struct CorpusStats {
    std::size_t doc_count = 0;
    std::size_t total_words = 0;
    double avg_words_per_doc = 0.0;
    std::map<std::string, std::size_t> court_histogram;
    std::size_t decode_warnings = 0;  // files skipped during ingest
};

/// Parse one judgment from raw JSON bytes.
/// Throws MalformedJson, MissingField, UnknownSegmentKind.
Judgment parse_judgment(const std::string& raw);

/// Serialize back to the ingest schema; parse_judgment(to_table_json(j)) == j
/// up to source_path.
std::string to_table_json(const Judgment& j);

/// Segments with kind == Para, original order preserved.
std::vector<Segment> paragraphs_of(const Judgment& j);

/// Word counts use whitespace tokenization over all segment text; histogram
/// keyed by the court-code prefix of caseno.
CorpusStats corpus_stats(const std::vector<Judgment>& corpus);

/// First run of capital letters in a caseno ("7 HKCFAR 187" -> "HKCFAR"),
/// or "UNK" when there is none.
std::string court_code(const std::string& caseno);

struct LoadResult {
    std::vector<Judgment> judgments;
    std::size_t skipped = 0;
    std::vector<std::string> warnings;  // one entry per skipped file
};

/// Ingest every .json file under dir (sorted by filename, non-recursive).
/// Files that fail UTF-8 validation or schema checks are skipped and counted.
LoadResult load_corpus_dir(const std::string& dir);

/// Strict UTF-8 well-formedness check.
bool utf8_valid(const std::string& bytes);

}  // namespace juris::corpus

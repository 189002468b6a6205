#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "juris/corpus.hpp"

namespace juris::cite {

/// Canonical citation string: uppercase, single-space separated, non-empty.
/// Ordering and equality use the canonical text; year_hint is advisory.
struct CitationKey {
    std::string text;
    std::optional<int> year_hint;

    bool operator==(const CitationKey& o) const { return text == o.text; }
    std::strong_ordering operator<=>(const CitationKey& o) const { return text <=> o.text; }
};

/// Uppercase, collapse whitespace, strip a leading bracketed year "[YYYY]"
/// into year_hint; also recovers the year of neutral citations
/// ("CACV 284/2017", "FACV NO 16 OF 2008"). Empty input -> nullopt.
std::optional<CitationKey> normalize_citation(const std::string& raw);

/// Citation regexes applied to judgment text (ECMAScript syntax).
struct PatternSet {
    std::vector<std::string> patterns;

    static PatternSet defaults();
    /// One regex per line, '#' comments; a line "!no-defaults" drops the
    /// builtin patterns, otherwise file patterns extend them.
    static PatternSet load(const std::string& path);
};

struct Extraction {
    std::vector<CitationKey> citations;     // first-occurrence order, deduplicated
    std::size_t dropped = 0;                // candidates that failed normalization
    std::size_t filtered_pre_handover = 0;  // recoverable year < 1997
};

/// Union of normalized refs-field strings and regex matches over segment
/// text. Pre-handover citations (year < 1997 when recoverable) are removed.
Extraction extract_citations(const corpus::Judgment& j);
Extraction extract_citations(const corpus::Judgment& j, const PatternSet& patterns);

/// Cited case -> citing cases, deduplicated, first-appearance order.
/// Every caseno from the corpus appears as a key even with zero citers.
struct StateSpaceGraph {
    std::map<std::string, std::vector<std::string>> cited_by;

    bool operator==(const StateSpaceGraph&) const = default;
};

StateSpaceGraph build_state_space_graph(const std::vector<corpus::Judgment>& corpus);
StateSpaceGraph build_state_space_graph(const std::vector<corpus::Judgment>& corpus,
                                        const PatternSet& patterns);
/// Low-level variant over already-canonical (caseno, citations) pairs.
StateSpaceGraph build_state_space_graph(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& cases);

/// Directed citation graph, edges citer -> cited. Nodes are kept sorted so
/// traversals and exports are deterministic.
class CitationDiGraph {
public:
    CitationDiGraph() = default;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_; }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::string& node(std::size_t id) const { return nodes_[id]; }
    std::optional<std::size_t> index_of(const std::string& key) const;
    bool contains(const std::string& key) const { return index_of(key).has_value(); }

    /// Cases cited by `id` (out-edges), sorted by node id.
    const std::vector<std::size_t>& successors(std::size_t id) const { return succ_[id]; }
    /// Citers of `id` (in-edges), sorted by node id.
    const std::vector<std::size_t>& predecessors(std::size_t id) const { return pred_[id]; }

    /// Build from node names and (citer, cited) edges; self-loops and
    /// duplicate edges are dropped.
    static CitationDiGraph build(const std::vector<std::string>& node_names,
                                 const std::vector<std::pair<std::string, std::string>>& edges);

private:
    std::vector<std::string> nodes_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<std::vector<std::size_t>> pred_;
    std::size_t edges_ = 0;
};

/// For key k with citer c in g[k], emit edge (c, k); self-loops dropped.
CitationDiGraph to_digraph(const StateSpaceGraph& g);

/// e / (n*(n-1)) for directed graphs; 0 for n <= 1.
double graph_density(std::size_t nodes, std::size_t edges);

struct RankedScores {
    std::map<std::string, double> scores;  // sums to 1, all entries > 0
    double damping = 0.85;
    std::size_t iterations = 0;
    double residual = 0.0;
};

/// Power iteration with uniform initialization and teleport; dangling mass
/// is redistributed uniformly each sweep. Stops when the L1 residual drops
/// below tol. Throws EmptyGraph.
RankedScores pagerank(const CitationDiGraph& g, double damping = 0.85, double tol = 1e-9,
                      std::size_t max_iter = 200);

/// Top-n (score desc, key asc) entries of a score map.
std::vector<std::pair<std::string, double>> top_scores(const RankedScores& ranked, std::size_t n);

enum class ColorClass { Red, Blue, Green, Yellow, Purple, Pink };
std::string to_string(ColorClass c);

struct ColoredSubgraph {
    std::string lead;
    std::vector<std::pair<std::string, std::string>> edges;  // (citer, cited)
    std::map<std::string, std::set<int>> levels;             // node -> depths 0..4
    std::map<std::string, ColorClass> colors;
};

/// Breadth-first traversal over predecessors to depth 4. Depth colors are
/// 0=red, 1=blue, 2=green, 3=yellow, 4=purple; nodes reached at multiple
/// depths are pink. Throws UnknownCase when lead is not a node.
ColoredSubgraph color_citation_network(const CitationDiGraph& g, const std::string& lead);

enum class ExportFormat { Dot, GraphMl, EdgeCsv };

/// Accepts "dot", "graphml", "edge-csv" (and "csv"); throws UnsupportedFormat.
ExportFormat export_format_from_string(const std::string& name);

/// Deterministic renderings: nodes and edges sorted lexicographically.
std::string export_graph(const ColoredSubgraph& sub, ExportFormat format);
std::string export_graph(const CitationDiGraph& g, ExportFormat format);

}  // namespace juris::cite

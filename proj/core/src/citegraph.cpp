#include "juris/citegraph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>
#include <unordered_set>

#include "juris/csv.hpp"
#include "juris/errors.hpp"

namespace juris::cite {

namespace {

constexpr int kHandoverYear = 1997;
constexpr int kMaxColorDepth = 4;

std::string collapse_upper(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    bool in_space = true;
    for (unsigned char c : raw) {
        if (std::isspace(c)) {
            if (!in_space && !out.empty()) out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(static_cast<char>(std::toupper(c)));
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

}  // namespace

std::optional<CitationKey> normalize_citation(const std::string& raw) {
    std::string text = collapse_upper(raw);
    std::optional<int> year;

    static const std::regex bracket_year(R"(^\[(\d{4})\] )");
    std::smatch m;
    if (std::regex_search(text, m, bracket_year)) {
        year = std::stoi(m[1].str());
        text = text.substr(m[0].length());
    }
    // "FACV NO. 16 OF 2008" and "FACV NO 16 OF 2008" are the same citation.
    if (auto pos = text.find(" NO. "); pos != std::string::npos) {
        text.erase(pos + 3, 1);
    }
    if (text.empty()) return std::nullopt;

    if (!year) {
        static const std::regex slash_year(R"(/(\d{4})$)");
        static const std::regex of_year(R"( OF (\d{4})$)");
        if (std::regex_search(text, m, slash_year) || std::regex_search(text, m, of_year)) {
            year = std::stoi(m[1].str());
        }
    }
    return CitationKey{std::move(text), year};
}

PatternSet PatternSet::defaults() {
    // The citation families of the corpus: reporter form with and without a
    // bracketed year, the two neutral forms, and a reporter volume with a
    // trailing series ("2 HKLRD 12 A" style tails are not matched).
    return PatternSet{{
        R"(\[\d{4}\] \d+ HK[A-Z]+ \d+)",
        R"(\b\d+ HK[A-Z]+ \d+\b)",
        R"(\b[A-Z]{2,5} \d+/\d{4}\b)",
        R"(\b[A-Z]{2,5} [Nn][Oo] \d+ [Oo][Ff] \d{4}\b)",
        R"(\b[A-Z]{2,5} [Nn][Oo]\. \d+ [Oo][Ff] \d{4}\b)",
    }};
}

PatternSet PatternSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open patterns file: " + path);
    PatternSet set = defaults();
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line == "!no-defaults") {
            set.patterns.clear();
            continue;
        }
        set.patterns.push_back(line);
    }
    return set;
}

Extraction extract_citations(const corpus::Judgment& j) {
    return extract_citations(j, PatternSet::defaults());
}

Extraction extract_citations(const corpus::Judgment& j, const PatternSet& patterns) {
    Extraction result;
    std::unordered_set<std::string> seen;

    auto add_candidate = [&](const std::string& raw) {
        auto key = normalize_citation(raw);
        if (!key) {
            ++result.dropped;
            return;
        }
        if (key->year_hint && *key->year_hint < kHandoverYear) {
            ++result.filtered_pre_handover;
            return;
        }
        if (seen.insert(key->text).second) {
            result.citations.push_back(std::move(*key));
        }
    };

    for (const std::string& ref : j.refs) add_candidate(ref);

    std::vector<std::regex> compiled;
    compiled.reserve(patterns.patterns.size());
    for (const std::string& p : patterns.patterns) compiled.emplace_back(p);

    for (const corpus::Segment& seg : j.segments) {
        // Collect spans from all patterns, then keep non-overlapping matches,
        // earlier start first, longer match first on ties (so the
        // bracketed-year form wins over the bare reporter form).
        std::vector<std::pair<std::size_t, std::size_t>> spans;  // (start, length)
        std::vector<std::string> texts;
        for (const std::regex& re : compiled) {
            for (auto it = std::sregex_iterator(seg.text.begin(), seg.text.end(), re);
                 it != std::sregex_iterator(); ++it) {
                spans.emplace_back(static_cast<std::size_t>(it->position(0)),
                                   static_cast<std::size_t>(it->length(0)));
                texts.push_back(it->str(0));
            }
        }
        std::vector<std::size_t> order(spans.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (spans[a].first != spans[b].first) return spans[a].first < spans[b].first;
            return spans[a].second > spans[b].second;
        });
        std::size_t covered_end = 0;
        for (std::size_t idx : order) {
            const auto [start, len] = spans[idx];
            if (start < covered_end) continue;
            covered_end = start + len;
            add_candidate(texts[idx]);
        }
    }
    return result;
}

namespace {

std::string canonical_caseno(const std::string& caseno) {
    auto key = normalize_citation(caseno);
    return key ? key->text : collapse_upper(caseno);
}

}  // namespace

StateSpaceGraph build_state_space_graph(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& cases) {
    StateSpaceGraph g;
    // Algorithm: every case number becomes a key; each reference r of case c
    // appends c to g[r]; a final pass deduplicates every value list keeping
    // first-appearance order.
    for (const auto& [caseno, refs] : cases) {
        g.cited_by.try_emplace(caseno);
        for (const std::string& r : refs) {
            g.cited_by[r].push_back(caseno);
        }
    }
    for (auto& [key, citers] : g.cited_by) {
        std::vector<std::string> unique;
        std::unordered_set<std::string> seen;
        for (std::string& c : citers) {
            if (seen.insert(c).second) unique.push_back(std::move(c));
        }
        citers = std::move(unique);
    }
    return g;
}

StateSpaceGraph build_state_space_graph(const std::vector<corpus::Judgment>& corpus) {
    return build_state_space_graph(corpus, PatternSet::defaults());
}

StateSpaceGraph build_state_space_graph(const std::vector<corpus::Judgment>& corpus,
                                        const PatternSet& patterns) {
    std::vector<std::pair<std::string, std::vector<std::string>>> cases;
    cases.reserve(corpus.size());
    for (const corpus::Judgment& j : corpus) {
        Extraction ex = extract_citations(j, patterns);
        std::vector<std::string> refs;
        refs.reserve(ex.citations.size());
        for (CitationKey& key : ex.citations) refs.push_back(std::move(key.text));
        cases.emplace_back(canonical_caseno(j.caseno), std::move(refs));
    }
    return build_state_space_graph(cases);
}

std::optional<std::size_t> CitationDiGraph::index_of(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

CitationDiGraph CitationDiGraph::build(const std::vector<std::string>& node_names,
                                       const std::vector<std::pair<std::string, std::string>>& edges) {
    CitationDiGraph g;
    std::set<std::string> names(node_names.begin(), node_names.end());
    for (const auto& [from, to] : edges) {
        names.insert(from);
        names.insert(to);
    }
    g.nodes_.assign(names.begin(), names.end());
    for (std::size_t i = 0; i < g.nodes_.size(); ++i) g.index_[g.nodes_[i]] = i;
    g.succ_.assign(g.nodes_.size(), {});
    g.pred_.assign(g.nodes_.size(), {});

    std::set<std::pair<std::size_t, std::size_t>> unique_edges;
    for (const auto& [from, to] : edges) {
        const std::size_t u = g.index_[from];
        const std::size_t v = g.index_[to];
        if (u == v) continue;  // self-loop
        unique_edges.emplace(u, v);
    }
    for (const auto& [u, v] : unique_edges) {
        g.succ_[u].push_back(v);
        g.pred_[v].push_back(u);
    }
    for (auto& adj : g.pred_) std::sort(adj.begin(), adj.end());
    g.edges_ = unique_edges.size();
    return g;
}

CitationDiGraph to_digraph(const StateSpaceGraph& g) {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [cited, citers] : g.cited_by) {
        names.push_back(cited);
        for (const std::string& citer : citers) {
            edges.emplace_back(citer, cited);
        }
    }
    return CitationDiGraph::build(names, edges);
}

double graph_density(std::size_t nodes, std::size_t edges) {
    if (nodes <= 1) return 0.0;
    return static_cast<double>(edges) /
           (static_cast<double>(nodes) * static_cast<double>(nodes - 1));
}

RankedScores pagerank(const CitationDiGraph& g, double damping, double tol, std::size_t max_iter) {
    if (damping <= 0.0 || damping >= 1.0) throw ConfigError("damping must lie in (0, 1)");
    const std::size_t n = g.node_count();
    if (n == 0) throw EmptyGraph();

    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    RankedScores result;
    result.damping = damping;

    const double teleport = (1.0 - damping) / static_cast<double>(n);
    double residual = 0.0;
    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
        double dangling = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            if (g.successors(u).empty()) dangling += rank[u];
        }
        const double dangling_share = damping * dangling / static_cast<double>(n);
        residual = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            double incoming = 0.0;
            for (std::size_t u : g.predecessors(v)) {
                incoming += rank[u] / static_cast<double>(g.successors(u).size());
            }
            next[v] = teleport + dangling_share + damping * incoming;
            residual += std::fabs(next[v] - rank[v]);
        }
        rank.swap(next);
        if (residual < tol) {
            ++iter;
            break;
        }
    }

    double total = 0.0;
    for (double r : rank) total += r;
    for (std::size_t v = 0; v < n; ++v) {
        result.scores[g.node(v)] = rank[v] / total;
    }
    result.iterations = iter;
    result.residual = residual;
    return result;
}

std::vector<std::pair<std::string, double>> top_scores(const RankedScores& ranked, std::size_t n) {
    std::vector<std::pair<std::string, double>> items(ranked.scores.begin(), ranked.scores.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (items.size() > n) items.resize(n);
    return items;
}

std::string to_string(ColorClass c) {
    switch (c) {
        case ColorClass::Red: return "red";
        case ColorClass::Blue: return "blue";
        case ColorClass::Green: return "green";
        case ColorClass::Yellow: return "yellow";
        case ColorClass::Purple: return "purple";
        case ColorClass::Pink: return "pink";
    }
    return "red";
}

ColoredSubgraph color_citation_network(const CitationDiGraph& g, const std::string& lead) {
    auto lead_id = g.index_of(lead);
    if (!lead_id) throw UnknownCase(lead);

    ColoredSubgraph sub;
    sub.lead = lead;

    std::map<std::size_t, std::set<int>> levels;
    levels[*lead_id] = {0};

    std::set<std::pair<std::size_t, std::size_t>> edge_set;
    std::vector<std::size_t> frontier = {*lead_id};

    for (int depth = 0; depth < kMaxColorDepth; ++depth) {
        std::vector<std::size_t> next_frontier;
        for (std::size_t u : frontier) {
            for (std::size_t p : g.predecessors(u)) {
                edge_set.emplace(p, u);
                if (p == *lead_id) continue;  // the lead keeps level {0}
                auto& lv = levels[p];
                if (lv.insert(depth + 1).second) {
                    next_frontier.push_back(p);
                }
            }
        }
        std::sort(next_frontier.begin(), next_frontier.end());
        next_frontier.erase(std::unique(next_frontier.begin(), next_frontier.end()),
                            next_frontier.end());
        frontier = std::move(next_frontier);
        if (frontier.empty()) break;
    }

    static const ColorClass kDepthColors[] = {ColorClass::Red, ColorClass::Blue, ColorClass::Green,
                                              ColorClass::Yellow, ColorClass::Purple};
    for (const auto& [id, lv] : levels) {
        const std::string& name = g.node(id);
        sub.levels[name] = lv;
        sub.colors[name] = lv.size() >= 2 ? ColorClass::Pink : kDepthColors[*lv.begin()];
    }
    for (const auto& [p, u] : edge_set) {
        sub.edges.emplace_back(g.node(p), g.node(u));
    }
    std::sort(sub.edges.begin(), sub.edges.end());
    return sub;
}

ExportFormat export_format_from_string(const std::string& name) {
    if (name == "dot") return ExportFormat::Dot;
    if (name == "graphml") return ExportFormat::GraphMl;
    if (name == "edge-csv" || name == "csv") return ExportFormat::EdgeCsv;
    throw UnsupportedFormat(name);
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

struct ExportView {
    std::vector<std::string> nodes;                            // sorted
    std::vector<std::pair<std::string, std::string>> edges;    // sorted
    const std::map<std::string, ColorClass>* colors = nullptr;
};

std::string render(const ExportView& view, ExportFormat format) {
    std::ostringstream out;
    switch (format) {
        case ExportFormat::Dot: {
            out << "digraph citation {\n";
            out << "  node [style=filled];\n";
            for (const std::string& n : view.nodes) {
                out << "  \"" << dot_escape(n) << "\"";
                if (view.colors) {
                    auto it = view.colors->find(n);
                    if (it != view.colors->end()) {
                        out << " [fillcolor=" << to_string(it->second) << "]";
                    }
                }
                out << ";\n";
            }
            for (const auto& [from, to] : view.edges) {
                out << "  \"" << dot_escape(from) << "\" -> \"" << dot_escape(to) << "\";\n";
            }
            out << "}\n";
            break;
        }
        case ExportFormat::GraphMl: {
            out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
            out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
            out << "  <key id=\"color\" for=\"node\" attr.name=\"color\" attr.type=\"string\"/>\n";
            out << "  <graph id=\"citation\" edgedefault=\"directed\">\n";
            for (const std::string& n : view.nodes) {
                out << "    <node id=\"" << xml_escape(n) << "\"";
                if (view.colors) {
                    auto it = view.colors->find(n);
                    if (it != view.colors->end()) {
                        out << "><data key=\"color\">" << to_string(it->second)
                            << "</data></node>\n";
                        continue;
                    }
                }
                out << "/>\n";
            }
            for (const auto& [from, to] : view.edges) {
                out << "    <edge source=\"" << xml_escape(from) << "\" target=\""
                    << xml_escape(to) << "\"/>\n";
            }
            out << "  </graph>\n";
            out << "</graphml>\n";
            break;
        }
        case ExportFormat::EdgeCsv: {
            out << csv::row({"citer", "cited"});
            for (const auto& [from, to] : view.edges) {
                out << csv::row({from, to});
            }
            break;
        }
    }
    return out.str();
}

}  // namespace

std::string export_graph(const ColoredSubgraph& sub, ExportFormat format) {
    ExportView view;
    for (const auto& [name, color] : sub.colors) view.nodes.push_back(name);
    std::sort(view.nodes.begin(), view.nodes.end());
    view.edges = sub.edges;
    std::sort(view.edges.begin(), view.edges.end());
    view.colors = &sub.colors;
    return render(view, format);
}

std::string export_graph(const CitationDiGraph& g, ExportFormat format) {
    ExportView view;
    view.nodes = g.nodes();
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        for (std::size_t v : g.successors(u)) {
            view.edges.emplace_back(g.node(u), g.node(v));
        }
    }
    std::sort(view.edges.begin(), view.edges.end());
    return render(view, format);
}

}  // namespace juris::cite

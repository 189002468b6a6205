#include "juris/keywords.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "juris/errors.hpp"

namespace juris::keywords {

std::string to_string(Extractor e) {
    switch (e) {
        case Extractor::TextRank: return "textrank";
        case Extractor::Rake: return "rake";
        case Extractor::Yake: return "yake";
        case Extractor::Lda: return "lda";
    }
    return "textrank";
}

Extractor extractor_from_string(const std::string& name) {
    if (name == "textrank") return Extractor::TextRank;
    if (name == "rake") return Extractor::Rake;
    if (name == "yake") return Extractor::Yake;
    if (name == "lda") return Extractor::Lda;
    throw UnsupportedFormat(name);
}

IterationTrace damped_rank(const std::vector<std::vector<std::pair<std::size_t, double>>>& adjacency,
                           double damping, double tol, std::size_t max_iter) {
    const std::size_t n = adjacency.size();
    IterationTrace trace;
    trace.scores.assign(n, 1.0);

    std::vector<double> out_weight(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        for (const auto& [v, w] : adjacency[u]) out_weight[u] += w;
    }

    std::vector<double> next(n, 0.0);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        double residual = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            double sum = 0.0;
            for (const auto& [u, w] : adjacency[v]) {
                if (out_weight[u] > 0.0) sum += w / out_weight[u] * trace.scores[u];
            }
            next[v] = (1.0 - damping) + damping * sum;
            residual += std::fabs(next[v] - trace.scores[v]);
        }
        trace.scores.swap(next);
        trace.residuals.push_back(residual);
        trace.iterations = iter + 1;
        if (residual < tol) break;
    }
    return trace;
}

namespace {

void sort_best_first(std::vector<std::pair<std::string, double>>& items, ScoreDirection direction) {
    std::sort(items.begin(), items.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second) {
            return direction == ScoreDirection::HigherBetter ? a.second > b.second
                                                             : a.second < b.second;
        }
        return a.first < b.first;
    });
}

}  // namespace

RankedKeywords textrank_keywords(const text::TokenStream& doc, const text::StopwordList& stopwords,
                                 std::size_t top_k, const TextRankOptions& opts) {
    if (opts.damping <= 0.0 || opts.damping >= 1.0) throw ConfigError("damping must lie in (0, 1)");
    if (doc.empty()) throw EmptyDocument();

    const text::TokenStream prepared = text::preprocess(doc, opts.stem, stopwords);

    // Vertex per distinct content token, edges between tokens co-occurring
    // within `window` positions of the filtered sequence, not crossing
    // sentence boundaries.
    std::map<std::string, std::size_t> vertex_of;
    std::vector<std::string> vertices;
    std::vector<std::size_t> seq;  // vertex id per kept position, sentence-segmented
    std::vector<std::size_t> sentence_of;

    std::size_t boundary_idx = 0;
    for (std::size_t i = 0; i < prepared.tokens.size(); ++i) {
        while (boundary_idx < prepared.sentence_boundaries.size() &&
               prepared.sentence_boundaries[boundary_idx] <= i) {
            ++boundary_idx;
        }
        const std::string& tok = prepared.tokens[i];
        if (!text::is_content_token(tok)) continue;
        bool is_alpha = std::all_of(tok.begin(), tok.end(), [](unsigned char c) {
            return std::isalpha(c) || c >= 0x80;
        });
        if (!is_alpha) continue;
        auto [it, inserted] = vertex_of.try_emplace(tok, vertices.size());
        if (inserted) vertices.push_back(tok);
        seq.push_back(it->second);
        sentence_of.push_back(boundary_idx);
    }

    RankedKeywords result;
    result.extractor = Extractor::TextRank;
    result.direction = ScoreDirection::HigherBetter;
    if (vertices.empty()) return result;

    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size() && j - i < opts.window; ++j) {
            if (sentence_of[j] != sentence_of[i]) break;
            if (seq[i] == seq[j]) continue;
            edges.emplace(std::min(seq[i], seq[j]), std::max(seq[i], seq[j]));
        }
    }
    std::vector<std::vector<std::pair<std::size_t, double>>> adjacency(vertices.size());
    for (const auto& [a, b] : edges) {
        adjacency[a].emplace_back(b, 1.0);
        adjacency[b].emplace_back(a, 1.0);
    }

    IterationTrace trace = damped_rank(adjacency, opts.damping, opts.tol, opts.max_iter);
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        result.items.emplace_back(vertices[v], trace.scores[v]);
    }
    sort_best_first(result.items, result.direction);
    if (result.items.size() > top_k) result.items.resize(top_k);
    return result;
}

namespace {

struct Phrase {
    std::vector<std::size_t> token_indices;
};

std::vector<Phrase> rake_phrases(const text::TokenStream& doc, const text::StopwordList& stopwords) {
    std::vector<Phrase> phrases;
    Phrase current;
    std::size_t next_break = 0;

    auto flush = [&]() {
        if (!current.token_indices.empty()) {
            phrases.push_back(std::move(current));
            current = {};
        }
    };

    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
        while (next_break < doc.phrase_breaks.size() && doc.phrase_breaks[next_break] == i) {
            flush();
            ++next_break;
        }
        const std::string& tok = doc.tokens[i];
        if (stopwords.contains(tok) || !text::is_content_token(tok)) {
            flush();
            continue;
        }
        current.token_indices.push_back(i);
    }
    flush();
    return phrases;
}

}  // namespace

RankedKeywords rake_keywords(const text::TokenStream& doc, const text::StopwordList& stopwords,
                             std::size_t top_k) {
    if (doc.empty()) throw EmptyDocument();

    const std::vector<Phrase> phrases = rake_phrases(doc, stopwords);

    // deg(w) accumulates the length of every phrase occurrence containing w
    // (self co-occurrence included); freq(w) counts occurrences.
    std::unordered_map<std::string, double> degree;
    std::unordered_map<std::string, double> freq;
    for (const Phrase& ph : phrases) {
        const double len = static_cast<double>(ph.token_indices.size());
        for (std::size_t idx : ph.token_indices) {
            const std::string& w = doc.tokens[idx];
            degree[w] += len;
            freq[w] += 1.0;
        }
    }

    std::map<std::string, double> phrase_scores;
    for (const Phrase& ph : phrases) {
        std::string key;
        double score = 0.0;
        for (std::size_t idx : ph.token_indices) {
            const std::string& w = doc.tokens[idx];
            if (!key.empty()) key += ' ';
            key += w;
            score += degree[w] / freq[w];
        }
        phrase_scores.emplace(key, score);  // duplicates share the same score
    }

    RankedKeywords result;
    result.extractor = Extractor::Rake;
    result.direction = ScoreDirection::HigherBetter;
    result.items.assign(phrase_scores.begin(), phrase_scores.end());
    sort_best_first(result.items, result.direction);
    if (result.items.size() > top_k) result.items.resize(top_k);
    return result;
}

double yake_combine(const std::vector<double>& term_scores, std::size_t keyword_frequency) {
    double product = 1.0;
    double sum = 0.0;
    for (double s : term_scores) {
        product *= s;
        sum += s;
    }
    return product / (static_cast<double>(keyword_frequency) * (1.0 + sum));
}

namespace {

bool is_all_caps(const std::string& raw) {
    bool has_alpha = false;
    for (unsigned char c : raw) {
        if (std::isalpha(c)) {
            has_alpha = true;
            if (!std::isupper(c)) return false;
        }
    }
    return has_alpha && raw.size() > 1;
}

bool is_capitalized(const std::string& raw) {
    return !raw.empty() && std::isupper(static_cast<unsigned char>(raw[0])) && !is_all_caps(raw);
}

double median_of_sorted(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct TermStats {
    double tf = 0.0;
    double tf_upper = 0.0;
    double tf_acronym = 0.0;
    std::vector<double> sentence_ids;
    std::set<std::string> left_distinct, right_distinct;
    double left_total = 0.0, right_total = 0.0;
    std::map<std::string, std::size_t> surface_counts;
    std::size_t first_seen = 0;
};

}  // namespace

RankedKeywords yake_keywords(const text::TokenStream& doc, const text::StopwordList& stopwords,
                             std::size_t top_k, const YakeOptions& opts) {
    if (doc.empty()) throw EmptyDocument();
    if (opts.ngram_max < 1) throw ConfigError("yake ngram_max must be >= 1");

    // Sentence-segmented positions of candidate terms (non-stopword tokens
    // containing a letter).
    struct Pos {
        std::size_t token_index;
        std::size_t sentence;
        bool sentence_initial;
        bool eligible;
    };
    std::vector<Pos> positions;
    std::size_t boundary_idx = 0;
    std::size_t sentence_start = 0;
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
        while (boundary_idx < doc.sentence_boundaries.size() &&
               doc.sentence_boundaries[boundary_idx] <= i) {
            sentence_start = doc.sentence_boundaries[boundary_idx];
            ++boundary_idx;
        }
        positions.push_back(Pos{i, boundary_idx, i == sentence_start,
                                !stopwords.contains(doc.tokens[i]) &&
                                    text::is_content_token(doc.tokens[i])});
    }

    std::map<std::string, TermStats> stats;
    std::size_t seen_counter = 0;
    for (const Pos& p : positions) {
        if (!p.eligible) continue;
        const std::string& term = doc.tokens[p.token_index];
        TermStats& ts = stats[term];
        if (ts.tf == 0.0) ts.first_seen = seen_counter++;
        ts.tf += 1.0;
        const std::string& raw = doc.raw[p.token_index];
        if (is_all_caps(raw)) ts.tf_acronym += 1.0;
        else if (is_capitalized(raw) && !p.sentence_initial) ts.tf_upper += 1.0;
        ts.sentence_ids.push_back(static_cast<double>(p.sentence));
        ts.surface_counts[raw] += 1;
        // co-occurrence within `window` tokens on each side, same sentence
        for (std::size_t k = 1; k <= opts.window; ++k) {
            if (p.token_index >= k) {
                const std::size_t q = p.token_index - k;
                if (positions[q].sentence == p.sentence) {
                    ts.left_distinct.insert(doc.tokens[q]);
                    ts.left_total += 1.0;
                }
            }
            const std::size_t r = p.token_index + k;
            if (r < positions.size() && positions[r].sentence == p.sentence) {
                ts.right_distinct.insert(doc.tokens[r]);
                ts.right_total += 1.0;
            }
        }
    }

    RankedKeywords result;
    result.extractor = Extractor::Yake;
    result.direction = ScoreDirection::LowerBetter;
    if (stats.empty()) return result;

    double max_tf = 0.0, mean_tf = 0.0;
    for (const auto& [term, ts] : stats) {
        max_tf = std::max(max_tf, ts.tf);
        mean_tf += ts.tf;
    }
    mean_tf /= static_cast<double>(stats.size());
    double var = 0.0;
    for (const auto& [term, ts] : stats) {
        var += (ts.tf - mean_tf) * (ts.tf - mean_tf);
    }
    const double std_tf =
        stats.size() > 1 ? std::sqrt(var / static_cast<double>(stats.size() - 1)) : 0.0;
    const double sentence_count =
        static_cast<double>(std::max<std::size_t>(1, doc.sentence_boundaries.size()));

    std::map<std::string, double> term_score;
    for (auto& [term, ts] : stats) {
        std::sort(ts.sentence_ids.begin(), ts.sentence_ids.end());
        const double w_case = std::max(ts.tf_acronym, ts.tf_upper) / (1.0 + std::log(ts.tf));
        const double w_pos = std::log(std::log(3.0 + median_of_sorted(ts.sentence_ids)));
        const double w_freq = ts.tf / (mean_tf + std_tf);
        const double dl = ts.left_total > 0.0
                              ? static_cast<double>(ts.left_distinct.size()) / ts.left_total
                              : 0.0;
        const double dr = ts.right_total > 0.0
                              ? static_cast<double>(ts.right_distinct.size()) / ts.right_total
                              : 0.0;
        const double w_rel = 1.0 + (dl + dr) * (ts.tf / max_tf);
        const double w_dif = static_cast<double>(std::set<double>(ts.sentence_ids.begin(),
                                                                  ts.sentence_ids.end())
                                                     .size()) /
                             sentence_count;
        term_score[term] = (w_pos * w_rel) / (w_case + w_freq / w_rel + w_dif / w_rel);
    }

    // Candidate n-grams: contiguous eligible positions within one sentence.
    struct Candidate {
        double score = 0.0;
        std::size_t frequency = 0;
        std::vector<std::string> terms;
        std::map<std::string, std::size_t> surface_counts;
        std::size_t first_seen = 0;
    };
    std::map<std::string, Candidate> candidates;
    std::size_t cand_counter = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!positions[i].eligible) continue;
        std::vector<std::string> terms;
        std::string key, surface;
        for (std::size_t n = 0; n < opts.ngram_max && i + n < positions.size(); ++n) {
            const Pos& p = positions[i + n];
            if (!p.eligible || p.sentence != positions[i].sentence) break;
            if (n > 0) {
                key += ' ';
                surface += ' ';
            }
            key += doc.tokens[p.token_index];
            surface += doc.raw[p.token_index];
            terms.push_back(doc.tokens[p.token_index]);
            Candidate& cand = candidates[key];
            if (cand.frequency == 0) {
                cand.terms = terms;
                cand.first_seen = cand_counter++;
            }
            cand.frequency += 1;
            cand.surface_counts[surface] += 1;
        }
    }
    for (auto& [key, cand] : candidates) {
        std::vector<double> scores;
        scores.reserve(cand.terms.size());
        for (const std::string& t : cand.terms) scores.push_back(term_score[t]);
        cand.score = yake_combine(scores, cand.frequency);
    }

    // Rank ascending, then drop near-duplicates by stem-set overlap.
    std::vector<const std::pair<const std::string, Candidate>*> ranked;
    ranked.reserve(candidates.size());
    for (const auto& entry : candidates) ranked.push_back(&entry);
    std::sort(ranked.begin(), ranked.end(), [](const auto* a, const auto* b) {
        if (a->second.score != b->second.score) return a->second.score < b->second.score;
        return a->first < b->first;
    });

    std::vector<std::set<std::string>> kept_stems;
    for (const auto* entry : ranked) {
        if (result.items.size() >= top_k) break;
        std::set<std::string> stems;
        for (const std::string& t : entry->second.terms) stems.insert(text::porter_stem(t));
        bool duplicate = false;
        for (const auto& kept : kept_stems) {
            std::size_t common = 0;
            for (const std::string& s : stems) common += kept.count(s);
            const double unions = static_cast<double>(stems.size() + kept.size() - common);
            if (unions > 0.0 && static_cast<double>(common) / unions >= opts.dedup_threshold) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        kept_stems.push_back(std::move(stems));
        // Emit the most frequent surface form (ties: lexicographically first).
        const auto& surfaces = entry->second.surface_counts;
        auto best = surfaces.begin();
        for (auto it = surfaces.begin(); it != surfaces.end(); ++it) {
            if (it->second > best->second) best = it;
        }
        result.items.emplace_back(best->first, entry->second.score);
    }
    return result;
}

namespace {

std::string overlap_normalize(const std::string& keyword) {
    std::string out;
    std::string token;
    auto flush = [&]() {
        if (token.empty()) return;
        if (!out.empty()) out += ' ';
        out += text::porter_stem(token);
        token.clear();
    };
    for (unsigned char c : keyword) {
        if (std::isspace(c)) flush();
        else token += static_cast<char>(std::tolower(c));
    }
    flush();
    return out;
}

}  // namespace

double keyword_overlap(const RankedKeywords& a, const RankedKeywords& b, std::size_t top_k) {
    std::set<std::string> sa, sb;
    for (std::size_t i = 0; i < a.items.size() && sa.size() < top_k; ++i) {
        sa.insert(overlap_normalize(a.items[i].first));
    }
    for (std::size_t i = 0; i < b.items.size() && sb.size() < top_k; ++i) {
        sb.insert(overlap_normalize(b.items[i].first));
    }
    if (sa.empty() && sb.empty()) return 1.0;
    std::size_t common = 0;
    for (const std::string& s : sa) common += sb.count(s);
    const std::size_t unions = sa.size() + sb.size() - common;
    return unions == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(unions);
}

}  // namespace juris::keywords

#include "juris/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "juris/errors.hpp"
#include "juris/rng.hpp"
#include "juris/textprep.hpp"

namespace juris::classify {

using nlohmann::json;

std::string to_string(Label label) {
    switch (label) {
        case Label::About: return "About";
        case Label::Ruling: return "Ruling";
        case Label::Allowed: return "Allowed";
        case Label::Dismissal: return "Dismissal";
    }
    return "About";
}

Label label_from_string(const std::string& name) {
    if (name == "About") return Label::About;
    if (name == "Ruling") return Label::Ruling;
    if (name == "Allowed") return Label::Allowed;
    if (name == "Dismissal") return Label::Dismissal;
    throw ConfigError("unknown label: " + name);
}

std::vector<LabelledParagraph> load_labelled_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open labelled data file: " + path);
    std::vector<LabelledParagraph> data;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected label<TAB>text");
        }
        LabelledParagraph p;
        p.label = label_from_string(line.substr(0, tab));
        p.text = line.substr(tab + 1);
        if (p.text.empty()) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty paragraph text");
        }
        data.push_back(std::move(p));
    }
    return data;
}

std::string to_string(VectorizerMode mode) {
    return mode == VectorizerMode::Count ? "count" : "tfidf";
}

Vectorizer Vectorizer::fit(const std::vector<std::string>& docs, VectorizerMode mode,
                           bool smooth_idf) {
    if (docs.empty()) throw EmptyCorpus();
    Vectorizer v;
    v.mode_ = mode;
    v.smooth_idf_ = smooth_idf;

    std::map<std::string, std::size_t> doc_freq;
    for (const std::string& doc : docs) {
        std::map<std::string, std::size_t> counts;
        for (const std::string& tok : text::tokenize(doc).tokens) counts[tok] += 1;
        for (const auto& [tok, n] : counts) doc_freq[tok] += 1;
    }
    std::size_t col = 0;
    for (const auto& [tok, df] : doc_freq) v.vocabulary_[tok] = col++;

    if (mode == VectorizerMode::Tfidf) {
        const double n_docs = static_cast<double>(docs.size());
        v.idf_.resize(v.vocabulary_.size());
        for (const auto& [tok, column] : v.vocabulary_) {
            const double df = static_cast<double>(doc_freq[tok]);
            v.idf_[column] = smooth_idf ? std::log((1.0 + n_docs) / (1.0 + df)) + 1.0
                                        : std::log(n_docs / (1.0 + df));
        }
    }
    v.fitted_ = true;
    return v;
}

SparseVector Vectorizer::transform(const std::string& doc) const {
    if (!fitted_) throw NotFitted();
    std::map<std::size_t, double> counts;
    double total = 0.0;
    for (const std::string& tok : text::tokenize(doc).tokens) {
        total += 1.0;
        auto it = vocabulary_.find(tok);
        if (it != vocabulary_.end()) counts[it->second] += 1.0;
    }
    SparseVector out;
    out.reserve(counts.size());
    for (const auto& [column, count] : counts) {
        double value = count;
        if (mode_ == VectorizerMode::Tfidf) {
            value = (total > 0.0 ? count / total : 0.0) * idf_[column];
        }
        out.emplace_back(column, value);
    }
    return out;
}

Vectorizer Vectorizer::restore(VectorizerMode mode, bool smooth_idf,
                               std::map<std::string, std::size_t> vocabulary,
                               std::vector<double> idf) {
    Vectorizer v;
    v.mode_ = mode;
    v.smooth_idf_ = smooth_idf;
    v.vocabulary_ = std::move(vocabulary);
    v.idf_ = std::move(idf);
    v.fitted_ = true;
    return v;
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::BernoulliNb: return "bernoulli_nb";
        case ModelKind::MultinomialNb: return "multinomial_nb";
        case ModelKind::ComplementNb: return "complement_nb";
        case ModelKind::LogReg: return "logreg";
        case ModelKind::LinearSvm: return "linear_svm";
        case ModelKind::Mlp: return "mlp";
        case ModelKind::RbmLogistic: return "rbm_logistic";
    }
    return "multinomial_nb";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "bernoulli_nb") return ModelKind::BernoulliNb;
    if (name == "multinomial_nb") return ModelKind::MultinomialNb;
    if (name == "complement_nb") return ModelKind::ComplementNb;
    if (name == "logreg") return ModelKind::LogReg;
    if (name == "linear_svm") return ModelKind::LinearSvm;
    if (name == "mlp") return ModelKind::Mlp;
    if (name == "rbm_logistic") return ModelKind::RbmLogistic;
    throw ConfigError("unknown model kind: " + name);
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_nb(ModelKind kind) {
    return kind == ModelKind::BernoulliNb || kind == ModelKind::MultinomialNb ||
           kind == ModelKind::ComplementNb;
}

double sparse_dot(const std::vector<double>& dense, const SparseVector& sparse) {
    double sum = 0.0;
    for (const auto& [col, val] : sparse) sum += dense[col] * val;
    return sum;
}

void check_finite(const std::vector<std::vector<double>>& weights, const char* what) {
    for (const auto& row : weights) {
        for (double w : row) {
            if (!std::isfinite(w)) throw NonFinite(what);
        }
    }
}

std::array<double, kNumLabels> softmax4(const std::array<double, kNumLabels>& scores) {
    std::array<double, kNumLabels> out{};
    double max_score = scores[0];
    for (double s : scores) max_score = std::max(max_score, s);
    double total = 0.0;
    for (std::size_t c = 0; c < kNumLabels; ++c) {
        out[c] = std::isfinite(scores[c]) ? std::exp(scores[c] - max_score) : 0.0;
        total += out[c];
    }
    for (double& p : out) p /= total;
    return out;
}

void fit_naive_bayes(TrainedModel& m, const std::vector<SparseVector>& xs,
                     const std::vector<int>& ys) {
    const std::size_t vocab = m.vectorizer.vocabulary_size();
    const double alpha = m.hyper.nb_alpha;

    std::array<double, kNumLabels> class_counts{};
    for (int y : ys) class_counts[static_cast<std::size_t>(y)] += 1.0;

    m.class_log_prior.assign(kNumLabels, kNegInf);
    for (std::size_t c = 0; c < kNumLabels; ++c) {
        if (class_counts[c] > 0.0) {
            m.class_log_prior[c] = std::log(class_counts[c] / static_cast<double>(ys.size()));
        }
    }

    // Per-class feature accumulation: raw values for multinomial/complement,
    // presence indicators for bernoulli.
    std::vector<std::vector<double>> counts(kNumLabels, std::vector<double>(vocab, 0.0));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto& row = counts[static_cast<std::size_t>(ys[i])];
        for (const auto& [col, val] : xs[i]) {
            row[col] += m.kind == ModelKind::BernoulliNb ? (val > 0.0 ? 1.0 : 0.0) : val;
        }
    }

    m.feature_log_prob.assign(kNumLabels, std::vector<double>(vocab, 0.0));
    switch (m.kind) {
        case ModelKind::MultinomialNb: {
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                double total = 0.0;
                for (double v : counts[c]) total += v;
                const double denom = total + alpha * static_cast<double>(vocab);
                for (std::size_t t = 0; t < vocab; ++t) {
                    m.feature_log_prob[c][t] = std::log((counts[c][t] + alpha) / denom);
                }
            }
            break;
        }
        case ModelKind::BernoulliNb: {
            m.feature_log_neg.assign(kNumLabels, std::vector<double>(vocab, 0.0));
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                const double denom = class_counts[c] + 2.0 * alpha;
                for (std::size_t t = 0; t < vocab; ++t) {
                    const double p = (counts[c][t] + alpha) / denom;
                    m.feature_log_prob[c][t] = std::log(p);
                    m.feature_log_neg[c][t] = std::log(1.0 - p);
                }
            }
            break;
        }
        case ModelKind::ComplementNb: {
            std::vector<double> all_counts(vocab, 0.0);
            double all_total = 0.0;
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                for (std::size_t t = 0; t < vocab; ++t) {
                    all_counts[t] += counts[c][t];
                    all_total += counts[c][t];
                }
            }
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                double class_total = 0.0;
                for (double v : counts[c]) class_total += v;
                const double comp_total = all_total - class_total;
                const double denom = comp_total + alpha * static_cast<double>(vocab);
                for (std::size_t t = 0; t < vocab; ++t) {
                    const double comp = all_counts[t] - counts[c][t];
                    m.feature_log_prob[c][t] = std::log((comp + alpha) / denom);
                }
            }
            break;
        }
        default: break;
    }
}

std::array<double, kNumLabels> nb_scores(const TrainedModel& m, const SparseVector& x) {
    std::array<double, kNumLabels> scores{};
    switch (m.kind) {
        case ModelKind::MultinomialNb: {
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                double s = m.class_log_prior[c];
                for (const auto& [col, val] : x) s += val * m.feature_log_prob[c][col];
                scores[c] = s;
            }
            break;
        }
        case ModelKind::BernoulliNb: {
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                if (m.class_log_prior[c] == kNegInf) {
                    scores[c] = kNegInf;
                    continue;
                }
                double s = m.class_log_prior[c];
                for (double neg : m.feature_log_neg[c]) s += neg;
                for (const auto& [col, val] : x) {
                    if (val > 0.0) {
                        s += m.feature_log_prob[c][col] - m.feature_log_neg[c][col];
                    }
                }
                scores[c] = s;
            }
            break;
        }
        case ModelKind::ComplementNb: {
            // Complement scoring: prefer the class whose complement matches
            // the document least.
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                double s = 0.0;
                for (const auto& [col, val] : x) s += val * m.feature_log_prob[c][col];
                scores[c] = -s;
            }
            break;
        }
        default: break;
    }
    return scores;
}

void fit_logistic(std::vector<std::vector<double>>& w, std::vector<double>& b,
                  const std::vector<SparseVector>& xs, const std::vector<int>& ys, double lr,
                  double l2, std::size_t epochs, Rng& rng, std::vector<double>* trace,
                  const std::vector<SparseVector>* trace_xs = nullptr,
                  const std::vector<int>* trace_ys = nullptr) {
    const std::size_t classes = w.size();
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t i : order) {
            std::array<double, kNumLabels> scores{};
            for (std::size_t c = 0; c < classes; ++c) {
                scores[c] = b[c] + sparse_dot(w[c], xs[i]);
            }
            const auto probs = softmax4(scores);
            for (std::size_t c = 0; c < classes; ++c) {
                const double delta = probs[c] - (static_cast<int>(c) == ys[i] ? 1.0 : 0.0);
                const double decay = 1.0 - lr * 2.0 * l2;
                for (double& wv : w[c]) wv *= decay;
                for (const auto& [col, val] : xs[i]) {
                    w[c][col] -= lr * delta * val;
                }
                b[c] -= lr * delta;
            }
        }
        if (trace) {
            trace->push_back(logreg_objective(w, b, trace_xs ? *trace_xs : xs,
                                              trace_ys ? *trace_ys : ys, l2));
        }
        check_finite(w, "logistic weights");
    }
}

void fit_svm(TrainedModel& m, const std::vector<SparseVector>& xs, const std::vector<int>& ys,
             Rng& rng) {
    const std::size_t vocab = m.vectorizer.vocabulary_size();
    const double lr = m.hyper.learning_rate;
    const double lambda = m.hyper.l2;
    m.weights.assign(kNumLabels, std::vector<double>(vocab, 0.0));
    m.bias.assign(kNumLabels, 0.0);

    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (std::size_t epoch = 0; epoch < m.hyper.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t i : order) {
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                const double y = static_cast<int>(c) == ys[i] ? 1.0 : -1.0;
                const double margin = y * (sparse_dot(m.weights[c], xs[i]) - m.bias[c]);
                const double decay = 1.0 - lr * 2.0 * lambda;
                for (double& wv : m.weights[c]) wv *= decay;
                if (margin < 1.0) {
                    for (const auto& [col, val] : xs[i]) {
                        m.weights[c][col] += lr * y * val;
                    }
                    m.bias[c] -= lr * y;  // d hinge / d b = +y
                }
            }
        }
        double objective = 0.0;
        for (std::size_t c = 0; c < kNumLabels; ++c) {
            std::vector<int> ys_pm1(ys.size());
            for (std::size_t i = 0; i < ys.size(); ++i) {
                ys_pm1[i] = static_cast<int>(c) == ys[i] ? 1 : -1;
            }
            objective += svm_objective(m.weights[c], m.bias[c], xs, ys_pm1, lambda);
        }
        m.objective_trace.push_back(objective);
        check_finite(m.weights, "svm weights");
    }
}

void fit_mlp(TrainedModel& m, const std::vector<SparseVector>& xs, const std::vector<int>& ys,
             Rng& rng) {
    const std::size_t vocab = m.vectorizer.vocabulary_size();
    const std::size_t hidden = m.hyper.hidden;
    const double lr = m.hyper.learning_rate;
    const double l2 = m.hyper.l2;

    auto glorot = [&](std::size_t fan_in, std::size_t fan_out) {
        return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    };
    const double r1 = glorot(vocab, hidden);
    m.hidden_weights.assign(hidden, std::vector<double>(vocab, 0.0));
    for (auto& row : m.hidden_weights) {
        for (double& v : row) v = (rng.uniform01() * 2.0 - 1.0) * r1;
    }
    m.hidden_bias.assign(hidden, 0.0);
    const double r2 = glorot(hidden, kNumLabels);
    m.output_weights.assign(kNumLabels, std::vector<double>(hidden, 0.0));
    for (auto& row : m.output_weights) {
        for (double& v : row) v = (rng.uniform01() * 2.0 - 1.0) * r2;
    }
    m.output_bias.assign(kNumLabels, 0.0);

    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::vector<double> z1(hidden), a1(hidden), d1(hidden);

    for (std::size_t epoch = 0; epoch < m.hyper.epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;
        for (std::size_t i : order) {
            for (std::size_t h = 0; h < hidden; ++h) {
                z1[h] = m.hidden_bias[h] + sparse_dot(m.hidden_weights[h], xs[i]);
                a1[h] = z1[h] > 0.0 ? z1[h] : 0.0;
            }
            std::array<double, kNumLabels> scores{};
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                double s = m.output_bias[c];
                for (std::size_t h = 0; h < hidden; ++h) s += m.output_weights[c][h] * a1[h];
                scores[c] = s;
            }
            const auto probs = softmax4(scores);
            epoch_loss -= std::log(std::max(probs[static_cast<std::size_t>(ys[i])], 1e-300));

            std::array<double, kNumLabels> d2{};
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                d2[c] = probs[c] - (static_cast<int>(c) == ys[i] ? 1.0 : 0.0);
            }
            for (std::size_t h = 0; h < hidden; ++h) {
                double grad = 0.0;
                for (std::size_t c = 0; c < kNumLabels; ++c) grad += m.output_weights[c][h] * d2[c];
                d1[h] = z1[h] > 0.0 ? grad : 0.0;
            }
            for (std::size_t c = 0; c < kNumLabels; ++c) {
                for (std::size_t h = 0; h < hidden; ++h) {
                    m.output_weights[c][h] -=
                        lr * (d2[c] * a1[h] + 2.0 * l2 * m.output_weights[c][h]);
                }
                m.output_bias[c] -= lr * d2[c];
            }
            for (std::size_t h = 0; h < hidden; ++h) {
                if (d1[h] == 0.0) continue;
                for (const auto& [col, val] : xs[i]) {
                    m.hidden_weights[h][col] -= lr * d1[h] * val;
                }
                m.hidden_bias[h] -= lr * d1[h];
            }
        }
        m.objective_trace.push_back(epoch_loss / static_cast<double>(xs.size()));
        check_finite(m.output_weights, "mlp weights");
    }
}

std::vector<double> dense_binary(const SparseVector& x, std::size_t vocab) {
    std::vector<double> v(vocab, 0.0);
    for (const auto& [col, val] : x) {
        if (val > 0.0) v[col] = 1.0;
    }
    return v;
}

void fit_rbm_logistic(TrainedModel& m, const std::vector<SparseVector>& xs,
                      const std::vector<int>& ys, Rng& rng) {
    const std::size_t vocab = m.vectorizer.vocabulary_size();
    const std::size_t hidden = m.hyper.hidden;
    const double lr = m.hyper.rbm_learning_rate;

    m.rbm_weights.assign(vocab, std::vector<double>(hidden, 0.0));
    for (auto& row : m.rbm_weights) {
        for (double& v : row) v = (rng.uniform01() * 2.0 - 1.0) * 0.01;
    }
    m.rbm_visible_bias.assign(vocab, 0.0);
    m.rbm_hidden_bias.assign(hidden, 0.0);

    std::vector<double> ph0(hidden), h0(hidden), v1(vocab), ph1(hidden);
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (std::size_t epoch = 0; epoch < m.hyper.rbm_epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t i : order) {
            // positive phase over the sparse binary visible vector
            for (std::size_t h = 0; h < hidden; ++h) {
                double act = m.rbm_hidden_bias[h];
                for (const auto& [col, val] : xs[i]) {
                    if (val > 0.0) act += m.rbm_weights[col][h];
                }
                ph0[h] = 1.0 / (1.0 + std::exp(-act));
                h0[h] = rng.uniform01() < ph0[h] ? 1.0 : 0.0;
            }
            // negative phase (CD-1): probabilities, not samples
            for (std::size_t t = 0; t < vocab; ++t) {
                double act = m.rbm_visible_bias[t];
                for (std::size_t h = 0; h < hidden; ++h) {
                    if (h0[h] > 0.0) act += m.rbm_weights[t][h];
                }
                v1[t] = 1.0 / (1.0 + std::exp(-act));
            }
            for (std::size_t h = 0; h < hidden; ++h) {
                double act = m.rbm_hidden_bias[h];
                for (std::size_t t = 0; t < vocab; ++t) act += m.rbm_weights[t][h] * v1[t];
                ph1[h] = 1.0 / (1.0 + std::exp(-act));
            }
            // gradient step
            for (const auto& [col, val] : xs[i]) {
                if (val <= 0.0) continue;
                for (std::size_t h = 0; h < hidden; ++h) {
                    m.rbm_weights[col][h] += lr * ph0[h];
                }
                m.rbm_visible_bias[col] += lr;
            }
            for (std::size_t t = 0; t < vocab; ++t) {
                const double vneg = v1[t];
                if (vneg == 0.0) continue;
                for (std::size_t h = 0; h < hidden; ++h) {
                    m.rbm_weights[t][h] -= lr * vneg * ph1[h];
                }
                m.rbm_visible_bias[t] -= lr * vneg;
            }
            for (std::size_t h = 0; h < hidden; ++h) {
                m.rbm_hidden_bias[h] += lr * (ph0[h] - ph1[h]);
            }
        }
        double fe = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            fe += rbm_free_energy(m, dense_binary(xs[i], vocab));
        }
        m.free_energy_trace.push_back(fe / static_cast<double>(xs.size()));
        check_finite(m.rbm_weights, "rbm weights");
    }

    // logistic head over hidden activations
    std::vector<SparseVector> hidden_features(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::vector<double> probs = rbm_hidden_probabilities(m, dense_binary(xs[i], vocab));
        hidden_features[i].reserve(hidden);
        for (std::size_t h = 0; h < hidden; ++h) {
            hidden_features[i].emplace_back(h, probs[h]);
        }
    }
    m.weights.assign(kNumLabels, std::vector<double>(hidden, 0.0));
    m.bias.assign(kNumLabels, 0.0);
    fit_logistic(m.weights, m.bias, hidden_features, ys, m.hyper.learning_rate, m.hyper.l2,
                 m.hyper.epochs, rng, &m.objective_trace);
}

}  // namespace

TrainedModel train(const std::vector<LabelledParagraph>& data, ModelKind kind, const Hyper& hyper,
                   std::uint64_t seed) {
    if (data.empty()) throw DegenerateData("no training examples");
    std::array<bool, kNumLabels> present{};
    for (const LabelledParagraph& p : data) present[static_cast<std::size_t>(p.label)] = true;
    if (std::count(present.begin(), present.end(), true) < 2) {
        throw DegenerateData("training data holds a single class");
    }

    TrainedModel m;
    m.kind = kind;
    m.seed = seed;
    m.hyper = hyper;

    const VectorizerMode mode =
        hyper.vectorizer.value_or(is_nb(kind) || kind == ModelKind::RbmLogistic
                                      ? VectorizerMode::Count
                                      : VectorizerMode::Tfidf);
    std::vector<std::string> texts;
    texts.reserve(data.size());
    for (const LabelledParagraph& p : data) texts.push_back(p.text);
    m.vectorizer = Vectorizer::fit(texts, mode, hyper.smooth_idf);

    std::vector<SparseVector> xs(data.size());
    std::vector<int> ys(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        xs[i] = m.vectorizer.transform(data[i].text);
        ys[i] = static_cast<int>(data[i].label);
    }

    Rng rng(seed);
    switch (kind) {
        case ModelKind::BernoulliNb:
        case ModelKind::MultinomialNb:
        case ModelKind::ComplementNb:
            fit_naive_bayes(m, xs, ys);
            break;
        case ModelKind::LogReg: {
            m.weights.assign(kNumLabels, std::vector<double>(m.vectorizer.vocabulary_size(), 0.0));
            m.bias.assign(kNumLabels, 0.0);
            fit_logistic(m.weights, m.bias, xs, ys, hyper.learning_rate, hyper.l2, hyper.epochs,
                         rng, &m.objective_trace);
            break;
        }
        case ModelKind::LinearSvm:
            fit_svm(m, xs, ys, rng);
            break;
        case ModelKind::Mlp:
            fit_mlp(m, xs, ys, rng);
            break;
        case ModelKind::RbmLogistic:
            fit_rbm_logistic(m, xs, ys, rng);
            break;
    }
    m.fitted = true;
    return m;
}

std::vector<std::array<double, kNumLabels>> predict_scores(const TrainedModel& m,
                                                           const std::vector<std::string>& texts) {
    if (!m.fitted) throw NotFitted();
    std::vector<std::array<double, kNumLabels>> all;
    all.reserve(texts.size());
    for (const std::string& text : texts) {
        const SparseVector x = m.vectorizer.transform(text);
        std::array<double, kNumLabels> scores{};
        switch (m.kind) {
            case ModelKind::BernoulliNb:
            case ModelKind::MultinomialNb:
            case ModelKind::ComplementNb:
                scores = nb_scores(m, x);
                break;
            case ModelKind::LogReg:
            case ModelKind::LinearSvm: {
                for (std::size_t c = 0; c < kNumLabels; ++c) {
                    const double shift = m.kind == ModelKind::LinearSvm ? -m.bias[c] : m.bias[c];
                    scores[c] = sparse_dot(m.weights[c], x) + shift;
                }
                break;
            }
            case ModelKind::Mlp: {
                const std::size_t hidden = m.hyper.hidden;
                std::vector<double> a1(hidden);
                for (std::size_t h = 0; h < hidden; ++h) {
                    const double z = m.hidden_bias[h] + sparse_dot(m.hidden_weights[h], x);
                    a1[h] = z > 0.0 ? z : 0.0;
                }
                for (std::size_t c = 0; c < kNumLabels; ++c) {
                    double s = m.output_bias[c];
                    for (std::size_t h = 0; h < hidden; ++h) s += m.output_weights[c][h] * a1[h];
                    scores[c] = s;
                }
                break;
            }
            case ModelKind::RbmLogistic: {
                const std::vector<double> probs = rbm_hidden_probabilities(
                    m, dense_binary(x, m.vectorizer.vocabulary_size()));
                for (std::size_t c = 0; c < kNumLabels; ++c) {
                    double s = m.bias[c];
                    for (std::size_t h = 0; h < probs.size(); ++h) s += m.weights[c][h] * probs[h];
                    scores[c] = s;
                }
                break;
            }
        }
        all.push_back(scores);
    }
    return all;
}

std::vector<Label> predict(const TrainedModel& m, const std::vector<std::string>& texts) {
    std::vector<Label> labels;
    labels.reserve(texts.size());
    for (const auto& scores : predict_scores(m, texts)) {
        std::size_t best = 0;
        for (std::size_t c = 1; c < kNumLabels; ++c) {
            if (scores[c] > scores[best]) best = c;  // ties keep declaration order
        }
        labels.push_back(static_cast<Label>(best));
    }
    return labels;
}

std::array<double, kNumLabels> nb_posterior(const TrainedModel& m, const std::string& text) {
    if (!m.fitted) throw NotFitted();
    if (!is_nb(m.kind)) throw ConfigError("nb_posterior requires a naive bayes model");
    const auto scores = predict_scores(m, {text});
    return softmax4(scores[0]);
}

EvalReport evaluate(const std::vector<Label>& truth, const std::vector<Label>& pred) {
    if (truth.size() != pred.size()) {
        throw LengthMismatch("truth has " + std::to_string(truth.size()) + " labels, predictions " +
                             std::to_string(pred.size()));
    }
    EvalReport report;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        report.confusion[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(pred[i])] += 1;
    }
    const double total = static_cast<double>(truth.size());
    std::size_t correct = 0;
    for (std::size_t c = 0; c < kNumLabels; ++c) correct += report.confusion[c][c];
    report.accuracy = total > 0.0 ? static_cast<double>(correct) / total : 0.0;

    std::array<double, kNumLabels> support{};
    for (std::size_t c = 0; c < kNumLabels; ++c) {
        double tp = static_cast<double>(report.confusion[c][c]);
        double pred_c = 0.0, true_c = 0.0;
        for (std::size_t k = 0; k < kNumLabels; ++k) {
            pred_c += static_cast<double>(report.confusion[k][c]);
            true_c += static_cast<double>(report.confusion[c][k]);
        }
        support[c] = true_c;
        report.precision[c] = pred_c > 0.0 ? tp / pred_c : 0.0;
        report.recall[c] = true_c > 0.0 ? tp / true_c : 0.0;
        const double pr = report.precision[c] + report.recall[c];
        report.f1[c] = pr > 0.0 ? 2.0 * report.precision[c] * report.recall[c] / pr : 0.0;
    }
    for (std::size_t c = 0; c < kNumLabels; ++c) {
        report.macro_precision += report.precision[c] / static_cast<double>(kNumLabels);
        report.macro_recall += report.recall[c] / static_cast<double>(kNumLabels);
        report.macro_f1 += report.f1[c] / static_cast<double>(kNumLabels);
        if (total > 0.0) {
            report.weighted_precision += report.precision[c] * support[c] / total;
            report.weighted_recall += report.recall[c] * support[c] / total;
            report.weighted_f1 += report.f1[c] * support[c] / total;
        }
    }
    return report;
}

Matrix attention_weights(const Matrix& q, const Matrix& k) {
    if (q.cols != k.cols) {
        throw ShapeMismatch("Q has " + std::to_string(q.cols) + " columns, K has " +
                            std::to_string(k.cols));
    }
    if (k.cols == 0) throw ShapeMismatch("dim(K) must be positive");
    if (k.rows == 0) throw ShapeMismatch("K must hold at least one row");
    const double scale = 1.0 / std::sqrt(static_cast<double>(k.cols));

    Matrix weights(q.rows, k.rows);
    for (std::size_t i = 0; i < q.rows; ++i) {
        double row_max = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k.rows; ++j) {
            double dot = 0.0;
            for (std::size_t d = 0; d < q.cols; ++d) dot += q.at(i, d) * k.at(j, d);
            weights.at(i, j) = dot * scale;
            row_max = std::max(row_max, weights.at(i, j));
        }
        double total = 0.0;
        for (std::size_t j = 0; j < k.rows; ++j) {
            weights.at(i, j) = std::exp(weights.at(i, j) - row_max);
            total += weights.at(i, j);
        }
        for (std::size_t j = 0; j < k.rows; ++j) weights.at(i, j) /= total;
    }
    return weights;
}

Matrix attention(const Matrix& q, const Matrix& k, const Matrix& v) {
    if (k.rows != v.rows) {
        throw ShapeMismatch("K has " + std::to_string(k.rows) + " rows, V has " +
                            std::to_string(v.rows));
    }
    const Matrix weights = attention_weights(q, k);
    Matrix out(q.rows, v.cols);
    for (std::size_t i = 0; i < q.rows; ++i) {
        for (std::size_t j = 0; j < k.rows; ++j) {
            const double w = weights.at(i, j);
            for (std::size_t d = 0; d < v.cols; ++d) {
                out.at(i, d) += w * v.at(j, d);
            }
        }
    }
    return out;
}

std::pair<std::vector<LabelledParagraph>, std::vector<LabelledParagraph>> split(
    std::vector<LabelledParagraph> data, double train_fraction, std::uint64_t seed) {
    if (train_fraction <= 0.0 || train_fraction >= 1.0) {
        throw ConfigError("train fraction must lie in (0, 1)");
    }
    Rng rng(seed);
    rng.shuffle(data);
    const std::size_t train_size =
        static_cast<std::size_t>(std::floor(static_cast<double>(data.size()) * train_fraction));
    std::vector<LabelledParagraph> train(data.begin(), data.begin() + static_cast<long>(train_size));
    std::vector<LabelledParagraph> test(data.begin() + static_cast<long>(train_size), data.end());
    return {std::move(train), std::move(test)};
}

double logreg_objective(const std::vector<std::vector<double>>& w, const std::vector<double>& b,
                        const std::vector<SparseVector>& xs, const std::vector<int>& ys, double l2) {
    double loss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::array<double, kNumLabels> scores{};
        for (std::size_t c = 0; c < w.size(); ++c) scores[c] = b[c] + sparse_dot(w[c], xs[i]);
        double max_score = scores[0];
        for (double s : scores) max_score = std::max(max_score, s);
        double lse = 0.0;
        for (std::size_t c = 0; c < w.size(); ++c) lse += std::exp(scores[c] - max_score);
        loss += std::log(lse) + max_score - scores[static_cast<std::size_t>(ys[i])];
    }
    loss /= static_cast<double>(xs.size());
    double reg = 0.0;
    for (const auto& row : w) {
        for (double v : row) reg += v * v;
    }
    return loss + l2 * reg;
}

void logreg_gradient(const std::vector<std::vector<double>>& w, const std::vector<double>& b,
                     const std::vector<SparseVector>& xs, const std::vector<int>& ys, double l2,
                     std::vector<std::vector<double>>& grad_w, std::vector<double>& grad_b) {
    const std::size_t classes = w.size();
    grad_w.assign(classes, std::vector<double>(w[0].size(), 0.0));
    grad_b.assign(classes, 0.0);
    const double inv_n = 1.0 / static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::array<double, kNumLabels> scores{};
        for (std::size_t c = 0; c < classes; ++c) scores[c] = b[c] + sparse_dot(w[c], xs[i]);
        const auto probs = softmax4(scores);
        for (std::size_t c = 0; c < classes; ++c) {
            const double delta = (probs[c] - (static_cast<int>(c) == ys[i] ? 1.0 : 0.0)) * inv_n;
            for (const auto& [col, val] : xs[i]) grad_w[c][col] += delta * val;
            grad_b[c] += delta;
        }
    }
    for (std::size_t c = 0; c < classes; ++c) {
        for (std::size_t t = 0; t < w[c].size(); ++t) {
            grad_w[c][t] += 2.0 * l2 * w[c][t];
        }
    }
}

double svm_objective(const std::vector<double>& w, double b, const std::vector<SparseVector>& xs,
                     const std::vector<int>& ys_pm1, double lambda) {
    double norm = 0.0;
    for (double v : w) norm += v * v;
    double hinge = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double margin = static_cast<double>(ys_pm1[i]) * (sparse_dot(w, xs[i]) - b);
        hinge += std::max(0.0, 1.0 - margin);
    }
    return lambda * norm + hinge / static_cast<double>(xs.size());
}

double rbm_free_energy(const TrainedModel& m, const std::vector<double>& visible) {
    double energy = 0.0;
    for (std::size_t t = 0; t < visible.size(); ++t) {
        energy -= m.rbm_visible_bias[t] * visible[t];
    }
    for (std::size_t h = 0; h < m.rbm_hidden_bias.size(); ++h) {
        double act = m.rbm_hidden_bias[h];
        for (std::size_t t = 0; t < visible.size(); ++t) {
            if (visible[t] != 0.0) act += m.rbm_weights[t][h] * visible[t];
        }
        energy -= std::log1p(std::exp(act));
    }
    return energy;
}

std::vector<double> rbm_hidden_probabilities(const TrainedModel& m,
                                             const std::vector<double>& visible) {
    std::vector<double> probs(m.rbm_hidden_bias.size());
    for (std::size_t h = 0; h < probs.size(); ++h) {
        double act = m.rbm_hidden_bias[h];
        for (std::size_t t = 0; t < visible.size(); ++t) {
            if (visible[t] != 0.0) act += m.rbm_weights[t][h] * visible[t];
        }
        probs[h] = 1.0 / (1.0 + std::exp(-act));
    }
    return probs;
}

namespace {

json matrix_to_json(const std::vector<std::vector<double>>& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

std::vector<std::vector<double>> matrix_from_json(const json& j) {
    std::vector<std::vector<double>> m;
    for (const auto& row : j) m.push_back(row.get<std::vector<double>>());
    return m;
}

}  // namespace

void save_model(const TrainedModel& m, const std::string& path) {
    if (!m.fitted) throw NotFitted();
    json root;
    root["kind"] = to_string(m.kind);
    root["seed"] = m.seed;
    root["vectorizer"] = {
        {"mode", to_string(m.vectorizer.mode())},
        {"smooth_idf", m.vectorizer.smooth_idf()},
        {"idf", m.vectorizer.idf()},
    };
    json vocab = json::array();
    std::vector<std::string> ordered(m.vectorizer.vocabulary_size());
    for (const auto& [token, column] : m.vectorizer.vocabulary()) ordered[column] = token;
    for (const std::string& token : ordered) vocab.push_back(token);
    root["vectorizer"]["vocabulary"] = std::move(vocab);
    root["hyper"] = {
        {"learning_rate", m.hyper.learning_rate}, {"l2", m.hyper.l2},
        {"epochs", m.hyper.epochs},               {"hidden", m.hyper.hidden},
        {"nb_alpha", m.hyper.nb_alpha},           {"rbm_learning_rate", m.hyper.rbm_learning_rate},
        {"rbm_epochs", m.hyper.rbm_epochs},
    };
    root["class_log_prior"] = m.class_log_prior;
    root["feature_log_prob"] = matrix_to_json(m.feature_log_prob);
    root["feature_log_neg"] = matrix_to_json(m.feature_log_neg);
    root["weights"] = matrix_to_json(m.weights);
    root["bias"] = m.bias;
    root["hidden_weights"] = matrix_to_json(m.hidden_weights);
    root["hidden_bias"] = m.hidden_bias;
    root["output_weights"] = matrix_to_json(m.output_weights);
    root["output_bias"] = m.output_bias;
    root["rbm_weights"] = matrix_to_json(m.rbm_weights);
    root["rbm_visible_bias"] = m.rbm_visible_bias;
    root["rbm_hidden_bias"] = m.rbm_hidden_bias;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model file: " + path);
    out << root.dump(1);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    json root = json::parse(buf.str(), nullptr, false);
    if (root.is_discarded()) throw MalformedJson("model file " + path);

    TrainedModel m;
    m.kind = model_kind_from_string(root.at("kind").get<std::string>());
    m.seed = root.at("seed").get<std::uint64_t>();
    const json& vec = root.at("vectorizer");
    std::map<std::string, std::size_t> vocabulary;
    std::size_t column = 0;
    for (const auto& token : vec.at("vocabulary")) {
        vocabulary[token.get<std::string>()] = column++;
    }
    m.vectorizer = Vectorizer::restore(
        vec.at("mode").get<std::string>() == "count" ? VectorizerMode::Count : VectorizerMode::Tfidf,
        vec.at("smooth_idf").get<bool>(), std::move(vocabulary),
        vec.at("idf").get<std::vector<double>>());
    const json& hyper = root.at("hyper");
    m.hyper.learning_rate = hyper.at("learning_rate").get<double>();
    m.hyper.l2 = hyper.at("l2").get<double>();
    m.hyper.epochs = hyper.at("epochs").get<std::size_t>();
    m.hyper.hidden = hyper.at("hidden").get<std::size_t>();
    m.hyper.nb_alpha = hyper.at("nb_alpha").get<double>();
    m.hyper.rbm_learning_rate = hyper.at("rbm_learning_rate").get<double>();
    m.hyper.rbm_epochs = hyper.at("rbm_epochs").get<std::size_t>();

    m.class_log_prior = root.at("class_log_prior").get<std::vector<double>>();
    m.feature_log_prob = matrix_from_json(root.at("feature_log_prob"));
    m.feature_log_neg = matrix_from_json(root.at("feature_log_neg"));
    m.weights = matrix_from_json(root.at("weights"));
    m.bias = root.at("bias").get<std::vector<double>>();
    m.hidden_weights = matrix_from_json(root.at("hidden_weights"));
    m.hidden_bias = root.at("hidden_bias").get<std::vector<double>>();
    m.output_weights = matrix_from_json(root.at("output_weights"));
    m.output_bias = root.at("output_bias").get<std::vector<double>>();
    m.rbm_weights = matrix_from_json(root.at("rbm_weights"));
    m.rbm_visible_bias = root.at("rbm_visible_bias").get<std::vector<double>>();
    m.rbm_hidden_bias = root.at("rbm_hidden_bias").get<std::vector<double>>();
    m.fitted = true;
    return m;
}

}  // namespace juris::classify

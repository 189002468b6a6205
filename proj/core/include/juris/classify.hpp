#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace juris::classify {

enum class Label { About, Ruling, Allowed, Dismissal };
inline constexpr std::size_t kNumLabels = 4;

std::string to_string(Label label);
Label label_from_string(const std::string& name);  // throws ConfigError

struct LabelledParagraph {
    std::string text;
    Label label = Label::About;
    std::optional<std::string> source_case;
};

/// One record per line: label<TAB>text. '#' comments allowed.
std::vector<LabelledParagraph> load_labelled_tsv(const std::string& path);

using SparseVector = std::vector<std::pair<std::size_t, double>>;  // (column, value)

enum class VectorizerMode { Count, Tfidf };
std::string to_string(VectorizerMode mode);

/// Token-count / TF-iDF vectorizer. TF is the within-document frequency
/// proportion; iDF is ln(N / (1 + df)), which goes negative for terms in
/// every document, unless smooth_idf selects ln((1+N)/(1+df)) + 1.
class Vectorizer {
public:
    Vectorizer() = default;

    static Vectorizer fit(const std::vector<std::string>& docs, VectorizerMode mode,
                          bool smooth_idf = false);  // throws EmptyCorpus

    SparseVector transform(const std::string& doc) const;  // throws NotFitted

    bool fitted() const { return fitted_; }
    VectorizerMode mode() const { return mode_; }
    bool smooth_idf() const { return smooth_idf_; }
    std::size_t vocabulary_size() const { return vocabulary_.size(); }
    const std::map<std::string, std::size_t>& vocabulary() const { return vocabulary_; }
    const std::vector<double>& idf() const { return idf_; }

    // persistence hooks
    static Vectorizer restore(VectorizerMode mode, bool smooth_idf,
                              std::map<std::string, std::size_t> vocabulary,
                              std::vector<double> idf);

private:
    VectorizerMode mode_ = VectorizerMode::Count;
    bool smooth_idf_ = false;
    bool fitted_ = false;
    std::map<std::string, std::size_t> vocabulary_;
    std::vector<double> idf_;
};

enum class ModelKind {
    BernoulliNb,
    MultinomialNb,
    ComplementNb,
    LogReg,
    LinearSvm,
    Mlp,
    RbmLogistic,
};
std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);  // throws ConfigError

struct Hyper {
    double learning_rate = 0.01;
    double l2 = 1e-4;                 // lambda
    std::size_t epochs = 50;
    std::size_t hidden = 64;          // mlp hidden width / rbm hidden units
    double nb_alpha = 1.0;            // Laplace smoothing
    double rbm_learning_rate = 0.05;
    std::size_t rbm_epochs = 10;
    std::optional<VectorizerMode> vectorizer;  // default: Count for NB kinds, Tfidf otherwise
    bool smooth_idf = false;
};

struct TrainedModel {
    ModelKind kind = ModelKind::MultinomialNb;
    Vectorizer vectorizer;
    std::uint64_t seed = 0;
    Hyper hyper;
    bool fitted = false;

    // naive bayes
    std::vector<double> class_log_prior;                  // 4
    std::vector<std::vector<double>> feature_log_prob;    // 4 x V
    std::vector<std::vector<double>> feature_log_neg;     // bernoulli: log(1 - p)

    // linear models (logreg / svm; also the logistic head for rbm)
    std::vector<std::vector<double>> weights;             // 4 x F
    std::vector<double> bias;                             // 4

    // mlp
    std::vector<std::vector<double>> hidden_weights;      // H x V
    std::vector<double> hidden_bias;                      // H
    std::vector<std::vector<double>> output_weights;      // 4 x H
    std::vector<double> output_bias;                      // 4

    // rbm
    std::vector<std::vector<double>> rbm_weights;         // V x H
    std::vector<double> rbm_visible_bias;                 // V
    std::vector<double> rbm_hidden_bias;                  // H

    // per-epoch diagnostics
    std::vector<double> objective_trace;                  // logreg / svm / mlp
    std::vector<double> free_energy_trace;                // rbm (mean over data)
};

/// Fit one model. Deterministic for a fixed seed.
/// Throws DegenerateData when fewer than two classes are present and
/// NonFinite when optimization diverges.
TrainedModel train(const std::vector<LabelledParagraph>& data, ModelKind kind, const Hyper& hyper,
                   std::uint64_t seed);

/// Argmax class per text; exact ties resolve in declaration order
/// (About < Ruling < Allowed < Dismissal). Throws NotFitted.
std::vector<Label> predict(const TrainedModel& m, const std::vector<std::string>& texts);

/// Per-class decision scores (log-posterior for NB kinds, linear scores for
/// the rest), one row per text.
std::vector<std::array<double, kNumLabels>> predict_scores(const TrainedModel& m,
                                                           const std::vector<std::string>& texts);

/// Normalized NB posteriors for one text (NB kinds only).
std::array<double, kNumLabels> nb_posterior(const TrainedModel& m, const std::string& text);

struct EvalReport {
    double accuracy = 0.0;
    std::array<double, kNumLabels> precision{};
    std::array<double, kNumLabels> recall{};
    std::array<double, kNumLabels> f1{};
    double macro_precision = 0.0, macro_recall = 0.0, macro_f1 = 0.0;
    double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
    std::array<std::array<std::size_t, kNumLabels>, kNumLabels> confusion{};  // [truth][pred]
};

EvalReport evaluate(const std::vector<Label>& truth, const std::vector<Label>& pred);

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// softmax(Q K^T / sqrt(dim K)) V with row-max stabilization.
/// Throws ShapeMismatch.
Matrix attention(const Matrix& q, const Matrix& k, const Matrix& v);

/// Row-stochastic attention weights (exposed for verification).
Matrix attention_weights(const Matrix& q, const Matrix& k);

/// Seeded shuffle, then floor(n * train_fraction) / rest split.
std::pair<std::vector<LabelledParagraph>, std::vector<LabelledParagraph>> split(
    std::vector<LabelledParagraph> data, double train_fraction, std::uint64_t seed);

void save_model(const TrainedModel& m, const std::string& path);
TrainedModel load_model(const std::string& path);  // throws IoError / MalformedJson

// --- internals exposed for gradient and objective verification -------------

/// Mean softmax cross-entropy plus l2 * sum w^2 over the 4 x F weights.
double logreg_objective(const std::vector<std::vector<double>>& w, const std::vector<double>& b,
                        const std::vector<SparseVector>& xs, const std::vector<int>& ys, double l2);

/// Analytic gradient of logreg_objective.
void logreg_gradient(const std::vector<std::vector<double>>& w, const std::vector<double>& b,
                     const std::vector<SparseVector>& xs, const std::vector<int>& ys, double l2,
                     std::vector<std::vector<double>>& grad_w, std::vector<double>& grad_b);

/// One-vs-rest hinge objective lambda*||w||^2 + mean hinge for one class.
double svm_objective(const std::vector<double>& w, double b, const std::vector<SparseVector>& xs,
                     const std::vector<int>& ys_pm1, double lambda);

/// RBM free energy F(v) = -a.v - sum_j log(1 + exp(b_j + w_j.v)).
double rbm_free_energy(const TrainedModel& m, const std::vector<double>& visible);

/// P(h_j = 1 | v) for every hidden unit.
std::vector<double> rbm_hidden_probabilities(const TrainedModel& m,
                                             const std::vector<double>& visible);

}  // namespace juris::classify

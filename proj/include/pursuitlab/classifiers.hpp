#pragma once

// Binary classifiers trained by full-batch gradient descent on L2-regularized
// cross-entropy. Features are standardized with statistics from the training
// rows only; all parameters start from a deterministic state.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pursuitlab/matrix.hpp"

namespace pursuitlab {

struct LabeledDataset {
    Matrix features;
    std::vector<int> labels;  ///< 0 or 1
    std::array<std::string, 2> class_names{"0", "1"};

    std::size_t size() const { return labels.size(); }
    /// Throws unless labels are 0/1 and match the row count.
    void validate() const;
    bool has_both_classes() const;
};

/// Per-feature (mean, stddev) with the stddev floored at 1e-8.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    static Standardizer fit(const Matrix& x);
    Matrix transform(const Matrix& x) const;

    bool operator==(const Standardizer&) const = default;
};

struct LogRegConfig {
    double learning_rate = 0.1;
    int epochs = 500;
    double l2 = 1e-4;
};

struct MlpConfig {
    int hidden_units = 16;
    double learning_rate = 0.05;
    int epochs = 1000;
    double l2 = 1e-4;
    std::uint64_t init_seed = 1;
};

struct LogRegModel {
    Standardizer scaler;
    std::vector<double> weights;
    double bias = 0.0;

    bool operator==(const LogRegModel&) const = default;
};

struct MlpModel {
    Standardizer scaler;
    Matrix hidden_weights;  ///< H x D
    std::vector<double> hidden_bias;
    std::vector<double> output_weights;
    double output_bias = 0.0;

    bool operator==(const MlpModel&) const = default;
};

enum class ModelKind { LogReg, Mlp };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct TrainConfig {
    LogRegConfig logreg;
    MlpConfig mlp;
};

using Classifier = std::variant<LogRegModel, MlpModel>;

struct LossGrad {
    double loss = 0.0;
    std::vector<double> grad;
};

double sigmoid(double z);

/// Loss and gradient on already-standardized features.
/// Parameter layout: [w_0 .. w_{D-1}, b].
LossGrad logreg_loss_grad(std::span<const double> params, const Matrix& x, std::span<const int> y,
                          double l2);

/// Parameter layout: [W1 (H x D, row-major), b1 (H), w2 (H), b2].
LossGrad mlp_loss_grad(std::span<const double> params, std::size_t hidden, const Matrix& x,
                       std::span<const int> y, double l2);

LogRegModel train_logreg(const LabeledDataset& data, const LogRegConfig& cfg);
MlpModel train_mlp(const LabeledDataset& data, const MlpConfig& cfg);
Classifier train(ModelKind kind, const LabeledDataset& data, const TrainConfig& cfg);

/// Class-1 probability per row, kept inside (0, 1).
std::vector<double> predict_proba(const LogRegModel& model, const Matrix& x);
std::vector<double> predict_proba(const MlpModel& model, const Matrix& x);
std::vector<double> predict_proba(const Classifier& model, const Matrix& x);

/// Hard labels with the tie rule p >= 0.5 -> 1.
std::vector<int> predict_labels(std::span<const double> probabilities);

}  // namespace pursuitlab

#include "pursuitlab/classifiers.hpp"

#include <algorithm>
#include <cmath>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/rng.hpp"

namespace pursuitlab {

namespace {

constexpr double kStdFloor = 1e-8;
constexpr double kProbFloor = 1e-15;

// log(1 + e^z) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

double clamp_prob(double p) { return std::clamp(p, kProbFloor, 1.0 - kProbFloor); }

void require_trainable(const LabeledDataset& data) {
    data.validate();
    if (!data.has_both_classes())
        throw InsufficientDataError("training data must contain both classes");
}

void check_dims(const Standardizer& s, const Matrix& x) {
    if (x.cols() != s.mean.size())
        throw DataFormatError("model expects " + std::to_string(s.mean.size()) + " features, got " +
                              std::to_string(x.cols()));
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

void LabeledDataset::validate() const {
    if (labels.size() != features.rows())
        throw DataFormatError("label count " + std::to_string(labels.size()) +
                              " does not match row count " + std::to_string(features.rows()));
    for (const int y : labels)
        if (y != 0 && y != 1) throw DataFormatError("labels must be 0 or 1");
}

bool LabeledDataset::has_both_classes() const {
    bool zero = false;
    bool one = false;
    for (const int y : labels) (y == 0 ? zero : one) = true;
    return zero && one;
}

Standardizer Standardizer::fit(const Matrix& x) {
    Standardizer s;
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    s.mean.assign(d, 0.0);
    s.stddev.assign(d, 0.0);
    if (n == 0) {
        s.stddev.assign(d, 1.0);
        return s;
    }
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) s.mean[c] += x(r, c);
    for (double& m : s.mean) m /= static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            const double dev = x(r, c) - s.mean[c];
            s.stddev[c] += dev * dev;
        }
    for (double& v : s.stddev) v = std::max(kStdFloor, std::sqrt(v / static_cast<double>(n)));
    return s;
}

Matrix Standardizer::transform(const Matrix& x) const {
    check_dims(*this, x);
    Matrix out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < x.cols(); ++c) out(r, c) = (x(r, c) - mean[c]) / stddev[c];
    return out;
}

std::string_view to_string(ModelKind kind) { return kind == ModelKind::LogReg ? "logreg" : "mlp"; }

ModelKind parse_model_kind(std::string_view name) {
    if (name == "logreg") return ModelKind::LogReg;
    if (name == "mlp") return ModelKind::Mlp;
    throw ConfigError("unknown model '" + std::string(name) + "' (expected logreg or mlp)");
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

LossGrad logreg_loss_grad(std::span<const double> params, const Matrix& x, std::span<const int> y,
                          double l2) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const auto w = params.first(d);
    const double b = params[d];

    LossGrad out;
    out.grad.assign(d + 1, 0.0);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto xr = x.row(r);
        const double z = dot(w, xr) + b;
        out.loss += (softplus(z) - y[r] * z) * inv_n;
        const double dz = (sigmoid(z) - y[r]) * inv_n;
        for (std::size_t c = 0; c < d; ++c) out.grad[c] += dz * xr[c];
        out.grad[d] += dz;
    }
    for (std::size_t c = 0; c < d; ++c) {
        out.loss += 0.5 * l2 * w[c] * w[c];
        out.grad[c] += l2 * w[c];
    }
    return out;
}

LossGrad mlp_loss_grad(std::span<const double> params, std::size_t hidden, const Matrix& x,
                       std::span<const int> y, double l2) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    const std::size_t h = hidden;
    const auto w1 = params.subspan(0, h * d);
    const auto b1 = params.subspan(h * d, h);
    const auto w2 = params.subspan(h * d + h, h);
    const double b2 = params[h * d + 2 * h];

    LossGrad out;
    out.grad.assign(params.size(), 0.0);
    auto g_w1 = std::span(out.grad).subspan(0, h * d);
    auto g_b1 = std::span(out.grad).subspan(h * d, h);
    auto g_w2 = std::span(out.grad).subspan(h * d + h, h);
    double& g_b2 = out.grad[h * d + 2 * h];

    std::vector<double> act(h);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto xr = x.row(r);
        for (std::size_t j = 0; j < h; ++j) act[j] = std::tanh(dot(w1.subspan(j * d, d), xr) + b1[j]);
        const double z = dot(w2, act) + b2;
        out.loss += (softplus(z) - y[r] * z) * inv_n;
        const double dz = (sigmoid(z) - y[r]) * inv_n;
        g_b2 += dz;
        for (std::size_t j = 0; j < h; ++j) {
            g_w2[j] += dz * act[j];
            const double dpre = dz * w2[j] * (1.0 - act[j] * act[j]);
            g_b1[j] += dpre;
            auto gw = g_w1.subspan(j * d, d);
            for (std::size_t c = 0; c < d; ++c) gw[c] += dpre * xr[c];
        }
    }
    for (std::size_t i = 0; i < h * d; ++i) {
        out.loss += 0.5 * l2 * w1[i] * w1[i];
        g_w1[i] += l2 * w1[i];
    }
    for (std::size_t j = 0; j < h; ++j) {
        out.loss += 0.5 * l2 * w2[j] * w2[j];
        g_w2[j] += l2 * w2[j];
    }
    return out;
}

LogRegModel train_logreg(const LabeledDataset& data, const LogRegConfig& cfg) {
    require_trainable(data);
    if (cfg.epochs < 0) throw ConfigError("epochs must be >= 0");
    LogRegModel model;
    model.scaler = Standardizer::fit(data.features);
    const Matrix x = model.scaler.transform(data.features);
    const std::size_t d = x.cols();

    std::vector<double> params(d + 1, 0.0);
    for (int e = 0; e < cfg.epochs; ++e) {
        const LossGrad lg = logreg_loss_grad(params, x, data.labels, cfg.l2);
        for (std::size_t i = 0; i < params.size(); ++i) params[i] -= cfg.learning_rate * lg.grad[i];
    }
    model.weights.assign(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(d));
    model.bias = params[d];
    return model;
}

MlpModel train_mlp(const LabeledDataset& data, const MlpConfig& cfg) {
    require_trainable(data);
    if (cfg.hidden_units < 1) throw ConfigError("hidden_units must be >= 1");
    if (cfg.epochs < 0) throw ConfigError("epochs must be >= 0");
    MlpModel model;
    model.scaler = Standardizer::fit(data.features);
    const Matrix x = model.scaler.transform(data.features);
    const std::size_t d = x.cols();
    const auto h = static_cast<std::size_t>(cfg.hidden_units);

    // Weights ~ U(-0.1, 0.1) drawn in layout order (W1 row-major, then w2); biases zero.
    std::vector<double> params(h * d + 2 * h + 1, 0.0);
    Xoshiro256StarStar rng(cfg.init_seed);
    for (std::size_t i = 0; i < h * d; ++i) params[i] = rng.uniform(-0.1, 0.1);
    for (std::size_t j = 0; j < h; ++j) params[h * d + h + j] = rng.uniform(-0.1, 0.1);

    for (int e = 0; e < cfg.epochs; ++e) {
        const LossGrad lg = mlp_loss_grad(params, h, x, data.labels, cfg.l2);
        for (std::size_t i = 0; i < params.size(); ++i) params[i] -= cfg.learning_rate * lg.grad[i];
    }

    model.hidden_weights = Matrix(h, d);
    std::copy(params.begin(), params.begin() + static_cast<std::ptrdiff_t>(h * d),
              model.hidden_weights.data().begin());
    model.hidden_bias.assign(params.begin() + static_cast<std::ptrdiff_t>(h * d),
                             params.begin() + static_cast<std::ptrdiff_t>(h * d + h));
    model.output_weights.assign(params.begin() + static_cast<std::ptrdiff_t>(h * d + h),
                                params.begin() + static_cast<std::ptrdiff_t>(h * d + 2 * h));
    model.output_bias = params.back();
    return model;
}

Classifier train(ModelKind kind, const LabeledDataset& data, const TrainConfig& cfg) {
    if (kind == ModelKind::LogReg) return train_logreg(data, cfg.logreg);
    return train_mlp(data, cfg.mlp);
}

std::vector<double> predict_proba(const LogRegModel& model, const Matrix& x) {
    const Matrix xs = model.scaler.transform(x);
    std::vector<double> out(xs.rows());
    for (std::size_t r = 0; r < xs.rows(); ++r)
        out[r] = clamp_prob(sigmoid(dot(model.weights, xs.row(r)) + model.bias));
    return out;
}

std::vector<double> predict_proba(const MlpModel& model, const Matrix& x) {
    const Matrix xs = model.scaler.transform(x);
    const std::size_t h = model.hidden_bias.size();
    std::vector<double> out(xs.rows());
    for (std::size_t r = 0; r < xs.rows(); ++r) {
        double z = model.output_bias;
        for (std::size_t j = 0; j < h; ++j)
            z += model.output_weights[j] *
                 std::tanh(dot(model.hidden_weights.row(j), xs.row(r)) + model.hidden_bias[j]);
        out[r] = clamp_prob(sigmoid(z));
    }
    return out;
}

std::vector<double> predict_proba(const Classifier& model, const Matrix& x) {
    return std::visit([&](const auto& m) { return predict_proba(m, x); }, model);
}

std::vector<int> predict_labels(std::span<const double> probabilities) {
    std::vector<int> out;
    out.reserve(probabilities.size());
    for (const double p : probabilities) out.push_back(p >= 0.5 ? 1 : 0);
    return out;
}

}  // namespace pursuitlab

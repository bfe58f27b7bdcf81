#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "pursuitlab/classifiers.hpp"
#include "pursuitlab/errors.hpp"
#include "pursuitlab/rng.hpp"

using namespace pursuitlab;

namespace {

LabeledDataset separable_1d() {
    LabeledDataset d;
    d.features = Matrix(200, 1);
    d.labels.resize(200);
    for (std::size_t i = 0; i < 200; ++i) {
        d.features(i, 0) = i % 2 == 0 ? -1.0 : 1.0;
        d.labels[i] = static_cast<int>(i % 2);
    }
    return d;
}

LabeledDataset xor_data() {
    LabeledDataset d;
    d.features = Matrix(200, 2);
    d.labels.resize(200);
    const int table[4][3] = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    for (std::size_t i = 0; i < 200; ++i) {
        const auto& t = table[i % 4];
        d.features(i, 0) = t[0];
        d.features(i, 1) = t[1];
        d.labels[i] = t[2];
    }
    return d;
}

LabeledDataset noisy_dataset(std::size_t n, std::size_t dims, std::uint64_t seed) {
    Xoshiro256StarStar rng(seed);
    LabeledDataset d;
    d.features = Matrix(n, dims);
    for (double& v : d.features.data()) v = rng.uniform(-2, 2);
    for (std::size_t i = 0; i < n; ++i) d.labels.push_back(static_cast<int>(rng.below(2)));
    return d;
}

double accuracy(const std::vector<double>& p, const std::vector<int>& y) {
    const auto hard = predict_labels(p);
    std::size_t ok = 0;
    for (std::size_t i = 0; i < y.size(); ++i) ok += hard[i] == y[i];
    return static_cast<double>(ok) / static_cast<double>(y.size());
}

}  // namespace

TEST_CASE("sigmoid and tie rule") {
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(sigmoid(800.0) == 1.0);
    CHECK(sigmoid(-800.0) >= 0.0);
    CHECK(std::isfinite(sigmoid(-800.0)));
    CHECK(predict_labels(std::vector<double>{0.5, 0.4999999, 0.7}) == std::vector<int>{1, 0, 1});
}

TEST_CASE("standardizer uses training statistics with a floor") {
    Matrix x(4, 2);
    const double vals[4][2] = {{1, 5}, {2, 5}, {3, 5}, {4, 5}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j) x(i, j) = vals[i][j];
    const auto s = Standardizer::fit(x);
    CHECK(s.mean == std::vector<double>{2.5, 5.0});
    CHECK(s.stddev[0] == doctest::Approx(std::sqrt(1.25)));
    CHECK(s.stddev[1] == 1e-8);
    const auto z = s.transform(x);
    CHECK(z(0, 1) == 0.0);
    CHECK(z(3, 0) == doctest::Approx(1.5 / std::sqrt(1.25)));
}

TEST_CASE("logistic regression on separable data") {
    const auto d = separable_1d();
    const auto m = train_logreg(d, LogRegConfig{});
    CHECK(accuracy(predict_proba(m, d.features), d.labels) == 1.0);
    CHECK(m.weights[0] > 0);
}

TEST_CASE("zero epochs leaves a neutral model") {
    const auto d = noisy_dataset(50, 4, 3);
    const auto m = train_logreg(d, LogRegConfig{0.1, 0, 1e-4});
    CHECK(m.weights == std::vector<double>(4, 0.0));
    CHECK(m.bias == 0.0);
    for (double p : predict_proba(m, d.features)) CHECK(p == 0.5);
}

TEST_CASE("hand-built logistic model") {
    LogRegModel m;
    m.scaler.mean = {0.0};
    m.scaler.stddev = {1.0};
    m.weights = {1.0};
    Matrix x(2, 1);
    x(0, 0) = 0.0;
    x(1, 0) = 1e6;
    const auto p = predict_proba(m, x);
    CHECK(p[0] == 0.5);
    CHECK(p[1] > 1 - 1e-12);
    CHECK(p[1] < 1.0);
}

TEST_CASE("logistic gradient matches finite differences") {
    Xoshiro256StarStar rng(10);
    for (int point = 0; point < 20; ++point) {
        const auto d = noisy_dataset(30, 5, 100 + static_cast<std::uint64_t>(point));
        std::vector<double> params(6);
        for (double& v : params) v = rng.uniform(-1, 1);
        const auto analytic = logreg_loss_grad(params, d.features, d.labels, 0.01);
        const auto numeric = oracle::central_difference(
            [&](const std::vector<double>& p) { return logreg_loss_grad(p, d.features, d.labels, 0.01).loss; },
            params, 1e-5);
        CHECK(oracle::relative_error(analytic.grad, numeric) < 1e-6);
    }
}

TEST_CASE("mlp gradient matches finite differences") {
    Xoshiro256StarStar rng(20);
    const std::size_t hidden = 4, dims = 3;
    for (int point = 0; point < 20; ++point) {
        const auto d = noisy_dataset(25, dims, 200 + static_cast<std::uint64_t>(point));
        std::vector<double> params(hidden * dims + 2 * hidden + 1);
        for (double& v : params) v = rng.uniform(-1, 1);
        const auto analytic = mlp_loss_grad(params, hidden, d.features, d.labels, 0.01);
        const auto numeric = oracle::central_difference(
            [&](const std::vector<double>& p) { return mlp_loss_grad(p, hidden, d.features, d.labels, 0.01).loss; },
            params, 1e-5);
        CHECK(oracle::relative_error(analytic.grad, numeric) < 1e-5);
    }
}

TEST_CASE("mlp learns XOR") {
    const auto d = xor_data();
    MlpConfig cfg;
    cfg.hidden_units = 8;
    cfg.learning_rate = 0.5;
    cfg.epochs = 3000;
    const auto m = train_mlp(d, cfg);
    CHECK(accuracy(predict_proba(m, d.features), d.labels) == 1.0);
}

TEST_CASE("training is deterministic") {
    const auto d = noisy_dataset(60, 5, 4);
    MlpConfig cfg;
    cfg.epochs = 50;
    CHECK(train_mlp(d, cfg) == train_mlp(d, cfg));
    cfg.init_seed = 2;
    const auto other = train_mlp(d, cfg);
    cfg.init_seed = 1;
    CHECK_FALSE(train_mlp(d, cfg) == other);
    CHECK(train_logreg(d, LogRegConfig{}) == train_logreg(d, LogRegConfig{}));
}

TEST_CASE("generic train dispatch and model names") {
    const auto d = separable_1d();
    const auto c = train(ModelKind::Mlp, d, TrainConfig{});
    CHECK(std::holds_alternative<MlpModel>(c));
    CHECK(accuracy(predict_proba(c, d.features), d.labels) == 1.0);
    CHECK(parse_model_kind("logreg") == ModelKind::LogReg);
    CHECK(parse_model_kind(to_string(ModelKind::Mlp)) == ModelKind::Mlp);
    CHECK_THROWS_AS(parse_model_kind("svm"), ConfigError);
}

TEST_CASE("classifier errors") {
    auto d = separable_1d();
    const auto m = train_logreg(d, LogRegConfig{});
    CHECK_THROWS_AS(predict_proba(m, Matrix(3, 2)), DataFormatError);

    for (int& y : d.labels) y = 1;
    CHECK_THROWS_AS(train_logreg(d, LogRegConfig{}), InsufficientDataError);
    CHECK_THROWS_AS(train_mlp(d, MlpConfig{}), InsufficientDataError);

    d = separable_1d();
    MlpConfig bad;
    bad.hidden_units = 0;
    CHECK_THROWS_AS(train_mlp(d, bad), ConfigError);
    d.labels[0] = 2;
    CHECK_THROWS_AS(train_logreg(d, LogRegConfig{}), DataFormatError);
}

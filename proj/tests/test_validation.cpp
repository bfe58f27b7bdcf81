#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "pursuitlab/episode.hpp"
#include "pursuitlab/errors.hpp"
#include "pursuitlab/features.hpp"
#include "pursuitlab/rng.hpp"
#include "pursuitlab/stats.hpp"
#include "pursuitlab/validation.hpp"

using namespace pursuitlab;

namespace {

std::vector<int> balanced(std::size_t n) {
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(i % 2);
    return y;
}

Matrix gaussianish(std::size_t n, std::size_t d, std::uint64_t seed, double shift = 0.0) {
    Xoshiro256StarStar rng(seed);
    Matrix m(n, d);
    for (double& v : m.data()) v = rng.uniform(-1, 1) + rng.uniform(-1, 1) + shift;
    return m;
}

void check_partition(const std::vector<std::vector<std::size_t>>& folds, std::size_t n) {
    std::vector<int> seen(n, 0);
    for (const auto& f : folds)
        for (auto i : f) ++seen[i];
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
}

}  // namespace

TEST_CASE("kfold examples") {
    const auto ten = kfold_split(10, 10, balanced(10), 1);
    REQUIRE(ten.size() == 10);
    for (const auto& f : ten) CHECK(f.size() == 1);
    check_partition(ten, 10);

    const auto y = balanced(2000);
    const auto big = kfold_split(2000, 10, y, 7);
    for (const auto& f : big) {
        CHECK(f.size() == 200);
        CHECK(std::count_if(f.begin(), f.end(), [&](std::size_t i) { return y[i] == 1; }) == 100);
    }
    check_partition(big, 2000);
    CHECK(kfold_split(2000, 10, y, 7) == big);
    CHECK(kfold_split(2000, 10, y, 8) != big);
}

TEST_CASE("kfold properties on unbalanced labels") {
    Xoshiro256StarStar rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 2 + rng.below(9);
        const std::size_t n = k + rng.below(200);
        std::vector<int> y(n);
        for (auto& v : y) v = rng.uniform01() < 0.3 ? 1 : 0;
        const auto folds = kfold_split(n, k, y, rng.next());
        REQUIRE(folds.size() == k);
        check_partition(folds, n);
        std::size_t lo = n, hi = 0;
        for (int cls = 0; cls < 2; ++cls) {
            std::size_t clo = n, chi = 0;
            for (const auto& f : folds) {
                const auto c = static_cast<std::size_t>(
                    std::count_if(f.begin(), f.end(), [&](std::size_t i) { return y[i] == cls; }));
                clo = std::min(clo, c);
                chi = std::max(chi, c);
            }
            CHECK(chi - clo <= 1);
        }
        for (const auto& f : folds) {
            lo = std::min(lo, f.size());
            hi = std::max(hi, f.size());
            CHECK(std::is_sorted(f.begin(), f.end()));
        }
        CHECK(hi - lo <= 1);
    }
}

TEST_CASE("kfold errors") {
    CHECK_THROWS_AS(kfold_split(10, 1, balanced(10), 0), ConfigError);
    CHECK_THROWS_AS(kfold_split(5, 10, balanced(5), 0), InsufficientDataError);
    CHECK_THROWS_AS(kfold_split(10, 2, balanced(9), 0), DataFormatError);
}

TEST_CASE("cross-validation on duplicated separable data") {
    LabeledDataset d;
    d.features = Matrix(100, 2);
    for (std::size_t i = 0; i < 100; ++i) {
        d.features(i, 0) = i % 2 ? 3.0 : -3.0;
        d.features(i, 1) = 1.0;
        d.labels.push_back(static_cast<int>(i % 2));
    }
    for (const auto kind : {ModelKind::LogReg, ModelKind::Mlp}) {
        const auto cv = cross_validate(d, kind, TrainConfig{}, 10, 5);
        CHECK(cv.folds.size() == 10);
        CHECK(cv.mean.accuracy == 1.0);
        CHECK(*cv.mean.roc_auc == 1.0);
        double total = 0;
        for (const auto& f : cv.folds) total += f.build_time_seconds;
        CHECK(cv.mean.build_time_seconds == doctest::Approx(total));
    }
}

TEST_CASE("scalers are fit on training folds only") {
    LabeledDataset d;
    d.features = gaussianish(80, 3, 1);
    d.labels = balanced(80);
    for (std::size_t i = 0; i < 80; ++i) d.features(i, 0) += d.labels[i];

    const auto folds = kfold_split(80, 4, d.labels, 9);
    const auto cv = cross_validate(d, ModelKind::LogReg, TrainConfig{}, 4, 9);

    // Rebuild fold 0 by hand.
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < 80; ++i)
        if (!std::binary_search(folds[0].begin(), folds[0].end(), i)) train_idx.push_back(i);
    LabeledDataset train_set;
    train_set.features = d.features.select_rows(train_idx);
    for (auto i : train_idx) train_set.labels.push_back(d.labels[i]);
    const auto model = train_logreg(train_set, LogRegConfig{});
    CHECK(model.scaler == Standardizer::fit(train_set.features));

    std::vector<int> test_y;
    for (auto i : folds[0]) test_y.push_back(d.labels[i]);
    const auto manual = evaluate(predict_proba(model, d.features.select_rows(folds[0])), test_y);
    CHECK(manual.accuracy == cv.folds[0].accuracy);
    CHECK(*manual.roc_auc == *cv.folds[0].roc_auc);
    CHECK(manual.rmse == cv.folds[0].rmse);

    // Shifting the held-out rows must leave fold 0's fitted model untouched.
    auto shifted = d;
    for (auto i : folds[0])
        for (double& v : shifted.features.row(i)) v += 1000.0;
    const auto cv_shifted = cross_validate(shifted, ModelKind::LogReg, TrainConfig{}, 4, 9);
    std::vector<double> expected = predict_proba(model, shifted.features.select_rows(folds[0]));
    CHECK(cv_shifted.folds[0].rmse == evaluate(expected, test_y).rmse);
}

TEST_CASE("label-shuffled control stays near chance") {
    LabeledDataset d;
    d.features = gaussianish(2000, 25, 17);
    d.labels = balanced(2000);
    TrainConfig cfg;
    cfg.logreg.epochs = 200;
    const auto acc = permutation_control(d, ModelKind::LogReg, cfg, 10, 42, 20);
    REQUIRE(acc.size() == 20);
    const double mean = std::accumulate(acc.begin(), acc.end(), 0.0) / 20.0;
    CHECK(mean >= 0.40);
    CHECK(mean <= 0.60);
    for (double a : acc) CHECK(a < 0.6);
}

TEST_CASE("pairwise study ordering and counts") {
    std::map<std::string, Matrix> sets;
    const char* names[] = {"e", "b", "d", "a", "c"};
    for (int i = 0; i < 5; ++i) sets.emplace(names[i], gaussianish(20, 3, static_cast<std::uint64_t>(i), i));
    TrainConfig cfg;
    cfg.logreg.epochs = 20;
    const auto five = pairwise_study(sets, ModelKind::LogReg, cfg, 5, 1);
    REQUIRE(five.size() == 10);
    CHECK(five.front().name() == "a_vs_b");
    CHECK(five[3].name() == "a_vs_e");
    CHECK(five.back().name() == "d_vs_e");

    std::map<std::string, Matrix> two{{"x", sets["a"]}, {"y", sets["b"]}};
    CHECK(pairwise_study(two, ModelKind::LogReg, cfg, 5, 1).size() == 1);
    two.erase("y");
    CHECK_THROWS_AS(pairwise_study(two, ModelKind::LogReg, cfg, 5, 1), InsufficientDataError);
}

TEST_CASE("split_by_label and pair datasets") {
    FeatureDataset fd;
    fd.features = gaussianish(6, 2, 4);
    fd.labels = {"q", "p", "q", "p", "p", "r"};
    fd.episode_ids = {0, 1, 2, 3, 4, 5};
    const auto parts = split_by_label(fd);
    REQUIRE(parts.size() == 3);
    CHECK(parts.at("p").rows() == 3);
    CHECK(parts.at("p")(1, 0) == fd.features(3, 0));
    const auto pair = make_pair_dataset("p", parts.at("p"), "q", parts.at("q"));
    CHECK(pair.labels == std::vector<int>{0, 0, 0, 1, 1});
    CHECK(pair.class_names[1] == "q");
    CHECK_THROWS_AS(make_pair_dataset("p", Matrix(2, 2), "q", Matrix(2, 3)), DataFormatError);
}

TEST_CASE("circling radii 0.3 and 0.6 are told apart") {
    // The circling policy ignores pursuers, so a lone chaser leaves the evader path unchanged.
    ExperimentSpec spec;
    spec.world.n_pursuers = 1;
    spec.teams = {{{PolicyKind::chaser()}, PolicyKind::circler(0.3), "rho03"},
                  {{PolicyKind::chaser()}, PolicyKind::circler(0.6), "rho06"}};
    spec.episodes_per_team = 100;
    spec.steps_per_episode = 1000;
    spec.master_seed = 11;
    const auto recs = run_batch(spec);
    const auto data = build_dataset(recs, HistogramSpec{5, 1.0});

    // The two classes settle on orbits of clearly different size.
    const auto groups = group_by_team(recs);
    for (const auto& [label, rs] : groups) {
        const auto radii = radius_summary(rs, 0.01).per_episode_mean_radius;
        const double mean = std::accumulate(radii.begin(), radii.end(), 0.0) / static_cast<double>(radii.size());
        if (label == "rho03") CHECK(mean < 0.45);
        else CHECK(mean > 0.5);
    }

    const auto parts = split_by_label(data);
    const auto pair = make_pair_dataset("rho03", parts.at("rho03"), "rho06", parts.at("rho06"));
    const auto cv = cross_validate(pair, ModelKind::LogReg, TrainConfig{}, 10, 3);
    CHECK(cv.mean.accuracy >= 0.99);
}

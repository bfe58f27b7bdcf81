#include "pursuitlab/validation.hpp"

#include <algorithm>
#include <chrono>

#include "pursuitlab/errors.hpp"
#include "pursuitlab/rng.hpp"

namespace pursuitlab {

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k,
                                                  std::span<const int> labels, std::uint64_t seed) {
    if (k < 2) throw ConfigError("fold count must be >= 2");
    if (n < k)
        throw InsufficientDataError("cannot split " + std::to_string(n) + " instances into " +
                                    std::to_string(k) + " folds");
    if (labels.size() != n) throw DataFormatError("label count does not match n");

    Xoshiro256StarStar rng(seed);
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t dealt = 0;
    for (int cls = 0; cls < 2; ++cls) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (labels[i] != 0 && labels[i] != 1) throw DataFormatError("labels must be 0 or 1");
            if (labels[i] == cls) members.push_back(i);
        }
        shuffle(members, rng);
        for (const std::size_t idx : members) folds[dealt++ % k].push_back(idx);
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

MetricsReport mean_report(std::span<const MetricsReport> reports) {
    MetricsReport m;
    if (reports.empty()) return m;
    const auto n = static_cast<double>(reports.size());
    double roc = 0.0, prc = 0.0;
    int roc_n = 0, prc_n = 0;
    for (const auto& r : reports) {
        m.accuracy += r.accuracy;
        m.error_rate += r.error_rate;
        m.precision += r.precision;
        m.recall += r.recall;
        m.rmse += r.rmse;
        m.build_time_seconds += r.build_time_seconds;
        if (r.roc_auc) {
            roc += *r.roc_auc;
            ++roc_n;
        }
        if (r.prc_auc) {
            prc += *r.prc_auc;
            ++prc_n;
        }
    }
    m.accuracy /= n;
    m.error_rate /= n;
    m.precision /= n;
    m.recall /= n;
    m.rmse /= n;
    if (roc_n) m.roc_auc = roc / roc_n;
    if (prc_n) m.prc_auc = prc / prc_n;
    return m;
}

CvResult cross_validate(const LabeledDataset& data, ModelKind kind, const TrainConfig& cfg,
                        std::size_t k, std::uint64_t seed) {
    data.validate();
    const auto folds = kfold_split(data.size(), k, data.labels, seed);
    CvResult out;
    std::vector<char> held(data.size());
    for (const auto& test_idx : folds) {
        std::fill(held.begin(), held.end(), 0);
        for (const auto i : test_idx) held[i] = 1;
        std::vector<std::size_t> train_idx;
        for (std::size_t i = 0; i < data.size(); ++i)
            if (!held[i]) train_idx.push_back(i);

        LabeledDataset train_set;
        train_set.features = data.features.select_rows(train_idx);
        train_set.class_names = data.class_names;
        for (const auto i : train_idx) train_set.labels.push_back(data.labels[i]);

        const auto start = std::chrono::steady_clock::now();
        const Classifier model = train(kind, train_set, cfg);
        const auto stop = std::chrono::steady_clock::now();

        const Matrix test_x = data.features.select_rows(test_idx);
        std::vector<int> test_y;
        for (const auto i : test_idx) test_y.push_back(data.labels[i]);
        MetricsReport rep = evaluate(predict_proba(model, test_x), test_y);
        rep.build_time_seconds = std::chrono::duration<double>(stop - start).count();
        out.folds.push_back(rep);
    }
    out.mean = mean_report(out.folds);
    return out;
}

std::map<std::string, Matrix> split_by_label(const FeatureDataset& data) {
    std::map<std::string, std::vector<std::size_t>> rows;
    for (std::size_t r = 0; r < data.size(); ++r) rows[data.labels[r]].push_back(r);
    std::map<std::string, Matrix> out;
    for (const auto& [label, idx] : rows) out.emplace(label, data.features.select_rows(idx));
    return out;
}

LabeledDataset make_pair_dataset(const std::string& first, const Matrix& a, const std::string& second,
                                 const Matrix& b) {
    if (a.cols() != b.cols()) throw DataFormatError("pair datasets differ in feature count");
    LabeledDataset ds;
    ds.class_names = {first, second};
    ds.features = Matrix(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::copy(a.row(r).begin(), a.row(r).end(), ds.features.row(r).begin());
        ds.labels.push_back(0);
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
        std::copy(b.row(r).begin(), b.row(r).end(), ds.features.row(a.rows() + r).begin());
        ds.labels.push_back(1);
    }
    return ds;
}

std::vector<PairReport> pairwise_study(const std::map<std::string, Matrix>& datasets, ModelKind kind,
                                       const TrainConfig& cfg, std::size_t k, std::uint64_t seed) {
    if (datasets.size() < 2) throw InsufficientDataError("pairwise study needs at least 2 labels");
    std::vector<PairReport> out;
    for (auto a = datasets.begin(); a != datasets.end(); ++a) {
        for (auto b = std::next(a); b != datasets.end(); ++b) {
            PairReport rep;
            rep.first = a->first;
            rep.second = b->first;
            rep.result = cross_validate(make_pair_dataset(a->first, a->second, b->first, b->second),
                                        kind, cfg, k, seed);
            out.push_back(std::move(rep));
        }
    }
    return out;
}

std::vector<double> permutation_control(const LabeledDataset& data, ModelKind kind,
                                        const TrainConfig& cfg, std::size_t k, std::uint64_t seed,
                                        std::size_t repetitions) {
    std::vector<double> accuracies;
    for (std::size_t r = 0; r < repetitions; ++r) {
        LabeledDataset shuffled = data;
        Xoshiro256StarStar rng(derive_seed(seed, r, 0));
        shuffle(shuffled.labels, rng);
        accuracies.push_back(cross_validate(shuffled, kind, cfg, k, seed).mean.accuracy);
    }
    return accuracies;
}

}  // namespace pursuitlab

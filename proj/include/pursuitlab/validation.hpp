#pragma once

// Stratified k-fold cross-validation and the one-vs-one pairwise study.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pursuitlab/classifiers.hpp"
#include "pursuitlab/features.hpp"
#include "pursuitlab/metrics.hpp"

namespace pursuitlab {

/// k disjoint, sorted index sets covering [0, n).
///
/// Each class's indices (class 0 first) are shuffled with
/// Xoshiro256StarStar(seed) and dealt round-robin, continuing the deal from
/// where the previous class stopped, so per-class and total fold sizes differ
/// by at most one.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k,
                                                  std::span<const int> labels, std::uint64_t seed);

struct CvResult {
    std::vector<MetricsReport> folds;
    MetricsReport mean;  ///< sample mean over folds; build time is the total
};

/// Fits on k-1 folds, evaluates on the held-out fold, for every fold.
CvResult cross_validate(const LabeledDataset& data, ModelKind kind, const TrainConfig& cfg,
                        std::size_t k, std::uint64_t seed);

MetricsReport mean_report(std::span<const MetricsReport> reports);

struct PairReport {
    std::string first;   ///< class 0
    std::string second;  ///< class 1
    CvResult result;

    std::string name() const { return first + "_vs_" + second; }
};

/// Rows grouped by label (lexicographic label order).
std::map<std::string, Matrix> split_by_label(const FeatureDataset& data);

/// Binary dataset with `first` rows as class 0 followed by `second` rows as class 1.
LabeledDataset make_pair_dataset(const std::string& first, const Matrix& a, const std::string& second,
                                 const Matrix& b);

/// One cross-validated report per unordered pair of labels, pairs in
/// lexicographic order.
std::vector<PairReport> pairwise_study(const std::map<std::string, Matrix>& datasets, ModelKind kind,
                                       const TrainConfig& cfg, std::size_t k, std::uint64_t seed);

/// Mean CV accuracy after shuffling the labels, one entry per repetition.
/// Repetition r permutes with Xoshiro256StarStar(derive_seed(seed, r, 0)).
std::vector<double> permutation_control(const LabeledDataset& data, ModelKind kind,
                                        const TrainConfig& cfg, std::size_t k, std::uint64_t seed,
                                        std::size_t repetitions);

}  // namespace pursuitlab

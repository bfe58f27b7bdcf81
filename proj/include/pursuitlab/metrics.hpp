#pragma once

#include <optional>
#include <span>
#include <string>

namespace pursuitlab {

struct MetricsReport {
    double accuracy = 0.0;
    double error_rate = 0.0;
    double precision = 0.0;  ///< macro average over both classes
    double recall = 0.0;     ///< macro average over both classes
    std::optional<double> roc_auc;  ///< nullopt when the truth holds a single class
    std::optional<double> prc_auc;  ///< nullopt when the truth holds a single class
    double rmse = 0.0;
    double build_time_seconds = 0.0;
};

/// Threshold-free and thresholded metrics for class-1 probabilities.
///
/// - hard label: 1 iff p >= 0.5
/// - precision_c = TP_c / predicted_c (0 when nothing is predicted as c)
/// - ROC-AUC: Mann-Whitney rank statistic, tied scores credited 0.5
/// - PRC-AUC: average precision, sum over descending score thresholds (ties
///   grouped) of (R_k - R_{k-1}) * P_k for the positive class
/// - RMSE: sqrt(mean over rows and both classes of (p_c - y_c)^2)
MetricsReport evaluate(std::span<const double> probabilities, std::span<const int> labels);

double roc_auc(std::span<const double> scores, std::span<const int> labels);
double average_precision(std::span<const double> scores, std::span<const int> labels);

/// Formats an optional metric; nullopt prints as "undefined".
std::string format_metric(const std::optional<double>& value);

}  // namespace pursuitlab

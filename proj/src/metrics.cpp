#include "pursuitlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pursuitlab/csv.hpp"
#include "pursuitlab/errors.hpp"

namespace pursuitlab {

namespace {

std::vector<std::size_t> order_by_score(std::span<const double> scores, bool descending) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return descending ? scores[a] > scores[b] : scores[a] < scores[b];
    });
    return order;
}

void check_inputs(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size())
        throw DataFormatError("score and label counts differ");
    if (scores.empty()) throw InsufficientDataError("cannot evaluate an empty prediction set");
}

}  // namespace

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    check_inputs(scores, labels);
    const auto order = order_by_score(scores, false);
    // Average ranks (1-based) over tie groups.
    std::vector<double> rank(scores.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) rank[order[k]] = avg;
        i = j;
    }
    double pos = 0.0;
    double rank_sum = 0.0;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (labels[k] == 1) {
            pos += 1.0;
            rank_sum += rank[k];
        }
    }
    const double neg = static_cast<double>(labels.size()) - pos;
    if (pos == 0.0 || neg == 0.0) return std::nan("");
    return (rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

double average_precision(std::span<const double> scores, std::span<const int> labels) {
    check_inputs(scores, labels);
    double total_pos = 0.0;
    for (const int y : labels) total_pos += (y == 1);
    if (total_pos == 0.0 || total_pos == static_cast<double>(labels.size())) return std::nan("");

    const auto order = order_by_score(scores, true);
    double tp = 0.0;
    double fp = 0.0;
    double prev_recall = 0.0;
    double ap = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (labels[order[j]] == 1 ? tp : fp) += 1.0;
            ++j;
        }
        const double recall = tp / total_pos;
        const double precision = tp / (tp + fp);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return ap;
}

MetricsReport evaluate(std::span<const double> probabilities, std::span<const int> labels) {
    check_inputs(probabilities, labels);
    const auto n = static_cast<double>(labels.size());

    double tp[2] = {0.0, 0.0};
    double predicted[2] = {0.0, 0.0};
    double actual[2] = {0.0, 0.0};
    double correct = 0.0;
    double wrong = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int y = labels[i];
        if (y != 0 && y != 1) throw DataFormatError("labels must be 0 or 1");
        const double p = probabilities[i];
        const int hat = p >= 0.5 ? 1 : 0;
        predicted[hat] += 1.0;
        actual[y] += 1.0;
        if (hat == y) {
            tp[y] += 1.0;
            correct += 1.0;
        } else {
            wrong += 1.0;
        }
        // Both class-probability components carry the same squared error.
        const double err = p - y;
        sq += 2.0 * err * err;
    }

    MetricsReport m;
    m.accuracy = correct / n;
    m.error_rate = wrong / n;
    for (int c = 0; c < 2; ++c) {
        m.precision += 0.5 * (predicted[c] > 0.0 ? tp[c] / predicted[c] : 0.0);
        m.recall += 0.5 * (actual[c] > 0.0 ? tp[c] / actual[c] : 0.0);
    }
    m.rmse = std::sqrt(sq / (2.0 * n));
    if (actual[0] > 0.0 && actual[1] > 0.0) {
        m.roc_auc = roc_auc(probabilities, labels);
        m.prc_auc = average_precision(probabilities, labels);
    }
    return m;
}

std::string format_metric(const std::optional<double>& value) {
    return value ? csv::format_real(*value) : std::string("undefined");
}

}  // namespace pursuitlab

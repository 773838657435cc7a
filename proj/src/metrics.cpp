#include "tsr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tsr/errors.hpp"

namespace tsr {

std::int64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::int64_t ConfusionMatrix::row_sum(int i) const {
    std::int64_t s = 0;
    for (int j = 0; j < num_classes; ++j) s += at(i, j);
    return s;
}

std::int64_t ConfusionMatrix::col_sum(int j) const {
    std::int64_t s = 0;
    for (int i = 0; i < num_classes; ++i) s += at(i, j);
    return s;
}

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred,
                          int num_classes) {
    if (y_true.size() != y_pred.size())
        throw DataError("confusion: length mismatch (" + std::to_string(y_true.size()) + " vs " +
                        std::to_string(y_pred.size()) + ")");
    if (y_true.empty())
        throw DataError("confusion: empty label vectors");
    ConfusionMatrix cm(num_classes);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        int t = y_true[i], p = y_pred[i];
        if (t < 0 || t >= num_classes || p < 0 || p >= num_classes)
            throw DataError("confusion: label out of range at position " + std::to_string(i));
        cm.at(t, p)++;
    }
    return cm;
}

namespace {

std::vector<double> recalls(const ConfusionMatrix& cm) {
    std::vector<double> out(cm.num_classes);
    for (int i = 0; i < cm.num_classes; ++i) {
        std::int64_t row = cm.row_sum(i);
        if (row == 0)
            throw DataError("metrics: class " + std::to_string(i) +
                            " absent from y_true; recall undefined");
        out[i] = static_cast<double>(cm.at(i, i)) / static_cast<double>(row);
    }
    return out;
}

} // namespace

double accuracy(const ConfusionMatrix& cm) {
    std::int64_t total = cm.total();
    if (total == 0)
        throw DataError("accuracy: empty confusion matrix");
    std::int64_t trace = 0;
    for (int i = 0; i < cm.num_classes; ++i) trace += cm.at(i, i);
    return static_cast<double>(trace) / static_cast<double>(total);
}

double avacc(const ConfusionMatrix& cm) {
    auto r = recalls(cm);
    return std::accumulate(r.begin(), r.end(), 0.0) / cm.num_classes;
}

double cba(const ConfusionMatrix& cm) {
    double sum = 0.0;
    for (int i = 0; i < cm.num_classes; ++i) {
        std::int64_t denom = std::max(cm.row_sum(i), cm.col_sum(i));
        if (denom == 0)
            throw DataError("cba: class " + std::to_string(i) +
                            " has empty row and column");
        sum += static_cast<double>(cm.at(i, i)) / static_cast<double>(denom);
    }
    return sum / cm.num_classes;
}

double mavg(const ConfusionMatrix& cm) {
    auto r = recalls(cm);
    double log_sum = 0.0;
    for (double v : r) {
        if (v == 0.0) return 0.0;
        log_sum += std::log(v);
    }
    return std::exp(log_sum / cm.num_classes);
}

std::vector<double> average_ranks(const Matrix& scores, bool higher_is_better) {
    if (scores.rows == 0 || scores.cols == 0)
        throw DataError("average_ranks: empty score matrix");
    for (double v : scores.data)
        if (std::isnan(v))
            throw DataError("average_ranks: NaN score");

    const std::size_t methods = scores.cols;
    std::vector<double> rank_sum(methods, 0.0);
    std::vector<std::size_t> order(methods);
    for (std::size_t cell = 0; cell < scores.rows; ++cell) {
        auto row = scores.row(cell);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return higher_is_better ? row[a] > row[b] : row[a] < row[b];
        });
        // Walk tie groups; each member takes the mean of the group's positions.
        std::size_t i = 0;
        while (i < methods) {
            std::size_t j = i;
            while (j + 1 < methods && row[order[j + 1]] == row[order[i]]) ++j;
            double mean_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t t = i; t <= j; ++t) rank_sum[order[t]] += mean_rank;
            i = j + 1;
        }
    }
    for (double& v : rank_sum) v /= static_cast<double>(scores.rows);
    return rank_sum;
}

} // namespace tsr

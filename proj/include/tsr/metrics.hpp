#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tsr/matrix.hpp"

namespace tsr {

/// M x M count matrix; entry (i, j) = samples of true class i predicted as j.
struct ConfusionMatrix {
    int num_classes = 0;
    std::vector<std::int64_t> counts; // row-major, M*M

    ConfusionMatrix() = default;
    explicit ConfusionMatrix(int m) : num_classes(m), counts(std::size_t(m) * m, 0) {}

    std::int64_t& at(int t, int p) { return counts[std::size_t(t) * num_classes + p]; }
    std::int64_t at(int t, int p) const { return counts[std::size_t(t) * num_classes + p]; }

    std::int64_t total() const;
    std::int64_t row_sum(int i) const;
    std::int64_t col_sum(int j) const;
};

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred,
                          int num_classes);

// trace / total
double accuracy(const ConfusionMatrix& cm);

// Mean per-class recall (macro recall). Errors if a class never occurs in
// y_true: a silent 0 or skip would corrupt averages.
double avacc(const ConfusionMatrix& cm);

// Mean over classes of diagonal / max(row sum, column sum).
double cba(const ConfusionMatrix& cm);

// Geometric mean of per-class recalls; exactly 0 if any recall is 0.
double mavg(const ConfusionMatrix& cm);

// Per-method mean rank over the cells (rows) of a cells x methods score
// matrix. Rank 1 is best; ties share the mean of their positions.
std::vector<double> average_ranks(const Matrix& scores, bool higher_is_better);

} // namespace tsr

#pragma once

#include <span>
#include <string>
#include <vector>

#include "tsr/matrix.hpp"
#include "tsr/rng.hpp"

namespace tsr {

/// In-memory dataset: N x D feature matrix plus N integer class labels in
/// [0, num_classes). Immutable by convention once built; operations return
/// new values.
struct Dataset {
    Matrix features;
    std::vector<int> labels;
    int num_classes = 0;

    std::size_t size() const { return features.rows; }
    std::size_t dim() const { return features.cols; }

    bool operator==(const Dataset&) const = default;
};

// Throws DataError if shapes disagree, a label is out of range, or a
// feature is NaN/infinite.
void validate(const Dataset& ds);

// CSV with header `label,f0,...,f{D-1}`; labels nonnegative integers,
// features finite decimals. num_classes = max label + 1, row order kept.
Dataset load_csv(const std::string& path);

// Inverse of load_csv up to text precision: doubles are written with 17
// significant digits, so load_csv(save_csv(ds)) == ds exactly.
void save_csv(const Dataset& ds, const std::string& path);

// counts[c] = number of rows labelled c; sums to N.
std::vector<std::size_t> class_counts(const Dataset& ds);

// Rows at the given positions, in the given order. Duplicates allowed.
Dataset take_subset(const Dataset& ds, std::span<const std::size_t> indices);

struct FoldAssignment {
    std::vector<int> fold_of; // length N, values in [0, num_folds)
    int num_folds = 0;
};

// Stratified k-fold split: per class, row indices are shuffled with rng and
// dealt round-robin starting at fold 0, so per-class fold sizes differ by at
// most 1. Classes are processed in label order.
FoldAssignment stratified_kfold(const Dataset& ds, int k, SeededRng& rng);

std::vector<std::size_t> fold_test_indices(const FoldAssignment& fa, int fold);
std::vector<std::size_t> fold_train_indices(const FoldAssignment& fa, int fold);

// 17 significant digits, enough to round-trip any double through text.
std::string format_double(double v);

} // namespace tsr

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsr/dataset.hpp"

namespace tsr {

/// A resampler choice; k is the neighbor count for SMOTE (default 5).
struct ResamplerKind {
    enum class Kind { None, Rus, Ros, Smote };
    Kind kind = Kind::None;
    int k = 5;

    bool operator==(const ResamplerKind&) const = default;
};

// Names: none | rus | ros | smote
ResamplerKind parse_resampler(std::string_view name, int smote_k = 5);
std::string to_string(const ResamplerKind& r);

// The k candidates nearest to the query row (query excluded) by Euclidean
// distance, ties broken by ascending row index.
std::vector<std::size_t> knn_indices(const Matrix& points, std::size_t query_index, int k,
                                     std::span<const std::size_t> candidate_indices);

// Provenance of one synthetic row: built as base + lambda * (neighbor - base).
struct SyntheticRecord {
    std::size_t base = 0;
    std::size_t neighbor = 0;
    double lambda = 0.0;
};

// Optional provenance of a resampling pass, for auditing and oracles.
struct ResampleLog {
    std::vector<std::size_t> kept_rows;       // input indices retained, in output order
    std::vector<std::size_t> duplicated_rows; // input indices copied by ROS, in append order
    std::vector<SyntheticRecord> synthetics;  // SMOTE rows, in append order
};

// Undersample every class to the minimum class count (uniform, without
// replacement). Output rows keep their original relative order.
Dataset rus(const Dataset& ds, SeededRng& rng, ResampleLog* log = nullptr);

// Oversample every class to the maximum class count by duplicating uniformly
// with replacement. Originals first, duplicates appended per class.
Dataset ros(const Dataset& ds, SeededRng& rng, ResampleLog* log = nullptr);

// Oversample to the maximum class count with synthetic rows interpolated
// between a random class member and one of its k nearest same-class
// neighbors (k clamped to count-1; singleton classes duplicate their row).
Dataset smote(const Dataset& ds, int k, SeededRng& rng, ResampleLog* log = nullptr);

Dataset apply_resampler(const Dataset& ds, const ResamplerKind& kind, SeededRng& rng,
                        ResampleLog* log = nullptr);

} // namespace tsr

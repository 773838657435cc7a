#pragma once

#include "tsr/dataset.hpp"

namespace tsr {

/// Gaussian-blob benchmark: M isotropic clusters with centers kept at least
/// class_separation apart, spread cluster_spread, n samples per class.
struct SyntheticSpec {
    int num_classes = 8;
    int samples_per_class = 200;
    int dims = 16;
    double cluster_spread = 1.0;
    double class_separation = 6.0;
};

Dataset generate_synthetic(const SyntheticSpec& spec, SeededRng& rng);

} // namespace tsr

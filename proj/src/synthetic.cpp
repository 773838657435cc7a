#include "tsr/synthetic.hpp"

#include <cmath>
#include <string>

#include "tsr/errors.hpp"

namespace tsr {

Dataset generate_synthetic(const SyntheticSpec& spec, SeededRng& rng) {
    if (spec.num_classes < 2) throw ConfigError("synthetic: need at least 2 classes");
    if (spec.samples_per_class < 1) throw ConfigError("synthetic: samples_per_class must be >= 1");
    if (spec.dims < 1) throw ConfigError("synthetic: dims must be >= 1");
    if (spec.cluster_spread <= 0.0 || spec.class_separation <= 0.0)
        throw ConfigError("synthetic: spread and separation must be positive");

    const int m = spec.num_classes;
    const int d = spec.dims;
    // Box wide enough that rejection sampling of separated centers converges.
    const double side =
        2.0 * spec.class_separation * std::max(1.0, std::pow(2.0 * m, 1.0 / d));

    Matrix centers(m, d);
    const int max_tries = 1000;
    for (int c = 0; c < m; ++c) {
        bool placed = false;
        for (int attempt = 0; attempt < max_tries && !placed; ++attempt) {
            for (int j = 0; j < d; ++j) centers(c, j) = side * rng.next_double();
            placed = true;
            for (int prev = 0; prev < c && placed; ++prev) {
                double d2 = 0.0;
                for (int j = 0; j < d; ++j) {
                    double diff = centers(c, j) - centers(prev, j);
                    d2 += diff * diff;
                }
                if (d2 < spec.class_separation * spec.class_separation) placed = false;
            }
        }
        if (!placed)
            throw ConfigError("synthetic: could not place " + std::to_string(m) +
                              " centers at separation " + std::to_string(spec.class_separation) +
                              " in " + std::to_string(d) + " dims; reduce class_separation");
    }

    Dataset ds;
    ds.num_classes = m;
    ds.features = Matrix(std::size_t(m) * spec.samples_per_class, d);
    ds.labels.reserve(ds.features.rows);
    std::size_t row = 0;
    for (int c = 0; c < m; ++c) {
        for (int s = 0; s < spec.samples_per_class; ++s, ++row) {
            auto dst = ds.features.row(row);
            for (int j = 0; j < d; ++j)
                dst[j] = centers(c, j) + spec.cluster_spread * rng.next_normal();
            ds.labels.push_back(c);
        }
    }
    return ds;
}

} // namespace tsr

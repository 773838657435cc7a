#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "tsr/dataset.hpp"

namespace tsr::test {

// Scratch directory removed when the test binary exits the scope.
struct TempDir {
    std::filesystem::path path;

    TempDir() {
        auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        path = base / ("tsr_test_" + std::to_string(rd()) + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

// Dataset with the given labels; feature column 0 is the row index so rows
// stay identifiable through subsetting and resampling.
inline Dataset tagged_dataset(const std::vector<int>& labels, std::size_t dims = 2) {
    Dataset ds;
    ds.labels = labels;
    ds.num_classes = 0;
    for (int l : labels) ds.num_classes = std::max(ds.num_classes, l + 1);
    ds.features = Matrix(labels.size(), dims);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ds.features(i, 0) = static_cast<double>(i);
        for (std::size_t j = 1; j < dims; ++j)
            ds.features(i, j) = 0.25 * static_cast<double>(i) + static_cast<double>(j);
    }
    return ds;
}

// n rows of each class in [0, m).
inline std::vector<int> balanced_labels(int m, int n) {
    std::vector<int> labels;
    labels.reserve(std::size_t(m) * n);
    for (int c = 0; c < m; ++c)
        for (int i = 0; i < n; ++i) labels.push_back(c);
    return labels;
}

} // namespace tsr::test

#include "tsr/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tsr/errors.hpp"

namespace tsr {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void validate(const Dataset& ds) {
    if (ds.features.rows != ds.labels.size())
        throw DataError("dataset: feature row count (" + std::to_string(ds.features.rows) +
                        ") != label count (" + std::to_string(ds.labels.size()) + ")");
    if (ds.num_classes <= 0)
        throw DataError("dataset: num_classes must be positive");
    for (std::size_t i = 0; i < ds.labels.size(); ++i)
        if (ds.labels[i] < 0 || ds.labels[i] >= ds.num_classes)
            throw DataError("dataset: label " + std::to_string(ds.labels[i]) +
                            " out of range at row " + std::to_string(i));
    for (double v : ds.features.data)
        if (!std::isfinite(v))
            throw DataError("dataset: non-finite feature value");
}

namespace {

// Splits one CSV line on commas. No quoting; the format has none.
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_feature(const std::string& s, std::size_t line_no) {
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw DataError("line " + std::to_string(line_no) + ": bad feature value '" + s + "'");
    if (!std::isfinite(v))
        throw DataError("line " + std::to_string(line_no) + ": non-finite feature value '" + s + "'");
    return v;
}

int parse_label(const std::string& s, std::size_t line_no) {
    const char* begin = s.c_str();
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw DataError("line " + std::to_string(line_no) + ": non-integer label '" + s + "'");
    if (v < 0)
        throw DataError("line " + std::to_string(line_no) + ": negative label '" + s + "'");
    if (v > 1 << 20)
        throw DataError("line " + std::to_string(line_no) + ": label '" + s + "' implausibly large");
    return static_cast<int>(v);
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw DataError(path + ": empty file");
    line = strip_cr(line);

    auto header = split_fields(line);
    if (header.empty() || header[0] != "label")
        throw DataError(path + ": header must start with 'label'");
    const std::size_t dims = header.size() - 1;
    for (std::size_t d = 0; d < dims; ++d)
        if (header[d + 1] != "f" + std::to_string(d))
            throw DataError(path + ": header column " + std::to_string(d + 1) +
                            " must be 'f" + std::to_string(d) + "'");

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != dims + 1)
            throw DataError(path + ": line " + std::to_string(line_no) + ": expected " +
                            std::to_string(dims + 1) + " fields, got " +
                            std::to_string(fields.size()));
        labels.push_back(parse_label(fields[0], line_no));
        for (std::size_t d = 0; d < dims; ++d)
            values.push_back(parse_feature(fields[d + 1], line_no));
    }
    if (labels.empty())
        throw DataError(path + ": empty dataset");

    Dataset ds;
    ds.features.rows = labels.size();
    ds.features.cols = dims;
    ds.features.data = std::move(values);
    ds.labels = std::move(labels);
    ds.num_classes = 1 + *std::max_element(ds.labels.begin(), ds.labels.end());
    validate(ds);
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    validate(ds);
    if (ds.size() == 0)
        throw DataError("refusing to write empty dataset to '" + path + "'");

    std::ofstream out(path, std::ios::binary); // binary: LF endings everywhere
    if (!out)
        throw DataError("cannot open '" + path + "' for writing");

    out << "label";
    for (std::size_t d = 0; d < ds.dim(); ++d) out << ",f" << d;
    out << "\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out << ds.labels[i];
        for (double v : ds.features.row(i)) out << ',' << format_double(v);
        out << "\n";
    }
    if (!out)
        throw DataError("write failure on '" + path + "'");
}

std::vector<std::size_t> class_counts(const Dataset& ds) {
    std::vector<std::size_t> counts(ds.num_classes, 0);
    for (int label : ds.labels) counts[label]++;
    return counts;
}

Dataset take_subset(const Dataset& ds, std::span<const std::size_t> indices) {
    for (std::size_t idx : indices)
        if (idx >= ds.size())
            throw DataError("take_subset: index " + std::to_string(idx) + " out of range (N=" +
                            std::to_string(ds.size()) + ")");

    Dataset out;
    out.num_classes = ds.num_classes;
    out.features = Matrix(indices.size(), ds.dim());
    out.labels.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        auto src = ds.features.row(indices[i]);
        std::copy(src.begin(), src.end(), out.features.row(i).begin());
        out.labels.push_back(ds.labels[indices[i]]);
    }
    return out;
}

FoldAssignment stratified_kfold(const Dataset& ds, int k, SeededRng& rng) {
    validate(ds);
    if (k < 2)
        throw ConfigError("stratified_kfold: k must be >= 2, got " + std::to_string(k));

    std::vector<std::vector<std::size_t>> by_class(ds.num_classes);
    for (std::size_t i = 0; i < ds.size(); ++i)
        by_class[ds.labels[i]].push_back(i);

    FoldAssignment fa;
    fa.num_folds = k;
    fa.fold_of.assign(ds.size(), -1);
    for (int c = 0; c < ds.num_classes; ++c) {
        auto& rows = by_class[c];
        if (rows.size() < static_cast<std::size_t>(k))
            throw DataError("stratified_kfold: class " + std::to_string(c) + " has " +
                            std::to_string(rows.size()) + " samples, fewer than k=" +
                            std::to_string(k));
        rng.shuffle(rows);
        for (std::size_t i = 0; i < rows.size(); ++i)
            fa.fold_of[rows[i]] = static_cast<int>(i % k);
    }
    return fa;
}

std::vector<std::size_t> fold_test_indices(const FoldAssignment& fa, int fold) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fa.fold_of.size(); ++i)
        if (fa.fold_of[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> fold_train_indices(const FoldAssignment& fa, int fold) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fa.fold_of.size(); ++i)
        if (fa.fold_of[i] != fold) out.push_back(i);
    return out;
}

} // namespace tsr

#include "tsr/resampling.hpp"

#include <algorithm>
#include <cmath>

#include "tsr/errors.hpp"

namespace tsr {

ResamplerKind parse_resampler(std::string_view name, int smote_k) {
    ResamplerKind r;
    r.k = smote_k;
    if (name == "none") r.kind = ResamplerKind::Kind::None;
    else if (name == "rus") r.kind = ResamplerKind::Kind::Rus;
    else if (name == "ros") r.kind = ResamplerKind::Kind::Ros;
    else if (name == "smote") r.kind = ResamplerKind::Kind::Smote;
    else
        throw ConfigError("unknown resampler '" + std::string(name) +
                          "' (expected none|rus|ros|smote)");
    if (r.k < 1)
        throw ConfigError("smote k must be >= 1, got " + std::to_string(smote_k));
    return r;
}

std::string to_string(const ResamplerKind& r) {
    switch (r.kind) {
        case ResamplerKind::Kind::None: return "none";
        case ResamplerKind::Kind::Rus: return "rus";
        case ResamplerKind::Kind::Ros: return "ros";
        case ResamplerKind::Kind::Smote: return "smote";
    }
    return "?";
}

std::vector<std::size_t> knn_indices(const Matrix& points, std::size_t query_index, int k,
                                     std::span<const std::size_t> candidate_indices) {
    if (k < 1)
        throw ConfigError("knn_indices: k must be >= 1");
    if (candidate_indices.size() < static_cast<std::size_t>(k) + 1)
        throw DataError("knn_indices: need at least k+1 candidates, got " +
                        std::to_string(candidate_indices.size()));

    bool query_present = false;
    auto q = points.row(query_index);
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(candidate_indices.size());
    for (std::size_t idx : candidate_indices) {
        if (idx >= points.rows)
            throw DataError("knn_indices: candidate index out of range");
        if (idx == query_index) {
            query_present = true;
            continue;
        }
        auto p = points.row(idx);
        double d2 = 0.0;
        for (std::size_t j = 0; j < points.cols; ++j) {
            double diff = p[j] - q[j];
            d2 += diff * diff;
        }
        dist.emplace_back(d2, idx);
    }
    if (!query_present)
        throw DataError("knn_indices: query row must be among the candidates");

    std::sort(dist.begin(), dist.end()); // pair order = (distance, index): the tie rule
    std::vector<std::size_t> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) out.push_back(dist[i].second);
    return out;
}

namespace {

std::vector<std::vector<std::size_t>> rows_by_class(const Dataset& ds) {
    std::vector<std::vector<std::size_t>> by_class(ds.num_classes);
    for (std::size_t i = 0; i < ds.size(); ++i)
        by_class[ds.labels[i]].push_back(i);
    for (int c = 0; c < ds.num_classes; ++c)
        if (by_class[c].empty())
            throw DataError("resampling: class " + std::to_string(c) + " is empty");
    return by_class;
}

} // namespace

Dataset rus(const Dataset& ds, SeededRng& rng, ResampleLog* log) {
    validate(ds);
    auto by_class = rows_by_class(ds);
    std::size_t min_count = ds.size();
    for (auto& rows : by_class) min_count = std::min(min_count, rows.size());

    std::vector<std::size_t> keep;
    keep.reserve(min_count * ds.num_classes);
    for (auto& rows : by_class) {
        rng.shuffle(rows);
        keep.insert(keep.end(), rows.begin(), rows.begin() + min_count);
    }
    std::sort(keep.begin(), keep.end());
    if (log) log->kept_rows = keep;
    return take_subset(ds, keep);
}

Dataset ros(const Dataset& ds, SeededRng& rng, ResampleLog* log) {
    validate(ds);
    auto by_class = rows_by_class(ds);
    std::size_t max_count = 0;
    for (auto& rows : by_class) max_count = std::max(max_count, rows.size());

    std::vector<std::size_t> keep(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) keep[i] = i;
    std::vector<std::size_t> extra;
    for (auto& rows : by_class)
        for (std::size_t need = max_count - rows.size(); need > 0; --need)
            extra.push_back(rows[rng.next_below(rows.size())]);

    if (log) {
        log->kept_rows = keep;
        log->duplicated_rows = extra;
    }
    keep.insert(keep.end(), extra.begin(), extra.end());
    return take_subset(ds, keep);
}

Dataset smote(const Dataset& ds, int k, SeededRng& rng, ResampleLog* log) {
    validate(ds);
    if (k < 1)
        throw ConfigError("smote: k must be >= 1");
    auto by_class = rows_by_class(ds);
    std::size_t max_count = 0;
    for (auto& rows : by_class) max_count = std::max(max_count, rows.size());

    std::vector<SyntheticRecord> records;
    for (int c = 0; c < ds.num_classes; ++c) {
        const auto& rows = by_class[c];
        // Neighbor lists are deterministic per base row; compute lazily.
        std::vector<std::vector<std::size_t>> neighbors(rows.size());
        const int kc = std::min<int>(k, static_cast<int>(rows.size()) - 1);
        for (std::size_t need = max_count - rows.size(); need > 0; --need) {
            std::size_t pick = rng.next_below(rows.size());
            std::size_t base = rows[pick];
            if (rows.size() == 1) {
                records.push_back({base, base, 0.0}); // lone row: plain copy
                continue;
            }
            if (neighbors[pick].empty())
                neighbors[pick] = knn_indices(ds.features, base, kc, rows);
            std::size_t nn = neighbors[pick][rng.next_below(neighbors[pick].size())];
            records.push_back({base, nn, rng.next_double()});
        }
    }

    Dataset out;
    out.num_classes = ds.num_classes;
    out.features = Matrix(ds.size() + records.size(), ds.dim());
    std::copy(ds.features.data.begin(), ds.features.data.end(), out.features.data.begin());
    out.labels = ds.labels;
    for (std::size_t s = 0; s < records.size(); ++s) {
        const auto& rec = records[s];
        auto base = ds.features.row(rec.base);
        auto nn = ds.features.row(rec.neighbor);
        auto dst = out.features.row(ds.size() + s);
        for (std::size_t j = 0; j < ds.dim(); ++j)
            dst[j] = base[j] + rec.lambda * (nn[j] - base[j]);
        out.labels.push_back(ds.labels[rec.base]);
    }

    if (log) {
        log->kept_rows.resize(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i) log->kept_rows[i] = i;
        log->synthetics = std::move(records);
    }
    return out;
}

Dataset apply_resampler(const Dataset& ds, const ResamplerKind& kind, SeededRng& rng,
                        ResampleLog* log) {
    switch (kind.kind) {
        case ResamplerKind::Kind::None: {
            if (log) {
                log->kept_rows.resize(ds.size());
                for (std::size_t i = 0; i < ds.size(); ++i) log->kept_rows[i] = i;
            }
            return ds;
        }
        case ResamplerKind::Kind::Rus: return rus(ds, rng, log);
        case ResamplerKind::Kind::Ros: return ros(ds, rng, log);
        case ResamplerKind::Kind::Smote: return smote(ds, kind.k, rng, log);
    }
    throw ConfigError("apply_resampler: bad kind");
}

} // namespace tsr

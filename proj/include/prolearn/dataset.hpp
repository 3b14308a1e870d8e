#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "prolearn/elm.hpp"
#include "prolearn/errors.hpp"
#include "prolearn/matrix.hpp"
#include "prolearn/random.hpp"

namespace prolearn {

struct FeatureBounds {
    double min;
    double max;
};

/// Feature rows with symbolic labels. Labels are opaque text and never
/// parsed as numbers. feature_bounds holds the per-column range the rows
/// had before any normalization, so the same affine map can be applied to
/// held-out data.
struct LabeledDataset {
    std::string name;
    Matrix features; // N x n
    std::vector<std::string> labels;
    std::vector<FeatureBounds> feature_bounds;

    std::size_t size() const { return features.rows(); }
    std::size_t feature_count() const { return features.cols(); }

    ClassList class_list() const { return distinct_labels(labels); }

    std::vector<std::size_t> indices_of(const std::string& label) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) out.push_back(i);
        return out;
    }
};

inline std::vector<FeatureBounds> column_bounds(const Matrix& features) {
    std::vector<FeatureBounds> bounds(features.cols());
    for (std::size_t j = 0; j < features.cols(); ++j) {
        double lo = features(0, j), hi = features(0, j);
        for (std::size_t i = 1; i < features.rows(); ++i) {
            lo = std::min(lo, features(i, j));
            hi = std::max(hi, features(i, j));
        }
        bounds[j] = {lo, hi};
    }
    return bounds;
}

struct CsvOptions {
    bool has_header = false;
    int label_column = -1; // 0-based; -1 means last column
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

inline double parse_real(const std::string& cell, std::size_t line_no) {
    if (cell.empty()) throw ParseError("empty feature cell", line_no);
    char* end = nullptr;
    double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size())
        throw ParseError("cannot parse '" + cell + "' as a real number", line_no);
    if (!std::isfinite(v)) throw ParseError("non-finite value '" + cell + "'", line_no);
    return v;
}

inline std::string basename_no_ext(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

} // namespace detail

/// Plain comma-separated file, one sample per row, features as reals and the
/// label as text (last column unless overridden). Blank lines are skipped.
inline LabeledDataset load_csv(const std::string& path, const CsvOptions& options = {}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);

    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = options.has_header;
    std::size_t expected_cells = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }
        std::vector<std::string> cells = detail::split_cells(line);
        if (expected_cells == 0) {
            expected_cells = cells.size();
            if (expected_cells < 2)
                throw ParseError("need at least one feature column plus a label", line_no);
        } else if (cells.size() != expected_cells) {
            throw ParseError("ragged row: expected " + std::to_string(expected_cells) +
                                 " cells, got " + std::to_string(cells.size()),
                             line_no);
        }
        std::size_t label_idx = options.label_column < 0
                                    ? expected_cells - 1
                                    : static_cast<std::size_t>(options.label_column);
        if (label_idx >= expected_cells)
            throw ParseError("label column " + std::to_string(label_idx) + " out of range",
                             line_no);
        std::vector<double> row;
        row.reserve(expected_cells - 1);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i == label_idx) continue;
            row.push_back(detail::parse_real(cells[i], line_no));
        }
        if (cells[label_idx].empty()) throw ParseError("empty label cell", line_no);
        rows.push_back(std::move(row));
        labels.push_back(cells[label_idx]);
    }
    if (rows.empty()) throw EmptyDatasetError("no data rows in " + path);

    Matrix features = rows_to_matrix(rows);
    std::vector<FeatureBounds> bounds = column_bounds(features);
    return {detail::basename_no_ext(path), std::move(features), std::move(labels),
            std::move(bounds)};
}

/// Map each column affinely so the given bounds land on [-1, +1]. Columns
/// whose bounds coincide map to 0.
inline LabeledDataset apply_bounds(const LabeledDataset& ds,
                                   const std::vector<FeatureBounds>& bounds) {
    if (bounds.size() != ds.feature_count())
        throw DimensionError("bounds length does not match feature count");
    LabeledDataset out = ds;
    for (std::size_t j = 0; j < ds.feature_count(); ++j) {
        double lo = bounds[j].min, hi = bounds[j].max;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            out.features(i, j) =
                hi == lo ? 0.0 : -1.0 + 2.0 * (ds.features(i, j) - lo) / (hi - lo);
        }
    }
    out.feature_bounds = bounds;
    return out;
}

/// Normalize to [-1, 1] using the dataset's own column ranges; the ranges
/// are kept on the result so they can be applied to held-out data.
inline LabeledDataset normalize(const LabeledDataset& ds) {
    return apply_bounds(ds, column_bounds(ds.features));
}

/// Inverse of apply_bounds with the stored ranges.
inline LabeledDataset denormalize(const LabeledDataset& ds) {
    LabeledDataset out = ds;
    for (std::size_t j = 0; j < ds.feature_count(); ++j) {
        double lo = ds.feature_bounds[j].min, hi = ds.feature_bounds[j].max;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            out.features(i, j) =
                hi == lo ? lo : lo + (ds.features(i, j) + 1.0) * 0.5 * (hi - lo);
        }
    }
    return out;
}

/// Rows of ds selected by index, original order preserved.
inline LabeledDataset subset(const LabeledDataset& ds, const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw EmptyDatasetError("empty subset of " + ds.name);
    Matrix features(indices.size(), ds.feature_count());
    std::vector<std::string> labels;
    labels.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        for (std::size_t j = 0; j < ds.feature_count(); ++j)
            features(i, j) = ds.features(indices[i], j);
        labels.push_back(ds.labels[indices[i]]);
    }
    std::vector<FeatureBounds> bounds = column_bounds(features);
    return {ds.name, std::move(features), std::move(labels), std::move(bounds)};
}

/// Stratified holdout split. Every class present in ds appears in the test
/// part; per-class proportions follow test_fraction as closely as rounding
/// allows.
inline std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds,
                                                       double test_fraction, std::uint64_t seed,
                                                       bool stratified = true) {
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0))
        throw SplitError("test fraction must lie strictly between 0 and 1");
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> test_idx;

    if (stratified) {
        for (const auto& label : ds.class_list()) {
            std::vector<std::size_t> idx = ds.indices_of(label);
            std::size_t take = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::llround(test_fraction * idx.size())));
            if (take >= idx.size())
                throw SplitError("class '" + label + "' has too few samples (" +
                                 std::to_string(idx.size()) + ") for a stratified split");
            shuffle(idx, rng);
            test_idx.insert(test_idx.end(), idx.begin(), idx.begin() + take);
        }
    } else {
        std::vector<std::size_t> idx(ds.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::size_t take = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(test_fraction * ds.size())));
        if (take >= ds.size()) throw SplitError("test fraction leaves no training data");
        shuffle(idx, rng);
        test_idx.assign(idx.begin(), idx.begin() + take);
    }

    std::sort(test_idx.begin(), test_idx.end());
    std::vector<bool> in_test(ds.size(), false);
    for (std::size_t i : test_idx) in_test[i] = true;
    std::vector<std::size_t> train_idx;
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (!in_test[i]) train_idx.push_back(i);
    return {subset(ds, train_idx), subset(ds, test_idx)};
}

/// Stratified k-fold partition: every sample lands in exactly one test fold
/// and per-class counts differ by at most one across folds.
inline std::vector<std::pair<LabeledDataset, LabeledDataset>> kfold(const LabeledDataset& ds,
                                                                    std::size_t k,
                                                                    std::uint64_t seed) {
    if (k < 2) throw SplitError("k-fold needs k >= 2");
    if (k > ds.size())
        throw SplitError("k = " + std::to_string(k) + " exceeds dataset size " +
                         std::to_string(ds.size()));
    std::mt19937_64 rng(seed);
    std::vector<std::vector<std::size_t>> fold_members(k);
    // The round-robin start rotates across classes so the N assignments walk
    // the fold ring consecutively: every fold is hit once k <= N, which keeps
    // leave-one-out (k == N) legal, and per-class counts stay within one.
    std::size_t offset = 0;
    for (const auto& label : ds.class_list()) {
        std::vector<std::size_t> idx = ds.indices_of(label);
        shuffle(idx, rng);
        for (std::size_t t = 0; t < idx.size(); ++t)
            fold_members[(offset + t) % k].push_back(idx[t]);
        offset = (offset + idx.size()) % k;
    }

    std::vector<std::pair<LabeledDataset, LabeledDataset>> out;
    out.reserve(k);
    for (std::size_t f = 0; f < k; ++f) {
        std::vector<bool> in_test(ds.size(), false);
        for (std::size_t i : fold_members[f]) in_test[i] = true;
        std::vector<std::size_t> train_idx, test_idx;
        for (std::size_t i = 0; i < ds.size(); ++i)
            (in_test[i] ? test_idx : train_idx).push_back(i);
        if (test_idx.empty() || train_idx.empty())
            throw SplitError("fold " + std::to_string(f) + " is degenerate");
        out.emplace_back(subset(ds, train_idx), subset(ds, test_idx));
    }
    return out;
}

} // namespace prolearn

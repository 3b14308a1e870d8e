#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "prolearn/errors.hpp"
#include "prolearn/matrix.hpp"
#include "prolearn/projection.hpp"

namespace prolearn {

using ClassList = std::vector<std::string>;

inline std::size_t class_index(const ClassList& classes, const std::string& label) {
    auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end())
        throw UnknownClassError("label '" + label + "' not in class registry");
    return static_cast<std::size_t>(it - classes.begin());
}

inline bool has_class(const ClassList& classes, const std::string& label) {
    return std::find(classes.begin(), classes.end(), label) != classes.end();
}

/// Distinct labels in first-appearance order.
inline ClassList distinct_labels(const std::vector<std::string>& labels) {
    ClassList out;
    for (const auto& l : labels)
        if (!has_class(out, l)) out.push_back(l);
    return out;
}

/// One-vs-rest +1/-1 target rows: +1 in the column of the sample's class,
/// -1 everywhere else.
inline Matrix encode_targets(const std::vector<std::string>& labels, const ClassList& classes) {
    if (labels.empty()) throw EmptyChunkError("no labels to encode");
    Matrix t(labels.size(), classes.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::size_t j = class_index(classes, labels[i]);
        for (std::size_t k = 0; k < classes.size(); ++k) t(i, k) = (k == j) ? 1.0 : -1.0;
    }
    return t;
}

struct Prediction {
    std::string label;
    std::vector<double> scores;
};

/// Scores = hidden_row(x) * beta; the predicted class is the argmax column,
/// ties resolved toward the lowest index.
inline Prediction predict(const Matrix& beta, const RandomProjection& proj,
                          std::span<const double> x, const ClassList& classes) {
    if (beta.cols() != classes.size())
        throw DimensionError("beta has " + std::to_string(beta.cols()) + " columns for " +
                             std::to_string(classes.size()) + " classes");
    Matrix scores = matmul(proj.hidden_row(x), beta);
    std::size_t best = 0;
    for (std::size_t j = 1; j < scores.cols(); ++j)
        if (scores(0, j) > scores(0, best)) best = j;
    return {classes[best], {scores.row(0).begin(), scores.row(0).end()}};
}

/// Batch-trained model: beta solved in one shot from the whole dataset.
struct BatchModel {
    RandomProjection projection;
    Matrix beta;
    ClassList classes;

    Prediction predict(std::span<const double> x) const {
        return prolearn::predict(beta, projection, x, classes);
    }
};

inline BatchModel train_batch(const RandomProjection& proj, const Matrix& xs,
                              const std::vector<std::string>& labels) {
    if (labels.size() != xs.rows())
        throw DimensionError("label count " + std::to_string(labels.size()) +
                             " does not match sample count " + std::to_string(xs.rows()));
    if (xs.rows() < proj.hidden_count())
        throw InsufficientDataError("need at least " + std::to_string(proj.hidden_count()) +
                                    " samples for " + std::to_string(proj.hidden_count()) +
                                    " hidden neurons, got " + std::to_string(xs.rows()));
    ClassList classes = distinct_labels(labels);
    if (classes.size() < 2)
        throw InsufficientDataError("training data covers fewer than 2 classes");
    Matrix h = proj.hidden_matrix(xs);
    Matrix t = encode_targets(labels, classes);
    Matrix beta = matmul(pseudo_inverse(h), t);
    return {proj, std::move(beta), std::move(classes)};
}

/// Fraction of samples whose predicted label matches the truth. Labels the
/// model never learnt count as misses, not as errors thrown.
inline double accuracy(const BatchModel& model, const Matrix& xs,
                       const std::vector<std::string>& labels) {
    if (labels.empty()) throw EmptyChunkError("empty evaluation set");
    if (labels.size() != xs.rows())
        throw DimensionError("label count does not match sample count");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < xs.rows(); ++i)
        if (model.predict(xs.row(i)).label == labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

} // namespace prolearn

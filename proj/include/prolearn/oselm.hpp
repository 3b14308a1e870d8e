#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "prolearn/elm.hpp"
#include "prolearn/errors.hpp"
#include "prolearn/matrix.hpp"
#include "prolearn/projection.hpp"

namespace prolearn {

/// Recursive-least-squares learner state. beta is the current output weight
/// matrix, m tracks the inverse Gram matrix of every hidden row seen so far,
/// and last_h caches the hidden output of the most recently absorbed chunk
/// (the recalibration step in progressive.hpp reads it).
///
/// weight_updates counts output-weight work in units of samples x output
/// neurons; the hidden-neuron factor is common to every term and left out.
struct OnlineState {
    RandomProjection projection;
    Matrix beta;                    // P x m
    Matrix m;                       // P x P, tracks (H^T H)^-1
    ClassList classes;
    Matrix last_h;                  // b x P
    std::vector<double> hidden_sum; // column sums of all hidden rows seen
    std::size_t samples_seen = 0;
    std::uint64_t weight_updates = 0;

    Prediction predict(std::span<const double> x) const {
        return prolearn::predict(beta, projection, x, classes);
    }
};

/// Solve the initial block exactly as the batch trainer would, but keep the
/// inverse Gram matrix around so later chunks can be folded in recursively.
inline OnlineState init_online(const RandomProjection& proj, const Matrix& xs,
                               const std::vector<std::string>& labels) {
    if (labels.size() != xs.rows())
        throw DimensionError("label count does not match sample count");
    if (xs.rows() < proj.hidden_count())
        throw InsufficientDataError("initial block of " + std::to_string(xs.rows()) +
                                    " samples is smaller than the hidden layer (" +
                                    std::to_string(proj.hidden_count()) + ")");
    ClassList classes = distinct_labels(labels);
    if (classes.size() < 2)
        throw InsufficientDataError("initial block covers fewer than 2 classes");

    Matrix h0 = proj.hidden_matrix(xs);
    Matrix m0 = invert(matmul(transpose(h0), h0));
    Matrix t0 = encode_targets(labels, classes);
    Matrix beta0 = matmul(m0, matmul(transpose(h0), t0));

    std::vector<double> sums(proj.hidden_count(), 0.0);
    for (std::size_t i = 0; i < h0.rows(); ++i)
        for (std::size_t j = 0; j < h0.cols(); ++j) sums[j] += h0(i, j);

    OnlineState state{proj, std::move(beta0), std::move(m0), std::move(classes),
                      std::move(h0), std::move(sums)};
    state.samples_seen = xs.rows();
    state.weight_updates = static_cast<std::uint64_t>(xs.rows()) * state.classes.size();
    return state;
}

/// Fold one chunk into the state:
///   M' = M - M h^T (I + h M h^T)^-1 h M
///   beta' = beta + M' h^T (T - h beta)
/// One-by-one learning is the b = 1 case of the same update. Every chunk
/// label must already be registered; new classes go through the progressive
/// layer instead.
inline void update_chunk(OnlineState& state, const Matrix& xs,
                         const std::vector<std::string>& labels) {
    if (labels.size() != xs.rows())
        throw DimensionError("label count does not match sample count");
    for (const auto& l : labels)
        if (!has_class(state.classes, l))
            throw UnknownClassError("label '" + l + "' not in class registry");

    Matrix h = state.projection.hidden_matrix(xs);
    Matrix ht = transpose(h);
    Matrix t = encode_targets(labels, state.classes);

    Matrix hm = matmul(h, state.m);                                  // b x P
    Matrix inner = add(identity(h.rows()), matmul(hm, ht));          // b x b
    Matrix gain = matmul(matmul(state.m, ht), invert(inner));        // P x b
    state.m = subtract(state.m, matmul(gain, hm));

    Matrix residual = subtract(t, matmul(h, state.beta));            // b x m
    state.beta = add(state.beta, matmul(matmul(state.m, ht), residual));

    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) state.hidden_sum[j] += h(i, j);
    state.last_h = std::move(h);
    state.samples_seen += xs.rows();
    state.weight_updates += static_cast<std::uint64_t>(xs.rows()) * state.classes.size();
}

inline void update_chunk(OnlineState& state, const std::vector<std::vector<double>>& xs,
                         const std::vector<std::string>& labels) {
    update_chunk(state, rows_to_matrix(xs), labels);
}

} // namespace prolearn

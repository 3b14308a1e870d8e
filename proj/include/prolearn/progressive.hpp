#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "prolearn/errors.hpp"
#include "prolearn/matrix.hpp"
#include "prolearn/oselm.hpp"

namespace prolearn {

/// One network-widening event: the stream position (1-based index of the
/// first sample of the triggering chunk) and the labels added there.
struct RecalibrationEvent {
    std::size_t sample_index;
    ClassList added;
};

struct WeightReport {
    std::uint64_t static_units;      // samples x final class count, the fixed-width cost
    std::uint64_t progressive_units; // accumulated samples x registry-width-at-the-time
    double percent_saved;
};

/// Distinct chunk labels missing from the registry, in first-appearance
/// order. Empty means the plain RLS path applies.
inline ClassList detect_new_classes(const OnlineState& state,
                                    const std::vector<std::string>& labels) {
    ClassList out;
    for (const auto& l : labels)
        if (!has_class(state.classes, l) && !has_class(out, l)) out.push_back(l);
    return out;
}

/// Correction columns for c new classes: -M h^T J, with h the hidden output
/// of the previous chunk and J the b x c all-ones matrix. Each column is the
/// recursive update the new class would have received had it been present
/// with target -1 for every sample seen so far.
inline Matrix delta_beta(const Matrix& m, const Matrix& last_h, std::size_t c) {
    return scale(matmul(matmul(m, transpose(last_h)), ones(last_h.rows(), c)), -1.0);
}

/// The same widening written as padding plus correction: beta is extended
/// with zero columns through a rectangular identity, then the correction
/// block is added on the right. Algebraically identical to appending
/// delta_beta; kept as an independent route for validation.
inline Matrix widened_beta_padded(const Matrix& beta, const Matrix& m, const Matrix& last_h,
                                  std::size_t c) {
    Matrix padded = matmul(beta, rect_identity(beta.cols(), beta.cols() + c));
    Matrix correction = hconcat(zeros(beta.rows(), beta.cols()),
                                delta_beta(m, last_h, c));
    // zeros() gives +0.0 entries, so the left block of the sum is unchanged.
    return add(padded, correction);
}

/// Variant correction that sums the hidden output of every chunk seen so
/// far instead of only the last one. Not used on the learning path; the
/// experiment suite compares the two empirically.
inline Matrix delta_beta_from_history(const Matrix& m, const std::vector<double>& hidden_sum,
                                      std::size_t c) {
    Matrix s(hidden_sum.size(), 1);
    for (std::size_t i = 0; i < hidden_sum.size(); ++i) s(i, 0) = hidden_sum[i];
    return scale(matmul(matmul(m, s), ones(1, c)), -1.0);
}

/// Widen the network for new_labels: append the correction columns to beta
/// and extend the registry. Existing beta columns and M are untouched, so
/// scores of previously known classes are unchanged at this instant.
inline void recalibrate(OnlineState& state, const ClassList& new_labels) {
    if (new_labels.empty()) throw DuplicateClassError("no new labels to add");
    for (std::size_t i = 0; i < new_labels.size(); ++i) {
        if (has_class(state.classes, new_labels[i]))
            throw DuplicateClassError("label '" + new_labels[i] + "' already registered");
        for (std::size_t j = i + 1; j < new_labels.size(); ++j)
            if (new_labels[i] == new_labels[j])
                throw DuplicateClassError("label '" + new_labels[i] + "' repeated in new set");
    }
    state.beta = hconcat(state.beta, delta_beta(state.m, state.last_h, new_labels.size()));
    for (const auto& l : new_labels) state.classes.push_back(l);
}

/// Online learner that grows its output layer when the stream brings labels
/// it has never seen. Chunks of known classes flow through the plain RLS
/// update; chunks with unseen labels first trigger a recalibration.
struct ProgressiveModel {
    OnlineState state;
    std::vector<RecalibrationEvent> log;

    static ProgressiveModel init(const RandomProjection& proj, const Matrix& xs,
                                 const std::vector<std::string>& labels) {
        return {init_online(proj, xs, labels), {}};
    }

    void learn_chunk(const Matrix& xs, const std::vector<std::string>& labels) {
        ClassList fresh = detect_new_classes(state, labels);
        if (!fresh.empty()) {
            std::size_t at = state.samples_seen + 1;
            recalibrate(state, fresh);
            log.push_back({at, std::move(fresh)});
        }
        update_chunk(state, xs, labels);
    }

    void learn_chunk(const std::vector<std::vector<double>>& xs,
                     const std::vector<std::string>& labels) {
        learn_chunk(rows_to_matrix(xs), labels);
    }

    Prediction predict(std::span<const double> x) const { return state.predict(x); }

    /// Weight-update accounting against a fixed-width learner that knew all
    /// final_class_count classes from the first sample.
    WeightReport weight_calc_report(std::size_t final_class_count) const {
        std::uint64_t fixed = static_cast<std::uint64_t>(state.samples_seen) * final_class_count;
        double saved = fixed == 0
                           ? 0.0
                           : 100.0 * (1.0 - static_cast<double>(state.weight_updates) /
                                                static_cast<double>(fixed));
        return {fixed, state.weight_updates, saved};
    }
};

} // namespace prolearn

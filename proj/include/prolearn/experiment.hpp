#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prolearn/dataset.hpp"
#include "prolearn/errors.hpp"
#include "prolearn/progressive.hpp"
#include "prolearn/schedule.hpp"

namespace prolearn {

// Salts for deriving independent sub-seeds from one user-facing seed, so the
// split, the stream order, and the projection never share a generator.
inline constexpr std::uint64_t kSplitSalt = 1;
inline constexpr std::uint64_t kStreamSalt = 2;
inline constexpr std::uint64_t kProjectionSalt = 3;
inline constexpr std::uint64_t kFoldSalt = 4;

struct ExperimentConfig {
    std::string dataset_path;
    std::string schedule_path; // empty: all classes allowed from the start
    std::size_t hidden = 20;
    Activation activation = Activation::Sigmoid;
    std::size_t chunk = 1;
    std::size_t init_block = 0; // 0: take the schedule's value
    std::uint64_t seed = 1;
    std::size_t trials = 10;
    std::size_t folds = 10;
    double test_fraction = 0.2;
    bool csv_has_header = false;
    int label_column = -1;
    std::string out_dir = ".";

    CsvOptions csv_options() const { return {csv_has_header, label_column}; }
};

inline void validate_config(const ExperimentConfig& config) {
    if (config.dataset_path.empty()) throw ConfigError("no dataset given");
    if (config.hidden < 1) throw ConfigError("hidden neuron count must be positive");
    if (config.chunk < 1) throw ConfigError("chunk size must be positive");
}

/// Accuracy of a fixed predictor on a fixed test set: overall plus one value
/// per test-set class (in `classes` order).
struct Evaluation {
    double overall;
    std::vector<double> per_class;
};

/// Precomputes the hidden representation of the test set once so the model
/// can be scored after every chunk without re-projecting.
class Evaluator {
public:
    Evaluator(const RandomProjection& projection, const LabeledDataset& test)
        : h_(projection.hidden_matrix(test.features)),
          classes_(distinct_labels(test.labels)) {
        label_idx_.reserve(test.labels.size());
        for (const auto& label : test.labels)
            label_idx_.push_back(class_index(classes_, label));
        totals_.assign(classes_.size(), 0);
        for (std::size_t i : label_idx_) ++totals_[i];
    }

    const ClassList& classes() const { return classes_; }

    Evaluation evaluate(const Matrix& beta, const ClassList& registry) const {
        if (beta.cols() != registry.size())
            throw DimensionError("output width " + std::to_string(beta.cols()) +
                                 " does not match registry size " +
                                 std::to_string(registry.size()));
        // Map each registry slot to a test-class slot (or npos if the test
        // set never shows that class).
        constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
        std::vector<std::size_t> to_eval(registry.size(), npos);
        for (std::size_t j = 0; j < registry.size(); ++j)
            if (has_class(classes_, registry[j]))
                to_eval[j] = class_index(classes_, registry[j]);

        Matrix scores = matmul(h_, beta);
        std::vector<std::size_t> hits(classes_.size(), 0);
        std::size_t total_hits = 0;
        for (std::size_t r = 0; r < scores.rows(); ++r) {
            std::size_t best = 0;
            for (std::size_t j = 1; j < scores.cols(); ++j)
                if (scores(r, j) > scores(r, best)) best = j;
            if (to_eval[best] == label_idx_[r]) {
                ++hits[label_idx_[r]];
                ++total_hits;
            }
        }
        Evaluation out;
        out.overall = static_cast<double>(total_hits) / static_cast<double>(scores.rows());
        out.per_class.resize(classes_.size());
        for (std::size_t c = 0; c < classes_.size(); ++c)
            out.per_class[c] = static_cast<double>(hits[c]) / static_cast<double>(totals_[c]);
        return out;
    }

private:
    Matrix h_;
    ClassList classes_;
    std::vector<std::size_t> label_idx_;
    std::vector<std::size_t> totals_;
};

struct CurvePoint {
    std::size_t samples;
    double overall;
    std::vector<double> per_class; // aligned to LearningCurve::classes
};

struct LearningCurve {
    ClassList classes;
    std::vector<CurvePoint> points;
};

struct RunOutcome {
    LearningCurve curve;
    std::vector<RecalibrationEvent> events;
    WeightReport weights;
    double final_accuracy = 0.0;
    std::size_t stream_length = 0;
    double learn_seconds = 0.0;
};

inline std::size_t resolve_init_block(const ExperimentConfig& config, const Schedule& schedule) {
    std::size_t n0 = config.init_block > 0 ? config.init_block : schedule.init_block;
    if (n0 < 1) throw ConfigError("initial block must be at least 1");
    if (n0 > schedule.phases.front().end)
        throw ConfigError("initial block " + std::to_string(n0) +
                          " extends past the first schedule phase");
    return n0;
}

/// Learn over one prepared train/test pair under a schedule. The curve gets
/// one point after the initial block and one after every chunk; its class
/// columns follow the model's final registry order, with test-only classes
/// (never seen in the stream) appended.
inline RunOutcome run_stream(const ExperimentConfig& config, const LabeledDataset& train,
                             const LabeledDataset& test, const Schedule& schedule,
                             std::uint64_t seed) {
    validate_config(config);
    std::vector<std::size_t> stream = build_stream(train, schedule, derive_seed(seed, kStreamSalt));
    std::size_t n0 = resolve_init_block(config, schedule);
    if (n0 > stream.size())
        throw InsufficientDataError("initial block " + std::to_string(n0) +
                                    " exceeds stream length " + std::to_string(stream.size()));

    RandomProjection projection(train.feature_count(), config.hidden, config.activation,
                                derive_seed(seed, kProjectionSalt));
    Evaluator evaluator(projection, test);

    using clock = std::chrono::steady_clock;
    double learn_seconds = 0.0;
    auto timed = [&learn_seconds](auto&& fn) {
        auto t0 = clock::now();
        fn();
        learn_seconds += std::chrono::duration<double>(clock::now() - t0).count();
    };

    auto [x0, y0] = make_chunk(train, stream, 0, n0);
    std::optional<ProgressiveModel> holder;
    timed([&] { holder = ProgressiveModel::init(projection, x0, y0); });
    ProgressiveModel& model = *holder;

    std::vector<Evaluation> evals;
    std::vector<std::size_t> counts;
    evals.push_back(evaluator.evaluate(model.state.beta, model.state.classes));
    counts.push_back(n0);

    for (std::size_t pos = n0; pos < stream.size(); pos += config.chunk) {
        std::size_t end = std::min(pos + config.chunk, stream.size());
        auto [x, y] = make_chunk(train, stream, pos, end);
        timed([&] { model.learn_chunk(x, y); });
        evals.push_back(evaluator.evaluate(model.state.beta, model.state.classes));
        counts.push_back(end);
    }

    // Final column order: registry first, then test-only classes.
    ClassList columns = model.state.classes;
    for (const auto& c : evaluator.classes())
        if (!has_class(columns, c)) columns.push_back(c);

    RunOutcome out;
    out.curve.classes = columns;
    out.curve.points.reserve(evals.size());
    const ClassList& eval_classes = evaluator.classes();
    for (std::size_t i = 0; i < evals.size(); ++i) {
        CurvePoint pt;
        pt.samples = counts[i];
        pt.overall = evals[i].overall;
        pt.per_class.reserve(columns.size());
        for (const auto& c : columns) {
            pt.per_class.push_back(has_class(eval_classes, c)
                                       ? evals[i].per_class[class_index(eval_classes, c)]
                                       : std::numeric_limits<double>::quiet_NaN());
        }
        out.curve.points.push_back(std::move(pt));
    }
    out.events = model.log;
    out.weights = model.weight_calc_report(model.state.classes.size());
    out.final_accuracy = evals.back().overall;
    out.stream_length = stream.size();
    out.learn_seconds = learn_seconds;
    return out;
}

/// Split, normalize on the training part, and apply the training ranges to
/// the held-out part.
inline std::pair<LabeledDataset, LabeledDataset> prepare_split(const LabeledDataset& ds,
                                                               double test_fraction,
                                                               std::uint64_t seed) {
    auto [train_raw, test_raw] = split(ds, test_fraction, derive_seed(seed, kSplitSalt));
    LabeledDataset train = normalize(train_raw);
    LabeledDataset test = apply_bounds(test_raw, train.feature_bounds);
    return {std::move(train), std::move(test)};
}

inline Schedule resolve_schedule(const ExperimentConfig& config, const LabeledDataset& train) {
    if (!config.schedule_path.empty()) return load_schedule(config.schedule_path);
    std::size_t fallback = std::max<std::size_t>(config.hidden, 30);
    std::size_t n0 = config.init_block > 0 ? config.init_block : fallback;
    return trivial_schedule(train.class_list(), train.size(), std::min(n0, train.size()));
}

inline RunOutcome run_learning_curve(const ExperimentConfig& config, const LabeledDataset& ds) {
    auto [train, test] = prepare_split(ds, config.test_fraction, config.seed);
    Schedule schedule = resolve_schedule(config, train);
    return run_stream(config, train, test, schedule, config.seed);
}

inline RunOutcome run_learning_curve(const ExperimentConfig& config) {
    validate_config(config);
    return run_learning_curve(config, load_csv(config.dataset_path, config.csv_options()));
}

inline double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

/// Sample standard deviation (n-1 in the denominator).
inline double stddev_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean_of(xs), s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

struct ConsistencyReport {
    std::vector<std::uint64_t> seeds;
    std::vector<double> finals;
    double mean = 0.0;
    double stddev = 0.0;
};

/// Repeat the whole pipeline (split, stream, projection) with seeds
/// seed, seed+1, ... and summarize the spread of final accuracy.
inline ConsistencyReport run_consistency(const ExperimentConfig& config) {
    validate_config(config);
    if (config.trials < 2) throw ConfigError("consistency needs at least 2 trials");
    LabeledDataset ds = load_csv(config.dataset_path, config.csv_options());
    ConsistencyReport report;
    for (std::size_t t = 0; t < config.trials; ++t) {
        std::uint64_t s = config.seed + t;
        auto [train, test] = prepare_split(ds, config.test_fraction, s);
        Schedule schedule = resolve_schedule(config, train);
        RunOutcome outcome = run_stream(config, train, test, schedule, s);
        report.seeds.push_back(s);
        report.finals.push_back(outcome.final_accuracy);
    }
    report.mean = mean_of(report.finals);
    report.stddev = stddev_of(report.finals);
    return report;
}

struct CrossvalReport {
    std::vector<double> fold_accuracy;
    double mean = 0.0;
    double stddev = 0.0;
};

/// Stratified k-fold cross-validation: each fold re-normalizes on its
/// training part and rebuilds the stream (the final schedule phase shrinks
/// to whatever the fold's pool holds).
inline CrossvalReport run_crossval(const ExperimentConfig& config) {
    validate_config(config);
    if (config.folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
    LabeledDataset ds = load_csv(config.dataset_path, config.csv_options());
    auto folds = kfold(ds, config.folds, derive_seed(config.seed, kFoldSalt));
    CrossvalReport report;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        LabeledDataset train = normalize(folds[f].first);
        LabeledDataset test = apply_bounds(folds[f].second, train.feature_bounds);
        Schedule schedule = resolve_schedule(config, train);
        RunOutcome outcome = run_stream(config, train, test, schedule, config.seed + f);
        report.fold_accuracy.push_back(outcome.final_accuracy);
    }
    report.mean = mean_of(report.fold_accuracy);
    report.stddev = stddev_of(report.fold_accuracy);
    return report;
}

/// Output-weight update work implied by a schedule, counted in
/// samples x output-neurons, without running any model: a learner sized for
/// the final class set from the start pays span x m_final, one that widens
/// per phase pays sum(len_p x m_p).
inline WeightReport reduction_from_schedule(const Schedule& schedule) {
    validate_schedule(schedule);
    std::uint64_t m_final = schedule.final_classes().size();
    std::uint64_t static_units = static_cast<std::uint64_t>(schedule.span()) * m_final;
    std::uint64_t progressive_units = 0;
    for (const Phase& phase : schedule.phases)
        progressive_units +=
            static_cast<std::uint64_t>(phase.length()) * phase.classes.size();
    WeightReport report;
    report.static_units = static_units;
    report.progressive_units = progressive_units;
    report.percent_saved =
        100.0 * (1.0 - static_cast<double>(progressive_units) / static_cast<double>(static_units));
    return report;
}

struct TimingPoint {
    std::size_t point;
    double final_accuracy;
    std::size_t event_count;
};

struct TimingReport {
    std::vector<TimingPoint> points;
};

/// Re-run the same data, split, and projection while moving the arrival
/// position of the schedule's final class set: does it matter *when* the
/// novelty shows up?
inline TimingReport run_timing(const ExperimentConfig& config,
                               const std::vector<std::size_t>& points) {
    validate_config(config);
    if (points.empty()) throw ConfigError("timing needs at least one introduction point");
    if (config.schedule_path.empty()) throw ConfigError("timing needs a schedule");
    LabeledDataset ds = load_csv(config.dataset_path, config.csv_options());
    auto [train, test] = prepare_split(ds, config.test_fraction, config.seed);
    Schedule proto = load_schedule(config.schedule_path);
    TimingReport report;
    for (std::size_t p : points) {
        Schedule moved = single_introduction(proto, p);
        RunOutcome outcome = run_stream(config, train, test, moved, config.seed);
        report.points.push_back({p, outcome.final_accuracy, outcome.events.size()});
    }
    return report;
}

} // namespace prolearn

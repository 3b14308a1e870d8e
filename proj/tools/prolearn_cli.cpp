// Command-line front end: learning curves, trial consistency, k-fold
// cross-validation, update-count reduction, and introduction-timing studies
// over CSV datasets with class-arrival schedules.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "prolearn/prolearn.hpp"

namespace {

struct CliState {
    prolearn::ExperimentConfig config;
    std::string activation = "sigmoid";
    std::string config_path;
    std::vector<std::size_t> points;
};

struct CommonOpts {
    CLI::Option* dataset = nullptr;
    CLI::Option* schedule = nullptr;
    CLI::Option* hidden = nullptr;
    CLI::Option* activation = nullptr;
    CLI::Option* chunk = nullptr;
    CLI::Option* init = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* trials = nullptr;
    CLI::Option* folds = nullptr;
    CLI::Option* test_fraction = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* header = nullptr;
    CLI::Option* label_column = nullptr;
    CLI::Option* points = nullptr;
};

CommonOpts add_common(CLI::App* sub, CliState& s) {
    CommonOpts o;
    o.dataset = sub->add_option("--dataset", s.config.dataset_path, "CSV dataset path");
    o.schedule = sub->add_option("--schedule", s.config.schedule_path,
                                 "class-arrival schedule (JSON)");
    o.hidden = sub->add_option("--hidden", s.config.hidden, "hidden neuron count");
    o.activation = sub->add_option("--activation", s.activation,
                                   "hidden activation: sigmoid|sine|hardlimit");
    o.chunk = sub->add_option("--chunk", s.config.chunk, "samples per learning step");
    o.init = sub->add_option("--init", s.config.init_block,
                             "initial block size (0 = schedule's value)");
    o.seed = sub->add_option("--seed", s.config.seed, "base seed");
    o.trials = sub->add_option("--trials", s.config.trials, "trial count (consistency)");
    o.folds = sub->add_option("--folds", s.config.folds, "fold count (crossval)");
    o.test_fraction =
        sub->add_option("--test-fraction", s.config.test_fraction, "held-out fraction");
    o.out = sub->add_option("--out", s.config.out_dir, "output directory");
    o.header = sub->add_flag("--header", s.config.csv_has_header,
                             "CSV has a header row to skip");
    o.label_column = sub->add_option("--label-column", s.config.label_column,
                                     "label column index (-1 = last)");
    o.points = sub->add_option("--points", s.points, "introduction points (timing)")
                   ->delimiter(',');
    sub->add_option("--config", s.config_path, "JSON config file; flags override its keys");
    return o;
}

// Fill in anything the command line left untouched from the config file.
void merge_config_file(CliState& s, const CommonOpts& o) {
    if (s.config_path.empty()) return;
    std::ifstream in(s.config_path);
    if (!in) throw prolearn::ConfigError("cannot open config file: " + s.config_path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw prolearn::ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    auto fill = [&doc](const char* key, CLI::Option* opt, auto& var) {
        using T = std::decay_t<decltype(var)>;
        if (opt->count() > 0 || !doc.contains(key)) return;
        try {
            var = doc.at(key).get<T>();
        } catch (const nlohmann::json::exception& e) {
            throw prolearn::ConfigError("config key '" + std::string(key) + "': " + e.what());
        }
    };
    fill("dataset", o.dataset, s.config.dataset_path);
    fill("schedule", o.schedule, s.config.schedule_path);
    fill("hidden", o.hidden, s.config.hidden);
    fill("activation", o.activation, s.activation);
    fill("chunk", o.chunk, s.config.chunk);
    fill("init", o.init, s.config.init_block);
    fill("seed", o.seed, s.config.seed);
    fill("trials", o.trials, s.config.trials);
    fill("folds", o.folds, s.config.folds);
    fill("test_fraction", o.test_fraction, s.config.test_fraction);
    fill("out", o.out, s.config.out_dir);
    fill("header", o.header, s.config.csv_has_header);
    fill("label_column", o.label_column, s.config.label_column);
    fill("points", o.points, s.points);
}

std::string ensure_outdir(const std::string& dir) {
    std::string base = dir.empty() ? std::string(".") : dir;
    std::error_code ec;
    std::filesystem::create_directories(base, ec);
    if (ec) throw prolearn::IoError("cannot create output directory " + base + ": " + ec.message());
    return base;
}

std::string basename_of(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

int run_curve(const CliState& s) {
    prolearn::LabeledDataset ds =
        prolearn::load_csv(s.config.dataset_path, s.config.csv_options());
    prolearn::RunOutcome outcome = prolearn::run_learning_curve(s.config, ds);
    std::string base = ensure_outdir(s.config.out_dir);
    prolearn::emit_outputs(outcome, ds.name, base);
    std::printf("curve: %zu stream samples, %zu recalibrations, final accuracy %s\n",
                outcome.stream_length, outcome.events.size(),
                prolearn::format_num(outcome.final_accuracy).c_str());
    std::printf("wrote %s/{curve.csv,events.csv,report.csv,curve.svg}\n", base.c_str());
    return 0;
}

int run_consistency_cmd(const CliState& s) {
    prolearn::ConsistencyReport report = prolearn::run_consistency(s.config);
    std::string base = ensure_outdir(s.config.out_dir);
    prolearn::write_consistency_report_csv(base + "/report.csv",
                                           basename_of(s.config.dataset_path), "consistency",
                                           report.finals, report.mean, report.stddev);
    std::printf("consistency: %zu trials, final accuracy %s +/- %s\n", report.finals.size(),
                prolearn::format_num(report.mean).c_str(),
                prolearn::format_num(report.stddev).c_str());
    std::printf("wrote %s/report.csv\n", base.c_str());
    return 0;
}

int run_crossval_cmd(const CliState& s) {
    prolearn::CrossvalReport report = prolearn::run_crossval(s.config);
    std::string base = ensure_outdir(s.config.out_dir);
    prolearn::write_consistency_report_csv(base + "/report.csv",
                                           basename_of(s.config.dataset_path), "crossval",
                                           report.fold_accuracy, report.mean, report.stddev);
    std::printf("crossval: %zu folds, final accuracy %s +/- %s\n", report.fold_accuracy.size(),
                prolearn::format_num(report.mean).c_str(),
                prolearn::format_num(report.stddev).c_str());
    std::printf("wrote %s/report.csv\n", base.c_str());
    return 0;
}

int run_reduce(const CliState& s) {
    if (s.config.schedule_path.empty())
        throw prolearn::ConfigError("reduce needs --schedule");
    prolearn::Schedule schedule = prolearn::load_schedule(s.config.schedule_path);
    prolearn::WeightReport report = prolearn::reduction_from_schedule(schedule);
    std::string base = ensure_outdir(s.config.out_dir);
    prolearn::write_reduction_report_csv(base + "/report.csv",
                                         basename_of(s.config.schedule_path), report);
    std::printf("reduce: %llu vs %llu output-weight updates, %.2f%% saved\n",
                static_cast<unsigned long long>(report.progressive_units),
                static_cast<unsigned long long>(report.static_units), report.percent_saved);
    std::printf("wrote %s/report.csv\n", base.c_str());
    return 0;
}

int run_timing_cmd(const CliState& s) {
    if (s.points.empty()) throw prolearn::ConfigError("timing needs --points");
    prolearn::TimingReport report = prolearn::run_timing(s.config, s.points);
    std::string base = ensure_outdir(s.config.out_dir);
    prolearn::write_timing_report_csv(base + "/report.csv", basename_of(s.config.dataset_path),
                                      report);
    for (const auto& pt : report.points)
        std::printf("timing: introduction at %zu -> final accuracy %s (%zu events)\n", pt.point,
                    prolearn::format_num(pt.final_accuracy).c_str(), pt.event_count);
    std::printf("wrote %s/report.csv\n", base.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"progressive stream learner with unseen-class recalibration"};
    app.require_subcommand(1);

    CliState s;
    CLI::App* curve = app.add_subcommand("curve", "stream once, chart accuracy over samples");
    CLI::App* consistency =
        app.add_subcommand("consistency", "repeat the run across seeds, report mean/std");
    CLI::App* crossval = app.add_subcommand("crossval", "stratified k-fold cross-validation");
    CLI::App* reduce =
        app.add_subcommand("reduce", "output-weight update accounting for a schedule");
    CLI::App* timing = app.add_subcommand("timing", "move the introduction point, compare finals");
    CommonOpts oc = add_common(curve, s);
    CommonOpts on = add_common(consistency, s);
    CommonOpts ox = add_common(crossval, s);
    CommonOpts orr = add_common(reduce, s);
    CommonOpts ot = add_common(timing, s);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        auto dispatch = [&s](const CommonOpts& o, int (*fn)(const CliState&)) {
            merge_config_file(s, o);
            s.config.activation = prolearn::parse_activation(s.activation);
            return fn(s);
        };
        if (curve->parsed()) return dispatch(oc, run_curve);
        if (consistency->parsed()) return dispatch(on, run_consistency_cmd);
        if (crossval->parsed()) return dispatch(ox, run_crossval_cmd);
        if (reduce->parsed()) return dispatch(orr, run_reduce);
        if (timing->parsed()) return dispatch(ot, run_timing_cmd);
        std::fprintf(stderr, "no subcommand given\n");
        return 2;
    } catch (const prolearn::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const prolearn::ScheduleError& e) {
        std::fprintf(stderr, "schedule error: %s\n", e.what());
        return 2;
    } catch (const prolearn::SingularError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 4;
    } catch (const prolearn::DimensionError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 4;
    } catch (const prolearn::Error& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "prolearn/experiment.hpp"
#include "prolearn/report.hpp"
#include "helpers.hpp"

using namespace prolearn;

namespace {

ExperimentConfig iris_config() {
    ExperimentConfig config;
    config.dataset_path = testutil::repo_path("data/iris_synth.csv");
    config.schedule_path = testutil::repo_path("data/schedules/iris.json");
    config.hidden = 20;
    config.chunk = 1;
    config.seed = 7;
    config.test_fraction = 0.2;
    return config;
}

// Fraction of test labels that belong to the given class set.
double coverage(const LabeledDataset& test, const ClassList& covered) {
    std::size_t in = 0;
    for (const auto& l : test.labels)
        if (has_class(covered, l)) ++in;
    return static_cast<double>(in) / static_cast<double>(test.size());
}

} // namespace

TEST_CASE("the scheduled iris run produces the plateau-then-rise curve") {
    ExperimentConfig config = iris_config();
    RunOutcome outcome = run_learning_curve(config);

    REQUIRE(outcome.events.size() == 1);
    CHECK(outcome.events[0].sample_index == 51);
    CHECK(outcome.events[0].added == ClassList{"virginica"});
    CHECK(outcome.stream_length == 150);

    SECTION("curve points are strictly increasing in samples, accuracies in [0,1]") {
        const auto& pts = outcome.curve.points;
        REQUIRE(!pts.empty());
        CHECK(pts.front().samples == 30); // the initial block
        for (std::size_t i = 1; i < pts.size(); ++i)
            CHECK(pts[i].samples > pts[i - 1].samples);
        for (const auto& pt : pts) {
            CHECK(pt.overall >= 0.0);
            CHECK(pt.overall <= 1.0);
            for (double v : pt.per_class)
                if (!std::isnan(v)) {
                    CHECK(v >= 0.0);
                    CHECK(v <= 1.0);
                }
        }
    }
    SECTION("before the new class arrives, accuracy is capped by test coverage") {
        LabeledDataset ds = load_csv(config.dataset_path);
        auto [train, test] = prepare_split(ds, config.test_fraction, config.seed);
        double ceiling = coverage(test, {"setosa", "versicolor"});
        for (const auto& pt : outcome.curve.points) {
            if (pt.samples >= outcome.events[0].sample_index) break;
            CHECK(pt.overall <= ceiling + 1e-12);
        }
        // The synthetic classes are cleanly separated, so the model should
        // actually sit at the ceiling rather than merely under it.
        CHECK(outcome.curve.points[5].overall == Catch::Approx(ceiling).margin(0.08));
    }
    SECTION("the final accuracy clears the plateau") {
        CHECK(outcome.final_accuracy > 0.9);
    }
    SECTION("weight accounting matches the schedule's closed form") {
        Schedule schedule = load_schedule(config.schedule_path);
        WeightReport closed = reduction_from_schedule(schedule);
        CHECK(outcome.weights.static_units == closed.static_units);        // 450
        CHECK(outcome.weights.progressive_units == closed.progressive_units); // 400
        CHECK(outcome.weights.static_units == 450);
        CHECK(outcome.weights.progressive_units == 400);
        CHECK(outcome.weights.percent_saved == closed.percent_saved);
    }
}

TEST_CASE("without a schedule no recalibration ever fires") {
    ExperimentConfig config = iris_config();
    config.schedule_path.clear();
    RunOutcome outcome = run_learning_curve(config);
    CHECK(outcome.events.empty());
    CHECK(outcome.weights.percent_saved == 0.0);
    CHECK(outcome.final_accuracy > 0.9);
}

TEST_CASE("consistency study repeats the pipeline over consecutive seeds") {
    ExperimentConfig config = iris_config();
    config.trials = 5;

    ConsistencyReport report = run_consistency(config);
    REQUIRE(report.finals.size() == 5);
    REQUIRE(report.seeds == std::vector<std::uint64_t>{7, 8, 9, 10, 11});
    CHECK(report.mean >= 0.0);
    CHECK(report.mean <= 1.0);
    CHECK(report.stddev >= 0.0);
    for (double v : report.finals) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }

    SECTION("the study is deterministic") {
        ConsistencyReport again = run_consistency(config);
        CHECK(again.finals == report.finals);
        CHECK(again.mean == report.mean);
        CHECK(again.stddev == report.stddev);
    }
    SECTION("single-trial studies are rejected") {
        config.trials = 1;
        CHECK_THROWS_AS(run_consistency(config), ConfigError);
    }
}

TEST_CASE("cross-validation averages fold accuracies") {
    ExperimentConfig config = iris_config();
    config.schedule_path.clear(); // folds shrink the pool; let phases adapt
    config.folds = 5;

    CrossvalReport report = run_crossval(config);
    REQUIRE(report.fold_accuracy.size() == 5);
    for (double v : report.fold_accuracy) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(report.mean > 0.8); // cleanly separated synthetic classes

    SECTION("one fold is not cross-validation") {
        config.folds = 1;
        CHECK_THROWS_AS(run_crossval(config), ConfigError);
    }
}

TEST_CASE("leave-one-out cross-validation runs on a tiny dataset") {
    // 30 rows, 3 well-separated classes; k = N gives one-sample test folds.
    std::string body;
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 10; ++i)
            body += std::to_string(3.0 * c + 0.05 * i) + "," +
                    std::to_string(2.0 * c + 0.03 * i) + ",k" + std::to_string(c) + "\n";
    std::string path = testutil::write_temp("plt_loo.csv", body);

    ExperimentConfig config;
    config.dataset_path = path;
    config.hidden = 5;
    config.chunk = 1;
    config.seed = 3;
    config.folds = 30;

    CrossvalReport report = run_crossval(config);
    REQUIRE(report.fold_accuracy.size() == 30);
    for (double v : report.fold_accuracy) CHECK((v == 0.0 || v == 1.0));
    CHECK(report.mean >= 0.0);
    CHECK(report.mean <= 1.0);
}

TEST_CASE("schedule-implied weight accounting reproduces the published rows") {
    SECTION("iris") {
        WeightReport r =
            reduction_from_schedule(load_schedule(testutil::repo_path("data/schedules/iris.json")));
        CHECK(r.static_units == 450);
        CHECK(r.progressive_units == 400);
        CHECK(r.percent_saved == Catch::Approx(11.11).margin(0.005));
    }
    SECTION("digit") {
        WeightReport r =
            reduction_from_schedule(load_schedule(testutil::repo_path("data/schedules/digit.json")));
        CHECK(r.static_units == 40000);
        CHECK(r.progressive_units == 37000);
        CHECK(r.percent_saved == Catch::Approx(7.50).margin(0.005));
    }
    SECTION("single-phase schedule saves nothing") {
        WeightReport r = reduction_from_schedule(trivial_schedule({"a", "b"}, 100, 30));
        CHECK(r.percent_saved == 0.0);
        CHECK(r.static_units == r.progressive_units);
    }
}

TEST_CASE("moving the introduction point leaves the steady state alone") {
    ExperimentConfig config = iris_config();
    TimingReport report = run_timing(config, {6, 71, 131});
    REQUIRE(report.points.size() == 3);

    SECTION("final accuracies agree within 3 percentage points") {
        double lo = report.points[0].final_accuracy, hi = lo;
        for (const auto& pt : report.points) {
            lo = std::min(lo, pt.final_accuracy);
            hi = std::max(hi, pt.final_accuracy);
        }
        CHECK(hi - lo <= 0.03);
    }
    SECTION("a point inside the initial block needs no recalibration") {
        CHECK(report.points[0].point == 6);
        CHECK(report.points[0].event_count == 0);
        CHECK(report.points[1].event_count == 1);
        CHECK(report.points[2].event_count == 1);
    }
    SECTION("point 1 is rejected: the initial block precedes streaming") {
        CHECK_THROWS_AS(run_timing(config, {1}), ScheduleError);
    }
    SECTION("a single mid-stream point equals the equivalent curve run") {
        TimingReport single = run_timing(config, {71});
        LabeledDataset ds = load_csv(config.dataset_path);
        auto [train, test] = prepare_split(ds, config.test_fraction, config.seed);
        Schedule moved =
            single_introduction(load_schedule(config.schedule_path), 71);
        RunOutcome manual = run_stream(config, train, test, moved, config.seed);
        CHECK(single.points[0].final_accuracy == manual.final_accuracy);
        CHECK(single.points[0].event_count == manual.events.size());
    }
    SECTION("an empty point list is a config error") {
        CHECK_THROWS_AS(run_timing(config, {}), ConfigError);
    }
}

TEST_CASE("emit_outputs writes the full artifact set") {
    ExperimentConfig config = iris_config();
    RunOutcome outcome = run_learning_curve(config);

    std::string dir = testutil::temp_path("plt_emit_out");
    std::filesystem::create_directories(dir);
    emit_outputs(outcome, "iris_synth", dir);

    SECTION("curve.csv has a header plus one row per point") {
        std::string text = testutil::slurp(dir + "/curve.csv");
        std::size_t lines = 0;
        for (char ch : text)
            if (ch == '\n') ++lines;
        CHECK(lines == outcome.curve.points.size() + 1);
        CHECK(text.rfind("samples,overall,", 0) == 0);
    }
    SECTION("per-class columns follow registry order") {
        std::string text = testutil::slurp(dir + "/curve.csv");
        std::string header = text.substr(0, text.find('\n'));
        CHECK(header == "samples,overall,setosa,versicolor,virginica");
    }
    SECTION("events.csv lists the single recalibration") {
        std::string text = testutil::slurp(dir + "/events.csv");
        CHECK(text == "sample,added,count\n51,virginica,1\n");
    }
    SECTION("an empty log leaves only the events header") {
        ExperimentConfig flat = iris_config();
        flat.schedule_path.clear();
        RunOutcome quiet = run_learning_curve(flat);
        std::string dir2 = testutil::temp_path("plt_emit_quiet");
        std::filesystem::create_directories(dir2);
        emit_outputs(quiet, "iris_synth", dir2);
        CHECK(testutil::slurp(dir2 + "/events.csv") == "sample,added,count\n");
    }
    SECTION("the chart is a self-contained svg") {
        std::string svg = testutil::slurp(dir + "/curve.svg");
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("polyline") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
    }
    SECTION("writing twice is byte-identical") {
        std::string dir3 = testutil::temp_path("plt_emit_again");
        std::filesystem::create_directories(dir3);
        emit_outputs(outcome, "iris_synth", dir3);
        CHECK(testutil::slurp(dir + "/curve.csv") == testutil::slurp(dir3 + "/curve.csv"));
        CHECK(testutil::slurp(dir + "/events.csv") == testutil::slurp(dir3 + "/events.csv"));
        CHECK(testutil::slurp(dir + "/report.csv") == testutil::slurp(dir3 + "/report.csv"));
        CHECK(testutil::slurp(dir + "/curve.svg") == testutil::slurp(dir3 + "/curve.svg"));
    }
}

TEST_CASE("config validation and init-block overrides") {
    ExperimentConfig config = iris_config();

    SECTION("missing dataset path") {
        config.dataset_path.clear();
        CHECK_THROWS_AS(run_learning_curve(config), ConfigError);
    }
    SECTION("zero chunk size") {
        config.chunk = 0;
        CHECK_THROWS_AS(run_learning_curve(config), ConfigError);
    }
    SECTION("init block override larger than the first phase") {
        config.init_block = 60; // first phase ends at 50
        CHECK_THROWS_AS(run_learning_curve(config), ConfigError);
    }
    SECTION("a valid override moves the first curve point") {
        config.init_block = 40;
        RunOutcome outcome = run_learning_curve(config);
        CHECK(outcome.curve.points.front().samples == 40);
    }
}

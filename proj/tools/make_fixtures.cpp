// Regenerates the bundled synthetic fixtures: two datasets (a 3-class
// iris-like table and a 5-class character-like table), the class-arrival
// schedules used by the experiment suite, and the config files that tie them
// together. Deterministic: fixed seeds, fixed formatting, byte-stable output.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "prolearn/errors.hpp"
#include "prolearn/random.hpp"

namespace {

double gauss(std::mt19937_64& rng) {
    double u1;
    do {
        u1 = prolearn::uniform01(rng);
    } while (u1 <= 0.0);
    double u2 = prolearn::uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw prolearn::IoError("cannot write " + path);
    return out;
}

// Three Gaussian clusters in 4-d, loosely shaped like the classic flower
// measurements: two classes well separated, the third close to the second.
void write_iris(const std::string& path) {
    struct Spec {
        const char* label;
        double mean[4];
        double sd[4];
    };
    const Spec specs[3] = {
        {"setosa", {5.0, 3.4, 1.5, 0.25}, {0.30, 0.30, 0.20, 0.10}},
        {"versicolor", {5.9, 2.8, 4.3, 1.30}, {0.30, 0.25, 0.35, 0.15}},
        {"virginica", {6.6, 3.0, 5.6, 2.00}, {0.35, 0.25, 0.40, 0.20}},
    };
    std::mt19937_64 rng(1729);
    std::ofstream out = open_out(path);
    char buf[32];
    for (const Spec& spec : specs) {
        for (int i = 0; i < 90; ++i) {
            for (int j = 0; j < 4; ++j) {
                double v = spec.mean[j] + spec.sd[j] * gauss(rng);
                if (v < 0.05) v = 0.05; // measurements stay positive
                std::snprintf(buf, sizeof buf, "%.3f", v);
                out << buf << ',';
            }
            out << spec.label << '\n';
        }
    }
}

// Five Gaussian clusters in 17-d. Class centres are +/-1.5 sign patterns
// with pairwise Hamming distance >= 7, so the classes are well separated
// relative to the 0.55 within-class spread.
void write_chars(const std::string& path) {
    const char* patterns[5] = {
        "00000000000000000",
        "11111111000000000",
        "00000000111111110",
        "11110000111100001",
        "10101010101010101",
    };
    const char* labels = "ABCDE";
    std::mt19937_64 rng(2873);
    std::ofstream out = open_out(path);
    char buf[32];
    for (int c = 0; c < 5; ++c) {
        for (int i = 0; i < 1000; ++i) {
            for (int j = 0; j < 17; ++j) {
                double mean = patterns[c][j] == '1' ? -1.5 : 1.5;
                double v = mean + 0.55 * gauss(rng);
                std::snprintf(buf, sizeof buf, "%.3f", v);
                out << buf << ',';
            }
            out << labels[c] << '\n';
        }
    }
}

struct PhaseSpec {
    std::size_t start, end;
    std::vector<std::string> classes;
};

void write_schedule(const std::string& path, std::size_t init_block,
                    const std::vector<PhaseSpec>& phases) {
    std::ofstream out = open_out(path);
    out << "{\n  \"init_block\": " << init_block << ",\n  \"phases\": [\n";
    for (std::size_t p = 0; p < phases.size(); ++p) {
        out << "    {\"start\": " << phases[p].start << ", \"end\": " << phases[p].end
            << ", \"classes\": [";
        for (std::size_t i = 0; i < phases[p].classes.size(); ++i) {
            if (i) out << ", ";
            out << '"' << phases[p].classes[i] << '"';
        }
        out << "]}" << (p + 1 < phases.size() ? "," : "") << '\n';
    }
    out << "  ]\n}\n";
}

void write_text(const std::string& path, const std::string& text) {
    open_out(path) << text;
}

} // namespace

int main(int argc, char** argv) {
    std::string base = argc > 1 ? argv[1] : "data";
    std::error_code ec;
    std::filesystem::create_directories(base + "/schedules", ec);
    std::filesystem::create_directories(base + "/configs", ec);

    write_iris(base + "/iris_synth.csv");
    write_chars(base + "/chars5.csv");

    // Two-class start, third class arriving mid-stream (iris-like pacing).
    write_schedule(base + "/schedules/iris.json", 30,
                   {{1, 50, {"setosa", "versicolor"}},
                    {51, 150, {"setosa", "versicolor", "virginica"}}});
    write_schedule(base + "/schedules/waveform.json", 60,
                   {{1, 1500, {"waveform_1", "waveform_2"}},
                    {1501, 3000, {"waveform_1", "waveform_2", "waveform_3"}}});
    write_schedule(base + "/schedules/balance.json", 30,
                   {{1, 350, {"left", "right"}},
                    {351, 1100, {"left", "right", "balanced"}}});
    write_schedule(base + "/schedules/wine.json", 30,
                   {{1, 70, {"wine_1", "wine_2"}},
                    {71, 120, {"wine_1", "wine_2", "wine_3"}}});
    write_schedule(base + "/schedules/satellite.json", 30,
                   {{1, 3000, {"sat_1", "sat_2", "sat_3", "sat_4", "sat_5"}},
                    {3001, 4500, {"sat_1", "sat_2", "sat_3", "sat_4", "sat_5", "sat_6"}}});
    write_schedule(base + "/schedules/digit.json", 30,
                   {{1, 3000,
                     {"digit_0", "digit_1", "digit_2", "digit_3", "digit_4", "digit_5",
                      "digit_6", "digit_7", "digit_8"}},
                    {3001, 4000,
                     {"digit_0", "digit_1", "digit_2", "digit_3", "digit_4", "digit_5",
                      "digit_6", "digit_7", "digit_8", "digit_9"}}});

    // Character-stream studies: two sequential arrivals; three sequential
    // arrivals; and a simultaneous pair followed by one more.
    write_schedule(base + "/schedules/chars_seq2.json", 100,
                   {{1, 800, {"A", "B"}},
                    {801, 1600, {"A", "B", "C"}},
                    {1601, 3096, {"A", "B", "C", "D"}}});
    write_schedule(base + "/schedules/chars_seq3.json", 100,
                   {{1, 800, {"A", "B"}},
                    {801, 1600, {"A", "B", "C"}},
                    {1601, 2000, {"A", "B", "C", "D"}},
                    {2001, 3850, {"A", "B", "C", "D", "E"}}});
    write_schedule(base + "/schedules/chars_simul.json", 100,
                   {{1, 800, {"A", "B"}},
                    {801, 2000, {"A", "B", "C", "D"}},
                    {2001, 3850, {"A", "B", "C", "D", "E"}}});

    write_text(base + "/configs/iris_curve.json",
               "{\n"
               "  \"dataset\": \"data/iris_synth.csv\",\n"
               "  \"schedule\": \"data/schedules/iris.json\",\n"
               "  \"hidden\": 20,\n"
               "  \"activation\": \"sigmoid\",\n"
               "  \"chunk\": 1,\n"
               "  \"seed\": 7,\n"
               "  \"trials\": 10,\n"
               "  \"test_fraction\": 0.2\n"
               "}\n");
    write_text(base + "/configs/iris_timing.json",
               "{\n"
               "  \"dataset\": \"data/iris_synth.csv\",\n"
               "  \"schedule\": \"data/schedules/iris.json\",\n"
               "  \"hidden\": 20,\n"
               "  \"activation\": \"sigmoid\",\n"
               "  \"chunk\": 1,\n"
               "  \"seed\": 7,\n"
               "  \"points\": [6, 71, 131]\n"
               "}\n");
    write_text(base + "/configs/chars_seq3.json",
               "{\n"
               "  \"dataset\": \"data/chars5.csv\",\n"
               "  \"schedule\": \"data/schedules/chars_seq3.json\",\n"
               "  \"hidden\": 40,\n"
               "  \"activation\": \"sigmoid\",\n"
               "  \"chunk\": 50,\n"
               "  \"seed\": 7,\n"
               "  \"test_fraction\": 0.2\n"
               "}\n");
    write_text(base + "/configs/chars_simul.json",
               "{\n"
               "  \"dataset\": \"data/chars5.csv\",\n"
               "  \"schedule\": \"data/schedules/chars_simul.json\",\n"
               "  \"hidden\": 40,\n"
               "  \"activation\": \"sigmoid\",\n"
               "  \"chunk\": 50,\n"
               "  \"seed\": 7,\n"
               "  \"test_fraction\": 0.2\n"
               "}\n");

    std::printf("fixtures written under %s/\n", base.c_str());
    return 0;
}

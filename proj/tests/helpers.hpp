#pragma once

// Shared scaffolding for the unit suites: random fixtures, tiny labeled
// datasets, and paths into the bundled data/ directory.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "prolearn/matrix.hpp"
#include "prolearn/random.hpp"

namespace testutil {

inline prolearn::Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    prolearn::Matrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = prolearn::uniform_sym(rng);
    return out;
}

inline std::vector<std::vector<double>> random_rows(std::size_t n, std::size_t dim,
                                                    std::mt19937_64& rng) {
    std::vector<std::vector<double>> out(n, std::vector<double>(dim));
    for (auto& row : out)
        for (double& v : row) v = prolearn::uniform_sym(rng);
    return out;
}

// N random feature rows with labels cycling through the given classes, so
// every class shows up within the first `classes.size()` samples.
struct TinyData {
    std::vector<std::vector<double>> xs;
    std::vector<std::string> labels;
};

inline TinyData make_labeled(std::size_t n, std::size_t dim,
                             const std::vector<std::string>& classes, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    TinyData data;
    data.xs = random_rows(n, dim, rng);
    data.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) data.labels.push_back(classes[i % classes.size()]);
    return data;
}

inline std::string repo_path(const std::string& rel) {
    return std::string(PROLEARN_REPO_DIR) + "/" + rel;
}

inline std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

inline std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = temp_path(name);
    std::ofstream out(path);
    out << content;
    return path;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace testutil

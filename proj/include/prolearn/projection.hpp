#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prolearn/errors.hpp"
#include "prolearn/matrix.hpp"
#include "prolearn/random.hpp"

namespace prolearn {

enum class Activation { Sigmoid, Sine, HardLimit };

inline double activate(Activation kind, double z) {
    switch (kind) {
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
        case Activation::Sine: return std::sin(z);
        case Activation::HardLimit: return z >= 0.0 ? 1.0 : 0.0;
    }
    return 0.0;
}

inline const char* activation_name(Activation kind) {
    switch (kind) {
        case Activation::Sigmoid: return "sigmoid";
        case Activation::Sine: return "sine";
        case Activation::HardLimit: return "hardlimit";
    }
    return "?";
}

inline Activation parse_activation(const std::string& name) {
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "sine") return Activation::Sine;
    if (name == "hardlimit") return Activation::HardLimit;
    throw ConfigError("unknown activation '" + name + "'");
}

/// The frozen hidden layer: random input weights and biases drawn once,
/// never trained. Only the output weights downstream of it ever change.
///
/// Entries are i.i.d. uniform on [-1, 1] from mt19937_64(seed); the draw
/// order is the weight matrix row by row, then the biases.
class RandomProjection {
public:
    RandomProjection(std::size_t input_dim, std::size_t hidden_count, Activation activation,
                     std::uint64_t seed)
        : input_dim_(input_dim),
          hidden_count_(hidden_count),
          activation_(activation),
          seed_(seed),
          weights_(checked_dims(input_dim, hidden_count), input_dim) {
        std::mt19937_64 rng(seed);
        for (std::size_t i = 0; i < hidden_count_; ++i)
            for (std::size_t j = 0; j < input_dim_; ++j) weights_(i, j) = uniform_sym(rng);
        biases_.reserve(hidden_count_);
        for (std::size_t i = 0; i < hidden_count_; ++i) biases_.push_back(uniform_sym(rng));
    }

    /// Explicit weights and biases (one bias per hidden neuron).
    RandomProjection(Matrix weights, std::vector<double> biases, Activation activation)
        : input_dim_(weights.cols()),
          hidden_count_(weights.rows()),
          activation_(activation),
          seed_(0),
          weights_(std::move(weights)),
          biases_(std::move(biases)) {
        if (biases_.size() != hidden_count_)
            throw DimensionError("bias count does not match hidden neuron count");
    }

    std::size_t input_dim() const { return input_dim_; }
    std::size_t hidden_count() const { return hidden_count_; }
    Activation activation() const { return activation_; }
    std::uint64_t seed() const { return seed_; }
    const Matrix& weights() const { return weights_; }
    const std::vector<double>& biases() const { return biases_; }

    /// One sample's hidden activations as a 1 x P row.
    Matrix hidden_row(std::span<const double> x) const {
        if (x.size() != input_dim_)
            throw DimensionError("input length " + std::to_string(x.size()) +
                                 " does not match input_dim " + std::to_string(input_dim_));
        Matrix out(1, hidden_count_);
        fill_hidden(x, out.row(0));
        return out;
    }

    Matrix hidden_matrix(const std::vector<std::vector<double>>& xs) const {
        return hidden_matrix(rows_to_matrix(xs));
    }

    /// Hidden activations for a batch, one row per sample: b x P.
    Matrix hidden_matrix(const Matrix& xs) const {
        if (xs.cols() != input_dim_)
            throw DimensionError("feature width " + std::to_string(xs.cols()) +
                                 " does not match input_dim " + std::to_string(input_dim_));
        Matrix out(xs.rows(), hidden_count_);
        for (std::size_t i = 0; i < xs.rows(); ++i) fill_hidden(xs.row(i), out.row(i));
        return out;
    }

private:
    static std::size_t checked_dims(std::size_t n, std::size_t p) {
        if (n == 0 || p == 0) throw DimensionError("projection dimensions must be positive");
        return p;
    }

    void fill_hidden(std::span<const double> x, std::span<double> out) const {
        for (std::size_t j = 0; j < hidden_count_; ++j) {
            double z = biases_[j];
            for (std::size_t k = 0; k < input_dim_; ++k) z += weights_(j, k) * x[k];
            out[j] = activate(activation_, z);
        }
    }

    std::size_t input_dim_;
    std::size_t hidden_count_;
    Activation activation_;
    std::uint64_t seed_;
    Matrix weights_;
    std::vector<double> biases_;
};

inline RandomProjection init_projection(std::size_t input_dim, std::size_t hidden_count,
                                        Activation activation, std::uint64_t seed) {
    return RandomProjection(input_dim, hidden_count, activation, seed);
}

} // namespace prolearn

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prolearn/errors.hpp"

namespace prolearn {

/// Dense row-major matrix of doubles. The single carrier for hidden-layer
/// outputs, output weights, covariance state and target encodings.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
        if (rows == 0 || cols == 0)
            throw DimensionError("matrix dimensions must be positive, got " + shape_str(rows, cols));
    }

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (rows == 0 || cols == 0)
            throw DimensionError("matrix dimensions must be positive, got " + shape_str(rows, cols));
        if (data_.size() != rows * cols)
            throw DimensionError("data length " + std::to_string(data_.size()) +
                                 " does not match shape " + shape_str(rows, cols));
        for (double v : data_)
            if (!std::isfinite(v))
                throw DimensionError("non-finite entry in matrix data");
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.begin()->size() : 0;
        std::vector<double> flat;
        flat.reserve(r * c);
        for (const auto& row : rows) {
            if (row.size() != c)
                throw DimensionError("ragged row in matrix literal");
            for (double v : row) flat.push_back(v);
        }
        return Matrix(r, c, std::move(flat));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }

    const std::vector<double>& data() const { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    static std::string shape_str(std::size_t r, std::size_t c) {
        return std::to_string(r) + "x" + std::to_string(c);
    }
    std::string shape_str() const { return shape_str(rows_, cols_); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Assemble sample rows into a matrix. Empty input is rejected here so the
/// batch APIs built on top of it inherit one consistent error.
inline Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw EmptyChunkError("no rows to assemble");
    std::size_t c = rows.front().size();
    Matrix out(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c)
            throw DimensionError("ragged row " + std::to_string(i) + ": expected width " +
                                 std::to_string(c) + ", got " + std::to_string(rows[i].size()));
        for (std::size_t j = 0; j < c; ++j) out(i, j) = rows[i][j];
    }
    return out;
}

inline Matrix zeros(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
}

inline Matrix ones(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = 1.0;
    return m;
}

inline Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

/// Square identity right-padded with zero columns. Multiplying a P x rows
/// matrix by it reproduces that matrix with cols-rows zero columns appended.
inline Matrix rect_identity(std::size_t rows, std::size_t cols) {
    if (cols < rows)
        throw DimensionError("rect_identity needs cols >= rows, got " + Matrix::shape_str(rows, cols));
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) m(i, i) = 1.0;
    return m;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul shape mismatch: " + a.shape_str() + " * " + b.shape_str());
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

inline Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = a(i, j);
    return out;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b))
        throw DimensionError("add shape mismatch: " + a.shape_str() + " vs " + b.shape_str());
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) += b(i, j);
    return out;
}

inline Matrix subtract(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b))
        throw DimensionError("subtract shape mismatch: " + a.shape_str() + " vs " + b.shape_str());
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) -= b(i, j);
    return out;
}

inline Matrix scale(const Matrix& a, double s) {
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) *= s;
    return out;
}

/// Horizontal concatenation [a | b].
inline Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw DimensionError("hconcat row mismatch: " + a.shape_str() + " vs " + b.shape_str());
    Matrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

/// Vertical concatenation [a ; b].
inline Matrix vconcat(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw DimensionError("vconcat col mismatch: " + a.shape_str() + " vs " + b.shape_str());
    Matrix out(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
    return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b))
        throw DimensionError("max_abs_diff shape mismatch: " + a.shape_str() + " vs " + b.shape_str());
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

inline double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

namespace detail {
constexpr double kPivotFloor = 1e-12;
}

/// Gauss-Jordan inversion with partial pivoting. A pivot magnitude under
/// 1e-12 aborts with SingularError.
inline Matrix invert(const Matrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("invert needs a square matrix, got " + a.shape_str());
    const std::size_t n = a.rows();
    Matrix work = a;
    Matrix inv = identity(n);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(work(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = std::abs(work(r, col));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < detail::kPivotFloor)
            throw SingularError("pivot " + std::to_string(best) + " below threshold at column " +
                                std::to_string(col));
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(col, j), work(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        double d = work(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            work(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double f = work(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= f * work(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    for (double v : inv.data())
        if (!std::isfinite(v))
            throw SingularError("inversion produced non-finite entries");
    return inv;
}

/// Left pseudo-inverse via normal equations: (H^T H)^-1 H^T. Requires
/// rows >= cols and full column rank; rank deficiency surfaces as
/// SingularError from the inner inversion.
inline Matrix pseudo_inverse(const Matrix& h) {
    Matrix ht = transpose(h);
    Matrix gram = matmul(ht, h);
    return matmul(invert(gram), ht);
}

} // namespace prolearn

#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twoproj {

// ============================================================================
// Error taxonomy
// ============================================================================
//
// CLI exit-code contract: ShapeError / ValidationError / ParameterError /
// RankError / DomainError map to "validation" failures; ConvergenceError /
// ClassificationError / DegeneracyError map to "numerical classification"
// failures.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Incompatible matrix dimensions.
struct ShapeError : Error {
    using Error::Error;
};

/// Input fails a documented precondition (asymmetry, non-projection, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// Scalar argument outside its documented range.
struct ParameterError : Error {
    using Error::Error;
};

/// Numerically rank-deficient input where independent columns are required.
struct RankError : Error {
    using Error::Error;
};

/// Scalar argument outside the mathematical domain of the map.
struct DomainError : Error {
    using Error::Error;
};

/// Iteration failed to reach its tolerance; carries the final residual.
struct ConvergenceError : Error {
    double residual;
    ConvergenceError(const std::string& msg, double res)
        : Error(msg), residual(res) {}
};

/// Eigenvalue classification produced inconsistent subspace dimensions.
struct ClassificationError : Error {
    using Error::Error;
};

/// A quantity that must be orthogonal/unitary failed its residual check.
struct DegeneracyError : Error {
    using Error::Error;
};

// ============================================================================
// Matrix
// ============================================================================

/**
 * Dense real matrix, row-major storage.
 *
 * Zero-width shapes (0 rows and/or 0 columns) are legal and behave as the
 * empty operator; block bookkeeping elsewhere relies on this.
 */
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw ShapeError("entry count " + std::to_string(data_.size()) +
                             " does not match shape " + shape_string(rows_, cols_));
        }
    }

    /// Row-of-rows construction, mainly for tests and small literals.
    Matrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                throw ShapeError("ragged initializer rows");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    [[nodiscard]] static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] const std::vector<double>& data() const { return data_; }

    [[nodiscard]] bool all_finite() const {
        for (double x : data_) {
            if (!std::isfinite(x)) return false;
        }
        return true;
    }

    [[nodiscard]] Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    [[nodiscard]] double trace() const {
        const std::size_t k = rows_ < cols_ ? rows_ : cols_;
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) s += (*this)(i, i);
        return s;
    }

    [[nodiscard]] double frobenius_norm() const {
        double s = 0.0;
        for (double x : data_) s += x * x;
        return std::sqrt(s);
    }

    /// Copy of the sub-block starting at (r0, c0) with the given extent.
    [[nodiscard]] Matrix block(std::size_t r0, std::size_t c0,
                               std::size_t nrows, std::size_t ncols) const {
        if (r0 + nrows > rows_ || c0 + ncols > cols_) {
            throw ShapeError("block exceeds matrix extent");
        }
        Matrix b(nrows, ncols);
        for (std::size_t i = 0; i < nrows; ++i)
            for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) {
            throw ShapeError("block exceeds matrix extent");
        }
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    [[nodiscard]] Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

    static std::string shape_string(std::size_t r, std::size_t c) {
        return std::to_string(r) + "x" + std::to_string(c);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// ============================================================================
// Arithmetic
// ============================================================================

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("cannot multiply " + Matrix::shape_string(a.rows(), a.cols()) +
                         " by " + Matrix::shape_string(b.rows(), b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("shape mismatch in addition");
    }
    Matrix c = a;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("shape mismatch in subtraction");
    }
    Matrix c = a;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

inline Matrix operator*(double s, const Matrix& a) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) *= s;
    return c;
}

/// Explicit name for the product, used where the operator form reads poorly.
inline Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }

/// (a + aᵀ)/2. Products that are symmetric in exact arithmetic get
/// symmetrized before eigendecomposition so rounding noise cannot trip the
/// relative asymmetry check on near-zero matrices.
inline Matrix symmetrized(const Matrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("symmetrized requires a square matrix");
    Matrix s = a;
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = i + 1; j < s.cols(); ++j) {
            const double v = 0.5 * (s(i, j) + s(j, i));
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

/// Columns of `a` followed by columns of `b`; both must share a row count.
inline Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw ShapeError("hconcat row mismatch");
    Matrix c(a.rows(), a.cols() + b.cols());
    c.set_block(0, 0, a);
    c.set_block(0, a.cols(), b);
    return c;
}

inline double symmetry_residual(const Matrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("symmetry residual requires a square matrix");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const double d = a(i, j) - a(j, i);
            s += 2.0 * d * d;
        }
    return std::sqrt(s);
}

}  // namespace twoproj

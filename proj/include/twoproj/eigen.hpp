#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "twoproj/matrix.hpp"

namespace twoproj {

/**
 * Eigendecomposition of a symmetric matrix.
 *
 * `values` is sorted ascending; column i of `vectors` is an orthonormal
 * eigenvector for values[i]. Ties keep the order of the original diagonal
 * positions.
 */
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
};

namespace detail {

inline double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace detail

/**
 * Symmetric eigensolver: cyclic Jacobi rotations.
 *
 * Sweeps row-cyclically over all (p, q) pivots until the off-diagonal
 * Frobenius norm drops below tol * ||a||_F (hard cap 100 sweeps, which at
 * the dimensions this library targets is never approached). Jacobi is
 * unconditionally stable on symmetric input and yields orthogonal
 * eigenvectors without deflation.
 *
 * Throws ShapeError for non-square input, ValidationError when the relative
 * asymmetry exceeds 1e-10, ConvergenceError (with the final residual) if the
 * sweep cap is hit.
 */
inline EigenDecomposition sym_eigen(const Matrix& a, double tol = 1e-12) {
    if (a.rows() != a.cols()) {
        throw ShapeError("sym_eigen requires a square matrix, got " +
                         Matrix::shape_string(a.rows(), a.cols()));
    }
    const std::size_t n = a.rows();
    const double anorm = a.frobenius_norm();
    if (symmetry_residual(a) > 1e-10 * anorm) {
        throw ValidationError("sym_eigen input is not symmetric (relative residual " +
                              std::to_string(symmetry_residual(a) / anorm) + ")");
    }

    Matrix d = a;
    Matrix v = Matrix::identity(n);
    const double stop = tol * anorm;

    bool converged = n < 2 || anorm == 0.0;
    double off = converged ? 0.0 : detail::off_diagonal_norm(d);
    for (int sweep = 0; !converged && sweep < 100; ++sweep) {
        if (off <= stop) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = d(p, q);
                if (apq == 0.0) continue;
                const double theta = (d(q, q) - d(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const double dpp = d(p, p);
                const double dqq = d(q, q);
                d(p, p) = c * c * dpp - 2.0 * s * c * apq + s * s * dqq;
                d(q, q) = s * s * dpp + 2.0 * s * c * apq + c * c * dqq;
                d(p, q) = 0.0;
                d(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double dkp = d(k, p);
                    const double dkq = d(k, q);
                    d(k, p) = c * dkp - s * dkq;
                    d(p, k) = d(k, p);
                    d(k, q) = s * dkp + c * dkq;
                    d(q, k) = d(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        off = detail::off_diagonal_norm(d);
        if (off <= stop) converged = true;
    }
    if (!converged) {
        throw ConvergenceError("Jacobi sweeps did not converge (off-diagonal residual " +
                                   std::to_string(off) + ")",
                               off);
    }

    // Ascending sort; ties keep original diagonal position order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t i, std::size_t j) { return d(i, i) < d(j, j); });

    EigenDecomposition e;
    e.values.resize(n);
    e.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        e.values[j] = d(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) e.vectors(i, j) = v(i, order[j]);
    }
    return e;
}

/**
 * Orthonormal basis for the column span (modified Gram-Schmidt with one
 * reorthogonalization pass). Requires rows >= cols; a column whose residual
 * norm after elimination falls to 1e-10 or below raises RankError.
 */
inline Matrix orthonormal_columns(const Matrix& a) {
    if (a.rows() < a.cols()) {
        throw ShapeError("orthonormal_columns requires rows >= cols, got " +
                         Matrix::shape_string(a.rows(), a.cols()));
    }
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();
    Matrix b = a;

    auto project_out = [&](std::size_t j) {
        for (std::size_t prev = 0; prev < j; ++prev) {
            double dot = 0.0;
            for (std::size_t i = 0; i < m; ++i) dot += b(i, prev) * b(i, j);
            for (std::size_t i = 0; i < m; ++i) b(i, j) -= dot * b(i, prev);
        }
    };

    for (std::size_t j = 0; j < k; ++j) {
        project_out(j);
        project_out(j);  // second pass restores orthogonality lost to rounding
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm += b(i, j) * b(i, j);
        norm = std::sqrt(norm);
        if (norm <= 1e-10) {
            throw RankError("column " + std::to_string(j) +
                            " is numerically dependent on earlier columns");
        }
        for (std::size_t i = 0; i < m; ++i) b(i, j) /= norm;
    }
    return b;
}

/**
 * Spectral norm. Symmetric input (relative asymmetry <= 1e-10) goes through
 * the spectral radius, max |eigenvalue|; anything else through the largest
 * eigenvalue of aᵀa.
 */
inline double operator_norm(const Matrix& a) {
    if (a.empty()) return 0.0;
    if (a.rows() == a.cols() && symmetry_residual(a) <= 1e-10 * a.frobenius_norm()) {
        const EigenDecomposition e = sym_eigen(a);
        return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
    }
    const EigenDecomposition e = sym_eigen(a.transpose() * a);
    return std::sqrt(std::max(0.0, e.values.back()));
}

}  // namespace twoproj

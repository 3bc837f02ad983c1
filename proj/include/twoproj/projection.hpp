#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "twoproj/eigen.hpp"
#include "twoproj/matrix.hpp"
#include "twoproj/rng.hpp"

namespace twoproj {

/// Residuals of the two defining identities of an orthogonal projection.
struct ProjectionDiagnostics {
    double symmetry_residual = 0.0;    // ||a - aᵀ||_F
    double idempotency_residual = 0.0; // ||a² - a||_F
    bool pass = false;
};

/// Checks a = aᵀ and a² = a; passes iff both residuals are <= tol * n.
inline ProjectionDiagnostics validate_projection(const Matrix& a, double tol = 1e-10) {
    if (a.rows() != a.cols()) {
        throw ShapeError("projection must be square, got " +
                         Matrix::shape_string(a.rows(), a.cols()));
    }
    ProjectionDiagnostics d;
    if (!a.all_finite()) {
        d.symmetry_residual = std::numeric_limits<double>::infinity();
        d.idempotency_residual = std::numeric_limits<double>::infinity();
        return d;
    }
    d.symmetry_residual = symmetry_residual(a);
    d.idempotency_residual = (a * a - a).frobenius_norm();
    const double bound = tol * static_cast<double>(a.rows());
    d.pass = d.symmetry_residual <= bound && d.idempotency_residual <= bound;
    return d;
}

/// bᵀb = I within 1e-10 required; returns the orthogonal projection b·bᵀ.
inline Matrix projection_from_basis(const Matrix& b) {
    const std::size_t k = b.cols();
    const Matrix gram = b.transpose() * b;
    const double residual = (gram - Matrix::identity(k)).frobenius_norm();
    if (residual > 1e-10) {
        throw ValidationError("basis columns are not orthonormal (residual " +
                              std::to_string(residual) + ")");
    }
    // b·bᵀ summed in a fixed order is exactly symmetric in floating point.
    return b * b.transpose();
}

/**
 * A validated pair (P, Q) of orthogonal projections on the same space.
 * Construction rejects anything that fails validate_projection at
 * validation_tol, so downstream code can assume the defining identities.
 */
class ProjectionPair {
public:
    ProjectionPair(Matrix p, Matrix q, double validation_tol = 1e-10)
        : p_(std::move(p)), q_(std::move(q)), tol_(validation_tol) {
        if (p_.rows() != p_.cols() || q_.rows() != q_.cols() || p_.rows() != q_.rows()) {
            throw ShapeError("projection pair requires equal square shapes, got " +
                             Matrix::shape_string(p_.rows(), p_.cols()) + " and " +
                             Matrix::shape_string(q_.rows(), q_.cols()));
        }
        const ProjectionDiagnostics dp = validate_projection(p_, tol_);
        if (!dp.pass) {
            throw ValidationError("p is not an orthogonal projection (symmetry " +
                                  std::to_string(dp.symmetry_residual) + ", idempotency " +
                                  std::to_string(dp.idempotency_residual) + ")");
        }
        const ProjectionDiagnostics dq = validate_projection(q_, tol_);
        if (!dq.pass) {
            throw ValidationError("q is not an orthogonal projection (symmetry " +
                                  std::to_string(dq.symmetry_residual) + ", idempotency " +
                                  std::to_string(dq.idempotency_residual) + ")");
        }
    }

    [[nodiscard]] const Matrix& p() const { return p_; }
    [[nodiscard]] const Matrix& q() const { return q_; }
    [[nodiscard]] std::size_t n() const { return p_.rows(); }
    [[nodiscard]] double validation_tol() const { return tol_; }

private:
    Matrix p_;
    Matrix q_;
    double tol_;
};

/// n x k matrix of standard-normal entries, filled row-major.
inline Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    GaussianStream g(seed);
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = g.next();
    return m;
}

/// Projection onto the span of `rank` Gaussian columns. Haar-distributed
/// column span; deterministic for a fixed seed.
inline Matrix random_projection(std::size_t n, std::size_t rank, std::uint64_t seed) {
    if (rank > n) {
        throw ParameterError("rank " + std::to_string(rank) + " exceeds dimension " +
                             std::to_string(n));
    }
    if (rank == 0) return Matrix(n, n);
    return projection_from_basis(orthonormal_columns(gaussian_matrix(n, rank, seed)));
}

/**
 * Random pair with prescribed ranks. The two projections draw from disjoint
 * seed streams derived from `seed`, so the pair is a pure function of
 * (n, rank_p, rank_q, seed).
 */
inline ProjectionPair random_projection_pair(std::size_t n, std::size_t rank_p,
                                             std::size_t rank_q, std::uint64_t seed) {
    if (rank_p > n || rank_q > n) {
        throw ParameterError("requested ranks (" + std::to_string(rank_p) + ", " +
                             std::to_string(rank_q) + ") exceed dimension " +
                             std::to_string(n));
    }
    const Matrix p = random_projection(n, rank_p, SplitMix64::element(seed, 0));
    const Matrix q = random_projection(n, rank_q, SplitMix64::element(seed, 1));
    return ProjectionPair(p, q);
}

/// Haar-ish random orthogonal matrix (orthonormalized Gaussian square).
inline Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
    if (n == 0) return Matrix(0, 0);
    return orthonormal_columns(gaussian_matrix(n, n, seed));
}

}  // namespace twoproj

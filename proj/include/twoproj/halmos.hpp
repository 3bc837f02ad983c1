#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "twoproj/eigen.hpp"
#include "twoproj/matrix.hpp"
#include "twoproj/projection.hpp"

namespace twoproj {

/**
 * Dimensions of the six invariant subspaces of a projection pair:
 *
 *   h1 = dim(range P ∩ range Q)      h4 = dim(null P ⊖ (H5 ⊕ H6))
 *   h2 = dim(range P ∩ null Q)       h5 = dim(null P ∩ null Q)
 *   h3 = dim(range P ⊖ (H1 ⊕ H2))    h6 = dim(null P ∩ range Q)
 *
 * h3 = h4 always; that shared count is the number of nontrivial principal
 * angles between the two ranges.
 */
struct SubspaceDims {
    std::size_t h1 = 0, h2 = 0, h3 = 0, h4 = 0, h5 = 0, h6 = 0;

    [[nodiscard]] std::size_t total() const { return h1 + h2 + h3 + h4 + h5 + h6; }
    [[nodiscard]] std::array<std::size_t, 6> as_array() const {
        return {h1, h2, h3, h4, h5, h6};
    }
    bool operator==(const SubspaceDims&) const = default;
};

/**
 * Canonical two-projection form.
 *
 * In the orthogonal basis `basis_u` (columns grouped H1..H6 in order) the
 * pair becomes
 *
 *   P = I ⊕ I ⊕ I ⊕ 0 ⊕ 0 ⊕ 0
 *   Q = I ⊕ 0 ⊕ [ Q0        R·D      ] ⊕ 0 ⊕ I      R = sqrt(Q0(I - Q0))
 *               [ Dᵀ·R   Dᵀ(I-Q0)D   ]
 *
 * with Q0 = diag(q0_eigs), every q0 eigenvalue strictly inside (0, 1), and
 * `d_unitary` the h3 x h4 orthogonal coupling between the two generic
 * blocks. Inside a degenerate q0 cluster the eigenbasis is free, so only
 * orthogonality of d_unitary is guaranteed, not any particular
 * representative.
 */
struct HalmosForm {
    SubspaceDims dims;
    Matrix basis_u;                  // n x n orthogonal, columns H1..H6
    std::vector<double> q0_eigs;     // ascending, length h3
    Matrix d_unitary;                // h3 x h4
    double class_tol = 1e-8;

    [[nodiscard]] std::size_t n() const { return dims.total(); }
};

namespace detail {

/// Copy of the selected columns, in the order given.
inline Matrix selected_columns(const Matrix& m, const std::vector<std::size_t>& idx) {
    Matrix sel(m.rows(), idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) sel(i, j) = m(i, idx[j]);
    return sel;
}

/// Columns of `basis * vectors[:, idx]` for the selected eigenvector indices.
inline Matrix mapped_columns(const Matrix& basis, const Matrix& vectors,
                             const std::vector<std::size_t>& idx) {
    return basis * selected_columns(vectors, idx);
}

struct ClassifiedCompression {
    std::vector<std::size_t> low;      // eigenvalue <= class_tol
    std::vector<std::size_t> interior; // strictly between the bands, ascending
    std::vector<std::size_t> high;     // eigenvalue >= 1 - class_tol
    std::vector<double> interior_values;
};

inline ClassifiedCompression classify(const EigenDecomposition& e, double class_tol) {
    ClassifiedCompression c;
    for (std::size_t i = 0; i < e.values.size(); ++i) {
        const double v = e.values[i];
        if (v <= class_tol) {
            c.low.push_back(i);
        } else if (v >= 1.0 - class_tol) {
            c.high.push_back(i);
        } else {
            c.interior.push_back(i);
            c.interior_values.push_back(v);
        }
    }
    return c;
}

}  // namespace detail

/**
 * Compute the canonical form of a validated pair.
 *
 * Construction: eigendecompose the compression of Q to range(P) — eigenvalues
 * within class_tol of 1 span H1, within class_tol of 0 span H2, the interior
 * ones are q0_eigs on H3. Then the compression of Q to null(P) — near-1 spans
 * H6, near-0 spans H5, interior spans H4, taken in reverse order so the value
 * paired with position i is 1 - q0_eigs[i]. The coupling is recovered from
 * the off-diagonal block of Q as
 *
 *   d_unitary = diag(1 / sqrt(l_i (1 - l_i))) · (B3ᵀ Q B4).
 *
 * Throws ClassificationError when the two interior counts disagree or the
 * pairing l <-> 1-l fails at 1e-7 (a different class_tol usually resolves
 * it), DegeneracyError when d_unitary fails orthogonality at 1e-8.
 */
inline HalmosForm decompose(const ProjectionPair& pair, double class_tol = 1e-8) {
    if (!(class_tol > 0.0 && class_tol < 0.5)) {
        throw ParameterError("class_tol must lie in (0, 1/2)");
    }
    const std::size_t n = pair.n();
    const Matrix& p = pair.p();
    const Matrix& q = pair.q();

    const double trace_p = p.trace();
    const double rounded = std::round(trace_p);
    if (std::abs(trace_p - rounded) > 1e-6) {
        throw ValidationError("trace(P) = " + std::to_string(trace_p) +
                              " is not within 1e-6 of an integer");
    }
    const auto rank_p = static_cast<std::size_t>(rounded);

    // Split the space along P. Eigenvalues of a validated projection sit in
    // tight clusters at 0 and 1, so > 1/2 is an unambiguous divider.
    const EigenDecomposition ep = sym_eigen(p);
    std::vector<std::size_t> null_idx, range_idx;
    for (std::size_t i = 0; i < n; ++i) {
        (ep.values[i] > 0.5 ? range_idx : null_idx).push_back(i);
    }
    if (range_idx.size() != rank_p) {
        throw ValidationError("eigenvalue count above 1/2 (" +
                              std::to_string(range_idx.size()) +
                              ") disagrees with trace(P) = " + std::to_string(trace_p));
    }
    const Matrix basis_range = detail::selected_columns(ep.vectors, range_idx);
    const Matrix basis_null = detail::selected_columns(ep.vectors, null_idx);

    // Compression of Q to range(P); its eigenvalues are those of PQP there.
    const EigenDecomposition er =
        sym_eigen(symmetrized(basis_range.transpose() * q * basis_range));
    const detail::ClassifiedCompression cr = detail::classify(er, class_tol);

    // Compression of Q to null(P), i.e. (I-P)Q(I-P) restricted.
    const EigenDecomposition en =
        sym_eigen(symmetrized(basis_null.transpose() * q * basis_null));
    const detail::ClassifiedCompression cn = detail::classify(en, class_tol);

    if (cr.interior.size() != cn.interior.size()) {
        throw ClassificationError(
            "interior eigenvalue counts disagree between the two compressions (" +
            std::to_string(cr.interior.size()) + " vs " + std::to_string(cn.interior.size()) +
            "); a different class_tol may separate the clusters");
    }
    const std::size_t k = cr.interior.size();

    // Position i of H4 must carry 1 - q0_eigs[i]; interior values ascend, so
    // reverse the null-side order and verify the pairing.
    std::vector<std::size_t> h4_idx(cn.interior.rbegin(), cn.interior.rend());
    for (std::size_t i = 0; i < k; ++i) {
        const double paired = 1.0 - en.values[h4_idx[i]];
        if (std::abs(paired - cr.interior_values[i]) > 1e-7) {
            throw ClassificationError(
                "principal-angle pairing failed at position " + std::to_string(i) + ": " +
                std::to_string(cr.interior_values[i]) + " vs " + std::to_string(paired) +
                "; a different class_tol may resolve the classification");
        }
    }

    HalmosForm form;
    form.class_tol = class_tol;
    form.dims.h1 = cr.high.size();
    form.dims.h2 = cr.low.size();
    form.dims.h3 = k;
    form.dims.h4 = k;
    form.dims.h5 = cn.low.size();
    form.dims.h6 = cn.high.size();
    form.q0_eigs = cr.interior_values;

    const Matrix b1 = detail::mapped_columns(basis_range, er.vectors, cr.high);
    const Matrix b2 = detail::mapped_columns(basis_range, er.vectors, cr.low);
    const Matrix b3 = detail::mapped_columns(basis_range, er.vectors, cr.interior);
    const Matrix b4 = detail::mapped_columns(basis_null, en.vectors, h4_idx);
    const Matrix b5 = detail::mapped_columns(basis_null, en.vectors, cn.low);
    const Matrix b6 = detail::mapped_columns(basis_null, en.vectors, cn.high);
    form.basis_u = hconcat(hconcat(hconcat(b1, b2), hconcat(b3, b4)), hconcat(b5, b6));

    form.d_unitary = b3.transpose() * q * b4;
    for (std::size_t i = 0; i < k; ++i) {
        const double l = form.q0_eigs[i];
        const double scale = 1.0 / std::sqrt(l * (1.0 - l));
        for (std::size_t j = 0; j < k; ++j) form.d_unitary(i, j) *= scale;
    }
    const double d_residual =
        (form.d_unitary.transpose() * form.d_unitary - Matrix::identity(k)).frobenius_norm();
    if (d_residual > 1e-8) {
        throw DegeneracyError("coupling matrix failed orthogonality (residual " +
                              std::to_string(d_residual) + ")");
    }
    return form;
}

/// ||DᵀD - I||_F of the computed coupling; 0 for an empty generic part.
inline double d_unitarity_residual(const HalmosForm& form) {
    const std::size_t k = form.dims.h3;
    return (form.d_unitary.transpose() * form.d_unitary - Matrix::identity(k))
        .frobenius_norm();
}

/**
 * Assemble the canonical block matrices from the form data alone. Zero-width
 * blocks contribute nothing but keep the offsets uniform.
 */
inline std::pair<Matrix, Matrix> canonical_reassemble(const HalmosForm& form) {
    const SubspaceDims& d = form.dims;
    const std::size_t n = d.total();
    const std::size_t k = d.h3;
    const std::size_t o1 = 0;
    const std::size_t o2 = o1 + d.h1;
    const std::size_t o3 = o2 + d.h2;
    const std::size_t o4 = o3 + d.h3;
    const std::size_t o5 = o4 + d.h4;
    const std::size_t o6 = o5 + d.h5;

    Matrix p(n, n);
    for (std::size_t i = 0; i < d.h1 + d.h2 + d.h3; ++i) p(i, i) = 1.0;

    Matrix q(n, n);
    for (std::size_t i = 0; i < d.h1; ++i) q(o1 + i, o1 + i) = 1.0;
    for (std::size_t i = 0; i < d.h6; ++i) q(o6 + i, o6 + i) = 1.0;

    if (k > 0) {
        Matrix q0(k, k);
        Matrix root(k, k);  // sqrt(Q0 (I - Q0)), diagonal by construction
        for (std::size_t i = 0; i < k; ++i) {
            const double l = form.q0_eigs[i];
            q0(i, i) = l;
            root(i, i) = std::sqrt(l * (1.0 - l));
        }
        const Matrix& dmat = form.d_unitary;
        const Matrix upper = root * dmat;
        Matrix complement(k, k);  // Dᵀ (I - Q0) D
        {
            Matrix one_minus(k, k);
            for (std::size_t i = 0; i < k; ++i) one_minus(i, i) = 1.0 - form.q0_eigs[i];
            complement = symmetrized(dmat.transpose() * one_minus * dmat);
        }
        q.set_block(o3, o3, q0);
        q.set_block(o3, o4, upper);
        q.set_block(o4, o3, upper.transpose());
        q.set_block(o4, o4, complement);
    }
    return {p, q};
}

/// Frobenius residuals of Uᵀ·P·U and Uᵀ·Q·U against the canonical blocks.
inline std::pair<double, double> reconstruction_residual(const HalmosForm& form,
                                                         const ProjectionPair& pair) {
    if (form.n() != pair.n()) {
        throw ShapeError("form dimension " + std::to_string(form.n()) +
                         " does not match pair dimension " + std::to_string(pair.n()));
    }
    const auto [p_canon, q_canon] = canonical_reassemble(form);
    const Matrix ut = form.basis_u.transpose();
    const double rp = (ut * pair.p() * form.basis_u - p_canon).frobenius_norm();
    const double rq = (ut * pair.q() * form.basis_u - q_canon).frobenius_norm();
    return {rp, rq};
}

}  // namespace twoproj

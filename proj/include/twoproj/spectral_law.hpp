#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "twoproj/eigen.hpp"
#include "twoproj/halmos.hpp"
#include "twoproj/matrix.hpp"
#include "twoproj/projection.hpp"

namespace twoproj {

/// Sorted eigenvalue list with multiplicity and a comparison tolerance.
struct SpectrumMultiset {
    std::vector<double> values;  // ascending
    double match_tol = 1e-8;

    SpectrumMultiset() = default;
    explicit SpectrumMultiset(std::vector<double> v, double tol = 1e-8)
        : values(std::move(v)), match_tol(tol) {
        std::sort(values.begin(), values.end());
    }

    [[nodiscard]] std::size_t size() const { return values.size(); }
};

/// Outcome of the two-sided inclusion check between the mapped spectrum of
/// PQP and the spectrum of the anticommutator.
struct InclusionReport {
    bool lower_ok = false;
    bool upper_ok = false;
    double max_unmatched_distance = 0.0;
    std::vector<double> witnesses;  // points that failed to match
};

// ============================================================================
// The eigenvalue map and its inverse
// ============================================================================

struct MappedPair {
    double plus;   // l + sqrt(l), in [0, 2]
    double minus;  // l - sqrt(l), in [-1/4, 0]
};

enum class Branch { plus, minus };

struct Preimage {
    double lambda;
    Branch branch;
};

/// l in [0, 1] -> (l + sqrt(l), l - sqrt(l)).
inline MappedPair forward_map(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw DomainError("forward_map requires lambda in [0, 1], got " +
                          std::to_string(lambda));
    }
    const double root = std::sqrt(lambda);
    return {lambda + root, lambda - root};
}

/**
 * All preimages of mu in [-1/4, 2] under l -> l +- sqrt(l).
 *
 * For mu >= 0 only the plus branch can reach it: sqrt(l) = (-1+sqrt(1+4mu))/2.
 * For mu < 0 the minus branch gives sqrt(l) = (1 -+ sqrt(1+4mu))/2; both roots
 * lie in [0, 1] and both are returned (they coincide exactly at mu = -1/4).
 */
inline std::vector<Preimage> inverse_map(double mu) {
    if (!(mu >= -0.25 && mu <= 2.0)) {
        throw DomainError("inverse_map requires mu in [-1/4, 2], got " + std::to_string(mu));
    }
    const double disc = std::sqrt(std::max(0.0, 1.0 + 4.0 * mu));
    std::vector<Preimage> out;
    if (mu >= 0.0) {
        const double t = 0.5 * (-1.0 + disc);
        out.push_back({t * t, Branch::plus});
    } else {
        const double t_low = 0.5 * (1.0 - disc);
        const double t_high = 0.5 * (1.0 + disc);
        out.push_back({t_low * t_low, Branch::minus});
        if (t_high != t_low) out.push_back({t_high * t_high, Branch::minus});
    }
    return out;
}

// ============================================================================
// Exact finite-dimensional spectra from the canonical form
// ============================================================================

/// sigma(PQ + QP) predicted by block bookkeeping: 2 on H1, 0 on H2, H5, H6,
/// and l +- sqrt(l) for every generic eigenvalue l.
inline SpectrumMultiset predicted_anticommutator_spectrum(const HalmosForm& form) {
    std::vector<double> v;
    v.reserve(form.n());
    v.insert(v.end(), form.dims.h1, 2.0);
    v.insert(v.end(), form.dims.h2 + form.dims.h5 + form.dims.h6, 0.0);
    for (double l : form.q0_eigs) {
        const double root = std::sqrt(l);
        v.push_back(l + root);
        v.push_back(l - root);
    }
    return SpectrumMultiset(std::move(v));
}

/// sigma(PQP) predicted by block bookkeeping: 1 on H1, 0 everywhere outside
/// range(P)'s generic part, the generic eigenvalues in between.
inline SpectrumMultiset predicted_pqp_spectrum(const HalmosForm& form) {
    std::vector<double> v;
    v.reserve(form.n());
    v.insert(v.end(), form.dims.h1, 1.0);
    v.insert(v.end(), form.dims.h2 + form.dims.h4 + form.dims.h5 + form.dims.h6, 0.0);
    v.insert(v.end(), form.q0_eigs.begin(), form.q0_eigs.end());
    return SpectrumMultiset(std::move(v));
}

/// Brute-force route: eigenvalues of the explicitly formed PQ + QP.
inline SpectrumMultiset oracle_anticommutator_spectrum(const ProjectionPair& pair) {
    const Matrix anti = pair.p() * pair.q() + pair.q() * pair.p();
    return SpectrumMultiset(sym_eigen(symmetrized(anti)).values);
}

/// Brute-force route: eigenvalues of the explicitly formed PQP.
inline SpectrumMultiset oracle_pqp_spectrum(const ProjectionPair& pair) {
    const Matrix pqp = pair.p() * pair.q() * pair.p();
    return SpectrumMultiset(sym_eigen(symmetrized(pqp)).values);
}

// ============================================================================
// Law checks
// ============================================================================

namespace detail {

inline double distance_to_set(double x, const std::vector<double>& sorted_set) {
    if (sorted_set.empty()) return std::numeric_limits<double>::infinity();
    const auto it = std::lower_bound(sorted_set.begin(), sorted_set.end(), x);
    double best = std::numeric_limits<double>::infinity();
    if (it != sorted_set.end()) best = std::min(best, std::abs(*it - x));
    if (it != sorted_set.begin()) best = std::min(best, std::abs(*(it - 1) - x));
    return best;
}

}  // namespace detail

/**
 * The two-sided spectral inclusion for the anticommutator:
 *
 *   lower: every l +- sqrt(l) with l an eigenvalue of PQP away from {0, 1}
 *          must appear in sigma(PQ + QP);
 *   upper: every eigenvalue of PQ + QP must appear among the mapped values
 *          or in the slack set {0, 2}.
 *
 * Both sides are evaluated on the brute-force spectra; the exclusion band
 * around 0 and 1 reuses the classification tolerance recorded in `form`,
 * and `tol` is the matching distance.
 */
inline InclusionReport check_theorem_inclusions(const ProjectionPair& pair,
                                                const HalmosForm& form, double tol = 1e-8) {
    const std::vector<double> pqp = oracle_pqp_spectrum(pair).values;
    const std::vector<double> anti = oracle_anticommutator_spectrum(pair).values;
    const double band = form.class_tol;

    InclusionReport report;
    report.lower_ok = true;
    report.upper_ok = true;

    std::vector<double> mapped;
    mapped.reserve(2 * pqp.size() + 2);
    for (double raw : pqp) {
        const double l = std::clamp(raw, 0.0, 1.0);
        const MappedPair m = forward_map(l);
        mapped.push_back(m.plus);
        mapped.push_back(m.minus);
        if (l <= band || l >= 1.0 - band) continue;  // the theorem excludes {0, 1}
        for (double point : {m.plus, m.minus}) {
            const double dist = detail::distance_to_set(point, anti);
            report.max_unmatched_distance = std::max(report.max_unmatched_distance, dist);
            if (dist > tol) {
                report.lower_ok = false;
                report.witnesses.push_back(point);
            }
        }
    }

    mapped.push_back(0.0);
    mapped.push_back(2.0);
    std::sort(mapped.begin(), mapped.end());
    for (double mu : anti) {
        const double dist = detail::distance_to_set(mu, mapped);
        report.max_unmatched_distance = std::max(report.max_unmatched_distance, dist);
        if (dist > tol) {
            report.upper_ok = false;
            report.witnesses.push_back(mu);
        }
    }
    return report;
}

/// Both sides of the norm identity ||PQ + QP|| = ||PQ||^2 + ||PQ||.
struct NormCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

inline NormCheck check_norm_formula(const ProjectionPair& pair, double tol = 1e-9) {
    const Matrix pq = pair.p() * pair.q();
    NormCheck c;
    c.lhs = operator_norm(symmetrized(pq + pair.q() * pair.p()));
    const double pq_norm = operator_norm(pq);
    c.rhs = pq_norm * pq_norm + pq_norm;
    c.ok = std::abs(c.lhs - c.rhs) <= tol;
    return c;
}

/// sigma(PQ + QP) must lie inside [-1/4, 2], up to tol.
inline bool check_bound(const SpectrumMultiset& spectrum, double tol = 1e-9) {
    if (spectrum.values.empty()) return true;
    return spectrum.values.front() >= -0.25 - tol && spectrum.values.back() <= 2.0 + tol;
}

/**
 * Scalar residual of the Schur-complement factorization that drives the
 * spectral law: for nonzero lambda and each generic eigenvalue l,
 *
 *   lambda (2l - lambda) + l (1 - l)
 *     = -(lambda - (l + sqrt(l))) (lambda - (l - sqrt(l)))
 *
 * holds identically; the returned value is the largest |difference| / |lambda|
 * over the list, pure rounding noise when the identity is implemented
 * correctly.
 */
inline double schur_factorization_residual(double lambda, const std::vector<double>& q0_eigs) {
    if (lambda == 0.0) {
        throw DomainError("the Schur factorization requires a nonzero lambda");
    }
    double worst = 0.0;
    for (double l : q0_eigs) {
        if (!(l > 0.0 && l < 1.0)) {
            throw DomainError("generic eigenvalues must lie strictly inside (0, 1), got " +
                              std::to_string(l));
        }
        const double root = std::sqrt(l);
        const double quadratic = lambda * (2.0 * l - lambda) + l * (1.0 - l);
        const double factored = -(lambda - (l + root)) * (lambda - (l - root));
        worst = std::max(worst, std::abs(quadratic - factored) / std::abs(lambda));
    }
    return worst;
}

}  // namespace twoproj

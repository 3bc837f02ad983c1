#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twoproj/halmos.hpp"
#include "twoproj/matrix.hpp"
#include "twoproj/projection.hpp"
#include "twoproj/spectral_law.hpp"

namespace twoproj {

/**
 * Recipe for a pair with prescribed canonical data: generic eigenvalues plus
 * the four trivial block dimensions. The generic part contributes two
 * dimensions per eigenvalue, so n = h1 + h2 + h5 + h6 + 2k.
 *
 * With `conjugate_seed` set, both matrices are conjugated by one random
 * orthogonal matrix; spectra and subspace dimensions are invariant, but the
 * block structure is no longer visible in the entries.
 */
struct SynthesisSpec {
    std::vector<double> q0_targets;  // each strictly inside (0, 1)
    std::size_t h1 = 0;
    std::size_t h2 = 0;
    std::size_t h5 = 0;
    std::size_t h6 = 0;
    std::optional<std::uint64_t> conjugate_seed;

    [[nodiscard]] std::size_t dimension() const {
        return h1 + h2 + h5 + h6 + 2 * q0_targets.size();
    }
};

/**
 * Build the pair realizing `spec`. The canonical matrices use the diagonal
 * square root of Q0(I - Q0) as the off-diagonal block and the identity
 * coupling, exactly the rank-by-rank construction behind the generic block.
 */
inline ProjectionPair build_pair(const SynthesisSpec& spec) {
    for (double l : spec.q0_targets) {
        if (!(l > 0.0 && l < 1.0)) {
            throw DomainError("generic eigenvalue targets must lie strictly inside (0, 1), got " +
                              std::to_string(l));
        }
    }
    HalmosForm form;
    form.dims = {spec.h1, spec.h2, spec.q0_targets.size(), spec.q0_targets.size(),
                 spec.h5, spec.h6};
    form.q0_eigs = spec.q0_targets;
    std::sort(form.q0_eigs.begin(), form.q0_eigs.end());
    form.d_unitary = Matrix::identity(spec.q0_targets.size());
    auto [p, q] = canonical_reassemble(form);

    if (spec.conjugate_seed) {
        const Matrix o = random_orthogonal(form.n(), *spec.conjugate_seed);
        p = symmetrized(o * p * o.transpose());
        q = symmetrized(o * q * o.transpose());
    }
    return ProjectionPair(std::move(p), std::move(q));
}

enum class PreimagePolicy { smallest_lambda, largest_lambda };

/**
 * Pair whose anticommutator spectrum contains every target value.
 *
 * Each target in [-1/4, 2] is pulled back through the eigenvalue map; 2 and 0
 * are realized through trivial blocks (h1, h5) instead, since 0 and 1 are not
 * admissible generic eigenvalues. Negative targets other than -1/4 have two
 * preimages; `policy` picks one. Every generic eigenvalue l contributes both
 * l + sqrt(l) and l - sqrt(l), so the output spectrum may strictly contain
 * the request - the branches cannot be separated at finite rank.
 */
inline ProjectionPair realize_spectrum(const std::vector<double>& targets,
                                       PreimagePolicy policy = PreimagePolicy::smallest_lambda) {
    SynthesisSpec spec;
    std::vector<double> lambdas;
    for (double mu : targets) {
        if (!(mu >= -0.25 && mu <= 2.0)) {
            throw DomainError("spectrum targets must lie in [-1/4, 2], got " +
                              std::to_string(mu));
        }
        if (mu == 2.0) {
            spec.h1 += 1;
            continue;
        }
        if (mu == 0.0) {
            spec.h5 += 1;
            continue;
        }
        const std::vector<Preimage> pre = inverse_map(mu);
        double chosen = pre.front().lambda;
        for (const Preimage& cand : pre) {
            if (policy == PreimagePolicy::smallest_lambda) {
                chosen = std::min(chosen, cand.lambda);
            } else {
                chosen = std::max(chosen, cand.lambda);
            }
        }
        lambdas.push_back(chosen);
    }
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    spec.q0_targets = std::move(lambdas);
    return build_pair(spec);
}

/**
 * Equispaced-angle approximation of the full interval [-1/4, 2]: generic
 * eigenvalues (j/m)^2 for j = 1..m-1 plus one dimension each of H1 and H2 to
 * pin the endpoints 2 and 0. The map t -> t^2 +- t has derivative bounded by
 * 3 on [0, 1], so the spectrum covers the interval within Hausdorff distance
 * 3/m.
 */
inline ProjectionPair grid_realization(std::size_t m) {
    if (m < 2) {
        throw ParameterError("grid_realization requires m >= 2");
    }
    SynthesisSpec spec;
    spec.h1 = 1;
    spec.h2 = 1;
    spec.q0_targets.reserve(m - 1);
    for (std::size_t j = 1; j < m; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(m);
        spec.q0_targets.push_back(t * t);
    }
    return build_pair(spec);
}

}  // namespace twoproj

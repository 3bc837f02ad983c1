#pragma once

// Shared fixtures for the suite: the 2x2 worked pair (projection onto the
// first axis against the projection onto the line at angle pi/3) and small
// deterministic generators.

#include <cmath>
#include <cstdint>
#include <vector>

#include "twoproj/twoproj.hpp"

namespace tp_test {

inline twoproj::Matrix worked_p() { return twoproj::Matrix{{1.0, 0.0}, {0.0, 0.0}}; }

/// Rank-one projection onto (cos pi/3, sin pi/3) = (1/2, sqrt(3)/2).
inline twoproj::Matrix worked_q() {
    const double s = std::sqrt(3.0) / 4.0;
    return twoproj::Matrix{{0.25, s}, {s, 0.75}};
}

inline twoproj::ProjectionPair worked_pair() {
    return twoproj::ProjectionPair(worked_p(), worked_q());
}

/// Random symmetric matrix with standard-normal entries symmetrized.
inline twoproj::Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
    twoproj::GaussianStream g(seed);
    twoproj::Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = g.next();
            a(i, j) = v;
            a(j, i) = v;
        }
    }
    return a;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    return worst;
}

}  // namespace tp_test

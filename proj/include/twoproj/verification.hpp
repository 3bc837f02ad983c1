#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "twoproj/halmos.hpp"
#include "twoproj/projection.hpp"
#include "twoproj/rng.hpp"
#include "twoproj/spectral_law.hpp"
#include "twoproj/synthesis.hpp"

namespace twoproj {

// ============================================================================
// Multiset and Hausdorff comparisons
// ============================================================================

struct MultisetMatch {
    bool ok = false;
    double max_deviation = 0.0;
};

/// Positional comparison of two sorted multisets; cardinality mismatch
/// reports an infinite deviation.
inline MultisetMatch multiset_match(const SpectrumMultiset& a, const SpectrumMultiset& b,
                                    double tol) {
    MultisetMatch m;
    if (a.size() != b.size()) {
        m.max_deviation = std::numeric_limits<double>::infinity();
        return m;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        m.max_deviation = std::max(m.max_deviation, std::abs(a.values[i] - b.values[i]));
    }
    m.ok = m.max_deviation <= tol;
    return m;
}

/// Symmetric Hausdorff distance between two finite point sets.
inline double hausdorff_distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw DomainError("hausdorff_distance requires nonempty sets");
    }
    std::vector<double> sa = a;
    std::vector<double> sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double worst = 0.0;
    for (double x : sa) worst = std::max(worst, detail::distance_to_set(x, sb));
    for (double x : sb) worst = std::max(worst, detail::distance_to_set(x, sa));
    return worst;
}

/**
 * Hausdorff distance between a finite set and the dense interval [lo, hi],
 * computed analytically. The set-to-interval direction is the usual clamp
 * distance; the interval-to-set direction is the supremum of a piecewise
 * linear function whose local maxima sit at lo, hi, and the midpoints of
 * adjacent points, so evaluating those candidates is exact.
 */
inline double hausdorff_distance_to_interval(const std::vector<double>& points, double lo,
                                             double hi) {
    if (points.empty()) {
        throw DomainError("hausdorff_distance_to_interval requires a nonempty set");
    }
    if (!(lo <= hi)) {
        throw DomainError("interval endpoints out of order");
    }
    std::vector<double> s = points;
    std::sort(s.begin(), s.end());

    double set_to_interval = 0.0;
    for (double x : s) {
        set_to_interval = std::max(set_to_interval, std::max({lo - x, x - hi, 0.0}));
    }

    double interval_to_set = std::max(detail::distance_to_set(lo, s),
                                      detail::distance_to_set(hi, s));
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double mid = 0.5 * (s[i] + s[i + 1]);
        if (mid <= lo || mid >= hi) continue;
        interval_to_set = std::max(interval_to_set, 0.5 * (s[i + 1] - s[i]));
    }
    return std::max(set_to_interval, interval_to_set);
}

// ============================================================================
// Campaign runner
// ============================================================================

struct CampaignConfig {
    std::size_t trials = 0;
    std::size_t dim_min = 1;
    std::size_t dim_max = 8;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    bool include_synthesized = false;
    bool parallel = false;
};

/// Fixed thresholds used by every campaign, independent of the multiset
/// matching tolerance: the norm identity and the spectral bound hold to
/// 1e-9, reconstruction residuals scale as 1e-8 * n.
inline constexpr double kNormIdentityTol = 1e-9;
inline constexpr double kSpectralBoundTol = 1e-9;
inline constexpr double kReconstructionScale = 1e-8;

/// Number of synthesized pairs (all with nontrivial intersection, h1 > 0)
/// appended when include_synthesized is set.
inline constexpr std::size_t kSynthesizedTrials = 50;

struct TrialRecord {
    std::string kind;  // "random" or "synthesized"
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t rank_p = 0;
    std::size_t rank_q = 0;
    std::array<std::size_t, 6> dims{};
    double max_spectral_deviation = 0.0;
    double norm_deviation = 0.0;
    double norm_lhs = 0.0;
    double norm_rhs = 0.0;
    bool bound_ok = false;
    bool lower_ok = false;
    bool upper_ok = false;
    double reconstruction_rp = 0.0;
    double reconstruction_rq = 0.0;
    double d_unitarity = 0.0;
    bool pass = false;
    std::string error;  // nonempty when the trial aborted
    double wall_time_ms = 0.0;
};

struct CampaignAggregate {
    std::size_t record_count = 0;
    std::size_t pass_count = 0;
    double max_spectral_deviation = 0.0;
    double max_norm_deviation = 0.0;
    double max_reconstruction_residual = 0.0;
    double max_d_unitarity_residual = 0.0;
    bool all_bounds_ok = true;
    bool all_inclusions_ok = true;
    double total_time_ms = 0.0;
};

struct VerificationReport {
    CampaignConfig config;
    std::vector<TrialRecord> records;
    CampaignAggregate aggregate;
};

namespace detail {

/// Runs the full check battery on one pair and fills everything but the
/// identifying fields of the record.
inline void run_checks(const ProjectionPair& pair, double tol, TrialRecord& rec) {
    const HalmosForm form = decompose(pair);
    rec.dims = form.dims.as_array();

    const SpectrumMultiset oracle_anti = oracle_anticommutator_spectrum(pair);
    const MultisetMatch anti =
        multiset_match(predicted_anticommutator_spectrum(form), oracle_anti, tol);
    const MultisetMatch pqp =
        multiset_match(predicted_pqp_spectrum(form), oracle_pqp_spectrum(pair), tol);
    rec.max_spectral_deviation = std::max(anti.max_deviation, pqp.max_deviation);

    const InclusionReport inc = check_theorem_inclusions(pair, form, tol);
    rec.lower_ok = inc.lower_ok;
    rec.upper_ok = inc.upper_ok;

    const NormCheck norm = check_norm_formula(pair, kNormIdentityTol);
    rec.norm_lhs = norm.lhs;
    rec.norm_rhs = norm.rhs;
    rec.norm_deviation = std::abs(norm.lhs - norm.rhs);

    rec.bound_ok = check_bound(oracle_anti, kSpectralBoundTol);

    const auto [rp, rq] = reconstruction_residual(form, pair);
    rec.reconstruction_rp = rp;
    rec.reconstruction_rq = rq;
    rec.d_unitarity = d_unitarity_residual(form);

    const double recon_bound = kReconstructionScale * static_cast<double>(pair.n());
    rec.pass = anti.ok && pqp.ok && rec.lower_ok && rec.upper_ok && norm.ok &&
               rec.bound_ok && rp <= recon_bound && rq <= recon_bound &&
               rec.d_unitarity <= 1e-8;
}

/// Trial i of a campaign: dimensions, ranks and the pair seed all come from
/// the i-th derived stream, so any record can be replayed in isolation.
inline TrialRecord run_random_trial(const CampaignConfig& config, std::size_t index) {
    TrialRecord rec;
    rec.kind = "random";
    rec.seed = SplitMix64::element(config.seed, index);
    SplitMix64 stream(rec.seed);
    rec.n = config.dim_min + stream.next_below(config.dim_max - config.dim_min);
    rec.rank_p = stream.next_below(rec.n);
    rec.rank_q = stream.next_below(rec.n);
    const std::uint64_t pair_seed = stream.next_u64();

    const auto start = std::chrono::steady_clock::now();
    try {
        const ProjectionPair pair =
            random_projection_pair(rec.n, rec.rank_p, rec.rank_q, pair_seed);
        run_checks(pair, config.tol, rec);
    } catch (const Error& e) {
        rec.pass = false;
        rec.error = e.what();
    }
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return rec;
}

/// Synthesized trial: a spec with h1 > 0 (so the anticommutator norm is
/// exactly 2), hidden behind a random conjugation.
inline TrialRecord run_synthesized_trial(const CampaignConfig& config, std::size_t index) {
    TrialRecord rec;
    rec.kind = "synthesized";
    rec.seed = SplitMix64::element(config.seed, config.trials + index);
    SplitMix64 stream(rec.seed);

    SynthesisSpec spec;
    spec.h1 = 1 + stream.next_below(1);
    spec.h2 = stream.next_below(1);
    spec.h5 = stream.next_below(1);
    spec.h6 = stream.next_below(1);
    const std::size_t k = 1 + stream.next_below(3);
    while (spec.q0_targets.size() < k) {
        const double candidate = 0.05 + 0.9 * stream.next_unit();
        bool separated = true;
        for (double existing : spec.q0_targets) {
            if (std::abs(existing - candidate) < 1e-3) separated = false;
        }
        if (separated) spec.q0_targets.push_back(candidate);
    }
    spec.conjugate_seed = stream.next_u64();

    rec.n = spec.dimension();
    rec.rank_p = spec.h1 + spec.h2 + k;
    rec.rank_q = spec.h1 + spec.h6 + k;

    const auto start = std::chrono::steady_clock::now();
    try {
        const ProjectionPair pair = build_pair(spec);
        run_checks(pair, config.tol, rec);
    } catch (const Error& e) {
        rec.pass = false;
        rec.error = e.what();
    }
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return rec;
}

}  // namespace detail

/**
 * Run every law on `trials` random pairs (plus the synthesized block when
 * requested) and aggregate. Reports are deterministic for a fixed config up
 * to the wall-time fields; the parallel path writes each record into its own
 * slot and reduces in index order, so it produces the same report as the
 * serial path.
 */
inline VerificationReport run_campaign(const CampaignConfig& config) {
    if (config.dim_min < 1 || config.dim_min > config.dim_max) {
        throw ParameterError("campaign requires 1 <= dim_min <= dim_max");
    }
    VerificationReport report;
    report.config = config;

    const std::size_t synth = config.include_synthesized ? kSynthesizedTrials : 0;
    const std::size_t total = config.trials + synth;
    report.records.resize(total);

    const auto start = std::chrono::steady_clock::now();
    auto run_one = [&](std::size_t i) {
        report.records[i] = i < config.trials
                                ? detail::run_random_trial(config, i)
                                : detail::run_synthesized_trial(config, i - config.trials);
    };

    if (config.parallel && total > 1) {
        const std::size_t workers =
            std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), total);
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (std::size_t i = cursor.fetch_add(1); i < total; i = cursor.fetch_add(1)) {
                    run_one(i);
                }
            });
        }
        for (auto& t : pool) t.join();
    } else {
        for (std::size_t i = 0; i < total; ++i) run_one(i);
    }

    CampaignAggregate& agg = report.aggregate;
    agg.record_count = total;
    for (const TrialRecord& rec : report.records) {
        if (rec.pass) ++agg.pass_count;
        agg.max_spectral_deviation = std::max(agg.max_spectral_deviation, rec.max_spectral_deviation);
        agg.max_norm_deviation = std::max(agg.max_norm_deviation, rec.norm_deviation);
        agg.max_reconstruction_residual =
            std::max({agg.max_reconstruction_residual, rec.reconstruction_rp, rec.reconstruction_rq});
        agg.max_d_unitarity_residual = std::max(agg.max_d_unitarity_residual, rec.d_unitarity);
        agg.all_bounds_ok = agg.all_bounds_ok && (rec.bound_ok || !rec.error.empty());
        agg.all_inclusions_ok =
            agg.all_inclusions_ok && ((rec.lower_ok && rec.upper_ok) || !rec.error.empty());
    }
    agg.total_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace twoproj

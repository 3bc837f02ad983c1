#pragma once

#include <fstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "twoproj/matrix.hpp"
#include "twoproj/projection.hpp"
#include "twoproj/verification.hpp"

namespace twoproj {

using json = nlohmann::json;

// ============================================================================
// Matrix and pair files
// ============================================================================
//
// Matrix file: {"n": <dim>, "data": [[row], [row], ...]}  (row-major)
// Pair file:   {"p": <matrix>, "q": <matrix>}  with matching n.
//
// Numbers round-trip bit-faithfully at double precision (shortest
// round-trip serialization).

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.rows()}, {"data", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
        throw ValidationError("matrix object requires fields 'n' and 'data'");
    }
    const auto n = j.at("n").get<std::size_t>();
    const json& data = j.at("data");
    if (!data.is_array() || data.size() != n) {
        throw ValidationError("matrix data must hold exactly n rows");
    }
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = data.at(i);
        if (!row.is_array() || row.size() != n) {
            throw ValidationError("matrix row " + std::to_string(i) +
                                  " must hold exactly n entries");
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (!row.at(c).is_number()) {
                throw ValidationError("matrix entries must be numbers");
            }
            m(i, c) = row.at(c).get<double>();
        }
    }
    if (!m.all_finite()) {
        throw ValidationError("matrix entries must be finite");
    }
    return m;
}

inline json pair_to_json(const ProjectionPair& pair) {
    return json{{"p", matrix_to_json(pair.p())}, {"q", matrix_to_json(pair.q())}};
}

/// Parses and validates a pair file; projection validation runs in the
/// ProjectionPair constructor.
inline ProjectionPair pair_from_json(const json& j, double validation_tol = 1e-10) {
    if (!j.is_object() || !j.contains("p") || !j.contains("q")) {
        throw ValidationError("pair object requires fields 'p' and 'q'");
    }
    Matrix p = matrix_from_json(j.at("p"));
    Matrix q = matrix_from_json(j.at("q"));
    return ProjectionPair(std::move(p), std::move(q), validation_tol);
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path);
    }
    return json::parse(in);  // parse_error propagates
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw std::ios_base::failure("cannot open " + path + " for writing");
    }
    out << j.dump(2) << '\n';
    if (!out) {
        throw std::ios_base::failure("write to " + path + " failed");
    }
}

// ============================================================================
// Verification report
// ============================================================================

inline json report_to_json(const VerificationReport& report) {
    json records = json::array();
    for (const TrialRecord& r : report.records) {
        records.push_back(json{
            {"kind", r.kind},
            {"seed", r.seed},
            {"n", r.n},
            {"rank_p", r.rank_p},
            {"rank_q", r.rank_q},
            {"dims", r.dims},
            {"max_spectral_deviation", r.max_spectral_deviation},
            {"norm_deviation", r.norm_deviation},
            {"norm_lhs", r.norm_lhs},
            {"norm_rhs", r.norm_rhs},
            {"bound_ok", r.bound_ok},
            {"lower_ok", r.lower_ok},
            {"upper_ok", r.upper_ok},
            {"reconstruction_rp", r.reconstruction_rp},
            {"reconstruction_rq", r.reconstruction_rq},
            {"d_unitarity_residual", r.d_unitarity},
            {"pass", r.pass},
            {"error", r.error},
            {"wall_time_ms", r.wall_time_ms},
        });
    }
    return json{
        {"config",
         {{"trials", report.config.trials},
          {"dim_min", report.config.dim_min},
          {"dim_max", report.config.dim_max},
          {"seed", report.config.seed},
          {"tol", report.config.tol},
          {"include_synthesized", report.config.include_synthesized},
          {"parallel", report.config.parallel}}},
        {"records", std::move(records)},
        {"aggregate",
         {{"record_count", report.aggregate.record_count},
          {"pass_count", report.aggregate.pass_count},
          {"max_spectral_deviation", report.aggregate.max_spectral_deviation},
          {"max_norm_deviation", report.aggregate.max_norm_deviation},
          {"max_reconstruction_residual", report.aggregate.max_reconstruction_residual},
          {"max_d_unitarity_residual", report.aggregate.max_d_unitarity_residual},
          {"all_bounds_ok", report.aggregate.all_bounds_ok},
          {"all_inclusions_ok", report.aggregate.all_inclusions_ok},
          {"total_time_ms", report.aggregate.total_time_ms}}},
    };
}

/// Copy of a report JSON with every wall-time field zeroed, for byte-level
/// determinism comparisons.
inline json strip_timing(json report) {
    if (report.contains("records")) {
        for (json& r : report["records"]) r["wall_time_ms"] = 0.0;
    }
    if (report.contains("aggregate")) {
        report["aggregate"]["total_time_ms"] = 0.0;
    }
    return report;
}

}  // namespace twoproj

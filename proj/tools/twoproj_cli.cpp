// Command-line front end: decompose / predict / synthesize / fuzz over JSON
// matrix files. Machine-readable JSON goes to stdout, diagnostics to stderr.
//
// Exit codes: 0 success (and, for predict/fuzz, all checks passed),
// 1 I/O or parse failure, 2 validation failure, 3 numerical classification
// failure.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twoproj/json_io.hpp"
#include "twoproj/twoproj.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitClassification = 3;
constexpr int kExitChecksFailed = 4;

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) {
            throw twoproj::ValidationError("cannot parse number '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<std::size_t> parse_dims_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const long long v = std::stoll(item);
        if (v < 0) {
            throw twoproj::ValidationError("block dimensions must be nonnegative");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

int cmd_decompose(const std::string& input, double class_tol) {
    const twoproj::ProjectionPair pair = twoproj::pair_from_json(twoproj::load_json_file(input));
    const twoproj::HalmosForm form = twoproj::decompose(pair, class_tol);
    const auto [rp, rq] = twoproj::reconstruction_residual(form, pair);
    twoproj::json out{
        {"dims", form.dims.as_array()},
        {"q0_eigs", form.q0_eigs},
        {"d_unitarity_residual", twoproj::d_unitarity_residual(form)},
        {"reconstruction_residuals", {{"rp", rp}, {"rq", rq}}},
    };
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_predict(const std::string& input, double tol) {
    const twoproj::ProjectionPair pair = twoproj::pair_from_json(twoproj::load_json_file(input));
    const twoproj::HalmosForm form = twoproj::decompose(pair);

    const twoproj::SpectrumMultiset predicted = twoproj::predicted_anticommutator_spectrum(form);
    const twoproj::SpectrumMultiset oracle = twoproj::oracle_anticommutator_spectrum(pair);
    const twoproj::MultisetMatch match = twoproj::multiset_match(predicted, oracle, tol);
    const twoproj::NormCheck norm = twoproj::check_norm_formula(pair, tol);
    const bool bound_ok = twoproj::check_bound(oracle, tol);
    const twoproj::InclusionReport inc = twoproj::check_theorem_inclusions(pair, form, tol);

    twoproj::json out{
        {"predicted", predicted.values},
        {"oracle", oracle.values},
        {"multiset_ok", match.ok},
        {"norm_lhs", norm.lhs},
        {"norm_rhs", norm.rhs},
        {"norm_ok", norm.ok},
        {"bound_ok", bound_ok},
        {"inclusion", {{"lower_ok", inc.lower_ok}, {"upper_ok", inc.upper_ok}}},
    };
    std::cout << out.dump(2) << '\n';

    const bool all_ok = match.ok && norm.ok && bound_ok && inc.lower_ok && inc.upper_ok;
    return all_ok ? kExitOk : kExitChecksFailed;
}

int cmd_synthesize(const std::optional<std::string>& q0_list,
                   const std::optional<std::string>& targets_list,
                   const std::optional<std::size_t>& grid_m, const std::string& dims_list,
                   const std::optional<std::uint64_t>& conjugate_seed,
                   const std::string& policy_name, const std::string& output) {
    const int modes = (q0_list ? 1 : 0) + (targets_list ? 1 : 0) + (grid_m ? 1 : 0);
    if (modes != 1) {
        throw twoproj::ValidationError("exactly one of --q0 / --targets / --grid is required");
    }

    twoproj::ProjectionPair pair(twoproj::Matrix::identity(1), twoproj::Matrix::identity(1));
    if (q0_list) {
        twoproj::SynthesisSpec spec;
        spec.q0_targets = parse_double_list(*q0_list);
        const std::vector<std::size_t> dims = parse_dims_list(dims_list);
        if (dims.size() != 4) {
            throw twoproj::ValidationError("--dims expects four values: h1,h2,h5,h6");
        }
        spec.h1 = dims[0];
        spec.h2 = dims[1];
        spec.h5 = dims[2];
        spec.h6 = dims[3];
        spec.conjugate_seed = conjugate_seed;
        pair = twoproj::build_pair(spec);
    } else if (targets_list) {
        const auto policy = policy_name == "largest"
                                ? twoproj::PreimagePolicy::largest_lambda
                                : twoproj::PreimagePolicy::smallest_lambda;
        pair = twoproj::realize_spectrum(parse_double_list(*targets_list), policy);
    } else {
        pair = twoproj::grid_realization(*grid_m);
    }

    twoproj::write_json_file(output, twoproj::pair_to_json(pair));

    const twoproj::HalmosForm form = twoproj::decompose(pair);
    twoproj::json out{
        {"n", pair.n()},
        {"dims", form.dims.as_array()},
        {"q0_eigs", form.q0_eigs},
        {"spectrum", twoproj::oracle_anticommutator_spectrum(pair).values},
    };
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int cmd_fuzz(const twoproj::CampaignConfig& config, const std::optional<std::string>& json_path) {
    const twoproj::VerificationReport report = twoproj::run_campaign(config);
    const twoproj::json out = twoproj::report_to_json(report);
    if (json_path) {
        twoproj::write_json_file(*json_path, out);
    } else {
        std::cout << out.dump(2) << '\n';
    }
    std::cerr << "fuzz: " << report.aggregate.pass_count << "/" << report.aggregate.record_count
              << " trials passed, max spectral deviation "
              << report.aggregate.max_spectral_deviation << '\n';
    return report.aggregate.pass_count == report.aggregate.record_count ? kExitOk
                                                                        : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-projection spectral toolkit"};
    app.require_subcommand(1);

    auto* decompose = app.add_subcommand(
        "decompose", "Canonical six-subspace form of a projection pair");
    std::string dec_input;
    double dec_tol = 1e-8;
    decompose->add_option("--input", dec_input, "pair JSON file")->required();
    decompose->add_option("--tol", dec_tol, "0/1 classification tolerance");

    auto* predict = app.add_subcommand(
        "predict", "Predicted vs brute-force anticommutator spectrum plus law checks");
    std::string pre_input;
    double pre_tol = 1e-8;
    predict->add_option("--input", pre_input, "pair JSON file")->required();
    predict->add_option("--tol", pre_tol, "matching tolerance");

    auto* synthesize = app.add_subcommand(
        "synthesize", "Build a pair realizing prescribed eigenvalues or spectrum targets");
    std::optional<std::string> syn_q0;
    std::optional<std::string> syn_targets;
    std::optional<std::size_t> syn_grid;
    std::string syn_dims = "0,0,0,0";
    std::optional<std::uint64_t> syn_conj_seed;
    std::string syn_policy = "smallest";
    std::string syn_output;
    synthesize->add_option("--q0", syn_q0, "comma list of generic eigenvalues in (0,1)");
    synthesize->add_option("--targets", syn_targets, "comma list of spectrum points in [-1/4,2]");
    synthesize->add_option("--grid", syn_grid, "grid order m for interval coverage");
    synthesize->add_option("--dims", syn_dims, "h1,h2,h5,h6 block dimensions (with --q0)");
    synthesize->add_option("--conjugate-seed", syn_conj_seed,
                           "conjugate by a seeded random orthogonal matrix");
    synthesize->add_option("--policy", syn_policy, "preimage choice: smallest|largest")
        ->check(CLI::IsMember({"smallest", "largest"}));
    synthesize->add_option("--output", syn_output, "pair JSON file to write")->required();

    auto* fuzz = app.add_subcommand("fuzz", "Randomized verification campaign");
    twoproj::CampaignConfig config;
    std::optional<std::string> fuzz_json;
    fuzz->add_option("--trials", config.trials, "number of random trials")->required();
    fuzz->add_option("--dim-min", config.dim_min, "minimum dimension");
    fuzz->add_option("--dim-max", config.dim_max, "maximum dimension");
    fuzz->add_option("--seed", config.seed, "campaign seed");
    fuzz->add_option("--tol", config.tol, "spectral matching tolerance");
    fuzz->add_flag("--synthesized", config.include_synthesized,
                   "append the synthesized h1>0 block");
    fuzz->add_flag("--parallel", config.parallel, "run trials on all cores");
    fuzz->add_option("--json", fuzz_json, "report file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*decompose) return cmd_decompose(dec_input, dec_tol);
        if (*predict) return cmd_predict(pre_input, pre_tol);
        if (*synthesize) {
            return cmd_synthesize(syn_q0, syn_targets, syn_grid, syn_dims, syn_conj_seed,
                                  syn_policy, syn_output);
        }
        if (*fuzz) return cmd_fuzz(config, fuzz_json);
    } catch (const twoproj::ClassificationError& e) {
        std::cerr << "classification error: " << e.what() << '\n';
        return kExitClassification;
    } catch (const twoproj::DegeneracyError& e) {
        std::cerr << "degeneracy error: " << e.what() << '\n';
        return kExitClassification;
    } catch (const twoproj::ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return kExitClassification;
    } catch (const twoproj::Error& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const twoproj::json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

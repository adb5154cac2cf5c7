#ifndef HEATBVM_EXPERIMENT_HPP
#define HEATBVM_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "heatbvm/diagnostics.hpp"
#include "heatbvm/prior.hpp"
#include "heatbvm/sampler.hpp"

namespace heatbvm {

// Declarative description of a batch study: one dataset+chain per
// (alpha, seed) pair. Parsed from the INI-style config grammar documented
// in the README; see presets/fig{1,2,3}.cfg for complete examples.
struct ExperimentConfig {
    // [truth]
    double theta0 = 0.0;
    std::string f0_family;  // only "k^-2" is supported
    double beta = 0.0;
    // [model]
    double T = 0.0;
    double n = 0.0;
    int m = 0;
    double theta_lo = 0.0;
    double theta_hi = 0.0;
    // [prior]
    std::vector<double> alphas;
    // [mcmc]
    std::int64_t iterations = 0;
    std::int64_t burn_in = 0;
    bool proposal_auto = true;   // proposal_sd = auto: tune during burn-in
    double proposal_sd = 0.0;    // fixed kernel width when proposal_auto is false
    double init = 0.0;           // defaults to sqrt(theta_lo*theta_hi) when omitted
    // [run]
    std::vector<std::uint64_t> seeds;
    bool shared_dataset = false;  // one dataset from seeds[0], reused by every run
    std::string out_dir;

    TruthSpec truth() const;
    // Starting width for auto tuning, (theta_hi - theta_lo)/10.
    double initial_proposal_sd() const;
};

// Parses and validates config text. Returns the config when `errors`
// comes back empty; otherwise every violation is reported (field path or
// line number), not just the first.
std::optional<ExperimentConfig> validate_config(const std::string& text,
                                                std::vector<std::string>& errors);

// validate_config, folding the error list into the exception message.
ExperimentConfig parse_config_or_throw(const std::string& text);

// Built-in study configs: "fig1" (one alpha inside the limiting-normal
// window, three datasets), "fig2" (one shared dataset, three alphas
// outside the window), "fig3" (two chains for trace plots). The same
// texts ship as presets/<name>.cfg.
const std::vector<std::string>& preset_names();
const std::string& preset_config(const std::string& name);

struct RunRecord {
    double alpha;
    std::uint64_t seed;
    std::filesystem::path dir;
    DiagnosticsRecord diagnostics;
};

// Runs every (alpha, seed) pair in lexicographic order and writes, per
// run directory <out>/alpha_<a>_seed_<s>/: data.csv (+ .meta.json),
// chain.csv, diagnostics.json, histogram.svg, trace.svg, truth.json.
// Writes <out>/summary.csv across runs. Reruns are byte-identical.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

// Shared by run_experiment and the diag subcommand: chain summary,
// limiting normal centered at the posterior mean, KS and 50-bin TV
// distances over the post-burn-in samples, bias, acceptance, ESS.
DiagnosticsRecord diagnose_run(const Chain& chain, double alpha, std::uint64_t seed,
                               const TruthSpec& truth, double T, double n);

// Per-run truth.json payload, enough to recompute diagnostics from the
// chain CSV alone.
std::string truth_json(const ExperimentConfig& config, double alpha, std::uint64_t seed);

struct TruthFile {
    double alpha;
    std::uint64_t seed;
    double theta0;
    std::string f0_family;
    double beta;
    double T;
    double n;
    int m;
    double theta_lo;
    double theta_hi;
    std::int64_t burn_in;
};

TruthFile load_truth_json(const std::filesystem::path& path);

// Resolves the effective output directory: --out beats the
// HEATBVM_OUT_ROOT environment variable, which prefixes a relative
// config out_dir (absolute config paths ignore the root).
std::filesystem::path resolve_out_dir(const std::string& config_out_dir,
                                      const std::string& cli_out);

}  // namespace heatbvm

#endif

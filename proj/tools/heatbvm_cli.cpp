#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heatbvm/experiment.hpp"
#include "heatbvm/io_util.hpp"
#include "heatbvm/sampler.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

std::string load_config_text(const std::string& config_path, const std::string& preset) {
    if (!preset.empty()) return heatbvm::preset_config(preset);
    return heatbvm::read_text_file(config_path);
}

int cmd_run(const std::string& config_path, const std::string& preset, const std::string& out,
            const std::vector<std::uint64_t>& seeds) {
    std::string text;
    try {
        text = load_config_text(config_path, preset);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }

    std::vector<std::string> errors;
    auto cfg = heatbvm::validate_config(text, errors);
    if (!cfg) {
        for (const std::string& e : errors) std::cerr << "config error: " << e << "\n";
        return kExitInvalid;
    }
    if (!seeds.empty()) {
        const std::set<std::uint64_t> distinct(seeds.begin(), seeds.end());
        if (distinct.size() != seeds.size()) {
            std::cerr << "config error: run.seeds: values must be distinct\n";
            return kExitInvalid;
        }
        cfg->seeds = seeds;
    }
    if (!out.empty()) cfg->out_dir = out;
    cfg->out_dir = heatbvm::resolve_out_dir(cfg->out_dir, "").string();

    try {
        const auto records = heatbvm::run_experiment(*cfg);
        for (const auto& r : records) {
            std::cout << "alpha=" << r.alpha << " seed=" << r.seed
                      << " mean=" << r.diagnostics.posterior_mean
                      << " sd=" << std::sqrt(r.diagnostics.posterior_var)
                      << " ks=" << r.diagnostics.ks << " tv=" << r.diagnostics.tv
                      << " accept=" << r.diagnostics.acceptance_rate
                      << " ess=" << r.diagnostics.ess << "  -> " << r.dir.string() << "\n";
        }
        std::cout << "summary: " << (std::filesystem::path(cfg->out_dir) / "summary.csv").string()
                  << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

int cmd_validate(const std::string& config_path) {
    std::string text;
    try {
        text = heatbvm::read_text_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    std::vector<std::string> errors;
    auto cfg = heatbvm::validate_config(text, errors);
    if (!cfg) {
        for (const std::string& e : errors) std::cerr << "config error: " << e << "\n";
        return kExitInvalid;
    }
    std::cout << "ok: " << cfg->alphas.size() * cfg->seeds.size() << " runs ("
              << cfg->alphas.size() << " alphas x " << cfg->seeds.size() << " seeds), m="
              << cfg->m << ", n=" << cfg->n << ", out=" << cfg->out_dir << "\n";
    return kExitOk;
}

int cmd_diag(const std::string& chain_path, const std::string& truth_path,
             std::int64_t burn_in_override) {
    try {
        const heatbvm::TruthFile t = heatbvm::load_truth_json(truth_path);
        const std::int64_t burn_in = burn_in_override >= 0 ? burn_in_override : t.burn_in;
        const heatbvm::Chain chain = heatbvm::load_chain_csv(chain_path, burn_in);
        const heatbvm::TruthSpec truth(heatbvm::Diffusivity(t.theta0, t.theta_lo, t.theta_hi),
                                       heatbvm::ground_truth_f0(t.m), t.beta);
        const heatbvm::DiagnosticsRecord rec =
            heatbvm::diagnose_run(chain, t.alpha, t.seed, truth, t.T, t.n);
        std::cout << heatbvm::diagnostics_to_json(rec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Posterior sampling and limiting-normal diagnostics for the heat-equation "
                 "diffusivity model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::string out;
    std::vector<std::uint64_t> seeds;

    CLI::App* run = app.add_subcommand("run", "Run an experiment from a config file or preset");
    auto* run_config = run->add_option("--config", config_path, "Config file path");
    auto* run_preset =
        run->add_option("--preset", preset, "Built-in config: fig1, fig2 or fig3");
    run_preset->excludes(run_config);
    run->add_option("--out", out, "Output directory (overrides config and environment)");
    run->add_option("--seeds", seeds, "Comma-separated seed override")->delimiter(',');

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "Check a config file and report issues");
    validate->add_option("--config", validate_path, "Config file path")->required();

    std::string chain_path;
    std::string truth_path;
    std::int64_t burn_in_override = -1;
    CLI::App* diag = app.add_subcommand("diag", "Recompute diagnostics from saved artifacts");
    diag->add_option("--chain", chain_path, "Chain CSV path")->required();
    diag->add_option("--truth", truth_path, "Truth JSON path")->required();
    diag->add_option("--burn-in", burn_in_override, "Override the burn-in recorded in truth JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalid;
    }

    if (run->parsed()) {
        if (config_path.empty() && preset.empty()) {
            std::cerr << "error: run needs --config or --preset\n";
            return kExitInvalid;
        }
        return cmd_run(config_path, preset, out, seeds);
    }
    if (validate->parsed()) return cmd_validate(validate_path);
    if (diag->parsed()) return cmd_diag(chain_path, truth_path, burn_in_override);
    return kExitInvalid;
}

#include "heatbvm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "heatbvm/data_gen.hpp"
#include "heatbvm/io_util.hpp"
#include "heatbvm/posterior.hpp"
#include "heatbvm/svg_plot.hpp"

namespace heatbvm {

namespace {

// ---------------------------------------------------------------- parsing

struct RawValue {
    std::string text;
    int line = 0;
};

using Section = std::map<std::string, RawValue>;
using RawConfig = std::map<std::string, Section>;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

RawConfig parse_ini(const std::string& text, std::vector<std::string>& errors) {
    RawConfig raw;
    std::string section;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                errors.push_back("line " + std::to_string(lineno) + ": malformed section header '" +
                                 t + "'");
                continue;
            }
            section = trim(t.substr(1, t.size() - 2));
            raw[section];
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                             t + "'");
            continue;
        }
        if (section.empty()) {
            errors.push_back("line " + std::to_string(lineno) + ": key outside any [section]");
            continue;
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            errors.push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        auto [it, inserted] = raw[section].emplace(key, RawValue{value, lineno});
        if (!inserted) {
            errors.push_back(section + "." + key + ": duplicate key (line " +
                             std::to_string(lineno) + ")");
        }
    }
    return raw;
}

class Extractor {
  public:
    Extractor(RawConfig& raw, std::vector<std::string>& errors) : raw_(raw), errors_(errors) {}

    const RawValue* find(const std::string& section, const std::string& key) {
        auto sit = raw_.find(section);
        if (sit == raw_.end()) return nullptr;
        auto kit = sit->second.find(key);
        if (kit == sit->second.end()) return nullptr;
        return &kit->second;
    }

    void error(const std::string& path, const std::string& what) {
        errors_.push_back(path + ": " + what);
    }

    bool parse_double(const std::string& s, double& out) {
        try {
            std::size_t used = 0;
            out = std::stod(s, &used);
            return used == s.size() && std::isfinite(out);
        } catch (const std::exception&) {
            return false;
        }
    }

    bool parse_int64(const std::string& s, std::int64_t& out) {
        try {
            std::size_t used = 0;
            out = std::stoll(s, &used);
            return used == s.size();
        } catch (const std::exception&) {
            return false;
        }
    }

    bool parse_uint64(const std::string& s, std::uint64_t& out) {
        if (s.empty() || s[0] == '-') return false;
        try {
            std::size_t used = 0;
            out = std::stoull(s, &used);
            return used == s.size();
        } catch (const std::exception&) {
            return false;
        }
    }

    // Required scalar fields. Return true only when the value parsed; on
    // any failure an error is recorded and the destination is untouched.
    bool require_double(const std::string& sec, const std::string& key, double& out) {
        const RawValue* v = find(sec, key);
        if (v == nullptr) {
            error(sec + "." + key, "missing required value");
            return false;
        }
        if (!parse_double(v->text, out)) {
            error(sec + "." + key, "expected a finite number, got '" + v->text + "'");
            return false;
        }
        return true;
    }

    bool require_int64(const std::string& sec, const std::string& key, std::int64_t& out) {
        const RawValue* v = find(sec, key);
        if (v == nullptr) {
            error(sec + "." + key, "missing required value");
            return false;
        }
        if (!parse_int64(v->text, out)) {
            error(sec + "." + key, "expected an integer, got '" + v->text + "'");
            return false;
        }
        return true;
    }

    bool require_string(const std::string& sec, const std::string& key, std::string& out) {
        const RawValue* v = find(sec, key);
        if (v == nullptr) {
            error(sec + "." + key, "missing required value");
            return false;
        }
        if (v->text.empty()) {
            error(sec + "." + key, "must not be empty");
            return false;
        }
        out = v->text;
        return true;
    }

    std::vector<std::string> split_list(const std::string& s) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                parts.push_back(trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(trim(cur));
        return parts;
    }

    void report_unknown() {
        static const std::map<std::string, std::set<std::string>> known = {
            {"truth", {"theta0", "f0", "beta"}},
            {"model", {"T", "n", "m", "theta_lo", "theta_hi"}},
            {"prior", {"alphas"}},
            {"mcmc", {"iterations", "burn_in", "proposal_sd", "init"}},
            {"run", {"seeds", "shared_dataset", "out_dir"}},
        };
        for (const auto& [sec, entries] : raw_) {
            auto kit = known.find(sec);
            if (kit == known.end()) {
                errors_.push_back("[" + sec + "]: unknown section");
                continue;
            }
            for (const auto& [key, v] : entries) {
                if (kit->second.count(key) == 0) {
                    errors_.push_back(sec + "." + key + ": unknown key (line " +
                                      std::to_string(v.line) + ")");
                }
            }
        }
    }

  private:
    RawConfig& raw_;
    std::vector<std::string>& errors_;
};

// ---------------------------------------------------------------- presets

const std::string kFig1 = R"cfg(# One prior regularity inside the limiting-normal window; a fresh dataset
# per seed, each summarized against the limiting normal.
[truth]
theta0 = 0.01
f0 = k^-2
beta = 1.5

[model]
T = 1.0
n = 1e5
m = 100
theta_lo = 0.001
theta_hi = 0.1

[prior]
alphas = 1.0

[mcmc]
iterations = 100000
burn_in = 1000
proposal_sd = auto
init = 0.02

[run]
seeds = 101, 202, 303
shared_dataset = false
out_dir = runs/fig1
)cfg";

const std::string kFig2 = R"cfg(# Three prior regularities outside the limiting-normal window on one
# shared dataset; the standardized bias grows with alpha.
[truth]
theta0 = 0.01
f0 = k^-2
beta = 1.5

[model]
T = 1.0
n = 1e5
m = 100
theta_lo = 0.001
theta_hi = 0.1

[prior]
alphas = 2.6, 3.0, 3.4

[mcmc]
iterations = 100000
burn_in = 1000
proposal_sd = auto
init = 0.02

[run]
seeds = 404
shared_dataset = true
out_dir = runs/fig2
)cfg";

const std::string kFig3 = R"cfg(# Two independent chains on separate datasets; the trace plots carry the
# burn-in marker.
[truth]
theta0 = 0.01
f0 = k^-2
beta = 1.5

[model]
T = 1.0
n = 1e5
m = 100
theta_lo = 0.001
theta_hi = 0.1

[prior]
alphas = 1.0

[mcmc]
iterations = 100000
burn_in = 1000
proposal_sd = auto
init = 0.02

[run]
seeds = 505, 606
shared_dataset = false
out_dir = runs/fig3
)cfg";

std::string format_alpha(double alpha) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", alpha);
    return buf;
}

}  // namespace

TruthSpec ExperimentConfig::truth() const {
    return TruthSpec(Diffusivity(theta0, theta_lo, theta_hi), ground_truth_f0(m), beta);
}

double ExperimentConfig::initial_proposal_sd() const { return (theta_hi - theta_lo) / 10.0; }

std::optional<ExperimentConfig> validate_config(const std::string& text,
                                                std::vector<std::string>& errors) {
    RawConfig raw = parse_ini(text, errors);
    Extractor ex(raw, errors);
    ExperimentConfig cfg;

    const bool ok_theta0 = ex.require_double("truth", "theta0", cfg.theta0);
    const bool ok_f0 = ex.require_string("truth", "f0", cfg.f0_family);
    const bool ok_beta = ex.require_double("truth", "beta", cfg.beta);
    const bool ok_T = ex.require_double("model", "T", cfg.T);
    const bool ok_n = ex.require_double("model", "n", cfg.n);
    std::int64_t m64 = 0;
    const bool ok_m = ex.require_int64("model", "m", m64);
    const bool ok_lo = ex.require_double("model", "theta_lo", cfg.theta_lo);
    const bool ok_hi = ex.require_double("model", "theta_hi", cfg.theta_hi);
    const bool ok_iters = ex.require_int64("mcmc", "iterations", cfg.iterations);
    const bool ok_burn = ex.require_int64("mcmc", "burn_in", cfg.burn_in);
    ex.require_string("run", "out_dir", cfg.out_dir);

    if (ok_f0 && cfg.f0_family != "k^-2") {
        ex.error("truth.f0", "unsupported family '" + cfg.f0_family + "' (only k^-2)");
    }
    if (ok_beta && !(cfg.beta > 0.0)) ex.error("truth.beta", "must be > 0");
    if (ok_T && !(cfg.T > 0.0)) ex.error("model.T", "must be > 0");
    if (ok_n && !(cfg.n > 0.0)) ex.error("model.n", "must be > 0");
    if (ok_m) {
        if (m64 < 1 || m64 > 1000000) {
            ex.error("model.m", "must be an integer in [1, 1000000]");
        } else {
            cfg.m = static_cast<int>(m64);
        }
    }
    const bool bounds_ok = ok_lo && ok_hi && cfg.theta_lo > 0.0 && cfg.theta_lo < cfg.theta_hi;
    if (ok_lo && ok_hi && !bounds_ok) {
        ex.error("model.theta_lo", "need 0 < theta_lo < theta_hi");
    }
    if (bounds_ok && ok_theta0 &&
        !(cfg.theta0 > cfg.theta_lo && cfg.theta0 < cfg.theta_hi)) {
        ex.error("truth.theta0", "must lie strictly inside (theta_lo, theta_hi)");
    }

    if (const RawValue* v = ex.find("prior", "alphas")) {
        for (const std::string& part : ex.split_list(v->text)) {
            double a = 0.0;
            if (!ex.parse_double(part, a)) {
                ex.error("prior.alphas", "expected a number, got '" + part + "'");
            } else if (!(a > 0.0)) {
                ex.error("prior.alphas", "every alpha must be > 0, got " + part);
            } else {
                cfg.alphas.push_back(a);
            }
        }
        std::set<double> distinct(cfg.alphas.begin(), cfg.alphas.end());
        if (distinct.size() != cfg.alphas.size()) ex.error("prior.alphas", "values must be distinct");
    } else {
        ex.error("prior.alphas", "missing required value");
    }

    if (ok_iters && cfg.iterations < 2) ex.error("mcmc.iterations", "must be >= 2");
    if (ok_burn && cfg.burn_in < 0) ex.error("mcmc.burn_in", "must be >= 0");
    if (ok_iters && ok_burn && cfg.iterations >= 2 && cfg.burn_in >= 0 &&
        cfg.iterations - cfg.burn_in < 100) {
        ex.error("mcmc.burn_in", "need at least 100 post-burn-in iterations");
    }

    if (const RawValue* v = ex.find("mcmc", "proposal_sd")) {
        if (v->text == "auto") {
            cfg.proposal_auto = true;
        } else {
            double sd = 0.0;
            if (!ex.parse_double(v->text, sd) || !(sd > 0.0)) {
                ex.error("mcmc.proposal_sd", "expected 'auto' or a positive number, got '" +
                                                 v->text + "'");
            } else {
                cfg.proposal_auto = false;
                cfg.proposal_sd = sd;
            }
        }
    }

    bool ok_init = false;
    if (const RawValue* v = ex.find("mcmc", "init")) {
        double init = 0.0;
        if (!ex.parse_double(v->text, init)) {
            ex.error("mcmc.init", "expected a number, got '" + v->text + "'");
        } else {
            cfg.init = init;
            ok_init = true;
        }
    } else if (bounds_ok) {
        cfg.init = std::sqrt(cfg.theta_lo * cfg.theta_hi);
        ok_init = true;
    }
    if (bounds_ok && ok_init && !(cfg.init > cfg.theta_lo && cfg.init < cfg.theta_hi)) {
        ex.error("mcmc.init", "must lie strictly inside (theta_lo, theta_hi)");
    }

    if (const RawValue* v = ex.find("run", "seeds")) {
        for (const std::string& part : ex.split_list(v->text)) {
            std::uint64_t s = 0;
            if (!ex.parse_uint64(part, s)) {
                ex.error("run.seeds", "expected a nonnegative integer, got '" + part + "'");
            } else {
                cfg.seeds.push_back(s);
            }
        }
        std::set<std::uint64_t> distinct(cfg.seeds.begin(), cfg.seeds.end());
        if (distinct.size() != cfg.seeds.size()) ex.error("run.seeds", "values must be distinct");
    } else {
        ex.error("run.seeds", "missing required value");
    }

    if (const RawValue* v = ex.find("run", "shared_dataset")) {
        if (v->text == "true") {
            cfg.shared_dataset = true;
        } else if (v->text == "false") {
            cfg.shared_dataset = false;
        } else {
            ex.error("run.shared_dataset", "expected true or false, got '" + v->text + "'");
        }
    }

    ex.report_unknown();

    if (!errors.empty()) return std::nullopt;
    return cfg;
}

ExperimentConfig parse_config_or_throw(const std::string& text) {
    std::vector<std::string> errors;
    auto cfg = validate_config(text, errors);
    if (!cfg) {
        std::string msg = "invalid experiment config:";
        for (const std::string& e : errors) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }
    return *cfg;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"fig1", "fig2", "fig3"};
    return names;
}

const std::string& preset_config(const std::string& name) {
    if (name == "fig1") return kFig1;
    if (name == "fig2") return kFig2;
    if (name == "fig3") return kFig3;
    throw std::invalid_argument("unknown preset '" + name + "' (have fig1, fig2, fig3)");
}

DiagnosticsRecord diagnose_run(const Chain& chain, double alpha, std::uint64_t seed,
                               const TruthSpec& truth, double T, double n) {
    const ChainSummary summary = summarize(chain);
    const LimitingNormal ref = limiting_normal(summary.mean, truth, T, n);
    const std::span<const double> kept(chain.samples.data() + chain.burn_in,
                                       chain.samples.size() -
                                           static_cast<std::size_t>(chain.burn_in));
    const BiasReport bias = bias_report(chain, truth);

    DiagnosticsRecord rec;
    rec.alpha = alpha;
    rec.seed = seed;
    rec.posterior_mean = summary.mean;
    rec.posterior_var = summary.variance;
    rec.ks = ks_distance(kept, ref);
    rec.tv = tv_distance_histogram(kept, ref, 50);
    rec.abs_bias = bias.abs_bias;
    rec.standardized_bias = bias.standardized_bias;
    rec.acceptance_rate = acceptance_rate(chain);
    rec.ess = summary.ess;
    return rec;
}

std::string truth_json(const ExperimentConfig& config, double alpha, std::uint64_t seed) {
    nlohmann::ordered_json j;
    j["alpha"] = alpha;
    j["seed"] = seed;
    j["theta0"] = config.theta0;
    j["f0"] = config.f0_family;
    j["beta"] = config.beta;
    j["T"] = config.T;
    j["n"] = config.n;
    j["m"] = config.m;
    j["theta_lo"] = config.theta_lo;
    j["theta_hi"] = config.theta_hi;
    j["burn_in"] = config.burn_in;
    return j.dump(2) + "\n";
}

TruthFile load_truth_json(const std::filesystem::path& path) {
    const auto j = nlohmann::json::parse(read_text_file(path));
    TruthFile t;
    t.alpha = j.at("alpha").get<double>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.theta0 = j.at("theta0").get<double>();
    t.f0_family = j.at("f0").get<std::string>();
    t.beta = j.at("beta").get<double>();
    t.T = j.at("T").get<double>();
    t.n = j.at("n").get<double>();
    t.m = j.at("m").get<int>();
    t.theta_lo = j.at("theta_lo").get<double>();
    t.theta_hi = j.at("theta_hi").get<double>();
    t.burn_in = j.at("burn_in").get<std::int64_t>();
    if (t.f0_family != "k^-2") {
        throw std::runtime_error("truth json: unsupported f0 family '" + t.f0_family + "'");
    }
    return t;
}

std::filesystem::path resolve_out_dir(const std::string& config_out_dir,
                                      const std::string& cli_out) {
    if (!cli_out.empty()) return cli_out;
    std::filesystem::path p(config_out_dir);
    if (const char* root = std::getenv("HEATBVM_OUT_ROOT"); root != nullptr && *root != '\0') {
        if (p.is_relative()) return std::filesystem::path(root) / p;
    }
    return p;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
    const TruthSpec truth = config.truth();
    const std::filesystem::path out = resolve_out_dir(config.out_dir, "");
    std::filesystem::create_directories(out);

    std::vector<double> alphas = config.alphas;
    std::sort(alphas.begin(), alphas.end());
    std::vector<std::uint64_t> seeds = config.seeds;
    std::sort(seeds.begin(), seeds.end());

    Observations shared;
    if (config.shared_dataset) {
        shared = generate(truth, config.T, config.n, config.m, config.seeds.front());
    }

    std::vector<RunRecord> records;
    for (double alpha : alphas) {
        for (std::uint64_t seed : seeds) {
            const Observations obs = config.shared_dataset
                                         ? shared
                                         : generate(truth, config.T, config.n, config.m, seed);
            const PosteriorTarget target(obs, SeriesPrior(alpha, config.m), config.T,
                                         config.theta_lo, config.theta_hi);

            MhConfig mh;
            mh.iterations = config.iterations;
            mh.burn_in = config.burn_in;
            mh.adapt = config.proposal_auto;
            mh.proposal_sd = config.proposal_auto ? config.initial_proposal_sd()
                                                  : config.proposal_sd;
            mh.init = config.init;
            mh.seed = seed;
            const Chain chain =
                run_mh(mh, [&](double theta) { return log_marginal_theta(theta, target); });

            const DiagnosticsRecord rec =
                diagnose_run(chain, alpha, seed, truth, config.T, config.n);

            const std::filesystem::path dir =
                out / ("alpha_" + format_alpha(alpha) + "_seed_" + std::to_string(seed));
            std::filesystem::create_directories(dir);
            save_observations_csv(obs, dir / "data.csv");
            save_chain_csv(chain, dir / "chain.csv");
            save_diagnostics_json(rec, dir / "diagnostics.json");
            write_text_file(dir / "truth.json", truth_json(config, alpha, seed));

            const LimitingNormal ref =
                limiting_normal(rec.posterior_mean, truth, config.T, config.n);
            const std::span<const double> kept(
                chain.samples.data() + chain.burn_in,
                chain.samples.size() - static_cast<std::size_t>(chain.burn_in));
            save_svg(histogram_svg(kept, ref, config.theta0, 50), dir / "histogram.svg");
            save_svg(trace_svg(chain), dir / "trace.svg");

            records.push_back(RunRecord{alpha, seed, dir, rec});
        }
    }

    std::string summary =
        "alpha,seed,posterior_mean,posterior_var,ks,tv,abs_bias,standardized_bias,"
        "acceptance_rate,ess\n";
    for (const RunRecord& r : records) {
        summary += format_alpha(r.alpha);
        summary += ',';
        summary += std::to_string(r.seed);
        for (double v : {r.diagnostics.posterior_mean, r.diagnostics.posterior_var,
                         r.diagnostics.ks, r.diagnostics.tv, r.diagnostics.abs_bias,
                         r.diagnostics.standardized_bias, r.diagnostics.acceptance_rate,
                         r.diagnostics.ess}) {
            summary += ',';
            summary += format_double(v);
        }
        summary += '\n';
    }
    write_text_file(out / "summary.csv", summary);
    return records;
}

}  // namespace heatbvm

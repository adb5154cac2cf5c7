#include "heatbvm/sampler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "heatbvm/io_util.hpp"
#include "heatbvm/kahan.hpp"
#include "heatbvm/rng.hpp"

namespace heatbvm {

namespace {

void validate(const MhConfig& c) {
    if (c.iterations < 2) throw std::invalid_argument("MhConfig: iterations must be >= 2");
    if (c.burn_in < 0 || c.burn_in >= c.iterations) {
        throw std::invalid_argument("MhConfig: need 0 <= burn_in < iterations");
    }
    if (!(c.proposal_sd > 0.0)) throw std::invalid_argument("MhConfig: proposal_sd must be > 0");
    if (!std::isfinite(c.init)) throw std::invalid_argument("MhConfig: init must be finite");
}

}  // namespace

Chain run_mh(const MhConfig& config, const LogDensity& log_target) {
    validate(config);
    double current = config.init;
    double current_lp = log_target(current);
    if (!std::isfinite(current_lp)) {
        throw std::invalid_argument("run_mh: log target not finite at init");
    }

    GaussianStream proposals(config.seed, Stream::mh_proposal, 0);
    std::mt19937_64 accept_eng(substream_seed(config.seed, Stream::mh_accept, 0));

    Chain chain;
    chain.config = config;
    chain.burn_in = config.burn_in;
    chain.samples.resize(static_cast<std::size_t>(config.iterations));
    chain.accepted_flags.assign(static_cast<std::size_t>(config.iterations), 0);
    chain.samples[0] = current;

    double sd = config.proposal_sd;
    // Burn-in adaptation bookkeeping: batch acceptance over 50-step windows.
    constexpr std::int64_t kAdaptBatch = 50;
    constexpr double kTargetRate = 0.35;
    std::int64_t batch_accepted = 0;
    std::int64_t batch_size = 0;

    for (std::int64_t t = 1; t < config.iterations; ++t) {
        const double proposal = current + sd * proposals.next();
        const double proposal_lp = log_target(proposal);
        const double log_u = std::log(uniform01(accept_eng));
        bool accept = false;
        if (proposal_lp > -std::numeric_limits<double>::infinity()) {
            accept = log_u < proposal_lp - current_lp;
        }
        if (accept) {
            current = proposal;
            current_lp = proposal_lp;
            ++chain.accepted;
            chain.accepted_flags[static_cast<std::size_t>(t)] = 1;
        }
        chain.samples[static_cast<std::size_t>(t)] = current;

        if (config.adapt && t <= config.burn_in) {
            batch_accepted += accept ? 1 : 0;
            ++batch_size;
            if (batch_size == kAdaptBatch || t == config.burn_in) {
                const double rate =
                    static_cast<double>(batch_accepted) / static_cast<double>(batch_size);
                sd *= std::exp(rate - kTargetRate);
                batch_accepted = 0;
                batch_size = 0;
            }
        }
    }
    chain.final_proposal_sd = sd;
    return chain;
}

double acceptance_rate(const Chain& chain) {
    if (chain.config.iterations < 2) {
        throw std::invalid_argument("acceptance_rate: need at least 2 iterations");
    }
    return static_cast<double>(chain.accepted) /
           static_cast<double>(chain.config.iterations - 1);
}

ChainSummary summarize(const Chain& chain) {
    const std::int64_t total = static_cast<std::int64_t>(chain.samples.size());
    const std::int64_t kept = total - chain.burn_in;
    if (kept < 100) {
        throw std::invalid_argument("summarize: need at least 100 post-burn-in samples, have " +
                                    std::to_string(kept));
    }
    const double* s = chain.samples.data() + chain.burn_in;
    const auto nd = static_cast<double>(kept);

    KahanSum mean_acc;
    for (std::int64_t i = 0; i < kept; ++i) mean_acc.add(s[i]);
    const double mean = mean_acc.value() / nd;

    KahanSum var_acc;
    for (std::int64_t i = 0; i < kept; ++i) {
        const double d = s[i] - mean;
        var_acc.add(d * d);
    }
    const double variance = var_acc.value() / nd;

    ChainSummary out{mean, variance, 1.0};
    if (variance <= 0.0) return out;  // degenerate chain

    // Geyer initial-monotone-sequence estimator of the integrated
    // autocorrelation time: sum consecutive autocorrelation pairs while
    // positive, enforcing monotone decrease.
    auto autocorr = [&](std::int64_t lag) {
        KahanSum acc;
        for (std::int64_t i = 0; i + lag < kept; ++i) {
            acc.add((s[i] - mean) * (s[i + lag] - mean));
        }
        return acc.value() / (nd * variance);
    };

    double tau = -1.0;
    double prev_pair = std::numeric_limits<double>::infinity();
    const std::int64_t max_lag = kept - 1;
    for (std::int64_t i = 0;; ++i) {
        if (2 * i >= max_lag) break;
        const double r0 = autocorr(2 * i);
        const double r1 = (2 * i + 1 <= max_lag) ? autocorr(2 * i + 1) : 0.0;
        double pair = r0 + r1;
        if (pair <= 0.0) break;
        if (pair > prev_pair) pair = prev_pair;
        tau += 2.0 * pair;
        prev_pair = pair;
    }
    if (tau < 1.0) tau = 1.0;
    out.ess = std::min(nd, nd / tau);
    if (out.ess < 1.0) out.ess = 1.0;
    return out;
}

void save_chain_csv(const Chain& chain, const std::filesystem::path& path) {
    std::string csv = "t,theta,accepted_flag\n";
    for (std::size_t t = 0; t < chain.samples.size(); ++t) {
        csv += std::to_string(t + 1);
        csv += ',';
        csv += format_double(chain.samples[t]);
        csv += ',';
        csv += chain.accepted_flags[t] ? '1' : '0';
        csv += '\n';
    }
    write_text_file(path, csv);
}

Chain load_chain_csv(const std::filesystem::path& path, std::int64_t burn_in) {
    const std::string text = read_text_file(path);
    std::size_t pos = text.find('\n');
    if (pos == std::string::npos || text.substr(0, pos) != "t,theta,accepted_flag") {
        throw std::runtime_error("chain csv: bad header in " + path.string());
    }
    ++pos;
    Chain chain;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        const std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("chain csv: malformed row '" + line + "'");
        }
        chain.samples.push_back(
            parse_csv_double(line.substr(c1 + 1, c2 - c1 - 1), "chain csv " + path.string()));
        const std::string flag = line.substr(c2 + 1);
        if (flag != "0" && flag != "1") {
            throw std::runtime_error("chain csv: accepted_flag must be 0 or 1, got '" + flag +
                                     "'");
        }
        chain.accepted_flags.push_back(flag == "1" ? 1 : 0);
        if (flag == "1") ++chain.accepted;
    }
    if (chain.samples.empty()) throw std::runtime_error("chain csv: no rows");
    if (burn_in < 0 || burn_in >= static_cast<std::int64_t>(chain.samples.size())) {
        throw std::runtime_error("chain csv: burn_in out of range for loaded chain");
    }
    chain.burn_in = burn_in;
    chain.config.iterations = static_cast<std::int64_t>(chain.samples.size());
    chain.config.burn_in = burn_in;
    chain.config.proposal_sd = 1.0;
    chain.config.init = chain.samples.front();
    return chain;
}

std::vector<double> load_chain_samples_csv(const std::filesystem::path& path) {
    return load_chain_csv(path, 0).samples;
}

}  // namespace heatbvm

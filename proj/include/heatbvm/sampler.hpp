#ifndef HEATBVM_SAMPLER_HPP
#define HEATBVM_SAMPLER_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

namespace heatbvm {

// Random-walk Metropolis-Hastings over a scalar parameter. The target is
// any log-density (up to a constant) that returns -infinity outside its
// support; out-of-support proposals are rejected through that sentinel
// rather than re-drawn, which keeps the symmetric-proposal kernel exact.
struct MhConfig {
    std::int64_t iterations;  // total chain length, >= 2
    std::int64_t burn_in;     // 0 <= burn_in < iterations
    double proposal_sd;       // > 0; fixed value, or the starting point when adapt=true
    // When set, proposal_sd is tuned during burn-in only (multiplicative
    // stochastic approximation toward 0.35 acceptance) and frozen
    // afterwards, so the post-burn-in kernel is a fixed-kernel chain.
    bool adapt = false;
    double init;              // target must be finite here
    std::uint64_t seed = 0;
};

struct Chain {
    std::vector<double> samples;              // length = config.iterations
    std::vector<std::uint8_t> accepted_flags; // accepted_flags[0] is 0 by convention
    std::int64_t accepted = 0;                // total accepted proposals, <= iterations-1
    std::int64_t burn_in = 0;
    MhConfig config{};
    double final_proposal_sd = 0.0;           // equals config.proposal_sd unless adapted
};

struct ChainSummary {
    double mean;
    double variance;
    double ess;
};

using LogDensity = std::function<double(double)>;

// Runs the chain: for t >= 2, propose theta* ~ N(theta_{t-1}, sd^2) and
// accept when log u < log target(theta*) - log target(theta_{t-1}).
// Deterministic per seed. Throws if the target is not finite at init.
Chain run_mh(const MhConfig& config, const LogDensity& log_target);

// accepted / (iterations - 1), in [0,1].
double acceptance_rate(const Chain& chain);

// Mean and variance over the post-burn-in samples, and the effective
// sample size from the initial-monotone-sequence truncation of the
// autocovariance (a constant chain has ess defined as 1). Requires at
// least 100 post-burn-in samples.
ChainSummary summarize(const Chain& chain);

// CSV with header "t,theta,accepted_flag", 17 significant digits.
void save_chain_csv(const Chain& chain, const std::filesystem::path& path);
std::vector<double> load_chain_samples_csv(const std::filesystem::path& path);

// Rebuilds a chain from its CSV (samples, flags, accepted count). burn_in
// is not stored in the CSV and must be supplied by the caller.
Chain load_chain_csv(const std::filesystem::path& path, std::int64_t burn_in);

}  // namespace heatbvm

#endif

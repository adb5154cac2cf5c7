#ifndef HEATBVM_DATA_GEN_HPP
#define HEATBVM_DATA_GEN_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "heatbvm/prior.hpp"
#include "heatbvm/types.hpp"

namespace heatbvm {

// Paired noisy coefficient observations of the initial condition (x1)
// and of the time-T solution (x2), with per-coefficient noise standard
// deviation noise_scale/sqrt(n).
struct Observations {
    std::vector<double> x1;
    std::vector<double> x2;
    double n = 0.0;
    // generation metadata
    double T = 0.0;
    double theta0 = 0.0;
    std::uint64_t seed = 0;

    int truncation() const { return static_cast<int>(x1.size()); }
};

// Draws x1_k = f0_k + noise_scale z1_k / sqrt(n) and
// x2_k = exp(-pi^2 T theta0 k^2) f0_k + noise_scale z2_k / sqrt(n),
// with z1, z2 standard normal from independent substreams of `seed`.
// Pure: identical arguments give identical observations.
// noise_scale defaults to 1; 0 produces noiseless data for debugging.
Observations generate(const TruthSpec& truth, double T, double n, int m, std::uint64_t seed,
                      double noise_scale = 1.0);

// CSV with header "k,x1,x2", one row per coefficient, 17 significant
// digits, plus a JSON sidecar (same stem, ".meta.json") carrying
// n, m, T, theta0 and the seed. Round-trips bit-exactly.
void save_observations_csv(const Observations& obs, const std::filesystem::path& csv_path);
Observations load_observations_csv(const std::filesystem::path& csv_path);

}  // namespace heatbvm

#endif

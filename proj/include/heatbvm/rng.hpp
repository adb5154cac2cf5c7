#ifndef HEATBVM_RNG_HPP
#define HEATBVM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace heatbvm {

// All randomness in the library flows through substreams of a single
// 64-bit master seed. A substream is identified by a (stream, index)
// pair and owns a private std::mt19937_64 engine, so draws are
// reproducible regardless of evaluation order or parallelism.
//
// Substream seed rule: seed(s, stream, index) =
//   mix(mix(s + G*(stream+1)) + G*(index+1))
// with mix = splitmix64 finalizer and G the splitmix64 golden gamma.
enum class Stream : std::uint64_t {
    prior_coefficient = 1,  // one substream per coefficient index
    noise_channel1 = 2,     // observation noise, time-0 channel
    noise_channel2 = 3,     // observation noise, time-T channel
    mh_proposal = 4,
    mh_accept = 5,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t master, Stream stream,
                                       std::uint64_t index) {
    constexpr std::uint64_t g = 0x9e3779b97f4a7c15ULL;
    const std::uint64_t a = splitmix64(master + g * (static_cast<std::uint64_t>(stream) + 1));
    return splitmix64(a + g * (index + 1));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Standard-normal stream via Box-Muller on the engine's uniforms.
// The transform is spelled out (rather than std::normal_distribution)
// so sequences are identical across standard-library implementations.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    GaussianStream(std::uint64_t master, Stream stream, std::uint64_t index)
        : eng_(substream_seed(master, stream, index)) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] keeps the log finite
        const double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform01(eng_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace heatbvm

#endif

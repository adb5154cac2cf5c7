#include "heatbvm/prior.hpp"

#include <cmath>

#include "heatbvm/rng.hpp"

namespace heatbvm {

double sigma_k(double alpha, int k) {
    if (!(alpha > 0.0)) throw std::invalid_argument("sigma_k: alpha must be > 0");
    if (k < 1) throw std::invalid_argument("sigma_k: k must be >= 1");
    return std::pow(static_cast<double>(k + 1), -0.5 - alpha);
}

SineCoefficients sample_prior(const SeriesPrior& prior, std::uint64_t seed) {
    std::vector<double> c(static_cast<std::size_t>(prior.m));
    for (int k = 1; k <= prior.m; ++k) {
        GaussianStream z(seed, Stream::prior_coefficient, static_cast<std::uint64_t>(k));
        c[static_cast<std::size_t>(k - 1)] = sigma_k(prior.alpha, k) * z.next();
    }
    return SineCoefficients(std::move(c));
}

SineCoefficients ground_truth_f0(int m) {
    if (m < 1) throw std::invalid_argument("ground_truth_f0: m must be >= 1");
    std::vector<double> c(static_cast<std::size_t>(m));
    for (int k = 1; k <= m; ++k) {
        c[static_cast<std::size_t>(k - 1)] = 1.0 / (static_cast<double>(k) * static_cast<double>(k));
    }
    return SineCoefficients(std::move(c));
}

bool bvm_zone(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::invalid_argument("bvm_zone: alpha and beta must be > 0");
    }
    return alpha > 0.5 && alpha < 2.0 * beta - 0.5;
}

double contraction_rate(double alpha, double beta, double n) {
    if (!(n >= 1.0)) throw std::invalid_argument("contraction_rate: n must be >= 1");
    const double exponent = std::min(alpha, beta) / (1.0 + 2.0 * alpha);
    return std::pow(n, -exponent);
}

}  // namespace heatbvm

#ifndef HEATBVM_PRIOR_HPP
#define HEATBVM_PRIOR_HPP

#include <cstdint>
#include <stdexcept>

#include "heatbvm/types.hpp"

namespace heatbvm {

// Gaussian series prior on the initial condition: independent
// N(0, sigma_k^2) weights on the sine coefficients with
// sigma_k = (k+1)^(-1/2-alpha). alpha > 0 is the prior regularity.
struct SeriesPrior {
    double alpha;
    int m;

    SeriesPrior(double alpha_, int m_) : alpha(alpha_), m(m_) {
        if (!(alpha > 0.0)) throw std::invalid_argument("SeriesPrior: alpha must be > 0");
        if (m < 1) throw std::invalid_argument("SeriesPrior: m must be >= 1");
    }
};

// The data-generating pair: diffusivity theta0 and nonzero initial
// condition f0 of regularity beta. beta is carried as metadata, not
// estimated from the coefficients.
struct TruthSpec {
    Diffusivity theta0;
    SineCoefficients f0;
    double beta;

    TruthSpec(Diffusivity theta0_, SineCoefficients f0_, double beta_)
        : theta0(theta0_), f0(std::move(f0_)), beta(beta_) {
        if (f0.is_zero()) throw std::invalid_argument("TruthSpec: f0 must be nonzero");
        if (!(beta > 0.0)) throw std::invalid_argument("TruthSpec: beta must be > 0");
    }
};

// Prior standard deviation of coefficient k (1-based).
double sigma_k(double alpha, int k);

// One draw from the series prior. Coefficient k uses the
// (prior_coefficient, k) substream of the given seed, so a fixed seed
// replays exactly and coefficients are independent across k.
SineCoefficients sample_prior(const SeriesPrior& prior, std::uint64_t seed);

// The reference truth family: coefficient k equals k^-2 (regularity 3/2).
SineCoefficients ground_truth_f0(int m);

// Whether the prior regularity alpha admits the limiting-normal posterior
// shape for a truth of regularity beta: strict window 1/2 < alpha < 2 beta - 1/2.
bool bvm_zone(double alpha, double beta);

// Posterior contraction rate n^(-min(alpha,beta)/(1+2 alpha)) for the
// series prior (constant factor omitted).
double contraction_rate(double alpha, double beta, double n);

}  // namespace heatbvm

#endif

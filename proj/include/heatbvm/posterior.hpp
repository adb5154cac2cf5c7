#ifndef HEATBVM_POSTERIOR_HPP
#define HEATBVM_POSTERIOR_HPP

#include <vector>

#include "heatbvm/data_gen.hpp"
#include "heatbvm/prior.hpp"
#include "heatbvm/types.hpp"

namespace heatbvm {

// Marginal posterior of theta under the coefficient observation model
// with a uniform prior on (theta_lo, theta_hi) and the Gaussian series
// prior on the initial condition. Everything is evaluated in natural-log
// space end to end; no unlogged probability is ever materialized.
struct PosteriorTarget {
    Observations obs;
    SeriesPrior prior;
    double T;
    double theta_lo;
    double theta_hi;
    // Opt-in alternative per-coefficient precision using n*a_k instead of
    // n*a_k^2 for the time-T channel. Off by default; the default (squared)
    // form is the one that agrees with direct quadrature of the joint.
    bool unsquared_channel_precision = false;

    PosteriorTarget(Observations obs_, SeriesPrior prior_, double T_, double lo, double hi)
        : obs(std::move(obs_)), prior(prior_), T(T_), theta_lo(lo), theta_hi(hi) {
        if (obs.truncation() != prior.m) {
            throw std::invalid_argument("PosteriorTarget: observation/prior truncation mismatch");
        }
        if (!(lo > 0.0) || !(lo < hi)) {
            throw std::invalid_argument("PosteriorTarget: need 0 < theta_lo < theta_hi");
        }
        if (!(T > 0.0)) throw std::invalid_argument("PosteriorTarget: T must be > 0");
    }
};

// Per-coefficient Gaussian posterior of the initial-condition
// coefficients given theta and the data.
struct CoefficientPosterior {
    std::vector<double> mean;
    std::vector<double> var;
};

// Log of the exact truncated likelihood,
//   m log(n/(2 pi)) - (n/2) sum_k [(x1_k - f_k)^2 + (x2_k - a_k f_k)^2],
// with a_k = exp(-pi^2 T theta k^2).
double log_likelihood(const Diffusivity& theta, const SineCoefficients& f,
                      const Observations& obs, double T);

// Conjugate conditional of f given theta: per coefficient,
//   precision p_k = n + n a_k^2 + (k+1)^(1+2 alpha),
//   mean_k = (n x1_k + n a_k x2_k) / p_k,  var_k = 1/p_k.
CoefficientPosterior conditional_f_posterior(const Diffusivity& theta, const Observations& obs,
                                             const SeriesPrior& prior, double T);

// Log marginal posterior density of theta up to an additive constant:
//   sum_k [ -1/2 log p_k + (n x1_k + n a_k x2_k)^2 / (2 p_k) ],
// and -infinity outside (theta_lo, theta_hi).
double log_marginal_theta(double theta, const PosteriorTarget& target);

}  // namespace heatbvm

#endif

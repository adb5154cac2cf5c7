#include "heatbvm/posterior.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "heatbvm/kahan.hpp"

namespace heatbvm {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

double channel_factor(double theta, double T, int k) {
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    return std::exp(-kPiSq * T * theta * kk);
}

// Prior precision of coefficient k: (k+1)^(1+2 alpha).
double prior_precision(double alpha, int k) {
    return std::pow(static_cast<double>(k + 1), 1.0 + 2.0 * alpha);
}

}  // namespace

double log_likelihood(const Diffusivity& theta, const SineCoefficients& f,
                      const Observations& obs, double T) {
    if (f.truncation() != obs.truncation()) {
        throw std::invalid_argument("log_likelihood: coefficient/observation length mismatch");
    }
    const double n = obs.n;
    KahanSum quad;
    for (int k = 1; k <= obs.truncation(); ++k) {
        const double a = channel_factor(theta.value(), T, k);
        const double r1 = obs.x1[static_cast<std::size_t>(k - 1)] - f.coeff(k);
        const double r2 = obs.x2[static_cast<std::size_t>(k - 1)] - a * f.coeff(k);
        quad.add(r1 * r1 + r2 * r2);
    }
    return static_cast<double>(obs.truncation()) * std::log(n / (2.0 * std::numbers::pi)) -
           0.5 * n * quad.value();
}

CoefficientPosterior conditional_f_posterior(const Diffusivity& theta, const Observations& obs,
                                             const SeriesPrior& prior, double T) {
    if (prior.m != obs.truncation()) {
        throw std::invalid_argument("conditional_f_posterior: prior/observation m mismatch");
    }
    const double n = obs.n;
    CoefficientPosterior post;
    post.mean.resize(static_cast<std::size_t>(prior.m));
    post.var.resize(static_cast<std::size_t>(prior.m));
    for (int k = 1; k <= prior.m; ++k) {
        const double a = channel_factor(theta.value(), T, k);
        const double p = n + n * a * a + prior_precision(prior.alpha, k);
        const double s = n * obs.x1[static_cast<std::size_t>(k - 1)] +
                         n * a * obs.x2[static_cast<std::size_t>(k - 1)];
        post.mean[static_cast<std::size_t>(k - 1)] = s / p;
        post.var[static_cast<std::size_t>(k - 1)] = 1.0 / p;
    }
    return post;
}

double log_marginal_theta(double theta, const PosteriorTarget& target) {
    if (!(theta > target.theta_lo) || !(theta < target.theta_hi)) {
        return -std::numeric_limits<double>::infinity();
    }
    const double n = target.obs.n;
    KahanSum s;
    for (int k = 1; k <= target.obs.truncation(); ++k) {
        const double a = channel_factor(theta, target.T, k);
        const double channel2 = target.unsquared_channel_precision ? n * a : n * a * a;
        const double p = n + channel2 + prior_precision(target.prior.alpha, k);
        const double num = n * target.obs.x1[static_cast<std::size_t>(k - 1)] +
                           n * a * target.obs.x2[static_cast<std::size_t>(k - 1)];
        s.add(-0.5 * std::log(p) + num * num / (2.0 * p));
    }
    return s.value();
}

}  // namespace heatbvm

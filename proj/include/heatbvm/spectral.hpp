#ifndef HEATBVM_SPECTRAL_HPP
#define HEATBVM_SPECTRAL_HPP

#include "heatbvm/types.hpp"

namespace heatbvm {

// Exact spectral representations of the heat-equation forward operator
// on [0,1] with Dirichlet boundaries. All operators diagonalize on the
// sine basis: the forward map multiplies coefficient k by
// exp(-theta pi^2 T k^2), its theta-derivative by
// -pi^2 T k^2 exp(-theta pi^2 T k^2). Exponents below the double
// underflow threshold evaluate to exactly 0, which is exact to machine
// precision for these series.

// Forward solution operator applied to a coefficient sequence.
SineCoefficients apply_k(const SineCoefficients& f, const Diffusivity& theta, double T);

// Derivative of the forward operator with respect to theta.
SineCoefficients apply_kdot(const SineCoefficients& f, const Diffusivity& theta, double T);

// Temperature u(x,t) of the truncated series solution with initial
// condition f. Requires x in [0,1] and t >= 0; u(0,t) = u(1,t) = 0 exactly.
double heat_solution(const SineCoefficients& f, const Diffusivity& theta, double x, double t);

// Sobolev-type norm: sum over k <= m of k^(2 eta) f_k^2. eta = 0 is the
// squared L2 norm.
double sobolev_norm_sq(const SineCoefficients& f, double eta);

// Inner product on R x L^2 used by the semiparametric analysis:
//   <(a1,g1),(a2,g2)> = <g1,g2> + <K g1 + a1 Kdot f0, K g2 + a2 Kdot f0>
// with K, Kdot evaluated at theta0. g1, g2, f0 must share truncation.
double l_inner_product(double a1, const SineCoefficients& g1, double a2,
                       const SineCoefficients& g2, const Diffusivity& theta0,
                       const SineCoefficients& f0, double T);

// Least favourable direction: coefficient k is
//   -pi^2 T k^2 f0_k w_k,   w_k = q_k / (1 + q_k),   q_k = exp(-2 theta0 pi^2 T k^2).
SineCoefficients least_favourable_direction(const Diffusivity& theta0,
                                            const SineCoefficients& f0, double T);

// Fisher information about theta when f0 is known: ||Kdot f0||^2.
double parametric_fisher(const Diffusivity& theta0, const SineCoefficients& f0, double T);

// Efficient Fisher information (least favourable submodel):
//   sum_k (pi^2 T k^2)^2 f0_k^2 q_k / (1 + q_k).
// Strictly positive and strictly below parametric_fisher for f0 != 0.
double efficient_fisher(const Diffusivity& theta0, const SineCoefficients& f0, double T);

// Exact L2 -> S^eta operator norm of K_theta1 - K_theta2 at truncation m:
//   sup over k <= m of k^eta |exp(-theta1 pi^2 T k^2) - exp(-theta2 pi^2 T k^2)|.
double operator_diff_norm(const Diffusivity& theta1, const Diffusivity& theta2, double T,
                          double eta, int m);

// Exact L2 -> S^eta norm of the first-order Taylor remainder
// K_theta - K_theta0 - (theta - theta0) Kdot_theta0 at truncation m.
double taylor_remainder_norm(const Diffusivity& theta, const Diffusivity& theta0, double T,
                             double eta, int m);

}  // namespace heatbvm

#endif

#include "heatbvm/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heatbvm {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

// exp(-theta pi^2 T k^2); underflows to exactly 0 for exponents below
// about -745, the double subnormal limit.
double forward_factor(double theta, double T, int k) {
    const double kk = static_cast<double>(k) * static_cast<double>(k);
    return std::exp(-theta * kPiSq * T * kk);
}

void require_same_truncation(const SineCoefficients& a, const SineCoefficients& b,
                             const char* what) {
    if (a.truncation() != b.truncation()) {
        throw std::invalid_argument(std::string(what) + ": truncation mismatch");
    }
}

}  // namespace

SineCoefficients apply_k(const SineCoefficients& f, const Diffusivity& theta, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("apply_k: T must be > 0");
    std::vector<double> out(f.values().begin(), f.values().end());
    for (int k = 1; k <= f.truncation(); ++k) {
        out[static_cast<std::size_t>(k - 1)] *= forward_factor(theta.value(), T, k);
    }
    return SineCoefficients(std::move(out));
}

SineCoefficients apply_kdot(const SineCoefficients& f, const Diffusivity& theta, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("apply_kdot: T must be > 0");
    std::vector<double> out(f.values().begin(), f.values().end());
    for (int k = 1; k <= f.truncation(); ++k) {
        const double kk = static_cast<double>(k) * static_cast<double>(k);
        out[static_cast<std::size_t>(k - 1)] *=
            -kPiSq * T * kk * forward_factor(theta.value(), T, k);
    }
    return SineCoefficients(std::move(out));
}

double heat_solution(const SineCoefficients& f, const Diffusivity& theta, double x, double t) {
    if (!(x >= 0.0) || !(x <= 1.0)) {
        throw std::domain_error("heat_solution: x must lie in [0,1]");
    }
    if (!(t >= 0.0)) throw std::domain_error("heat_solution: t must be >= 0");
    if (x == 0.0 || x == 1.0) return 0.0;  // Dirichlet boundary, exact
    KahanSum s;
    for (int k = 1; k <= f.truncation(); ++k) {
        const double kk = static_cast<double>(k) * static_cast<double>(k);
        s.add(f.coeff(k) * std::exp(-theta.value() * kPiSq * t * kk) *
              std::sin(static_cast<double>(k) * std::numbers::pi * x));
    }
    return std::numbers::sqrt2 * s.value();
}

double sobolev_norm_sq(const SineCoefficients& f, double eta) {
    if (!(eta >= 0.0)) throw std::invalid_argument("sobolev_norm_sq: eta must be >= 0");
    KahanSum s;
    for (int k = 1; k <= f.truncation(); ++k) {
        const double c = f.coeff(k);
        s.add(std::pow(static_cast<double>(k), 2.0 * eta) * c * c);
    }
    return s.value();
}

double l_inner_product(double a1, const SineCoefficients& g1, double a2,
                       const SineCoefficients& g2, const Diffusivity& theta0,
                       const SineCoefficients& f0, double T) {
    require_same_truncation(g1, g2, "l_inner_product");
    require_same_truncation(g1, f0, "l_inner_product");
    const SineCoefficients kg1 = apply_k(g1, theta0, T);
    const SineCoefficients kg2 = apply_k(g2, theta0, T);
    const SineCoefficients kdot_f0 = apply_kdot(f0, theta0, T);
    KahanSum s;
    for (int k = 1; k <= g1.truncation(); ++k) {
        s.add(g1.coeff(k) * g2.coeff(k));
        s.add((kg1.coeff(k) + a1 * kdot_f0.coeff(k)) * (kg2.coeff(k) + a2 * kdot_f0.coeff(k)));
    }
    return s.value();
}

SineCoefficients least_favourable_direction(const Diffusivity& theta0,
                                            const SineCoefficients& f0, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("least_favourable_direction: T must be > 0");
    std::vector<double> out(f0.values().begin(), f0.values().end());
    for (int k = 1; k <= f0.truncation(); ++k) {
        const double kk = static_cast<double>(k) * static_cast<double>(k);
        const double q = std::exp(-2.0 * theta0.value() * kPiSq * T * kk);
        out[static_cast<std::size_t>(k - 1)] *= -kPiSq * T * kk * q / (1.0 + q);
    }
    return SineCoefficients(std::move(out));
}

double parametric_fisher(const Diffusivity& theta0, const SineCoefficients& f0, double T) {
    return apply_kdot(f0, theta0, T).l2_norm_sq();
}

double efficient_fisher(const Diffusivity& theta0, const SineCoefficients& f0, double T) {
    if (!(T > 0.0)) throw std::invalid_argument("efficient_fisher: T must be > 0");
    KahanSum s;
    for (int k = 1; k <= f0.truncation(); ++k) {
        const double kk = static_cast<double>(k) * static_cast<double>(k);
        const double d = kPiSq * T * kk * f0.coeff(k);
        const double q = std::exp(-2.0 * theta0.value() * kPiSq * T * kk);
        s.add(d * d * q / (1.0 + q));
    }
    return s.value();
}

double operator_diff_norm(const Diffusivity& theta1, const Diffusivity& theta2, double T,
                          double eta, int m) {
    if (!(eta >= 0.0)) throw std::invalid_argument("operator_diff_norm: eta must be >= 0");
    // Diagonal operator: the norm is the exact supremum over k <= m.
    double sup = 0.0;
    for (int k = 1; k <= m; ++k) {
        const double v = std::pow(static_cast<double>(k), eta) *
                         std::abs(forward_factor(theta1.value(), T, k) -
                                  forward_factor(theta2.value(), T, k));
        if (v > sup) sup = v;
    }
    return sup;
}

double taylor_remainder_norm(const Diffusivity& theta, const Diffusivity& theta0, double T,
                             double eta, int m) {
    if (!(eta >= 0.0)) throw std::invalid_argument("taylor_remainder_norm: eta must be >= 0");
    double sup = 0.0;
    for (int k = 1; k <= m; ++k) {
        const double kk = static_cast<double>(k) * static_cast<double>(k);
        const double base = forward_factor(theta0.value(), T, k);
        const double v = std::pow(static_cast<double>(k), eta) *
                         std::abs(forward_factor(theta.value(), T, k) - base +
                                  (theta.value() - theta0.value()) * kPiSq * T * kk * base);
        if (v > sup) sup = v;
    }
    return sup;
}

}  // namespace heatbvm

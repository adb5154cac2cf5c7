#ifndef HEATBVM_TYPES_HPP
#define HEATBVM_TYPES_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatbvm/kahan.hpp"

namespace heatbvm {

// Truncated coefficient sequence of a function on [0,1] in the sine
// basis e_k(x) = sqrt(2) sin(k pi x), k = 1..m. Immutable after
// construction; every coefficient is finite.
class SineCoefficients {
public:
    explicit SineCoefficients(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw std::invalid_argument("SineCoefficients: truncation level m must be >= 1");
        }
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!std::isfinite(coeffs_[i])) {
                throw std::invalid_argument("SineCoefficients: coefficient " +
                                            std::to_string(i + 1) + " is not finite");
            }
        }
    }

    static SineCoefficients zeros(int m) {
        return SineCoefficients(std::vector<double>(static_cast<std::size_t>(m), 0.0));
    }

    // Basis element e_k as a coefficient sequence (1-based k <= m).
    static SineCoefficients unit(int m, int k) {
        if (k < 1 || k > m) {
            throw std::invalid_argument("SineCoefficients::unit: k out of range");
        }
        std::vector<double> c(static_cast<std::size_t>(m), 0.0);
        c[static_cast<std::size_t>(k - 1)] = 1.0;
        return SineCoefficients(std::move(c));
    }

    int truncation() const { return static_cast<int>(coeffs_.size()); }

    // 1-based coefficient access.
    double coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k - 1)); }

    std::span<const double> values() const { return coeffs_; }

    double l2_norm_sq() const {
        KahanSum s;
        for (double c : coeffs_) s.add(c * c);
        return s.value();
    }

    double l2_norm() const { return std::sqrt(l2_norm_sq()); }

    bool is_zero() const {
        for (double c : coeffs_) {
            if (c != 0.0) return false;
        }
        return true;
    }

private:
    std::vector<double> coeffs_;
};

// The parameter interval Theta = (theta_lo, theta_hi), final time T,
// signal-to-noise ratio n and truncation level m.
struct ModelConfig {
    double theta_lo;
    double theta_hi;
    double T;
    double n;
    int m;

    ModelConfig(double lo, double hi, double final_time, double snr, int trunc)
        : theta_lo(lo), theta_hi(hi), T(final_time), n(snr), m(trunc) {
        if (!(lo > 0.0) || !(lo < hi) || !std::isfinite(hi)) {
            throw std::invalid_argument("ModelConfig: need 0 < theta_lo < theta_hi < inf");
        }
        if (!(final_time > 0.0)) throw std::invalid_argument("ModelConfig: T must be > 0");
        if (!(snr > 0.0)) throw std::invalid_argument("ModelConfig: n must be > 0");
        if (trunc < 1) throw std::invalid_argument("ModelConfig: m must be >= 1");
    }
};

// A diffusivity value validated to lie strictly inside (theta_lo, theta_hi).
class Diffusivity {
public:
    Diffusivity(double value, double theta_lo, double theta_hi) : value_(value) {
        if (!(theta_lo > 0.0) || !(theta_lo < theta_hi)) {
            throw std::invalid_argument("Diffusivity: need 0 < theta_lo < theta_hi");
        }
        if (!(value > theta_lo) || !(value < theta_hi)) {
            throw std::invalid_argument("Diffusivity: value " + std::to_string(value) +
                                        " not strictly inside (" + std::to_string(theta_lo) +
                                        ", " + std::to_string(theta_hi) + ")");
        }
    }

    Diffusivity(double value, const ModelConfig& cfg)
        : Diffusivity(value, cfg.theta_lo, cfg.theta_hi) {}

    double value() const { return value_; }

private:
    double value_;
};

}  // namespace heatbvm

#endif

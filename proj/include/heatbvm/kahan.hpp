#ifndef HEATBVM_KAHAN_HPP
#define HEATBVM_KAHAN_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace heatbvm {

// Neumaier-compensated accumulator. Relative error of the final sum is
// bounded by ~2*eps plus eps per term, well inside the m*eps contract
// assumed for all series sums in this library.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

inline double compensated_dot(std::span<const double> a, std::span<const double> b) {
    KahanSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
    return s.value();
}

}  // namespace heatbvm

#endif

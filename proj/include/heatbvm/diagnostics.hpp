#ifndef HEATBVM_DIAGNOSTICS_HPP
#define HEATBVM_DIAGNOSTICS_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "heatbvm/prior.hpp"
#include "heatbvm/sampler.hpp"
#include "heatbvm/types.hpp"

namespace heatbvm {

// The reference normal the marginal posterior is compared against:
// centered at an efficient estimator (the posterior mean) with variance
// the inverse efficient Fisher information scaled by 1/n.
struct LimitingNormal {
    double center;
    double variance;

    double sd() const;
    double cdf(double x) const;
};

LimitingNormal limiting_normal(double center, const TruthSpec& truth, double T, double n);

// One-sample Kolmogorov-Smirnov statistic of the samples against the
// reference normal, sup_x |F_emp(x) - Phi((x - center)/sd)|. Needs >= 100
// samples.
double ks_distance(std::span<const double> samples, const LimitingNormal& ref);

// Total variation distance estimated on equal-width bins spanning
// center +- 6 reference sd; sample and normal mass outside that window
// contribute through two tail cells. Needs bins >= 10 and >= 1000 samples.
double tv_distance_histogram(std::span<const double> samples, const LimitingNormal& ref,
                             int bins);

struct BiasReport {
    double abs_bias;          // |posterior mean - theta0|
    double standardized_bias; // abs_bias / posterior sd (0 for a chain constant at theta0)
};

BiasReport bias_report(const Chain& chain, const TruthSpec& truth);

// Flat per-run diagnostics record, serialized as a JSON object.
struct DiagnosticsRecord {
    double alpha = 0.0;
    std::uint64_t seed = 0;
    double posterior_mean = 0.0;
    double posterior_var = 0.0;
    double ks = 0.0;
    double tv = 0.0;
    double abs_bias = 0.0;
    double standardized_bias = 0.0;
    double acceptance_rate = 0.0;
    double ess = 0.0;
};

std::string diagnostics_to_json(const DiagnosticsRecord& rec);
void save_diagnostics_json(const DiagnosticsRecord& rec, const std::filesystem::path& path);

}  // namespace heatbvm

#endif

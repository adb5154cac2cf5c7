#include "heatbvm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "heatbvm/io_util.hpp"
#include "heatbvm/kahan.hpp"
#include "heatbvm/spectral.hpp"

namespace heatbvm {

double LimitingNormal::sd() const { return std::sqrt(variance); }

double LimitingNormal::cdf(double x) const {
    const double z = (x - center) / sd();
    return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

LimitingNormal limiting_normal(double center, const TruthSpec& truth, double T, double n) {
    if (!std::isfinite(center)) {
        throw std::invalid_argument("limiting_normal: center must be finite");
    }
    if (!(T > 0.0)) {
        throw std::invalid_argument("limiting_normal: T must be positive");
    }
    if (!(n > 0.0)) {
        throw std::invalid_argument("limiting_normal: n must be positive");
    }
    const double info = efficient_fisher(truth.theta0, truth.f0, T);
    if (!(info > 0.0)) {
        throw std::invalid_argument("limiting_normal: efficient information must be positive");
    }
    return LimitingNormal{center, 1.0 / (n * info)};
}

double ks_distance(std::span<const double> samples, const LimitingNormal& ref) {
    if (samples.size() < 100) {
        throw std::invalid_argument("ks_distance: needs at least 100 samples");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double nd = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double phi = ref.cdf(sorted[i]);
        const double below = phi - static_cast<double>(i) / nd;
        const double above = static_cast<double>(i + 1) / nd - phi;
        d = std::max(d, std::max(below, above));
    }
    return d;
}

double tv_distance_histogram(std::span<const double> samples, const LimitingNormal& ref,
                             int bins) {
    if (bins < 10) {
        throw std::invalid_argument("tv_distance_histogram: needs at least 10 bins");
    }
    if (samples.size() < 1000) {
        throw std::invalid_argument("tv_distance_histogram: needs at least 1000 samples");
    }
    const double sd = ref.sd();
    const double lo = ref.center - 6.0 * sd;
    const double hi = ref.center + 6.0 * sd;
    const double width = (hi - lo) / static_cast<double>(bins);

    // cells [0, bins): interior; cell bins: left tail; cell bins+1: right tail
    std::vector<double> counts(static_cast<std::size_t>(bins) + 2, 0.0);
    for (double x : samples) {
        if (x < lo) {
            counts[static_cast<std::size_t>(bins)] += 1.0;
        } else if (x >= hi) {
            counts[static_cast<std::size_t>(bins) + 1] += 1.0;
        } else {
            auto idx = static_cast<std::size_t>((x - lo) / width);
            if (idx >= static_cast<std::size_t>(bins)) idx = static_cast<std::size_t>(bins) - 1;
            counts[idx] += 1.0;
        }
    }

    const double nd = static_cast<double>(samples.size());
    KahanSum acc;
    for (int b = 0; b < bins; ++b) {
        const double a = lo + width * static_cast<double>(b);
        const double q = ref.cdf(a + width) - ref.cdf(a);
        acc.add(std::abs(counts[static_cast<std::size_t>(b)] / nd - q));
    }
    acc.add(std::abs(counts[static_cast<std::size_t>(bins)] / nd - ref.cdf(lo)));
    acc.add(std::abs(counts[static_cast<std::size_t>(bins) + 1] / nd - (1.0 - ref.cdf(hi))));
    return 0.5 * acc.value();
}

BiasReport bias_report(const Chain& chain, const TruthSpec& truth) {
    const ChainSummary s = summarize(chain);
    const double abs_bias = std::abs(s.mean - truth.theta0.value());
    const double sd = std::sqrt(s.variance);
    double standardized = 0.0;
    if (sd > 0.0) {
        standardized = abs_bias / sd;
    } else if (abs_bias > 0.0) {
        standardized = std::numeric_limits<double>::infinity();
    }
    return BiasReport{abs_bias, standardized};
}

std::string diagnostics_to_json(const DiagnosticsRecord& rec) {
    nlohmann::ordered_json j;
    j["alpha"] = rec.alpha;
    j["seed"] = rec.seed;
    j["posterior_mean"] = rec.posterior_mean;
    j["posterior_var"] = rec.posterior_var;
    j["ks"] = rec.ks;
    j["tv"] = rec.tv;
    j["abs_bias"] = rec.abs_bias;
    j["standardized_bias"] = rec.standardized_bias;
    j["acceptance_rate"] = rec.acceptance_rate;
    j["ess"] = rec.ess;
    return j.dump(2) + "\n";
}

void save_diagnostics_json(const DiagnosticsRecord& rec, const std::filesystem::path& path) {
    write_text_file(path, diagnostics_to_json(rec));
}

}  // namespace heatbvm

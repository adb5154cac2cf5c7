// Acceptance gate: every release-blocking behavior of the toolkit, one
// criterion per line. Each criterion runs independently, catches its own
// failures, and prints [PASS]/[FAIL]; the exit status is nonzero when any
// criterion fails. Tolerances are fixed here, not configurable.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heatbvm/data_gen.hpp"
#include "heatbvm/diagnostics.hpp"
#include "heatbvm/experiment.hpp"
#include "heatbvm/io_util.hpp"
#include "heatbvm/kahan.hpp"
#include "heatbvm/posterior.hpp"
#include "heatbvm/prior.hpp"
#include "heatbvm/rng.hpp"
#include "heatbvm/sampler.hpp"
#include "heatbvm/spectral.hpp"
#include "support/quadrature_oracle.hpp"

using namespace heatbvm;

namespace {

constexpr double kLo = 0.001;
constexpr double kHi = 0.1;

std::string fail(const char* fmt, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    return buf;
}

double uniform_in(std::mt19937_64& eng, double lo, double hi) {
    return lo + uniform01(eng) * (hi - lo);
}

SineCoefficients random_coeffs(GaussianStream& g, int m) {
    std::vector<double> c(static_cast<std::size_t>(m));
    for (double& v : c) v = g.next();
    return SineCoefficients(std::move(c));
}

TruthSpec reference_truth(int m) {
    return TruthSpec(Diffusivity(0.01, kLo, kHi), ground_truth_f0(m), 1.5);
}

// The production chain configuration shared by criteria 5 and 6.
Chain production_chain(const PosteriorTarget& target, std::uint64_t seed) {
    MhConfig mh;
    mh.iterations = 100000;
    mh.burn_in = 1000;
    mh.adapt = true;
    mh.proposal_sd = (kHi - kLo) / 10.0;
    mh.init = 0.02;
    mh.seed = seed;
    return run_mh(mh, [&](double theta) { return log_marginal_theta(theta, target); });
}

// ------------------------------------------------------------ criterion 1

std::string criterion_marginal_vs_quadrature() {
    const double alphas[] = {0.6, 1.0, 1.7, 2.6, 3.4};
    double worst = 0.0;
    for (int d = 0; d < 20; ++d) {
        const int m = 1 + d % 3;
        const double n = (d % 2 == 0) ? 1e2 : 1e4;
        const double alpha = alphas[d % 5];
        const auto truth = reference_truth(m);
        const auto obs = generate(truth, 1.0, n, m, 9000 + static_cast<std::uint64_t>(d));
        const SeriesPrior prior(alpha, m);
        const PosteriorTarget target(obs, prior, 1.0, kLo, kHi);

        std::vector<double> impl(25), quad(25);
        for (int i = 0; i < 25; ++i) {
            const double theta = kLo + (kHi - kLo) * (i + 0.5) / 25.0;
            impl[static_cast<std::size_t>(i)] = log_marginal_theta(theta, target);
            quad[static_cast<std::size_t>(i)] =
                test_oracle::log_marginal_quadrature(obs, prior, theta, 1.0);
        }
        KahanSum dsum, qsum;
        for (int i = 0; i < 25; ++i) {
            dsum.add(impl[static_cast<std::size_t>(i)] - quad[static_cast<std::size_t>(i)]);
            qsum.add(quad[static_cast<std::size_t>(i)]);
        }
        const double offset = dsum.value() / 25.0;
        const double qmean = qsum.value() / 25.0;
        double spread = 1.0;
        double dev = 0.0;
        for (int i = 0; i < 25; ++i) {
            spread = std::max(spread, std::abs(quad[static_cast<std::size_t>(i)] - qmean));
            dev = std::max(dev, std::abs(impl[static_cast<std::size_t>(i)] -
                                         quad[static_cast<std::size_t>(i)] - offset));
        }
        worst = std::max(worst, dev / spread);
        if (dev > 1e-6 * spread) {
            return fail("dataset deviation %.3e exceeds 1e-6 of the grid spread %.3e", dev,
                        spread);
        }
    }
    std::printf("       worst normalized deviation from quadrature: %.3e\n", worst);
    return "";
}

// ------------------------------------------------------------ criterion 2

std::string criterion_operator_bounds() {
    std::mt19937_64 eng(substream_seed(5001, Stream::mh_accept, 0));
    GaussianStream g(5001, Stream::prior_coefficient, 0);
    const int m = 200;
    const double slack = 1.0 + 1e-12;
    for (int trial = 0; trial < 1000; ++trial) {
        const double a = uniform_in(eng, 0.0011, 0.0999);
        const double b = uniform_in(eng, 0.0011, 0.0999);
        const double T = uniform_in(eng, 0.5, 2.0);
        const Diffusivity th(a, kLo, kHi);
        const Diffusivity th0(b, kLo, kHi);
        const auto f1 = random_coeffs(g, m);
        const auto f2 = random_coeffs(g, m);

        // Contraction of the forward map and scale of its derivative.
        if (apply_k(f1, th, T).l2_norm() > f1.l2_norm() * slack) {
            return fail("forward norm %.6g exceeds input norm %.6g", apply_k(f1, th, T).l2_norm(),
                        f1.l2_norm());
        }
        const double kdot_bound = f1.l2_norm() / (2.0 * a);
        if (apply_kdot(f1, th, T).l2_norm() > kdot_bound * slack + 1e-12) {
            return fail("derivative norm %.6g exceeds bound %.6g",
                        apply_kdot(f1, th, T).l2_norm(), kdot_bound);
        }

        for (double eta : {0.0, 1.0, 2.0}) {
            const double peta = std::pow(std::numbers::pi, eta) * std::pow(T, eta / 2.0);
            // Parameter Lipschitz bound on the operator difference.
            const double diff = operator_diff_norm(th, th0, T, eta, m);
            const double diff_bound =
                std::abs(a - b) / peta *
                std::pow((2.0 + eta) / (2.0 * std::numbers::e * std::min(a, b)),
                         (2.0 + eta) / 2.0);
            if (diff > diff_bound * slack + 1e-12) {
                return fail("operator difference %.6g exceeds bound %.6g", diff, diff_bound);
            }
            // Quadratic remainder bound, constant anchored at min(a, b);
            // when a >= b this is exactly the bound anchored at b.
            const double rem = taylor_remainder_norm(th, th0, T, eta, m);
            const double rem_bound =
                (a - b) * (a - b) / (2.0 * peta) *
                std::pow((4.0 + eta) / (2.0 * std::numbers::e * std::min(a, b)),
                         (4.0 + eta) / 2.0);
            if (rem > rem_bound * slack + 1e-12) {
                return fail("remainder norm %.6g exceeds bound %.6g", rem, rem_bound);
            }
        }

        // Joint Lipschitz bound in (theta, f).
        const auto k1 = apply_k(f1, th, T);
        const auto k2 = apply_k(f2, th0, T);
        KahanSum out_sq, in_sq;
        for (int k = 1; k <= m; ++k) {
            const double od = k1.coeff(k) - k2.coeff(k);
            const double id = f1.coeff(k) - f2.coeff(k);
            out_sq.add(od * od);
            in_sq.add(id * id);
        }
        const double lip_bound = std::sqrt(in_sq.value()) +
                                 std::numbers::pi / 2.0 * std::sqrt(T / std::min(a, b)) *
                                     std::abs(a - b) * std::min(f1.l2_norm(), f2.l2_norm());
        if (std::sqrt(out_sq.value()) > lip_bound * slack + 1e-12) {
            return fail("joint Lipschitz lhs %.6g exceeds bound %.6g", std::sqrt(out_sq.value()),
                        lip_bound);
        }

        // Identifiability: the data separation dominates each mode's term.
        const auto f0 = reference_truth(m).f0;
        const auto ka = apply_k(f0, th, T);
        const auto kb = apply_k(f0, th0, T);
        KahanSum sep_sq;
        for (int k = 1; k <= m; ++k) {
            const double d = ka.coeff(k) - kb.coeff(k);
            sep_sq.add(d * d);
        }
        const double sep = std::sqrt(sep_sq.value());
        for (int k = 1; k <= m; ++k) {
            const double lower = T *
                                 std::exp(-std::max(a, b) * std::numbers::pi * std::numbers::pi *
                                          T * static_cast<double>(k) * static_cast<double>(k)) *
                                 std::abs(f0.coeff(k)) * std::abs(a - b);
            if (sep < lower / slack - 1e-12) {
                return fail("separation %.6g below mode lower bound %.6g", sep, lower);
            }
        }
    }
    return "";
}

// ------------------------------------------------------------ criterion 3

std::string criterion_information_identities() {
    GaussianStream g(5002, Stream::prior_coefficient, 0);
    std::mt19937_64 eng(substream_seed(5002, Stream::mh_accept, 0));
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 50;
        const auto f0 = random_coeffs(g, m);
        const double tv = uniform_in(eng, 0.0011, 0.0999);
        const double T = uniform_in(eng, 0.5, 2.0);
        const Diffusivity th(tv, kLo, kHi);

        const double closed = efficient_fisher(th, f0, T);

        const auto gamma = least_favourable_direction(th, f0, T);
        std::vector<double> neg(gamma.values().begin(), gamma.values().end());
        for (double& v : neg) v = -v;
        const SineCoefficients minus_gamma(std::move(neg));
        const double via_norm = l_inner_product(1.0, minus_gamma, 1.0, minus_gamma, th, f0, T);

        const auto kdot_f0 = apply_kdot(f0, th, T);
        const auto k_gamma = apply_k(gamma, th, T);
        KahanSum resid_sq;
        for (int k = 1; k <= m; ++k) {
            const double r = kdot_f0.coeff(k) - k_gamma.coeff(k);
            resid_sq.add(r * r);
        }
        const double via_parts = gamma.l2_norm_sq() + resid_sq.value();

        const double scale = std::max(1.0, closed);
        if (std::abs(closed - via_norm) > 1e-10 * scale) {
            return fail("closed form %.12g vs inner-product form %.12g", closed, via_norm);
        }
        if (std::abs(closed - via_parts) > 1e-10 * scale) {
            return fail("closed form %.12g vs decomposition %.12g", closed, via_parts);
        }
        const double parametric = parametric_fisher(th, f0, T);
        if (!(closed > 0.0) || !(closed < parametric)) {
            return fail("efficient information %.6g not inside (0, parametric %.6g)", closed,
                        parametric);
        }
    }
    return "";
}

// ------------------------------------------------------------ criterion 4

std::string criterion_sampler_std_normal() {
    MhConfig mh;
    mh.iterations = 50000;
    mh.burn_in = 0;
    mh.adapt = false;
    mh.proposal_sd = 2.4;
    mh.init = 0.0;
    mh.seed = 4004;
    const auto chain = run_mh(mh, [](double x) {
        if (x <= -10.0 || x >= 10.0) return -std::numeric_limits<double>::infinity();
        return -0.5 * x * x;
    });
    const auto s = summarize(chain);
    const double rate = acceptance_rate(chain);
    if (std::abs(s.mean) >= 0.05) return fail("mean %.4f not within %.2f of 0", s.mean, 0.05);
    if (std::abs(s.variance - 1.0) >= 0.1) {
        return fail("variance %.4f not within %.2f of 1", s.variance, 0.1);
    }
    if (rate <= 0.2 || rate >= 0.6) return fail("acceptance rate %.4f outside (0.2, %.1f)", rate, 0.6);
    std::printf("       mean %.4f, variance %.4f, acceptance %.3f, ess %.0f\n", s.mean,
                s.variance, rate, s.ess);
    return "";
}

// ------------------------------------------------------------ criterion 5

std::string criterion_limiting_normal_fit() {
    const int m = 100;
    const auto truth = reference_truth(m);
    const auto obs = generate(truth, 1.0, 1e5, m, 101);
    const PosteriorTarget target(obs, SeriesPrior(1.0, m), 1.0, kLo, kHi);
    const Chain chain = production_chain(target, 101);

    const auto s = summarize(chain);
    const auto ref = limiting_normal(s.mean, truth, 1.0, 1e5);
    const std::span<const double> kept(chain.samples.data() + chain.burn_in,
                                       chain.samples.size() -
                                           static_cast<std::size_t>(chain.burn_in));
    const double ks = ks_distance(kept, ref);
    const double tv = tv_distance_histogram(kept, ref, 50);
    const double center_err = std::abs(s.mean - truth.theta0.value());

    if (ks >= 0.1) return fail("KS distance %.4f not below %.2f", ks, 0.1);
    if (tv >= 0.15) return fail("TV distance %.4f not below %.2f", tv, 0.15);
    if (center_err >= 4.0 * ref.sd()) {
        return fail("posterior mean misses the truth by %.3e (limit %.3e)", center_err,
                    4.0 * ref.sd());
    }
    std::printf("       ks %.4f, tv %.4f, |mean - truth|/sd %.2f\n", ks, tv,
                center_err / ref.sd());
    return "";
}

// ------------------------------------------------------------ criterion 6

std::string criterion_bias_grows_with_alpha() {
    const int m = 100;
    const auto truth = reference_truth(m);
    const auto obs = generate(truth, 1.0, 1e5, m, 404);
    std::vector<double> bias;
    for (double alpha : {1.0, 2.6, 3.4}) {
        const PosteriorTarget target(obs, SeriesPrior(alpha, m), 1.0, kLo, kHi);
        const Chain chain = production_chain(target, 404);
        bias.push_back(bias_report(chain, truth).standardized_bias);
    }
    std::printf("       standardized bias at alpha 1.0 / 2.6 / 3.4: %.3f / %.3f / %.3f\n",
                bias[0], bias[1], bias[2]);
    if (!(bias[0] < bias[1] && bias[1] < bias[2])) {
        return fail("standardized bias not strictly increasing (first two: %.4f, %.4f)", bias[0],
                    bias[1]);
    }
    return "";
}

// ------------------------------------------------------------ criterion 7

std::string criterion_byte_identical_reruns() {
    unsetenv("HEATBVM_OUT_ROOT");
    const auto out = std::filesystem::temp_directory_path() / "heatbvm_acceptance_rerun";
    std::filesystem::remove_all(out);
    const std::string text = "[truth]\n"
                             "theta0 = 0.01\n"
                             "f0 = k^-2\n"
                             "beta = 1.5\n"
                             "[model]\n"
                             "T = 1.0\n"
                             "n = 1e3\n"
                             "m = 10\n"
                             "theta_lo = 0.001\n"
                             "theta_hi = 0.1\n"
                             "[prior]\n"
                             "alphas = 1.0, 2.0\n"
                             "[mcmc]\n"
                             "iterations = 1500\n"
                             "burn_in = 400\n"
                             "proposal_sd = auto\n"
                             "init = 0.02\n"
                             "[run]\n"
                             "seeds = 7, 8\n"
                             "out_dir = " +
                             out.string() + "\n";
    const auto cfg = parse_config_or_throw(text);

    const auto snapshot = [&]() {
        std::map<std::string, std::string> bytes;
        for (const auto& entry : std::filesystem::recursive_directory_iterator(out)) {
            if (entry.is_regular_file()) {
                bytes[entry.path().lexically_relative(out).string()] =
                    read_text_file(entry.path());
            }
        }
        return bytes;
    };

    run_experiment(cfg);
    const auto first = snapshot();
    run_experiment(cfg);
    const auto second = snapshot();
    std::filesystem::remove_all(out);

    if (first.empty()) return "no artifacts were written";
    if (first.size() != second.size()) {
        return fail("artifact count changed between runs: %.0f vs %.0f",
                    static_cast<double>(first.size()), static_cast<double>(second.size()));
    }
    for (const auto& [rel, content] : first) {
        const auto it = second.find(rel);
        if (it == second.end()) return "artifact " + rel + " missing on rerun";
        if (it->second != content) return "artifact " + rel + " differs between identical runs";
    }
    std::printf("       %zu artifacts byte-identical across reruns\n", first.size());
    return "";
}

// ------------------------------------------------------------ criterion 8

std::string criterion_window_classification() {
    const double beta = 1.5;
    const std::pair<double, bool> table[] = {
        {0.5, false}, {1.0, true}, {2.49, true}, {2.5, false},
        {2.6, false}, {3.0, false}, {3.4, false},
    };
    for (const auto& [alpha, want] : table) {
        if (bvm_zone(alpha, beta) != want) {
            return fail("alpha %.2f misclassified (expected in-window = %.0f)", alpha,
                        want ? 1.0 : 0.0);
        }
    }
    return "";
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<std::string()> run;
    };
    const Criterion criteria[] = {
        {"marginal posterior matches independent quadrature up to a constant",
         criterion_marginal_vs_quadrature},
        {"operator norm, remainder and identifiability bounds hold on random draws",
         criterion_operator_bounds},
        {"efficient information agrees across three routes and is sandwiched",
         criterion_information_identities},
        {"sampler recovers a standard normal on a bounded support",
         criterion_sampler_std_normal},
        {"posterior matches its limiting normal inside the window",
         criterion_limiting_normal_fit},
        {"standardized bias strictly increases with alpha outside the window",
         criterion_bias_grows_with_alpha},
        {"study reruns are byte-identical", criterion_byte_identical_reruns},
        {"limiting-window classification matches the regularity table",
         criterion_window_classification},
    };

    int failed = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        std::string detail;
        try {
            detail = c.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (detail.empty()) {
            std::printf("[PASS] %d/8 %s\n", index, c.label);
        } else {
            std::printf("[FAIL] %d/8 %s: %s\n", index, c.label, detail.c_str());
            ++failed;
        }
        std::fflush(stdout);
    }
    if (failed == 0) {
        std::printf("all 8 acceptance criteria passed\n");
    } else {
        std::printf("%d of 8 acceptance criteria FAILED\n", failed);
    }
    return failed == 0 ? 0 : 1;
}

#ifndef HEATBVM_SVG_PLOT_HPP
#define HEATBVM_SVG_PLOT_HPP

#include <filesystem>
#include <span>
#include <string>

#include "heatbvm/diagnostics.hpp"
#include "heatbvm/sampler.hpp"

namespace heatbvm {

// Density histogram of posterior samples with the reference normal density
// overlaid and a vertical marker at the true parameter value. Returns a
// standalone SVG document; deterministic for identical inputs.
std::string histogram_svg(std::span<const double> samples, const LimitingNormal& ref,
                          double truth_value, int bins = 50);

// Trace of the chain over iterations, downsampled to at most max_points
// vertices, with a marker at the end of burn-in.
std::string trace_svg(const Chain& chain, std::size_t max_points = 4000);

void save_svg(const std::string& svg, const std::filesystem::path& path);

}  // namespace heatbvm

#endif

#include "heatbvm/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "heatbvm/io_util.hpp"

namespace heatbvm {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 24.0;
constexpr double kMarginBottom = 48.0;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Axis {
    double data_lo;
    double data_hi;
    double px_lo;
    double px_hi;

    double to_px(double v) const {
        const double t = (v - data_lo) / (data_hi - data_lo);
        return px_lo + t * (px_hi - px_lo);
    }
};

void open_doc(std::ostringstream& out) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(kWidth)
        << "\" height=\"" << fmt(kHeight) << "\" viewBox=\"0 0 " << fmt(kWidth) << ' '
        << fmt(kHeight) << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(kWidth) << "\" height=\"" << fmt(kHeight)
        << "\" fill=\"white\"/>\n";
}

void draw_frame(std::ostringstream& out, const Axis& x, const Axis& y) {
    out << "<rect x=\"" << fmt(x.px_lo) << "\" y=\"" << fmt(y.px_hi) << "\" width=\""
        << fmt(x.px_hi - x.px_lo) << "\" height=\"" << fmt(y.px_lo - y.px_hi)
        << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double t = static_cast<double>(i) / 4.0;
        const double vx = x.data_lo + t * (x.data_hi - x.data_lo);
        const double px = x.to_px(vx);
        out << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(y.px_lo) << "\" x2=\"" << fmt(px)
            << "\" y2=\"" << fmt(y.px_lo + 5.0)
            << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(y.px_lo + 20.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\""
            << " fill=\"#222222\">" << fmt(vx) << "</text>\n";
        const double vy = y.data_lo + t * (y.data_hi - y.data_lo);
        const double py = y.to_px(vy);
        out << "<line x1=\"" << fmt(x.px_lo - 5.0) << "\" y1=\"" << fmt(py) << "\" x2=\""
            << fmt(x.px_lo) << "\" y2=\"" << fmt(py)
            << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << fmt(x.px_lo - 8.0) << "\" y=\"" << fmt(py + 4.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\""
            << " fill=\"#222222\">" << fmt(vy) << "</text>\n";
    }
}

double normal_pdf(double x, double center, double sd) {
    const double z = (x - center) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

std::string histogram_svg(std::span<const double> samples, const LimitingNormal& ref,
                          double truth_value, int bins) {
    if (bins < 2) {
        throw std::invalid_argument("histogram_svg: needs at least 2 bins");
    }
    if (samples.size() < 2) {
        throw std::invalid_argument("histogram_svg: needs at least 2 samples");
    }
    const double sd = ref.sd();
    double lo = *std::min_element(samples.begin(), samples.end());
    double hi = *std::max_element(samples.begin(), samples.end());
    lo = std::min({lo, truth_value, ref.center - 4.0 * sd});
    hi = std::max({hi, truth_value, ref.center + 4.0 * sd});
    const double pad = 0.02 * (hi - lo);
    lo -= pad;
    hi += pad;
    const double width = (hi - lo) / static_cast<double>(bins);

    std::vector<double> density(static_cast<std::size_t>(bins), 0.0);
    for (double v : samples) {
        auto idx = static_cast<std::size_t>((v - lo) / width);
        if (idx >= density.size()) idx = density.size() - 1;
        density[idx] += 1.0;
    }
    const double norm = static_cast<double>(samples.size()) * width;
    for (double& d : density) d /= norm;

    double ymax = normal_pdf(ref.center, ref.center, sd);
    for (double d : density) ymax = std::max(ymax, d);
    ymax *= 1.08;

    const Axis x{lo, hi, kMarginLeft, kWidth - kMarginRight};
    const Axis y{0.0, ymax, kHeight - kMarginBottom, kMarginTop};

    std::ostringstream out;
    open_doc(out);
    for (int b = 0; b < bins; ++b) {
        const double d = density[static_cast<std::size_t>(b)];
        if (d <= 0.0) continue;
        const double x0 = x.to_px(lo + width * static_cast<double>(b));
        const double x1 = x.to_px(lo + width * static_cast<double>(b + 1));
        const double y1 = y.to_px(d);
        out << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y1) << "\" width=\"" << fmt(x1 - x0)
            << "\" height=\"" << fmt(y.px_lo - y1)
            << "\" fill=\"#b8cbe4\" stroke=\"#7290b8\" stroke-width=\"0.5\"/>\n";
    }

    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
    const int curve_points = 512;
    for (int i = 0; i <= curve_points; ++i) {
        const double v = lo + (hi - lo) * static_cast<double>(i) / curve_points;
        if (i > 0) out << ' ';
        out << fmt(x.to_px(v)) << ',' << fmt(y.to_px(normal_pdf(v, ref.center, sd)));
    }
    out << "\"/>\n";

    const double tx = x.to_px(truth_value);
    out << "<line x1=\"" << fmt(tx) << "\" y1=\"" << fmt(y.px_lo) << "\" x2=\"" << fmt(tx)
        << "\" y2=\"" << fmt(y.px_hi)
        << "\" stroke=\"#c03030\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\"/>\n";

    draw_frame(out, x, y);
    out << "</svg>\n";
    return out.str();
}

std::string trace_svg(const Chain& chain, std::size_t max_points) {
    if (max_points < 2) {
        throw std::invalid_argument("trace_svg: max_points must be at least 2");
    }
    const auto& s = chain.samples;
    if (s.size() < 2) {
        throw std::invalid_argument("trace_svg: chain too short");
    }
    const std::size_t stride = (s.size() + max_points - 1) / max_points;

    double lo = *std::min_element(s.begin(), s.end());
    double hi = *std::max_element(s.begin(), s.end());
    if (hi <= lo) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);

    const Axis x{0.0, static_cast<double>(s.size() - 1), kMarginLeft, kWidth - kMarginRight};
    const Axis y{lo - pad, hi + pad, kHeight - kMarginBottom, kMarginTop};

    std::ostringstream out;
    open_doc(out);

    if (chain.burn_in > 0 && static_cast<std::size_t>(chain.burn_in) < s.size()) {
        const double bx = x.to_px(static_cast<double>(chain.burn_in));
        out << "<line x1=\"" << fmt(bx) << "\" y1=\"" << fmt(y.px_lo) << "\" x2=\"" << fmt(bx)
            << "\" y2=\"" << fmt(y.px_hi)
            << "\" stroke=\"#c03030\" stroke-width=\"1.5\" stroke-dasharray=\"5,3\"/>\n";
    }

    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.size(); i += stride) {
        if (!first) out << ' ';
        first = false;
        out << fmt(x.to_px(static_cast<double>(i))) << ',' << fmt(y.to_px(s[i]));
    }
    if ((s.size() - 1) % stride != 0) {
        out << ' ' << fmt(x.to_px(static_cast<double>(s.size() - 1))) << ','
            << fmt(y.to_px(s.back()));
    }
    out << "\"/>\n";

    draw_frame(out, x, y);
    out << "</svg>\n";
    return out.str();
}

void save_svg(const std::string& svg, const std::filesystem::path& path) {
    write_text_file(path, svg);
}

}  // namespace heatbvm

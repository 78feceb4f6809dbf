#ifndef LINSUP_SVG_PLOT_HPP
#define LINSUP_SVG_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace linsup {

struct PlotSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label = "iteration sweep";
    std::string y_label;
    bool log_y = false;
    int width = 800;
    int height = 500;
};

namespace detail {

inline std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(ch);
        }
    }
    return out;
}

inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// "nice" tick positions covering [lo, hi]
inline std::vector<double> ticks(double lo, double hi, int target = 6)
{
    std::vector<double> out;
    const double range = hi - lo;
    if (!(range > 0.0)) {
        out.push_back(lo);
        return out;
    }
    const double raw = range / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step)
        out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return out;
}

} // namespace detail

/// Renders line charts as standalone SVG markup. Non-finite points, and
/// non-positive points on a log axis, are dropped.
inline std::string render_line_chart(const PlotSpec& spec, const std::vector<PlotSeries>& series)
{
    const double left = 90, right = 20, top = 40, bottom = 60;
    const double pw = spec.width - left - right;
    const double ph = spec.height - top - bottom;

    auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
    auto usable = [&](double v) { return std::isfinite(v) && (!spec.log_y || v > 0.0); };

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !usable(s.y[k]))
                continue;
            xmin = std::min(xmin, s.x[k]);
            xmax = std::max(xmax, s.x[k]);
            ymin = std::min(ymin, ty(s.y[k]));
            ymax = std::max(ymax, ty(s.y[k]));
        }
    if (!std::isfinite(xmin)) {
        xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0;
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) { ymin -= 0.5; ymax += 0.5; }
    const double pad = 0.03 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    using detail::num;
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width)
        + "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 "
        + std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"16\">" + detail::xml_escape(spec.title) + "</text>\n";

    // axes and grid
    svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (double v : detail::ticks(xmin, xmax)) {
        svg += "<line x1=\"" + num(px(v)) + "\" y1=\"" + num(top) + "\" x2=\"" + num(px(v))
            + "\" y2=\"" + num(top + ph) + "\" stroke=\"#e0e0e0\"/>\n";
        svg += "<text x=\"" + num(px(v)) + "\" y=\"" + num(top + ph + 16)
            + "\" text-anchor=\"middle\">" + detail::tick_label(v) + "</text>\n";
    }
    for (double v : detail::ticks(ymin, ymax)) {
        svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(py(v)) + "\" x2=\"" + num(left + pw)
            + "\" y2=\"" + num(py(v)) + "\" stroke=\"#e0e0e0\"/>\n";
        const double shown = spec.log_y ? std::pow(10.0, v) : v;
        svg += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(v) + 4)
            + "\" text-anchor=\"end\">" + detail::tick_label(shown) + "</text>\n";
    }
    svg += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw)
        + "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(spec.height - 18.0)
        + "\" text-anchor=\"middle\" font-size=\"13\">" + detail::xml_escape(spec.x_label)
        + "</text>\n";
    svg += "<text transform=\"translate(18 " + num(top + ph / 2)
        + ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">"
        + detail::xml_escape(spec.y_label + (spec.log_y ? " (log scale)" : "")) + "</text>\n";
    svg += "</g>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        std::string pts;
        for (std::size_t k = 0; k < ser.x.size() && k < ser.y.size(); ++k) {
            if (!std::isfinite(ser.x[k]) || !usable(ser.y[k]))
                continue;
            if (!pts.empty())
                pts.push_back(' ');
            pts += num(px(ser.x[k])) + "," + num(py(ty(ser.y[k])));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + detail::xml_escape(ser.color)
            + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        const double ly = top + 16.0 + 18.0 * static_cast<double>(s);
        svg += "<line x1=\"" + num(left + pw - 170) + "\" y1=\"" + num(ly) + "\" x2=\""
            + num(left + pw - 145) + "\" y2=\"" + num(ly) + "\" stroke=\""
            + detail::xml_escape(ser.color) + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(left + pw - 140) + "\" y=\"" + num(ly + 4)
            + "\" font-family=\"sans-serif\" font-size=\"12\">" + detail::xml_escape(ser.label)
            + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace linsup

#endif // LINSUP_SVG_PLOT_HPP

/**
 * @file svg.hpp
 * @brief Static SVG line plots with a fixed layout, so figure output is
 *        deterministic byte-for-byte and diffable.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace smcsim {

struct SvgSeries {
    std::string label;
    const std::vector<double>* t = nullptr;
    const std::vector<double>* v = nullptr;
};

namespace detail {

inline std::string fmt(double v, const char* format = "%.6g") {
    char buf[40];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

inline const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf"};
    return palette[i % 7];
}

}  // namespace detail

/// Renders one panel of overlaid series. Series longer than ~2000 points are
/// stride-downsampled; the stride is a pure function of the length, so the
/// output stays deterministic.
inline std::string svg_line_plot(const std::string& title, const std::string& y_label,
                                 const std::vector<SvgSeries>& series) {
    const double width = 900.0, height = 420.0;
    const double ml = 70.0, mr = 150.0, mt = 40.0, mb = 45.0;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    double vmin = tmin, vmax = -tmin;
    for (const SvgSeries& s : series) {
        for (double x : *s.t) {
            tmin = std::min(tmin, x);
            tmax = std::max(tmax, x);
        }
        for (double x : *s.v) {
            vmin = std::min(vmin, x);
            vmax = std::max(vmax, x);
        }
    }
    if (!(tmax > tmin)) tmax = tmin + 1.0;
    if (!(vmax > vmin)) {
        vmax = vmin + 1.0;
        vmin -= 1.0;
    }
    const double vpad = 0.05 * (vmax - vmin);
    vmin -= vpad;
    vmax += vpad;

    auto px = [&](double t) { return ml + (t - tmin) / (tmax - tmin) * pw; };
    auto py = [&](double v) { return mt + (vmax - v) / (vmax - vmin) * ph; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(width) +
           "\" height=\"" + detail::fmt(height) + "\" viewBox=\"0 0 " + detail::fmt(width) + " " +
           detail::fmt(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + detail::fmt(ml) + "\" y=\"24\" font-family=\"monospace\" font-size=\"16\">" +
           title + "</text>\n";

    // Frame and grid
    svg += "<rect x=\"" + detail::fmt(ml) + "\" y=\"" + detail::fmt(mt) + "\" width=\"" +
           detail::fmt(pw) + "\" height=\"" + detail::fmt(ph) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";
    const int n_ticks = 5;
    for (int i = 0; i <= n_ticks; ++i) {
        const double ft = static_cast<double>(i) / n_ticks;
        const double gx = ml + ft * pw;
        const double gy = mt + ft * ph;
        if (i > 0 && i < n_ticks) {
            svg += "<line x1=\"" + detail::fmt(gx) + "\" y1=\"" + detail::fmt(mt) + "\" x2=\"" +
                   detail::fmt(gx) + "\" y2=\"" + detail::fmt(mt + ph) +
                   "\" stroke=\"#dddddd\"/>\n";
            svg += "<line x1=\"" + detail::fmt(ml) + "\" y1=\"" + detail::fmt(gy) + "\" x2=\"" +
                   detail::fmt(ml + pw) + "\" y2=\"" + detail::fmt(gy) +
                   "\" stroke=\"#dddddd\"/>\n";
        }
        svg += "<text x=\"" + detail::fmt(gx) + "\" y=\"" + detail::fmt(mt + ph + 18.0) +
               "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" +
               detail::fmt(tmin + ft * (tmax - tmin), "%.4g") + "</text>\n";
        svg += "<text x=\"" + detail::fmt(ml - 6.0) + "\" y=\"" + detail::fmt(mt + ph - ft * ph + 4.0) +
               "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" +
               detail::fmt(vmin + ft * (vmax - vmin), "%.4g") + "</text>\n";
    }
    svg += "<text x=\"" + detail::fmt(ml + pw / 2.0) + "\" y=\"" + detail::fmt(height - 8.0) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">t [s]</text>\n";
    svg += "<text x=\"16\" y=\"" + detail::fmt(mt + ph / 2.0) +
           "\" font-family=\"monospace\" font-size=\"12\" transform=\"rotate(-90 16 " +
           detail::fmt(mt + ph / 2.0) + ")\" text-anchor=\"middle\">" + y_label + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const SvgSeries& s = series[si];
        const std::size_t len = s.t->size();
        const std::size_t stride = std::max<std::size_t>(1, len / 2000);
        std::string points;
        for (std::size_t i = 0; i < len; i += stride) {
            points += detail::fmt(px((*s.t)[i]), "%.2f") + "," + detail::fmt(py((*s.v)[i]), "%.2f") + " ";
        }
        if (len > 0 && (len - 1) % stride != 0) {
            points += detail::fmt(px((*s.t)[len - 1]), "%.2f") + "," +
                      detail::fmt(py((*s.v)[len - 1]), "%.2f") + " ";
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(detail::series_color(si)) +
               "\" stroke-width=\"1.2\" points=\"" + points + "\"/>\n";
        const double ly = mt + 16.0 + 18.0 * static_cast<double>(si);
        svg += "<line x1=\"" + detail::fmt(ml + pw + 10.0) + "\" y1=\"" + detail::fmt(ly - 4.0) +
               "\" x2=\"" + detail::fmt(ml + pw + 34.0) + "\" y2=\"" + detail::fmt(ly - 4.0) +
               "\" stroke=\"" + detail::series_color(si) + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + detail::fmt(ml + pw + 40.0) + "\" y=\"" + detail::fmt(ly) +
               "\" font-family=\"monospace\" font-size=\"11\">" + s.label + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace smcsim

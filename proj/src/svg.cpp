// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#include "isynas/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace isynas::svg {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void widen(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void settle() {
        if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
        if (hi - lo <= 0.0) {
            const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
            lo -= pad;
            hi += pad;
        }
    }
};

}  // namespace

std::string render(const ScatterPlot& plot) {
    const double margin_l = 70, margin_r = 150, margin_t = 40, margin_b = 50;
    const double pw = plot.width - margin_l - margin_r;
    const double ph = plot.height - margin_t - margin_b;

    auto tx = [&](double x) { return plot.log_x ? std::log10(x) : x; };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!plot.log_x || x > 0.0);
    };

    Range rx, ry;
    for (const auto& s : plot.series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            if (usable(s.x[i], s.y[i])) {
                rx.widen(tx(s.x[i]));
                ry.widen(s.y[i]);
            }
    rx.settle();
    ry.settle();
    auto px = [&](double x) { return margin_l + (tx(x) - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto py = [&](double y) { return margin_t + ph - (y - ry.lo) / (ry.hi - ry.lo) * ph; };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
        "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        plot.width, plot.height);
    out += fmt::format("<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                       margin_l + pw / 2, escape(plot.title));
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n",
                       margin_l, margin_t, pw, ph);

    for (int t = 0; t <= 4; ++t) {
        const double fx = rx.lo + (rx.hi - rx.lo) * t / 4.0;
        const double fy = ry.lo + (ry.hi - ry.lo) * t / 4.0;
        const double x = margin_l + pw * t / 4.0;
        const double y = margin_t + ph - ph * t / 4.0;
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.3g}</text>\n", x,
                           margin_t + ph + 16, plot.log_x ? std::pow(10.0, fx) : fx);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3g}</text>\n", margin_l - 6,
                           y + 4, fy);
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", margin_l + pw / 2,
                       plot.height - 12, escape(plot.x_label));
    out += fmt::format("<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
                       margin_t + ph / 2, margin_t + ph / 2, escape(plot.y_label));

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const Series& s = plot.series[k];
        std::string path;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\" fill-opacity=\"0.7\"/>\n",
                               px(s.x[i]), py(s.y[i]), s.color);
            path += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), py(s.y[i]));
        }
        if (s.connect && !path.empty())
            out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\"/>\n", path, s.color);
        const double ly = margin_t + 14 + 18.0 * static_cast<double>(k);
        out += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{}\"/>\n", margin_l + pw + 16, ly - 4,
                           s.color);
        out += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", margin_l + pw + 26, ly, escape(s.label));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace isynas::svg

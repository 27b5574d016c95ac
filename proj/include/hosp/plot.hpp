#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "hosp/common.hpp"
#include "hosp/delaunay.hpp"

namespace hosp {

struct PlotSeries {
    std::string name;
    std::vector<Point2> points;
};

enum class PlotKind { scatter, line };

namespace detail {

inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace detail

/// Self-contained SVG. Line plots draw one polyline per series and mark its
/// final point; scatter plots mark every point. Output bytes depend only on
/// the input.
inline std::string render_svg(const std::vector<PlotSeries>& series, PlotKind kind)
{
    bool any = false;
    double minx = 0, maxx = 0, miny = 0, maxy = 0;
    for (const auto& s : series)
        for (const auto& p : s.points) {
            if (!any) {
                minx = maxx = p.x;
                miny = maxy = p.y;
                any = true;
            }
            minx = std::min(minx, p.x);
            maxx = std::max(maxx, p.x);
            miny = std::min(miny, p.y);
            maxy = std::max(maxy, p.y);
        }
    if (!any)
        throw InputError("plot: no data points");

    const double w = 480, h = 480, pad = 40;
    const double sx = maxx > minx ? (w - 2 * pad) / (maxx - minx) : 1.0;
    const double sy = maxy > miny ? (h - 2 * pad) / (maxy - miny) : 1.0;
    auto px = [&](double x) { return detail::num(maxx > minx ? pad + (x - minx) * sx : w / 2); };
    auto py = [&](double y) { return detail::num(maxy > miny ? h - pad - (y - miny) * sy : h / 2); };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"0 0 480 480\">\n";
    out += "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
    out += "<rect x=\"40\" y=\"40\" width=\"400\" height=\"400\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        if (s.points.empty())
            continue;
        const std::string color = palette[i % 10];
        out += "<g id=\"series-" + std::to_string(i) + "\"><title>" + detail::xml_escape(s.name) + "</title>\n";
        if (kind == PlotKind::line) {
            out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t k = 0; k < s.points.size(); ++k) {
                if (k > 0)
                    out += " ";
                out += px(s.points[k].x) + "," + py(s.points[k].y);
            }
            out += "\"/>\n";
            const auto& last = s.points.back();
            out += "<circle class=\"final\" cx=\"" + px(last.x) + "\" cy=\"" + py(last.y) + "\" r=\"4\" fill=\"" +
                   color + "\"/>\n";
        } else {
            for (const auto& p : s.points)
                out += "<circle cx=\"" + px(p.x) + "\" cy=\"" + py(p.y) + "\" r=\"3\" fill=\"" + color + "\"/>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace hosp

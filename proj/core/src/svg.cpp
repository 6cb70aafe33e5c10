#include "periodica/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace periodica {

namespace {

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void include(double v) {
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    void settle() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (lo == hi) {
            lo -= 1.0;
            hi += 1.0;
        }
    }
};

std::string num(double v, const char* fmt = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
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

std::vector<double> nice_ticks(double lo, double hi, int target) {
    const double range = hi - lo;
    const double raw_step = range / std::max(target, 2);
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw_step) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + step * 1e-9; v += step) {
        const double snapped = std::abs(v) < step * 1e-9 ? 0.0 : v;
        ticks.push_back(snapped);
    }
    return ticks;
}

}  // namespace

std::string render_svg(const SvgChart& chart) {
    const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;
    const double w = chart.width, h = chart.height;
    const double pw = w - ml - mr, ph = h - mt - mb;

    Extent xe, ye;
    for (const auto& s : chart.series) {
        for (double v : s.x) xe.include(v);
        for (double v : s.y) ye.include(v);
        if (s.stems) ye.include(0.0);
    }
    for (double v : chart.v_markers) xe.include(v);
    for (double v : chart.h_markers) ye.include(v);
    xe.settle();
    ye.settle();

    const auto sx = [&](double v) { return ml + (v - xe.lo) / (xe.hi - xe.lo) * pw; };
    const auto sy = [&](double v) { return mt + (ye.hi - v) / (ye.hi - ye.lo) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(chart.width) +
           "\" height=\"" + std::to_string(chart.height) + "\" viewBox=\"0 0 " +
           std::to_string(chart.width) + " " + std::to_string(chart.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + num(w / 2) + "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
           escape_xml(chart.title) + "</text>\n";

    for (double t : nice_ticks(xe.lo, xe.hi, 8)) {
        const double px = sx(t);
        out += "<line x1=\"" + num(px) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(mt + ph) + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(px) + "\" y=\"" + num(mt + ph + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(t) + "</text>\n";
    }
    for (double t : nice_ticks(ye.lo, ye.hi, 6)) {
        const double py = sy(t);
        out += "<line x1=\"" + num(ml) + "\" y1=\"" + num(py) + "\" x2=\"" + num(ml + pw) +
               "\" y2=\"" + num(py) + "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + num(ml - 6) + "\" y=\"" + num(py + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(t) + "</text>\n";
    }
    out += "<rect x=\"" + num(ml) + "\" y=\"" + num(mt) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(h - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_xml(chart.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + num(mt + ph / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 " +
           num(mt + ph / 2) + ")\">" + escape_xml(chart.y_label) + "</text>\n";

    for (double m : chart.v_markers) {
        const double px = sx(m);
        out += "<line x1=\"" + num(px) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(mt + ph) +
               "\" stroke=\"#404040\" stroke-width=\"1.5\" stroke-dasharray=\"2 4\"/>\n";
    }
    for (double m : chart.h_markers) {
        const double py = sy(m);
        out += "<line x1=\"" + num(ml) + "\" y1=\"" + num(py) + "\" x2=\"" + num(ml + pw) +
               "\" y2=\"" + num(py) +
               "\" stroke=\"#808080\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
    }

    for (const auto& s : chart.series) {
        const std::size_t npts = std::min(s.x.size(), s.y.size());
        if (s.stems) {
            const double y0 = sy(std::clamp(0.0, ye.lo, ye.hi));
            for (std::size_t i = 0; i < npts; ++i) {
                out += "<line x1=\"" + num(sx(s.x[i])) + "\" y1=\"" + num(y0) + "\" x2=\"" +
                       num(sx(s.x[i])) + "\" y2=\"" + num(sy(s.y[i])) + "\" stroke=\"" + s.color +
                       "\" stroke-width=\"1.5\"/>\n";
            }
        } else if (npts > 0) {
            std::string pts;
            for (std::size_t i = 0; i < npts; ++i) {
                if (i) pts += " ";
                pts += num(sx(s.x[i])) + "," + num(sy(s.y[i]));
            }
            out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + s.color +
                   "\" stroke-width=\"1.5\"" +
                   (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        }
    }

    double ly = mt + 16;
    for (const auto& s : chart.series) {
        if (s.label.empty()) continue;
        out += "<line x1=\"" + num(ml + pw - 150) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
               num(ml + pw - 126) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"2\"" + (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        out += "<text x=\"" + num(ml + pw - 120) + "\" y=\"" + num(ly) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(s.label) +
               "</text>\n";
        ly += 16;
    }

    out += "</svg>\n";
    return out;
}

}  // namespace periodica

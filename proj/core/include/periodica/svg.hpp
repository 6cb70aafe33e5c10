#pragma once

#include <string>
#include <vector>

namespace periodica {

/// One plotted curve. With `stems` set the points are drawn as vertical
/// lines from y = 0 (correlogram/periodogram style) instead of a polyline.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f77b4";
    bool dashed = false;
    bool stems = false;
};

/// A static line chart with optional dotted vertical markers (event lines)
/// and dashed horizontal markers (confidence bands).
struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
    std::vector<double> v_markers;
    std::vector<double> h_markers;
    int width = 960;
    int height = 540;
};

/// Renders the chart as a self-contained SVG document. Output is
/// deterministic: the same chart always yields identical bytes.
std::string render_svg(const SvgChart& chart);

}  // namespace periodica

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace finadd {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    int width = 720;
    int height = 420;
};

// Standalone SVG document with one polyline per series.
std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options);

void write_svg(const std::string& path, const std::vector<PlotSeries>& series, const PlotOptions& options);

} // namespace finadd

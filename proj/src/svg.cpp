#include "finadd/svg.hpp"

#include "finadd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace finadd {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

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

} // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotOptions& options) {
    const double margin = 56;
    const double w = options.width, h = options.height;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    auto tx = [&](double x) { return options.log_x ? std::log10(x) : x; };
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (options.log_x && x <= 0) continue;
            x0 = std::min(x0, tx(x));
            x1 = std::max(x1, tx(x));
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x0 == x1) x1 = x0 + 1;
    if (y0 == y1) y1 = y0 + 1;
    auto px = [&](double x) { return margin + (tx(x) - x0) / (x1 - x0) * (w - 2 * margin); };
    auto py = [&](double y) { return h - margin - (y - y0) / (y1 - y0) * (h - 2 * margin); };

    std::ostringstream out;
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(options.title)
        << "</text>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\"" << w - margin << "\" y2=\"" << h - margin
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << h - margin
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << w / 2 << "\" y=\"" << h - 14 << "\" text-anchor=\"middle\" font-size=\"12\">"
        << escape(options.x_label) << (options.log_x ? " (log10)" : "") << "</text>\n";
    out << "<text x=\"16\" y=\"" << h / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 " << h / 2
        << ")\" text-anchor=\"middle\">" << escape(options.y_label) << "</text>\n";
    for (double frac : {0.0, 0.5, 1.0}) {
        const double yv = y0 + frac * (y1 - y0), xv = x0 + frac * (x1 - x0);
        out << "<text x=\"" << margin - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"10\">" << yv
            << "</text>\n";
        out << "<text x=\"" << margin + frac * (w - 2 * margin) << "\" y=\"" << h - margin + 14
            << "\" text-anchor=\"middle\" font-size=\"10\">" << xv << "</text>\n";
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* colour = kPalette[i % std::size(kPalette)];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
        for (const auto& [x, y] : series[i].points) {
            if (options.log_x && x <= 0) continue;
            out << px(x) << ',' << py(y) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << w - margin << "\" y=\"" << margin + 14 * i << "\" text-anchor=\"end\" font-size=\"11\" fill=\""
            << colour << "\">" << escape(series[i].name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_svg(const std::string& path, const std::vector<PlotSeries>& series, const PlotOptions& options) {
    std::ofstream f(path);
    if (!f) throw DomainError("cannot write '" + path + "'");
    f << render_svg(series, options);
}

} // namespace finadd

#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "prony/serialize.hpp"

namespace prony::plot {

namespace {

struct Range {
    double lo = 1e300, hi = -1e300;
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

std::string fmt(double v) { return prony::format_double(v); }

} // namespace

std::string render_svg(const std::vector<Panel>& panels, int panel_width, int panel_height) {
    const int margin_l = 56, margin_r = 16, margin_t = 34, margin_b = 44;
    const int total_w = static_cast<int>(panels.size()) * panel_width;
    const int total_h = panel_height;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\""
        << total_h << "\" font-family=\"sans-serif\">\n";
    svg << "<rect width=\"" << total_w << "\" height=\"" << total_h << "\" fill=\"white\"/>\n";

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const Panel& panel = panels[pi];
        const int x0 = static_cast<int>(pi) * panel_width + margin_l;
        const int y0 = margin_t;
        const int plot_w = panel_width - margin_l - margin_r;
        const int plot_h = panel_height - margin_t - margin_b;

        Range xr, yr;
        for (const Series& s : panel.series) {
            for (const auto& [x, y] : s.points) {
                if (x > 0 && y > 0) {
                    xr.include(std::log10(x));
                    yr.include(std::log10(y));
                }
            }
            for (const auto& [x, y] : s.line) {
                if (x > 0 && y > 0) {
                    xr.include(std::log10(x));
                    yr.include(std::log10(y));
                }
            }
        }
        if (xr.lo > xr.hi) {
            xr = {0, 1};
            yr = {0, 1};
        }
        if (xr.hi - xr.lo < 1e-12) xr.hi = xr.lo + 1;
        if (yr.hi - yr.lo < 1e-12) yr.hi = yr.lo + 1;
        yr.lo -= 0.05 * (yr.hi - yr.lo);
        yr.hi += 0.05 * (yr.hi - yr.lo);

        auto px = [&](double lx) { return x0 + (lx - xr.lo) / (xr.hi - xr.lo) * plot_w; };
        auto py = [&](double ly) { return y0 + plot_h - (ly - yr.lo) / (yr.hi - yr.lo) * plot_h; };

        svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << plot_w << "\" height=\""
            << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << x0 + plot_w / 2 << "\" y=\"" << y0 - 12
            << "\" text-anchor=\"middle\" font-size=\"13\">" << panel.title << "</text>\n";
        svg << "<text x=\"" << x0 + plot_w / 2 << "\" y=\"" << y0 + plot_h + 34
            << "\" text-anchor=\"middle\" font-size=\"11\">" << panel.x_label << "</text>\n";
        svg << "<text x=\"" << x0 - 44 << "\" y=\"" << y0 + plot_h / 2
            << "\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(-90 " << x0 - 44
            << " " << y0 + plot_h / 2 << ")\">" << panel.y_label << "</text>\n";

        // decade ticks
        for (int d = static_cast<int>(std::ceil(xr.lo)); d <= static_cast<int>(std::floor(xr.hi)); ++d) {
            const double x = px(d);
            svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << y0 + plot_h << "\" x2=\"" << fmt(x)
                << "\" y2=\"" << y0 + plot_h + 4 << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << fmt(x) << "\" y=\"" << y0 + plot_h + 16
                << "\" text-anchor=\"middle\" font-size=\"10\">1e" << d << "</text>\n";
        }
        for (int d = static_cast<int>(std::ceil(yr.lo)); d <= static_cast<int>(std::floor(yr.hi)); ++d) {
            const double y = py(d);
            svg << "<line x1=\"" << x0 - 4 << "\" y1=\"" << fmt(y) << "\" x2=\"" << x0
                << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << x0 - 6 << "\" y=\"" << fmt(y + 3)
                << "\" text-anchor=\"end\" font-size=\"10\">1e" << d << "</text>\n";
        }

        int legend_y = y0 + 12;
        for (const Series& s : panel.series) {
            for (const auto& [x, y] : s.points) {
                if (!(x > 0 && y > 0)) continue;
                svg << "<circle cx=\"" << fmt(px(std::log10(x))) << "\" cy=\""
                    << fmt(py(std::log10(y))) << "\" r=\"2\" fill=\"" << s.color
                    << "\" fill-opacity=\"0.45\"/>\n";
            }
            if (s.line.size() > 1) {
                svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\" points=\"";
                for (const auto& [x, y] : s.line)
                    if (x > 0 && y > 0)
                        svg << fmt(px(std::log10(x))) << ',' << fmt(py(std::log10(y))) << ' ';
                svg << "\"/>\n";
            }
            svg << "<rect x=\"" << x0 + 8 << "\" y=\"" << legend_y - 7
                << "\" width=\"10\" height=\"10\" fill=\"" << s.color << "\"/>\n";
            svg << "<text x=\"" << x0 + 22 << "\" y=\"" << legend_y + 2 << "\" font-size=\"10\">"
                << s.label << "</text>\n";
            legend_y += 14;
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace prony::plot

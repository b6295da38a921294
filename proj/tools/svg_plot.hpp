#pragma once

#include <string>
#include <vector>

namespace prony::plot {

struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points; // scatter (x, y), positive values
    std::vector<std::pair<double, double>> line;   // aggregate polyline, may be empty
};

struct Panel {
    std::string title;
    std::string x_label, y_label;
    std::vector<Series> series;
};

// Log-log scatter panels side by side; output is byte-deterministic for a
// fixed input.
std::string render_svg(const std::vector<Panel>& panels, int panel_width = 360,
                       int panel_height = 320);

} // namespace prony::plot

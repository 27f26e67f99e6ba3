#ifndef PAYGO_SVG_HPP
#define PAYGO_SVG_HPP

#include <string>
#include <vector>

namespace paygo {

// One polyline on a line chart.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Minimal SVG line chart: axes box, series polylines, legend. No styling
// fidelity beyond that; the CSV files are the data contract.
std::string render_line_chart(const std::string& title, const std::vector<SvgSeries>& series,
                              int width = 720, int height = 480);

}  // namespace paygo

#endif

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cantorlab {

// Decimal with 12 significant digits (shortest general form), the one
// number format used in every artifact. Integers print without a point.
std::string format_sig12(double x);

// Comma-separated table with '#'-prefixed metadata lines. No quoting: cells
// must not contain commas or newlines (write_csv enforces this).
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> meta; // "# key = value"
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string render_csv(const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);

// Native line plot: one polyline per series on linear axes with ticks,
// labels and a legend. Rendering is a pure function of the inputs.
struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::string render_svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel, const std::vector<SvgSeries>& series);
void write_svg_plot(const std::string& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<SvgSeries>& series);

} // namespace cantorlab

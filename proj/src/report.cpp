#include "cantorlab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "cantorlab/errors.hpp"

namespace cantorlab {

std::string format_sig12(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

namespace {

std::string format_coord(double x) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

// Short tick label: six significant digits are plenty for axis annotation.
std::string format_tick(double x) {
    if (x == 0.0) return "0";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

void check_cell(const std::string& cell) {
    if (cell.find(',') != std::string::npos || cell.find('\n') != std::string::npos)
        throw ReportError("csv cell contains a comma or newline: '" + cell + "'");
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ReportError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw ReportError("short write to '" + path + "'");
}

const char* kPalette[] = {"#1b6ca8", "#c0392b", "#1e8449", "#8e44ad",
                          "#d68910", "#117a8b", "#6c3483", "#839192"};

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_csv(const CsvTable& table) {
    std::ostringstream out;
    for (const auto& [key, value] : table.meta) out << "# " << key << " = " << value << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        check_cell(table.columns[i]);
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw ReportError("csv row width " + std::to_string(row.size()) +
                              " does not match " + std::to_string(table.columns.size()) +
                              " columns");
        for (std::size_t i = 0; i < row.size(); ++i) {
            check_cell(row[i]);
            out << (i ? "," : "") << row[i];
        }
        out << "\n";
    }
    return out.str();
}

void write_csv(const std::string& path, const CsvTable& table) {
    write_text_file(path, render_csv(table));
}

std::string render_svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel, const std::vector<SvgSeries>& series) {
    const double width = 720, height = 480;
    const double ml = 78, mr = 24, mt = 46, mb = 58;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin <= xmax)) { // no points at all
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    auto pad = [](double& lo, double& hi) {
        if (lo == hi) {
            const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.5;
            lo -= d;
            hi += d;
        }
    };
    pad(xmin, xmax);
    pad(ymin, ymax);

    const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    const auto py = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    out << "<text x=\"" << format_coord(width / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"monospace\" font-size=\"15\">" << xml_escape(title) << "</text>\n";

    // Frame and ticks.
    out << "<rect x=\"" << format_coord(ml) << "\" y=\"" << format_coord(mt) << "\" width=\""
        << format_coord(width - ml - mr) << "\" height=\"" << format_coord(height - mt - mb)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int ticks = 5;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / ticks;
        const double fy = ymin + (ymax - ymin) * i / ticks;
        const double cx = px(fx);
        const double cy = py(fy);
        out << "<line x1=\"" << format_coord(cx) << "\" y1=\"" << format_coord(height - mb)
            << "\" x2=\"" << format_coord(cx) << "\" y2=\"" << format_coord(height - mb + 5)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << format_coord(cx) << "\" y=\"" << format_coord(height - mb + 20)
            << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"11\">"
            << format_tick(fx) << "</text>\n";
        out << "<line x1=\"" << format_coord(ml - 5) << "\" y1=\"" << format_coord(cy)
            << "\" x2=\"" << format_coord(ml) << "\" y2=\"" << format_coord(cy)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << format_coord(ml - 8) << "\" y=\"" << format_coord(cy + 4)
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">"
            << format_tick(fy) << "</text>\n";
    }

    out << "<text x=\"" << format_coord(ml + (width - ml - mr) / 2) << "\" y=\""
        << format_coord(height - 12) << "\" text-anchor=\"middle\" font-family=\"monospace\" "
        << "font-size=\"13\">" << xml_escape(xlabel) << "</text>\n";
    out << "<text x=\"18\" y=\"" << format_coord(mt + (height - mt - mb) / 2)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << format_coord(mt + (height - mt - mb) / 2) << ")\">"
        << xml_escape(ylabel) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        if (!series[si].points.empty()) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (const auto& [x, y] : series[si].points) {
                if (!first) out << " ";
                first = false;
                out << format_coord(px(x)) << "," << format_coord(py(y));
            }
            out << "\"/>\n";
        }
        out << "<text x=\"" << format_coord(width - mr - 6) << "\" y=\""
            << format_coord(mt + 16 + 15 * static_cast<double>(si))
            << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\" fill=\"" << color
            << "\">" << xml_escape(series[si].label) << "</text>\n";
    }

    out << "</svg>\n";
    return out.str();
}

void write_svg_plot(const std::string& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<SvgSeries>& series) {
    write_text_file(path, render_svg_plot(title, xlabel, ylabel, series));
}

} // namespace cantorlab

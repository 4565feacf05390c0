#pragma once

// Tabular output: CSV / gnuplot .dat writers with stable formatting
// (6 significant digits, '.' decimal, LF), a small built-in SVG line
// chart renderer, and the per-command run manifest.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fdwifi {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void check() const {
        for (const auto& r : rows)
            if (r.size() != columns.size())
                throw std::runtime_error("Table: ragged row");
    }
};

// %.6g with the classic locale; NaN cells (flagged sweep rows) print "nan".
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline void write_csv(std::ostream& out, const Table& t) {
    t.check();
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? "," : "") << t.columns[c];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_number(row[c]);
        out << "\n";
    }
}

inline void write_dat(std::ostream& out, const Table& t) {
    t.check();
    out << "#";
    for (const auto& c : t.columns) out << ' ' << c;
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? " " : "") << format_number(row[c]);
        out << "\n";
    }
}

namespace detail {

inline std::string svg_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace detail

// Line chart of a table: first column is the x axis, every other column
// one polyline. Rendering is a pure view, the table is untouched.
inline std::string render_svg_chart(const Table& t, const std::string& title) {
    t.check();
    if (t.columns.size() < 2) throw std::runtime_error("svg chart: need x plus a series");
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    const double width = 880, height = 560;
    const double ml = 90, mr = 30, mt = 50, mb = 60;

    double xmin = HUGE_VAL, xmax = -HUGE_VAL, ymin = HUGE_VAL, ymax = -HUGE_VAL;
    for (const auto& row : t.rows) {
        if (std::isnan(row[0])) continue;
        xmin = std::min(xmin, row[0]);
        xmax = std::max(xmax, row[0]);
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (std::isnan(row[c])) continue;
            ymin = std::min(ymin, row[c]);
            ymax = std::max(ymax, row[c]);
        }
    }
    if (!(xmin <= xmax) || !(ymin <= ymax))
        throw std::runtime_error("svg chart: no finite data");
    if (xmax == xmin) { xmin -= 1.0; xmax += 1.0; }
    if (ymax == ymin) { ymin -= 1.0; ymax += 1.0; }
    ymin = std::min(ymin, 0.0);  // anchor throughput/capacity at zero

    auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto sy = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" height=\"560\" "
           "viewBox=\"0 0 880 560\">\n";
    svg += "<rect width=\"880\" height=\"560\" fill=\"white\"/>\n";
    svg += "<text x=\"440\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"18\">" + title + "</text>\n";

    const int ticks = 6;
    for (int i = 0; i <= ticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / ticks;
        const double fy = ymin + (ymax - ymin) * i / ticks;
        const std::string px = detail::svg_coord(sx(fx));
        const std::string py = detail::svg_coord(sy(fy));
        svg += "<line x1=\"" + px + "\" y1=\"" + detail::svg_coord(height - mb) +
               "\" x2=\"" + px + "\" y2=\"" + detail::svg_coord(mt) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<line x1=\"" + detail::svg_coord(ml) + "\" y1=\"" + py + "\" x2=\"" +
               detail::svg_coord(width - mr) + "\" y2=\"" + py +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + px + "\" y=\"" + detail::svg_coord(height - mb + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
               format_number(fx) + "</text>\n";
        svg += "<text x=\"" + detail::svg_coord(ml - 8) + "\" y=\"" +
               detail::svg_coord(sy(fy) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
               format_number(fy) + "</text>\n";
    }
    // axes
    svg += "<line x1=\"" + detail::svg_coord(ml) + "\" y1=\"" + detail::svg_coord(mt) +
           "\" x2=\"" + detail::svg_coord(ml) + "\" y2=\"" + detail::svg_coord(height - mb) +
           "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg += "<line x1=\"" + detail::svg_coord(ml) + "\" y1=\"" + detail::svg_coord(height - mb) +
           "\" x2=\"" + detail::svg_coord(width - mr) + "\" y2=\"" +
           detail::svg_coord(height - mb) + "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + detail::svg_coord(ml + (width - ml - mr) / 2) + "\" y=\"" +
           detail::svg_coord(height - 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
           t.columns[0] + "</text>\n";

    for (std::size_t c = 1; c < t.columns.size(); ++c) {
        const char* color = palette[(c - 1) % (sizeof(palette) / sizeof(palette[0]))];
        std::string pts;
        for (const auto& row : t.rows) {
            if (std::isnan(row[0]) || std::isnan(row[c])) continue;
            if (!pts.empty()) pts += ' ';
            pts += detail::svg_coord(sx(row[0])) + "," + detail::svg_coord(sy(row[c]));
        }
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
        // legend entry
        const double ly = mt + 10 + 20.0 * static_cast<double>(c - 1);
        svg += "<line x1=\"" + detail::svg_coord(ml + 12) + "\" y1=\"" + detail::svg_coord(ly) +
               "\" x2=\"" + detail::svg_coord(ml + 44) + "\" y2=\"" + detail::svg_coord(ly) +
               "\" stroke=\"" + color + "\" stroke-width=\"3\"/>\n";
        svg += "<text x=\"" + detail::svg_coord(ml + 50) + "\" y=\"" +
               detail::svg_coord(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"13\">" + t.columns[c] + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

struct RunManifest {
    std::string tool;
    std::string version;
    std::string command_line;
    std::vector<std::string> config_files;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> outputs;
    std::string timestamp_utc;
};

inline std::string utc_timestamp_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

inline void write_manifest(const std::string& path, const RunManifest& m) {
    nlohmann::json j;
    j["tool"] = m.tool;
    j["version"] = m.version;
    j["command_line"] = m.command_line;
    j["config_files"] = m.config_files;
    j["seeds"] = m.seeds;
    j["outputs"] = m.outputs;
    j["timestamp_utc"] = m.timestamp_utc;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace fdwifi

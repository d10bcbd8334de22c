#pragma once

// Self-contained SVG of the disk chart: orbit points, horoballs as circles, shadow arcs as
// boundary highlights. Coordinates are printed at fixed precision so equal inputs give equal bytes.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "horoshadow/arc.hpp"
#include "horoshadow/geometry.hpp"

namespace horoshadow {

struct RenderDisk {
    double center_angle = 0.0;  // boundary point of tangency
    double diameter = 0.0;      // Euclidean diameter in the disk chart
};

struct RenderArc {
    double t = 0.0;
    Arc arc;
};

struct RenderInput {
    std::vector<Complex> points;  // disk-chart positions
    std::vector<RenderDisk> disks;
    std::vector<RenderDisk> horocycles;  // drawn as outlines
    std::vector<RenderArc> arcs;
};

struct RenderOptions {
    int size = 800;
    double point_radius = 1.5;
};

namespace detail {

inline std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    return s == "-0.000" ? "0.000" : s;
}

}  // namespace detail

inline std::string render_svg(const RenderInput& in, const RenderOptions& opts = {}) {
    const double half = 0.5 * opts.size;
    const double scale = 0.9 * half;
    auto X = [&](double x) { return detail::fixed(half + scale * x); };
    auto Y = [&](double y) { return detail::fixed(half - scale * y); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size << "\" height=\"" << opts.size
       << "\" viewBox=\"0 0 " << opts.size << ' ' << opts.size << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<g id=\"axes\" stroke=\"#999\" stroke-width=\"0.5\">\n";
    os << "<line x1=\"" << X(-1.0) << "\" y1=\"" << Y(0.0) << "\" x2=\"" << X(1.0) << "\" y2=\"" << Y(0.0) << "\"/>\n";
    os << "<line x1=\"" << X(0.0) << "\" y1=\"" << Y(-1.0) << "\" x2=\"" << X(0.0) << "\" y2=\"" << Y(1.0) << "\"/>\n";
    os << "<circle cx=\"" << X(0.0) << "\" cy=\"" << Y(0.0) << "\" r=\"" << detail::fixed(scale)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "</g>\n";

    os << "<g id=\"horoballs\" fill=\"#cde\" fill-opacity=\"0.5\" stroke=\"#36a\" stroke-width=\"0.5\">\n";
    for (const RenderDisk& d : in.disks) {
        const double rho = 1.0 - 0.5 * d.diameter;
        os << "<circle cx=\"" << X(rho * std::cos(d.center_angle)) << "\" cy=\"" << Y(rho * std::sin(d.center_angle))
           << "\" r=\"" << detail::fixed(0.5 * d.diameter * scale) << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g id=\"horocycles\" fill=\"none\" stroke=\"#080\" stroke-width=\"1\">\n";
    for (const RenderDisk& d : in.horocycles) {
        const double rho = 1.0 - 0.5 * d.diameter;
        os << "<circle cx=\"" << X(rho * std::cos(d.center_angle)) << "\" cy=\"" << Y(rho * std::sin(d.center_angle))
           << "\" r=\"" << detail::fixed(0.5 * d.diameter * scale) << "\"/>\n";
    }
    os << "</g>\n";

    os << "<g id=\"orbit\" fill=\"black\">\n";
    for (const Complex& w : in.points)
        os << "<circle cx=\"" << X(w.real()) << "\" cy=\"" << Y(w.imag()) << "\" r=\""
           << detail::fixed(opts.point_radius) << "\"/>\n";
    os << "</g>\n";

    // Arc k is drawn just outside the circle at radius 1 + 0.01 (k + 1) so that nesting shows.
    os << "<g id=\"shadows\" fill=\"none\" stroke=\"#c30\" stroke-width=\"2\">\n";
    for (std::size_t k = 0; k < in.arcs.size(); ++k) {
        const Arc& a = in.arcs[k].arc;
        const double rad = 1.0 + 0.01 * static_cast<double>(k + 1);
        if (a.is_full()) {
            os << "<circle cx=\"" << X(0.0) << "\" cy=\"" << Y(0.0) << "\" r=\"" << detail::fixed(rad * scale)
               << "\" data-t=\"" << detail::fixed(in.arcs[k].t) << "\"/>\n";
            continue;
        }
        const double a0 = a.lo(), a1 = a.lo() + a.length();
        // Counterclockwise in the chart is clockwise on screen (y flipped): sweep flag 0.
        os << "<path data-t=\"" << detail::fixed(in.arcs[k].t) << "\" d=\"M " << X(rad * std::cos(a0)) << ' '
           << Y(rad * std::sin(a0)) << " A " << detail::fixed(rad * scale) << ' ' << detail::fixed(rad * scale)
           << " 0 " << (a.length() > kPi ? 1 : 0) << " 0 " << X(rad * std::cos(a1)) << ' ' << Y(rad * std::sin(a1))
           << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

/// Whether each arc, in increasing t, lies inside the previous one up to tol.
inline bool arcs_nested(std::vector<RenderArc> arcs, double tol = 1e-9) {
    std::stable_sort(arcs.begin(), arcs.end(), [](const RenderArc& a, const RenderArc& b) { return a.t < b.t; });
    for (std::size_t k = 1; k < arcs.size(); ++k)
        if (!arcs[k - 1].arc.contains_arc(arcs[k].arc, tol)) return false;
    return true;
}

// ---------------------------------------------------------------------------------------------
// CSV inputs written by the other commands

/// Rows of a CSV file keyed by header name. Lines starting with '#' are skipped.
inline std::vector<std::map<std::string, std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open '" + path + "'");
    auto split = [](const std::string& line) {
        std::vector<std::string> out;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        if (!line.empty() && line.back() == ',') out.emplace_back();
        return out;
    };
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line);
        if (header.empty()) {
            header = cells;
            continue;
        }
        if (cells.size() != header.size())
            throw validation_error(path + ":" + std::to_string(lineno) + ": expected " +
                                   std::to_string(header.size()) + " fields");
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = cells[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {

inline double field(const std::map<std::string, std::string>& row, const std::string& key, const std::string& path) {
    const auto it = row.find(key);
    if (it == row.end()) throw validation_error(path + ": missing column '" + key + "'");
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw validation_error(path + ": column '" + key + "' holds '" + it->second + "', not a number");
    }
}

}  // namespace detail

/// Orbit CSV (columns re, im) into disk-chart points.
inline std::vector<Complex> read_orbit_points(const std::string& path) {
    std::vector<Complex> out;
    for (const auto& row : read_csv(path))
        out.push_back(to_disk(Point(detail::field(row, "re", path), detail::field(row, "im", path))));
    return out;
}

/// Horoball CSV (columns center_angle, disk_diameter).
inline std::vector<RenderDisk> read_disks(const std::string& path) {
    std::vector<RenderDisk> out;
    for (const auto& row : read_csv(path))
        out.push_back({detail::field(row, "center_angle", path), detail::field(row, "disk_diameter", path)});
    return out;
}

/// Shadow arc CSV (columns t, lo, length).
inline std::vector<RenderArc> read_arcs(const std::string& path) {
    std::vector<RenderArc> out;
    for (const auto& row : read_csv(path))
        out.push_back({detail::field(row, "t", path), Arc(detail::field(row, "lo", path), detail::field(row, "length", path))});
    return out;
}

}  // namespace horoshadow

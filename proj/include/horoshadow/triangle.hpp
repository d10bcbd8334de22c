#pragma once

// Geodesic triangles with finite or ideal vertices, their inscribed triangle (p, q, r), and the
// projections p', q', r' of each vertex on the opposite side.

#include <algorithm>
#include <array>
#include <limits>
#include <random>
#include <variant>

#include "horoshadow/geometry.hpp"

namespace horoshadow {

using Vertex = std::variant<Point, BoundaryPoint>;

inline bool is_ideal(const Vertex& v) { return std::holds_alternative<BoundaryPoint>(v); }

/// Distance-like function attached to a vertex: d(v, ·) for a finite vertex, β_v(·, o) for an ideal one.
inline double vertex_gauge(const Vertex& v, const Point& z) {
    if (const auto* p = std::get_if<Point>(&v)) return dist(*p, z);
    return busemann(std::get<BoundaryPoint>(v), z, kOrigin);
}

inline bool same_vertex(const Vertex& a, const Vertex& b) {
    if (a.index() != b.index()) return false;
    if (const auto* p = std::get_if<Point>(&a)) return dist(*p, std::get<Point>(b)) <= kTolExact;
    return nearly_equal(std::get<BoundaryPoint>(a), std::get<BoundaryPoint>(b));
}

/// Full geodesic carrying the side [v w], oriented from v's end to w's end.
inline Geodesic side_line(const Vertex& v, const Vertex& w) {
    const auto* pv = std::get_if<Point>(&v);
    const auto* pw = std::get_if<Point>(&w);
    if (pv && pw) return Geodesic::through(*pv, *pw);
    if (pv) {
        const BoundaryPoint to = std::get<BoundaryPoint>(w);
        return Geodesic(backward_endpoint(*pv, to), to);
    }
    const BoundaryPoint from = std::get<BoundaryPoint>(v);
    if (pw) return Geodesic(from, backward_endpoint(*pw, from));
    return Geodesic(from, std::get<BoundaryPoint>(w));
}

/// Parameter of v along the oriented line (±∞ for the ideal ends).
inline double vertex_parameter(const Geodesic& g, const Vertex& v) {
    if (const auto* p = std::get_if<Point>(&v)) return g.foot_parameter(*p);
    return g.foot_parameter(std::get<BoundaryPoint>(v));
}

struct Side {
    Geodesic line;
    double lo;  // parameter of the start vertex
    double hi;  // parameter of the end vertex
};

inline Side make_side(const Vertex& v, const Vertex& w) {
    Geodesic g = side_line(v, w);
    constexpr double inf = std::numeric_limits<double>::infinity();
    // Ideal ends are exact; recomputing their chart image would only add rounding.
    return {g, is_ideal(v) ? -inf : vertex_parameter(g, v), is_ideal(w) ? inf : vertex_parameter(g, w)};
}

/// Distance from a finite point to the side (segment, ray or full geodesic).
inline double distance_to_side(const Point& x, const Side& s) {
    const double t = std::clamp(s.line.foot_parameter(x), s.lo, s.hi);
    return dist(x, s.line.at(t));
}

/// Projection of a vertex on a side, as a point of the side.
inline Point project_on_side(const Vertex& v, const Side& s) {
    const double t = std::clamp(vertex_parameter(s.line, v), s.lo, s.hi);
    if (!std::isfinite(t)) throw validation_error("projection of an ideal vertex on a side ending at it");
    return s.line.at(t);
}

struct InscribedTriangle {
    Point p;  // on [b c]
    Point q;  // on [a c]
    Point r;  // on [a b]
    Point p_proj;  // projection of a on [b c]
    Point q_proj;  // projection of b on [a c]
    Point r_proj;  // projection of c on [a b]
    double diameter() const { return std::max({dist(p, q), dist(q, r), dist(p, r)}); }
    double max_offset() const { return std::max({dist(p, p_proj), dist(q, q_proj), dist(r, r_proj)}); }
};

/// Gromov-product-like quantity L(v, w) = f_v(z) + f_w(z) for z on (v w); constant along the side.
inline double side_length(const Vertex& v, const Vertex& w) {
    const Side s = make_side(v, w);
    double t = 0.0;
    if (std::isfinite(s.lo)) t = s.lo;
    else if (std::isfinite(s.hi)) t = s.hi;
    const Point z = s.line.at(t);
    return vertex_gauge(v, z) + vertex_gauge(w, z);
}

namespace detail {
// Point on side [v w] where f_v equals level. f_v grows at unit speed along the oriented line.
inline Point point_at_gauge(const Vertex& v, const Vertex& w, double level) {
    const Side s = make_side(v, w);
    const double base = std::isfinite(s.lo) ? s.lo : 0.0;
    const double offset = base - vertex_gauge(v, s.line.at(base));
    return s.line.at(offset + level);
}
}  // namespace detail

inline InscribedTriangle inscribed_triangle(const Vertex& a, const Vertex& b, const Vertex& c) {
    if (same_vertex(a, b) || same_vertex(b, c) || same_vertex(a, c))
        throw validation_error("inscribed_triangle: coincident vertices");
    const double lab = side_length(a, b);
    const double lac = side_length(a, c);
    const double lbc = side_length(b, c);
    const double xa = 0.5 * (lab + lac - lbc);
    const double xb = 0.5 * (lab + lbc - lac);
    InscribedTriangle out{detail::point_at_gauge(b, c, xb), detail::point_at_gauge(a, c, xa),
                          detail::point_at_gauge(a, b, xa), kOrigin, kOrigin, kOrigin};
    out.p_proj = project_on_side(a, make_side(b, c));
    out.q_proj = project_on_side(b, make_side(a, c));
    out.r_proj = project_on_side(c, make_side(a, b));
    return out;
}

/// Random vertex: ideal with probability p_ideal, otherwise a point within hyperbolic radius max_r of o.
template <class Rng>
Vertex random_vertex(Rng& rng, double p_ideal, double max_r) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double theta = kTwoPi * unit(rng);
    const BoundaryPoint dir = BoundaryPoint::from_angle(theta == 0.0 ? 1e-3 : theta);
    if (unit(rng) < p_ideal) return dir;
    return point_on_ray(kOrigin, dir, max_r * unit(rng));
}

/// Frozen output of calibrate_alpha(10^6): the largest inscribed diameter seen is the ideal-triangle
/// value 2 asinh(1/2) ≈ 0.9624, projections stay within 0.35.
inline constexpr double kCalibratedAlpha = 0.97;

struct AlphaCalibration {
    double max_diameter = 0.0;
    double max_offset = 0.0;
    double alpha = 0.0;  // max of the two, rounded up to two decimals
    std::size_t samples = 0;
};

/// Empirical thin-triangle constant over random triangles with mixed finite and ideal vertices.
inline AlphaCalibration calibrate_alpha(std::size_t samples, std::uint64_t seed = 20240601) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    AlphaCalibration cal;
    for (std::size_t i = 0; i < samples; ++i) {
        const double p_ideal = unit(rng);
        const double max_r = 0.5 + 12.0 * unit(rng);
        const Vertex a = random_vertex(rng, p_ideal, max_r);
        const Vertex b = random_vertex(rng, p_ideal, max_r);
        const Vertex c = random_vertex(rng, p_ideal, max_r);
        try {
            const InscribedTriangle t = inscribed_triangle(a, b, c);
            cal.max_diameter = std::max(cal.max_diameter, t.diameter());
            cal.max_offset = std::max(cal.max_offset, t.max_offset());
            ++cal.samples;
        } catch (const Error&) {
        }
    }
    cal.alpha = std::ceil(100.0 * std::max(cal.max_diameter, cal.max_offset)) / 100.0;
    return cal;
}

}  // namespace horoshadow

#pragma once

// Metric objects of the hyperbolic plane in the upper half-plane model: distance, Busemann
// cocycle, rays and projections, visual metric, the boundary neighborhoods V(x, ξ, t) and
// D(x, ξ, t), and horoballs.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "horoshadow/arc.hpp"
#include "horoshadow/isometry.hpp"
#include "horoshadow/point.hpp"

namespace horoshadow {

struct GeometryParams {
    double alpha = 0.0;
    double tol_exact = kTolExact;
    double tol_oracle = kTolOracle;
};

/// Hyperbolic distance, 2 asinh(|z - w| / (2 sqrt(Im z Im w))): no cancellation for nearby points.
inline double dist(const Point& x, const Point& y) {
    const double e = std::hypot(x.re() - y.re(), x.im() - y.im());
    return 2.0 * std::asinh(0.5 * e / std::sqrt(x.im() * y.im()));
}

namespace detail {
// log of the "height" of y seen from the boundary point ξ: log Im(φ y) for φ sending ξ to ∞.
inline double log_height(const BoundaryPoint& xi, const Point& y) {
    if (xi.is_infinity()) return std::log(y.im());
    const double dx = y.re() - xi.value();
    return std::log(y.im()) - std::log(dx * dx + y.im() * y.im());
}
}  // namespace detail

/// β_ξ(x, y) = lim_{z→ξ} d(x, z) - d(y, z).
inline double busemann(const BoundaryPoint& xi, const Point& x, const Point& y) {
    if (xi.is_infinity()) return std::log(y.im() / x.im());
    return detail::log_height(xi, y) - detail::log_height(xi, x);
}

/// Point at distance t ≥ 0 from x on the ray [x ξ).
inline Point point_on_ray(const Point& x, const BoundaryPoint& xi, double t) {
    if (t == 0.0) return x;
    if (xi.is_infinity()) return Point(x.re(), x.im() * std::exp(t));
    const Isometry g = ray_chart(x, xi);
    return g.inverse()(Point(0.0, std::exp(t)));
}

/// Ideal endpoint of the ray from x through y (x ≠ y).
inline BoundaryPoint ray_endpoint(const Point& x, const Point& y) {
    if (x == y) throw validation_error("ray_endpoint: coincident points");
    // Move x to i; geodesics through i are radii of the disk chart.
    const double s = std::sqrt(x.im());
    const Isometry to_i = Isometry::raw({1.0 / s, -x.re() / s, 0.0, s});
    const Complex w = to_disk(to_i(y));
    const Complex u = w / std::abs(w);
    const Complex one(1.0, 0.0);
    BoundaryPoint end = BoundaryPoint::infinity();
    if (std::abs(one - u) > 1e-15) {
        const Complex z = Complex(0.0, 1.0) * (one + u) / (one - u);
        end = BoundaryPoint::real(z.real());
    }
    return to_i.inverse()(end);
}

/// The other ideal endpoint of the geodesic through x that ends at ξ.
inline BoundaryPoint backward_endpoint(const Point& x, const BoundaryPoint& xi) {
    const Isometry g = ray_chart(x, xi);
    return g.inverse()(BoundaryPoint::real(0.0));
}

/// Point at signed distance s from x along the geodesic through x toward ξ (s < 0 goes backwards).
inline Point point_on_line(const Point& x, const BoundaryPoint& xi, double s) {
    if (s >= 0.0) return point_on_ray(x, xi, s);
    return point_on_ray(x, backward_endpoint(x, xi), -s);
}

/// A convenient point on the geodesic (ξ η): the Euclidean top of the semicircle, or height 1
/// above the finite endpoint of a vertical geodesic.
inline Point geodesic_witness(const BoundaryPoint& xi, const BoundaryPoint& eta) {
    if (xi == eta) throw validation_error("geodesic needs distinct endpoints");
    if (xi.is_infinity()) return Point(eta.value(), 1.0);
    if (eta.is_infinity()) return Point(xi.value(), 1.0);
    return Point(0.5 * (xi.value() + eta.value()), 0.5 * std::abs(xi.value() - eta.value()));
}

/// Oriented geodesic with distinct ideal endpoints.
class Geodesic {
public:
    Geodesic(BoundaryPoint from, BoundaryPoint to) : from_(from), to_(to) {
        if (from == to) throw validation_error("geodesic endpoints must be distinct");
    }
    static Geodesic through(const Point& x, const Point& y) {
        const BoundaryPoint fwd = ray_endpoint(x, y);
        return Geodesic(backward_endpoint(x, fwd), fwd);
    }

    const BoundaryPoint& from() const { return from_; }
    const BoundaryPoint& to() const { return to_; }
    Geodesic reversed() const { return Geodesic(to_, from_); }

    bool is_vertical() const { return from_.is_infinity() || to_.is_infinity(); }
    /// Euclidean center and radius of the semicircle (vertical geodesics have none).
    std::pair<double, double> circle() const {
        if (is_vertical()) throw validation_error("vertical geodesic has no circle");
        return {0.5 * (from_.value() + to_.value()), 0.5 * std::abs(from_.value() - to_.value())};
    }

    /// Chart sending this geodesic to the imaginary axis, `to` to ∞ and the witness point to i.
    Isometry chart() const { return ray_chart(geodesic_witness(from_, to_), to_); }

    /// Signed position of the foot of the perpendicular from p, in the chart's arclength.
    double foot_parameter(const Point& p) const { return std::log(std::abs(chart()(p).z())); }
    double foot_parameter(const BoundaryPoint& p) const {
        const BoundaryPoint q = chart()(p);
        if (q.is_infinity()) return std::numeric_limits<double>::infinity();
        if (q.value() == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(q.value()));
    }
    Point at(double param) const { return chart().inverse()(Point(0.0, std::exp(param))); }

    double distance_to(const Point& p) const {
        const Point q = chart()(p);
        return std::asinh(std::abs(q.re()) / q.im());
    }

private:
    BoundaryPoint from_;
    BoundaryPoint to_;
};

/// Signed parameter of the projection of η on the geodesic (x ξ), measured from x toward ξ.
/// -∞ when η is the backward endpoint.
inline double foot_parameter(const BoundaryPoint& eta, const Point& x, const BoundaryPoint& xi) {
    if (eta == xi) throw validation_error("invalid projection: η coincides with the ray endpoint");
    const BoundaryPoint q = ray_chart(x, xi)(eta);
    if (q.is_infinity()) throw validation_error("invalid projection: η coincides with the ray endpoint");
    if (q.value() == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(q.value()));
}

/// Parameter t* ≥ 0 of the projection of η on the ray [x ξ); 0 when the foot falls behind x.
inline double project_to_ray(const BoundaryPoint& eta, const Point& x, const BoundaryPoint& xi) {
    return std::max(0.0, foot_parameter(eta, x, xi));
}

/// Projection of an interior point on the ray [x ξ), as a parameter t* ≥ 0.
inline double project_to_ray(const Point& p, const Point& x, const BoundaryPoint& xi) {
    return std::max(0.0, std::log(std::abs(ray_chart(x, xi)(p).z())));
}

/// Gromov visual distance d_x(ξ, η) = exp(-β_ξ(x, y)/2 - β_η(x, y)/2) with y on (ξ η).
inline double visual_distance(const Point& x, const BoundaryPoint& xi, const BoundaryPoint& eta) {
    if (xi == eta) return 0.0;
    const Point y = geodesic_witness(xi, eta);
    return std::exp(-0.5 * busemann(xi, x, y) - 0.5 * busemann(eta, x, y));
}

/// Same quantity with an explicit witness y on (ξ η); used to check witness independence.
inline double visual_distance_with_witness(const Point& x, const BoundaryPoint& xi, const BoundaryPoint& eta,
                                           const Point& y) {
    return std::exp(-0.5 * busemann(xi, x, y) - 0.5 * busemann(eta, x, y));
}

/// V(x, ξ, t): boundary points whose projection on (x ξ) lies beyond ξ_x(t). The arc runs from
/// the endpoint of the orthogonal geodesic on the right of the ray to the one on its left.
inline Arc shadow_arc(const Point& x, const BoundaryPoint& xi, double t) {
    if (t < 0.0) throw validation_error("shadow_arc needs t >= 0");
    const Isometry back = ray_chart(x, xi).inverse();
    const double r = std::exp(t);
    const BoundaryPoint lo = back(BoundaryPoint::real(r));
    const BoundaryPoint hi = back(BoundaryPoint::real(-r));
    return Arc::from_endpoints(lo.angle(), hi.angle());
}

/// Radius of the visual ball around ξ that coincides with V(x, ξ, t).
inline double shadow_visual_radius(double t) { return std::exp(-t) / std::sqrt(1.0 + std::exp(-2.0 * t)); }

/// Membership in the visual ball B_x(ξ, radius), closed.
inline bool in_visual_ball(const Point& x, const BoundaryPoint& xi, double radius, const BoundaryPoint& eta) {
    return visual_distance(x, xi, eta) <= radius;
}

/// The visual ball B_x(ξ, radius) as an arc (radius < 1; otherwise the whole circle).
inline Arc visual_ball_arc(const Point& x, const BoundaryPoint& xi, double radius) {
    if (radius >= 1.0) return Arc::full();
    // In the chart x → i, ξ → ∞ the distance to ∞ is (1 + a²)^(-1/2).
    const double a = std::sqrt(1.0 / (radius * radius) - 1.0);
    const Isometry back = ray_chart(x, xi).inverse();
    return Arc::from_endpoints(back(BoundaryPoint::real(a)).angle(), back(BoundaryPoint::real(-a)).angle());
}

/// η ∈ D(x, ξ, t) iff d(ξ_x(t), η_x(t)) ≤ α (closed condition).
inline bool hamenstadt_neighborhood_contains(const Point& x, const BoundaryPoint& xi, double t,
                                             const BoundaryPoint& eta, double alpha) {
    if (eta == xi) return true;
    return dist(point_on_ray(x, xi, t), point_on_ray(x, eta, t)) <= alpha;
}

/// Sullivan shadow O(x, ξ, t) with ball radius r: the ray [x η) meets B(ξ_x(t), r).
inline bool sullivan_shadow_contains(const Point& x, const BoundaryPoint& xi, double t, const BoundaryPoint& eta,
                                     double r) {
    const Point c = point_on_ray(x, xi, t);
    if (eta == xi) return true;
    const double s = project_to_ray(c, x, eta);
    return dist(c, point_on_ray(x, eta, s)) <= r;
}

/// Horoball {y : β_center(y, o) ≤ level}.
class Horoball {
public:
    Horoball(BoundaryPoint center, double level) : center_(center), level_(level) {
        if (!std::isfinite(level)) throw validation_error("horoball level must be finite");
    }
    static Horoball through(const BoundaryPoint& center, const Point& boundary_point) {
        return Horoball(center, busemann(center, boundary_point, kOrigin));
    }

    const BoundaryPoint& center() const { return center_; }
    double level() const { return level_; }

    /// Busemann excess over the boundary level: > 0 strictly inside.
    double depth(const Point& x) const { return level_ - busemann(center_, x, kOrigin); }

    /// Horoball shrunk by n: points of depth ≥ n.
    Horoball shrunk(double n) const { return Horoball(center_, level_ - n); }

    /// Euclidean data in the half-plane: height of the boundary line for center ∞, diameter of
    /// the tangent disk otherwise.
    double euclidean_size() const {
        if (center_.is_infinity()) return std::exp(-level_);
        const double r = center_.value();
        return (1.0 + r * r) * std::exp(level_);
    }
    /// A point on the boundary horocycle.
    Point boundary_point() const {
        if (center_.is_infinity()) return Point(0.0, euclidean_size());
        return Point(center_.value(), euclidean_size());
    }
    /// Euclidean diameter of the image in the disk chart.
    double disk_diameter() const { return 1.0 + std::tanh(0.5 * level_); }
    /// Distance from o to the horoball (0 if o is inside).
    double distance_from_origin() const { return std::max(0.0, -level_); }

    Horoball transformed(const Isometry& g) const { return through(g(center_), g(boundary_point())); }

private:
    BoundaryPoint center_;
    double level_;
};

inline double horoball_depth(const Horoball& h, const Point& x) { return h.depth(x); }

/// First time the ray [x ξ) crosses into h, or nothing if it misses. x must not be inside h.
inline std::optional<double> ray_entry_time(const Point& x, const BoundaryPoint& xi, const Horoball& h) {
    if (h.depth(x) > 0.0) throw validation_error("ray_entry_time: ray origin lies inside the horoball");
    const Isometry g = ray_chart(x, xi);
    const Horoball hn = h.transformed(g);
    // Ray is {i e^t : t ≥ 0} in the chart.
    if (hn.center().is_infinity()) {
        const double y = hn.euclidean_size();
        return std::log(std::max(1.0, y));
    }
    const double c = hn.center().value();
    const double diam = hn.euclidean_size();
    const double disc = diam * diam - 4.0 * c * c;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    const double y_out = 0.5 * (diam + root);
    if (y_out < 1.0) return std::nullopt;
    const double y_in = (2.0 * c * c) / (diam + root);
    return std::log(std::max(1.0, y_in));
}

}  // namespace horoshadow

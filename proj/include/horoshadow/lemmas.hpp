#pragma once

// The comparison statements about thin triangles and boundary neighborhoods, phrased as
// predicates on one instance. Each returns whether the hypothesis applies and whether the
// conclusion then holds, so samplers can count both.

#include <cmath>

#include "horoshadow/geometry.hpp"
#include "horoshadow/triangle.hpp"

namespace horoshadow::lemmas {

struct Verdict {
    bool applies = false;
    bool holds = true;
    bool violated() const { return applies && !holds; }
};

inline Verdict implies(bool hypothesis, bool conclusion) { return {hypothesis, !hypothesis || conclusion}; }

struct Constants {
    double alpha = kCalibratedAlpha;
    double k1() const { return 6.0 * alpha; }
    double k2(double d) const { return 2.0 * d + 4.0 * alpha; }
    /// K₃ built from C(K) = sup d(o, y_η).
    double k3(double c_of_k) const { return 0.5 * c_of_k + 1.5 * alpha; }
    /// Radius ε with B_o(ξ, ε) = V(o, ξ, 2 K₂).
    double epsilon(double d) const { return shadow_visual_radius(2.0 * k2(d)); }
};

inline constexpr double kSlack = 1e-9;

/// Gap of the triangle inequality at a: f_b(a) + f_c(a) - (f_b(z) + f_c(z)) with z on (b c).
inline double triangle_gap(const Point& a, const Vertex& b, const Vertex& c) {
    const Side bc = make_side(b, c);
    const double s = std::isfinite(bc.lo) ? bc.lo : (std::isfinite(bc.hi) ? bc.hi : 0.0);
    const Point z = bc.line.at(s);
    return vertex_gauge(b, a) + vertex_gauge(c, a) - vertex_gauge(b, z) - vertex_gauge(c, z);
}

/// d(a, [bc]) ≤ C ⇒ gap ≤ 2C (with C = d(a, [bc])), and d(a, [bc]) ≤ gap/2 + α.
inline std::pair<Verdict, Verdict> gap_vs_distance(const Point& a, const Vertex& b, const Vertex& c,
                                                   const Constants& k) {
    const double da = distance_to_side(a, make_side(b, c));
    const double gap = triangle_gap(a, b, c);
    return {implies(true, gap <= 2.0 * da + kSlack), implies(true, da <= 0.5 * gap + k.alpha + kSlack)};
}

/// p' = b ⇒ d(b, [ac]) ≤ 2α, and d(b, [ac]) ≤ 2α ⇒ d(p', b) ≤ 3α.
inline std::pair<Verdict, Verdict> projection_at_vertex(const Vertex& a, const Point& b, const Vertex& c,
                                                        const Constants& k) {
    const Side bc = make_side(b, c);
    const double foot = vertex_parameter(bc.line, a);
    const bool at_b = foot <= bc.lo;
    const Point p_proj = bc.line.at(std::clamp(foot, bc.lo, bc.hi));
    const double db = distance_to_side(b, make_side(a, c));
    return {implies(at_b, db <= 2.0 * k.alpha + kSlack),
            implies(db <= 2.0 * k.alpha, dist(p_proj, b) <= 3.0 * k.alpha + kSlack)};
}

inline bool in_shadow(const Point& x, const BoundaryPoint& xi, double t, const BoundaryPoint& eta, double slack) {
    if (eta == xi) return true;
    return foot_parameter(eta, x, xi) > t - slack;
}

/// For t ≥ 2α: V(x,ξ,t+α) ⊂ D(x,ξ,t) ⊂ V(x,ξ,t−2α), tested at one boundary point.
inline std::pair<Verdict, Verdict> neighborhoods_sandwich(const Point& x, const BoundaryPoint& xi, double t,
                                                          const BoundaryPoint& eta, const Constants& k) {
    if (t < 2.0 * k.alpha) return {};
    const bool in_d = hamenstadt_neighborhood_contains(x, xi, t, eta, k.alpha + kSlack);
    const bool in_inner = in_shadow(x, xi, t + k.alpha, eta, 0.0);
    return {implies(in_inner, in_d), implies(in_d, in_shadow(x, xi, t - 2.0 * k.alpha, eta, kSlack))};
}

/// η ∈ V(x,ξ,t) ⇒ d(ξ_x(t), [xη)) ≤ 2α and t − 4α ≤ β_η(x, ξ_x(t)) ≤ t.
inline Verdict busemann_in_shadow(const Point& x, const BoundaryPoint& xi, double t, const BoundaryPoint& eta,
                                  const Constants& k) {
    if (!in_shadow(x, xi, t, eta, 0.0) || eta == xi) return {};
    const Point xt = point_on_ray(x, xi, t);
    const double b = busemann(eta, x, xt);
    const double to_ray = dist(xt, point_on_ray(x, eta, project_to_ray(xt, x, eta)));
    return implies(true, to_ray <= 2.0 * k.alpha + kSlack && b <= t + kSlack && b >= t - 4.0 * k.alpha - kSlack);
}

/// t ≥ 6α and η ∈ D(x,ξ,t) ⇒ V(x,η,t) ⊂ V(x,ξ,t−6α).
inline Verdict shadow_shift_a(const Point& x, const BoundaryPoint& xi, double t, const BoundaryPoint& eta,
                              const Constants& k) {
    if (t < k.k1() || !hamenstadt_neighborhood_contains(x, xi, t, eta, k.alpha)) return {};
    return implies(true, shadow_arc(x, xi, t - k.k1()).contains_arc(shadow_arc(x, eta, t), kSlack));
}

/// t ≥ K₁ and η ∈ V(x,ξ,t+K₁+α) ⇒ V(x,η,t+K₁) ⊂ V(x,ξ,t) ⊂ V(x,η,t−K₁).
inline Verdict shadow_shift_b(const Point& x, const BoundaryPoint& xi, double t, const BoundaryPoint& eta,
                              const Constants& k) {
    if (t < k.k1() || !in_shadow(x, xi, t + k.k1() + k.alpha, eta, 0.0)) return {};
    const Arc mid = shadow_arc(x, xi, t);
    const bool ok = mid.contains_arc(shadow_arc(x, eta, t + k.k1()), kSlack) &&
                    shadow_arc(x, eta, t - k.k1()).contains_arc(mid, kSlack);
    return implies(true, ok);
}

/// d(x,y) ≤ D and t ≥ K₂ ⇒ V(x,ξ,t+K₂) ⊂ V(y,ξ,t) ⊂ V(x,ξ,t−K₂).
inline Verdict shadow_shift_c(const Point& x, const Point& y, double d_bound, const BoundaryPoint& xi, double t,
                              const Constants& k) {
    const double k2 = k.k2(d_bound);
    if (t < k2 || dist(x, y) > d_bound) return {};
    const Arc mid = shadow_arc(y, xi, t);
    const bool ok = mid.contains_arc(shadow_arc(x, xi, t + k2), kSlack) &&
                    shadow_arc(x, xi, t - k2).contains_arc(mid, kSlack);
    return implies(true, ok);
}

/// d(o,x) ≤ D ⇒ B_o(ξ, ε) ⊂ V(x, ξ, 0).
inline Verdict uniform_ball_in_shadow(const Point& x, double d_bound, const BoundaryPoint& xi, const Constants& k) {
    if (dist(kOrigin, x) > d_bound) return {};
    return implies(true, shadow_arc(x, xi, 0.0).contains_arc(visual_ball_arc(kOrigin, xi, k.epsilon(d_bound)), kSlack));
}

/// Parabolic p: z ↦ z + b fixing ∞, compact K = [−k, k], ray [o ∞). For t ≥ K₃:
/// d(o,po) ≥ 2t ⇒ pη ∈ V(o,∞,t−K₃) and |β_{pη}(ξ(t), pξ(t)) − d(o,po) + 2t| ≤ 2K₃;
/// d(o,po) ≤ 2t ⇒ pη ∉ V(o,∞,t+K₃) and |β_{pη}(ξ(t), pξ(t))| ≤ 2K₃.
inline Verdict parabolic_action(double b, double k_half_width, double eta, double t, const Constants& k) {
    const double c_of_k = 2.0 * std::asinh(0.5 * k_half_width);
    const double k3 = k.k3(c_of_k);
    if (t < k3 || std::abs(eta) > k_half_width) return {};
    const BoundaryPoint inf = BoundaryPoint::infinity();
    const Isometry p = Isometry::translation(b);
    const double dpo = dist(kOrigin, p(kOrigin));
    const Point xt = point_on_ray(kOrigin, inf, t);
    const BoundaryPoint peta = p(BoundaryPoint::real(eta));
    const double beta = busemann(peta, xt, p(xt));
    if (dpo >= 2.0 * t) {
        const bool inside = in_shadow(kOrigin, inf, t - k3, peta, kSlack);
        return implies(true, inside && std::abs(beta - dpo + 2.0 * t) <= 2.0 * k3 + kSlack);
    }
    const bool outside = !in_shadow(kOrigin, inf, t + k3, peta, -kSlack);
    return implies(true, outside && std::abs(beta) <= 2.0 * k3 + kSlack);
}

}  // namespace horoshadow::lemmas

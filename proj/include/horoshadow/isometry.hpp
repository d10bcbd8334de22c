#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <ostream>
#include <utility>

#include "horoshadow/point.hpp"

namespace horoshadow {

enum class IsometryKind { identity, elliptic, parabolic, hyperbolic };

inline const char* to_string(IsometryKind k) {
    switch (k) {
        case IsometryKind::identity: return "identity";
        case IsometryKind::elliptic: return "elliptic";
        case IsometryKind::parabolic: return "parabolic";
        case IsometryKind::hyperbolic: return "hyperbolic";
    }
    return "?";
}

/// Orientation-preserving isometry z ↦ (az + b)/(cz + d) stored as a PSL(2,R) matrix:
/// det = 1 and the first entry that is not negligible is positive.
class Isometry {
public:
    Isometry() = default;
    Isometry(double a, double b, double c, double d) : m_{a, b, c, d} { normalize(); }

    static Isometry identity() { return {}; }
    static Isometry translation(double t) { return {1.0, t, 0.0, 1.0}; }
    /// z ↦ λ z, the hyperbolic element with axis the imaginary axis and translation length log λ.
    static Isometry dilation(double lambda) {
        const double s = std::sqrt(lambda);
        return {s, 0.0, 0.0, 1.0 / s};
    }
    /// Hyperbolic element with fixed points ±1, attracting at +1, translation length ℓ.
    static Isometry hyperbolic_pm1(double length) {
        return {std::cosh(0.5 * length), std::sinh(0.5 * length), std::sinh(0.5 * length),
                std::cosh(0.5 * length)};
    }
    /// Unchecked constructor for matrices already known to be normalized.
    static Isometry raw(const std::array<double, 4>& m) {
        Isometry g;
        g.m_ = m;
        return g;
    }

    double a() const { return m_[0]; }
    double b() const { return m_[1]; }
    double c() const { return m_[2]; }
    double d() const { return m_[3]; }
    const std::array<double, 4>& entries() const { return m_; }
    /// ad - bc with one rounding error (fma compensation of the product bc).
    double det() const {
        const double bc = m_[1] * m_[2];
        const double err = std::fma(m_[1], m_[2], -bc);
        return std::fma(m_[0], m_[3], -bc) - err;
    }
    double trace() const { return m_[0] + m_[3]; }

    Isometry inverse() const { return raw_canonical({m_[3], -m_[1], -m_[2], m_[0]}); }

    friend Isometry operator*(const Isometry& g, const Isometry& h) {
        const auto& x = g.m_;
        const auto& y = h.m_;
        Isometry r;
        r.m_ = {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                x[2] * y[1] + x[3] * y[3]};
        r.renormalize();
        return r;
    }

    Point operator()(const Point& p) const {
        const Complex z = p.z();
        const Complex w = (m_[0] * z + m_[1]) / (m_[2] * z + m_[3]);
        // Im(gz) = det · Im z / |cz + d|² keeps the imaginary part positive under rounding.
        const double im = det() * p.im() / std::norm(m_[2] * z + m_[3]);
        return Point(w.real(), im);
    }

    BoundaryPoint operator()(const BoundaryPoint& xi) const {
        if (xi.is_infinity()) {
            if (m_[2] == 0.0) return BoundaryPoint::infinity();
            return BoundaryPoint::real(m_[0] / m_[2]);
        }
        const double r = xi.value();
        const double den = m_[2] * r + m_[3];
        if (den == 0.0) return BoundaryPoint::infinity();
        return BoundaryPoint::real((m_[0] * r + m_[1]) / den);
    }

    /// Largest entrywise difference, after sign canonicalization of both sides.
    double distance_to(const Isometry& other) const {
        double e = 0.0;
        for (int k = 0; k < 4; ++k) e = std::max(e, std::abs(m_[k] - other.m_[k]));
        return e;
    }

    friend std::ostream& operator<<(std::ostream& os, const Isometry& g) {
        return os << "[" << g.m_[0] << ", " << g.m_[1] << "; " << g.m_[2] << ", " << g.m_[3] << "]";
    }

private:
    static Isometry raw_canonical(const std::array<double, 4>& m) {
        Isometry g;
        g.m_ = m;
        g.canonicalize_sign();
        return g;
    }

    void normalize() {
        for (double x : m_)
            if (!std::isfinite(x)) throw validation_error("isometry entries must be finite");
        const double dt = det();
        if (!(dt > 0.0)) throw validation_error("isometry matrix must have positive determinant");
        const double s = std::sqrt(dt);
        for (double& x : m_) x /= s;
        canonicalize_sign();
    }

    void renormalize() {
        const double dt = det();
        if (!(dt > 0.5 && dt < 2.0))
            throw Error(ErrorKind::internal, "matrix product lost SL(2,R) precision (entries too large)");
        if (dt != 1.0) {
            const double s = std::sqrt(dt);
            for (double& x : m_) x /= s;
        }
        canonicalize_sign();
    }

    void canonicalize_sign() {
        double scale = 0.0;
        for (double x : m_) scale = std::max(scale, std::abs(x));
        const double eps = 1e-12 * scale;
        for (double x : m_) {
            if (std::abs(x) > eps) {
                if (x < 0.0)
                    for (double& y : m_) y = -y;
                return;
            }
        }
    }

    std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

struct Classification {
    IsometryKind kind = IsometryKind::identity;
    /// One fixed point for parabolic elements, (repelling, attracting) for hyperbolic ones.
    std::optional<BoundaryPoint> repelling;
    std::optional<BoundaryPoint> attracting;
    double translation_length = 0.0;
};

/// Trace classification: |tr| < 2 elliptic, |tr| = 2 within tol parabolic (or identity), > 2 hyperbolic.
inline Classification classify(const Isometry& g, double tol = kTolExact) {
    Classification out;
    const double tr = std::abs(g.trace());
    const double a = g.a(), b = g.b(), c = g.c(), d = g.d();
    if (std::abs(tr - 2.0) <= tol) {
        if (std::abs(b) <= tol && std::abs(c) <= tol && std::abs(a - d) <= tol) {
            out.kind = IsometryKind::identity;
            return out;
        }
        out.kind = IsometryKind::parabolic;
        if (std::abs(c) <= tol * std::max(1.0, std::abs(a) + std::abs(d)))
            out.attracting = BoundaryPoint::infinity();
        else
            out.attracting = BoundaryPoint::real((a - d) / (2.0 * c));
        out.repelling = out.attracting;
        return out;
    }
    if (tr < 2.0) {
        out.kind = IsometryKind::elliptic;
        return out;
    }
    out.kind = IsometryKind::hyperbolic;
    out.translation_length = 2.0 * std::acosh(0.5 * tr);
    // Fixed points solve c z² + (d - a) z - b = 0; g'(z) = (cz + d)^-2, so the attracting one has |cz + d| > 1.
    if (c == 0.0) {
        const BoundaryPoint finite = BoundaryPoint::real(b / (d - a));
        const bool inf_attracts = std::abs(a) > std::abs(d);
        out.attracting = inf_attracts ? BoundaryPoint::infinity() : finite;
        out.repelling = inf_attracts ? finite : BoundaryPoint::infinity();
        return out;
    }
    const double disc = std::sqrt((a + d) * (a + d) - 4.0);
    const double z1 = (a - d + disc) / (2.0 * c);
    const double z2 = (a - d - disc) / (2.0 * c);
    const bool z1_attracts = std::abs(c * z1 + d) > std::abs(c * z2 + d);
    out.attracting = BoundaryPoint::real(z1_attracts ? z1 : z2);
    out.repelling = BoundaryPoint::real(z1_attracts ? z2 : z1);
    return out;
}

/// Isometry sending ξ to ∞ and x to i; the workhorse chart for rays from x toward ξ.
inline Isometry ray_chart(const Point& x, const BoundaryPoint& xi) {
    Isometry to_inf;
    if (!xi.is_infinity()) to_inf = Isometry(0.0, -1.0, 1.0, -xi.value());
    const Point y = to_inf(x);
    const double s = std::sqrt(y.im());
    const Isometry affine = Isometry::raw({1.0 / s, -y.re() / s, 0.0, s});
    return affine * to_inf;
}

/// Isometry sending ξ to ∞ and fixing the real structure otherwise (z ↦ -1/(z - ξ)).
inline Isometry center_to_infinity(const BoundaryPoint& xi) {
    if (xi.is_infinity()) return Isometry::identity();
    return Isometry(0.0, -1.0, 1.0, -xi.value());
}

}  // namespace horoshadow

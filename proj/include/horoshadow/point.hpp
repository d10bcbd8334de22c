#pragma once

#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>

#include "horoshadow/numeric.hpp"

namespace horoshadow {

using Complex = std::complex<double>;

/// A point of the upper half-plane {Im z > 0} (curvature -1).
class Point {
public:
    Point() = default;
    Point(double re, double im) : re_(re), im_(im) {
        if (!std::isfinite(re) || !std::isfinite(im) || !(im > 0.0)) {
            std::ostringstream os;
            os << "invalid half-plane point (" << re << ", " << im << ")";
            throw validation_error(os.str());
        }
    }
    explicit Point(Complex z) : Point(z.real(), z.imag()) {}

    double re() const { return re_; }
    double im() const { return im_; }
    Complex z() const { return {re_, im_}; }

    friend bool operator==(const Point&, const Point&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Point& p) {
        return os << "(" << p.re_ << ", " << p.im_ << ")";
    }

private:
    double re_ = 0.0;
    double im_ = 1.0;
};

/// The basepoint o used throughout: (0, 1), the center of the disk chart.
inline const Point kOrigin{0.0, 1.0};

/// A point of R ∪ {∞}. Its disk-chart angle comes from the Cayley transform z ↦ (z - i)/(z + i),
/// which sends o to the disk center: angle(r) = π + 2 atan r and angle(∞) = 0.
class BoundaryPoint {
public:
    static BoundaryPoint real(double r) {
        if (!std::isfinite(r)) throw validation_error("BoundaryPoint::real needs a finite value");
        return BoundaryPoint(false, r);
    }
    static BoundaryPoint infinity() { return BoundaryPoint(true, 0.0); }

    static BoundaryPoint from_angle(double theta) {
        const double a = wrap_angle(theta);
        if (a == 0.0) return infinity();
        return real(std::tan(0.5 * (a - kPi)));
    }

    bool is_infinity() const { return inf_; }
    /// Real coordinate; meaningless for ∞.
    double value() const { return r_; }

    double angle() const { return inf_ ? 0.0 : kPi + 2.0 * std::atan(r_); }

    friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.r_ == b.r_;
    }
    friend std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p) {
        if (p.inf_) return os << "inf";
        return os << p.r_;
    }

private:
    BoundaryPoint(bool inf, double r) : inf_(inf), r_(r) {}
    bool inf_ = true;
    double r_ = 0.0;
};

/// Agreement of two boundary points measured in the disk chart.
inline bool nearly_equal(const BoundaryPoint& a, const BoundaryPoint& b, double tol = kTolExact) {
    const double d = std::abs(wrap_angle(a.angle() - b.angle() + kPi) - kPi);
    return d <= tol;
}

/// Disk-chart image of an interior point.
inline Complex to_disk(const Point& p) {
    const Complex z = p.z();
    const Complex i(0.0, 1.0);
    return (z - i) / (z + i);
}

/// Angle of the radial projection of p seen from o; 0 for o itself.
inline double direction_angle(const Point& p) {
    const Complex w = to_disk(p);
    if (std::abs(w) == 0.0) return 0.0;
    return wrap_angle(std::arg(w));
}

}  // namespace horoshadow

#pragma once

#include <cmath>
#include <ostream>

#include "horoshadow/numeric.hpp"

namespace horoshadow {

/// Half-open arc [lo, lo + length) of the boundary circle in the disk chart, possibly wrapping
/// through angle 0. A length of 2π is the full circle.
class Arc {
public:
    Arc() = default;
    Arc(double lo, double length) : lo_(wrap_angle(lo)), length_(length) {
        if (!(length > 0.0) || length > kTwoPi) throw validation_error("arc length must lie in (0, 2π]");
    }
    static Arc from_endpoints(double lo, double hi) {
        double len = wrap_angle(hi - lo);
        if (len == 0.0) len = kTwoPi;
        return Arc(lo, len);
    }
    static Arc full() { return Arc(0.0, kTwoPi); }

    double lo() const { return lo_; }
    double hi() const { return wrap_angle(lo_ + length_); }
    double length() const { return length_; }
    bool is_full() const { return length_ >= kTwoPi; }

    bool contains(double theta) const {
        if (is_full()) return true;
        return wrap_angle(theta - lo_) < length_;
    }

    /// Whether other ⊆ *this, up to tol on the endpoints.
    bool contains_arc(const Arc& other, double tol = 0.0) const {
        if (is_full()) return true;
        if (other.is_full()) return false;
        double offset = wrap_angle(other.lo_ - lo_);
        // An inner arc starting a hair before lo wraps to ~2π; pull it back.
        if (offset > kTwoPi - tol) offset -= kTwoPi;
        return offset >= -tol && offset + other.length_ <= length_ + tol;
    }

    bool intersects(const Arc& other) const {
        if (is_full() || other.is_full()) return true;
        return contains(other.lo_) || other.contains(lo_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Arc& a) {
        return os << "[" << a.lo_ << ", " << a.lo_ + a.length_ << ")";
    }

private:
    double lo_ = 0.0;
    double length_ = kTwoPi;
};

}  // namespace horoshadow

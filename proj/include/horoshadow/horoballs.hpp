#pragma once

// Γ-images of the cusp horoball, built from coset representatives of the parabolic subgroup,
// with an angular bucket index for membership queries.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "horoshadow/group.hpp"

namespace horoshadow {

struct HoroballFamily {
    std::vector<Horoball> balls;
    std::vector<std::size_t> rep_index;  // ball.points index of the coset representative
    double min_disk_diameter = 1e-4;
    /// Every Γ-image of the cusp horoball within this distance of o is listed.
    double horizon = 0.0;
};

struct HoroballOptions {
    double min_disk_diameter = 1e-4;
};

/// The cusp horoball must be centered at the fixed point ∞ of a translation z ↦ z + b. Each coset
/// γΠ has a representative within `slack` of the nearest point of γH, so a ball of radius T lists
/// every image at distance ≤ T - slack.
inline HoroballFamily build_horoball_family(const GroupSpec& spec, const OrbitBall& ball,
                                            const HoroballOptions& opts = {}) {
    if (!spec.cusp_horoball) throw validation_error("spec has no cusp horoball");
    if (spec.parabolic_marks.empty()) throw validation_error("spec has no parabolic mark");
    const Horoball& h0 = *spec.cusp_horoball;
    const ParabolicMark& mark = spec.parabolic_marks.front();
    const Isometry& pi = spec.generators[mark.generator].matrix;
    if (!h0.center().is_infinity() || !mark.fixed_point.is_infinity() || pi.c() != 0.0)
        throw validation_error("horoball family: the cusp must sit at infinity with a translation generator");
    const double period = std::abs(pi.b() / pi.d());
    const double height = h0.euclidean_size();
    const double slack = dist(kOrigin, Point(0.5 * period, height));
    if (h0.depth(kOrigin) >= 0.0) throw validation_error("horoball family: o must lie outside the cusp horoball");

    HoroballFamily fam;
    fam.min_disk_diameter = opts.min_disk_diameter;
    // A horoball below the diameter cutoff stays farther than this from o.
    const double cutoff_reach = -2.0 * std::atanh(opts.min_disk_diameter - 1.0);
    fam.horizon = std::max(0.0, std::min(ball.radius - slack, cutoff_reach));
    for (const CosetRep& rep : coset_reps_mod_parabolic(ball, pi)) {
        const Horoball hb = h0.transformed(ball.points[rep.index].gamma);
        if (hb.disk_diameter() < opts.min_disk_diameter) continue;
        fam.balls.push_back(hb);
        fam.rep_index.push_back(rep.index);
    }
    return fam;
}

/// Angular buckets in the disk chart: each horoball is filed under every bucket its disk meets.
class HoroballIndex {
public:
    explicit HoroballIndex(const HoroballFamily& fam, std::size_t buckets = 4096)
        : fam_(&fam), buckets_(buckets) {
        const double w = kTwoPi / static_cast<double>(buckets);
        for (std::size_t i = 0; i < fam.balls.size(); ++i) {
            const double r = 0.5 * fam.balls[i].disk_diameter();
            if (r >= 0.5) {
                global_.push_back(i);
                continue;
            }
            const double half = std::asin(std::min(1.0, r / (1.0 - r))) + w;
            const double c = fam.balls[i].center().angle();
            const auto first = static_cast<long>(std::floor((c - half) / w));
            const auto last = static_cast<long>(std::floor((c + half) / w));
            if (last - first + 1 >= static_cast<long>(buckets)) {
                global_.push_back(i);
                continue;
            }
            for (long k = first; k <= last; ++k) {
                const long m = ((k % static_cast<long>(buckets)) + static_cast<long>(buckets)) % static_cast<long>(buckets);
                buckets_[static_cast<std::size_t>(m)].push_back(i);
            }
        }
    }

    const HoroballFamily& family() const { return *fam_; }

    /// Indices of listed horoballs with depth(x) > 0.
    std::vector<std::size_t> containing(const Point& x) const {
        std::vector<std::size_t> out;
        auto test = [&](std::size_t i) {
            if (fam_->balls[i].depth(x) > 0.0) out.push_back(i);
        };
        for (std::size_t i : global_) test(i);
        const double w = kTwoPi / static_cast<double>(buckets_.size());
        const auto k = std::min(buckets_.size() - 1, static_cast<std::size_t>(direction_angle(x) / w));
        for (std::size_t i : buckets_[k]) test(i);
        return out;
    }

private:
    const HoroballFamily* fam_;
    std::vector<std::vector<std::size_t>> buckets_;
    std::vector<std::size_t> global_;
};

struct PositionClass {
    bool cusp = false;
    double depth = 0.0;
    std::optional<std::size_t> horoball;
    /// false when x lies beyond the family's horizon and in none of the listed horoballs.
    bool resolved = true;
};

inline PositionClass classify_position(const Point& x, const HoroballIndex& index) {
    const auto hits = index.containing(x);
    if (hits.size() > 1) {
        std::ostringstream os;
        os << "point (" << x.re() << ", " << x.im() << ") lies in " << hits.size()
           << " listed horoballs; the family is not pairwise disjoint";
        throw validation_error(os.str());
    }
    PositionClass pc;
    if (hits.size() == 1) {
        pc.cusp = true;
        pc.horoball = hits[0];
        pc.depth = index.family().balls[hits[0]].depth(x);
        return pc;
    }
    pc.resolved = dist(kOrigin, x) <= index.family().horizon;
    return pc;
}

/// Direct classification against a plain list, for small families.
inline PositionClass classify_position(const Point& x, const std::vector<Horoball>& balls) {
    PositionClass pc;
    for (std::size_t i = 0; i < balls.size(); ++i) {
        const double d = balls[i].depth(x);
        if (d <= 0.0) continue;
        if (pc.cusp) throw validation_error("point lies in two listed horoballs; the family is not pairwise disjoint");
        pc.cusp = true;
        pc.depth = d;
        pc.horoball = i;
    }
    return pc;
}

}  // namespace horoshadow

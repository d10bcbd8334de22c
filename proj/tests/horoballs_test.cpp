#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "horoshadow/config.hpp"
#include "horoshadow/horoballs.hpp"
#include "sampling.hpp"

using namespace horoshadow;

namespace {

LoadedConfig config(const std::string& name) { return load_config(std::string(HOROSHADOW_CONFIG_DIR) + "/" + name); }

// Images of {Im z ≥ 2} under SL(2,Z): the horoball at ∞ and, for coprime p/q with q ≥ 1, the disk
// tangent at p/q of Euclidean diameter 1/(2q²).
struct FordDisk {
    double center;
    double diameter;
};

double ford_depth(const FordDisk& f, const Point& x) {
    const double dx = x.re() - f.center;
    return std::log(f.diameter * x.im() / (dx * dx + x.im() * x.im()));
}

struct FordHit {
    bool cusp = false;
    double depth = 0.0;
    bool at_infinity = false;
};

// Brute force over disks of disk-chart diameter ≥ cutoff.
FordHit ford_classify(const Point& x, int max_q, double cutoff) {
    FordHit hit;
    if (x.im() > 2.0) return {true, std::log(x.im() / 2.0), true};
    for (int q = 1; q <= max_q; ++q) {
        const double D = 0.5 / (static_cast<double>(q) * q);
        const auto lo = static_cast<long>(std::floor(q * (x.re() - D)));
        const auto hi = static_cast<long>(std::ceil(q * (x.re() + D)));
        for (long p = lo; p <= hi; ++p) {
            if (std::gcd(p, static_cast<long>(q)) != 1) continue;
            const FordDisk f{static_cast<double>(p) / q, D};
            if (Horoball::through(BoundaryPoint::real(f.center), Point(f.center, D)).disk_diameter() < cutoff) continue;
            const double d = ford_depth(f, x);
            if (d > 0.0) {
                EXPECT_FALSE(hit.cusp) << "Ford disks overlap at (" << x.re() << ", " << x.im() << ")";
                hit = {true, d, false};
            }
        }
    }
    return hit;
}

const OrbitBall& modular_ball() {
    static const OrbitBall ball = enumerate_orbit(config("modular.json").spec, 10.0);
    return ball;
}

}  // namespace

TEST(HoroballFamily, ModularListsEveryFordDiskInsideTheHorizon) {
    const auto spec = config("modular.json").spec;
    const HoroballFamily fam = build_horoball_family(spec, modular_ball());
    EXPECT_NEAR(fam.horizon, 10.0 - dist(kOrigin, Point(0.5, 2.0)), 1e-12);
    EXPECT_LT(fam.horizon, -std::log(0.5 * fam.min_disk_diameter));
    std::size_t expected = 1, matched = 0;
    ASSERT_TRUE(fam.balls[0].center().is_infinity());
    for (int q = 1; q <= 80; ++q) {
        const double D = 0.5 / (static_cast<double>(q) * q);
        for (long p = -80L * q; p <= 80L * q; ++p) {
            if (std::gcd(p, static_cast<long>(q)) != 1) continue;
            const double c = static_cast<double>(p) / q;
            const Horoball h = Horoball::through(BoundaryPoint::real(c), Point(c, D));
            if (h.disk_diameter() < fam.min_disk_diameter || h.distance_from_origin() > fam.horizon) continue;
            ++expected;
            for (const auto& b : fam.balls) {
                if (b.center().is_infinity() || std::abs(b.center().value() - c) > 1e-9) continue;
                EXPECT_NEAR(b.euclidean_size(), D, 1e-9 * D);
                ++matched;
                break;
            }
        }
    }
    EXPECT_EQ(matched + 1, expected);
    for (const auto& b : fam.balls) EXPECT_GE(b.disk_diameter(), fam.min_disk_diameter);
}

TEST(HoroballFamily, HorizonStopsAtTheDiameterCutoff) {
    const auto spec = config("modular.json").spec;
    const HoroballFamily fam = build_horoball_family(spec, modular_ball(), {0.05});
    // The disk of a horoball at distance L from o has diameter 1 - tanh(L/2).
    EXPECT_NEAR(1.0 - std::tanh(0.5 * fam.horizon), 0.05, 1e-12);
    for (const auto& b : fam.balls) EXPECT_LE(b.distance_from_origin(), fam.horizon + 1e-9);
}

TEST(HoroballFamily, RejectsCuspAwayFromInfinity) {
    auto spec = config("modular.json").spec;
    spec.cusp_horoball = Horoball::through(BoundaryPoint::real(0.0), Point(0.0, 0.5));
    EXPECT_THROW(build_horoball_family(spec, modular_ball()), Error);
}

TEST(Classify, ModularAgreesWithFordDisks) {
    const auto spec = config("modular.json").spec;
    const HoroballFamily fam = build_horoball_family(spec, modular_ball());
    const HoroballIndex index(fam);
    sampling::Sampler s(5);
    int cusp = 0;
    for (int i = 0; i < 3000; ++i) {
        const Point x = s.point(5.0);
        const PositionClass pc = classify_position(x, index);
        const FordHit oracle = ford_classify(x, 80, fam.min_disk_diameter);
        EXPECT_TRUE(pc.resolved);
        ASSERT_EQ(pc.cusp, oracle.cusp) << "(" << x.re() << ", " << x.im() << ")";
        if (!pc.cusp) continue;
        ++cusp;
        EXPECT_NEAR(pc.depth, oracle.depth, 1e-9);
        EXPECT_EQ(fam.balls[*pc.horoball].center().is_infinity(), oracle.at_infinity);
    }
    EXPECT_GT(cusp, 300);
}

TEST(Classify, Examples) {
    const auto spec = config("modular.json").spec;
    const HoroballFamily fam = build_horoball_family(spec, modular_ball());
    const HoroballIndex index(fam);

    const PositionClass high = classify_position(Point(0.0, 5.0), index);
    EXPECT_TRUE(high.cusp);
    EXPECT_NEAR(high.depth, std::log(5.0 / 2.0), 1e-12);

    const PositionClass on_boundary = classify_position(Point(0.3, 2.0), index);
    EXPECT_FALSE(on_boundary.cusp);
    EXPECT_EQ(on_boundary.depth, 0.0);

    const PositionClass origin = classify_position(kOrigin, std::vector<Horoball>{*spec.cusp_horoball});
    EXPECT_FALSE(origin.cusp);

    // Inside the Ford disk at 1/2 (diameter 1/8).
    const PositionClass half = classify_position(Point(0.5, 0.1), index);
    EXPECT_TRUE(half.cusp);
    EXPECT_NEAR(half.depth, std::log(0.125 / 0.1), 1e-9);
}

TEST(Classify, OverlappingListIsAnError) {
    const std::vector<Horoball> balls{Horoball::through(BoundaryPoint::infinity(), Point(0.0, 2.0)),
                                      Horoball::through(BoundaryPoint::infinity(), Point(0.0, 3.0))};
    EXPECT_THROW(classify_position(Point(0.0, 5.0), balls), Error);
}

TEST(Classify, BeyondHorizonIsUnresolved) {
    const auto spec = config("modular.json").spec;
    const HoroballFamily fam = build_horoball_family(spec, modular_ball());
    const HoroballIndex index(fam);
    sampling::Sampler s(9);
    int unresolved = 0;
    for (int i = 0; i < 500; ++i) {
        const BoundaryPoint xi = s.boundary();
        const Point x = point_on_ray(kOrigin, xi, fam.horizon + 1.0);
        const PositionClass pc = classify_position(x, index);
        if (pc.cusp) EXPECT_TRUE(pc.resolved);
        else {
            EXPECT_FALSE(pc.resolved);
            ++unresolved;
        }
    }
    EXPECT_GT(unresolved, 0);
}

TEST(Classify, SchottkyFamilyIsDisjointAndIndexMatchesList) {
    const auto spec = config("schottky_parabolic.json").spec;
    const OrbitBall ball = enumerate_orbit(spec, 16.0);
    const HoroballFamily fam = build_horoball_family(spec, ball);
    const HoroballIndex index(fam);
    EXPECT_GT(fam.balls.size(), 10u);
    sampling::Sampler s(21);
    for (int i = 0; i < 2000; ++i) {
        const Point x = s.point(8.0);
        const PositionClass a = classify_position(x, index);
        const PositionClass b = classify_position(x, fam.balls);
        ASSERT_EQ(a.cusp, b.cusp);
        if (a.cusp) {
            EXPECT_EQ(*a.horoball, *b.horoball);
            EXPECT_EQ(a.depth, b.depth);
        }
    }
}

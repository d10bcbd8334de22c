#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "horoshadow/config.hpp"
#include "horoshadow/lemmas.hpp"
#include "horoshadow/shadows.hpp"

using namespace horoshadow;

namespace {

LoadedConfig config(const std::string& name) { return load_config(std::string(HOROSHADOW_CONFIG_DIR) + "/" + name); }

struct Setup {
    GroupSpec spec;
    OrbitBall ball;
    AtomicBoundaryMeasure mu;
    HoroballFamily fam;
};

const Setup& schottky() {
    static const Setup s = [] {
        const auto spec = config("schottky_parabolic.json").spec;
        OrbitBall ball = enumerate_orbit(spec, 20.0);
        auto mu = build_patterson(ball, 0.59, 0.575);
        auto fam = build_horoball_family(spec, ball);
        return Setup{spec, std::move(ball), std::move(mu), std::move(fam)};
    }();
    return s;
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> out;
    for (double t = lo; t <= hi + 1e-12; t += step) out.push_back(t);
    return out;
}

// Mass of V(o, ξ, t) by testing every atom against the projection definition of the shadow.
std::pair<double, std::size_t> direct_shadow_mass(const AtomicBoundaryMeasure& mu, const BoundaryPoint& xi, double t) {
    CompensatedSum m;
    std::size_t n = 0;
    for (const auto& a : mu.atoms()) {
        if (a.point == xi) continue;
        if (foot_parameter(a.point, kOrigin, xi) > t) {
            m.add(a.weight);
            ++n;
        }
    }
    return {m.value(), n};
}

}  // namespace

TEST(RadialPoint, AttractingFixedPointOfGenerator) {
    const auto& spec = schottky().spec;
    const Isometry h = spec.generators[1].matrix;
    BoundaryPoint x = BoundaryPoint::real(0.3);
    for (int i = 0; i < 60; ++i) x = h(x);
    const BoundaryPoint xi = radial_point(spec, "h");
    EXPECT_NEAR(xi.value(), x.value(), 1e-12);
    EXPECT_NEAR(xi.value(), 1.0, 1e-12);
}

TEST(RadialPoint, RejectsParabolicAndEllipticWords) {
    EXPECT_THROW(radial_point(schottky().spec, "p"), Error);
    EXPECT_THROW(radial_point(schottky().spec, "p^3"), Error);
    EXPECT_THROW(radial_point(schottky().spec, ""), Error);
    EXPECT_THROW(radial_point(config("modular.json").spec, "S"), Error);
    EXPECT_THROW(radial_point(config("modular.json").spec, "S.T"), Error);
}

TEST(RadialPoint, MixedWordStaysNearTheOrbit) {
    const auto& s = schottky();
    const BoundaryPoint xi = radial_point(s.spec, "p.h");
    const Isometry g = evaluate_word(s.spec, parse_word(s.spec, "p.h"));
    const double bound = dist(kOrigin, g(kOrigin)) + 1.0;
    for (int k = 1; k <= 20; ++k) {
        const double t = 0.8 * k;
        const Point x = point_on_ray(kOrigin, xi, t);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : s.ball.points) best = std::min(best, dist(x, p.gamma(kOrigin)));
        EXPECT_LE(best, bound) << "t=" << t;
    }
}

TEST(CuspPoint, ImagesOfInfinity) {
    const auto& spec = schottky().spec;
    EXPECT_TRUE(cusp_point(spec, "").is_infinity());
    const Isometry h = spec.generators[1].matrix;
    EXPECT_NEAR(cusp_point(spec, "h").value(), h.a() / h.c(), 1e-15);
    GroupSpec bare = spec;
    bare.parabolic_marks.clear();
    EXPECT_THROW(cusp_point(bare, "h"), Error);
}

TEST(VerifyShadowLemma, RowsMatchDirectAtomCounts) {
    const auto& s = schottky();
    const HoroballIndex index(s.fam);
    const BoundaryPoint xi = cusp_point(s.spec, "h");
    const auto rep = verify_shadow_lemma(s.mu, xi, grid(0.0, 9.0, 0.5), index, 0.575, 0.5);
    ASSERT_EQ(rep.rows.size(), 19u);
    for (const auto& row : rep.rows) {
        const auto [mass, n] = direct_shadow_mass(s.mu, xi, row.t);
        EXPECT_EQ(row.atoms, n) << "t=" << row.t;
        EXPECT_NEAR(row.mass, mass, 1e-12) << "t=" << row.t;
    }
}

TEST(VerifyShadowLemma, MonotoneAndBoundedAtZero) {
    const auto& s = schottky();
    const HoroballIndex index(s.fam);
    for (const std::string w : {"", "h", "p.h^-1"}) {
        const BoundaryPoint xi = cusp_point(s.spec, w);
        const auto rep = verify_shadow_lemma(s.mu, xi, grid(0.0, 10.0, 0.25), index, 0.575, 0.5);
        EXPECT_LE(rep.rows[0].mass, 1.0 + 1e-12);
        EXPECT_NEAR(rep.rows[0].mass, s.mu.measure_of_arc(shadow_arc(kOrigin, xi, 0.0)), 1e-15);
        for (std::size_t i = 1; i < rep.rows.size(); ++i) EXPECT_LE(rep.rows[i].mass, rep.rows[i - 1].mass);
    }
}

TEST(VerifyShadowLemma, ResidualsAndClassification) {
    const auto& s = schottky();
    const HoroballIndex index(s.fam);
    const double delta = 0.575, delta_pi = 0.5;
    const auto rep = verify_shadow_lemma(s.mu, cusp_point(s.spec, "h"), grid(0.0, 9.0, 0.5), index, delta, delta_pi);
    double lo = 1e300, hi = -1e300, thick_lo = 1e300, thick_hi = -1e300;
    std::size_t cusp_rows = 0;
    for (const auto& row : rep.rows) {
        EXPECT_EQ(row.position.cusp, row.position.depth > 0.0);
        EXPECT_GE(row.position.depth, 0.0);
        ASSERT_GT(row.mass, 0.0);
        EXPECT_NEAR(row.normalized, std::log(row.mass) + delta * row.t, 1e-12);
        EXPECT_NEAR(row.residual, row.normalized - (2.0 * delta_pi - delta) * row.position.depth, 1e-12);
        if (row.starved || !row.position.resolved) continue;
        lo = std::min(lo, row.residual);
        hi = std::max(hi, row.residual);
        if (row.position.cusp) ++cusp_rows;
        else {
            thick_lo = std::min(thick_lo, row.residual);
            thick_hi = std::max(thick_hi, row.residual);
        }
    }
    EXPECT_GT(cusp_rows, 5u);
    EXPECT_EQ(rep.summary.cusp_rows, cusp_rows);
    EXPECT_NEAR(rep.summary.band, hi - lo, 1e-12);
    EXPECT_NEAR(rep.summary.thick_band, thick_hi - thick_lo, 1e-12);
    EXPECT_NEAR(rep.summary.a1_hat, std::exp(0.5 * (hi - lo)), 1e-9);
    EXPECT_NEAR(rep.summary.target_slope, 2.0 * delta_pi - delta, 1e-15);
    EXPECT_TRUE(std::isfinite(rep.summary.cusp_slope));
}

TEST(VerifyShadowLemma, PointOffTheLimitSetStarves) {
    const auto& s = schottky();
    const HoroballIndex index(s.fam);
    // 2 lies between the parabolic half-plane Re ≥ 3 and the disks of h, so no limit point is near it.
    const auto rep = verify_shadow_lemma(s.mu, BoundaryPoint::real(2.0), grid(0.0, 8.0, 1.0), index, 0.575, 0.5);
    EXPECT_FALSE(rep.rows.front().starved);
    EXPECT_TRUE(rep.rows.back().starved);
    EXPECT_EQ(rep.rows.back().atoms, 0u);
    EXPECT_TRUE(std::isinf(rep.rows.back().residual));
    EXPECT_GT(rep.summary.flagged_rows, 0u);
}

TEST(VerifyShadowLemma, NegativeTimeIsRejected) {
    const auto& s = schottky();
    const HoroballIndex index(s.fam);
    EXPECT_THROW(verify_shadow_lemma(s.mu, cusp_point(s.spec, "h"), {1.0, -0.5}, index, 0.575, 0.5), Error);
}

TEST(ShadowMass, EquivariantUnderPushforward) {
    const auto& s = schottky();
    const BoundaryPoint xi = radial_point(s.spec, "h.p");
    for (const std::string w : {"h", "p^-1.h"}) {
        const Isometry g = evaluate_word(s.spec, parse_word(s.spec, w));
        const auto pushed = pushforward(s.mu, g);
        for (double t : {0.0, 1.0, 2.5, 4.0, 6.0}) {
            const double before = s.mu.measure_of_arc(shadow_arc(kOrigin, xi, t));
            const double after = pushed.measure_of_arc(shadow_arc(g(kOrigin), g(xi), t));
            EXPECT_NEAR(after, before, 1e-12) << w << " t=" << t;
        }
    }
}

TEST(ShadowMass, NearbyEndpointBracketsTheShadow) {
    const auto& s = schottky();
    const lemmas::Constants k;
    const double k1 = k.k1();
    const BoundaryPoint xi = radial_point(s.spec, "h");
    for (double t : {k1, k1 + 1.0}) {
        const Arc inner = shadow_arc(kOrigin, xi, t + k1 + k.alpha);
        const double middle = s.mu.measure_of_arc(shadow_arc(kOrigin, xi, t));
        int checked = 0;
        for (const auto& a : s.mu.atoms()) {
            if (!inner.contains(a.angle) || a.point == xi || ++checked > 40) continue;
            EXPECT_LE(s.mu.measure_of_arc(shadow_arc(kOrigin, a.point, t + k1)), middle + 1e-15);
            EXPECT_GE(s.mu.measure_of_arc(shadow_arc(kOrigin, a.point, t - k1)), middle - 1e-15);
        }
        EXPECT_GT(checked, 0);
    }
}

TEST(Report, CsvAndSummaryLayout) {
    const auto& s = schottky();
    const HoroballIndex index(s.fam);
    const auto rep = verify_shadow_lemma(s.mu, cusp_point(s.spec, "h"), {0.0, 1.0, 2.0}, index, 0.575, 0.5);
    const std::string csv = shadow_report_csv(rep);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,position,horoball,depth,atoms,mass,normalized,residual,flag");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
    }
    EXPECT_EQ(rows, 3);
    EXPECT_EQ(csv, shadow_report_csv(verify_shadow_lemma(s.mu, cusp_point(s.spec, "h"), {0.0, 1.0, 2.0}, index, 0.575, 0.5)));
    EXPECT_NE(shadow_summary_text(rep).find("cusp_slope"), std::string::npos);
}

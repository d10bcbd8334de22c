#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "horoshadow/config.hpp"
#include "horoshadow/group.hpp"
#include "sampling.hpp"

using namespace horoshadow;

namespace {

GroupSpec schottky(double translation) {
    GroupSpec g;
    g.name = "schottky";
    g.structure = GroupStructure::free_product;
    g.generators = {{"p", Isometry::translation(translation)}, {"h", Isometry::hyperbolic_pm1(4.0)}};
    g.parabolic_marks = {{0, BoundaryPoint::infinity()}};
    return g;
}

GroupSpec modular() {
    GroupSpec g;
    g.name = "modular";
    g.structure = GroupStructure::generic;
    g.generators = {{"S", Isometry(0, -1, 1, 0)}, {"T", Isometry(1, 1, 0, 1)}};
    g.parabolic_marks = {{1, BoundaryPoint::infinity()}};
    return g;
}

GroupSpec cyclic(const Isometry& m) {
    GroupSpec g;
    g.structure = GroupStructure::free_product;
    g.generators = {{"g", m}};
    return g;
}

using IntMatrix = std::array<long long, 4>;

IntMatrix canonical(IntMatrix m) {
    for (long long x : m) {
        if (x != 0) {
            if (x < 0)
                for (auto& y : m) y = -y;
            break;
        }
    }
    return m;
}

/// Integer matrices of determinant 1 with a² + b² + c² + d² ≤ 2 cosh T, modulo ±1.
std::set<IntMatrix> modular_brute_force(double radius) {
    const double bound = 2.0 * std::cosh(radius) + 1e-9;
    const long long e = static_cast<long long>(std::floor(std::sqrt(bound)));
    std::set<IntMatrix> out;
    for (long long a = -e; a <= e; ++a)
        for (long long b = -e; b <= e; ++b)
            for (long long c = -e; c <= e; ++c) {
                if (a * a + b * b + c * c > bound) continue;
                for (long long d = -e; d <= e; ++d) {
                    if (a * d - b * c != 1) continue;
                    if (static_cast<double>(a * a + b * b + c * c + d * d) <= bound) out.insert(canonical({a, b, c, d}));
                }
            }
    return out;
}

IntMatrix to_int(const Isometry& g) {
    return canonical({std::llround(g.a()), std::llround(g.b()), std::llround(g.c()), std::llround(g.d())});
}

}  // namespace

TEST(Classify, Examples) {
    const Classification par = classify(Isometry::translation(1.0));
    EXPECT_EQ(par.kind, IsometryKind::parabolic);
    EXPECT_TRUE(par.attracting->is_infinity());
    const Classification hyp = classify(Isometry::dilation(4.0));
    EXPECT_EQ(hyp.kind, IsometryKind::hyperbolic);
    EXPECT_TRUE(hyp.attracting->is_infinity());
    EXPECT_EQ(hyp.repelling->value(), 0.0);
    EXPECT_NEAR(hyp.translation_length, 2.0 * std::log(2.0), 1e-12);
    EXPECT_EQ(classify(Isometry::identity()).kind, IsometryKind::identity);
    EXPECT_EQ(classify(Isometry(0, -1, 1, 0)).kind, IsometryKind::elliptic);
}

TEST(Classify, TranslationLengthMatchesAxisDisplacement) {
    // Minimum of d(y, g y) over points y on the imaginary axis.
    const Isometry g = Isometry::dilation(4.0);
    double best = 1e9;
    for (double s = -3.0; s <= 3.0; s += 0.01) {
        const Point y(0.0, std::exp(s));
        best = std::min(best, dist(y, g(y)));
    }
    EXPECT_NEAR(classify(g).translation_length, best, 1e-9);
}

TEST(Classify, AttractingPointOfConjugates) {
    sampling::Sampler s(21);
    for (int i = 0; i < 200; ++i) {
        const Isometry c = s.isometry(2.0);
        const Isometry g = c * Isometry::hyperbolic_pm1(s.uniform(0.5, 4.0)) * c.inverse();
        const Classification k = classify(g);
        ASSERT_EQ(k.kind, IsometryKind::hyperbolic);
        ASSERT_TRUE(nearly_equal(*k.attracting, c(BoundaryPoint::real(1.0)), 1e-8));
        ASSERT_TRUE(nearly_equal(*k.repelling, c(BoundaryPoint::real(-1.0)), 1e-8));
    }
}

TEST(IsometryAlgebra, NormalizationAndAction) {
    const Isometry g(2, 0, 0, 2);
    EXPECT_NEAR(g.det(), 1.0, 1e-15);
    EXPECT_THROW(Isometry(1, 0, 0, -1), Error);
    const Isometry m(-1, -2, -1, -3);
    EXPECT_GT(m.a(), 0.0);
    sampling::Sampler s(22);
    for (int i = 0; i < 500; ++i) {
        const Isometry a = s.isometry(3.0), b = s.isometry(3.0);
        const Point x = s.point(2.0);
        const Point lhs = (a * b)(x), rhs = a(b(x));
        ASSERT_LT(dist(lhs, rhs), 1e-9);
        ASSERT_LT(dist((a * a.inverse())(x), x), 1e-9);
        ASSERT_NEAR((a * b).det(), 1.0, 1e-12);
    }
}

TEST(PingPong, Examples) {
    EXPECT_TRUE(ping_pong_check(schottky(6.0)).passed);
    EXPECT_FALSE(ping_pong_check(schottky(1.0)).passed);
    // Hyperbolic generator whose isometric circles have radius 1/2 and centers ±1.
    GroupSpec wide;
    wide.structure = GroupStructure::free_product;
    wide.generators = {{"p", Isometry::translation(6.0)}, {"h", Isometry(2.0, 1.5, 2.0, 2.0)}};
    const PingPongCertificate c = ping_pong_check(wide);
    EXPECT_TRUE(c.passed) << c.reason;
    EXPECT_NEAR(c.domains[2].center, 1.0, 1e-12);
    EXPECT_NEAR(c.domains[2].radius, 0.5, 1e-12);
    wide.generators[0].matrix = Isometry::translation(1.0);
    const PingPongCertificate bad = ping_pong_check(wide);
    EXPECT_FALSE(bad.passed);
    EXPECT_NE(bad.reason.find("overlap"), std::string::npos);
    EXPECT_TRUE(ping_pong_check(cyclic(Isometry::translation(1.0))).passed);
}

TEST(Enumerate, TrivialRadius) {
    const OrbitBall b = enumerate_orbit(schottky(6.0), 0.0);
    ASSERT_EQ(b.points.size(), 1u);
    EXPECT_TRUE(b.word(b.points[0]).empty());
    const OrbitBall m = enumerate_orbit(modular(), 0.0);
    // S fixes the basepoint, so the zero ball holds two group elements.
    EXPECT_EQ(m.points.size(), 2u);
}

TEST(Enumerate, FreeProductMatchesReducedWordSweep) {
    const GroupSpec spec = schottky(6.0);
    const double radius = 6.0;
    const int max_len = 9;
    // All reduced words up to max_len, by explicit product.
    std::size_t count = 0;
    double shortest_at_max = 1e9;
    std::vector<std::pair<Word, Isometry>> layer{{Word{}, Isometry::identity()}};
    count += 1;
    for (int len = 1; len <= max_len; ++len) {
        std::vector<std::pair<Word, Isometry>> next;
        for (const auto& [w, g] : layer)
            for (Letter l = 0; l < 4; ++l) {
                if (!w.empty() && l == inverse_letter(w.back())) continue;
                Word w2 = w;
                w2.push_back(l);
                const Isometry& m = spec.generators[l >> 1].matrix;
                const Isometry g2 = g * ((l & 1u) ? m.inverse() : m);
                const double d = dist(kOrigin, g2(kOrigin));
                if (d <= radius) ++count;
                if (len == max_len) shortest_at_max = std::min(shortest_at_max, d);
                next.emplace_back(std::move(w2), g2);
            }
        layer.swap(next);
    }
    ASSERT_GT(shortest_at_max, radius);  // the sweep is long enough to be exhaustive
    const OrbitBall ball = enumerate_orbit(spec, radius);
    EXPECT_EQ(ball.points.size(), count);
    EXPECT_TRUE(ball.certified);
    for (const auto& p : ball.points) {
        ASSERT_LE(p.dist, radius);
        ASSERT_LT(dist(evaluate_word(spec, ball.word(p))(kOrigin), p.image), 1e-8);
    }
}

TEST(Enumerate, ModularMatchesIntegerBruteForce) {
    for (double radius : {3.0, 7.0}) {
        const std::set<IntMatrix> expected = modular_brute_force(radius);
        const OrbitBall ball = enumerate_orbit(modular(), radius);
        std::set<IntMatrix> got;
        for (const auto& p : ball.points) got.insert(to_int(p.gamma));
        EXPECT_EQ(got.size(), ball.points.size()) << "duplicates in the ball";
        EXPECT_EQ(got, expected) << "radius " << radius;
    }
    const OrbitBall small = enumerate_orbit(modular(), 3.0);
    std::set<IntMatrix> got;
    for (const auto& p : small.points) got.insert(to_int(p.gamma));
    EXPECT_TRUE(got.count({1, 0, 0, 1}));
    EXPECT_TRUE(got.count({0, 1, -1, 0}));  // S up to sign
    EXPECT_TRUE(got.count({1, 1, 0, 1}));
    EXPECT_TRUE(got.count({1, -1, 0, 1}));
}

TEST(Enumerate, QuantizedDedupAgreesWithExact) {
    const GroupSpec spec = modular();
    OrbitBall exact = detail::enumerate_generic(spec, 7.0, detail::DedupMode::exact_integer);
    OrbitBall quant = detail::enumerate_generic(spec, 7.0, detail::DedupMode::quantized);
    ASSERT_EQ(exact.points.size(), quant.points.size());
    std::set<IntMatrix> a, b;
    for (const auto& p : exact.points) a.insert(to_int(p.gamma));
    for (const auto& p : quant.points) b.insert(to_int(p.gamma));
    EXPECT_EQ(a, b);
    EXPECT_EQ(exact.dedup_collisions, quant.dedup_collisions);
}

TEST(Enumerate, Monotone) {
    for (const GroupSpec& spec : {schottky(6.0), modular()}) {
        const OrbitBall small = enumerate_orbit(spec, 5.0);
        const OrbitBall large = enumerate_orbit(spec, 6.5);
        std::set<std::vector<long long>> big;
        for (const auto& p : large.points)
            big.insert({std::llround(p.gamma.a() * 1e6), std::llround(p.gamma.b() * 1e6), std::llround(p.gamma.c() * 1e6),
                        std::llround(p.gamma.d() * 1e6)});
        for (const auto& p : small.points)
            ASSERT_TRUE(big.count({std::llround(p.gamma.a() * 1e6), std::llround(p.gamma.b() * 1e6),
                                   std::llround(p.gamma.c() * 1e6), std::llround(p.gamma.d() * 1e6)}));
    }
}

TEST(Enumerate, SortedAndConsistent) {
    const OrbitBall ball = enumerate_orbit(schottky(6.0), 9.0);
    for (std::size_t i = 1; i < ball.points.size(); ++i) ASSERT_LE(ball.points[i - 1].dist, ball.points[i].dist);
    for (const auto& p : ball.points) {
        ASSERT_NEAR(p.dist, dist(kOrigin, p.image), 1e-12);
        ASSERT_NEAR(p.direction_angle, direction_angle(p.image), 1e-15);
    }
}

TEST(Enumerate, CyclicGroups) {
    const OrbitBall par = enumerate_orbit(cyclic(Isometry::translation(1.0)), 10.0);
    std::size_t expected = 0;
    for (int n = -1000; n <= 1000; ++n)
        if (2.0 * std::asinh(std::abs(n) / 2.0) <= 10.0) ++expected;
    EXPECT_EQ(par.points.size(), expected);
    const OrbitBall hyp = enumerate_orbit(cyclic(Isometry::hyperbolic_pm1(2.0)), 9.0);
    EXPECT_EQ(hyp.points.size(), 9u);  // |n| ≤ 4, the axis passes through o
}

TEST(Enumerate, BudgetExceeded) {
    GroupSpec spec = modular();
    spec.max_elements = 100;
    try {
        enumerate_orbit(spec, 8.0);
        FAIL() << "expected a budget error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::budget);
    }
}

TEST(Enumerate, Deterministic) {
    const OrbitBall a = enumerate_orbit(modular(), 6.0);
    const OrbitBall b = enumerate_orbit(modular(), 6.0);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        ASSERT_EQ(a.points[i].gamma.entries(), b.points[i].gamma.entries());
        ASSERT_EQ(a.word(a.points[i]), b.word(b.points[i]));
    }
}

TEST(Words, ParseAndPrint) {
    const GroupSpec spec = schottky(6.0);
    EXPECT_EQ(word_to_string(spec, parse_word(spec, "p.h^-1.p^2")), "p.h^-1.p.p");
    EXPECT_EQ(word_to_string(spec, {}), "e");
    EXPECT_THROW(parse_word(spec, "q"), Error);
}

TEST(Cosets, ModularCuspImages) {
    const OrbitBall ball = enumerate_orbit(modular(), 8.0);
    const auto reps = coset_reps_mod_parabolic(ball, Isometry::translation(1.0));
    std::set<std::pair<long long, long long>> fractions;
    for (const auto& r : reps) {
        const Isometry& g = ball.points[r.index].gamma;
        // γ(∞) = a/c; the representative is the closest element of its coset within the ball.
        const long long a = std::llround(g.a()), c = std::llround(g.c());
        fractions.insert(c == 0 ? std::pair{1LL, 0LL} : (c < 0 ? std::pair{-a, -c} : std::pair{a, c}));
        for (std::size_t i = 0; i < ball.points.size(); ++i) {
            if (!nearly_equal(ball.points[i].gamma(BoundaryPoint::infinity()), r.cusp_image)) continue;
            ASSERT_GE(ball.points[i].dist, ball.points[r.index].dist - 1e-12);
        }
        // Representative height ≈ 2 log q + O(1) for cusp images in a bounded window.
        if (c != 0 && std::abs(static_cast<double>(a) / static_cast<double>(c)) <= 1.0) {
            ASSERT_LT(std::abs(ball.points[r.index].dist - 2.0 * std::log(std::abs(static_cast<double>(c)))), 2.5);
        }
    }
    EXPECT_EQ(fractions.size(), reps.size());
}

TEST(Cosets, TrivialBallAndFreeProduct) {
    const OrbitBall tiny = enumerate_orbit(schottky(6.0), 0.0);
    EXPECT_EQ(coset_reps_mod_parabolic(tiny, Isometry::translation(6.0)).size(), 1u);
    EXPECT_THROW(coset_reps_mod_parabolic(tiny, Isometry::hyperbolic_pm1(1.0)), Error);
    const OrbitBall ball = enumerate_orbit(schottky(6.0), 10.0);
    const auto reps = coset_reps_mod_parabolic(ball, Isometry::translation(6.0));
    // Normal-form oracle: words not ending in p^{±1}. Each coset meeting the ball has exactly one.
    std::size_t not_ending_in_p = 0;
    for (const auto& p : ball.points) {
        const Word w = ball.word(p);
        if (w.empty() || (w.back() >> 1) != 0) ++not_ending_in_p;
    }
    EXPECT_EQ(reps.size(), not_ending_in_p);
    for (const auto& r : reps) {
        const Word w = ball.word(ball.points[r.index]);
        EXPECT_TRUE(w.empty() || (w.back() >> 1) != 0) << word_to_string(schottky(6.0), w);
    }
}

TEST(Config, ShippedFilesLoad) {
    for (const char* name : {"modular", "schottky_parabolic", "parabolic", "hyperbolic_cyclic"}) {
        const LoadedConfig c = load_config(std::string(HOROSHADOW_CONFIG_DIR) + "/" + name + ".json");
        EXPECT_EQ(c.spec.name, name);
        if (c.spec.structure == GroupStructure::free_product) EXPECT_TRUE(ping_pong_check(c.spec).passed);
    }
}

TEST(Config, Rejections) {
    const std::string good = R"({"format":"horoshadow-group/1","model":"upper_half_plane","name":"x",
        "structure":"free_product","basepoint":[0,1],"generators":[{"name":"p","matrix":[1,1,0,1]}]})";
    EXPECT_NO_THROW(parse_config_text(good));
    std::string bad_det = good;
    bad_det.replace(bad_det.find("[1,1,0,1]"), 9, "[2,1,0,1]");
    try {
        parse_config_text(bad_det);
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("normalize"), std::string::npos);
    }
    EXPECT_THROW(parse_config_text("{\"format\": "), Error);
    std::string no_base = good;
    no_base.replace(no_base.find("\"basepoint\":[0,1],"), 18, "");
    EXPECT_THROW(parse_config_text(no_base), Error);
    EXPECT_EQ(parse_config_text(good).hash, parse_config_text(good).hash);
}

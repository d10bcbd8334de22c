#pragma once

// Fuchsian group specifications and orbit enumeration up to a radius.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "horoshadow/geometry.hpp"
#include "horoshadow/isometry.hpp"

namespace horoshadow {

enum class GroupStructure { free_product, generic };

inline const char* to_string(GroupStructure s) { return s == GroupStructure::free_product ? "free_product" : "generic"; }

struct Generator {
    std::string name;
    Isometry matrix;
};

struct ParabolicMark {
    std::size_t generator = 0;
    BoundaryPoint fixed_point = BoundaryPoint::infinity();
};

struct GroupSpec {
    std::string name;
    GroupStructure structure = GroupStructure::generic;
    std::vector<Generator> generators;
    std::vector<ParabolicMark> parabolic_marks;
    /// Horoball at the first marked cusp whose Γ-images are pairwise disjoint or equal.
    std::optional<Horoball> cusp_horoball;
    /// Largest number of group elements an enumeration may hold before giving up.
    std::size_t max_elements = 20'000'000;
};

/// Letters encode generator k as 2k and its inverse as 2k + 1.
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

inline Letter inverse_letter(Letter l) { return l ^ 1u; }

inline std::string word_to_string(const GroupSpec& spec, const Word& w) {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += '.';
        out += spec.generators[w[i] >> 1].name;
        if (w[i] & 1u) out += "^-1";
    }
    return out;
}

/// Parses "e" or names joined by '.', each optionally suffixed with ^-1 or ^n.
inline Word parse_word(const GroupSpec& spec, const std::string& text) {
    Word w;
    if (text == "e" || text.empty()) return w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, '.')) {
        std::string name = item;
        int power = 1;
        if (const auto caret = item.find('^'); caret != std::string::npos) {
            name = item.substr(0, caret);
            try {
                power = std::stoi(item.substr(caret + 1));
            } catch (const std::exception&) {
                throw validation_error("bad exponent in word '" + text + "'");
            }
        }
        std::size_t k = spec.generators.size();
        for (std::size_t j = 0; j < spec.generators.size(); ++j)
            if (spec.generators[j].name == name) k = j;
        if (k == spec.generators.size()) throw validation_error("unknown generator '" + name + "' in word '" + text + "'");
        const Letter l = static_cast<Letter>(2 * k + (power < 0 ? 1 : 0));
        for (int i = 0; i < std::abs(power); ++i) w.push_back(l);
    }
    return w;
}

inline Isometry evaluate_word(const GroupSpec& spec, const Word& w) {
    Isometry g;
    for (Letter l : w) {
        const Isometry& m = spec.generators[l >> 1].matrix;
        g = g * ((l & 1u) ? m.inverse() : m);
    }
    return g;
}

/// Checks the declared parabolic marks and returns nothing; throws a validation error otherwise.
inline void validate(const GroupSpec& spec) {
    if (spec.generators.empty()) throw validation_error("group spec has no generators");
    if (spec.generators.size() > 100) throw validation_error("too many generators");
    for (const auto& mark : spec.parabolic_marks) {
        if (mark.generator >= spec.generators.size()) throw validation_error("parabolic mark refers to a missing generator");
        const auto& g = spec.generators[mark.generator];
        const Classification c = classify(g.matrix);
        if (c.kind != IsometryKind::parabolic)
            throw validation_error("generator '" + g.name + "' is marked parabolic but has trace " +
                                   std::to_string(g.matrix.trace()));
        if (!nearly_equal(*c.attracting, mark.fixed_point))
            throw validation_error("generator '" + g.name + "' does not fix the declared cusp point");
    }
    if (spec.cusp_horoball) {
        if (spec.parabolic_marks.empty()) throw validation_error("cusp horoball given without a parabolic mark");
        if (!nearly_equal(spec.cusp_horoball->center(), spec.parabolic_marks.front().fixed_point))
            throw validation_error("cusp horoball is not centered at the marked cusp");
        if (spec.cusp_horoball->depth(kOrigin) >= 0.0) throw validation_error("basepoint lies inside the cusp horoball");
    }
}

// ---------------------------------------------------------------------------------------------
// Ping-pong domains

/// Closed hyperbolic half-plane bounded by a geodesic, with an interior reference point.
class HalfPlane {
public:
    HalfPlane(Geodesic boundary, Point inside) : boundary_(boundary), inside_(inside) {}

    const Geodesic& boundary() const { return boundary_; }

    HalfPlane transformed(const Isometry& g) const {
        return HalfPlane(Geodesic(g(boundary_.from()), g(boundary_.to())), g(inside_));
    }

    bool contains(const Point& x) const {
        const Isometry c = boundary_.chart();
        return side(c(x)) == side(c(inside_)) || c(x).re() == 0.0;
    }

    double distance_from(const Point& x) const {
        const Isometry c = boundary_.chart();
        const Point q = c(x);
        if (q.re() == 0.0 || side(q) == side(c(inside_))) return 0.0;
        return std::asinh(std::abs(q.re()) / q.im());
    }

private:
    static bool side(const Point& p) { return p.re() > 0.0; }
    Geodesic boundary_;
    Point inside_;
};

/// Euclidean picture of a ping-pong domain: {Re ≥ m} / {Re ≤ m} or a closed disk centered on R.
struct Domain {
    enum class Kind { right_of, left_of, disk } kind = Kind::disk;
    double center = 0.0;  // line abscissa or disk center
    double radius = 0.0;

    bool contains(const Point& p) const {
        switch (kind) {
            case Kind::right_of: return p.re() >= center;
            case Kind::left_of: return p.re() <= center;
            case Kind::disk: return std::hypot(p.re() - center, p.im()) <= radius;
        }
        return false;
    }

    HalfPlane half_plane() const {
        switch (kind) {
            case Kind::right_of:
                return HalfPlane(Geodesic(BoundaryPoint::real(center), BoundaryPoint::infinity()),
                                 Point(center + 1.0, 1.0));
            case Kind::left_of:
                return HalfPlane(Geodesic(BoundaryPoint::real(center), BoundaryPoint::infinity()),
                                 Point(center - 1.0, 1.0));
            case Kind::disk:
                return HalfPlane(Geodesic(BoundaryPoint::real(center - radius), BoundaryPoint::real(center + radius)),
                                 Point(center, 0.5 * radius));
        }
        throw Error(ErrorKind::internal, "unreachable");
    }
};

inline std::string describe(const Domain& d) {
    std::ostringstream os;
    switch (d.kind) {
        case Domain::Kind::right_of: os << "{Re >= " << d.center << "}"; break;
        case Domain::Kind::left_of: os << "{Re <= " << d.center << "}"; break;
        case Domain::Kind::disk: os << "disk(" << d.center << ", " << d.radius << ")"; break;
    }
    return os.str();
}

inline bool disjoint(const Domain& a, const Domain& b) {
    using K = Domain::Kind;
    if (a.kind == K::disk && b.kind == K::disk) return std::abs(a.center - b.center) > a.radius + b.radius;
    if (a.kind != K::disk && b.kind != K::disk) {
        if (a.kind == b.kind) return false;
        const Domain& r = a.kind == K::right_of ? a : b;
        const Domain& l = a.kind == K::left_of ? a : b;
        return l.center < r.center;
    }
    const Domain& disk = a.kind == K::disk ? a : b;
    const Domain& line = a.kind == K::disk ? b : a;
    if (line.kind == K::right_of) return disk.center + disk.radius < line.center;
    return disk.center - disk.radius > line.center;
}

struct PingPongCertificate {
    bool passed = false;
    std::string reason;
    /// domains[letter]: region containing every reduced word starting with that letter applied to o.
    std::vector<Domain> domains;
};

/// Builds the attracting domain of each letter from isometric circles (c ≠ 0) or translation
/// strips (c = 0, a = d), and checks pairwise disjointness and that o lies outside all of them.
inline PingPongCertificate ping_pong_check(const GroupSpec& spec) {
    PingPongCertificate cert;
    auto fail = [&](std::string why) {
        cert.passed = false;
        cert.reason = std::move(why);
        return cert;
    };
    for (const auto& gen : spec.generators) {
        const Isometry& g = gen.matrix;
        const double scale = std::max({std::abs(g.a()), std::abs(g.b()), std::abs(g.c()), std::abs(g.d())});
        if (std::abs(g.c()) <= 1e-12 * scale) {
            if (std::abs(g.a() - g.d()) > 1e-9 * scale)
                return fail("generator '" + gen.name + "' fixes infinity but is not a translation");
            const double b = g.b() / g.d();
            if (std::abs(b) < 1e-12) return fail("generator '" + gen.name + "' is the identity");
            Domain fwd{b > 0 ? Domain::Kind::right_of : Domain::Kind::left_of, 0.5 * b, 0.0};
            Domain bwd{b > 0 ? Domain::Kind::left_of : Domain::Kind::right_of, -0.5 * b, 0.0};
            cert.domains.push_back(fwd);
            cert.domains.push_back(bwd);
        } else {
            const double r = 1.0 / std::abs(g.c());
            cert.domains.push_back({Domain::Kind::disk, g.a() / g.c(), r});
            cert.domains.push_back({Domain::Kind::disk, -g.d() / g.c(), r});
        }
    }
    const auto& doms = cert.domains;
    auto letter_name = [&](std::size_t l) {
        return spec.generators[l / 2].name + ((l & 1u) ? "^-1" : "");
    };
    for (std::size_t i = 0; i < doms.size(); ++i) {
        if (doms[i].contains(kOrigin)) return fail("basepoint lies in the domain of " + letter_name(i));
        for (std::size_t j = i + 1; j < doms.size(); ++j)
            if (!disjoint(doms[i], doms[j]))
                return fail("domains of " + letter_name(i) + " " + describe(doms[i]) + " and " + letter_name(j) + " " +
                            describe(doms[j]) + " overlap");
    }
    cert.passed = true;
    cert.reason = "pairwise disjoint domains for " + std::to_string(doms.size()) + " letters";
    return cert;
}

// ---------------------------------------------------------------------------------------------
// Orbit enumeration

struct OrbitPoint {
    Isometry gamma;
    Point image;
    double dist = 0.0;
    double direction_angle = 0.0;
    std::uint32_t node = 0;  // index in OrbitBall::nodes
};

struct WordNode {
    std::uint32_t parent = 0;
    Letter letter = 0;
    std::uint32_t length = 0;
};

struct OrbitBall {
    double radius = 0.0;
    std::vector<OrbitPoint> points;
    std::vector<WordNode> nodes;  // nodes[0] is the empty word
    GroupStructure strategy = GroupStructure::generic;
    bool certified = false;
    std::size_t dedup_collisions = 0;
    std::size_t visited = 0;

    Word word(std::uint32_t node) const {
        Word w(nodes[node].length);
        for (std::size_t i = w.size(); i > 0; --i) {
            w[i - 1] = nodes[node].letter;
            node = nodes[node].parent;
        }
        return w;
    }
    Word word(const OrbitPoint& p) const { return word(p.node); }
};

namespace detail {

/// Preorder rank of every node in the word trie, children visited by increasing letter. For
/// words of equal length this is their lexicographic order.
inline std::vector<std::uint32_t> trie_preorder(const std::vector<WordNode>& nodes) {
    const std::size_t n = nodes.size();
    std::vector<std::uint32_t> start(n + 1, 0), child(n > 0 ? n - 1 : 0);
    for (std::size_t i = 1; i < n; ++i) ++start[nodes[i].parent + 1];
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 1; i < n; ++i) child[fill[nodes[i].parent]++] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < n; ++i)
        std::sort(child.begin() + start[i], child.begin() + start[i + 1],
                  [&](std::uint32_t a, std::uint32_t b) { return nodes[a].letter < nodes[b].letter; });
    std::vector<std::uint32_t> rank(n, 0);
    std::vector<std::uint32_t> stack{0};
    std::uint32_t next = 0;
    while (!stack.empty()) {
        const std::uint32_t v = stack.back();
        stack.pop_back();
        rank[v] = next++;
        for (std::uint32_t k = start[v + 1]; k > start[v]; --k) stack.push_back(child[k - 1]);
    }
    return rank;
}

inline void sort_ball(OrbitBall& ball) {
    const auto rank = trie_preorder(ball.nodes);
    const auto& nodes = ball.nodes;
    std::sort(ball.points.begin(), ball.points.end(), [&](const OrbitPoint& x, const OrbitPoint& y) {
        if (x.dist != y.dist) return x.dist < y.dist;
        if (nodes[x.node].length != nodes[y.node].length) return nodes[x.node].length < nodes[y.node].length;
        return rank[x.node] < rank[y.node];
    });
}

inline OrbitPoint make_point(const Isometry& g, std::uint32_t node) {
    const Point img = g(kOrigin);
    return {g, img, dist(kOrigin, img), direction_angle(img), node};
}

inline void check_budget(const GroupSpec& spec, const OrbitBall& ball, double frontier) {
    if (ball.nodes.size() > spec.max_elements) {
        std::ostringstream os;
        os << "orbit enumeration exceeded the budget of " << spec.max_elements << " elements (" << ball.points.size()
           << " points within radius " << ball.radius << " found so far, search frontier at distance " << frontier
           << ")";
        throw budget_error(os.str());
    }
}

inline bool all_integer(const GroupSpec& spec) {
    for (const auto& g : spec.generators)
        for (double x : g.matrix.entries())
            if (std::abs(x - std::nearbyint(x)) > 1e-12) return false;
    return true;
}

struct IntKey {
    std::array<std::int64_t, 4> v;
    bool operator==(const IntKey&) const = default;
};
struct IntKeyHash {
    std::size_t operator()(const IntKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : k.v) {
            h ^= static_cast<std::uint64_t>(x);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

inline IntKey int_key(const Isometry& g) {
    return {{std::llround(g.a()), std::llround(g.b()), std::llround(g.c()), std::llround(g.d())}};
}

/// Dedup of real matrices: entries quantized to a 1e-9 grid; lookups probe the neighboring cells
/// so that two matrices closer than the grid step are always compared exactly.
class RealMatrixSet {
public:
    static constexpr double kStep = 1e-9;

    /// Returns false if an equal matrix (within kStep per entry) is already present.
    bool insert(const Isometry& g) {
        const auto& e = g.entries();
        std::array<std::int64_t, 4> cell{};
        std::array<int, 4> dir{};
        for (int k = 0; k < 4; ++k) {
            const double q = e[k] / kStep;
            cell[k] = static_cast<std::int64_t>(std::floor(q));
            dir[k] = (q - std::floor(q) < 0.5) ? -1 : 1;
        }
        for (int mask = 0; mask < 16; ++mask) {
            IntKey probe{cell};
            for (int k = 0; k < 4; ++k)
                if (mask & (1 << k)) probe.v[k] += dir[k];
            auto it = cells_.find(probe);
            if (it == cells_.end()) continue;
            for (const auto& other : it->second)
                if (g.distance_to(other) <= kStep) return false;
        }
        cells_[IntKey{cell}].push_back(g);
        return true;
    }

private:
    std::unordered_map<IntKey, std::vector<Isometry>, IntKeyHash> cells_;
};

/// Depth-first sweep over reduced words. Disk letters are pruned by the distance from o to the
/// image of their domain. A translation generator is expanded syllable by syllable: all of
/// f·t^m·(non-t letters) lies in t^m of a band of width |b| and bounded height, seen from f⁻¹o,
/// and the distance to that band grows monotonically in |m|.
inline OrbitBall enumerate_free_product(const GroupSpec& spec, double radius, const PingPongCertificate& cert) {
    OrbitBall ball;
    ball.radius = radius;
    ball.strategy = GroupStructure::free_product;
    ball.certified = true;
    ball.nodes.push_back({0, 0, 0});
    ball.points.push_back(make_point(Isometry::identity(), 0));
    const std::size_t letters = 2 * spec.generators.size();
    std::vector<Isometry> mats(letters);
    std::vector<HalfPlane> regions;
    int translation = -1;
    double band_height = 1.0;
    for (std::size_t l = 0; l < letters; ++l) {
        const Isometry& g = spec.generators[l / 2].matrix;
        mats[l] = (l & 1u) ? g.inverse() : g;
        regions.push_back(cert.domains[l].half_plane());
        if (cert.domains[l].kind == Domain::Kind::disk)
            band_height = std::max(band_height, cert.domains[l].radius);
        else
            translation = static_cast<int>(l / 2);
    }
    const double step = translation >= 0 ? std::abs(mats[2 * translation](kOrigin).re()) : 0.0;

    struct Frame {
        Isometry g;
        std::uint32_t node;
        int last;  // last letter, -1 for the empty word
    };
    std::vector<Frame> stack{{Isometry::identity(), 0, -1}};
    auto add_node = [&](const Frame& parent, std::size_t l, const Isometry& child) {
        const auto node = static_cast<std::uint32_t>(ball.nodes.size());
        ball.nodes.push_back(
            {parent.node, static_cast<Letter>(l), static_cast<std::uint32_t>(ball.nodes[parent.node].length + 1)});
        const OrbitPoint p = make_point(child, node);
        if (p.dist <= radius) ball.points.push_back(p);
        check_budget(spec, ball, p.dist);
        return Frame{child, node, static_cast<int>(l)};
    };
    // d(o, g(D_l)) = d(g⁻¹o, D_l), which stays accurate when g(D_l) is tiny.
    auto reaches = [&](const Isometry& g, std::size_t l) {
        return regions[l].distance_from(g.inverse()(kOrigin)) <= radius;
    };

    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        for (std::size_t l = 0; l < letters; ++l) {
            if (f.last >= 0 && l == inverse_letter(static_cast<Letter>(f.last))) continue;
            if (static_cast<int>(l / 2) == translation) continue;
            ++ball.visited;
            if (!reaches(f.g, l)) continue;
            stack.push_back(add_node(f, l, f.g * mats[l]));
        }
        if (translation < 0 || (f.last >= 0 && static_cast<int>(f.last / 2) == translation)) continue;
        const Point y = f.g.inverse()(kOrigin);
        const double reach = 2.0 * std::sqrt(y.im() * band_height) * std::sinh(0.5 * radius);
        for (std::size_t l : {std::size_t(2 * translation), std::size_t(2 * translation + 1)}) {
            Frame cur = f;
            const double dir = mats[l](kOrigin).re() > 0.0 ? 1.0 : -1.0;
            for (int m = 1;; ++m) {
                // Every point of t^m(band) is at least this far horizontally from f⁻¹o.
                const double gap = std::abs(dir * m * step - y.re()) - 0.5 * step;
                ++ball.visited;
                if (gap > reach) break;
                cur = add_node(cur, l, cur.g * mats[l]);
                bool deeper = false;
                for (std::size_t x = 0; x < letters && !deeper; ++x)
                    if (static_cast<int>(x / 2) != translation && reaches(cur.g, x)) deeper = true;
                if (deeper) stack.push_back(cur);
            }
        }
    }
    return ball;
}

enum class DedupMode { automatic, exact_integer, quantized };

inline OrbitBall enumerate_generic(const GroupSpec& spec, double radius, DedupMode mode = DedupMode::automatic) {
    OrbitBall ball;
    ball.radius = radius;
    ball.strategy = GroupStructure::generic;
    ball.certified = false;
    const std::size_t letters = 2 * spec.generators.size();
    std::vector<Isometry> mats(letters);
    double slack = 0.0;
    for (std::size_t l = 0; l < letters; ++l) {
        const Isometry& g = spec.generators[l / 2].matrix;
        mats[l] = (l & 1u) ? g.inverse() : g;
        slack = std::max(slack, dist(kOrigin, g(kOrigin)));
    }
    const bool exact = mode == DedupMode::automatic ? all_integer(spec) : mode == DedupMode::exact_integer;
    std::unordered_set<IntKey, IntKeyHash> seen_int;
    RealMatrixSet seen_real;
    auto fresh = [&](const Isometry& g) { return exact ? seen_int.insert(int_key(g)).second : seen_real.insert(g); };

    std::vector<Isometry> frontier{Isometry::identity()};
    std::vector<std::uint32_t> frontier_nodes{0};
    fresh(Isometry::identity());
    ball.nodes.push_back({0, 0, 0});
    ball.points.push_back(make_point(Isometry::identity(), 0));
    while (!frontier.empty()) {
        std::vector<Isometry> next;
        std::vector<std::uint32_t> next_nodes;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            for (std::size_t l = 0; l < letters; ++l) {
                ++ball.visited;
                const Isometry child = frontier[i] * mats[l];
                const Point img = child(kOrigin);
                const double d = dist(kOrigin, img);
                if (d > radius + slack) continue;
                if (!fresh(child)) {
                    ++ball.dedup_collisions;
                    continue;
                }
                const auto node = static_cast<std::uint32_t>(ball.nodes.size());
                const WordNode& pn = ball.nodes[frontier_nodes[i]];
                ball.nodes.push_back({frontier_nodes[i], static_cast<Letter>(l), static_cast<std::uint32_t>(pn.length + 1)});
                if (d <= radius) ball.points.push_back({child, img, d, direction_angle(img), node});
                next.push_back(child);
                next_nodes.push_back(node);
                check_budget(spec, ball, d);
            }
        }
        frontier.swap(next);
        frontier_nodes.swap(next_nodes);
    }
    return ball;
}

}  // namespace detail

/// All γ with d(o, γo) ≤ radius, sorted by distance then by shortlex word.
inline OrbitBall enumerate_orbit(const GroupSpec& spec, double radius) {
    if (!(radius >= 0.0) || !std::isfinite(radius)) throw validation_error("orbit radius must be a finite number >= 0");
    validate(spec);
    OrbitBall ball;
    if (spec.structure == GroupStructure::free_product) {
        const PingPongCertificate cert = ping_pong_check(spec);
        if (!cert.passed) throw validation_error("ping-pong check failed: " + cert.reason);
        ball = detail::enumerate_free_product(spec, radius, cert);
    } else {
        ball = detail::enumerate_generic(spec, radius);
    }
    detail::sort_ball(ball);
    return ball;
}

// ---------------------------------------------------------------------------------------------
// Cosets of a parabolic subgroup

struct CosetRep {
    std::size_t index = 0;  // position in ball.points
    BoundaryPoint cusp_image = BoundaryPoint::infinity();
};

/// One representative per coset γΠ meeting the ball, Π = <pi_gen>: cosets are told apart by the
/// image γ(ξ_Π) of the parabolic fixed point; the representative minimizes d(o, γo).
inline std::vector<CosetRep> coset_reps_mod_parabolic(const OrbitBall& ball, const Isometry& pi_gen,
                                                      double tol = 1e-9) {
    const Classification c = classify(pi_gen);
    if (c.kind != IsometryKind::parabolic) throw validation_error("coset representatives need a parabolic generator");
    const BoundaryPoint fixed = *c.attracting;
    struct Entry {
        double angle;
        std::size_t index;
        BoundaryPoint image;
    };
    std::vector<Entry> entries;
    entries.reserve(ball.points.size());
    for (std::size_t i = 0; i < ball.points.size(); ++i) {
        const BoundaryPoint img = ball.points[i].gamma(fixed);
        double a = img.angle();
        if (a > kTwoPi - tol) a -= kTwoPi;  // fold the images just below ∞ onto it
        entries.push_back({a, i, img});
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.angle < y.angle; });
    std::vector<CosetRep> reps;
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        std::size_t best = entries[i].index;
        BoundaryPoint image = entries[i].image;
        while (j < entries.size() && entries[j].angle - entries[i].angle <= tol) {
            // ball.points is sorted by distance then word, so the smallest index is the representative.
            if (entries[j].index < best) {
                best = entries[j].index;
                image = entries[j].image;
            }
            ++j;
        }
        reps.push_back({best, image});
        i = j;
    }
    std::sort(reps.begin(), reps.end(), [](const CosetRep& a, const CosetRep& b) { return a.index < b.index; });
    return reps;
}

}  // namespace horoshadow

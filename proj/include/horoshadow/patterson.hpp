#pragma once

// Orbit counting, critical exponents, the parabolic growth condition and atomic Patterson measures.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "horoshadow/arc.hpp"
#include "horoshadow/geometry.hpp"
#include "horoshadow/group.hpp"

namespace horoshadow {

// ---------------------------------------------------------------------------------------------
// Counting

/// shells[k] = #{γ : d(o,γo) ∈ [k, k+1)}, cumulative[k] = #{γ : d(o,γo) ≤ k}.
struct CountingProfile {
    double radius = 0.0;
    std::vector<std::size_t> shells;
    std::vector<std::size_t> cumulative;
    std::size_t total = 0;

    /// Largest integer T with the whole of [0, T] inside the enumerated radius.
    int max_T() const { return static_cast<int>(cumulative.size()) - 1; }
    /// Shells [T, T+1) that are complete.
    bool shell_complete(int T) const { return T >= 0 && T + 1 <= radius; }
};

inline CountingProfile counting_profile(const std::vector<double>& distances, double radius) {
    CountingProfile p;
    p.radius = radius;
    const auto top = static_cast<std::size_t>(std::floor(radius));
    p.shells.assign(top + 1, 0);
    p.cumulative.assign(top + 1, 0);
    for (double d : distances) {
        if (d > radius) continue;
        ++p.total;
        ++p.shells[std::min(top, static_cast<std::size_t>(std::floor(d)))];
        const auto first = static_cast<std::size_t>(std::ceil(d));
        if (first <= top) ++p.cumulative[first];
    }
    for (std::size_t k = 1; k <= top; ++k) p.cumulative[k] += p.cumulative[k - 1];
    return p;
}

inline CountingProfile counting_profile(const OrbitBall& ball) {
    std::vector<double> d;
    d.reserve(ball.points.size());
    for (const auto& p : ball.points) d.push_back(p.dist);
    return counting_profile(d, ball.radius);
}

/// Orbit distances d(o, g^n o), n ∈ Z, up to the radius. The displacement is monotone in |n|
/// for parabolic and hyperbolic g.
inline std::vector<double> cyclic_orbit_distances(const Isometry& g, double radius) {
    const IsometryKind kind = classify(g).kind;
    if (kind == IsometryKind::identity || kind == IsometryKind::elliptic)
        throw validation_error("cyclic orbit: generator must be parabolic or hyperbolic");
    std::vector<double> out{0.0};
    for (const Isometry& step : {g, g.inverse()}) {
        Isometry pw = step;
        while (true) {
            const double d = dist(kOrigin, pw(kOrigin));
            if (d > radius) break;
            out.push_back(d);
            pw = pw * step;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string profile_csv(const CountingProfile& p) {
    std::ostringstream os;
    os << "T,shell,cumulative\n";
    for (std::size_t k = 0; k < p.cumulative.size(); ++k) os << k << ',' << p.shells[k] << ',' << p.cumulative[k] << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------------------------
// Critical exponent

enum class DeltaMethod { log_count_fit, shell_divergence };

inline const char* to_string(DeltaMethod m) {
    return m == DeltaMethod::log_count_fit ? "log_count_fit" : "shell_divergence";
}

struct CriticalExponentEstimate {
    double delta_hat = 0.0;
    double stderr_ = 0.0;
    int t_min = 0;
    int t_max = 0;
    DeltaMethod method = DeltaMethod::log_count_fit;
};

struct DeltaWindow {
    int t_min = 6;
    int t_max = 12;
    std::size_t min_count = 50;  // required at t_max
};

inline void check_window(const CountingProfile& p, const DeltaWindow& w) {
    if (w.t_max - w.t_min < 2) throw validation_error("insufficient data: delta window [" + std::to_string(w.t_min) + ", " +
                                                         std::to_string(w.t_max) + "] needs at least three integer radii");
    if (w.t_min < 0 || w.t_max > p.max_T())
        throw validation_error("insufficient data: delta window [" + std::to_string(w.t_min) + ", " +
                               std::to_string(w.t_max) + "] exceeds the enumerated radius " +
                               std::to_string(p.radius));
    if (p.cumulative[w.t_max] < w.min_count)
        throw validation_error("insufficient data: N(" + std::to_string(w.t_max) + ") = " +
                               std::to_string(p.cumulative[w.t_max]) + " < " + std::to_string(w.min_count));
}

/// Least-squares slope of log N(T) against T over the integer radii of the window.
inline CriticalExponentEstimate estimate_delta(const CountingProfile& p, const DeltaWindow& w) {
    check_window(p, w);
    std::vector<double> xs, ys;
    for (int T = w.t_min; T <= w.t_max; ++T) {
        xs.push_back(T);
        ys.push_back(std::log(static_cast<double>(p.cumulative[T])));
    }
    const LinearFit fit = least_squares(xs, ys);
    return {fit.slope, fit.slope_stderr, w.t_min, w.t_max, DeltaMethod::log_count_fit};
}

/// Bisection for the exponent s at which the shell sums Σ_{d∈[k,k+1)} e^{-sd} stop growing
/// across the window.
inline CriticalExponentEstimate estimate_delta_divergence(const CountingProfile& p, const DeltaWindow& w,
                                                          const std::vector<double>& distances) {
    check_window(p, w);
    auto growth = [&](double s) {
        std::vector<double> shell(static_cast<std::size_t>(w.t_max + 1), 0.0);
        for (double d : distances)
            if (d < w.t_max + 1 && d >= w.t_min) shell[static_cast<std::size_t>(d)] += std::exp(-s * d);
        std::vector<double> xs, ys;
        for (int k = w.t_min; k <= w.t_max; ++k)
            if (shell[k] > 0.0) {
                xs.push_back(k);
                ys.push_back(std::log(shell[k]));
            }
        return least_squares(xs, ys);
    };
    double lo = 0.0, hi = 4.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (growth(mid).slope > 0.0 ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);
    return {s, growth(s).slope_stderr, w.t_min, w.t_max, DeltaMethod::shell_divergence};
}

// ---------------------------------------------------------------------------------------------
// Growth condition for a parabolic subgroup

struct ShellRatio {
    int T = 0;
    std::size_t count = 0;
    double ratio = 0.0;  // count / e^{δ_Π T}
};

struct GrowthCheckReport {
    std::vector<ShellRatio> shells;
    double d_hat = 1.0;
    double cap = 4.0;
    bool passed = false;
    bool out_of_scope = false;  // δ_Π = 0
    std::string reason;
};

inline GrowthCheckReport growth_condition_check(const CountingProfile& p, double delta_pi, int t_min, int t_max,
                                                double cap = 4.0) {
    GrowthCheckReport r;
    r.cap = cap;
    if (t_min < 0 || t_max < t_min || !p.shell_complete(t_max))
        throw validation_error("growth window [" + std::to_string(t_min) + ", " + std::to_string(t_max) +
                               "] needs complete shells up to radius " + std::to_string(t_max + 1));
    r.out_of_scope = delta_pi <= 0.0;
    for (int T = t_min; T <= t_max; ++T) {
        const std::size_t c = p.shells[T];
        if (c == 0) {
            r.passed = false;
            r.reason = "empty shell at T = " + std::to_string(T);
            return r;
        }
        const double ratio = static_cast<double>(c) / std::exp(delta_pi * T);
        r.shells.push_back({T, c, ratio});
        r.d_hat = std::max({r.d_hat, ratio, 1.0 / ratio});
    }
    r.passed = r.d_hat <= cap && !r.out_of_scope;
    if (r.out_of_scope)
        r.reason = "delta_pi = 0 is outside the scope of the growth condition";
    else
        r.reason = r.passed ? "all shell ratios within [1/cap, cap]" : "shell ratio outside [1/cap, cap]";
    return r;
}

// ---------------------------------------------------------------------------------------------
// Poincaré series and the atomic measure

inline double poincare_partial(const OrbitBall& ball, double s) {
    if (!(s >= 0.0)) throw validation_error("poincare_partial: s must be >= 0");
    CompensatedSum acc;
    for (const auto& p : ball.points) acc.add(std::exp(-s * p.dist));
    return acc.value();
}

struct Atom {
    double angle = 0.0;
    double weight = 0.0;
    BoundaryPoint point = BoundaryPoint::infinity();
};

class AtomicBoundaryMeasure {
public:
    AtomicBoundaryMeasure() = default;

    /// Sorts the atoms by angle (stable, so equal angles keep the caller's order).
    AtomicBoundaryMeasure(std::vector<Atom> atoms, Point basepoint) : atoms_(std::move(atoms)), basepoint_(basepoint) {
        for (const auto& a : atoms_)
            if (!(a.weight > 0.0) || !std::isfinite(a.weight)) throw validation_error("atom weights must be positive");
        std::stable_sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.angle < y.angle; });
        prefix_.resize(atoms_.size() + 1, 0.0);
        CompensatedSum acc;
        for (std::size_t i = 0; i < atoms_.size(); ++i) {
            acc.add(atoms_[i].weight);
            prefix_[i + 1] = acc.value();
        }
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    const Point& basepoint() const { return basepoint_; }
    std::size_t size() const { return atoms_.size(); }
    double total() const { return prefix_.empty() ? 0.0 : prefix_.back(); }

    // Provenance stamps.
    double s_used = 0.0;
    double T_used = 0.0;
    double shell_width = 0.0;    // 0: every orbit point of the ball is an atom
    double normalization = 1.0;  // raw Poincaré partial sum divided out
    double tail_fraction = 0.0;
    std::uint64_t spec_hash = 0;
    std::vector<std::string> warnings;

    /// Index range [first, last) of the atoms with angle in [lo, hi), lo ≤ hi.
    std::pair<std::size_t, std::size_t> range(double lo, double hi) const {
        auto key = [](const Atom& a, double v) { return a.angle < v; };
        const auto b = std::lower_bound(atoms_.begin(), atoms_.end(), lo, key) - atoms_.begin();
        const auto e = std::lower_bound(atoms_.begin(), atoms_.end(), hi, key) - atoms_.begin();
        return {static_cast<std::size_t>(b), static_cast<std::size_t>(e)};
    }

    /// Index ranges covering the atoms inside the arc (two when it wraps past angle 0).
    std::vector<std::pair<std::size_t, std::size_t>> ranges(const Arc& a) const {
        if (a.is_full()) return {{0, atoms_.size()}};
        const double lo = a.lo(), end = a.lo() + a.length();
        if (end <= kTwoPi) return {range(lo, end)};
        return {range(lo, kTwoPi), range(0.0, end - kTwoPi)};
    }

    std::size_t count_in(const Arc& a) const {
        if (a.is_full()) return atoms_.size();
        const double lo = a.lo(), end = a.lo() + a.length();
        if (end <= kTwoPi) {
            const auto [b, e] = range(lo, end);
            return e - b;
        }
        const auto [b1, e1] = range(lo, kTwoPi);
        const auto [b2, e2] = range(0.0, end - kTwoPi);
        return (e1 - b1) + (e2 - b2);
    }

    double measure_of_arc(const Arc& a) const {
        if (a.is_full()) return total();
        const double lo = a.lo(), end = a.lo() + a.length();
        if (end <= kTwoPi) return sum(range(lo, end));
        return sum(range(lo, kTwoPi)) + sum(range(0.0, end - kTwoPi));
    }

private:
    // Short ranges are summed directly so that small arcs keep full relative precision.
    double sum(std::pair<std::size_t, std::size_t> r) const {
        if (r.second - r.first > 4096) return prefix_[r.second] - prefix_[r.first];
        CompensatedSum acc;
        for (std::size_t i = r.first; i < r.second; ++i) acc.add(atoms_[i].weight);
        return acc.value();
    }

    std::vector<Atom> atoms_;
    Point basepoint_ = kOrigin;
    std::vector<double> prefix_;
};

struct PattersonOptions {
    double tail_limit = 0.5;  // tail fractions above this are recorded as a warning
    std::uint64_t spec_hash = 0;
    /// Only orbit points with d(o,γo) > T - shell_width become atoms; 0 keeps the whole ball.
    double shell_width = 1.0;
};

/// Estimated share of Σ_γ e^{-s d(o,γo)} beyond the ball: the last complete shell continued
/// geometrically at rate e^{δ̂ - s}.
inline double patterson_tail_fraction(const OrbitBall& ball, double s, double delta_hat) {
    const int last = static_cast<int>(std::floor(ball.radius)) - 1;
    if (last < 0) return 0.0;
    CompensatedSum inside, shell;
    for (const auto& p : ball.points) {
        const double w = std::exp(-s * p.dist);
        inside.add(w);
        if (p.dist >= last && p.dist < last + 1) shell.add(w);
    }
    const double r = std::exp(delta_hat - s);
    const double tail = shell.value() * r / (1.0 - r);
    return tail / (inside.value() + tail);
}

/// Atoms at the radial directions of the orbit points in the outer shell of the ball, weighted
/// by e^{-s d(o,γo)} and normalized. An identity atom sits at angle 0 by the direction convention.
inline AtomicBoundaryMeasure build_patterson(const OrbitBall& ball, double s, double delta_hat,
                                             const PattersonOptions& opts = {}) {
    if (!(s > delta_hat)) throw validation_error("build_patterson: s must exceed the critical exponent estimate");
    if (!(opts.shell_width >= 0.0)) throw validation_error("build_patterson: shell width must be >= 0");
    const double floor_d = opts.shell_width > 0.0 ? ball.radius - opts.shell_width : -1.0;
    CompensatedSum total;
    for (const auto& p : ball.points)
        if (p.dist > floor_d) total.add(std::exp(-s * p.dist));
    const double norm = total.value();
    if (!(norm > 0.0)) throw validation_error("build_patterson: no orbit points in the measure shell");
    std::vector<Atom> atoms;
    atoms.reserve(ball.points.size());
    for (const auto& p : ball.points)
        if (p.dist > floor_d)
            atoms.push_back({p.direction_angle, std::exp(-s * p.dist) / norm, BoundaryPoint::from_angle(p.direction_angle)});
    AtomicBoundaryMeasure mu(std::move(atoms), kOrigin);
    mu.s_used = s;
    mu.T_used = ball.radius;
    mu.shell_width = opts.shell_width;
    mu.normalization = norm;
    mu.tail_fraction = patterson_tail_fraction(ball, s, delta_hat);
    mu.spec_hash = opts.spec_hash;
    if (mu.tail_fraction > opts.tail_limit) {
        std::ostringstream os;
        os << "estimated tail weight fraction " << mu.tail_fraction << " exceeds " << opts.tail_limit;
        mu.warnings.push_back(os.str());
    }
    return mu;
}

inline AtomicBoundaryMeasure with_stamps(AtomicBoundaryMeasure out, const AtomicBoundaryMeasure& from) {
    out.s_used = from.s_used;
    out.T_used = from.T_used;
    out.shell_width = from.shell_width;
    out.normalization = from.normalization;
    out.tail_fraction = from.tail_fraction;
    out.spec_hash = from.spec_hash;
    out.warnings = from.warnings;
    return out;
}

/// The measure at x of the conformal family: weights times e^{-δ β_ξ(x, basepoint)}, not renormalized.
inline AtomicBoundaryMeasure conformal_reweight(const AtomicBoundaryMeasure& mu, const Point& x, double delta) {
    std::vector<Atom> atoms = mu.atoms();
    for (auto& a : atoms) a.weight *= std::exp(-delta * busemann(a.point, x, mu.basepoint()));
    return with_stamps(AtomicBoundaryMeasure(std::move(atoms), x), mu);
}

inline AtomicBoundaryMeasure pushforward(const AtomicBoundaryMeasure& mu, const Isometry& g) {
    std::vector<Atom> atoms = mu.atoms();
    for (auto& a : atoms) {
        a.point = g(a.point);
        a.angle = a.point.angle();
    }
    return with_stamps(AtomicBoundaryMeasure(std::move(atoms), g(mu.basepoint())), mu);
}

/// Σ over `cells` equal arcs of |μ(A) - ν(A)|: total variation seen at a fixed resolution.
inline double partition_distance(const AtomicBoundaryMeasure& mu, const AtomicBoundaryMeasure& nu,
                                 std::size_t cells) {
    CompensatedSum acc;
    const double w = kTwoPi / static_cast<double>(cells);
    for (std::size_t k = 0; k < cells; ++k) {
        const Arc a(w * static_cast<double>(k), w);
        acc.add(std::abs(mu.measure_of_arc(a) - nu.measure_of_arc(a)));
    }
    return acc.value();
}

/// Gap between g_*ν̂_o and the conformal reweighting of ν̂_o at go, which agree for the true
/// measure. The exponent is the one of the conformal relation being tested.
inline double quasi_invariance_defect(const AtomicBoundaryMeasure& mu, const Isometry& g, double exponent,
                                      std::size_t cells = 256) {
    return partition_distance(pushforward(mu, g), conformal_reweight(mu, g(mu.basepoint()), exponent), cells);
}

// ---------------------------------------------------------------------------------------------
// Measure files

inline constexpr const char* kMeasureHeader = "# horoshadow-measure v1";

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline void write_measure(std::ostream& os, const AtomicBoundaryMeasure& mu) {
    os << kMeasureHeader << '\n';
    os << "# spec_hash " << hex64(mu.spec_hash) << '\n';
    os << "# s " << format_double(mu.s_used) << '\n';
    os << "# T " << format_double(mu.T_used) << '\n';
    os << "# shell_width " << format_double(mu.shell_width) << '\n';
    os << "# basepoint " << format_double(mu.basepoint().re()) << ' ' << format_double(mu.basepoint().im()) << '\n';
    os << "# normalization " << format_double(mu.normalization) << '\n';
    os << "# tail_fraction " << format_double(mu.tail_fraction) << '\n';
    os << "# atoms " << mu.size() << '\n';
    os << "angle,weight\n";
    for (const auto& a : mu.atoms()) os << format_double(a.angle) << ',' << format_double(a.weight) << '\n';
}

inline AtomicBoundaryMeasure read_measure(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kMeasureHeader) throw validation_error("measure file: bad or missing header");
    double s = 0, T = 0, width = 0, norm = 1, tail = 0, bre = 0, bim = 1;
    std::uint64_t hash = 0;
    std::size_t expected = 0;
    while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
        std::istringstream ls(line.substr(2));
        std::string key;
        ls >> key;
        if (key == "spec_hash") ls >> std::hex >> hash;
        else if (key == "s") ls >> s;
        else if (key == "T") ls >> T;
        else if (key == "shell_width") ls >> width;
        else if (key == "basepoint") ls >> bre >> bim;
        else if (key == "normalization") ls >> norm;
        else if (key == "tail_fraction") ls >> tail;
        else if (key == "atoms") ls >> expected;
        if (ls.fail()) throw validation_error("measure file: malformed header line '" + line + "'");
    }
    if (line != "angle,weight") throw validation_error("measure file: missing column header");
    std::vector<Atom> atoms;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw validation_error("measure file: malformed row " + std::to_string(lineno));
        const double angle = std::stod(line.substr(0, comma));
        const double weight = std::stod(line.substr(comma + 1));
        atoms.push_back({angle, weight, BoundaryPoint::from_angle(angle)});
    }
    if (atoms.size() != expected) throw validation_error("measure file: atom count does not match the header");
    AtomicBoundaryMeasure mu(std::move(atoms), Point(bre, bim));
    mu.s_used = s;
    mu.T_used = T;
    mu.shell_width = width;
    mu.normalization = norm;
    mu.tail_fraction = tail;
    mu.spec_hash = hash;
    return mu;
}

}  // namespace horoshadow

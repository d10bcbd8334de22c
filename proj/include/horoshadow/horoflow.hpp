#pragma once

// Unit vectors as (u-, u+, s), strong unstable horocycles with their Hamenstädt distance, the
// measures μ_{H+} built from an atomic boundary measure, and horospherical means of cusp regions.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "horoshadow/horoballs.hpp"
#include "horoshadow/patterson.hpp"

namespace horoshadow {

/// Coordinates (u-, u+, β_{u-}(π(u), o)).
struct UnitVector {
    BoundaryPoint u_minus = BoundaryPoint::infinity();
    BoundaryPoint u_plus = BoundaryPoint::real(0.0);
    double s = 0.0;

    UnitVector(BoundaryPoint minus, BoundaryPoint plus, double level) : u_minus(minus), u_plus(plus), s(level) {
        if (nearly_equal(minus, plus)) throw validation_error("unit vector needs distinct endpoints u- and u+");
        if (!std::isfinite(level)) throw validation_error("unit vector level must be finite");
    }
};

/// The vector based at x on the geodesic coming from `minus`.
inline UnitVector vector_from(const BoundaryPoint& minus, const Point& x) {
    return UnitVector(minus, backward_endpoint(x, minus), busemann(minus, x, kOrigin));
}

/// The vector based at x pointing at `plus`.
inline UnitVector vector_at(const Point& x, const BoundaryPoint& plus) {
    const BoundaryPoint minus = backward_endpoint(x, plus);
    return UnitVector(minus, plus, busemann(minus, x, kOrigin));
}

/// g₀ with g₀(center) = ∞.
inline Isometry horocycle_normalizer(const BoundaryPoint& center) {
    if (center.is_infinity()) return Isometry::identity();
    return Isometry(0.0, -1.0, 1.0, -center.value());
}

/// The horocycle centered at `center` on which β_center(·, o) = level, seen through g₀ as the line
/// {Im = height}. Vectors of H+ are parametrized by the real coordinate of g₀(v+).
class HorocycleFrame {
public:
    HorocycleFrame(BoundaryPoint center, double level)
        : center_(center), level_(level), g0_(horocycle_normalizer(center)), g0_inv_(g0_.inverse()) {
        height_ = g0_(kOrigin).im() * std::exp(-level);
        if (!(height_ > 0.0) || !std::isfinite(height_)) throw validation_error("horocycle height out of range");
    }
    static HorocycleFrame of(const UnitVector& u) { return HorocycleFrame(u.u_minus, u.s); }

    const BoundaryPoint& center() const { return center_; }
    double level() const { return level_; }
    double height() const { return height_; }
    const Isometry& normalizer() const { return g0_; }

    double coordinate(const BoundaryPoint& plus) const {
        const BoundaryPoint q = g0_(plus);
        if (q.is_infinity()) throw validation_error("horocycle frame: the frame center has no coordinate");
        return q.value();
    }
    BoundaryPoint endpoint_at(double x) const { return g0_inv_(BoundaryPoint::real(x)); }
    Point basepoint_at(double x) const { return g0_inv_(Point(x, height_)); }
    UnitVector vector_at(double x) const { return UnitVector(center_, endpoint_at(x), level_); }

    bool contains(const UnitVector& v, double tol = 1e-9) const {
        return nearly_equal(v.u_minus, center_, 1e-12) && std::abs(v.s - level_) <= tol * std::max(1.0, std::abs(level_));
    }

    /// Endpoints v+ of the vectors with coordinate in [x0, x1], as a counterclockwise arc.
    Arc arc_between(double x0, double x1) const {
        if (!(x1 > x0)) throw validation_error("horocycle arc needs x0 < x1");
        return Arc::from_endpoints(endpoint_at(x0).angle(), endpoint_at(x1).angle());
    }

private:
    BoundaryPoint center_;
    double level_;
    Isometry g0_, g0_inv_;
    double height_ = 1.0;
};

inline Point basepoint(const UnitVector& u) {
    const HorocycleFrame f = HorocycleFrame::of(u);
    return f.basepoint_at(f.coordinate(u.u_plus));
}

inline UnitVector geodesic_flow(const UnitVector& u, double t) { return UnitVector(u.u_minus, u.u_plus, u.s + t); }

/// d_{H+}(u, v) as Euclidean distance over height in the normalized chart.
inline double hamenstadt_distance(const UnitVector& u, const UnitVector& v) {
    const HorocycleFrame f = HorocycleFrame::of(u);
    if (!f.contains(v)) throw validation_error("hamenstadt_distance: vectors lie on different horocycles");
    return std::abs(f.coordinate(u.u_plus) - f.coordinate(v.u_plus)) / f.height();
}

/// exp(β_{u+}(x, π(u))/2 + β_{v+}(x, π(v))/2) · d_x(u+, v+) for a witness point x.
inline double hamenstadt_distance_via(const UnitVector& u, const UnitVector& v, const Point& x) {
    if (!HorocycleFrame::of(u).contains(v)) throw validation_error("hamenstadt_distance: vectors lie on different horocycles");
    return std::exp(0.5 * busemann(u.u_plus, x, basepoint(u)) + 0.5 * busemann(v.u_plus, x, basepoint(v))) *
           visual_distance(x, u.u_plus, v.u_plus);
}

/// v+ arc of the Hamenstädt ball B+(u, r).
inline Arc hamenstadt_ball_arc(const UnitVector& u, double r) {
    if (!(r > 0.0)) throw validation_error("Hamenstädt ball radius must be > 0");
    const HorocycleFrame f = HorocycleFrame::of(u);
    const double x = f.coordinate(u.u_plus);
    return f.arc_between(x - r * f.height(), x + r * f.height());
}

struct HoroballIntersection {
    UnitVector top;       // highest vector of H+(u) inside the horoball
    double height = 0.0;  // depth of π(top)
    double radius = 0.0;  // sqrt(e^height - 1)
};

/// H+ ∩ horoball, a Hamenstädt ball around the highest vector; nothing when they miss.
inline std::optional<HoroballIntersection> horoball_ball_intersection(const HorocycleFrame& f, const Horoball& hb) {
    if (nearly_equal(hb.center(), f.center(), 1e-12))
        throw validation_error("horoball_ball_intersection: horoball and horocycle share their center");
    const Horoball n = hb.transformed(f.normalizer());
    const double diameter = n.euclidean_size();
    if (f.height() > diameter * (1.0 + 1e-12)) return std::nullopt;
    const UnitVector top(f.center(), hb.center(), f.level());
    const double h = std::max(0.0, hb.depth(f.basepoint_at(n.center().value())));
    return HoroballIntersection{top, h, std::sqrt(std::expm1(h))};
}

// ---------------------------------------------------------------------------
// μ_{H+}: dμ(v) = exp(δ β_{v+}(o, π(v))) dν_o(v+)

inline double mu_weight(const HorocycleFrame& f, const Atom& a, double delta) {
    return a.weight * std::exp(delta * busemann(a.point, kOrigin, f.basepoint_at(f.coordinate(a.point))));
}

inline double mu_arc_mass(const HorocycleFrame& f, const AtomicBoundaryMeasure& mu, const Arc& vplus_arc, double delta) {
    if (vplus_arc.contains(f.center().angle()) || vplus_arc.is_full())
        throw validation_error("mu_arc_mass: the arc contains the horocycle center");
    CompensatedSum acc;
    for (const auto& [b, e] : mu.ranges(vplus_arc))
        for (std::size_t i = b; i < e; ++i) acc.add(mu_weight(f, mu.atoms()[i], delta));
    return acc.value();
}

/// Atoms of B+(u, r_max) with their Hamenstädt distance to u, μ_{H+} weight and basepoint depth.
struct HorocycleAtom {
    double offset = 0.0;
    double weight = 0.0;
    double depth = 0.0;  // 0 when the basepoint is in no listed horoball
    bool resolved = true;
};

inline std::vector<HorocycleAtom> horocycle_atoms(const UnitVector& u, double r_max, const AtomicBoundaryMeasure& mu,
                                                  double delta, const HoroballIndex* index = nullptr) {
    const HorocycleFrame f = HorocycleFrame::of(u);
    const double x0 = f.coordinate(u.u_plus);
    std::vector<HorocycleAtom> out;
    for (const auto& [b, e] : mu.ranges(hamenstadt_ball_arc(u, r_max))) {
        for (std::size_t i = b; i < e; ++i) {
            const Atom& a = mu.atoms()[i];
            const double x = f.coordinate(a.point);
            const Point p = f.basepoint_at(x);
            HorocycleAtom h;
            h.offset = std::abs(x - x0) / f.height();
            if (h.offset > r_max) continue;
            h.weight = a.weight * std::exp(delta * busemann(a.point, kOrigin, p));
            if (index) {
                const PositionClass pc = classify_position(p, *index);
                h.depth = pc.depth;
                h.resolved = pc.resolved;
            }
            out.push_back(h);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const HorocycleAtom& a, const HorocycleAtom& b) { return a.offset < b.offset; });
    return out;
}

struct CuspFraction {
    double fraction = 0.0;  // μ-share of B+(u, r) based at depth ≥ N
    double mass = 0.0;      // μ_{H+}(B+(u, r))
    std::size_t atoms = 0;
    std::size_t deep_atoms = 0;  // atoms based at depth ≥ N
    std::size_t unresolved_atoms = 0;
    bool starved = false;        // fewer atoms than the floor in the ball
    bool deep_starved = false;   // some but fewer than the floor at depth ≥ N
};

inline CuspFraction cusp_fraction_of(const std::vector<HorocycleAtom>& atoms, double r, double N, std::size_t floor) {
    CuspFraction out;
    CompensatedSum all, deep;
    for (const auto& a : atoms) {
        if (a.offset > r) break;
        ++out.atoms;
        all.add(a.weight);
        if (!a.resolved) ++out.unresolved_atoms;
        if (a.depth > 0.0 && a.depth >= N) {
            deep.add(a.weight);
            ++out.deep_atoms;
        }
    }
    out.mass = all.value();
    out.starved = out.atoms < floor || !(out.mass > 0.0);
    out.deep_starved = out.deep_atoms > 0 && out.deep_atoms < floor;
    out.fraction = out.mass > 0.0 ? std::min(1.0, deep.value() / out.mass) : 0.0;
    return out;
}

/// M_{r,u} of the indicator of basepoints at depth ≥ N in a listed horoball.
inline CuspFraction mean_cusp_fraction(const UnitVector& u, double r, double N, const AtomicBoundaryMeasure& mu,
                                       const HoroballIndex& index, double delta, std::size_t atom_floor = 20) {
    return cusp_fraction_of(horocycle_atoms(u, r, mu, delta, &index), r, N, atom_floor);
}

struct DoublingRatio {
    double ratio = std::numeric_limits<double>::quiet_NaN();
    double inner_mass = 0.0, outer_mass = 0.0;
    std::size_t inner_atoms = 0, outer_atoms = 0;
    bool zero_denominator = false;
    bool under_resolved = false;  // both balls hold the same atoms
};

/// μ(B+(u, 3r)) / μ(B+(u, r)) from atoms sorted by offset and covering B+(u, 3r).
inline DoublingRatio doubling_ratio_of(const std::vector<HorocycleAtom>& atoms, double r) {
    DoublingRatio out;
    CompensatedSum inner, outer;
    for (const auto& a : atoms) {
        if (a.offset > 3.0 * r) break;
        outer.add(a.weight);
        ++out.outer_atoms;
        if (a.offset <= r) {
            inner.add(a.weight);
            ++out.inner_atoms;
        }
    }
    out.inner_mass = inner.value();
    out.outer_mass = outer.value();
    out.zero_denominator = !(out.inner_mass > 0.0);
    out.under_resolved = out.inner_atoms == out.outer_atoms;
    if (!out.zero_denominator) out.ratio = out.outer_mass / out.inner_mass;
    return out;
}

inline DoublingRatio doubling_ratio(const UnitVector& u, double r, const AtomicBoundaryMeasure& mu, double delta) {
    return doubling_ratio_of(horocycle_atoms(u, 3.0 * r, mu, delta), r);
}

// ---------------------------------------------------------------------------
// Cusp mass profile f(r, N) over a family of vectors

struct CuspProfileOptions {
    std::size_t atom_floor = 20;
    double epsilon = 0.05;
    double fit_min_N = 2.0 * std::log(3.0);  // the mean bound needs N ≥ 2 log 3
    /// Depths up to (T - margin)/2 are resolved by a measure built at radius T.
    double resolution_margin = 4.0;
    std::size_t threads = 0;  // 0: hardware concurrency
};

struct CuspMassProfile {
    std::vector<UnitVector> vectors;
    std::vector<double> r_grid, N_grid;
    std::vector<std::vector<std::vector<CuspFraction>>> cells;  // cells[k][i][j] = f for vector k, r_i, N_j
    std::vector<double> sup_fraction;  // over vectors and r with enough atoms in the ball and deep part, per N
    std::optional<double> n_hat;       // first N from which sup f ≤ ε
    double epsilon = 0.05;
    double fit_min_N = 0.0, fit_max_N = 0.0;
    double slope = std::numeric_limits<double>::quiet_NaN();
    double slope_stderr = std::numeric_limits<double>::quiet_NaN();
    std::size_t fit_points = 0;
    double max_doubling = std::numeric_limits<double>::quiet_NaN();  // over cells that are not under-resolved
    std::size_t doubling_cells = 0, doubling_flagged = 0;
    double min_disk_diameter = 0.0;
};

inline CuspMassProfile cusp_mass_profile(const std::vector<UnitVector>& vectors, std::vector<double> r_grid,
                                         std::vector<double> N_grid, const AtomicBoundaryMeasure& mu,
                                         const HoroballIndex& index, double delta, const CuspProfileOptions& opts = {}) {
    if (vectors.empty() || r_grid.empty() || N_grid.empty())
        throw validation_error("cusp profile needs vectors and non-empty r and N grids");
    std::sort(r_grid.begin(), r_grid.end());
    std::sort(N_grid.begin(), N_grid.end());
    if (!(r_grid.front() > 0.0)) throw validation_error("cusp profile radii must be > 0");
    CuspMassProfile p;
    p.vectors = vectors;
    p.r_grid = r_grid;
    p.N_grid = N_grid;
    p.epsilon = opts.epsilon;
    p.min_disk_diameter = index.family().min_disk_diameter;
    p.fit_min_N = opts.fit_min_N;
    p.fit_max_N = 0.5 * (mu.T_used - opts.resolution_margin);
    p.sup_fraction.assign(N_grid.size(), 0.0);
    struct PerVector {
        std::vector<std::vector<CuspFraction>> grid;
        std::vector<DoublingRatio> doubling;
    };
    std::vector<PerVector> results(vectors.size());
    auto work = [&](std::size_t k) {
        const auto atoms = horocycle_atoms(vectors[k], 3.0 * r_grid.back(), mu, delta, &index);
        PerVector& out = results[k];
        for (double r : r_grid) {
            std::vector<CuspFraction> row;
            for (double N : N_grid) row.push_back(cusp_fraction_of(atoms, r, N, opts.atom_floor));
            out.grid.push_back(std::move(row));
            out.doubling.push_back(doubling_ratio_of(atoms, r));
        }
    };
    std::size_t n_threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min(n_threads, vectors.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < n_threads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t k; (k = next.fetch_add(1)) < vectors.size();) {
                    try {
                        work(k);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                        return;
                    }
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
    double max_dbl = 0.0;
    for (PerVector& res : results) {
        for (const auto& row : res.grid)
            for (std::size_t j = 0; j < row.size(); ++j)
                if (!row[j].starved && !row[j].deep_starved) p.sup_fraction[j] = std::max(p.sup_fraction[j], row[j].fraction);
        for (const DoublingRatio& d : res.doubling) {
            ++p.doubling_cells;
            if (d.under_resolved || d.zero_denominator) ++p.doubling_flagged;
            else max_dbl = std::max(max_dbl, d.ratio);
        }
        p.cells.push_back(std::move(res.grid));
    }
    if (p.doubling_cells > p.doubling_flagged) p.max_doubling = max_dbl;
    for (std::size_t j = N_grid.size(); j-- > 0;) {
        if (p.sup_fraction[j] > opts.epsilon) break;
        p.n_hat = N_grid[j];
    }
    std::vector<double> xs, ys;
    for (std::size_t j = 0; j < N_grid.size(); ++j)
        if (N_grid[j] >= p.fit_min_N && N_grid[j] <= p.fit_max_N && p.sup_fraction[j] > 0.0) {
            xs.push_back(N_grid[j]);
            ys.push_back(std::log(p.sup_fraction[j]));
        }
    p.fit_points = xs.size();
    if (xs.size() >= 2) {
        const LinearFit fit = least_squares(xs, ys);
        p.slope = fit.slope;
        p.slope_stderr = fit.slope_stderr;
    }
    return p;
}

inline std::string cusp_profile_csv(const CuspMassProfile& p) {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "u,r,N,fraction,mass,atoms,deep_atoms,flag\n";
    for (std::size_t k = 0; k < p.cells.size(); ++k)
        for (std::size_t i = 0; i < p.r_grid.size(); ++i)
            for (std::size_t j = 0; j < p.N_grid.size(); ++j) {
                const CuspFraction& c = p.cells[k][i][j];
                os << k << ',' << p.r_grid[i] << ',' << p.N_grid[j] << ',' << c.fraction << ',' << c.mass << ','
                   << c.atoms << ',' << c.deep_atoms << ',';
                if (c.starved) os << "starved";
                else if (c.deep_starved) os << "deep_starved";
                else if (c.unresolved_atoms > 0) os << "unresolved";
                os << '\n';
            }
    return os.str();
}

inline std::string cusp_profile_summary(const CuspMassProfile& p) {
    std::ostringstream os;
    os << std::setprecision(6);
    os << "vectors " << p.vectors.size() << " radii " << p.r_grid.size() << " depths " << p.N_grid.size() << "\n";
    os << "N,sup_fraction\n";
    for (std::size_t j = 0; j < p.N_grid.size(); ++j) os << p.N_grid[j] << ',' << p.sup_fraction[j] << '\n';
    os << "epsilon " << p.epsilon << " N_hat ";
    if (p.n_hat) os << *p.n_hat;
    else os << "none";
    os << "\nslope " << p.slope << " +- " << p.slope_stderr << " over N in [" << p.fit_min_N << ", " << p.fit_max_N
       << "] (fit points " << p.fit_points << ")\n";
    os << "max_doubling " << p.max_doubling << " (cells " << p.doubling_cells << ", under-resolved "
       << p.doubling_flagged << ")\n";
    return os.str();
}

}  // namespace horoshadow

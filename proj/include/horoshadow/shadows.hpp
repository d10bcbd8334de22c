#pragma once

// Shadow masses along rays from o, split into thick rows and cusp-excursion rows.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "horoshadow/horoballs.hpp"
#include "horoshadow/patterson.hpp"

namespace horoshadow {

/// Attracting fixed point of the hyperbolic element spelled by a periodic word.
inline BoundaryPoint radial_point(const GroupSpec& spec, const std::string& pattern) {
    const Word w = parse_word(spec, pattern);
    if (w.empty()) throw validation_error("radial_point: empty word pattern");
    const Classification c = classify(evaluate_word(spec, w));
    if (c.kind != IsometryKind::hyperbolic)
        throw validation_error("radial_point: '" + pattern + "' is " + to_string(c.kind) + ", not hyperbolic");
    return *c.attracting;
}

/// γ(ξ_Π) for the word γ and the first parabolic mark.
inline BoundaryPoint cusp_point(const GroupSpec& spec, const std::string& word) {
    if (spec.parabolic_marks.empty()) throw validation_error("cusp_point: spec has no parabolic mark");
    const Isometry g = word.empty() ? Isometry::identity() : evaluate_word(spec, parse_word(spec, word));
    return g(spec.parabolic_marks.front().fixed_point);
}

struct ShadowRow {
    double t = 0.0;
    PositionClass position;
    double mass = 0.0;          // ν̂(V(o, ξ, t))
    std::size_t atoms = 0;      // atoms inside the shadow
    double residual = 0.0;      // log ν̂ + δ̂ t - (2δ̂_Π - δ̂) depth
    double normalized = 0.0;    // log ν̂ + δ̂ t
    bool starved = false;       // fewer atoms than the floor
};

struct ShadowSummary {
    std::size_t thick_rows = 0, cusp_rows = 0, fit_rows = 0, flagged_rows = 0;
    double thick_band = 0.0;     // max - min of the residual over thick rows
    double thick_max_abs = 0.0;  // max |residual| over thick rows
    double band = 0.0;           // max - min of the residual over all usable rows
    double b0_hat = 1.0;         // exp(thick_band / 2)
    double a0_hat = 1.0;         // exp(-min residual), the lower constant
    double a1_hat = 1.0;         // exp(band / 2)
    double cusp_slope = std::numeric_limits<double>::quiet_NaN();
    double cusp_slope_stderr = std::numeric_limits<double>::quiet_NaN();
    double target_slope = 0.0;   // 2δ̂_Π - δ̂
};

struct ShadowLemmaReport {
    BoundaryPoint xi = BoundaryPoint::infinity();
    double delta_hat = 0.0, delta_pi_hat = 0.0;
    std::vector<ShadowRow> rows;
    ShadowSummary summary;
};

struct ShadowOptions {
    std::size_t atom_floor = 20;
    double min_fit_depth = 1.0;
};

inline ShadowLemmaReport verify_shadow_lemma(const AtomicBoundaryMeasure& mu, const BoundaryPoint& xi,
                                             const std::vector<double>& t_grid, const HoroballIndex& index,
                                             double delta_hat, double delta_pi_hat, const ShadowOptions& opts = {}) {
    ShadowLemmaReport rep;
    rep.xi = xi;
    rep.delta_hat = delta_hat;
    rep.delta_pi_hat = delta_pi_hat;
    const double excess = 2.0 * delta_pi_hat - delta_hat;
    rep.summary.target_slope = excess;
    std::vector<double> fit_x, fit_y;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    double thick_lo = lo, thick_hi = hi;
    for (double t : t_grid) {
        if (!(t >= 0.0)) throw validation_error("shadow t grid must be >= 0");
        ShadowRow row;
        row.t = t;
        row.position = classify_position(point_on_ray(kOrigin, xi, t), index);
        const Arc arc = shadow_arc(kOrigin, xi, t);
        row.atoms = mu.count_in(arc);
        row.mass = mu.measure_of_arc(arc);
        row.starved = row.atoms < opts.atom_floor || !(row.mass > 0.0);
        if (row.mass > 0.0) {
            row.normalized = std::log(row.mass) + delta_hat * t;
            row.residual = row.normalized - excess * row.position.depth;
        } else {
            row.normalized = row.residual = -std::numeric_limits<double>::infinity();
        }
        rep.rows.push_back(row);
        if (row.starved || !row.position.resolved) {
            ++rep.summary.flagged_rows;
            continue;
        }
        lo = std::min(lo, row.residual);
        hi = std::max(hi, row.residual);
        if (row.position.cusp) {
            ++rep.summary.cusp_rows;
            if (row.position.depth >= opts.min_fit_depth) {
                fit_x.push_back(row.position.depth);
                fit_y.push_back(row.normalized);
            }
        } else {
            ++rep.summary.thick_rows;
            thick_lo = std::min(thick_lo, row.residual);
            thick_hi = std::max(thick_hi, row.residual);
            rep.summary.thick_max_abs = std::max(rep.summary.thick_max_abs, std::abs(row.residual));
        }
    }
    ShadowSummary& s = rep.summary;
    if (hi >= lo) {
        s.band = hi - lo;
        s.a1_hat = std::exp(0.5 * s.band);
        s.a0_hat = std::exp(-lo);
    }
    if (thick_hi >= thick_lo) {
        s.thick_band = thick_hi - thick_lo;
        s.b0_hat = std::exp(0.5 * s.thick_band);
    }
    s.fit_rows = fit_x.size();
    if (fit_x.size() >= 2) {
        const LinearFit f = least_squares(fit_x, fit_y);
        s.cusp_slope = f.slope;
        s.cusp_slope_stderr = f.slope_stderr;
    }
    return rep;
}

inline std::string shadow_report_csv(const ShadowLemmaReport& r) {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "t,position,horoball,depth,atoms,mass,normalized,residual,flag\n";
    for (const auto& row : r.rows) {
        os << row.t << ',' << (row.position.cusp ? "cusp" : "thick") << ',';
        if (row.position.horoball) os << *row.position.horoball;
        os << ',' << row.position.depth << ',' << row.atoms << ',' << row.mass << ',' << row.normalized << ','
           << row.residual << ',';
        if (row.starved) os << "starved";
        else if (!row.position.resolved) os << "unresolved";
        os << '\n';
    }
    return os.str();
}

inline std::string shadow_summary_text(const ShadowLemmaReport& r) {
    const ShadowSummary& s = r.summary;
    std::ostringstream os;
    os << std::setprecision(6);
    os << "xi " << r.xi << "\n"
       << "delta_hat " << r.delta_hat << "\n"
       << "delta_pi_hat " << r.delta_pi_hat << "\n"
       << "rows thick " << s.thick_rows << " cusp " << s.cusp_rows << " flagged " << s.flagged_rows << "\n"
       << "band " << s.band << " A1_hat " << s.a1_hat << " A0_hat " << s.a0_hat << "\n"
       << "thick_band " << s.thick_band << " B0_hat " << s.b0_hat << "\n"
       << "cusp_slope " << s.cusp_slope << " +- " << s.cusp_slope_stderr << " (fit rows " << s.fit_rows
       << ", target " << s.target_slope << ")\n";
    return os.str();
}

}  // namespace horoshadow

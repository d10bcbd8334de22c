#pragma once

// Shared setup of the command-line experiments: orbit ball, exponent estimates, measure and
// horoball family from one config, plus the run manifest stamped on every output.

#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "horoshadow/config.hpp"
#include "horoshadow/horoflow.hpp"
#include "horoshadow/shadows.hpp"
#include "horoshadow/triangle.hpp"

namespace horoshadow {

inline constexpr const char* kToolVersion = "horoshadow 1.0.0";
inline constexpr const char* kCsvSchema = "horoshadow-csv/1";

// ---------------------------------------------------------------------------------------------
// Manifest

struct RunManifest {
    std::uint64_t config_hash = 0;
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string tool_version = kToolVersion;
    double alpha = kCalibratedAlpha;
    std::map<std::string, double> deltas;
    std::map<std::string, std::string> measure;
    double wall_time = 0.0;

    /// Hash of the inputs (config, command, parameters, version, α). Results and wall time are
    /// outputs of the run and stay out of it.
    std::uint64_t hash() const {
        nlohmann::json j;
        j["config_hash"] = hex64(config_hash);
        j["command"] = command;
        j["parameters"] = parameters;
        j["tool_version"] = tool_version;
        j["alpha"] = alpha;
        j["csv_schema"] = kCsvSchema;
        return fnv1a64(j.dump());
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["manifest_hash"] = hex64(hash());
        j["config_hash"] = hex64(config_hash);
        j["command"] = command;
        j["parameters"] = parameters;
        j["tool_version"] = tool_version;
        j["csv_schema"] = kCsvSchema;
        j["alpha"] = alpha;
        j["deltas"] = deltas;
        j["measure"] = measure;
        j["wall_time_s"] = wall_time;
        return j;
    }

    /// First line of every CSV and text output.
    std::string stamp() const { return std::string("# ") + kCsvSchema + " manifest " + hex64(hash()) + "\n"; }
};

// ---------------------------------------------------------------------------------------------
// Parsing of command arguments

/// "a:b:step" (inclusive, step > 0), "log:lo:hi:count" (geometric, count ≥ 2) or "x,y,z".
inline std::vector<double> parse_grid(const std::string& text) {
    auto numbers = [&](const std::string& s, char sep) {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, sep)) {
            try {
                std::size_t used = 0;
                out.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw validation_error("grid '" + text + "': '" + cell + "' is not a number");
            }
        }
        return out;
    };
    std::vector<double> out;
    if (text.rfind("log:", 0) == 0) {
        const auto v = numbers(text.substr(4), ':');
        if (v.size() != 3 || !(v[0] > 0.0) || !(v[1] > v[0]) || v[2] < 2 || v[2] != std::floor(v[2]))
            throw validation_error("grid '" + text + "': expected log:lo:hi:count with 0 < lo < hi, count >= 2");
        const int n = static_cast<int>(v[2]);
        for (int k = 0; k < n; ++k) out.push_back(v[0] * std::pow(v[1] / v[0], static_cast<double>(k) / (n - 1)));
        return out;
    }
    if (text.find(':') != std::string::npos) {
        const auto v = numbers(text, ':');
        if (v.size() != 3 || !(v[2] > 0.0) || v[1] < v[0])
            throw validation_error("grid '" + text + "': expected a:b:step with a <= b and step > 0");
        const auto n = static_cast<std::size_t>(std::floor((v[1] - v[0]) / v[2] + 1e-9));
        for (std::size_t k = 0; k <= n; ++k) out.push_back(v[0] + static_cast<double>(k) * v[2]);
        return out;
    }
    out = numbers(text, ',');
    if (out.empty()) throw validation_error("grid is empty");
    return out;
}

/// "radial:WORD", "cusp:WORD" (empty word for ξ_Π), "real:x", "angle:θ" or "inf".
inline BoundaryPoint parse_boundary_spec(const GroupSpec& spec, const std::string& text) {
    auto number = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used == s.size()) return v;
        } catch (const std::exception&) {
        }
        throw validation_error("boundary point '" + text + "': '" + s + "' is not a number");
    };
    if (text == "inf") return BoundaryPoint::infinity();
    if (text.rfind("radial:", 0) == 0) return radial_point(spec, text.substr(7));
    if (text.rfind("cusp:", 0) == 0) return cusp_point(spec, text.substr(5));
    if (text.rfind("real:", 0) == 0) return BoundaryPoint::real(number(text.substr(5)));
    if (text.rfind("angle:", 0) == 0) return BoundaryPoint::from_angle(number(text.substr(6)));
    throw validation_error("boundary point '" + text + "': expected radial:, cusp:, real:, angle: or inf");
}

/// Copies of the pattern with every "{k}" replaced by k, for k in [k_min, k_max].
inline std::vector<std::string> expand_family(const std::string& pattern, int k_min, int k_max) {
    if (pattern.find("{k}") == std::string::npos) throw validation_error("family pattern needs a '{k}' placeholder");
    if (k_max < k_min) throw validation_error("family range is empty");
    std::vector<std::string> out;
    for (int k = k_min; k <= k_max; ++k) {
        std::string w = pattern;
        for (std::size_t p; (p = w.find("{k}")) != std::string::npos;) w.replace(p, 3, std::to_string(k));
        out.push_back(w);
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// Experiment setup

struct ExperimentOptions {
    double radius = 12.0;
    int window_min = 6;
    std::size_t window_count = 50;
    double s_factor = 1.02;          // s = s_factor · δ̂ unless s is given
    std::optional<double> s;
    double shell_width = 1.0;
    double parabolic_radius = 21.0;  // radius of the ⟨π⟩ orbit used for δ̂_Π
    bool measure = true;
    bool horoballs = true;
};

struct Experiment {
    LoadedConfig cfg;
    OrbitBall ball;
    CountingProfile profile;
    CriticalExponentEstimate delta;
    std::optional<CriticalExponentEstimate> delta_pi;
    std::optional<AtomicBoundaryMeasure> mu;
    std::optional<HoroballFamily> family;
    std::optional<HoroballIndex> index;

    Experiment() = default;
    Experiment(const Experiment&) = delete;
    Experiment& operator=(const Experiment&) = delete;
};

/// δ̂_Π from the orbit of the first parabolic mark's generator.
inline CriticalExponentEstimate estimate_delta_pi(const GroupSpec& spec, double radius = 21.0) {
    if (spec.parabolic_marks.empty()) throw validation_error("spec has no parabolic mark");
    const Isometry& pi = spec.generators[spec.parabolic_marks.front().generator].matrix;
    const int top = static_cast<int>(std::floor(radius)) - 1;
    return estimate_delta(counting_profile(cyclic_orbit_distances(pi, radius), radius), {6, top, 50});
}

inline void setup_experiment(Experiment& ex, const LoadedConfig& cfg, const ExperimentOptions& opts) {
    ex.cfg = cfg;
    ex.ball = enumerate_orbit(cfg.spec, opts.radius);
    ex.profile = counting_profile(ex.ball);
    ex.delta = estimate_delta(ex.profile, {opts.window_min, static_cast<int>(std::ceil(opts.radius)) - 1,
                                           opts.window_count});
    if (!cfg.spec.parabolic_marks.empty()) ex.delta_pi = estimate_delta_pi(cfg.spec, opts.parabolic_radius);
    if (opts.measure) {
        const double s = opts.s.value_or(opts.s_factor * ex.delta.delta_hat);
        ex.mu = build_patterson(ex.ball, s, ex.delta.delta_hat, {0.5, cfg.hash, opts.shell_width});
    }
    if (opts.horoballs && cfg.spec.cusp_horoball) {
        ex.family = build_horoball_family(cfg.spec, ex.ball);
        ex.index.emplace(*ex.family);
    }
}

inline void stamp_manifest(RunManifest& m, const Experiment& ex) {
    m.config_hash = ex.cfg.hash;
    m.deltas["delta_hat"] = ex.delta.delta_hat;
    m.deltas["delta_hat_stderr"] = ex.delta.stderr_;
    if (ex.delta_pi) m.deltas["delta_pi_hat"] = ex.delta_pi->delta_hat;
    if (ex.mu) {
        std::ostringstream s, T, w, tail;
        s << std::setprecision(12) << ex.mu->s_used;
        T << std::setprecision(12) << ex.mu->T_used;
        w << std::setprecision(12) << ex.mu->shell_width;
        tail << std::setprecision(6) << ex.mu->tail_fraction;
        m.measure = {{"s", s.str()}, {"T", T.str()}, {"shell_width", w.str()}, {"tail_fraction", tail.str()},
                     {"atoms", std::to_string(ex.mu->size())}};
    }
}

// ---------------------------------------------------------------------------------------------
// CSV tables for the orbit and horoball outputs

inline std::string orbit_csv(const GroupSpec& spec, const OrbitBall& ball) {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "word,re,im,dist,angle\n";
    for (const auto& p : ball.points)
        os << word_to_string(spec, ball.word(p)) << ',' << p.image.re() << ',' << p.image.im() << ',' << p.dist << ','
           << p.direction_angle << '\n';
    return os.str();
}

inline std::string horoball_csv(const GroupSpec& spec, const OrbitBall& ball, const HoroballFamily& fam) {
    std::ostringstream os;
    os << std::setprecision(12);
    os << "coset_word,center_angle,disk_diameter,level\n";
    for (std::size_t i = 0; i < fam.balls.size(); ++i)
        os << word_to_string(spec, ball.word(ball.points[fam.rep_index[i]])) << ',' << fam.balls[i].center().angle()
           << ',' << fam.balls[i].disk_diameter() << ',' << fam.balls[i].level() << '\n';
    return os.str();
}

inline std::string shadow_arcs_csv(const BoundaryPoint& xi, const std::vector<double>& t_grid) {
    std::ostringstream os;
    os << std::setprecision(15);
    os << "t,lo,length\n";
    for (double t : t_grid) {
        const Arc a = shadow_arc(kOrigin, xi, t);
        os << t << ',' << a.lo() << ',' << a.length() << '\n';
    }
    return os.str();
}

}  // namespace horoshadow

// horoshadow: command-line front end for the orbit, measure, shadow and horocycle experiments.
//
// Exit codes: 0 ok, 1 validation failure, 2 budget exceeded, 3 internal error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "horoshadow/experiment.hpp"
#include "horoshadow/render.hpp"

using namespace horoshadow;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kValidation = 1, kBudget = 2, kInternal = 3 };

struct Common {
    std::string config;
    std::string out_dir = ".";
    double radius = 12.0;
    std::optional<double> s;
    double s_factor = 1.02;
    double shell_width = 1.0;
    int window_min = 6;
};

void add_config(CLI::App* cmd, Common& c) {
    cmd->add_option("config", c.config, "group config (JSON)")->required()->check(CLI::ExistingFile);
}

void add_out(CLI::App* cmd, Common& c) { cmd->add_option("--out", c.out_dir, "output directory")->capture_default_str(); }

void add_measure(CLI::App* cmd, Common& c) {
    cmd->add_option("--radius,-T", c.radius, "orbit ball radius T")->capture_default_str();
    cmd->add_option("--s", c.s, "Poincaré exponent s (default s-factor times delta_hat)");
    cmd->add_option("--s-factor", c.s_factor, "s = s_factor * delta_hat when --s is absent")->capture_default_str();
    cmd->add_option("--shell-width", c.shell_width, "atoms from d(o,go) > T - width; 0 keeps the ball")
        ->capture_default_str();
    cmd->add_option("--window-min", c.window_min, "first radius of the delta fit")->capture_default_str();
}

ExperimentOptions experiment_options(const Common& c) {
    ExperimentOptions o;
    o.radius = c.radius;
    o.s = c.s;
    o.s_factor = c.s_factor;
    o.shell_width = c.shell_width;
    o.window_min = c.window_min;
    return o;
}

/// Option values of a subcommand, including defaults, for the manifest. Output location, thread
/// count and the config path (its content hash is recorded) do not change the results.
std::map<std::string, std::string> collect_parameters(const CLI::App* cmd) {
    std::map<std::string, std::string> out;
    for (const CLI::Option* opt : cmd->get_options()) {
        const std::string name = opt->get_name();
        if (opt == cmd->get_help_ptr() || name == "config" || name == "--out" || name == "--threads") continue;
        std::string value;
        if (opt->count() > 0) {
            for (const auto& r : opt->results()) value += (value.empty() ? "" : " ") + r;
        } else {
            value = opt->get_default_str();
        }
        out[name] = value;
    }
    return out;
}

class Writer {
public:
    Writer(const std::string& dir, RunManifest& manifest) : dir_(dir), manifest_(manifest) {
        fs::create_directories(dir_);
    }

    void text(const std::string& name, const std::string& body) {
        const fs::path p = dir_ / name;
        std::ofstream os(p, std::ios::binary);
        if (!os) throw validation_error("cannot write '" + p.string() + "'");
        os << manifest_.stamp() << body;
        std::cout << "wrote " << p.string() << "\n";
    }

    void svg(const std::string& name, const std::string& body) {
        const fs::path p = dir_ / name;
        std::ofstream os(p, std::ios::binary);
        if (!os) throw validation_error("cannot write '" + p.string() + "'");
        // The hash sits in a comment after the XML root opens, so the file stays valid SVG.
        const auto close = body.find('>');
        os << body.substr(0, close + 1) << "\n<!-- manifest " << hex64(manifest_.hash()) << " -->"
           << body.substr(close + 1);
        std::cout << "wrote " << p.string() << "\n";
    }

    void manifest(double wall_time) {
        manifest_.wall_time = wall_time;
        const fs::path p = dir_ / (manifest_.command + "_manifest.json");
        std::ofstream os(p, std::ios::binary);
        os << manifest_.to_json().dump(2) << '\n';
        std::cout << "wrote " << p.string() << "\n";
    }

    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    RunManifest& manifest_;
};

std::vector<RenderDisk> disks_of(const HoroballFamily& fam) {
    std::vector<RenderDisk> out;
    for (const Horoball& h : fam.balls) out.push_back({h.center().angle(), h.disk_diameter()});
    return out;
}

// ---------------------------------------------------------------------------------------------
// Commands

int cmd_group_check(const Common& c) {
    const LoadedConfig cfg = load_config(c.config);
    const GroupSpec& spec = cfg.spec;
    std::cout << "config " << c.config << " hash " << hex64(cfg.hash) << "\n";
    std::cout << "name " << spec.name << " structure " << to_string(spec.structure) << "\n";
    for (const auto& g : spec.generators) {
        const Classification k = classify(g.matrix);
        std::cout << "generator " << g.name << " " << to_string(k.kind);
        if (k.kind == IsometryKind::hyperbolic) std::cout << " translation_length " << k.translation_length;
        std::cout << "\n";
    }
    bool ok = true;
    for (const auto& m : spec.parabolic_marks) {
        const Isometry& g = spec.generators[m.generator].matrix;
        const bool parabolic = classify(g).kind == IsometryKind::parabolic;
        const bool fixes = nearly_equal(g(m.fixed_point), m.fixed_point);
        std::cout << "parabolic mark " << spec.generators[m.generator].name << " at " << m.fixed_point << ": "
                  << (parabolic && fixes ? "ok" : "FAIL") << "\n";
        ok = ok && parabolic && fixes;
    }
    if (spec.structure == GroupStructure::free_product) {
        const PingPongCertificate cert = ping_pong_check(spec);
        std::cout << "ping-pong " << (cert.passed ? "pass" : "fail") << ": " << cert.reason << "\n";
        ok = ok && cert.passed;
    } else {
        std::cout << "ping-pong not applicable (generic structure, normal forms deduplicated by matrix)\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kValidation;
}

int cmd_orbit(const Common& c, RunManifest& m) {
    Experiment ex;
    ExperimentOptions o = experiment_options(c);
    o.measure = false;
    ex.cfg = load_config(c.config);
    ex.ball = enumerate_orbit(ex.cfg.spec, c.radius);
    m.config_hash = ex.cfg.hash;
    Writer w(c.out_dir, m);
    w.text("orbit.csv", orbit_csv(ex.cfg.spec, ex.ball));
    std::cout << "orbit points " << ex.ball.points.size() << " within radius " << c.radius << "\n";
    if (ex.cfg.spec.cusp_horoball && !ex.cfg.spec.parabolic_marks.empty()) {
        const HoroballFamily fam = build_horoball_family(ex.cfg.spec, ex.ball);
        w.text("horoballs.csv", horoball_csv(ex.cfg.spec, ex.ball, fam));
        std::cout << "horoballs " << fam.balls.size() << " horizon " << fam.horizon << "\n";
    }
    return kOk;
}

int cmd_delta(const Common& c, const std::string& method, std::optional<int> window_max, RunManifest& m) {
    const LoadedConfig cfg = load_config(c.config);
    const OrbitBall ball = enumerate_orbit(cfg.spec, c.radius);
    const CountingProfile prof = counting_profile(ball);
    const DeltaWindow win{c.window_min, window_max.value_or(static_cast<int>(std::ceil(c.radius)) - 1), 50};
    CriticalExponentEstimate est;
    if (method == "divergence") {
        std::vector<double> d;
        for (const auto& p : ball.points) d.push_back(p.dist);
        est = estimate_delta_divergence(prof, win, d);
    } else {
        est = estimate_delta(prof, win);
    }
    m.config_hash = cfg.hash;
    m.deltas["delta_hat"] = est.delta_hat;
    m.deltas["delta_hat_stderr"] = est.stderr_;
    std::ostringstream sum;
    sum << std::setprecision(6) << "method " << to_string(est.method) << "\nwindow " << est.t_min << " " << est.t_max
        << "\ndelta_hat " << est.delta_hat << " +- " << est.stderr_ << "\n";
    if (!cfg.spec.parabolic_marks.empty()) {
        const auto dpi = estimate_delta_pi(cfg.spec);
        m.deltas["delta_pi_hat"] = dpi.delta_hat;
        sum << "delta_pi_hat " << dpi.delta_hat << " +- " << dpi.stderr_ << "\n";
        sum << "delta_pi_hat < delta_hat: " << (dpi.delta_hat < est.delta_hat ? "yes" : "no") << "\n";
    }
    Writer w(c.out_dir, m);
    w.text("delta.csv", profile_csv(prof));
    w.text("delta_summary.txt", sum.str());
    std::cout << sum.str();
    return kOk;
}

int cmd_growth(const Common& c, int t_min, int t_max, std::optional<double> delta_pi, double cap, RunManifest& m) {
    const LoadedConfig cfg = load_config(c.config);
    if (cfg.spec.parabolic_marks.empty()) throw validation_error("growth: config has no parabolic mark");
    const Isometry& pi = cfg.spec.generators[cfg.spec.parabolic_marks.front().generator].matrix;
    const double radius = t_max + 1.0;
    const CountingProfile prof = counting_profile(cyclic_orbit_distances(pi, radius), radius);
    const double dpi = delta_pi.value_or(estimate_delta(prof, {std::max(t_min, 2), t_max, 1}).delta_hat);
    const GrowthCheckReport rep = growth_condition_check(prof, dpi, t_min, t_max, cap);
    m.config_hash = cfg.hash;
    m.deltas["delta_pi_hat"] = dpi;
    std::ostringstream csv, sum;
    csv << std::setprecision(12) << "T,count,ratio\n";
    for (const auto& s : rep.shells) csv << s.T << ',' << s.count << ',' << s.ratio << '\n';
    sum << std::setprecision(6) << "delta_pi " << dpi << "\nD_hat " << rep.d_hat << " cap " << rep.cap << "\n"
        << (rep.passed ? "PASS" : "FAIL") << ": " << rep.reason << "\n";
    Writer w(c.out_dir, m);
    w.text("growth.csv", csv.str());
    w.text("growth_summary.txt", sum.str());
    std::cout << sum.str();
    return rep.passed ? kOk : kValidation;
}

int cmd_patterson(const Common& c, RunManifest& m) {
    Experiment ex;
    ExperimentOptions o = experiment_options(c);
    o.horoballs = false;
    setup_experiment(ex, load_config(c.config), o);
    stamp_manifest(m, ex);
    const AtomicBoundaryMeasure& mu = *ex.mu;
    std::ostringstream meas, csv, sum;
    write_measure(meas, mu);
    // The measure reader wants its own header first; the manifest goes on the second line.
    std::string body = meas.str();
    body.insert(body.find('\n') + 1, "# manifest " + hex64(m.hash()) + "\n");
    csv << std::setprecision(12) << "generator,defect\n";
    for (const auto& g : ex.cfg.spec.generators)
        csv << g.name << ',' << quasi_invariance_defect(mu, g.matrix, mu.s_used) << '\n';
    sum << std::setprecision(6) << "delta_hat " << ex.delta.delta_hat << "\ns " << mu.s_used << "\nT " << mu.T_used
        << "\natoms " << mu.size() << "\ntail_fraction " << mu.tail_fraction << "\n";
    for (const auto& warn : mu.warnings) sum << "warning " << warn << "\n";
    Writer w(c.out_dir, m);
    {
        const fs::path p = w.dir() / "measure.txt";
        std::ofstream os(p, std::ios::binary);
        os << body;
        std::cout << "wrote " << p.string() << "\n";
    }
    w.text("patterson.csv", csv.str());
    w.text("patterson_summary.txt", sum.str());
    std::cout << sum.str();
    return kOk;
}

int cmd_shadow(const Common& c, const std::string& xi_spec, const std::string& t_grid, std::size_t floor,
               RunManifest& m) {
    Experiment ex;
    setup_experiment(ex, load_config(c.config), experiment_options(c));
    stamp_manifest(m, ex);
    if (!ex.index) throw validation_error("shadow: config has no cusp horoball");
    const BoundaryPoint xi = parse_boundary_spec(ex.cfg.spec, xi_spec);
    const std::vector<double> grid = parse_grid(t_grid);
    ShadowOptions so;
    so.atom_floor = floor;
    const double dpi = ex.delta_pi ? ex.delta_pi->delta_hat : 0.0;
    const ShadowLemmaReport rep = verify_shadow_lemma(*ex.mu, xi, grid, *ex.index, ex.delta.delta_hat, dpi, so);
    std::string summary = shadow_summary_text(rep);
    // Shadows of limit points keep some atom until t is close to the truncation radius.
    for (const ShadowRow& row : rep.rows)
        if (row.atoms == 0 && row.t <= 0.5 * c.radius) {
            summary += "warning: shadows are empty from t = " + std::to_string(row.t) +
                       " on; the measure support misses the arc, xi is likely outside the limit set\n";
            break;
        }
    Writer w(c.out_dir, m);
    w.text("shadow.csv", shadow_report_csv(rep));
    w.text("shadow_arcs.csv", shadow_arcs_csv(xi, grid));
    w.text("shadow_summary.txt", summary);
    RenderInput in;
    in.disks = disks_of(*ex.family);
    for (double t : grid) in.arcs.push_back({t, shadow_arc(kOrigin, xi, t)});
    w.svg("shadow.svg", render_svg(in));
    std::cout << summary;
    return kOk;
}

struct HoroArgs {
    std::vector<std::string> u_specs;
    std::string family;
    std::string k_range = "3:52";
    std::string r_grid = "log:0.01:100:17";
    std::string N_grid = "0.5:10:0.5";
    std::size_t floor = 20;
    double epsilon = 0.05;
    double margin = 4.0;
    std::size_t threads = 0;
};

int cmd_horo(const Common& c, const HoroArgs& a, RunManifest& m) {
    Experiment ex;
    setup_experiment(ex, load_config(c.config), experiment_options(c));
    stamp_manifest(m, ex);
    if (!ex.index) throw validation_error("horo: config has no cusp horoball");
    std::vector<std::string> specs = a.u_specs;
    if (!a.family.empty()) {
        const auto colon = a.k_range.find(':');
        int k_min = 0, k_max = 0;
        try {
            if (colon == std::string::npos) throw std::invalid_argument(a.k_range);
            k_min = std::stoi(a.k_range.substr(0, colon));
            k_max = std::stoi(a.k_range.substr(colon + 1));
        } catch (const std::exception&) {
            throw validation_error("k range '" + a.k_range + "' must be k_min:k_max");
        }
        for (const auto& w : expand_family(a.family, k_min, k_max))
            specs.push_back("radial:" + w);
    }
    if (specs.empty()) throw validation_error("horo: give --u or --family");
    std::vector<UnitVector> vectors;
    for (const auto& s : specs) vectors.push_back(vector_from(parse_boundary_spec(ex.cfg.spec, s), kOrigin));
    CuspProfileOptions po;
    po.atom_floor = a.floor;
    po.epsilon = a.epsilon;
    po.resolution_margin = a.margin;
    po.threads = a.threads;
    const CuspMassProfile prof =
        cusp_mass_profile(vectors, parse_grid(a.r_grid), parse_grid(a.N_grid), *ex.mu, *ex.index, ex.delta.delta_hat, po);
    std::ostringstream sum;
    sum << std::setprecision(6) << "delta_hat " << ex.delta.delta_hat << "\n";
    if (ex.delta_pi)
        sum << "delta_pi_hat " << ex.delta_pi->delta_hat << " (target slope on infinite covolume "
            << ex.delta_pi->delta_hat - ex.delta.delta_hat << ")\n";
    sum << cusp_profile_summary(prof);
    Writer w(c.out_dir, m);
    w.text("horo.csv", cusp_profile_csv(prof));
    std::ostringstream vcsv;
    vcsv << std::setprecision(15) << "u,spec,u_minus_angle,u_plus_angle,level\n";
    for (std::size_t k = 0; k < vectors.size(); ++k)
        vcsv << k << ',' << specs[k] << ',' << vectors[k].u_minus.angle() << ',' << vectors[k].u_plus.angle() << ','
             << vectors[k].s << '\n';
    w.text("horo_vectors.csv", vcsv.str());
    w.text("horo_summary.txt", sum.str());
    RenderInput in;
    in.disks = disks_of(*ex.family);
    const UnitVector& u0 = vectors.front();
    in.horocycles.push_back({u0.u_minus.angle(), Horoball::through(u0.u_minus, basepoint(u0)).disk_diameter()});
    for (double r : prof.r_grid) in.arcs.push_back({r, hamenstadt_ball_arc(u0, r)});
    w.svg("horo.svg", render_svg(in));
    std::cout << sum.str();
    return kOk;
}

int cmd_render(const std::string& orbit, const std::string& horoballs, const std::string& arcs,
               const std::string& out, bool check_nesting) {
    if (orbit.empty() && horoballs.empty() && arcs.empty())
        throw validation_error("render: give at least one of --orbit, --horoballs, --arcs");
    RenderInput in;
    if (!orbit.empty()) in.points = read_orbit_points(orbit);
    if (!horoballs.empty()) in.disks = read_disks(horoballs);
    if (!arcs.empty()) in.arcs = read_arcs(arcs);
    if (check_nesting) {
        const bool nested = arcs_nested(in.arcs);
        std::cout << "arcs nested: " << (nested ? "yes" : "no") << "\n";
        if (!nested) return kValidation;
    }
    const std::string svg = render_svg(in);
    const fs::path p(out);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw validation_error("cannot write '" + out + "'");
    os << svg;
    std::cout << "wrote " << out << " (" << in.points.size() << " points, " << in.disks.size() << " horoballs, "
              << in.arcs.size() << " arcs)\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shadow Lemma and horospherical non-divergence experiments on Fuchsian groups"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--params", "", "TOML file holding option values (sections named after the commands)");
    app.require_subcommand(1);

    Common c;
    std::string method = "fit";
    std::optional<int> window_max;
    int g_tmin = 4, g_tmax = 20;
    std::optional<double> g_delta_pi;
    double g_cap = 4.0;
    std::string xi_spec, t_grid = "0:14:0.5";
    std::size_t shadow_floor = 20;
    HoroArgs horo;
    std::string r_orbit, r_horoballs, r_arcs, r_out = "render.svg";
    bool r_nesting = false;

    CLI::App* group = app.add_subcommand("group", "group configuration tools")->require_subcommand(1);
    CLI::App* check = group->add_subcommand("check", "validate a config: matrices, marks, ping-pong domains");
    add_config(check, c);

    CLI::App* orbit = app.add_subcommand("orbit", "orbit points within radius T and the horoball family");
    add_config(orbit, c);
    add_out(orbit, c);
    orbit->add_option("--radius,-T", c.radius, "orbit ball radius T")->capture_default_str();

    CLI::App* delta = app.add_subcommand("delta", "counting profile and critical exponent estimate");
    add_config(delta, c);
    add_out(delta, c);
    delta->add_option("--radius,-T", c.radius, "orbit ball radius T")->capture_default_str();
    delta->add_option("--window-min", c.window_min, "first radius of the fit")->capture_default_str();
    delta->add_option("--window-max", window_max, "last radius of the fit (default ceil(T) - 1)");
    delta->add_option("--method", method, "fit or divergence")
        ->check(CLI::IsMember({"fit", "divergence"}))
        ->capture_default_str();

    CLI::App* growth = app.add_subcommand("growth", "shell counts of the parabolic subgroup against e^{delta_pi T}");
    add_config(growth, c);
    add_out(growth, c);
    growth->add_option("--t-min", g_tmin, "first shell")->capture_default_str();
    growth->add_option("--t-max", g_tmax, "last shell")->capture_default_str();
    growth->add_option("--delta-pi", g_delta_pi, "exponent (default: fitted)");
    growth->add_option("--cap", g_cap, "bound D on the shell ratios")->capture_default_str();

    CLI::App* patterson = app.add_subcommand("patterson", "atomic Patterson measure and quasi-invariance defects");
    add_config(patterson, c);
    add_out(patterson, c);
    add_measure(patterson, c);

    CLI::App* shadow = app.add_subcommand("shadow", "shadow masses along the ray from o to xi");
    add_config(shadow, c);
    add_out(shadow, c);
    add_measure(shadow, c);
    shadow->add_option("--xi", xi_spec, "radial:WORD, cusp:WORD, real:x, angle:theta or inf")->required();
    shadow->add_option("--t-grid", t_grid, "a:b:step, log:lo:hi:count or a list")->capture_default_str();
    shadow->add_option("--atom-floor", shadow_floor, "rows with fewer atoms are flagged")->capture_default_str();

    CLI::App* horocmd = app.add_subcommand("horo", "cusp mass fractions of horospherical means");
    add_config(horocmd, c);
    add_out(horocmd, c);
    add_measure(horocmd, c);
    horocmd->add_option("--u", horo.u_specs, "backward endpoint u- of a vector based at o (boundary spec)");
    horocmd->add_option("--family", horo.family, "periodic word pattern with {k}, e.g. T^{k}.S");
    horocmd->add_option("--k-range", horo.k_range, "k_min:k_max for --family")->capture_default_str();
    horocmd->add_option("--r-grid", horo.r_grid, "Hamenstadt radii")->capture_default_str();
    horocmd->add_option("--N-grid", horo.N_grid, "cusp depths")->capture_default_str();
    horocmd->add_option("--atom-floor", horo.floor, "minimum atoms in the ball and the deep part")->capture_default_str();
    horocmd->add_option("--epsilon", horo.epsilon, "threshold for N_hat")->capture_default_str();
    horocmd->add_option("--resolution-margin", horo.margin, "fit depths up to (T - margin)/2")->capture_default_str();
    horocmd->add_option("--threads", horo.threads, "worker threads, 0 for all cores")->capture_default_str();

    CLI::App* render = app.add_subcommand("render", "SVG from orbit, horoball and shadow-arc CSV files");
    render->add_option("--orbit", r_orbit, "orbit CSV (columns re, im)")->check(CLI::ExistingFile);
    render->add_option("--horoballs", r_horoballs, "horoball CSV (columns center_angle, disk_diameter)")
        ->check(CLI::ExistingFile);
    render->add_option("--arcs", r_arcs, "shadow arc CSV (columns t, lo, length)")->check(CLI::ExistingFile);
    render->add_option("--out", r_out, "output SVG")->capture_default_str();
    render->add_flag("--check-nesting", r_nesting, "fail unless the arcs shrink monotonically in t");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    RunManifest manifest;
    try {
        CLI::App* cmd = app.get_subcommands().front();
        manifest.command = cmd->get_name();
        manifest.parameters = collect_parameters(cmd);
        int code = kOk;
        if (cmd == group) return cmd_group_check(c);
        if (cmd == render) return cmd_render(r_orbit, r_horoballs, r_arcs, r_out, r_nesting);
        if (cmd == orbit) code = cmd_orbit(c, manifest);
        else if (cmd == delta) code = cmd_delta(c, method, window_max, manifest);
        else if (cmd == growth) code = cmd_growth(c, g_tmin, g_tmax, g_delta_pi, g_cap, manifest);
        else if (cmd == patterson) code = cmd_patterson(c, manifest);
        else if (cmd == shadow) code = cmd_shadow(c, xi_spec, t_grid, shadow_floor, manifest);
        else if (cmd == horocmd) code = cmd_horo(c, horo, manifest);
        Writer(c.out_dir, manifest).manifest(elapsed());
        return code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::budget) return kBudget;
        return e.kind() == ErrorKind::validation ? kValidation : kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

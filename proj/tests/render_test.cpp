#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>

#include "horoshadow/experiment.hpp"
#include "horoshadow/render.hpp"

using namespace horoshadow;

namespace {

LoadedConfig config(const std::string& name) { return load_config(std::string(HOROSHADOW_CONFIG_DIR) + "/" + name); }

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}

std::string group_of(const std::string& svg, const std::string& id) {
    const auto open = svg.find("<g id=\"" + id + "\"");
    return svg.substr(open, svg.find("</g>", open) - open);
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "horoshadow_render_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Render, EmptyInputIsAxesOnly) {
    const std::string svg = render_svg({});
    EXPECT_EQ(count(svg, "<line"), 2u);
    EXPECT_EQ(count(svg, "<circle"), 1u);  // boundary circle
    EXPECT_EQ(count(svg, "<path"), 0u);
    EXPECT_EQ(svg.rfind("</svg>\n"), svg.size() - 7);
}

TEST(Render, ModularOrbitAndHoroballs) {
    const LoadedConfig cfg = config("modular.json");
    const OrbitBall ball = enumerate_orbit(cfg.spec, 8.0);
    const HoroballFamily fam = build_horoball_family(cfg.spec, ball);
    RenderInput in;
    for (const auto& p : ball.points) in.points.push_back(to_disk(p.image));
    for (const auto& h : fam.balls) in.disks.push_back({h.center().angle(), h.disk_diameter()});
    const std::string svg = render_svg(in);
    EXPECT_EQ(count(group_of(svg, "orbit"), "<circle"), ball.points.size());
    EXPECT_EQ(count(group_of(svg, "horoballs"), "<circle"), fam.balls.size());
    EXPECT_EQ(svg, render_svg(in));

    // The cusp horoball {Im >= 2} is the disk tangent at angle 0 through to_disk(2i) = 1/3.
    const std::string first = group_of(svg, "horoballs");
    const std::regex circle("<circle cx=\"([0-9.]+)\" cy=\"([0-9.]+)\" r=\"([0-9.]+)\"");
    std::smatch m;
    ASSERT_TRUE(std::regex_search(first, m, circle));
    const double scale = 360.0;
    EXPECT_NEAR(std::stod(m[1]), 400.0 + scale * (1.0 + 1.0 / 3.0) / 2.0, 1e-3);
    EXPECT_NEAR(std::stod(m[2]), 400.0, 1e-3);
    EXPECT_NEAR(std::stod(m[3]), scale * (1.0 - 1.0 / 3.0) / 2.0, 1e-3);
}

TEST(Render, ShadowArcsNestAndRoundTripThroughCsv) {
    const BoundaryPoint xi = BoundaryPoint::real(0.3);
    const std::vector<double> grid = parse_grid("0:6:0.5");
    const auto path = scratch("arcs.csv");
    {
        std::ofstream os(path);
        os << "# comment line\n" << shadow_arcs_csv(xi, grid);
    }
    const auto arcs = read_arcs(path.string());
    ASSERT_EQ(arcs.size(), grid.size());
    EXPECT_TRUE(arcs_nested(arcs));
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const Arc direct = shadow_arc(kOrigin, xi, grid[k]);
        EXPECT_NEAR(arcs[k].arc.lo(), direct.lo(), 1e-12);
        EXPECT_NEAR(arcs[k].arc.length(), direct.length(), 1e-12);
    }
    // Shadows of two different rays do not nest.
    std::vector<RenderArc> mixed = {{0.0, shadow_arc(kOrigin, xi, 1.0)}, {1.0, shadow_arc(kOrigin, BoundaryPoint::real(-3.0), 2.0)}};
    EXPECT_FALSE(arcs_nested(mixed));
    const std::string svg = render_svg({{}, {}, {}, arcs});
    EXPECT_EQ(count(group_of(svg, "shadows"), "data-t="), arcs.size());
}

TEST(Render, CsvErrors) {
    EXPECT_THROW(read_orbit_points(scratch("missing.csv").string()), Error);
    const auto bad = scratch("bad.csv");
    std::ofstream(bad) << "re,im\n1,2\n3\n";
    EXPECT_THROW(read_orbit_points(bad.string()), Error);
    const auto wrong = scratch("wrong.csv");
    std::ofstream(wrong) << "x,y\n1,2\n";
    EXPECT_THROW(read_orbit_points(wrong.string()), Error);
}

TEST(Experiment, GridParsing) {
    EXPECT_EQ(parse_grid("1:2:0.5"), (std::vector<double>{1.0, 1.5, 2.0}));
    EXPECT_EQ(parse_grid("3,1,2"), (std::vector<double>{3.0, 1.0, 2.0}));
    const auto g = parse_grid("log:0.01:100:17");
    ASSERT_EQ(g.size(), 17u);
    EXPECT_NEAR(g.front(), 0.01, 1e-15);
    EXPECT_NEAR(g.back(), 100.0, 1e-12);
    EXPECT_NEAR(g[4], 0.1, 1e-15);
    EXPECT_THROW(parse_grid("1:0:1"), Error);
    EXPECT_THROW(parse_grid("1:2:0"), Error);
    EXPECT_THROW(parse_grid("log:0:1:3"), Error);
    EXPECT_THROW(parse_grid("a,b"), Error);
}

TEST(Experiment, BoundarySpecsAndFamilies) {
    const auto spec = config("modular.json").spec;
    EXPECT_TRUE(parse_boundary_spec(spec, "inf").is_infinity());
    EXPECT_TRUE(parse_boundary_spec(spec, "cusp:").is_infinity());
    EXPECT_NEAR(parse_boundary_spec(spec, "cusp:S").value(), 0.0, 1e-15);
    EXPECT_NEAR(parse_boundary_spec(spec, "real:0.25").value(), 0.25, 1e-15);
    // T^3 S: z ↦ 3 - 1/z fixes (3 + √5)/2.
    EXPECT_NEAR(parse_boundary_spec(spec, "radial:T^3.S").value(), 0.5 * (3.0 + std::sqrt(5.0)), 1e-12);
    EXPECT_THROW(parse_boundary_spec(spec, "radial:T"), Error);
    EXPECT_THROW(parse_boundary_spec(spec, "nowhere"), Error);
    EXPECT_EQ(expand_family("T^{k}.S", 3, 5), (std::vector<std::string>{"T^3.S", "T^4.S", "T^5.S"}));
    EXPECT_THROW(expand_family("T.S", 1, 2), Error);
}

TEST(Manifest, HashCoversInputsOnly) {
    RunManifest a;
    a.config_hash = 7;
    a.command = "delta";
    a.parameters = {{"--radius", "12"}};
    RunManifest b = a;
    b.wall_time = 99.0;
    b.deltas["delta_hat"] = 1.0;
    EXPECT_EQ(a.hash(), b.hash());
    b.parameters["--radius"] = "13";
    EXPECT_NE(a.hash(), b.hash());
    EXPECT_EQ(a.stamp().rfind("# horoshadow-csv/1 manifest ", 0), 0u);
    EXPECT_EQ(a.to_json()["manifest_hash"], hex64(a.hash()));
}

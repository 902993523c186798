// Atlas assembly: disc scene embedding with its quadrant correspondence,
// marker and curve generation, SVG determinism, and the JSON report shape.
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "corpus.hpp"
#include "json.hpp"
#include "projatlas/atlas.hpp"
#include "projatlas/parse.hpp"

using namespace projatlas;

namespace {

int quadrant(const std::pair<double, double>& p) {
  if (p.first > 0 && p.second > 0) return 1;
  if (p.first < 0 && p.second > 0) return 2;
  if (p.first < 0 && p.second < 0) return 3;
  return 4;
}

double norm2(const std::pair<double, double>& p) {
  return std::hypot(p.first, p.second);
}

IntegratorConfig quick_cfg() {
  IntegratorConfig cfg;
  cfg.max_arc_length = 6.0;
  cfg.max_steps = 4000;
  return cfg;
}

}  // namespace

TEST_CASE("scene embedding of a chart into its own disc") {
  const auto q = scene_embed(ChartId::XY, ChartId::XY, {3.0, 4.0});
  CHECK(q.first == doctest::Approx(3.0 / std::sqrt(26.0)).epsilon(1e-14));
  CHECK(q.second == doctest::Approx(4.0 / std::sqrt(26.0)).epsilon(1e-14));
  const auto o = scene_embed(ChartId::EtaZeta, ChartId::EtaZeta, {0.0, 0.0});
  CHECK(o.first == 0.0);
  CHECK(o.second == 0.0);
}

TEST_CASE("every embedding lands inside the closed unit disc") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-30.0, 30.0);
  for (int i = 0; i < 500; ++i) {
    const std::pair<double, double> p{coord(rng), coord(rng)};
    for (ChartId scene : {ChartId::XY, ChartId::XiTheta, ChartId::EtaZeta})
      for (ChartId chart : {ChartId::XY, ChartId::XiTheta, ChartId::EtaZeta})
        CHECK(norm2(scene_embed(scene, chart, p)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("quadrant correspondence between consecutive charts") {
  // One chart step sends quadrants (1,2,3,4) to (1,3,4,2); two steps send
  // them to (1,4,2,3).  The correspondence only depends on the chart offset.
  const int one_step[5] = {0, 1, 3, 4, 2};
  const int two_step[5] = {0, 1, 4, 2, 3};
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(0.05, 8.0);
  for (int i = 0; i < 400; ++i) {
    const double su = (i & 1) ? -1.0 : 1.0;
    const double sv = (i & 2) ? -1.0 : 1.0;
    const std::pair<double, double> p{su * coord(rng), sv * coord(rng)};
    const int q = quadrant(p);
    for (ChartId chart : {ChartId::XY, ChartId::XiTheta, ChartId::EtaZeta}) {
      CHECK(quadrant(scene_embed(chart, chart, p)) == q);
      CHECK(quadrant(scene_embed(chart_advance(chart, 1), chart, p)) ==
            one_step[q]);
      CHECK(quadrant(scene_embed(chart_advance(chart, 2), chart, p)) ==
            two_step[q]);
    }
  }
}

TEST_CASE("chart equators land on the scene boundary") {
  for (double t : {-3.0, -1.0, 0.5, 2.0}) {
    // Chart-1 points with theta = 0 are directions at infinity of the base
    // plane: they sit on the base scene's boundary circle.
    const auto q = scene_embed(ChartId::XY, ChartId::XiTheta, {t, 0.0});
    CHECK(norm2(q) == doctest::Approx(1.0).epsilon(1e-14));
    // In their own scene they are interior points.
    CHECK(norm2(scene_embed(ChartId::XiTheta, ChartId::XiTheta, {t, 0.0})) <
          1.0);
  }
}

TEST_CASE("run_analysis assembles a consistent report") {
  const PlaneSystem s = corpus::cubic_center_like();
  const AnalysisReport rep = run_analysis(s);
  CHECK(rep.type.kind == ProjectiveKind::Singular);
  CHECK(rep.first.system.X == corpus::first_of("cubic-center-like").X);
  CHECK(rep.second.system.Y == corpus::second_of("cubic-center-like").Y);
  CHECK(rep.degrees.deg_first == rep.first.system.degree());
  CHECK(rep.degrees.deg_second == rep.second.system.degree());
  REQUIRE(rep.equilibria.size() == 1);
  CHECK(rep.equilibria[0].kind == EquilibriumKind::CenterOrFocus);
  REQUIRE(!rep.cycles.empty());
  CHECK(rep.cycles[0].name == "line at infinity");
  CHECK(rep.symmetry.origin);
}

TEST_CASE("build_atlas validates the density") {
  CHECK_THROWS_AS(build_atlas(corpus::linear_center(), quick_cfg(), 0),
                  std::invalid_argument);
}

TEST_CASE("atlas of the rotation: curves stay in the discs, no errors") {
  const AtlasDocument doc = build_atlas(corpus::linear_center(), quick_cfg(), 2);
  CHECK(doc.integration_errors.empty());
  bool any_points = false;
  for (const auto& scene : doc.scenes) {
    CHECK(!scene.label.empty());
    for (const auto& curve : scene.curves)
      for (const auto& p : curve.points) {
        any_points = true;
        CHECK(norm2(p) <= 1.0 + 1e-9);
      }
  }
  CHECK(any_points);
  // The base equator is a closed orbit here, so the reduced scenes carry
  // equator curves.
  bool equator_curve = false;
  for (const auto& curve : doc.scenes[1].curves)
    if (curve.style == CurveStyle::Equator) equator_curve = true;
  CHECK(equator_curve);
}

TEST_CASE("atlas markers: interior equilibria and antipodal boundary pairs") {
  const AtlasDocument doc =
      build_atlas(corpus::quadratic_no_equilibria(), quick_cfg(), 1);
  // No finite equilibria: the base scene shows only boundary markers (the
  // infinite direction pair) and contact glyphs on the vertical axis.
  const ChartScene& base = doc.scenes[0];
  int boundary = 0, contact_glyphs = 0;
  for (const auto& m : base.markers) {
    if (norm2(m.at) > 1.0 - 1e-9) ++boundary;
    if (m.glyph == GlyphKind::ContactHalfDisc ||
        m.glyph == GlyphKind::ContactCrossing) {
      ++contact_glyphs;
      REQUIRE(m.side.has_value());
      CHECK(std::abs(norm2(*m.side) - 1.0) < 1e-9);
    }
  }
  CHECK(boundary == 2);       // antipodal images of the single direction y = 0
  CHECK(contact_glyphs == 2); // contacts at (0, -1) and (0, 1)

  bool found_label = false;
  for (const auto& m : base.markers)
    if (m.label.find("at infinity") != std::string::npos) found_label = true;
  CHECK(found_label);

  // In its home chart the direction sits at the scene center, not doubled.
  int interior_infinite = 0;
  for (const auto& m : doc.scenes[1].markers)
    if (norm2(m.at) < 0.5) ++interior_infinite;
  CHECK(interior_infinite == 1);
}

TEST_CASE("finite equilibrium markers sit at their embedded locations") {
  const AtlasDocument doc = build_atlas(corpus::quintic_ring(), quick_cfg(), 1);
  for (int si = 0; si < 3; ++si) {
    const ChartScene& scene = doc.scenes[si];
    for (const auto& eq : doc.report.equilibria) {
      const auto want = scene_embed(scene.chart, ChartId::XY, eq.location);
      bool found = false;
      for (const auto& m : scene.markers) {
        if (std::abs(m.at.first - want.first) < 1e-9 &&
            std::abs(m.at.second - want.second) < 1e-9)
          found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("svg rendering is deterministic and well-formed") {
  const PlaneSystem s = corpus::linear_center();
  const AtlasDocument doc1 = build_atlas(s, quick_cfg(), 2);
  const AtlasDocument doc2 = build_atlas(s, quick_cfg(), 2);
  const std::string svg1 = render_svg(doc1);
  const std::string svg2 = render_svg(doc2);
  CHECK(svg1 == svg2);
  CHECK(svg1.rfind("<?xml", 0) == 0);
  CHECK(svg1.find("<svg") != std::string::npos);
  CHECK(svg1.find("</svg>") != std::string::npos);
  CHECK(svg1.find("clipPath") != std::string::npos);
  CHECK(svg1.find("nan") == std::string::npos);
  CHECK(svg1.find("inf") == std::string::npos);
}

TEST_CASE("json report shape and exact polynomial round-trips") {
  const AnalysisReport rep = run_analysis(corpus::cubic_center_like());
  const std::string text = write_report_json(rep);
  const auto j = nlohmann::ordered_json::parse(text);

  CHECK(j["system"]["chart"] == "xy");
  CHECK(j["system"]["degree"] == 3);
  CHECK(j["projective_type"] == "P-singular");
  CHECK(j["W_n"] == "0");
  CHECK(j["equator_consists_of_trajectories"] == false);
  CHECK(j["reduced"]["first"]["m"] == 1);
  CHECK(j["reduced"]["second"]["m"] == 1);
  CHECK(j["degrees"]["predicted"]["first"] == j["degrees"]["actual"]["first"]);
  // One finite equilibrium (the origin) plus the degenerate vertical
  // direction at infinity, in a single tagged array.
  REQUIRE(j["equilibria"].is_array());
  CHECK(j["equilibria"].size() == 2);
  CHECK(j["equilibria"][0]["type"] == "finite");
  CHECK(j["equilibria"][0]["kind"] == "center or focus");
  CHECK(j["equilibria"][1]["type"] == "infinite");
  CHECK(j["equilibria"][1]["kind"] == "degenerate linear part");
  CHECK(j["equilibria"][1]["modulo_time_direction"] == true);
  CHECK(j["contacts"]["first_axis"].empty());
  CHECK(j["contacts"]["second_axis"].empty());
  CHECK(j["symmetry"]["origin"] == true);
  CHECK(j["invariant_lines"]["lines"].empty());
  REQUIRE(!j["cycles"].empty());
  CHECK(j["cycles"][0]["curve"] == "line at infinity");

  // Printed polynomials parse back to the exact objects they came from.
  const auto back_X = parse_polynomial(j["system"]["X"].get<std::string>(),
                                       chart_vars(ChartId::XY));
  CHECK(back_X == rep.system.X);
  const auto back_Xi = parse_polynomial(j["reduced"]["first"]["Xi"].get<std::string>(),
                                        chart_vars(ChartId::XiTheta));
  CHECK(back_Xi == rep.first.system.X);
  const auto back_H = parse_polynomial(j["reduced"]["second"]["H"].get<std::string>(),
                                       chart_vars(ChartId::EtaZeta));
  CHECK(back_H == rep.second.system.X);
}

TEST_CASE("json report carries fractional coefficients exactly") {
  const AnalysisReport rep = run_analysis(corpus::septic_double_oval());
  const auto j = nlohmann::ordered_json::parse(write_report_json(rep));
  const auto back_X = parse_polynomial(j["system"]["X"].get<std::string>(),
                                       chart_vars(ChartId::XY));
  CHECK(back_X == rep.system.X);
  const auto back_Th = parse_polynomial(
      j["reduced"]["first"]["Theta"].get<std::string>(),
      chart_vars(ChartId::XiTheta));
  CHECK(back_Th == rep.first.system.Y);
  // The degenerate origin determinant is the exact rational -101/100.
  bool saw_origin = false;
  for (const auto& e : j["equilibria"]) {
    if (e["location"][0].get<double>() == 0.0 &&
        e["location"][1].get<double>() == 0.0) {
      saw_origin = true;
      CHECK(e["exact_det"] == "-101/100");
      CHECK(e["kind"] == "saddle point");
    }
  }
  CHECK(saw_origin);
}

TEST_CASE("json reports reduced systems for every catalogue entry") {
  for (const auto& c : corpus::reduction_cases()) {
    CAPTURE(c.name);
    const AnalysisReport rep = run_analysis(c.sys());
    const auto j = nlohmann::ordered_json::parse(write_report_json(rep));
    const auto xi = parse_polynomial(j["reduced"]["first"]["Xi"].get<std::string>(),
                                     chart_vars(ChartId::XiTheta));
    const auto th = parse_polynomial(j["reduced"]["first"]["Theta"].get<std::string>(),
                                     chart_vars(ChartId::XiTheta));
    CHECK(xi == c.expected_first().X);
    CHECK(th == c.expected_first().Y);
    const auto h = parse_polynomial(j["reduced"]["second"]["H"].get<std::string>(),
                                    chart_vars(ChartId::EtaZeta));
    const auto z = parse_polynomial(j["reduced"]["second"]["Z"].get<std::string>(),
                                    chart_vars(ChartId::EtaZeta));
    CHECK(h == c.expected_second().X);
    CHECK(z == c.expected_second().Y);
  }
}

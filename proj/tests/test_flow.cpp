// Numerical flow: field directions across charts, trajectory integration,
// chart-switch continuity, first-integral conservation, and seed planning.
#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "projatlas/flow.hpp"

using namespace projatlas;

namespace {

std::vector<std::pair<ChartId, std::pair<double, double>>> concatenated(
    const Trajectory& t) {
  std::vector<std::pair<ChartId, std::pair<double, double>>> out;
  for (const auto& seg : t.segments)
    for (const auto& p : seg.polyline) out.emplace_back(seg.chart, p);
  return out;
}

const std::pair<double, double>& last_point(const Trajectory& t) {
  return t.segments.back().polyline.back();
}

}  // namespace

TEST_CASE("direction_at normalizes the field in the system's own chart") {
  const PlaneSystem s = corpus::cubic_center_like();
  const auto d = direction_at(s, ChartId::XY, {1.0, 1.0});
  REQUIRE(d.has_value());
  CHECK(d->first == doctest::Approx(0.0));
  CHECK(d->second == doctest::Approx(1.0));
  CHECK(!direction_at(s, ChartId::XY, {0.0, 0.0}).has_value());
}

TEST_CASE("direction_at matches the pushforward in a reduced chart") {
  // Base point (3, 1) of the contact quadratic maps to (1/3, 1/3) in the
  // first reduced chart; the pushforward of the field vector (-9, 2) under
  // the chart change is (5/3, 1).
  const PlaneSystem s = corpus::quadratic_no_equilibria();
  const auto d = direction_at(s, ChartId::XiTheta, {1.0 / 3.0, 1.0 / 3.0});
  REQUIRE(d.has_value());
  const double n = std::sqrt(34.0);
  CHECK(d->first == doctest::Approx(5.0 / n).epsilon(1e-12));
  CHECK(d->second == doctest::Approx(3.0 / n).epsilon(1e-12));
}

TEST_CASE("closed orbit of the rotation returns to its start") {
  const PlaneSystem s = corpus::linear_center();
  IntegratorConfig cfg;
  cfg.max_arc_length = 2 * 3.14159265358979323846 * 0.5;  // one revolution
  const Trajectory t =
      integrate_trajectory(s, Seed{ChartId::XY, {0.5, 0.0}}, cfg);
  CHECK(t.switch_events.empty());
  REQUIRE(t.segments.size() == 1);
  CHECK(t.segments[0].chart == ChartId::XY);
  const auto& end = last_point(t);
  CHECK(end.first == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(end.second) < 1e-6);
  CHECK(t.stop_reason == "arc-length budget reached");
  CHECK(t.arc_length == doctest::Approx(cfg.max_arc_length).epsilon(1e-9));
}

TEST_CASE("the saddle flow conserves its integral inside the base chart") {
  const PlaneSystem s = corpus::linear_saddle();
  const Trajectory t = integrate_trajectory(s, Seed{ChartId::XY, {1.0, 1.0}});
  const double drift =
      first_integral_drift([](double x, double y) { return x * y; }, t,
                           ChartId::XY);
  CHECK(drift < 1e-8);
}

TEST_CASE("integration refuses equilibrium seeds and bad configs") {
  const PlaneSystem s = corpus::linear_saddle();
  CHECK_THROWS_AS(integrate_trajectory(s, Seed{ChartId::XY, {0.0, 0.0}}),
                  std::invalid_argument);
  IntegratorConfig bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate_trajectory(s, Seed{ChartId::XY, {1.0, 1.0}}, bad),
                  std::invalid_argument);
  IntegratorConfig swapped;
  swapped.switch_in = 3.0;  // above switch_out
  CHECK_THROWS_AS(
      integrate_trajectory(s, Seed{ChartId::XY, {1.0, 1.0}}, swapped),
      std::invalid_argument);
}

TEST_CASE("trajectories headed to infinity switch charts continuously") {
  const PlaneSystem s = corpus::quadratic_no_equilibria();
  const Trajectory t =
      integrate_trajectory(s, Seed{ChartId::XY, {1.2, 0.7}});
  REQUIRE(!t.switch_events.empty());
  const auto pts = concatenated(t);
  for (const auto& ev : t.switch_events) {
    REQUIRE(ev.index + 1 < pts.size());
    CHECK(pts[ev.index].first == ev.from);
    CHECK(pts[ev.index + 1].first == ev.to);
    CHECK(ev.from != ev.to);
    const double gap =
        projective_distance(sphere_lift(ev.from, pts[ev.index].second),
                            sphere_lift(ev.to, pts[ev.index + 1].second));
    CHECK(gap < 1e-6);
  }
  // Segment boundaries agree with the recorded events.
  REQUIRE(t.segments.size() == t.switch_events.size() + 1);
  std::size_t cumulative = 0;
  for (std::size_t i = 0; i + 1 < t.segments.size(); ++i) {
    cumulative += t.segments[i].polyline.size();
    CHECK(t.switch_events[i].index == cumulative - 1);
  }
}

TEST_CASE("reversing the orientation retraces the arc") {
  const PlaneSystem s = corpus::linear_center();
  IntegratorConfig cfg;
  cfg.max_arc_length = 3.0;
  const Seed seed{ChartId::XY, {0.7, 0.1}};
  const Trajectory fwd = integrate_trajectory(s, seed, cfg, Orientation::Forward);
  REQUIRE(fwd.switch_events.empty());
  IntegratorConfig back_cfg = cfg;
  back_cfg.max_arc_length = fwd.arc_length;
  const Trajectory back = integrate_trajectory(
      s, Seed{ChartId::XY, last_point(fwd)}, back_cfg, Orientation::Backward);
  REQUIRE(back.switch_events.empty());
  const auto& home = last_point(back);
  CHECK(home.first == doctest::Approx(seed.point.first).epsilon(1e-6));
  CHECK(home.second == doctest::Approx(seed.point.second).epsilon(1e-6));
}

TEST_CASE("integration stops when approaching an equilibrium") {
  // The radial node pulls backward trajectories into the origin.
  const PlaneSystem s = corpus::radial_node();
  const Trajectory t = integrate_trajectory(s, Seed{ChartId::XY, {0.5, 0.5}},
                                            {}, Orientation::Backward);
  CHECK(t.stop_reason == "approached an equilibrium");
}

TEST_CASE("first_integral_drift rejects non-finite values") {
  const PlaneSystem s = corpus::linear_center();
  IntegratorConfig cfg;
  cfg.max_arc_length = 1.0;
  const Trajectory t =
      integrate_trajectory(s, Seed{ChartId::XY, {0.5, 0.0}}, cfg);
  CHECK_THROWS_AS(first_integral_drift(
                      [](double, double) { return 1.0 / 0.0; }, t, ChartId::XY),
                  std::domain_error);
}

TEST_CASE("seed plan covers all charts and adds separatrix seeds") {
  const PlaneSystem s = corpus::linear_saddle();
  const auto eq = finite_equilibria(s);
  REQUIRE(eq.size() == 1);
  const auto seeds = seed_plan(s, eq, 2);
  CHECK_THROWS_AS(seed_plan(s, eq, 0), std::invalid_argument);

  int near_origin = 0;
  bool chart_seen[3] = {false, false, false};
  for (const auto& sd : seeds) {
    chart_seen[static_cast<int>(sd.chart)] = true;
    const double r = std::hypot(sd.point.first, sd.point.second);
    if (sd.chart == ChartId::XY && r < 1e-3) ++near_origin;
  }
  CHECK(near_origin == 4);  // one seed along each separatrix direction
  CHECK(chart_seen[0]);
  CHECK(chart_seen[1]);
  CHECK(chart_seen[2]);
  CHECK(seeds.size() >= 12);

  // Determinism: the same inputs give the same plan.
  const auto again = seed_plan(s, eq, 2);
  REQUIRE(again.size() == seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    CHECK(again[i].chart == seeds[i].chart);
    CHECK(again[i].point == seeds[i].point);
  }
}

TEST_CASE("sphere lift and projective distance identify antipodes") {
  const auto a = sphere_lift(ChartId::XY, {2.0, -1.0});
  CHECK(std::abs(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] - 1.0) < 1e-14);
  const std::array<double, 3> minus_a{-a[0], -a[1], -a[2]};
  CHECK(projective_distance(a, minus_a) == doctest::Approx(0.0));
  // The same projective point seen from another chart lifts to +-the same
  // representative: (2, -1) in the base chart is (-1/2, 1/2) in chart 1.
  const auto b = sphere_lift(ChartId::XiTheta, {-0.5, 0.5});
  CHECK(projective_distance(a, b) == doctest::Approx(0.0).epsilon(1e-12));
}
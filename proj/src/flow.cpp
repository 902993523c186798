// Trajectory integration across the projective atlas: Dormand-Prince 5(4)
// steps on the chart fields at unit speed, hysteresis-driven chart switching
// with pushforward-aligned direction, seed grids, and drift measurement.
#include "projatlas/flow.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace projatlas {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Cap on a single accepted step; keeps consecutive polyline points close
// (the chart-to-disc projection is a contraction, so disc gaps obey it too).
constexpr double kMaxStep = 0.05;
constexpr double kMinStep = 1e-12;
// Field magnitude below which the integration reports an equilibrium.
constexpr double kEquilibriumApproach = 1e-6;

struct Vec2 {
  double u = 0.0, v = 0.0;
};

double norm(const Vec2& a) { return std::hypot(a.u, a.v); }
double chart_norm(const Vec2& a) { return std::max(std::abs(a.u), std::abs(a.v)); }

// The right member governing one chart of the atlas, with the time-change
// data needed to orient it by the original system's time.
struct ChartField {
  Poly2 P, Q;
  int m = 0;
  Var transverse = Var::Second;
  bool reduced = false;
};

struct AtlasFields {
  ChartId base = ChartId::XY;
  std::array<ChartField, 3> field;  // indexed by chart offset from base
};

AtlasFields make_fields(const PlaneSystem& sys) {
  AtlasFields af;
  af.base = sys.chart;
  af.field[0] = {sys.X, sys.Y, 0, Var::Second, false};
  ReducedSystem r1 = reduce_system(sys, WhichReduction::First);
  ReducedSystem r2 = reduce_system(sys, WhichReduction::Second);
  af.field[1] = {r1.system.X, r1.system.Y, r1.m, r1.transverse(), true};
  af.field[2] = {r2.system.X, r2.system.Y, r2.m, r2.transverse(), true};
  return af;
}

int chart_offset(ChartId chart, ChartId base) {
  int t = (static_cast<int>(chart) - static_cast<int>(base)) % 3;
  return t < 0 ? t + 3 : t;
}

Vec2 raw_field(const ChartField& f, const Vec2& p) {
  return {f.P.eval(p.u, p.v), f.Q.eval(p.u, p.v)};
}

// sign(transverse)^m for entering a reduced chart at p; +1 on the equator
// itself and everywhere when m is even.
double entry_factor(const ChartField& f, const Vec2& p) {
  if (!f.reduced || f.m % 2 == 0) return 1.0;
  const double tv = f.transverse == Var::Second ? p.v : p.u;
  return tv < 0 ? -1.0 : 1.0;
}

// One chart step forward: (a,b) -> (b/a, 1/a); two steps: (a,b) -> (1/b, a/b).
// Returns false when the needed denominator is (numerically) zero.
bool map_point(int steps, const Vec2& p, Vec2& out) {
  if (steps == 1) {
    if (std::abs(p.u) < 1e-12) return false;
    out = {p.v / p.u, 1.0 / p.u};
    return true;
  }
  assert(steps == 2);
  if (std::abs(p.v) < 1e-12) return false;
  out = {1.0 / p.v, p.u / p.v};
  return true;
}

// Differential of the chart step maps applied to a velocity at p.
Vec2 push_velocity(int steps, const Vec2& p, const Vec2& w) {
  if (steps == 1) {
    // d(b/a, 1/a) = [[-b/a^2, 1/a], [-1/a^2, 0]]
    const double a2 = p.u * p.u;
    return {-p.v / a2 * w.u + w.v / p.u, -w.u / a2};
  }
  assert(steps == 2);
  // d(1/b, a/b) = [[0, -1/b^2], [1/b, -a/b^2]]
  const double b2 = p.v * p.v;
  return {-w.v / b2, w.u / p.v - p.u / b2 * w.v};
}

// --- Dormand-Prince 5(4) on the unit-speed field ---------------------------

struct StepOutcome {
  bool stage_at_equilibrium = false;  // a stage hit a (near-)equilibrium
  Vec2 y5;
  double err = 0.0;  // scaled error estimate; accept when <= 1
};

// Unit-speed integrand for one chart, with a frozen direction factor.
struct UnitField {
  const ChartField* f;
  double dir;

  bool eval(const Vec2& p, Vec2& out) const {
    const Vec2 r = raw_field(*f, p);
    const double n = norm(r);
    if (n < 1e-13 * (1.0 + chart_norm(p))) return false;
    out = {dir * r.u / n, dir * r.v / n};
    return true;
  }
};

StepOutcome dp45_step(const UnitField& g, const Vec2& y, double h, double rel_tol,
                      double abs_tol) {
  static const double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  // Difference between the 5th- and 4th-order weights (row 7 minus b4).
  static const double d[7] = {71.0 / 57600,    0.0,        -71.0 / 16695, 71.0 / 1920,
                              -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

  StepOutcome out;
  Vec2 k[7];
  if (!g.eval(y, k[0])) {
    out.stage_at_equilibrium = true;
    return out;
  }
  for (int s = 1; s < 7; ++s) {
    Vec2 p = y;
    for (int j = 0; j < s; ++j) {
      p.u += h * a[s][j] * k[j].u;
      p.v += h * a[s][j] * k[j].v;
    }
    if (!g.eval(p, k[s])) {
      out.stage_at_equilibrium = true;
      return out;
    }
  }
  // Stage 7 is evaluated at the 5th-order solution itself (FSAL layout).
  Vec2 y5 = y;
  for (int j = 0; j < 6; ++j) {
    y5.u += h * a[6][j] * k[j].u;
    y5.v += h * a[6][j] * k[j].v;
  }
  out.y5 = y5;
  double eu = 0.0, ev = 0.0;
  for (int j = 0; j < 7; ++j) {
    eu += d[j] * k[j].u;
    ev += d[j] * k[j].v;
  }
  eu *= h;
  ev *= h;
  const double su = abs_tol + rel_tol * std::max(std::abs(y.u), std::abs(y5.u));
  const double sv = abs_tol + rel_tol * std::max(std::abs(y.v), std::abs(y5.v));
  out.err = std::sqrt(0.5 * ((eu / su) * (eu / su) + (ev / sv) * (ev / sv)));
  return out;
}

}  // namespace

std::optional<std::pair<double, double>> direction_at(const PlaneSystem& sys,
                                                      ChartId chart,
                                                      std::pair<double, double> p) {
  const AtlasFields af = make_fields(sys);
  const ChartField& f = af.field[chart_offset(chart, af.base)];
  const Vec2 q{p.first, p.second};
  const Vec2 r = raw_field(f, q);
  const double n = norm(r);
  if (n < 1e-12 * (1.0 + chart_norm(q))) return std::nullopt;
  const double s = entry_factor(f, q);
  return std::make_pair(s * r.u / n, s * r.v / n);
}

Trajectory integrate_trajectory(const PlaneSystem& sys, const Seed& seed,
                                const IntegratorConfig& cfg,
                                Orientation orientation) {
  if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0))
    throw std::invalid_argument("integrator tolerances must be positive");
  if (!(cfg.switch_in < cfg.switch_out))
    throw std::invalid_argument("switch_in must be below switch_out");

  const AtlasFields af = make_fields(sys);
  int t = chart_offset(seed.chart, af.base);
  Vec2 p{seed.point.first, seed.point.second};

  {
    const Vec2 r = raw_field(af.field[t], p);
    if (norm(r) < 1e-8 * (1.0 + chart_norm(p)))
      throw std::invalid_argument("seed lies at an equilibrium");
  }

  Trajectory traj;
  traj.seed = seed;
  traj.orientation = orientation;
  double dir = (orientation == Orientation::Forward ? 1.0 : -1.0) *
               entry_factor(af.field[t], p);

  traj.segments.push_back({chart_advance(af.base, t), {{p.u, p.v}}});
  std::size_t total_points = 1;

  double h = 1e-3;
  int steps = 0, attempts = 0;
  while (true) {
    if (traj.arc_length >= cfg.max_arc_length) {
      traj.stop_reason = "arc-length budget reached";
      break;
    }
    if (steps >= cfg.max_steps || attempts >= 20 * cfg.max_steps) {
      traj.stop_reason = "step budget reached";
      break;
    }
    h = std::min({h, kMaxStep, cfg.max_arc_length - traj.arc_length + 1e-9});

    const UnitField g{&af.field[t], dir};
    const StepOutcome step = dp45_step(g, p, h, cfg.rel_tol, cfg.abs_tol);
    ++attempts;
    if (step.stage_at_equilibrium) {
      traj.stop_reason = "approached an equilibrium";
      break;
    }
    if (step.err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(step.err, -0.2));
      if (h < kMinStep) {
        std::ostringstream os;
        os << "step-size underflow at (" << p.u << ", " << p.v << ") in chart "
           << chart_name(chart_advance(af.base, t));
        throw std::runtime_error(os.str());
      }
      continue;
    }

    traj.arc_length += h;
    ++steps;
    p = step.y5;
    traj.segments.back().polyline.emplace_back(p.u, p.v);
    ++total_points;
    h = std::min(kMaxStep,
                 h * std::min(5.0, std::max(0.2, 0.9 * std::pow(
                                                      std::max(step.err, 1e-10),
                                                      -0.2))));

    const Vec2 r = raw_field(af.field[t], p);
    if (norm(r) < kEquilibriumApproach * (1.0 + chart_norm(p))) {
      traj.stop_reason = "approached an equilibrium";
      break;
    }

    if (chart_norm(p) > cfg.switch_out) {
      // Candidate charts one and two steps ahead in the cycle; enter the one
      // with the smallest coordinates.
      int best_rel = -1;
      Vec2 best_p;
      double best_norm = chart_norm(p);
      for (int adv = 1; adv <= 2; ++adv) {
        Vec2 q;
        if (!map_point(adv, p, q)) continue;
        if (chart_norm(q) < best_norm && chart_norm(q) < cfg.switch_in) {
          best_norm = chart_norm(q);
          best_rel = (t + adv) % 3;
          best_p = q;
        }
      }
      if (best_rel >= 0) {
        const int adv = (best_rel - t + 3) % 3;
        // Align the new chart-time direction with the traced curve by pushing
        // the current velocity through the transition map.
        const Vec2 vel{dir * r.u, dir * r.v};
        const Vec2 w = push_velocity(adv, p, vel);
        const Vec2 rf = raw_field(af.field[best_rel], best_p);
        const double dot = w.u * rf.u + w.v * rf.v;
        traj.switch_events.push_back({total_points - 1,
                                      chart_advance(af.base, t),
                                      chart_advance(af.base, best_rel)});
        t = best_rel;
        p = best_p;
        dir = dot < 0 ? -1.0 : 1.0;
        traj.segments.push_back({chart_advance(af.base, t), {{p.u, p.v}}});
        ++total_points;
        h = std::min(h, 1e-3);  // re-probe the new chart's scale
      }
    }
  }
  return traj;
}

double first_integral_drift(const std::function<double(double, double)>& F,
                            const Trajectory& traj, ChartId chart) {
  bool have_base = false;
  double base = 0.0, worst = 0.0;
  for (const auto& seg : traj.segments) {
    if (seg.chart != chart) continue;
    for (const auto& pt : seg.polyline) {
      const double val = F(pt.first, pt.second);
      if (!std::isfinite(val))
        throw std::domain_error("first-integral evaluator returned a non-finite value");
      if (!have_base) {
        base = val;
        have_base = true;
      }
      worst = std::max(worst, std::abs(val - base) / (std::abs(base) + 1.0));
    }
  }
  return worst;
}

std::array<double, 3> sphere_lift(ChartId chart, std::pair<double, double> p) {
  // Homogeneous coordinates (x : y : 1) of the base plane read from each
  // chart: (u, v, 1) in xy, (1, u, v) in xi-theta, (v, 1, u) in eta-zeta.
  std::array<double, 3> h{};
  switch (chart) {
    case ChartId::XY: h = {p.first, p.second, 1.0}; break;
    case ChartId::XiTheta: h = {1.0, p.first, p.second}; break;
    case ChartId::EtaZeta: h = {p.second, 1.0, p.first}; break;
  }
  const double n = std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
  return {h[0] / n, h[1] / n, h[2] / n};
}

double projective_distance(const std::array<double, 3>& a,
                           const std::array<double, 3>& b) {
  double dm = 0.0, dp = 0.0;
  for (int i = 0; i < 3; ++i) {
    dm += (a[i] - b[i]) * (a[i] - b[i]);
    dp += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return std::sqrt(std::min(dm, dp));
}

std::vector<Seed> seed_plan(const PlaneSystem& sys,
                            const std::vector<Equilibrium>& equilibria,
                            int density) {
  if (density < 1) throw std::invalid_argument("seed density must be at least 1");
  std::vector<Seed> out;
  std::vector<std::array<double, 3>> lifts;
  const auto push_unique = [&](ChartId c, double u, double v) {
    const auto lift = sphere_lift(c, {u, v});
    for (const auto& seen : lifts)
      if (projective_distance(seen, lift) < 0.05) return;
    lifts.push_back(lift);
    out.push_back({c, {u, v}});
  };

  for (int t = 0; t < 3; ++t) {
    const ChartId c = chart_advance(sys.chart, t);
    for (int i = 0; i < density; ++i) {
      const double rho = (i + 0.5) / density;  // radius on the chart's disc
      const double blow = rho / std::sqrt(1.0 - rho * rho);
      for (int j = 0; j < density; ++j) {
        // Odd rings are rotated half a slot to stagger the rays.
        const double phi = 2.0 * kPi * (j + 0.5 * (i % 2)) / density;
        push_unique(c, blow * std::cos(phi), blow * std::sin(phi));
      }
    }
  }

  // Separatrix seeds: slightly off each saddle along its eigenvectors.
  for (const auto& e : equilibria) {
    if (e.kind != EquilibriumKind::SaddlePoint) continue;
    const Jacobian2& J = e.jacobian;
    const double disc = std::sqrt(std::max(0.0, J.trace() * J.trace() - 4 * J.det()));
    for (int which = 0; which < 2; ++which) {
      const double lam = (J.trace() + (which == 0 ? disc : -disc)) / 2;
      double eu = J.j12, ev = lam - J.j11;
      if (std::hypot(eu, ev) < 1e-12 * (1 + std::abs(lam))) {
        eu = lam - J.j22;
        ev = J.j21;
      }
      const double n = std::hypot(eu, ev);
      if (n == 0) continue;
      eu /= n;
      ev /= n;
      for (double s : {1.0, -1.0})
        out.push_back({sys.chart,
                       {e.location.first + s * 1e-4 * eu,
                        e.location.second + s * 1e-4 * ev}});
    }
  }
  return out;
}

}  // namespace projatlas

// Assembles the three-disc atlas: runs the symbolic pipeline, integrates the
// seed plan, embeds curves and markers into every disc, and serializes the
// result as SVG and as a fixed-key-order JSON report.
#include "projatlas/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace projatlas {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Homogeneous coordinates (x~, y~, z~) of a chart point, without
// normalization; the lift is affine in (u, v), which keeps sign bookkeeping
// along segments exact.
std::array<double, 3> raw_lift(ChartId chart, std::pair<double, double> p) {
  switch (chart) {
    case ChartId::XY: return {p.first, p.second, 1.0};
    case ChartId::XiTheta: return {1.0, p.first, p.second};
    case ChartId::EtaZeta: return {p.second, 1.0, p.first};
  }
  return {0.0, 0.0, 0.0};
}

// Numerator pair and denominator of a scene's affine coordinates read off the
// homogeneous triple: the scene's disc shows num/|L| on the side den > 0.
void scene_split(ChartId scene, const std::array<double, 3>& h, double& nu,
                 double& nv, double& den) {
  switch (scene) {
    case ChartId::XY: nu = h[0]; nv = h[1]; den = h[2]; return;
    case ChartId::XiTheta: nu = h[1]; nv = h[2]; den = h[0]; return;
    case ChartId::EtaZeta: nu = h[2]; nv = h[0]; den = h[1]; return;
  }
}

double norm3(const std::array<double, 3>& h) {
  return std::sqrt(h[0] * h[0] + h[1] * h[1] + h[2] * h[2]);
}

// Sign with the convention sign(0) = +1, so boundary points pick one of the
// two antipodal representatives deterministically.
double pos_sign(double x) { return x < 0 ? -1.0 : 1.0; }

std::pair<double, double> embed_lift(ChartId scene,
                                     const std::array<double, 3>& h) {
  double nu, nv, den;
  scene_split(scene, h, nu, nv, den);
  const double n = norm3(h);
  const double s = pos_sign(den) / n;
  return {s * nu, s * nv};
}

// Ramer-Douglas-Peucker simplification.  The integrator samples every 0.05
// chart units regardless of curvature, so smooth arcs carry far more points
// than a 400-px disc can show; a 0.001-disc-unit (0.2 px) tolerance is
// visually lossless and deterministic.
std::vector<std::pair<double, double>> simplify_polyline(
    const std::vector<std::pair<double, double>>& pts, double eps) {
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<char> keep(n, 0);
  keep[0] = 1;
  keep[n - 1] = 1;
  std::vector<std::pair<size_t, size_t>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    if (j <= i + 1) continue;
    const double ax = pts[i].first, ay = pts[i].second;
    const double dx = pts[j].first - ax, dy = pts[j].second - ay;
    const double dd = dx * dx + dy * dy;
    double worst = -1.0;
    size_t at = i;
    for (size_t k = i + 1; k < j; ++k) {
      const double px = pts[k].first - ax, py = pts[k].second - ay;
      double d2;
      if (dd == 0.0) {
        d2 = px * px + py * py;
      } else {
        const double cross = px * dy - py * dx;
        d2 = cross * cross / dd;
      }
      if (d2 > worst) {
        worst = d2;
        at = k;
      }
    }
    if (worst > eps * eps) {
      keep[at] = 1;
      stack.push_back({i, at});
      stack.push_back({at, j});
    }
  }
  std::vector<std::pair<double, double>> out;
  for (size_t k = 0; k < n; ++k)
    if (keep[k]) out.push_back(pts[k]);
  return out;
}

// Embeds a chart polyline into one scene, splitting it wherever it crosses
// the scene's equator (the sign of the denominator component flips).  The
// exact boundary point is interpolated on the homogeneous segment, and the
// continuation re-enters at the antipodal boundary point.
void embed_polyline(ChartId scene, ChartId chart,
                    const std::vector<std::pair<double, double>>& pts,
                    CurveStyle style, std::vector<SceneCurve>& out) {
  if (pts.empty()) return;
  // Sub-pixel decimation: the disc embedding contracts, so dense chart
  // samples can fall well under a pixel apart.  Endpoints and equator
  // crossings are always kept.
  constexpr double kMinGap = 0.004;
  SceneCurve cur;
  cur.style = style;
  auto push_pt = [&](std::pair<double, double> q, bool force) {
    if (!force && !cur.points.empty()) {
      const auto& l = cur.points.back();
      if (std::hypot(q.first - l.first, q.second - l.second) < kMinGap) return;
    }
    cur.points.push_back(q);
  };
  auto flush = [&](SceneCurve&& c) {
    if (c.points.size() < 2) return;
    c.points = simplify_polyline(c.points, 0.001);
    out.push_back(std::move(c));
  };
  std::array<double, 3> prev = raw_lift(chart, pts.front());
  cur.points.push_back(embed_lift(scene, prev));
  for (size_t i = 1; i < pts.size(); ++i) {
    const std::array<double, 3> h = raw_lift(chart, pts[i]);
    double nu_p, nv_p, den_p, nu_h, nv_h, den_h;
    scene_split(scene, prev, nu_p, nv_p, den_p);
    scene_split(scene, h, nu_h, nv_h, den_h);
    if (pos_sign(den_p) != pos_sign(den_h)) {
      // The lift is affine along the chart segment, so the crossing
      // parameter solves (1-t) den_p + t den_h = 0 exactly.
      const double t = den_p / (den_p - den_h);
      const double bu = (1 - t) * nu_p + t * nu_h;
      const double bv = (1 - t) * nv_p + t * nv_h;
      const double bn = std::sqrt(bu * bu + bv * bv);
      if (bn > 0) {
        push_pt({pos_sign(den_p) * bu / bn, pos_sign(den_p) * bv / bn}, true);
        flush(std::move(cur));
        cur = SceneCurve{};
        cur.style = style;
        cur.points.push_back({pos_sign(den_h) * bu / bn, pos_sign(den_h) * bv / bn});
      }
    }
    push_pt(embed_lift(scene, h), i + 1 == pts.size());
    prev = h;
  }
  flush(std::move(cur));
}

GlyphKind glyph_for(EquilibriumKind k, bool& stable) {
  stable = (k == EquilibriumKind::NodeStable || k == EquilibriumKind::FocusStable);
  switch (k) {
    case EquilibriumKind::SaddlePoint: return GlyphKind::SaddleCross;
    case EquilibriumKind::NodeStable:
    case EquilibriumKind::NodeUnstable: return GlyphKind::NodeDot;
    case EquilibriumKind::FocusStable:
    case EquilibriumKind::FocusUnstable: return GlyphKind::FocusSpiral;
    case EquilibriumKind::CenterOrFocus: return GlyphKind::CenterRing;
    case EquilibriumKind::DegenerateLinearPart: return GlyphKind::DegenerateDiamond;
  }
  return GlyphKind::NodeDot;
}

// Places one marker in one scene.  Points on the scene's equator are shown
// twice, at both antipodal boundary representatives.  `probe`, when given, is
// a nearby chart point whose image orients the half-disc glyph.
void emit_marker(ChartScene& scene, ChartId chart, std::pair<double, double> p,
                 GlyphKind glyph, bool stable, const std::string& label,
                 const std::optional<std::pair<double, double>>& probe) {
  const std::array<double, 3> h = raw_lift(chart, p);
  double nu, nv, den;
  scene_split(scene.chart, h, nu, nv, den);
  const double n = norm3(h);

  auto side_toward = [&](std::pair<double, double> at,
                         double flip) -> std::optional<std::pair<double, double>> {
    if (!probe) return std::nullopt;
    const auto q = embed_lift(scene.chart, raw_lift(chart, *probe));
    double du = flip * q.first - at.first, dv = flip * q.second - at.second;
    const double dn = std::hypot(du, dv);
    if (dn < 1e-12) return std::nullopt;
    return std::make_pair(du / dn, dv / dn);
  };

  if (std::abs(den) <= 1e-9 * n) {
    const double bn = std::hypot(nu, nv);
    if (bn == 0) return;
    const std::pair<double, double> b{nu / bn, nv / bn};
    // Pick the representative nearer the probe's image so the side vector
    // points inward; the antipodal copy carries the mirrored vector.
    double flip = 1.0;
    if (probe) {
      const auto q = embed_lift(scene.chart, raw_lift(chart, *probe));
      if (q.first * b.first + q.second * b.second < 0) flip = -1.0;
    }
    const std::pair<double, double> b1{flip * b.first, flip * b.second};
    const std::pair<double, double> b2{-b1.first, -b1.second};
    scene.markers.push_back({glyph, b1, side_toward(b1, 1.0), stable, label});
    scene.markers.push_back({glyph, b2, side_toward(b2, -1.0), stable, label});
    return;
  }
  const std::pair<double, double> at{pos_sign(den) * nu / n, pos_sign(den) * nv / n};
  scene.markers.push_back({glyph, at, side_toward(at, 1.0), stable, label});
}

// --- SVG helpers -----------------------------------------------------------

std::string fmt6(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct SceneFrame {
  double cx, cy, r;
  std::pair<double, double> to_screen(std::pair<double, double> d) const {
    return {cx + r * d.first, cy - r * d.second};
  }
};

void svg_polyline(std::ostringstream& o, const SceneFrame& f,
                  const std::vector<std::pair<double, double>>& pts,
                  const std::string& attrs) {
  if (pts.size() < 2) return;
  o << "<polyline points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto s = f.to_screen(pts[i]);
    if (i) o << ' ';
    o << fmt6(s.first) << ',' << fmt6(s.second);
  }
  o << "\" fill=\"none\" " << attrs << "/>\n";
}

void svg_marker(std::ostringstream& o, const SceneFrame& f, const SceneMarker& m) {
  const auto c = f.to_screen(m.at);
  const std::string stable_color = "#14381f";
  const std::string unstable_color = "#a03020";
  const std::string color = m.stable ? stable_color : unstable_color;
  switch (m.glyph) {
    case GlyphKind::SaddleCross: {
      const double a = 4.2;
      o << "<path d=\"M" << fmt6(c.first - a) << ' ' << fmt6(c.second - a)
        << " L" << fmt6(c.first + a) << ' ' << fmt6(c.second + a)
        << " M" << fmt6(c.first - a) << ' ' << fmt6(c.second + a)
        << " L" << fmt6(c.first + a) << ' ' << fmt6(c.second - a)
        << "\" stroke=\"#101418\" stroke-width=\"1.700000\" fill=\"none\"/>\n";
      break;
    }
    case GlyphKind::NodeDot:
      o << "<circle cx=\"" << fmt6(c.first) << "\" cy=\"" << fmt6(c.second)
        << "\" r=\"3.200000\" fill=\"" << color << "\"/>\n";
      break;
    case GlyphKind::FocusSpiral: {
      o << "<polyline points=\"";
      for (int k = 0; k <= 24; ++k) {
        const double rad = 0.6 + 3.6 * k / 24.0;
        const double ang = k * (4.0 * kPi / 24.0);
        if (k) o << ' ';
        o << fmt6(c.first + rad * std::cos(ang)) << ','
          << fmt6(c.second - rad * std::sin(ang));
      }
      o << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.200000\"/>\n";
      break;
    }
    case GlyphKind::CenterRing:
      o << "<circle cx=\"" << fmt6(c.first) << "\" cy=\"" << fmt6(c.second)
        << "\" r=\"3.400000\" fill=\"none\" stroke=\"#101418\" stroke-width=\"1.400000\"/>\n";
      break;
    case GlyphKind::DegenerateDiamond: {
      const double a = 4.2;
      o << "<path d=\"M" << fmt6(c.first) << ' ' << fmt6(c.second - a)
        << " L" << fmt6(c.first + a) << ' ' << fmt6(c.second)
        << " L" << fmt6(c.first) << ' ' << fmt6(c.second + a)
        << " L" << fmt6(c.first - a) << ' ' << fmt6(c.second)
        << " Z\" fill=\"#5a5f66\"/>\n";
      break;
    }
    case GlyphKind::ContactHalfDisc: {
      // Filled half-disc bulging into the certified half-plane.
      std::pair<double, double> s = m.side.value_or(std::make_pair(0.0, 1.0));
      const std::pair<double, double> ss{s.first, -s.second};  // screen y flips
      const std::pair<double, double> tt{-ss.second, ss.first};
      o << "<path d=\"M";
      const int kSegs = 12;
      for (int k = 0; k <= kSegs; ++k) {
        const double ang = kPi * k / kSegs;  // 0..pi across the flat edge
        const double pu = c.first + 4.5 * (std::cos(ang) * tt.first + std::sin(ang) * ss.first);
        const double pv = c.second + 4.5 * (std::cos(ang) * tt.second + std::sin(ang) * ss.second);
        if (k) o << " L";
        o << fmt6(pu) << ' ' << fmt6(pv);
      }
      o << " Z\" fill=\"#7a3b9c\"/>\n";
      break;
    }
    case GlyphKind::ContactCrossing: {
      const double a = 3.0;
      o << "<rect x=\"" << fmt6(c.first - a) << "\" y=\"" << fmt6(c.second - a)
        << "\" width=\"" << fmt6(2 * a) << "\" height=\"" << fmt6(2 * a)
        << "\" fill=\"#7a3b9c\"/>\n";
      break;
    }
  }
}

// --- JSON helpers ----------------------------------------------------------

using ojson = nlohmann::ordered_json;

std::string rat_str(const Rat& r) { return r.str(); }

ojson json_direction(const DirectionAtInfinity& d,
                     const std::optional<Rat>& exact,
                     const std::pair<std::string, std::string>& vars) {
  ojson j;
  j["form"] = d.form == DirectionAtInfinity::Form::YEqualsAX
                  ? vars.second + " = a*" + vars.first
                  : vars.first + " = a*" + vars.second;
  j["a"] = d.a;
  if (exact) j["exact_a"] = rat_str(*exact);
  return j;
}

ojson json_axis_contacts(const std::vector<AxisContact>& cs,
                         const std::pair<std::string, std::string>& vars) {
  ojson arr = ojson::array();
  for (const auto& c : cs) {
    const bool horiz = c.axis == AxisName::Horizontal;
    ojson j;
    j["axis"] = (horiz ? vars.second : vars.first) + " = 0";
    j["offset"] = c.offset;
    if (c.exact) j["exact"] = rat_str(*c.exact);
    j["order"] = c.tangency_order;
    j["side"] = contact_side_name(c.side, horiz ? vars.second : vars.first);
    j["certificate"] = c.certificate;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

AnalysisReport run_analysis(const PlaneSystem& sys) {
  AnalysisReport r;
  r.system = sys;
  r.type = classify_projective_type(sys);
  r.first = reduce_system(sys, WhichReduction::First);
  r.second = reduce_system(sys, WhichReduction::Second);
  r.degrees = predicted_reduced_degree(sys);
  r.equilibria = finite_equilibria(sys);
  r.infinite = infinite_equilibria(sys);
  for (const auto& c : axis_contact_points(sys))
    (c.axis == AxisName::Horizontal ? r.contacts_first_axis
                                    : r.contacts_second_axis)
        .push_back(c);
  r.equatorial = equatorial_contact_points(sys);
  r.symmetry = symmetry_report(sys);
  r.lines = find_invariant_lines(sys);
  r.cycles.push_back({"line at infinity", classify_cycle_candidate(sys, Poly2{})});
  const auto& vars = chart_vars(sys.chart);
  for (const auto& ln : r.lines.lines)
    if (ln.exact && ln.line)
      r.cycles.push_back(
          {poly_to_string(*ln.line, vars.first, vars.second) + " = 0",
           classify_cycle_candidate(sys, *ln.line)});
  return r;
}

std::pair<double, double> scene_embed(ChartId scene, ChartId chart,
                                      std::pair<double, double> p) {
  return embed_lift(scene, raw_lift(chart, p));
}

AtlasDocument build_atlas(const PlaneSystem& sys, const IntegratorConfig& cfg,
                          int density) {
  if (density < 1) throw std::invalid_argument("atlas seed density must be >= 1");
  AtlasDocument doc;
  doc.report = run_analysis(sys);

  for (int s = 0; s < 3; ++s) {
    doc.scenes[s].chart = static_cast<ChartId>(s);
    const auto& v = chart_vars(static_cast<ChartId>(s));
    doc.scenes[s].label =
        "chart " + chart_name(static_cast<ChartId>(s)) + ": (" + v.first + ", " + v.second + ")";
  }

  // Trajectories from the seed plan, both time directions per seed.
  const auto seeds = seed_plan(sys, doc.report.equilibria, density);
  for (const auto& seed : seeds) {
    for (const Orientation ori : {Orientation::Forward, Orientation::Backward}) {
      Trajectory traj;
      try {
        traj = integrate_trajectory(sys, seed, cfg, ori);
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "seed (" << seed.point.first << ", " << seed.point.second
            << ") in chart " << chart_name(seed.chart) << " ("
            << (ori == Orientation::Forward ? "forward" : "backward")
            << "): " << e.what();
        doc.integration_errors.push_back(msg.str());
        continue;
      }
      for (const auto& seg : traj.segments)
        for (auto& scene : doc.scenes)
          embed_polyline(scene.chart, seg.chart, seg.polyline,
                         CurveStyle::Trajectory, scene.curves);
    }
  }

  // Invariant lines, parametrized projectively so they reach the boundary.
  {
    const int kSamples = 241;
    for (const auto& ln : doc.report.lines.lines) {
      const double nn = std::hypot(ln.a, ln.b);
      if (nn < 1e-12) continue;
      const double a = ln.a / nn, b = ln.b / nn, c = ln.c / nn;
      std::vector<std::pair<double, double>> pts;
      pts.reserve(kSamples);
      for (int k = 0; k < kSamples; ++k) {
        const double psi = -kPi / 2 + kPi * (k + 0.5) / kSamples;
        const double t = std::tan(psi);
        pts.push_back({-c * a - t * b, -c * b + t * a});
      }
      for (auto& scene : doc.scenes)
        embed_polyline(scene.chart, sys.chart, pts, CurveStyle::InvariantLine,
                       scene.curves);
    }
  }

  // The base equator, drawn as a curve where it is a diameter; on its own
  // disc it coincides with the boundary circle, which the renderer recolors.
  if (doc.report.type.kind == ProjectiveKind::Nonsingular) {
    const int kSamples = 241;
    const ChartId c1 = chart_advance(sys.chart, 1);
    const ChartId c2 = chart_advance(sys.chart, 2);
    std::vector<std::pair<double, double>> p1, p2;
    for (int k = 0; k < kSamples; ++k) {
      const double t = std::tan(-kPi / 2 + kPi * (k + 0.5) / kSamples);
      p1.push_back({t, 0.0});
      p2.push_back({0.0, t});
    }
    for (auto& scene : doc.scenes) {
      if (scene.chart == sys.chart) continue;
      embed_polyline(scene.chart, c1, p1, CurveStyle::Equator, scene.curves);
      embed_polyline(scene.chart, c2, p2, CurveStyle::Equator, scene.curves);
    }
  }

  // Markers: finite equilibria, infinite equilibria, axis and equatorial
  // contact points, each embedded into all three scenes.
  for (auto& scene : doc.scenes) {
    for (const auto& e : doc.report.equilibria) {
      bool stable = false;
      const GlyphKind g = glyph_for(e.kind, stable);
      emit_marker(scene, sys.chart, e.location, g, stable,
                  equilibrium_kind_name(e.kind), std::nullopt);
    }
    for (const auto& ie : doc.report.infinite.points) {
      bool stable = false;
      const GlyphKind g = glyph_for(ie.kind, stable);
      std::string label = equilibrium_kind_name(ie.kind) + " at infinity";
      if (ie.modulo_direction) label += " (modulo time direction)";
      emit_marker(scene, ie.chart, ie.chart_point, g, stable, label, std::nullopt);
    }
    const auto& vars = chart_vars(sys.chart);
    auto axis_markers = [&](const std::vector<AxisContact>& cs) {
      for (const auto& c : cs) {
        const bool horiz = c.axis == AxisName::Horizontal;
        const std::pair<double, double> p =
            horiz ? std::make_pair(c.offset, 0.0) : std::make_pair(0.0, c.offset);
        const std::string tv = horiz ? vars.second : vars.first;
        std::string label = "order-" + std::to_string(c.tangency_order) +
                            " contact with " + (horiz ? vars.second : vars.first) +
                            " = 0, " + contact_side_name(c.side, tv);
        if (c.side == ContactSide::BothSides) {
          emit_marker(scene, sys.chart, p, GlyphKind::ContactCrossing, false,
                      label, std::nullopt);
          continue;
        }
        const double sgn = c.side == ContactSide::NonNegativeHalf ? 1.0 : -1.0;
        const double delta = 1e-3 * (1.0 + std::abs(c.offset));
        const std::pair<double, double> probe =
            horiz ? std::make_pair(c.offset, sgn * delta)
                  : std::make_pair(sgn * delta, c.offset);
        emit_marker(scene, sys.chart, p, GlyphKind::ContactHalfDisc, false,
                    label, probe);
      }
    };
    axis_markers(doc.report.contacts_first_axis);
    axis_markers(doc.report.contacts_second_axis);

    for (const auto& ec : doc.report.equatorial.points) {
      // A direction y = a x sits at (a, 0) one chart forward; x = a y sits at
      // (0, a) two charts forward.  The side lives in the reciprocal of the
      // base variable, so the probe displaces the matching chart coordinate.
      const bool first_form =
          ec.direction.form == DirectionAtInfinity::Form::YEqualsAX;
      const ChartId cc = chart_advance(sys.chart, first_form ? 1 : 2);
      const std::pair<double, double> p =
          first_form ? std::make_pair(ec.direction.a, 0.0)
                     : std::make_pair(0.0, ec.direction.a);
      const std::string tv =
          ec.side_variable == Var::First ? vars.first : vars.second;
      std::string label = "order-" + std::to_string(ec.tangency_order) +
                          " contact with the equator, " +
                          contact_side_name(ec.side, tv);
      if (ec.side == ContactSide::BothSides) {
        emit_marker(scene, cc, p, GlyphKind::ContactCrossing, false, label,
                    std::nullopt);
        continue;
      }
      const double sgn = ec.side == ContactSide::NonNegativeHalf ? 1.0 : -1.0;
      const double delta = 1e-3 * (1.0 + std::abs(ec.direction.a));
      const std::pair<double, double> probe =
          first_form ? std::make_pair(ec.direction.a, sgn * delta)
                     : std::make_pair(sgn * delta, ec.direction.a);
      emit_marker(scene, cc, p, GlyphKind::ContactHalfDisc, false, label, probe);
    }
  }
  return doc;
}

std::string render_svg(const AtlasDocument& doc) {
  const double kRadius = 198.0;
  const SceneFrame frames[3] = {{240.0, 240.0, kRadius},
                                {680.0, 240.0, kRadius},
                                {1120.0, 240.0, kRadius}};
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1360\" height=\"480\" "
       "viewBox=\"0 0 1360 480\">\n"
    << "<rect width=\"1360\" height=\"480\" fill=\"#ffffff\"/>\n<defs>\n";
  for (int s = 0; s < 3; ++s)
    o << "<clipPath id=\"disc" << s << "\"><circle cx=\"" << fmt6(frames[s].cx)
      << "\" cy=\"" << fmt6(frames[s].cy) << "\" r=\"" << fmt6(kRadius)
      << "\"/></clipPath>\n";
  o << "</defs>\n";

  const bool equator_is_orbit =
      doc.report.type.kind == ProjectiveKind::Nonsingular;
  for (int s = 0; s < 3; ++s) {
    const ChartScene& scene = doc.scenes[s];
    const SceneFrame& f = frames[s];
    const bool boundary_is_base_equator =
        equator_is_orbit && scene.chart == doc.report.system.chart;
    o << "<g clip-path=\"url(#disc" << s << ")\">\n";
    for (const auto& curve : scene.curves) {
      std::string attrs;
      switch (curve.style) {
        case CurveStyle::Trajectory:
          attrs = "stroke=\"#33609c\" stroke-width=\"0.900000\"";
          break;
        case CurveStyle::InvariantLine:
          attrs = "stroke=\"#b03434\" stroke-width=\"1.300000\" stroke-dasharray=\"6 3\"";
          break;
        case CurveStyle::Equator:
          attrs = "stroke=\"#1f7a4d\" stroke-width=\"1.600000\"";
          break;
      }
      svg_polyline(o, f, curve.points, attrs);
    }
    o << "</g>\n";
    // Boundary circle and 15-degree ticks, over the clipped curves.
    o << "<circle cx=\"" << fmt6(f.cx) << "\" cy=\"" << fmt6(f.cy) << "\" r=\""
      << fmt6(kRadius) << "\" fill=\"none\" stroke=\""
      << (boundary_is_base_equator ? "#1f7a4d" : "#101418")
      << "\" stroke-width=\""
      << (boundary_is_base_equator ? "2.600000" : "1.400000") << "\"/>\n";
    for (int k = 0; k < 24; ++k) {
      const double ang = 2 * kPi * k / 24.0;
      const double cx = std::cos(ang), sy = std::sin(ang);
      o << "<line x1=\"" << fmt6(f.cx + kRadius * cx) << "\" y1=\""
        << fmt6(f.cy - kRadius * sy) << "\" x2=\""
        << fmt6(f.cx + (kRadius - 6) * cx) << "\" y2=\""
        << fmt6(f.cy - (kRadius - 6) * sy)
        << "\" stroke=\"#101418\" stroke-width=\"0.800000\"/>\n";
    }
    for (const auto& m : scene.markers) svg_marker(o, f, m);
    o << "<text x=\"" << fmt6(f.cx)
      << "\" y=\"466.000000\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"14\">"
      << scene.label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string write_report_json(const AnalysisReport& rep) {
  const auto& vars = chart_vars(rep.system.chart);
  auto print_in = [](const Poly2& p, ChartId c) {
    const auto& v = chart_vars(c);
    return poly_to_string(p, v.first, v.second);
  };

  ojson j;
  j["system"]["chart"] = chart_name(rep.system.chart);
  j["system"]["X"] = print_in(rep.system.X, rep.system.chart);
  j["system"]["Y"] = print_in(rep.system.Y, rep.system.chart);
  j["system"]["degree"] = rep.system.degree();

  j["projective_type"] = rep.type.kind == ProjectiveKind::Singular
                             ? "P-singular"
                             : "P-nonsingular";
  j["W_n"] = print_in(rep.type.w_n, rep.system.chart);
  j["equator_consists_of_trajectories"] = rep.type.equator_consists_of_trajectories;

  auto json_reduced = [&](const ReducedSystem& r, const char* k1,
                          const char* k2) {
    ojson jr;
    jr["chart"] = chart_name(r.system.chart);
    jr[k1] = print_in(r.system.X, r.system.chart);
    jr[k2] = print_in(r.system.Y, r.system.chart);
    jr["m"] = r.m;
    jr["degree"] = r.system.degree();
    return jr;
  };
  j["reduced"]["first"] = json_reduced(rep.first, "Xi", "Theta");
  j["reduced"]["second"] = json_reduced(rep.second, "H", "Z");

  j["degrees"]["predicted"] = {{"first", rep.degrees.deg_first},
                               {"second", rep.degrees.deg_second},
                               {"delta", rep.degrees.delta},
                               {"delta1", rep.degrees.delta1},
                               {"delta2", rep.degrees.delta2}};
  j["degrees"]["actual"] = {{"first", rep.first.system.degree()},
                            {"second", rep.second.system.degree()}};

  ojson eq = ojson::array();
  for (const auto& e : rep.equilibria) {
    ojson je;
    je["type"] = "finite";
    je["location"] = {e.location.first, e.location.second};
    if (e.exact)
      je["exact"] = {rat_str(e.exact->first), rat_str(e.exact->second)};
    je["trace"] = e.jacobian.trace();
    je["det"] = e.jacobian.det();
    if (e.exact_trace) je["exact_trace"] = rat_str(*e.exact_trace);
    if (e.exact_det) je["exact_det"] = rat_str(*e.exact_det);
    je["kind"] = equilibrium_kind_name(e.kind);
    je["multiplicity"] = e.multiplicity;
    eq.push_back(std::move(je));
  }
  for (const auto& ie : rep.infinite.points) {
    ojson je;
    je["type"] = "infinite";
    je["direction"] = json_direction(ie.direction, ie.exact_slope, vars);
    je["chart"] = chart_name(ie.chart);
    je["chart_point"] = {ie.chart_point.first, ie.chart_point.second};
    je["trace"] = ie.reduced_jacobian.trace();
    je["det"] = ie.reduced_jacobian.det();
    je["kind"] = equilibrium_kind_name(ie.kind);
    je["multiplicity"] = ie.multiplicity;
    je["modulo_time_direction"] = ie.modulo_direction;
    eq.push_back(std::move(je));
  }
  j["equilibria"] = std::move(eq);
  if (rep.infinite.equator_degenerate) {
    j["equator_degenerate"] = true;
    j["equator_note"] = rep.infinite.note;
  }

  j["contacts"]["first_axis"] = json_axis_contacts(rep.contacts_first_axis, vars);
  j["contacts"]["second_axis"] = json_axis_contacts(rep.contacts_second_axis, vars);
  {
    ojson jeq;
    jeq["possible"] = rep.equatorial.possible;
    if (!rep.equatorial.note.empty()) jeq["note"] = rep.equatorial.note;
    ojson pts = ojson::array();
    for (const auto& c : rep.equatorial.points) {
      ojson jc;
      jc["direction"] = json_direction(c.direction, c.exact_slope, vars);
      jc["order"] = c.tangency_order;
      jc["side"] = contact_side_name(
          c.side, c.side_variable == Var::First ? vars.first : vars.second);
      jc["certificate"] = c.certificate;
      pts.push_back(std::move(jc));
    }
    jeq["points"] = std::move(pts);
    j["contacts"]["equatorial"] = std::move(jeq);
  }

  j["symmetry"] = {{"origin", rep.symmetry.origin},
                   {"first_axis", rep.symmetry.axis_first},
                   {"second_axis", rep.symmetry.axis_second},
                   {"diagonal", rep.symmetry.diagonal},
                   {"antidiagonal", rep.symmetry.antidiagonal}};

  {
    ojson jl;
    ojson arr = ojson::array();
    for (const auto& ln : rep.lines.lines) {
      ojson je;
      je["coefficients"] = {ln.a, ln.b, ln.c};
      if (ln.line) je["line"] = print_in(*ln.line, rep.system.chart) + " = 0";
      if (!ln.cofactor.is_zero() || ln.exact)
        je["cofactor"] = print_in(ln.cofactor, rep.system.chart);
      je["exact"] = ln.exact;
      arr.push_back(std::move(je));
    }
    jl["lines"] = std::move(arr);
    jl["infinite_family"] = rep.lines.infinite_family;
    if (!rep.lines.note.empty()) jl["note"] = rep.lines.note;
    j["invariant_lines"] = std::move(jl);
  }

  ojson cyc = ojson::array();
  for (const auto& ce : rep.cycles) {
    ojson jc;
    jc["curve"] = ce.name;
    jc["class"] = cycle_class_name(ce.report.cls);
    if (!ce.report.cofactor.is_zero())
      jc["cofactor"] = print_in(ce.report.cofactor, rep.system.chart);
    jc["reason"] = ce.report.reason;
    cyc.push_back(std::move(jc));
  }
  j["cycles"] = std::move(cyc);

  return j.dump(2) + "\n";
}

}  // namespace projatlas

// Reduction to the chart images at infinity and projective-type classification.
#include "projatlas/projective.hpp"

#include <cassert>
#include <cmath>

namespace projatlas {

Poly2 w_full(const PlaneSystem& sys) {
  return Poly2::var_first() * sys.Y - Poly2::var_second() * sys.X;
}

Poly2 wn_polynomial(const PlaneSystem& sys) {
  const int n = sys.degree();
  const Poly2 xn = sys.X.homogeneous_component(n);
  const Poly2 yn = sys.Y.homogeneous_component(n);
  return Poly2::var_first() * yn - Poly2::var_second() * xn;
}

ProjectiveTypeReport classify_projective_type(const PlaneSystem& sys) {
  ProjectiveTypeReport report;
  report.w_n = wn_polynomial(sys);
  const bool nonsingular = !report.w_n.is_zero();
  report.kind = nonsingular ? ProjectiveKind::Nonsingular : ProjectiveKind::Singular;
  report.equator_consists_of_trajectories = nonsingular;
  return report;
}

namespace {

// θ^D·P(1/θ, ξ/θ): the term c·u^i·v^j becomes c·ξ^j·θ^(D−i−j).  Valid for
// any D ≥ deg P; the result is a polynomial in (ξ, θ).
Poly2 first_substitution(const Poly2& p, int D) {
  Poly2 out;
  for (const auto& [e, c] : p.terms()) {
    assert(D - e.a - e.b >= 0);
    out.set_coeff(e.b, D - e.a - e.b, out.coeff(e.b, D - e.a - e.b) + c);
  }
  return out;
}

// η^D·P(ζ/η, 1/η): the term c·u^i·v^j becomes c·ζ^i·η^(D−i−j), written with
// η as the first variable and ζ as the second.
Poly2 second_substitution(const Poly2& p, int D) {
  Poly2 out;
  for (const auto& [e, c] : p.terms()) {
    assert(D - e.a - e.b >= 0);
    out.set_coeff(D - e.a - e.b, e.a, out.coeff(D - e.a - e.b, e.a) + c);
  }
  return out;
}

int common_power(const Poly2& p, const Poly2& q, Var v) {
  auto min_exp = [&](const Poly2& f) {
    return v == Var::First ? f.min_exp_first() : f.min_exp_second();
  };
  if (p.is_zero()) return q.is_zero() ? 0 : min_exp(q);
  if (q.is_zero()) return min_exp(p);
  return std::min(min_exp(p), min_exp(q));
}

Poly2 shift_down(const Poly2& p, Var v, int k) {
  if (k == 0) return p;
  Poly2 out;
  for (const auto& [e, c] : p.terms()) {
    if (v == Var::First)
      out.set_coeff(e.a - k, e.b, c);
    else
      out.set_coeff(e.a, e.b - k, c);
  }
  return out;
}

}  // namespace

ReducedSystem reduce_system(const PlaneSystem& sys, WhichReduction which) {
  const int n = sys.degree();
  const Poly2 w = w_full(sys);

  Poly2 a, b;  // Right members in the target chart, before cancellation.
  Var transverse;
  if (which == WhichReduction::First) {
    // dξ/dt = θ^(1−n)·[θ^(n+1) W(1/θ, ξ/θ)], dθ/dt = θ^(1−n)·[−θ^(n+1) X(1/θ, ξ/θ)].
    a = first_substitution(w, n + 1);
    b = -first_substitution(sys.X, n + 1);
    transverse = Var::Second;  // θ
  } else {
    // dη/dt = η^(1−n)·[−η^(n+1) Y(ζ/η, 1/η)], dζ/dt = η^(1−n)·[−η^(n+1) W(ζ/η, 1/η)].
    a = -second_substitution(sys.Y, n + 1);
    b = -second_substitution(w, n + 1);
    transverse = Var::First;  // η
  }

  const int k = common_power(a, b, transverse);
  a = shift_down(a, transverse, k);
  b = shift_down(b, transverse, k);

  ReducedSystem out;
  out.system = PlaneSystem{std::move(a), std::move(b),
                           chart_advance(sys.chart, which == WhichReduction::First ? 1 : 2)};
  out.m = n - 1 - k;
  out.source_chart = sys.chart;
  out.which = which;
  return out;
}

DegreePrediction predicted_reduced_degree(const PlaneSystem& sys) {
  const int n = sys.degree();
  DegreePrediction p;
  p.delta = wn_polynomial(sys).is_zero() ? 0 : 1;
  p.delta1 = (sys.X.is_zero() || sys.X.min_exp_first() >= 1) ? 1 : 0;
  p.delta2 = (sys.Y.is_zero() || sys.Y.min_exp_second() >= 1) ? 1 : 0;
  p.deg_first = n + p.delta - p.delta1;
  p.deg_second = n + p.delta - p.delta2;
  return p;
}

std::pair<double, double> disc_embed(const std::pair<double, double>& p, ChartId) {
  const double r = std::sqrt(1.0 + p.first * p.first + p.second * p.second);
  return {p.first / r, p.second / r};
}

std::pair<ChartId, std::pair<double, double>> infinite_direction_chart(
    const DirectionAtInfinity& dir) {
  if (dir.form == DirectionAtInfinity::Form::YEqualsAX)
    return {ChartId::XiTheta, {dir.a, 0.0}};
  return {ChartId::EtaZeta, {0.0, dir.a}};
}

}  // namespace projatlas

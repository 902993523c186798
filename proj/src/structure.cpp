// Equilibria, contact points, symmetries, invariant lines and cycle taxonomy.
#include "projatlas/structure.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace projatlas {
namespace {

// Magnitude of a polynomial near a point, used to scale residual tests.
double scale_at(const Poly2& p, double u, double v) {
  double s = 1.0;
  double au = std::max(1.0, std::abs(u)), av = std::max(1.0, std::abs(v));
  for (const auto& [e, c] : p.terms())
    s += std::abs(to_double(c)) * std::pow(au, e.a) * std::pow(av, e.b);
  return s;
}

int sign_of_double(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

Rat binomial(int n, int k) {
  Int num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= n - i;
    den *= i + 1;
  }
  return Rat(num, den);
}

// Largest e with t^e dividing p (p nonzero).
int trailing_zero_exponent(const Poly1& p) {
  int e = 0;
  while (e <= p.degree() && p.coeff(e) == Rat(0)) ++e;
  return e;
}

}  // namespace

// --- linearization ---------------------------------------------------------

Jacobian2 jacobian_at(const PlaneSystem& sys, double u, double v) {
  Jacobian2 j;
  j.j11 = differentiate(sys.X, Var::First).eval(u, v);
  j.j12 = differentiate(sys.X, Var::Second).eval(u, v);
  j.j21 = differentiate(sys.Y, Var::First).eval(u, v);
  j.j22 = differentiate(sys.Y, Var::Second).eval(u, v);
  return j;
}

std::pair<Rat, Rat> trace_det_at(const PlaneSystem& sys, const Rat& u,
                                 const Rat& v) {
  Rat a = differentiate(sys.X, Var::First).eval(u, v);
  Rat b = differentiate(sys.X, Var::Second).eval(u, v);
  Rat c = differentiate(sys.Y, Var::First).eval(u, v);
  Rat d = differentiate(sys.Y, Var::Second).eval(u, v);
  return {a + d, a * d - b * c};
}

std::string equilibrium_kind_name(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::SaddlePoint: return "saddle point";
    case EquilibriumKind::NodeStable: return "stable node";
    case EquilibriumKind::NodeUnstable: return "unstable node";
    case EquilibriumKind::FocusStable: return "stable focus";
    case EquilibriumKind::FocusUnstable: return "unstable focus";
    case EquilibriumKind::CenterOrFocus: return "center or focus";
    case EquilibriumKind::DegenerateLinearPart: return "degenerate linear part";
  }
  return "?";
}

EquilibriumKind classify_equilibrium(double trace, double det,
                                     double zero_tol) {
  if (std::abs(det) <= zero_tol) return EquilibriumKind::DegenerateLinearPart;
  if (det < 0) return EquilibriumKind::SaddlePoint;
  double disc = trace * trace - 4 * det;
  if (std::abs(trace) <= zero_tol) return EquilibriumKind::CenterOrFocus;
  if (disc >= -zero_tol)
    return trace < 0 ? EquilibriumKind::NodeStable
                     : EquilibriumKind::NodeUnstable;
  return trace < 0 ? EquilibriumKind::FocusStable
                   : EquilibriumKind::FocusUnstable;
}

EquilibriumKind classify_equilibrium(const Rat& trace, const Rat& det) {
  Rat zero(0);
  if (det == zero) return EquilibriumKind::DegenerateLinearPart;
  if (det < zero) return EquilibriumKind::SaddlePoint;
  if (trace == zero) return EquilibriumKind::CenterOrFocus;
  Rat disc = trace * trace - Rat(4) * det;
  if (disc >= zero)
    return trace < zero ? EquilibriumKind::NodeStable
                        : EquilibriumKind::NodeUnstable;
  return trace < zero ? EquilibriumKind::FocusStable
                      : EquilibriumKind::FocusUnstable;
}

// --- finite equilibria -----------------------------------------------------

namespace {

// Newton iteration on (X, Y) from an initial guess; returns false when the
// iteration stalls or diverges.
bool newton_polish(const PlaneSystem& sys, double& u, double& v) {
  for (int it = 0; it < 60; ++it) {
    double fx = sys.X.eval(u, v), fy = sys.Y.eval(u, v);
    Jacobian2 j = jacobian_at(sys, u, v);
    double det = j.det();
    double big = std::max({std::abs(j.j11), std::abs(j.j12), std::abs(j.j21),
                           std::abs(j.j22), 1.0});
    if (std::abs(det) < 1e-14 * big * big) return false;
    double du = (fx * j.j22 - fy * j.j12) / det;
    double dv = (fy * j.j11 - fx * j.j21) / det;
    u -= du;
    v -= dv;
    if (!std::isfinite(u) || !std::isfinite(v)) return false;
    if (std::abs(du) + std::abs(dv) < 1e-14 * (1 + std::abs(u) + std::abs(v)))
      return true;
  }
  return true;  // slow but possibly converged; the residual test decides
}

bool near_existing(const std::vector<Equilibrium>& eqs, double u, double v) {
  for (const auto& e : eqs) {
    double s = 1 + std::abs(u) + std::abs(v);
    if (std::abs(e.location.first - u) + std::abs(e.location.second - v) <
        1e-7 * s)
      return true;
  }
  return false;
}

}  // namespace

std::vector<Equilibrium> finite_equilibria(const PlaneSystem& sys,
                                           double tol) {
  std::vector<Equilibrium> out;
  const Poly2 &X = sys.X, &Y = sys.Y;
  // A nonzero constant component never vanishes; a zero component forces the
  // other to be a nonzero constant (no common factor), so again no zeros.
  if (X.is_constant() || Y.is_constant()) return out;
  // Both polynomials depending on only one common variable would need a
  // common univariate root, impossible with a trivial gcd.
  if (X.degree_second() == 0 && Y.degree_second() == 0) return out;
  if (X.degree_first() == 0 && Y.degree_first() == 0) return out;

  Poly1 elim_second = resultant_eliminate(X, Y, Var::Second);  // in v1
  Poly1 elim_first = resultant_eliminate(X, Y, Var::First);    // in v2
  if (elim_second.is_zero() || elim_first.is_zero())
    throw std::runtime_error(
        "vanishing resultant: the right members share a factor");
  if (elim_second.degree() < 1 || elim_first.degree() < 1) return out;

  auto cand_u = real_roots_univariate(elim_second, 1e-13);
  auto cand_v = real_roots_univariate(elim_first, 1e-13);

  // A resultant root counts every equilibrium on the same coordinate line, so
  // two simple points sharing an abscissa would each look like a double root.
  // Project along a third direction (u = v1 + v2) and keep the minimum.
  std::vector<RealRoot> cand_s;
  {
    Poly2 sheared_first = Poly2::var_first() - Poly2::var_second();
    Poly2 xs = X.compose(sheared_first, Poly2::var_second());
    Poly2 ys = Y.compose(sheared_first, Poly2::var_second());
    try {
      Poly1 elim_shear = resultant_eliminate(xs, ys, Var::Second);
      if (!elim_shear.is_zero() && elim_shear.degree() >= 1)
        cand_s = real_roots_univariate(elim_shear, 1e-13);
    } catch (const std::exception&) {
      // Degenerate shear (for instance both members constant in the sheared
      // variable); the two axis projections still bound the multiplicity.
    }
  }
  auto point_multiplicity = [&](const RealRoot& ru, const RealRoot& rv,
                                double u, double v) {
    int m = std::min(ru.multiplicity, rv.multiplicity);
    double window = 1e-6 * (1 + std::abs(u) + std::abs(v));
    for (const auto& rs : cand_s) {
      double d = std::abs(rs.value - (u + v));
      if (d < window) {
        window = d;
        m = std::min(m, rs.multiplicity);
      }
    }
    return m;
  };

  // First pass: exact rational pairs verified by exact evaluation.
  for (const auto& ru : cand_u)
    for (const auto& rv : cand_v) {
      if (!ru.exact || !rv.exact) continue;
      if (X.eval(*ru.exact, *rv.exact) != Rat(0)) continue;
      if (Y.eval(*ru.exact, *rv.exact) != Rat(0)) continue;
      double u = to_double(*ru.exact), v = to_double(*rv.exact);
      if (near_existing(out, u, v)) continue;
      Equilibrium e;
      e.location = {u, v};
      e.exact = std::make_pair(*ru.exact, *rv.exact);
      e.jacobian = jacobian_at(sys, u, v);
      auto [tr, dt] = trace_det_at(sys, *ru.exact, *rv.exact);
      e.exact_trace = tr;
      e.exact_det = dt;
      e.kind = classify_equilibrium(tr, dt);
      e.multiplicity = point_multiplicity(ru, rv, u, v);
      out.push_back(e);
    }

  // Second pass: polish the remaining candidate pairs numerically.
  for (const auto& ru : cand_u)
    for (const auto& rv : cand_v) {
      double u = ru.value, v = rv.value;
      if (near_existing(out, u, v)) continue;
      if (!newton_polish(sys, u, v)) continue;
      double res = std::abs(X.eval(u, v)) / scale_at(X, u, v) +
                   std::abs(Y.eval(u, v)) / scale_at(Y, u, v);
      if (res > std::max(tol, 1e-9)) continue;
      // The polish must not wander away from the candidate grid row/column.
      if (std::abs(u - ru.value) > 1e-4 * (1 + std::abs(ru.value)) &&
          std::abs(v - rv.value) > 1e-4 * (1 + std::abs(rv.value)))
        continue;
      if (near_existing(out, u, v)) continue;
      Equilibrium e;
      e.location = {u, v};
      e.jacobian = jacobian_at(sys, u, v);
      e.kind = classify_equilibrium(e.jacobian.trace(), e.jacobian.det());
      e.multiplicity = point_multiplicity(ru, rv, u, v);
      out.push_back(e);
    }

  std::sort(out.begin(), out.end(), [](const Equilibrium& a, const Equilibrium& b) {
    if (a.location.first != b.location.first)
      return a.location.first < b.location.first;
    return a.location.second < b.location.second;
  });
  return out;
}

// --- infinite equilibria ---------------------------------------------------

InfiniteEquilibriaReport infinite_equilibria(const PlaneSystem& sys,
                                             double tol) {
  InfiniteEquilibriaReport rep;
  ReducedSystem r1 = reduce_system(sys, WhichReduction::First);
  ReducedSystem r2 = reduce_system(sys, WhichReduction::Second);

  // Directions y = a·x: zeros of the first reduced flow on its equator line.
  Poly1 p = r1.system.X.at_second(0);
  Poly1 q = r1.system.Y.at_second(0);
  if (p.is_zero() && q.is_zero()) {
    rep.equator_degenerate = true;
    rep.note =
        "every point of the line at infinity is an equilibrium of the "
        "reduced flow";
    return rep;
  }
  Poly1 g = p.is_zero() ? q : (q.is_zero() ? p : gcd_univariate(p, q));
  if (g.degree() >= 1) {
    for (const RealRoot& r : real_roots_univariate(g, tol)) {
      InfiniteEquilibrium e;
      e.direction = {DirectionAtInfinity::Form::YEqualsAX, r.value};
      e.chart = r1.system.chart;
      e.chart_point = {r.value, 0.0};
      e.exact_slope = r.exact;
      e.multiplicity = r.multiplicity;
      e.reduced_jacobian = jacobian_at(r1.system, r.value, 0.0);
      if (r.exact) {
        auto [tr, dt] = trace_det_at(r1.system, *r.exact, Rat(0));
        e.kind = classify_equilibrium(tr, dt);
      } else {
        e.kind = classify_equilibrium(e.reduced_jacobian.trace(),
                                      e.reduced_jacobian.det());
      }
      e.modulo_direction = (r1.m % 2 != 0);
      rep.points.push_back(e);
    }
  }

  // The x = 0 direction is visible only in the second chart, at its origin.
  if (r2.system.X.coeff(0, 0) == Rat(0) && r2.system.Y.coeff(0, 0) == Rat(0)) {
    InfiniteEquilibrium e;
    e.direction = {DirectionAtInfinity::Form::XEqualsAY, 0.0};
    e.chart = r2.system.chart;
    e.chart_point = {0.0, 0.0};
    e.exact_slope = Rat(0);
    Poly1 p2 = r2.system.X.at_first(0);
    Poly1 q2 = r2.system.Y.at_first(0);
    Poly1 g2 = p2.is_zero() ? q2 : (q2.is_zero() ? p2 : gcd_univariate(p2, q2));
    e.multiplicity = g2.is_zero() ? 1 : trailing_zero_exponent(g2);
    e.reduced_jacobian = jacobian_at(r2.system, 0.0, 0.0);
    auto [tr, dt] = trace_det_at(r2.system, Rat(0), Rat(0));
    e.kind = classify_equilibrium(tr, dt);
    e.modulo_direction = (r2.m % 2 != 0);
    rep.points.push_back(e);
  }
  return rep;
}

// --- contact points --------------------------------------------------------

std::string contact_side_name(ContactSide side, const std::string& var) {
  switch (side) {
    case ContactSide::NonNegativeHalf: return var + " >= 0";
    case ContactSide::NonPositiveHalf: return var + " <= 0";
    case ContactSide::BothSides: return "both sides";
  }
  return "?";
}

namespace {

// Contacts along one axis.  `tangency` is the field component normal to the
// axis restricted to it; `along` the component parallel to it.  A root a of
// the tangency polynomial of exact multiplicity k, with along(a) != 0, is a
// contact of order k; integrating v_normal ~ (D_k/k!)(along(a)·t)^k gives the
// occupied half-plane sign(D_k · along(a)^k) for odd k, both sides for even.
void contacts_on_axis(AxisName axis, const Poly1& tangency, const Poly1& along,
                      double tol, std::vector<AxisContact>& out) {
  // A zero tangency polynomial means the axis is invariant; a zero along
  // component makes every candidate an equilibrium.  No contacts either way.
  if (tangency.is_zero() || along.is_zero()) return;
  std::vector<Poly1> factors = squarefree_decomposition(tangency);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Poly1 f = factors[i];
    if (f.degree() < 1) continue;
    // Roots shared with the along component are equilibria; peel them off
    // exactly (f is squarefree, so the gcd divides it once).
    Poly1 shared = gcd_univariate(f, along);
    if (shared.degree() >= 1) f = *exact_divide(f, shared);
    if (f.degree() < 1) continue;
    int k = static_cast<int>(i) + 1;
    Poly1 dk = tangency;
    for (int d = 0; d < k; ++d) dk = dk.derivative();
    for (const RealRoot& r : real_roots_univariate(f, tol)) {
      AxisContact c;
      c.axis = axis;
      c.offset = r.value;
      c.exact = r.exact;
      c.tangency_order = k;
      int s_dk, s_along;
      if (r.exact) {
        s_dk = sign_of(dk.eval(*r.exact));
        s_along = sign_of(along.eval(*r.exact));
      } else {
        s_dk = sign_of_double(dk.eval(r.value));
        s_along = sign_of_double(along.eval(r.value));
      }
      assert(s_dk != 0 && s_along != 0);
      std::ostringstream cert;
      if (k % 2 == 0) {
        c.side = ContactSide::BothSides;
        cert << "k=" << k << " (even): the trajectory crosses";
      } else {
        int s = s_dk * s_along;  // sign(T^k) = sign(T) for odd k
        c.side = s > 0 ? ContactSide::NonNegativeHalf
                       : ContactSide::NonPositiveHalf;
        cert << "k=" << k << ", sign(D_k*T^k)=" << (s > 0 ? "+1" : "-1");
      }
      c.certificate = cert.str();
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), [](const AxisContact& a, const AxisContact& b) {
    if (a.axis != b.axis) return a.axis < b.axis;
    return a.offset < b.offset;
  });
}

}  // namespace

std::vector<AxisContact> axis_contact_points(const PlaneSystem& sys,
                                             double tol) {
  std::vector<AxisContact> out;
  // Horizontal axis {v2 = 0}: tangent when Y vanishes, moving when X does not.
  contacts_on_axis(AxisName::Horizontal, sys.Y.at_second(0), sys.X.at_second(0),
                   tol, out);
  // Vertical axis {v1 = 0}: tangent when X vanishes, moving when Y does not.
  contacts_on_axis(AxisName::Vertical, sys.X.at_first(0), sys.Y.at_first(0),
                   tol, out);
  return out;
}

EquatorialContactReport equatorial_contact_points(const PlaneSystem& sys,
                                                  double tol) {
  EquatorialContactReport rep;
  ProjectiveTypeReport type = classify_projective_type(sys);
  if (type.kind == ProjectiveKind::Nonsingular) {
    rep.possible = false;
    rep.note =
        "the line at infinity consists of trajectories, so no plane "
        "trajectory can touch it";
    return rep;
  }

  // Directions y = a·x: contacts of the first reduced system with its
  // equator line {transverse = 0}, a horizontal axis in that chart.  The
  // transverse coordinate is the reciprocal of the first base variable, so
  // sides transfer sign-for-sign.
  ReducedSystem r1 = reduce_system(sys, WhichReduction::First);
  std::vector<AxisContact> c1;
  contacts_on_axis(AxisName::Horizontal, r1.system.Y.at_second(0),
                   r1.system.X.at_second(0), tol, c1);
  for (const AxisContact& c : c1) {
    EquatorialContact e;
    e.direction = {DirectionAtInfinity::Form::YEqualsAX, c.offset};
    e.exact_slope = c.exact;
    e.tangency_order = c.tangency_order;
    e.side = c.side;
    e.side_variable = Var::First;
    e.certificate = c.certificate;
    rep.points.push_back(e);
  }

  // The x = 0 direction lives at the origin of the second chart, on the
  // vertical axis {transverse = 0} there; its transverse coordinate is the
  // reciprocal of the second base variable.
  ReducedSystem r2 = reduce_system(sys, WhichReduction::Second);
  std::vector<AxisContact> c2;
  contacts_on_axis(AxisName::Vertical, r2.system.X.at_first(0),
                   r2.system.Y.at_first(0), tol, c2);
  for (const AxisContact& c : c2) {
    bool at_zero = c.exact ? (*c.exact == Rat(0)) : std::abs(c.offset) < 1e-9;
    if (!at_zero) continue;  // other offsets repeat y = a·x directions
    EquatorialContact e;
    e.direction = {DirectionAtInfinity::Form::XEqualsAY, 0.0};
    e.exact_slope = Rat(0);
    e.tangency_order = c.tangency_order;
    e.side = c.side;
    e.side_variable = Var::Second;
    e.certificate = c.certificate;
    rep.points.push_back(e);
  }
  return rep;
}

// --- symmetry --------------------------------------------------------------

bool symmetric_about_line(const PlaneSystem& sys, const Rat& dir_first,
                          const Rat& dir_second) {
  if (dir_first == Rat(0) && dir_second == Rat(0))
    throw std::invalid_argument("the mirror line needs a nonzero direction");
  // Reflection about the line spanned by (p, q), scaled by p² + q² to stay
  // polynomial: R = [[p²−q², 2pq], [2pq, q²−p²]] / (p²+q²).
  const Rat &p = dir_first, &q = dir_second;
  Rat n = p * p + q * q;
  Rat r11 = (p * p - q * q) / n, r12 = (Rat(2) * p * q) / n;
  Rat r21 = r12, r22 = (q * q - p * p) / n;
  Poly2 u = Poly2::var_first(), v = Poly2::var_second();
  Poly2 su = r11 * u + r12 * v;  // σ(point), first coordinate
  Poly2 sv = r21 * u + r22 * v;
  Poly2 Xs = sys.X.compose(su, sv);
  Poly2 Ys = sys.Y.compose(su, sv);
  // Mirror image of the field: dσ applied to (X, Y) ∘ σ.
  Poly2 Gx = r11 * Xs + r12 * Ys;
  Poly2 Gy = r21 * Xs + r22 * Ys;
  // The portrait is symmetric iff the mirrored field is parallel to the
  // original: their cross product vanishes identically.
  return (sys.X * Gy - sys.Y * Gx).is_zero();
}

SymmetryReport symmetry_report(const PlaneSystem& sys) {
  SymmetryReport rep;
  Poly2 u = Poly2::var_first(), v = Poly2::var_second();
  Poly2 Xn = sys.X.compose(-u, -v);
  Poly2 Yn = sys.Y.compose(-u, -v);
  // Central symmetry: the field at the antipode must be anti-parallel.
  rep.origin = (sys.X * Yn - sys.Y * Xn).is_zero();
  rep.axis_first = symmetric_about_line(sys, 1, 0);
  rep.axis_second = symmetric_about_line(sys, 0, 1);
  rep.diagonal = symmetric_about_line(sys, 1, 1);
  rep.antidiagonal = symmetric_about_line(sys, 1, -1);
  return rep;
}

// --- divergence, invariant curves ------------------------------------------

Poly2 divergence_field(const PlaneSystem& sys) {
  return differentiate(sys.X, Var::First) + differentiate(sys.Y, Var::Second);
}

std::optional<Poly2> verify_invariant_curve(const PlaneSystem& sys,
                                            const Poly2& f) {
  if (f.degree() <= 0)
    throw std::invalid_argument("the candidate curve must be nonconstant");
  Poly2 lie = sys.X * differentiate(f, Var::First) +
              sys.Y * differentiate(f, Var::Second);
  if (lie.is_zero()) return Poly2();  // f is a polynomial first integral
  return exact_divide(lie, f);
}

// --- invariant lines -------------------------------------------------------

namespace {

// Scales an exact line polynomial to primitive integer coefficients with a
// positive leading coefficient.
Poly2 normalize_line(const Poly2& f) {
  Int lcm = 1;
  for (const auto& [e, c] : f.terms()) {
    (void)e;
    Int den = boost::multiprecision::denominator(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  Poly2 g = f.scaled(Rat(lcm));
  Int gcd_all = 0;
  for (const auto& [e, c] : g.terms()) {
    (void)e;
    gcd_all = boost::multiprecision::gcd(gcd_all,
                                         boost::multiprecision::numerator(c));
  }
  if (gcd_all != 0) g = g.scaled(Rat(Int(1), gcd_all));
  return g.sign_normalized();
}

// Restriction equations for lines v2 = s·v1 + c: the coefficients, in the
// running variable, of (Y − s·X)(u, s·u + c), as polynomials in (s, c).
std::vector<Poly2> slope_gauge_equations(const PlaneSystem& sys) {
  int top = sys.degree() + 1;
  std::vector<Poly2> eqs(static_cast<std::size_t>(2 * top + 1));
  auto accumulate = [&](const Poly2& P, bool times_s, int sgn) {
    for (const auto& [e, coef] : P.terms())
      for (int t = 0; t <= e.b; ++t) {
        Rat val = Rat(sgn) * coef * binomial(e.b, t);
        eqs[static_cast<std::size_t>(e.a + t)] +=
            Poly2::monomial(val, t + (times_s ? 1 : 0), e.b - t);
      }
  };
  accumulate(sys.Y, false, +1);
  accumulate(sys.X, true, -1);
  std::vector<Poly2> nonzero;
  for (auto& q : eqs)
    if (!q.is_zero()) nonzero.push_back(q);
  return nonzero;
}

void push_exact_line(const PlaneSystem& sys, const Rat& a, const Rat& b,
                     const Rat& c, InvariantLineReport& rep) {
  Poly2 f = a * Poly2::var_first() + b * Poly2::var_second() +
            Poly2::constant(c);
  auto cof = verify_invariant_curve(sys, f);
  if (!cof) return;  // candidate failed the exact certificate
  Poly2 norm = normalize_line(f);
  for (const auto& l : rep.lines)
    if (l.line && *l.line == norm) return;
  InvariantLine line;
  line.a = to_double(a);
  line.b = to_double(b);
  line.c = to_double(c);
  line.line = norm;
  line.cofactor = *cof;
  line.exact = true;
  rep.lines.push_back(line);
}

void push_numeric_line(const PlaneSystem& sys, double a, double b, double c,
                       InvariantLineReport& rep) {
  // Sample the normal component of the field along the line.
  double norm = std::hypot(a, b);
  if (norm == 0) return;
  a /= norm;
  b /= norm;
  c /= norm;
  double p0x = -a * c, p0y = -b * c;  // foot of the perpendicular
  double dx = -b, dy = a;
  double worst = 0;
  for (int i = -8; i <= 8; ++i) {
    double t = 0.7 * i;
    double x = p0x + t * dx, y = p0y + t * dy;
    double nx = sys.X.eval(x, y) * a + sys.Y.eval(x, y) * b;
    worst = std::max(worst, std::abs(nx) /
                                (scale_at(sys.X, x, y) + scale_at(sys.Y, x, y)));
  }
  if (worst > 1e-8) return;
  for (const auto& l : rep.lines)
    if (std::abs(l.a - a) + std::abs(l.b - b) + std::abs(l.c - c) < 1e-7)
      return;
  InvariantLine line;
  line.a = a;
  line.b = b;
  line.c = c;
  line.exact = false;
  rep.lines.push_back(line);
}

}  // namespace

InvariantLineReport find_invariant_lines(const PlaneSystem& sys, double tol) {
  InvariantLineReport rep;

  // Gauge v2 = s·v1 + c.
  std::vector<Poly2> eqs = slope_gauge_equations(sys);
  bool all_const = true;
  for (const auto& q : eqs)
    if (!q.is_constant()) all_const = false;

  if (eqs.empty()) {
    rep.infinite_family = true;
    rep.note = "every line of the plane is invariant";
  } else if (!all_const) {
    // Positive-dimensional solution sets show up as a nonconstant common
    // factor of the equations.
    Poly2 common = eqs[0];
    for (std::size_t i = 1; i < eqs.size() && !common.is_constant(); ++i)
      common = gcd_bivariate(common, eqs[i]);
    if (!common.is_constant()) {
      rep.infinite_family = true;
      rep.note =
          "the invariant lines form a family; representatives listed only";
      // Representatives on the slice c = 0.
      Poly1 slice = common.at_second(0);
      if (slice.is_zero()) {
        for (int s : {-1, 0, 1}) push_exact_line(sys, Rat(-s), Rat(1), Rat(0), rep);
      } else if (slice.degree() >= 1) {
        for (const RealRoot& r : real_roots_univariate(slice, tol))
          if (r.exact) push_exact_line(sys, -*r.exact, Rat(1), Rat(0), rep);
      }
      // Isolated lines outside the family still matter; divide the family
      // factor out and fall through with the quotients.
      std::vector<Poly2> rest;
      for (const auto& q : eqs) {
        Poly2 g = q;
        while (true) {
          auto quo = exact_divide(g, common);
          if (!quo) break;
          g = *quo;
        }
        if (!g.is_zero() && !g.is_constant()) rest.push_back(g);
        if (g.is_constant() && !g.is_zero()) {
          rest.clear();
          break;  // an unsatisfiable residual equation: no isolated solutions
        }
      }
      eqs = rest;
    }

    // Candidate slopes: eliminate c from every pair of equations.
    if (!eqs.empty()) {
      Poly1 s_poly;
      auto fold = [&](const Poly1& r) {
        if (r.is_zero()) return;
        s_poly = s_poly.is_zero() ? r : gcd_univariate(s_poly, r);
      };
      for (const auto& q : eqs)
        if (q.degree_second() == 0) {
          // Already univariate in s.
          std::vector<Poly1> cs = coefficients_in(q, Var::Second);
          if (!cs.empty()) fold(cs[0]);
        }
      for (std::size_t i = 0; i < eqs.size(); ++i)
        for (std::size_t j = i + 1; j < eqs.size(); ++j) {
          if (eqs[i].degree_second() == 0 && eqs[j].degree_second() == 0)
            continue;
          fold(resultant_eliminate(eqs[i], eqs[j], Var::Second));
        }
      if (eqs.size() == 1 && eqs[0].degree_second() == 0) {
        // One equation in s alone: every c works for each root — a family.
        rep.infinite_family = true;
        rep.note = "the invariant lines form a family; representatives listed only";
        std::vector<Poly1> cs = coefficients_in(eqs[0], Var::Second);
        if (!cs.empty() && cs[0].degree() >= 1)
          for (const RealRoot& r : real_roots_univariate(cs[0], tol))
            if (r.exact)
              for (int c0 : {-1, 0, 1})
                push_exact_line(sys, -*r.exact, Rat(1), Rat(c0), rep);
      } else if (!s_poly.is_zero() && s_poly.degree() >= 1) {
        for (const RealRoot& rs : real_roots_univariate(s_poly, tol)) {
          // Solve the c-equations at this slope.
          if (rs.exact) {
            Poly1 c_poly;
            bool contradiction = false;
            for (const auto& q : eqs) {
              std::vector<Poly1> cs = coefficients_in(q, Var::Second);
              std::vector<Rat> vals(cs.size());
              for (std::size_t d = 0; d < cs.size(); ++d)
                vals[d] = cs[d].eval(*rs.exact);
              Poly1 qc(vals);  // q(s*, c) as a polynomial in c
              if (qc.is_zero()) continue;
              if (qc.degree() == 0) {
                contradiction = true;
                break;
              }
              c_poly = c_poly.is_zero() ? qc : gcd_univariate(c_poly, qc);
            }
            if (contradiction || c_poly.is_zero()) continue;
            if (c_poly.degree() < 1) continue;
            for (const RealRoot& rc : real_roots_univariate(c_poly, tol)) {
              if (rc.exact)
                push_exact_line(sys, -*rs.exact, Rat(1), -*rc.exact, rep);
              else
                push_numeric_line(sys, -to_double(*rs.exact), 1.0, -rc.value,
                                  rep);
            }
          } else {
            // Irrational slope: substitute a close rational and isolate the
            // c-candidates from the first genuinely bivariate equation.
            if (std::abs(rs.value) > 1e6) continue;
            Rat s_approx(static_cast<long long>(rs.value * 1e12),
                         1000000000000LL);
            for (const auto& q : eqs) {
              if (q.degree_second() == 0) continue;
              std::vector<Poly1> cs = coefficients_in(q, Var::Second);
              std::vector<Rat> vals(cs.size());
              for (std::size_t d = 0; d < cs.size(); ++d)
                vals[d] = cs[d].eval(s_approx);
              Poly1 qc(vals);
              if (qc.is_zero() || qc.degree() < 1) continue;
              for (const RealRoot& rc : real_roots_univariate(qc, tol))
                push_numeric_line(sys, -rs.value, 1.0, -rc.value, rep);
              break;
            }
          }
        }
      }
    }
  }
  // (Equations that are all nonzero constants admit no solutions.)

  // Gauge v1 = c: X(c, ·) must vanish identically.
  std::vector<Poly1> cs = coefficients_in(sys.X, Var::Second);
  Poly1 vert;
  bool possible = true;
  bool all_zero = true;
  for (const auto& cp : cs) {
    if (cp.is_zero()) continue;
    all_zero = false;
    if (cp.degree() == 0) {
      possible = false;
      break;
    }
    vert = vert.is_zero() ? cp : gcd_univariate(vert, cp);
  }
  if (all_zero) {
    rep.infinite_family = true;
    rep.note = "every vertical line is invariant; representatives listed only";
    for (int c0 : {-1, 0, 1}) push_exact_line(sys, Rat(1), Rat(0), Rat(-c0), rep);
  } else if (possible && !vert.is_zero() && vert.degree() >= 1) {
    for (const RealRoot& r : real_roots_univariate(vert, tol)) {
      if (r.exact)
        push_exact_line(sys, Rat(1), Rat(0), -*r.exact, rep);
      else
        push_numeric_line(sys, 1.0, 0.0, -r.value, rep);
    }
  }

  return rep;
}

// --- cycles ----------------------------------------------------------------

std::string cycle_class_name(CycleClass c) {
  switch (c) {
    case CycleClass::LinearCycle: return "linear cycle";
    case CycleClass::EllInfinityCycle: return "l-infinity cycle";
    case CycleClass::PlaneCycle: return "plane cycle";
    case CycleClass::OpenCycle: return "open cycle";
    case CycleClass::NotACycle: return "not a cycle";
  }
  return "?";
}

namespace {

// True when the homogeneous form h (nonzero) has a real projective zero.
bool has_real_projective_zero(const Poly2& h) {
  if (h.is_zero()) return true;
  int d = h.degree();
  if (h.coeff(0, d) == Rat(0)) return true;  // the vertical direction
  Poly1 line = h.at_first(1);                // h(1, t)
  if (line.degree() < 1) return false;
  return !real_roots_univariate(line).empty();
}

// Crude nonemptiness scan for the real zero set of f on a grid.
bool real_points_found(const Poly2& f) {
  double best = std::numeric_limits<double>::infinity();
  int sign_seen = 0;
  for (int i = -60; i <= 60; ++i)
    for (int j = -60; j <= 60; ++j) {
      double x = 0.2 * i, y = 0.2 * j;
      double val = f.eval(x, y);
      if (val == 0) return true;
      int s = val > 0 ? 1 : -1;
      if (sign_seen == 0) sign_seen = s;
      else if (s != sign_seen) return true;
      best = std::min(best, std::abs(val) / scale_at(f, x, y));
    }
  return best < 1e-12;
}

}  // namespace

CycleReport classify_cycle_candidate(const PlaneSystem& sys, const Poly2& f) {
  CycleReport rep;
  if (f.is_zero()) {
    // The zero polynomial denotes the line at infinity.
    ProjectiveTypeReport type = classify_projective_type(sys);
    if (type.kind == ProjectiveKind::Singular) {
      rep.cls = CycleClass::NotACycle;
      rep.reason = "the line at infinity is not made of trajectories";
      return rep;
    }
    if (has_real_projective_zero(type.w_n)) {
      rep.cls = CycleClass::NotACycle;
      rep.reason = "equilibria at infinity interrupt the equator";
      return rep;
    }
    rep.cls = CycleClass::EllInfinityCycle;
    rep.reason = "the line at infinity is a single closed trajectory";
    return rep;
  }
  if (f.degree() < 1)
    throw std::invalid_argument("the candidate curve must be nonconstant");

  auto cof = verify_invariant_curve(sys, f);
  if (!cof) {
    rep.cls = CycleClass::NotACycle;
    rep.reason = "the curve is not invariant under the flow";
    return rep;
  }
  rep.cofactor = *cof;

  if (f.degree() == 1) {
    // A line-trajectory closes through its point at infinity; it is a cycle
    // exactly when no equilibrium, finite or infinite, lies on it.
    Rat a = f.coeff(1, 0), b = f.coeff(0, 1), c = f.coeff(0, 0);
    Rat dx = -b, dy = a;  // direction of the line
    std::pair<Rat, Rat> p0 = (b != Rat(0))
                                 ? std::make_pair(Rat(0), Rat(-c / b))
                                 : std::make_pair(Rat(-c / a), Rat(0));
    Poly2 t = Poly2::var_first();
    Poly2 px = Poly2::constant(p0.first) + dx * t;
    Poly2 py = Poly2::constant(p0.second) + dy * t;
    Poly2 tangential =
        dx * sys.X.compose(px, py) + dy * sys.Y.compose(px, py);
    Poly1 lam = tangential.at_second(0);
    if (lam.is_zero()) {
      rep.cls = CycleClass::NotACycle;
      rep.reason = "the line consists of equilibria";
      return rep;
    }
    if (!real_roots_univariate(lam).empty()) {
      rep.cls = CycleClass::NotACycle;
      rep.reason = "equilibria of the system lie on the line";
      return rep;
    }
    // The endpoint at infinity must be a regular point of the reduced flow.
    bool endpoint_equilibrium = false;
    if (dx != Rat(0)) {
      Rat slope = dy / dx;
      ReducedSystem r1 = reduce_system(sys, WhichReduction::First);
      endpoint_equilibrium = r1.system.X.eval(slope, Rat(0)) == Rat(0) &&
                             r1.system.Y.eval(slope, Rat(0)) == Rat(0);
    } else {
      ReducedSystem r2 = reduce_system(sys, WhichReduction::Second);
      endpoint_equilibrium = r2.system.X.coeff(0, 0) == Rat(0) &&
                             r2.system.Y.coeff(0, 0) == Rat(0);
    }
    if (endpoint_equilibrium) {
      rep.cls = CycleClass::NotACycle;
      rep.reason = "an infinite equilibrium sits at the line's end";
      return rep;
    }
    rep.cls = CycleClass::LinearCycle;
    rep.reason = "invariant line free of equilibria, closed through infinity";
    return rep;
  }

  // Higher degree: boundedness decides between plane and open cycles.
  Poly2 top = f.homogeneous_component(f.degree());
  if (!has_real_projective_zero(top)) {
    if (!real_points_found(f)) {
      rep.cls = CycleClass::NotACycle;
      rep.reason = "no real points found on the curve";
      return rep;
    }
    rep.cls = CycleClass::PlaneCycle;
    rep.reason = "bounded invariant curve in the finite plane";
    return rep;
  }
  rep.cls = CycleClass::OpenCycle;
  rep.reason = "unbounded invariant curve closing through the equator";
  return rep;
}

}  // namespace projatlas

// Qualitative structure of a planar system: equilibria (finite and at
// infinity), contact points with the axes and the equator, symmetries,
// invariant lines and curves, and the cycle taxonomy.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projatlas/projective.hpp"
#include "projatlas/roots.hpp"
#include "projatlas/system.hpp"

namespace projatlas {

// --- linearization ---------------------------------------------------------

/// First-order part of the field at a point.
struct Jacobian2 {
  double j11 = 0, j12 = 0, j21 = 0, j22 = 0;
  double trace() const { return j11 + j22; }
  double det() const { return j11 * j22 - j12 * j21; }
};

Jacobian2 jacobian_at(const PlaneSystem& sys, double u, double v);

/// Exact trace and determinant of the linearization at a rational point.
std::pair<Rat, Rat> trace_det_at(const PlaneSystem& sys, const Rat& u,
                                 const Rat& v);

enum class EquilibriumKind {
  SaddlePoint,
  NodeStable,
  NodeUnstable,
  FocusStable,
  FocusUnstable,
  CenterOrFocus,         ///< zero trace, positive determinant: linearly a center
  DegenerateLinearPart,  ///< zero determinant: linear terms do not decide
};

std::string equilibrium_kind_name(EquilibriumKind k);

/// Classification from trace T and determinant D of the linear part:
/// D < 0 saddle; D > 0 with T² ≥ 4D a node, with 0 < T² < 4D a focus
/// (stable iff T < 0), with T = 0 a center-or-focus; D = 0 degenerate.
/// `zero_tol` guards the sign decisions when T, D carry roundoff.
EquilibriumKind classify_equilibrium(double trace, double det,
                                     double zero_tol = 1e-9);
EquilibriumKind classify_equilibrium(const Rat& trace, const Rat& det);

// --- equilibria ------------------------------------------------------------

struct Equilibrium {
  std::pair<double, double> location{0.0, 0.0};
  /// Exact coordinates when both are rational.
  std::optional<std::pair<Rat, Rat>> exact;
  Jacobian2 jacobian;
  /// Exact trace/determinant when the point is exact.
  std::optional<Rat> exact_trace, exact_det;
  EquilibriumKind kind = EquilibriumKind::DegenerateLinearPart;
  /// Multiplicity of the coordinate in the eliminant it was isolated from.
  int multiplicity = 1;
};

/// All equilibria in the finite part of the system's own chart, sorted by
/// coordinates.  Located by eliminating each variable with resultants, then
/// cross-checking and Newton-polishing the candidate pairs.
std::vector<Equilibrium> finite_equilibria(const PlaneSystem& sys,
                                           double tol = 1e-10);

struct InfiniteEquilibrium {
  DirectionAtInfinity direction;
  /// Chart in which the point is finite, and its coordinates there:
  /// (a, 0) for y = ax, (0, a) for x = ay.
  ChartId chart = ChartId::XiTheta;
  std::pair<double, double> chart_point{0.0, 0.0};
  std::optional<Rat> exact_slope;
  int multiplicity = 1;
  /// Linearization of the projectively reduced flow at the point.
  Jacobian2 reduced_jacobian;
  EquilibriumKind kind = EquilibriumKind::DegenerateLinearPart;
  /// True when the reduction's time-change exponent is odd: the sense of
  /// motion then reverses across the equator, so stability statements hold
  /// modulo the direction of motion.
  bool modulo_direction = false;
};

struct InfiniteEquilibriaReport {
  std::vector<InfiniteEquilibrium> points;
  /// Set when every point of the equator is an equilibrium of the reduced
  /// flow; `points` is then empty and `note` explains.
  bool equator_degenerate = false;
  std::string note;
};

/// Equilibria on the line at infinity, located as zeros of the reduced
/// systems on the equator and classified by the reduced linearization.
InfiniteEquilibriaReport infinite_equilibria(const PlaneSystem& sys,
                                             double tol = 1e-10);

// --- contact points --------------------------------------------------------

/// Half-plane occupied by the trajectory through a contact point, measured in
/// the variable transverse to the touched line.
enum class ContactSide { NonNegativeHalf, NonPositiveHalf, BothSides };

std::string contact_side_name(ContactSide side, const std::string& var);

enum class AxisName { Horizontal, Vertical };  ///< {v2 = 0} and {v1 = 0}

struct AxisContact {
  AxisName axis = AxisName::Horizontal;
  /// The free coordinate: the point is (offset, 0) or (0, offset).
  double offset = 0.0;
  std::optional<Rat> exact;
  /// Multiplicity of the root of the tangency polynomial.  Odd orders keep
  /// the trajectory on one side; even orders let it cross.
  int tangency_order = 1;
  ContactSide side = ContactSide::BothSides;
  /// Sign computation behind `side`, for reports.
  std::string certificate;
};

/// Contact points of trajectories with the two coordinate axes.  A point
/// (a, 0) qualifies when the second field component vanishes there but the
/// first does not (and symmetrically for (0, a)); the side follows the sign
/// of d_k · t^k where d_k is the k-th derivative of the tangency polynomial
/// and t the nonzero transverse component.  Points where both components
/// vanish are equilibria, excluded exactly via univariate gcds.
std::vector<AxisContact> axis_contact_points(const PlaneSystem& sys,
                                             double tol = 1e-10);

struct EquatorialContact {
  DirectionAtInfinity direction;
  std::optional<Rat> exact_slope;
  int tangency_order = 1;
  /// Side of the base plane the touching trajectory occupies, measured in
  /// `side_variable` (first variable for y = ax directions, second for x = 0).
  ContactSide side = ContactSide::BothSides;
  Var side_variable = Var::First;
  std::string certificate;
};

struct EquatorialContactReport {
  std::vector<EquatorialContact> points;
  /// False when the line at infinity consists of trajectories, which rules
  /// contacts out; `note` explains.
  bool possible = true;
  std::string note;
};

/// Contact points of plane trajectories with the line at infinity: the
/// equator contacts of the first reduced system (directions y = ax), plus
/// the x = 0 direction checked on the second reduced system.
EquatorialContactReport equatorial_contact_points(const PlaneSystem& sys,
                                                  double tol = 1e-10);

// --- symmetry --------------------------------------------------------------

/// Mirror and central symmetries of the trajectory family (time direction
/// ignored), each certified by an exact polynomial identity.
struct SymmetryReport {
  bool origin = false;        ///< central symmetry (u,v) → (−u,−v)
  bool axis_first = false;    ///< mirror about {v2 = 0}
  bool axis_second = false;   ///< mirror about {v1 = 0}
  bool diagonal = false;      ///< mirror about v2 = v1
  bool antidiagonal = false;  ///< mirror about v2 = −v1
};

SymmetryReport symmetry_report(const PlaneSystem& sys);

/// Mirror symmetry about the line through the origin with direction
/// (dir_first, dir_second); exact test.  Throws when both are zero.
bool symmetric_about_line(const PlaneSystem& sys, const Rat& dir_first,
                          const Rat& dir_second);

// --- divergence, invariant curves, cycles ----------------------------------

/// ∂X/∂v1 + ∂Y/∂v2, used for ruling out closed orbits on half-planes.
Poly2 divergence_field(const PlaneSystem& sys);

/// If the derivative of f along the field equals K·f for a polynomial K,
/// returns the cofactor K; the zero set of f is then invariant.  Throws on
/// constant f.
std::optional<Poly2> verify_invariant_curve(const PlaneSystem& sys,
                                            const Poly2& f);

struct InvariantLine {
  /// Coefficients of a·v1 + b·v2 + c = 0 with (a, b) normalized.
  double a = 0, b = 0, c = 0;
  /// Exact defining polynomial when the coefficients are rational.
  std::optional<Poly2> line;
  Poly2 cofactor;  ///< zero polynomial when the line was found numerically
  bool exact = true;
};

struct InvariantLineReport {
  std::vector<InvariantLine> lines;
  /// Set when the invariant lines form a positive-dimensional family
  /// (for instance every line through a dicritical point); `lines` then
  /// holds representatives only.
  bool infinite_family = false;
  std::string note;
};

/// All invariant straight lines, found by solving the coefficient equations
/// of the restricted field in the two gauges v2 = s·v1 + c and v1 = c.
/// Rational lines are certified exactly; irrational ones are reported with
/// `exact = false`.
InvariantLineReport find_invariant_lines(const PlaneSystem& sys,
                                         double tol = 1e-10);

enum class CycleClass {
  LinearCycle,       ///< invariant line, regular throughout, closed via infinity
  EllInfinityCycle,  ///< the line at infinity as a single closed trajectory
  PlaneCycle,        ///< bounded invariant oval in the finite plane
  OpenCycle,         ///< unbounded invariant curve closing through the equator
  NotACycle,
};

std::string cycle_class_name(CycleClass c);

struct CycleReport {
  CycleClass cls = CycleClass::NotACycle;
  Poly2 cofactor;  ///< cofactor of the invariant curve when applicable
  std::string reason;
};

/// Classifies a candidate curve.  The zero polynomial stands for the line at
/// infinity; degree-one candidates are tested as linear cycles; higher-degree
/// candidates must be invariant and are split by boundedness of the real
/// curve (top form without real projective zeros ⟹ bounded).
CycleReport classify_cycle_candidate(const PlaneSystem& sys, const Poly2& f);

}  // namespace projatlas

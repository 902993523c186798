// Chart transition maps, projective type, reduced systems, and the disc embedding.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "projatlas/poly.hpp"
#include "projatlas/system.hpp"

namespace projatlas {

/// Thrown by poincare_map_point when the input lies on the coordinate line
/// that the requested chart change sends to infinity.
class MapsToInfinityError : public std::domain_error {
 public:
  explicit MapsToInfinityError(const std::string& msg) : std::domain_error(msg) {}
};

/// xY_n − yX_n, where X_n, Y_n are the degree-n homogeneous components and
/// n = sys.degree().  Identically zero exactly for the P-singular systems.
Poly2 wn_polynomial(const PlaneSystem& sys);

/// uY − vX in the system's own variables (u, v); its degree-(k+1) homogeneous
/// component is W_k = uY_k − vX_k.
Poly2 w_full(const PlaneSystem& sys);

enum class ProjectiveKind { Nonsingular, Singular };

struct ProjectiveTypeReport {
  Poly2 w_n;
  ProjectiveKind kind = ProjectiveKind::Nonsingular;
  /// True iff the line at infinity consists of whole trajectories, which
  /// happens exactly in the nonsingular case.
  bool equator_consists_of_trajectories = true;
};

ProjectiveTypeReport classify_projective_type(const PlaneSystem& sys);

enum class WhichReduction { First, Second };

/// A projectively reduced system: the chart image of a system under one of
/// the two Poincaré transformations, with the common power of the transverse
/// variable cancelled from both right members.
struct ReducedSystem {
  PlaneSystem system;  ///< Lives in chart_advance(source_chart, 1 or 2).
  /// Time-change exponent: (transverse variable)^m dτ = dt.  Negative values
  /// occur for degrees n ≤ 1 when no cancellation is available.
  int m = 0;
  ChartId source_chart = ChartId::XY;
  WhichReduction which = WhichReduction::First;

  /// The variable whose power was cancelled (second variable for the first
  /// reduction, first variable for the second).
  Var transverse() const {
    return which == WhichReduction::First ? Var::Second : Var::First;
  }
};

/// Builds the first (ξ = v/u, θ = 1/u) or second (η = 1/v, ζ = u/v)
/// projectively reduced system of `sys`, working in the system's own chart.
ReducedSystem reduce_system(const PlaneSystem& sys, WhichReduction which);

struct DegreePrediction {
  int delta = 0;   ///< 1 iff the system is P-nonsingular.
  int delta1 = 0;  ///< 1 iff the first variable divides X.
  int delta2 = 0;  ///< 1 iff the second variable divides Y.
  int deg_first = 0;   ///< n + delta − delta1.
  int deg_second = 0;  ///< n + delta − delta2.
};

/// Predicts the degrees of both reduced systems without constructing them.
DegreePrediction predicted_reduced_degree(const PlaneSystem& sys);

/// Maps a point between charts.  The chart cycle is generated by
/// P(a,b) = (b/a, 1/a); going two steps forward equals the inverse map
/// (a,b) → (1/b, a/b).  Exact on rational inputs.
template <class Num>
std::pair<Num, Num> poincare_map_point(const std::pair<Num, Num>& p, ChartId from,
                                       ChartId to) {
  int t = (static_cast<int>(to) - static_cast<int>(from)) % 3;
  if (t < 0) t += 3;
  if (t == 0) return p;
  const auto& vars = chart_vars(from);
  if (t == 1) {
    if (p.first == Num(0))
      throw MapsToInfinityError("point lies on the line " + vars.first +
                                " = 0, which the map " + chart_name(from) + " -> " +
                                chart_name(chart_advance(from, 1)) +
                                " sends to infinity");
    return {p.second / p.first, Num(1) / p.first};
  }
  if (p.second == Num(0))
    throw MapsToInfinityError("point lies on the line " + vars.second +
                              " = 0, which the map " + chart_name(from) + " -> " +
                              chart_name(chart_advance(from, 2)) +
                              " sends to infinity");
  return {Num(1) / p.second, p.first / p.second};
}

/// Central projection of a chart point onto the unit disc of that chart's
/// projective circle: (u,v) → (u,v)/√(1+u²+v²).
std::pair<double, double> disc_embed(const std::pair<double, double>& p, ChartId chart);

/// A direction at infinity of the base plane, written either as the pencil
/// y = a·x or as x = a·y (the latter is needed for the vertical direction).
struct DirectionAtInfinity {
  enum class Form { YEqualsAX, XEqualsAY } form = Form::YEqualsAX;
  double a = 0.0;
};

/// The chart in which a direction at infinity appears as a finite boundary
/// point of the base disc's equator: y = ax lives at (a, 0) in the ξθ chart,
/// x = ay at (0, a) in the ηζ chart.
std::pair<ChartId, std::pair<double, double>> infinite_direction_chart(
    const DirectionAtInfinity& dir);

}  // namespace projatlas

// Planar polynomial differential systems and the three coordinate charts.
#pragma once

#include <string>
#include <utility>

#include "projatlas/poly.hpp"

namespace projatlas {

/// The three coordinate charts used throughout: the base plane and the two
/// charts covering the line at infinity.
enum class ChartId { XY = 0, XiTheta = 1, EtaZeta = 2 };

/// Variable names conventionally attached to each chart.
const std::pair<std::string, std::string>& chart_vars(ChartId chart);

/// Short display name ("xy", "xi-theta", "eta-zeta").
std::string chart_name(ChartId chart);

/// The chart reached from `chart` after `steps` applications of the cyclic
/// chart-to-chart coordinate change.
ChartId chart_advance(ChartId chart, int steps);

/// A planar autonomous polynomial system u' = X(u,v), v' = Y(u,v) written in
/// the variables of a particular chart.
struct PlaneSystem {
  Poly2 X;
  Poly2 Y;
  ChartId chart = ChartId::XY;

  /// max(deg X, deg Y); at least 0 (validated at construction).
  int degree() const { return std::max(X.degree(), Y.degree()); }

  /// Renders as "u' = ...; v' = ..." using the chart's variable names.
  std::string to_string() const;
};

/// Validates and wraps a right-hand side.  Throws std::invalid_argument when
/// both polynomials are zero, when the top-degree components are both zero
/// (the system would really have lower degree), or when X and Y share a
/// nonconstant common factor.
PlaneSystem make_system(Poly2 X, Poly2 Y, ChartId chart = ChartId::XY);

}  // namespace projatlas

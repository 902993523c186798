// Chart bookkeeping and validation of planar polynomial systems.
#include "projatlas/system.hpp"

#include <array>
#include <stdexcept>

namespace projatlas {

const std::pair<std::string, std::string>& chart_vars(ChartId chart) {
  static const std::array<std::pair<std::string, std::string>, 3> kVars = {
      {{"x", "y"}, {"xi", "theta"}, {"eta", "zeta"}}};
  return kVars[static_cast<int>(chart)];
}

std::string chart_name(ChartId chart) {
  switch (chart) {
    case ChartId::XY: return "xy";
    case ChartId::XiTheta: return "xi-theta";
    case ChartId::EtaZeta: return "eta-zeta";
  }
  return "?";
}

ChartId chart_advance(ChartId chart, int steps) {
  int k = (static_cast<int>(chart) + steps) % 3;
  if (k < 0) k += 3;
  return static_cast<ChartId>(k);
}

std::string PlaneSystem::to_string() const {
  const auto& [u, v] = chart_vars(chart);
  return u + "' = " + poly_to_string(X, u, v) + "; " + v + "' = " + poly_to_string(Y, u, v);
}

PlaneSystem make_system(Poly2 X, Poly2 Y, ChartId chart) {
  if (X.is_zero() && Y.is_zero())
    throw std::invalid_argument(
        "invalid system: right members are identically zero, so the top-degree "
        "components X_n and Y_n are both zero (|X_n| + |Y_n| must not vanish "
        "identically)");
  // With n = max(deg X, deg Y), at least one top component is automatically
  // nonzero, so the remaining hypothesis to check is coprimality.
  const Poly2 g = gcd_bivariate(X, Y);
  if (g.degree() > 0)
    throw std::invalid_argument(
        "invalid system: X and Y must be relatively prime, but they share the "
        "factor " +
        poly_to_string(g, chart_vars(chart).first, chart_vars(chart).second));
  return PlaneSystem{std::move(X), std::move(Y), chart};
}

}  // namespace projatlas

// Real-root isolation for exact univariate polynomials: Sturm sequences for
// counting, bisection for refinement, square-free decomposition for
// multiplicities.
#pragma once

#include "projatlas/poly.hpp"

#include <optional>
#include <vector>

namespace projatlas {

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
  // Exact value when the root is rational (detected en route).
  std::optional<Rat> exact;
};

// All real roots of p, sorted ascending, refined to interval width <= tol.
// Throws on the zero polynomial.
std::vector<RealRoot> real_roots_univariate(const Poly1& p, double tol = 1e-12);

// Number of distinct real roots of p in the half-open interval (a, b].
int sturm_count(const Poly1& p, const Rat& a, const Rat& b);

// Square-free factors by multiplicity: result[i] collects the roots of p of
// multiplicity exactly i+1 (Yun's algorithm). Factors may be constant 1.
std::vector<Poly1> squarefree_decomposition(const Poly1& p);

// If p has a rational root within |x - near| <= window, return it exactly
// (search over continued-fraction convergents of `near`).
std::optional<Rat> rational_root_near(const Poly1& p, double near,
                                      double window = 1e-6);

}  // namespace projatlas

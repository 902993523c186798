// Exact bivariate/univariate polynomial arithmetic over the rationals:
// the algebra substrate for chart reductions, equilibrium and contact
// analysis, and invariant-curve certification.
#pragma once

#include "projatlas/rational.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace projatlas {

// Exponent pair of a monomial first^a * second^b.
struct Exp2 {
  int a = 0;
  int b = 0;
  int degree() const { return a + b; }
  friend bool operator==(const Exp2& l, const Exp2& r) {
    return l.a == r.a && l.b == r.b;
  }
};

// Graded order with the first variable major. "Less" means printed earlier:
// lower total degree first; within a degree, higher first-variable exponent
// first. The greatest element under this order is the graded-lex leading term.
struct TermOrder {
  bool operator()(const Exp2& l, const Exp2& r) const {
    if (l.degree() != r.degree()) return l.degree() < r.degree();
    return l.a > r.a;
  }
};

class Poly1;

// Bivariate polynomial with exact rational coefficients. Zero coefficients are
// never stored; the zero polynomial has an empty term map and degree -1.
class Poly2 {
 public:
  using Terms = std::map<Exp2, Rat, TermOrder>;

  Poly2() = default;
  static Poly2 constant(const Rat& c);
  static Poly2 monomial(const Rat& c, int a, int b);
  static Poly2 var_first() { return monomial(1, 1, 0); }
  static Poly2 var_second() { return monomial(1, 0, 1); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return degree() <= 0; }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_first() const;   // degree in the first variable
  int degree_second() const;  // degree in the second variable
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Rat coeff(int a, int b) const;
  void set_coeff(int a, int b, const Rat& c);

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& o);
  Poly2& operator-=(const Poly2& o);
  friend Poly2 operator+(Poly2 l, const Poly2& r) { return l += r; }
  friend Poly2 operator-(Poly2 l, const Poly2& r) { return l -= r; }
  friend Poly2 operator*(const Poly2& l, const Poly2& r);
  friend Poly2 operator*(const Rat& c, Poly2 p) { return p.scaled(c); }
  friend bool operator==(const Poly2& l, const Poly2& r) {
    return l.terms_ == r.terms_;
  }

  Poly2 scaled(const Rat& c) const;
  Poly2 pow(unsigned e) const;

  Poly2 derivative_first() const;
  Poly2 derivative_second() const;

  Rat eval(const Rat& x, const Rat& y) const;
  double eval(double x, double y) const;

  // Substitute polynomials for both variables and expand.
  Poly2 compose(const Poly2& u, const Poly2& v) const;

  // Fix one variable to a rational value; the result is univariate in the
  // other variable.
  Poly1 at_first(const Rat& x) const;
  Poly1 at_second(const Rat& y) const;

  // Terms of total degree exactly d (zero polynomial if none).
  Poly2 homogeneous_component(int d) const;

  // Leading term under graded lex, first variable major. Poly must be nonzero.
  std::pair<Exp2, Rat> leading_term() const;

  // Scaled so the graded-lex leading coefficient is positive.
  Poly2 sign_normalized() const;

  // Largest k such that first^k (resp. second^k) divides the polynomial;
  // defined as 0 for the zero polynomial.
  int min_exp_first() const;
  int min_exp_second() const;

 private:
  Terms terms_;
};

// Univariate polynomial, coefficients indexed by exponent; the leading
// coefficient is nonzero unless the polynomial is zero (empty vector).
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<Rat> coeffs);
  static Poly1 constant(const Rat& c);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int k) const;
  Rat leading() const;

  Poly1 operator-() const;
  Poly1& operator+=(const Poly1& o);
  Poly1& operator-=(const Poly1& o);
  friend Poly1 operator+(Poly1 l, const Poly1& r) { return l += r; }
  friend Poly1 operator-(Poly1 l, const Poly1& r) { return l -= r; }
  friend Poly1 operator*(const Poly1& l, const Poly1& r);
  friend Poly1 operator*(const Rat& c, const Poly1& p) { return p.scaled(c); }
  friend bool operator==(const Poly1& l, const Poly1& r) {
    return l.c_ == r.c_;
  }

  Poly1 scaled(const Rat& c) const;
  Poly1 derivative() const;
  Rat eval(const Rat& x) const;
  double eval(double x) const;

  // Quotient and remainder of exact rational division.
  static std::pair<Poly1, Poly1> div_rem(const Poly1& f, const Poly1& g);

 private:
  void trim();
  std::vector<Rat> c_;
};

// --- free operations ------------------------------------------------------

enum class Var { First, Second };

Poly2 differentiate(const Poly2& p, Var v);

// Components indexed by degree 0..deg(p); their sum reproduces p exactly.
std::vector<Poly2> homogeneous_components(const Poly2& p);

// Exact multivariate division: returns q with f = q*g when g divides f over
// the rationals, std::nullopt otherwise. Division is performed with respect to
// the graded-lex order. Throws if g is zero.
std::optional<Poly2> exact_divide(const Poly2& f, const Poly2& g);
std::optional<Poly1> exact_divide(const Poly1& f, const Poly1& g);

// Primitive gcd with positive graded-lex leading coefficient. gcd(0,0) is an
// error; gcd with a single zero argument returns the other, normalized.
Poly2 gcd_bivariate(const Poly2& f, const Poly2& g);
Poly1 gcd_univariate(const Poly1& f, const Poly1& g);

// Sylvester resultant with respect to the eliminated variable; the result is
// univariate in the kept variable. Vanishes at projections of common roots.
// Throws if both inputs are constant in the eliminated variable.
Poly1 resultant_eliminate(const Poly2& f, const Poly2& g, Var eliminate);

// View a bivariate polynomial as univariate in `in` with Poly1 coefficients
// in the other variable, index = exponent of `in`.
std::vector<Poly1> coefficients_in(const Poly2& p, Var in);
Poly2 from_coefficients_in(const std::vector<Poly1>& cs, Var in);

// Deterministic rendering in the input grammar (ascending total degree, first
// variable major within a degree, explicit '*' and '^').
std::string poly_to_string(const Poly2& p, const std::string& v1,
                           const std::string& v2);
std::string poly_to_string(const Poly1& p, const std::string& v);

}  // namespace projatlas

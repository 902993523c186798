// Implementation of exact polynomial arithmetic, division, gcd, and
// resultants used throughout the analysis pipeline.
#include "projatlas/poly.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace projatlas {

// --- Poly2 ----------------------------------------------------------------

Poly2 Poly2::constant(const Rat& c) { return monomial(c, 0, 0); }

Poly2 Poly2::monomial(const Rat& c, int a, int b) {
  assert(a >= 0 && b >= 0);
  Poly2 p;
  if (c != 0) p.terms_[Exp2{a, b}] = c;
  return p;
}

int Poly2::degree() const {
  if (terms_.empty()) return -1;
  // Under the graded order the last term has maximal total degree.
  return terms_.rbegin()->first.degree();
}

int Poly2::degree_first() const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.a);
  return d;
}

int Poly2::degree_second() const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.b);
  return d;
}

Rat Poly2::coeff(int a, int b) const {
  auto it = terms_.find(Exp2{a, b});
  return it == terms_.end() ? Rat(0) : it->second;
}

void Poly2::set_coeff(int a, int b, const Rat& c) {
  if (c == 0)
    terms_.erase(Exp2{a, b});
  else
    terms_[Exp2{a, b}] = c;
}

Poly2 Poly2::operator-() const { return scaled(Rat(-1)); }

Poly2& Poly2::operator+=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, -c);
    } else {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly2 operator*(const Poly2& l, const Poly2& r) {
  Poly2 out;
  for (const auto& [el, cl] : l.terms_)
    for (const auto& [er, cr] : r.terms_) {
      Exp2 e{el.a + er.a, el.b + er.b};
      auto it = out.terms_.find(e);
      if (it == out.terms_.end()) {
        out.terms_.emplace(e, cl * cr);
      } else {
        it->second += cl * cr;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  return out;
}

Poly2 Poly2::scaled(const Rat& c) const {
  Poly2 out;
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_[e] = c * v;
  return out;
}

Poly2 Poly2::pow(unsigned e) const {
  Poly2 acc = constant(1);
  for (unsigned i = 0; i < e; ++i) acc = acc * (*this);
  return acc;
}

Poly2 Poly2::derivative_first() const {
  Poly2 out;
  for (const auto& [e, c] : terms_)
    if (e.a > 0) out.terms_[Exp2{e.a - 1, e.b}] = c * e.a;
  return out;
}

Poly2 Poly2::derivative_second() const {
  Poly2 out;
  for (const auto& [e, c] : terms_)
    if (e.b > 0) out.terms_[Exp2{e.a, e.b - 1}] = c * e.b;
  return out;
}

namespace {
template <typename Num>
Num pow_num(const Num& base, int e) {
  Num acc(1);
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}
}  // namespace

Rat Poly2::eval(const Rat& x, const Rat& y) const {
  Rat acc(0);
  for (const auto& [e, c] : terms_) acc += c * pow_num(x, e.a) * pow_num(y, e.b);
  return acc;
}

double Poly2::eval(double x, double y) const {
  double acc = 0;
  for (const auto& [e, c] : terms_)
    acc += to_double(c) * std::pow(x, e.a) * std::pow(y, e.b);
  return acc;
}

Poly2 Poly2::compose(const Poly2& u, const Poly2& v) const {
  // Cache powers of u and v to keep the expansion quadratic, not cubic.
  std::vector<Poly2> up{Poly2::constant(1)}, vp{Poly2::constant(1)};
  const int du = degree_first(), dv = degree_second();
  for (int i = 1; i <= std::max(du, 0); ++i) up.push_back(up.back() * u);
  for (int j = 1; j <= std::max(dv, 0); ++j) vp.push_back(vp.back() * v);
  Poly2 out;
  for (const auto& [e, c] : terms_) out += (up[e.a] * vp[e.b]).scaled(c);
  return out;
}

Poly1 Poly2::at_first(const Rat& x) const {
  std::vector<Rat> cs(static_cast<std::size_t>(std::max(degree_second(), -1) + 1),
                      Rat(0));
  for (const auto& [e, c] : terms_)
    cs[static_cast<std::size_t>(e.b)] += c * pow_num(x, e.a);
  return Poly1(std::move(cs));
}

Poly1 Poly2::at_second(const Rat& y) const {
  std::vector<Rat> cs(static_cast<std::size_t>(std::max(degree_first(), -1) + 1),
                      Rat(0));
  for (const auto& [e, c] : terms_)
    cs[static_cast<std::size_t>(e.a)] += c * pow_num(y, e.b);
  return Poly1(std::move(cs));
}

Poly2 Poly2::homogeneous_component(int d) const {
  Poly2 out;
  for (const auto& [e, c] : terms_)
    if (e.degree() == d) out.terms_[e] = c;
  return out;
}

std::pair<Exp2, Rat> Poly2::leading_term() const {
  assert(!is_zero());
  auto it = terms_.rbegin();
  return {it->first, it->second};
}

Poly2 Poly2::sign_normalized() const {
  if (is_zero()) return *this;
  return leading_term().second > 0 ? *this : -*this;
}

int Poly2::min_exp_first() const {
  if (is_zero()) return 0;
  int m = degree_first();
  for (const auto& [e, c] : terms_) m = std::min(m, e.a);
  return m;
}

int Poly2::min_exp_second() const {
  if (is_zero()) return 0;
  int m = degree_second();
  for (const auto& [e, c] : terms_) m = std::min(m, e.b);
  return m;
}

// --- Poly1 ----------------------------------------------------------------

Poly1::Poly1(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly1 Poly1::constant(const Rat& c) { return Poly1(std::vector<Rat>{c}); }

void Poly1::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat Poly1::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Rat(0);
  return c_[static_cast<std::size_t>(k)];
}

Rat Poly1::leading() const {
  assert(!is_zero());
  return c_.back();
}

Poly1 Poly1::operator-() const { return scaled(Rat(-1)); }

Poly1& Poly1::operator+=(const Poly1& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly1& Poly1::operator-=(const Poly1& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly1 operator*(const Poly1& l, const Poly1& r) {
  if (l.is_zero() || r.is_zero()) return Poly1();
  std::vector<Rat> out(l.c_.size() + r.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < l.c_.size(); ++i)
    for (std::size_t j = 0; j < r.c_.size(); ++j) out[i + j] += l.c_[i] * r.c_[j];
  return Poly1(std::move(out));
}

Poly1 Poly1::scaled(const Rat& s) const {
  if (s == 0) return Poly1();
  std::vector<Rat> out = c_;
  for (auto& v : out) v *= s;
  return Poly1(std::move(out));
}

Poly1 Poly1::derivative() const {
  if (c_.size() <= 1) return Poly1();
  std::vector<Rat> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Rat(static_cast<long long>(i));
  return Poly1(std::move(out));
}

Rat Poly1::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly1::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

std::pair<Poly1, Poly1> Poly1::div_rem(const Poly1& f, const Poly1& g) {
  if (g.is_zero()) throw std::invalid_argument("Poly1 division by zero");
  Poly1 q, r = f;
  if (f.degree() < g.degree()) return {q, r};
  std::vector<Rat> qc(static_cast<std::size_t>(f.degree() - g.degree() + 1), Rat(0));
  while (!r.is_zero() && r.degree() >= g.degree()) {
    const int k = r.degree() - g.degree();
    const Rat c = r.leading() / g.leading();
    qc[static_cast<std::size_t>(k)] = c;
    std::vector<Rat> sub(static_cast<std::size_t>(k), Rat(0));
    sub.insert(sub.end(), g.coeffs().begin(), g.coeffs().end());
    Poly1 shifted{std::move(sub)};
    r -= shifted.scaled(c);
  }
  return {Poly1(std::move(qc)), r};
}

// --- free operations ------------------------------------------------------

Poly2 differentiate(const Poly2& p, Var v) {
  return v == Var::First ? p.derivative_first() : p.derivative_second();
}

std::vector<Poly2> homogeneous_components(const Poly2& p) {
  std::vector<Poly2> out(static_cast<std::size_t>(std::max(p.degree(), 0) + 1));
  for (const auto& [e, c] : p.terms()) {
    Poly2& comp = out[static_cast<std::size_t>(e.degree())];
    comp.set_coeff(e.a, e.b, c);
  }
  return out;
}

std::optional<Poly2> exact_divide(const Poly2& f, const Poly2& g) {
  if (g.is_zero()) throw std::invalid_argument("exact_divide by zero polynomial");
  Poly2 r = f, q;
  const auto [ge, gc] = g.is_zero() ? std::pair<Exp2, Rat>{} : g.leading_term();
  while (!r.is_zero()) {
    const auto [re, rc] = r.leading_term();
    // If g divides f exactly, leading terms divide at every step.
    if (re.a < ge.a || re.b < ge.b) return std::nullopt;
    Poly2 t = Poly2::monomial(rc / gc, re.a - ge.a, re.b - ge.b);
    q += t;
    r -= t * g;
  }
  return q;
}

std::optional<Poly1> exact_divide(const Poly1& f, const Poly1& g) {
  auto [q, r] = Poly1::div_rem(f, g);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

Poly1 gcd_univariate(const Poly1& f, const Poly1& g) {
  if (f.is_zero() && g.is_zero())
    throw std::invalid_argument("gcd of two zero polynomials");
  Poly1 a = f, b = g;
  while (!b.is_zero()) {
    auto [q, r] = Poly1::div_rem(a, b);
    a = b;
    b = r;
  }
  // Normalize monic for a deterministic representative.
  return a.scaled(Rat(1) / a.leading());
}

std::vector<Poly1> coefficients_in(const Poly2& p, Var in) {
  const int d = (in == Var::First) ? p.degree_first() : p.degree_second();
  std::vector<std::vector<Rat>> acc(static_cast<std::size_t>(std::max(d, 0) + 1));
  const int other_d = (in == Var::First) ? p.degree_second() : p.degree_first();
  for (auto& v : acc) v.assign(static_cast<std::size_t>(std::max(other_d, 0) + 1), Rat(0));
  for (const auto& [e, c] : p.terms()) {
    const int main_e = (in == Var::First) ? e.a : e.b;
    const int other_e = (in == Var::First) ? e.b : e.a;
    acc[static_cast<std::size_t>(main_e)][static_cast<std::size_t>(other_e)] += c;
  }
  std::vector<Poly1> out;
  out.reserve(acc.size());
  for (auto& v : acc) out.emplace_back(std::move(v));
  if (p.is_zero()) out.clear();
  return out;
}

Poly2 from_coefficients_in(const std::vector<Poly1>& cs, Var in) {
  Poly2 out;
  for (std::size_t k = 0; k < cs.size(); ++k)
    for (int j = 0; j <= cs[k].degree(); ++j) {
      const Rat c = cs[k].coeff(j);
      if (c == 0) continue;
      const int a = (in == Var::First) ? static_cast<int>(k) : j;
      const int b = (in == Var::First) ? j : static_cast<int>(k);
      out.set_coeff(a, b, out.coeff(a, b) + c);
    }
  return out;
}

namespace {

// Content of a Poly2 seen as a polynomial in `in`: univariate gcd of its
// Poly1 coefficients in the other variable.
Poly1 content_in(const Poly2& p, Var in) {
  Poly1 c;
  for (const Poly1& q : coefficients_in(p, in)) {
    if (q.is_zero()) continue;
    c = c.is_zero() ? q : gcd_univariate(c, q);
    if (c.degree() == 0) break;
  }
  return c.is_zero() ? Poly1() : c.scaled(Rat(1) / c.leading());
}

Poly2 mul_by_poly1(const Poly2& p, const Poly1& u, Var in) {
  // Multiply by a univariate polynomial in the variable *other than* `in`.
  Poly2 up;
  for (int j = 0; j <= u.degree(); ++j) {
    const Rat c = u.coeff(j);
    if (c == 0) continue;
    up.set_coeff(in == Var::First ? 0 : j, in == Var::First ? j : 0, c);
  }
  return p * up;
}

Poly2 primitive_part(const Poly2& p, Var in) {
  if (p.is_zero()) return p;
  const Poly1 c = content_in(p, in);
  if (c.degree() <= 0) return p;
  std::vector<Poly1> out;
  for (const Poly1& q : coefficients_in(p, in)) {
    if (q.is_zero()) {
      out.emplace_back();
      continue;
    }
    auto d = exact_divide(q, c);
    assert(d.has_value());
    out.push_back(*d);
  }
  return from_coefficients_in(out, in);
}

// Pseudo-remainder of f by g with respect to `in`: lc(g)^(df-dg+1) * f mod g.
Poly2 pseudo_rem(const Poly2& f, const Poly2& g, Var in) {
  auto fc = coefficients_in(f, in);
  const auto gc = coefficients_in(g, in);
  const int dg = static_cast<int>(gc.size()) - 1;
  const Poly1 glead = gc.back();
  int df = static_cast<int>(fc.size()) - 1;
  while (df >= dg && df >= 0) {
    // Multiply the whole remainder by lc(g), then cancel the leading term.
    const Poly1 flead = fc[static_cast<std::size_t>(df)];
    for (auto& c : fc) c = c * glead;
    for (int i = 0; i <= dg; ++i)
      fc[static_cast<std::size_t>(df - dg + i)] -= flead * gc[static_cast<std::size_t>(i)];
    while (!fc.empty() && fc.back().is_zero()) fc.pop_back();
    df = static_cast<int>(fc.size()) - 1;
  }
  return from_coefficients_in(fc, in);
}

}  // namespace

Poly2 gcd_bivariate(const Poly2& f, const Poly2& g) {
  if (f.is_zero() && g.is_zero())
    throw std::invalid_argument("gcd of two zero polynomials");
  if (f.is_zero()) return g.sign_normalized();
  if (g.is_zero()) return f.sign_normalized();

  const Var in = Var::First;
  const int df = f.degree_first(), dg = g.degree_first();
  if (df == 0 && dg == 0) {
    // Both univariate in the second variable.
    Poly1 u = gcd_univariate(coefficients_in(f, in)[0], coefficients_in(g, in)[0]);
    std::vector<Poly1> lift{u};
    return from_coefficients_in(lift, in).sign_normalized();
  }

  const Poly1 cf = content_in(f, in), cg = content_in(g, in);
  const Poly1 cc = gcd_univariate(cf, cg);
  Poly2 a = primitive_part(f, in), b = primitive_part(g, in);
  if (a.degree_first() < b.degree_first()) std::swap(a, b);
  // Primitive pseudo-remainder sequence.
  while (!b.is_zero() && b.degree_first() > 0) {
    Poly2 r = primitive_part(pseudo_rem(a, b, in), in);
    a = b;
    b = r;
  }
  Poly2 result;
  if (b.is_zero()) {
    result = a;
  } else {
    // Remainder is univariate in the second variable: primitive parts are
    // coprime in the first variable, so the primitive gcd is a constant times
    // gcd of contents only.
    result = Poly2::constant(1);
  }
  result = primitive_part(result, in);
  result = mul_by_poly1(result, cc, in);
  // Clear rational content for a primitive, deterministic representative.
  Rat lead = result.leading_term().second;
  result = result.scaled(Rat(1) / lead);
  // Scale to integer-primitive form: multiply by lcm of denominators, divide
  // by gcd of numerators.
  Int den_lcm = 1, num_gcd = 0;
  for (const auto& [e, c] : result.terms()) {
    den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(c));
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c));
  }
  result = result.scaled(Rat(den_lcm));
  num_gcd = 0;
  for (const auto& [e, c] : result.terms())
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(c));
  if (num_gcd != 0) result = result.scaled(Rat(1) / Rat(num_gcd));
  return result.sign_normalized();
}

Poly1 resultant_eliminate(const Poly2& f, const Poly2& g, Var eliminate) {
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("resultant of a zero polynomial");
  auto fc = coefficients_in(f, eliminate);
  auto gc = coefficients_in(g, eliminate);
  const int m = static_cast<int>(fc.size()) - 1;
  const int n = static_cast<int>(gc.size()) - 1;
  if (m <= 0 && n <= 0)
    throw std::invalid_argument(
        "resultant: both inputs constant in the eliminated variable");
  auto poly_pow = [](const Poly1& base, int e) {
    Poly1 acc = Poly1::constant(1);
    for (int i = 0; i < e; ++i) acc = acc * base;
    return acc;
  };
  if (m == 0) return poly_pow(fc[0], n);
  if (n == 0) return poly_pow(gc[0], m);

  // Sylvester matrix of size (m+n) with Poly1 entries in the kept variable.
  const int s = m + n;
  std::vector<std::vector<Poly1>> M(static_cast<std::size_t>(s),
                                    std::vector<Poly1>(static_cast<std::size_t>(s)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) M[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = fc[static_cast<std::size_t>(m - k)];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) M[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = gc[static_cast<std::size_t>(n - k)];

  // Fraction-free (Bareiss) elimination over the polynomial ring; every
  // division below is exact.
  Poly1 prev = Poly1::constant(1);
  int sign = 1;
  for (int k = 0; k < s - 1; ++k) {
    if (M[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)].is_zero()) {
      int p = -1;
      for (int r = k + 1; r < s; ++r)
        if (!M[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)].is_zero()) {
          p = r;
          break;
        }
      if (p < 0) return Poly1();  // singular matrix: resultant vanishes
      std::swap(M[static_cast<std::size_t>(k)], M[static_cast<std::size_t>(p)]);
      sign = -sign;
    }
    const Poly1 pivot = M[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    for (int r = k + 1; r < s; ++r) {
      for (int c = k + 1; c < s; ++c) {
        Poly1 num = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * pivot -
                    M[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] *
                        M[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
        auto q = exact_divide(num, prev);
        assert(q.has_value());
        M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = *q;
      }
      M[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = Poly1();
    }
    prev = pivot;
  }
  Poly1 det = M[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(s - 1)];
  if (sign < 0) det = -det;
  return det;
}

// --- printing -------------------------------------------------------------

namespace {

void append_factor(std::string& s, const std::string& v, int e, bool& first_factor) {
  if (e == 0) return;
  if (!first_factor) s += "*";
  s += v;
  if (e > 1) s += "^" + std::to_string(e);
  first_factor = false;
}

std::string term_to_string(const Rat& c, const std::string& v1, int a,
                           const std::string& v2, int b) {
  const Rat mag = c < 0 ? Rat(-c) : c;
  std::string s;
  bool first_factor = true;
  if (a == 0 && b == 0) {
    s = rat_to_string(mag);
  } else {
    if (mag != 1) {
      s = rat_to_string(mag);
      first_factor = false;
    }
    append_factor(s, v1, a, first_factor);
    append_factor(s, v2, b, first_factor);
  }
  return s;
}

}  // namespace

std::string poly_to_string(const Poly2& p, const std::string& v1,
                           const std::string& v2) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (first) {
      if (c < 0) out += "-";
      out += term_to_string(c, v1, e.a, v2, e.b);
      first = false;
    } else {
      out += (c < 0) ? " - " : " + ";
      out += term_to_string(c, v1, e.a, v2, e.b);
    }
  }
  return out;
}

std::string poly_to_string(const Poly1& p, const std::string& v) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    const Rat c = p.coeff(k);
    if (c == 0) continue;
    if (first) {
      if (c < 0) out += "-";
      out += term_to_string(c, v, k, "", 0);
      first = false;
    } else {
      out += (c < 0) ? " - " : " + ";
      out += term_to_string(c, v, k, "", 0);
    }
  }
  return out;
}

}  // namespace projatlas

// Sturm-sequence real-root isolation with exact rational arithmetic.
#include "projatlas/roots.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace projatlas {

namespace {

// Sturm chain of a squarefree polynomial, with positive rescaling of each
// remainder to keep coefficients small-ish (signs are all that matter).
std::vector<Poly1> sturm_chain(const Poly1& p) {
  std::vector<Poly1> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    auto [q, r] = Poly1::div_rem(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    // Normalize to unit leading magnitude; only the sign pattern matters.
    Poly1 nr = (-r).scaled(Rat(1) / (r.leading() < 0 ? -r.leading() : r.leading()));
    chain.push_back(nr);
  }
  return chain;
}

int sign_variations(const std::vector<Poly1>& chain, const Rat& x) {
  int var = 0, prev = 0;
  for (const Poly1& q : chain) {
    if (q.is_zero()) continue;
    const int s = sign_of(q.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// Cauchy root bound: all real roots lie in [-B, B].
Rat cauchy_bound(const Poly1& p) {
  Rat maxr(0);
  const Rat lead = p.leading() < 0 ? -p.leading() : p.leading();
  for (int k = 0; k < p.degree(); ++k) {
    Rat a = p.coeff(k) < 0 ? -p.coeff(k) : p.coeff(k);
    a /= lead;
    if (a > maxr) maxr = a;
  }
  return maxr + 1;
}

struct Isolated {
  Rat lo, hi;  // exactly one root in (lo, hi]; sign change or endpoint root
};

void isolate(const std::vector<Poly1>& chain, const Rat& lo, const Rat& hi,
             int count, std::vector<Isolated>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.push_back({lo, hi});
    return;
  }
  const Rat mid = (lo + hi) / 2;
  const int left = sign_variations(chain, lo) - sign_variations(chain, mid);
  isolate(chain, lo, mid, left, out);
  isolate(chain, mid, hi, count - left, out);
}

// Refine the single root of squarefree p inside (lo, hi] to width <= tol.
RealRoot refine(const Poly1& p, const std::vector<Poly1>& chain, Rat lo, Rat hi,
                double tol) {
  // An exact hit at the right endpoint (rational root) ends immediately.
  if (p.eval(hi) == 0) return RealRoot{to_double(hi), 1, hi};
  while (to_double(hi - lo) > tol) {
    const Rat mid = (lo + hi) / 2;
    const Rat v = p.eval(mid);
    if (v == 0) return RealRoot{to_double(mid), 1, mid};
    // Keep the half that still contains the root (Sturm count robust even
    // without a sign change at the endpoints).
    if (sign_variations(chain, lo) - sign_variations(chain, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
  RealRoot r{to_double((lo + hi) / 2), 1, std::nullopt};
  // Newton steps sharpen the midpoint to machine precision (p is squarefree,
  // so the derivative cannot vanish at the root).
  const double dlo = to_double(lo), dhi = to_double(hi);
  Poly1 dp = p.derivative();
  double z = r.value;
  for (int it = 0; it < 8; ++it) {
    const double d = dp.eval(z);
    if (d == 0) break;
    const double step = p.eval(z) / d;
    const double next = z - step;
    if (!std::isfinite(next) || next < dlo || next > dhi) break;
    z = next;
    if (std::abs(step) < 1e-16 * (1 + std::abs(z))) break;
  }
  r.value = z;
  // Opportunistic exact identification of rational roots.
  if (auto q = rational_root_near(p, r.value, std::max(tol, 1e-9) * 10)) {
    r.value = to_double(*q);
    r.exact = *q;
  }
  return r;
}

std::vector<RealRoot> roots_of_squarefree(const Poly1& p, double tol) {
  std::vector<RealRoot> out;
  if (p.degree() < 1) return out;
  const std::vector<Poly1> chain = sturm_chain(p);
  const Rat bound = cauchy_bound(p);
  const int total = sign_variations(chain, -bound) - sign_variations(chain, bound);
  std::vector<Isolated> cells;
  isolate(chain, -bound, bound, total, cells);
  for (const Isolated& c : cells) out.push_back(refine(p, chain, c.lo, c.hi, tol));
  return out;
}

}  // namespace

std::vector<Poly1> squarefree_decomposition(const Poly1& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree of zero polynomial");
  std::vector<Poly1> out;
  if (p.degree() < 1) return out;
  // Yun's algorithm over a field of characteristic zero.
  Poly1 a = gcd_univariate(p, p.derivative());
  Poly1 b = *exact_divide(p, a);
  Poly1 c = *exact_divide(p.derivative(), a);
  Poly1 d = c - b.derivative();
  while (b.degree() >= 1) {
    Poly1 f = b.degree() >= 1 && d.is_zero() ? b : gcd_univariate(b, d);
    if (d.is_zero()) {
      out.push_back(b);
      break;
    }
    out.push_back(f);
    b = *exact_divide(b, f);
    c = *exact_divide(d, f);
    d = c - b.derivative();
  }
  return out;
}

int sturm_count(const Poly1& p, const Rat& a, const Rat& b) {
  if (p.is_zero()) throw std::invalid_argument("sturm_count of zero polynomial");
  Poly1 sf = p;
  if (p.degree() >= 1) {
    const Poly1 g = gcd_univariate(p, p.derivative());
    if (g.degree() >= 1) sf = *exact_divide(p, g);
  }
  const auto chain = sturm_chain(sf);
  return sign_variations(chain, a) - sign_variations(chain, b);
}

std::vector<RealRoot> real_roots_univariate(const Poly1& p, double tol) {
  if (p.is_zero()) throw std::invalid_argument("roots of zero polynomial");
  std::vector<RealRoot> all;
  const std::vector<Poly1> factors = squarefree_decomposition(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() < 1) continue;
    for (RealRoot r : roots_of_squarefree(factors[i], tol)) {
      r.multiplicity = static_cast<int>(i + 1);
      all.push_back(r);
    }
  }
  std::sort(all.begin(), all.end(),
            [](const RealRoot& l, const RealRoot& r) { return l.value < r.value; });
  return all;
}

std::optional<Rat> rational_root_near(const Poly1& p, double near, double window) {
  // Continued-fraction convergents of `near`, tested exactly.
  double x = near;
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 24; ++it) {
    const double fl = std::floor(x);
    if (std::abs(fl) > 1e15) break;
    const Int a = static_cast<long long>(fl);
    const Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 != 0) {
      const Rat cand(p2, q2);
      if (std::abs(to_double(cand) - near) <= window && p.eval(cand) == 0)
        return cand;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - fl;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace projatlas

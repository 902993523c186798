// Exact rational scalar type and small helpers shared across the library.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace projatlas {

// Arbitrary-precision rational, always stored in lowest terms with positive
// denominator (the backend canonicalizes on every operation).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return static_cast<double>(r); }

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

// Renders "p" or "p/q"; q is always positive, the sign rides on p.
inline std::string rat_to_string(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  std::string s = num.str();
  if (den != 1) {
    s += "/";
    s += den.str();
  }
  return s;
}

inline int sign_of(const Rat& r) { return r.sign(); }

}  // namespace projatlas

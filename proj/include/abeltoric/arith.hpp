#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace abeltoric {

// Exact arithmetic everywhere; nothing in this library touches floating point.
using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline Integer numerator(const Rational& q) { return Integer(q.get_num()); }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline int sign(const Integer& v) { return sgn(v); }
inline int sign(const Rational& v) { return sgn(v); }

// Narrowing for indices and small counters. Throws std::overflow_error.
std::int64_t to_int64(const Integer& v);

// Clears denominators and divides out the content, keeping the sign.
// The zero vector maps to the zero vector.
std::vector<Integer> primitive_integer_multiple(const std::vector<Rational>& v);

}  // namespace abeltoric

// Exact arithmetic scalars used throughout the library.
//
// Integers and rationals are GMP-backed; every geometric predicate in this
// project reduces to sign computations on these types. No floating point is
// used anywhere except SVG coordinate emission.

#ifndef POLYMUT_RATIONAL_HPP
#define POLYMUT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polymut {

using Int = mpz_class;
using Rat = mpq_class;  // mpq_class keeps canonical form: den > 0, gcd = 1

inline int sign(const Int& a) { return sgn(a); }
inline int sign(const Rat& a) { return sgn(a); }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int abs(const Int& a) { return ::abs(a); }

inline Rat rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Modular inverse; requires gcd(a, m) = 1.
inline Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("mod_inverse: not invertible");
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Generalized binomial coefficient C(e, j) for integer (possibly negative) e
// and j >= 0: e(e-1)...(e-j+1)/j!.
inline Int binomial_general(const Int& e, unsigned long j) {
  Int num = 1;
  for (unsigned long i = 0; i < j; ++i) num *= (e - static_cast<long>(i));
  return num / factorial(j);
}

inline std::string to_string(const Int& a) { return a.get_str(); }
inline std::string to_string(const Rat& a) { return a.get_str(); }

// Decimal rendering of an exact rational at a fixed number of significant
// digits. Display only (SVG output); never used in predicates.
double to_double(const Rat& a);
inline double to_double(const Rat& a) { return a.get_d(); }

}  // namespace polymut

#endif  // POLYMUT_RATIONAL_HPP

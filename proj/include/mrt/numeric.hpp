#pragma once

// Exact arithmetic aliases used throughout the library. All lattice
// computations are over arbitrary-precision integers; torus coordinates
// are exact rationals. No floating point anywhere.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mrt {

using Int = mpz_class;
using Rat = mpq_class;

// Raised on invalid user input (bad documents, bad arguments).
struct value_error : std::runtime_error {
  explicit value_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a 2-adic computation would need more precision than carried.
struct precision_error : std::runtime_error {
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal certified identity fails; callers treat this as a
// defect either in this library or in its mathematical assumptions, never as
// bad user input.
struct invariant_violation : std::logic_error {
  explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

inline void check(bool ok, const std::string& what) {
  if (!ok) throw invariant_violation(what);
}

// floor division helpers (mpz_class division truncates toward zero)
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int fmod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// x reduced into [0,1)
inline Rat mod1(const Rat& x) {
  Rat r = x - Rat(fdiv(x.get_num(), x.get_den()));
  r.canonicalize();
  return r;
}

inline bool is_two_power(const Int& n) {
  if (n <= 0) return false;
  return mpz_popcount(n.get_mpz_t()) == 1;
}

}  // namespace mrt

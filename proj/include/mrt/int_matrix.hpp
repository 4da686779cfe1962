#pragma once

// Dense square integer matrices and integer vectors, sized for reflection
// groups of small rank. Deterministic ordering (lexicographic on the entry
// sequence) is part of the contract: downstream cocycle tables must be
// reproducible bit for bit.

#include <vector>

#include "mrt/numeric.hpp"

namespace mrt {

using IntVec = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() : dim_(0) {}
  explicit IntMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim, 0) {}
  IntMatrix(int dim, std::vector<Int> entries) : dim_(dim), a_(std::move(entries)) {
    if (a_.size() != static_cast<size_t>(dim) * dim)
      throw value_error("IntMatrix: entry count does not match dimension");
  }

  static IntMatrix identity(int dim) {
    IntMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }

  int dim() const { return dim_; }
  Int& at(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }
  const std::vector<Int>& entries() const { return a_; }

  IntMatrix operator*(const IntMatrix& o) const;
  IntVec operator*(const IntVec& v) const;
  IntMatrix operator+(const IntMatrix& o) const;
  IntMatrix operator-(const IntMatrix& o) const;
  IntMatrix negated() const;
  IntMatrix transposed() const;
  Int trace() const;
  Int det() const;  // fraction-free Gaussian elimination (Bareiss)

  bool is_identity() const;
  // entrywise congruence to the identity mod m
  bool is_identity_mod(const Int& m) const;

  // Inverse of a matrix with det = +-1. Throws value_error otherwise.
  IntMatrix inverse_unimodular() const;

  bool operator==(const IntMatrix& o) const { return dim_ == o.dim_ && a_ == o.a_; }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
  // lexicographic on (dim, entries); the canonical element order everywhere
  bool operator<(const IntMatrix& o) const;

  // compact serialization usable as a hash key
  std::string key() const;

 private:
  int dim_;
  std::vector<Int> a_;
};

// row covector applied to a vector
Int dot(const IntVec& a, const IntVec& b);

IntVec operator+(const IntVec& a, const IntVec& b);
IntVec operator-(const IntVec& a, const IntVec& b);
IntVec negated(const IntVec& v);
IntVec scaled(const IntVec& v, const Int& c);
bool is_zero(const IntVec& v);

// covector * matrix  (functional precomposed with the matrix)
IntVec covector_times(const IntVec& beta, const IntMatrix& m);

// rank-one update  I + b * beta^T
IntMatrix rank_one_reflection(const IntVec& b, const IntVec& beta);

// sign normalization: flips v so its first nonzero coordinate is positive;
// returns +1 or -1 for the factor applied (zero vector -> +1)
int canonical_sign(IntVec& v);

std::string to_string(const IntVec& v);
std::string to_string(const IntMatrix& m);

}  // namespace mrt

#pragma once

// Strict markings (b, beta) of reflections: sigma(x) = x + beta(x) b.
// A marking is the pair taken up to sign; canonical representatives make the
// first nonzero coordinate of b positive.

#include <vector>

#include "mrt/matrix_group.hpp"
#include "mrt/smith.hpp"

namespace mrt {

struct Reflection {
  IntMatrix matrix;
  bool trivial_mod2 = false;
};

struct StrictMarking {
  IntVec b;
  IntVec beta;

  bool operator==(const StrictMarking& o) const { return b == o.b && beta == o.beta; }
};

// Flip signs so the first nonzero coordinate of b is positive.
StrictMarking canonical_marking(StrictMarking m);

// Does (b, beta) satisfy sigma = I + b beta^T and beta(b) = -2?
bool marking_valid_for(const IntMatrix& sigma, const StrictMarking& m);

Reflection make_reflection(const IntMatrix& m);  // throws value_error if not a reflection

std::vector<Reflection> reflections_in(const FiniteMatrixGroup& g);

// Canonical generator of ker(1 + sigma), sign-normalized.
IntVec negative_eigenvector(const IntMatrix& sigma);

// Basis of ker(1 -+ sigma) as a saturated sublattice (sign = -1 or +1 picks
// the eigenvalue).
std::vector<IntVec> eigenlattice(const IntMatrix& sigma, int sign);

// All markings of a reflection, canonical representatives. Two entries
// (b0 then 2 b0) when sigma is trivial mod 2, one otherwise.
std::vector<StrictMarking> markings_of(const IntMatrix& sigma);

// The marking w . (b, beta) = (w b, beta o w^-1) for w sigma w^-1,
// canonicalized. The second overload takes the precomputed inverse.
StrictMarking conjugate_marking(const IntMatrix& w, const StrictMarking& m);
StrictMarking conjugate_marking(const IntMatrix& w, const IntMatrix& w_inv,
                                const StrictMarking& m);

}  // namespace mrt

#pragma once

// Simple systems, Coxeter matrices and positive-word machinery: lengths via
// breadth-first search on the Cayley graph, reflection sequences of words,
// and enumeration of all minimal words at desk scale.

#include "mrt/root_system.hpp"

namespace mrt {

using Word = std::vector<int>;  // indices into the simple system

struct SimpleSystem {
  GroupPtr group;
  std::vector<int> simples;             // element indices of the simple reflections
  std::vector<IntVec> simple_roots;     // the positive root chosen for each simple
  std::vector<std::vector<int>> coxeter;  // m[i][j] = order of s_i s_j
  std::vector<int> length;              // per group element
  std::vector<Word> lex_min_word;       // lexicographically first minimal word per element

  int rank() const { return static_cast<int>(simples.size()); }
  int simple_sigma(int i) const { return group->sigma_index(simples[i]); }
};

// Simple system from the root system of the given marking family; the default
// overload uses the family of canonical kernel generators (which is always a
// valid marking family). Deterministic: positivity comes from the fixed
// functional (1, N, N^2, ...) with N = 10^6, retried on degeneracy, and the
// simples are sorted by their root vectors.
SimpleSystem find_simple_system(GroupPtr g);
SimpleSystem find_simple_system(const MarkedReflectionLattice& m);

// Alternating word of length n in the letters i, j starting with i:
// [i, j, i, ...]. prod_word(m[i][j]; i, j) and prod_word(m[i][j]; j, i) are
// the two sides of the braid relation.
Word prod_word(int n, int i, int j);

// Product of the simple reflections in letter order; element index.
int word_image(const SimpleSystem& ss, const Word& w);

// sigma_k = r(i_1 .. i_{k-1}) r_{i_k} r(i_1 .. i_{k-1})^{-1}, as Sigma indices.
std::vector<int> reflection_sequence(const SimpleSystem& ss, const Word& w);

int length(const SimpleSystem& ss, int element);

bool is_minimal_word(const SimpleSystem& ss, const Word& w);

// All minimal words for the element, lexicographically sorted. Guarded by a
// group-order limit since the count grows quickly.
std::vector<Word> all_minimal_words(const SimpleSystem& ss, int element, int group_order_limit = 1200);

}  // namespace mrt

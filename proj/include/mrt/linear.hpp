#pragma once

// Exact linear systems over Z and over Z/2^m. Rows are compressed
// incrementally by unimodular row operations; the surviving small system is
// solved through the Smith decomposition (with 2^m relation columns adjoined
// in the modular case), so solvability detection is complete.

#include <optional>

#include "mrt/smith.hpp"

namespace mrt {

class LinearSystem {
 public:
  // modulus 0 solves over Z, otherwise over Z/modulus
  explicit LinearSystem(int cols, Int modulus = 0);

  void add_row(IntVec coeffs, Int rhs);
  // a particular solution of all added rows, if one exists
  std::optional<IntVec> solve() const;
  int cols() const { return cols_; }

 private:
  int cols_;
  Int modulus_;
  // pivot rows, each of length cols_ + 1 (rhs appended); at most one per column
  std::vector<IntVec> pivots_;
  std::vector<int> pivot_col_;  // column -> pivot row index, -1 if none
  bool inconsistent_ = false;
};

}  // namespace mrt

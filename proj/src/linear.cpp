#include "mrt/linear.hpp"

namespace mrt {

LinearSystem::LinearSystem(int cols, Int modulus) : cols_(cols), modulus_(std::move(modulus)) {
  pivot_col_.assign(cols_, -1);  // repurposed: column -> pivot row (or -1)
}

void LinearSystem::add_row(IntVec coeffs, Int rhs) {
  if (static_cast<int>(coeffs.size()) != cols_) throw value_error("LinearSystem: bad row width");
  if (inconsistent_) return;
  IntVec row = std::move(coeffs);
  row.push_back(std::move(rhs));
  auto normalize = [&](IntVec& r) {
    if (modulus_ != 0)
      for (auto& x : r) x = fmod(x, modulus_);
  };
  normalize(row);
  for (int c = 0; c < cols_; ++c) {
    if (row[c] == 0) continue;
    int p = pivot_col_[c];
    if (p < 0) {
      pivot_col_[c] = static_cast<int>(pivots_.size());
      pivots_.push_back(std::move(row));
      return;
    }
    // Euclid between row[c] and the pivot entry; unimodular throughout
    while (row[c] != 0) {
      Int q = fdiv(row[c], pivots_[p][c]);
      if (q != 0) {
        for (int j = c; j <= cols_; ++j) row[j] -= q * pivots_[p][j];
        normalize(row);
      }
      if (row[c] == 0) break;
      std::swap(row, pivots_[p]);
    }
  }
  // fully reduced: 0 = rhs must hold (exactly, or mod 2^m)
  if (row[cols_] != 0) inconsistent_ = true;
}

std::optional<IntVec> LinearSystem::solve() const {
  if (inconsistent_) return std::nullopt;
  int m = static_cast<int>(pivots_.size());
  if (m == 0) return IntVec(cols_, 0);
  int width = cols_ + (modulus_ != 0 ? m : 0);
  RowMatrix a(m, IntVec(width, 0));
  IntVec b(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < cols_; ++j) a[i][j] = pivots_[i][j];
    if (modulus_ != 0) a[i][cols_ + i] = modulus_;
    b[i] = pivots_[i][cols_];
  }
  auto sol = solve_integer(a, b);
  if (!sol) return std::nullopt;
  IntVec x(sol->begin(), sol->begin() + cols_);
  if (modulus_ != 0)
    for (auto& v : x) v = fmod(v, modulus_);
  return x;
}

}  // namespace mrt

#include "mrt/smith.hpp"

#include <algorithm>

namespace mrt {

RowMatrix rows_of(const IntMatrix& m) {
  RowMatrix r(m.dim(), IntVec(m.dim()));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) r[i][j] = m.at(i, j);
  return r;
}

RowMatrix transpose(const RowMatrix& a) {
  RowMatrix r(col_count(a), IntVec(row_count(a)));
  for (int i = 0; i < row_count(a); ++i)
    for (int j = 0; j < col_count(a); ++j) r[j][i] = a[i][j];
  return r;
}

RowMatrix row_matrix_product(const RowMatrix& a, const RowMatrix& b) {
  int m = row_count(a), k = col_count(a), n = col_count(b);
  if (k != row_count(b)) throw value_error("row_matrix_product: shape mismatch");
  RowMatrix r(m, IntVec(n, 0));
  for (int i = 0; i < m; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < n; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

RowMatrix identity_rows(int n) {
  RowMatrix r(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

namespace {

// Elementary operations on d, mirrored into the transforms so that
// u * a * v = d stays true (and u_inv, v_inv track the inverses).
struct Worker {
  RowMatrix d, u, u_inv, v, v_inv;
  int m, n;

  explicit Worker(RowMatrix a) : d(std::move(a)) {
    m = row_count(d);
    n = col_count(d);
    u = identity_rows(m);
    u_inv = identity_rows(m);
    v = identity_rows(n);
    v_inv = identity_rows(n);
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
    for (int c = 0; c < m; ++c) std::swap(u_inv[c][i], u_inv[c][j]);
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m; ++r) std::swap(d[r][i], d[r][j]);
    for (int r = 0; r < n; ++r) std::swap(v[r][i], v[r][j]);
    std::swap(v_inv[i], v_inv[j]);
  }
  // row i += c * row j
  void add_row(int i, int j, const Int& c) {
    if (c == 0) return;
    for (int t = 0; t < n; ++t) d[i][t] += c * d[j][t];
    for (int t = 0; t < m; ++t) u[i][t] += c * u[j][t];
    for (int t = 0; t < m; ++t) u_inv[t][j] -= c * u_inv[t][i];
  }
  // col i += c * col j
  void add_col(int i, int j, const Int& c) {
    if (c == 0) return;
    for (int t = 0; t < m; ++t) d[t][i] += c * d[t][j];
    for (int t = 0; t < n; ++t) v[t][i] += c * v[t][j];
    for (int t = 0; t < n; ++t) v_inv[j][t] -= c * v_inv[i][t];
  }
  void negate_row(int i) {
    for (int t = 0; t < n; ++t) d[i][t] = -d[i][t];
    for (int t = 0; t < m; ++t) u[i][t] = -u[i][t];
    for (int t = 0; t < m; ++t) u_inv[t][i] = -u_inv[t][i];
  }

  void reduce() {
    int k = 0;
    int limit = std::min(m, n);
    while (k < limit) {
      // find a nonzero pivot with minimal absolute value
      int pi = -1, pj = -1;
      for (int i = k; i < m; ++i)
        for (int j = k; j < n; ++j)
          if (d[i][j] != 0 &&
              (pi < 0 || mpz_cmpabs(d[i][j].get_mpz_t(), d[pi][pj].get_mpz_t()) < 0))
            pi = i, pj = j;
      if (pi < 0) break;  // all zero from here on
      swap_rows(k, pi);
      swap_cols(k, pj);
      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (int i = k + 1; i < m; ++i)
          if (d[i][k] != 0) {
            Int q = fdiv(d[i][k], d[k][k]);
            add_row(i, k, -q);
            if (d[i][k] != 0) {  // remainder becomes the smaller pivot
              swap_rows(k, i);
              dirty = true;
            }
          }
        for (int j = k + 1; j < n; ++j)
          if (d[k][j] != 0) {
            Int q = fdiv(d[k][j], d[k][k]);
            add_col(j, k, -q);
            if (d[k][j] != 0) {
              swap_cols(k, j);
              dirty = true;
            }
          }
      }
      if (d[k][k] < 0) negate_row(k);
      ++k;
    }
    // enforce the divisibility chain d_1 | d_2 | ...
    for (int i = 0; i + 1 < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (d[j][j] % d[i][i] == 0) continue;
        // fold d[j][j] into position (i,i) and re-diagonalize the 2x2 block
        add_col(i, j, 1);
        bool dirty = true;
        while (dirty) {
          dirty = false;
          if (d[j][i] != 0) {
            Int q = fdiv(d[j][i], d[i][i]);
            add_row(j, i, -q);
            if (d[j][i] != 0) {
              swap_rows(i, j);
              swap_cols(i, j);
              dirty = true;
              continue;
            }
          }
          if (d[i][j] != 0) {
            Int q = fdiv(d[i][j], d[i][i]);
            add_col(j, i, -q);
            if (d[i][j] != 0) {
              swap_cols(i, j);
              dirty = true;
            }
          }
        }
        if (d[i][i] < 0) negate_row(i);
        if (d[j][j] < 0) negate_row(j);
      }
    }
  }
};

}  // namespace

SmithDecomposition smith(RowMatrix a) {
  Worker w(std::move(a));
  w.reduce();
  SmithDecomposition out;
  out.u = std::move(w.u);
  out.u_inv = std::move(w.u_inv);
  out.v = std::move(w.v);
  out.v_inv = std::move(w.v_inv);
  int limit = std::min(w.m, w.n);
  out.diag.resize(limit);
  out.rank = 0;
  for (int i = 0; i < limit; ++i) {
    out.diag[i] = w.d[i][i];
    if (out.diag[i] != 0) out.rank = i + 1;
  }
  return out;
}

std::vector<IntVec> kernel_basis(const RowMatrix& a) {
  int n = col_count(a);
  SmithDecomposition s = smith(a);
  std::vector<IntVec> basis;
  for (int j = s.rank; j < n; ++j) {
    IntVec col(n);
    for (int i = 0; i < n; ++i) col[i] = s.v[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

std::optional<IntVec> solve_integer(const RowMatrix& a, const IntVec& b) {
  int m = row_count(a), n = col_count(a);
  if (static_cast<int>(b.size()) != m) throw value_error("solve_integer: shape mismatch");
  SmithDecomposition s = smith(a);
  // a x = b  <=>  d y = u b,  x = v y
  IntVec ub(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) ub[i] += s.u[i][j] * b[j];
  IntVec y(n, 0);
  int limit = std::min(m, n);
  for (int i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (ub[i] % s.diag[i] != 0) return std::nullopt;
      y[i] = ub[i] / s.diag[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  (void)limit;
  IntVec x(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x[i] += s.v[i][j] * y[j];
  return x;
}

std::vector<IntVec> saturation_of_columns(const RowMatrix& a) {
  int m = row_count(a);
  SmithDecomposition s = smith(a);
  std::vector<IntVec> basis;
  for (int j = 0; j < s.rank; ++j) {
    IntVec col(m);
    for (int i = 0; i < m; ++i) col[i] = s.u_inv[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

std::vector<IntVec> column_span_basis(const RowMatrix& a) {
  int m = row_count(a);
  SmithDecomposition s = smith(a);
  std::vector<IntVec> basis;
  for (int j = 0; j < s.rank; ++j) {
    IntVec col(m);
    for (int i = 0; i < m; ++i) col[i] = s.diag[j] * s.u_inv[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

Int index_in_saturation(const RowMatrix& a) {
  SmithDecomposition s = smith(a);
  Int idx = 1;
  for (int i = 0; i < s.rank; ++i) idx *= s.diag[i];
  return idx;
}

int rank_of(const RowMatrix& a) {
  if (a.empty()) return 0;
  return smith(a).rank;
}

bool in_rational_span_mod_lattice(const std::vector<IntVec>& cols, const std::vector<Rat>& x) {
  int n = static_cast<int>(x.size());
  if (cols.empty()) {
    for (const auto& c : x)
      if (mod1(c) != 0) return false;
    return true;
  }
  // p = integer rows spanning the functionals vanishing on the columns
  RowMatrix b(n, IntVec(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i) b[i][j] = cols[j][i];
  std::vector<IntVec> p = kernel_basis(transpose(b));
  // x is in span_Q(cols) + Z^n  iff  p x lies in the integer image p(Z^n)
  RowMatrix pm;
  for (auto& row : p) pm.push_back(row);
  if (pm.empty()) return true;
  std::vector<Rat> px(pm.size(), Rat(0));
  for (size_t i = 0; i < pm.size(); ++i)
    for (int j = 0; j < n; ++j) px[i] += Rat(pm[i][j]) * x[j];
  IntVec target(pm.size());
  for (size_t i = 0; i < pm.size(); ++i) {
    Rat c = px[i];
    c.canonicalize();
    if (c.get_den() != 1) return false;
    target[i] = c.get_num();
  }
  return solve_integer(pm, target).has_value();
}

bool in_column_span(const std::vector<IntVec>& cols, const IntVec& x) {
  if (cols.empty()) return is_zero(x);
  int n = static_cast<int>(x.size());
  RowMatrix a(n, IntVec(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i) a[i][j] = cols[j][i];
  return solve_integer(a, x).has_value();
}

}  // namespace mrt

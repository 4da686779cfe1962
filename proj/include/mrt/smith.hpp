#pragma once

// Smith normal form over Z with full transform tracking. This is the one
// audited primitive behind kernels, images, saturations and integer solves;
// everything else in the lattice layer reduces to it.

#include <optional>
#include <vector>

#include "mrt/int_matrix.hpp"

namespace mrt {

// Rectangular integer matrix as a list of rows.
using RowMatrix = std::vector<IntVec>;

inline int row_count(const RowMatrix& a) { return static_cast<int>(a.size()); }
inline int col_count(const RowMatrix& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

RowMatrix rows_of(const IntMatrix& m);
RowMatrix transpose(const RowMatrix& a);
RowMatrix row_matrix_product(const RowMatrix& a, const RowMatrix& b);
RowMatrix identity_rows(int n);

struct SmithDecomposition {
  // u * a * v = d with u, v unimodular; diag holds d_1 | d_2 | ... >= 0.
  RowMatrix u, u_inv, v, v_inv;
  IntVec diag;  // length min(rows, cols)
  int rank = 0;
};

SmithDecomposition smith(RowMatrix a);

// Basis of { x : a x = 0 }; always a saturated sublattice of Z^cols.
std::vector<IntVec> kernel_basis(const RowMatrix& a);

// One integer solution of a x = b, if any.
std::optional<IntVec> solve_integer(const RowMatrix& a, const IntVec& b);

// Basis (as column vectors in Z^rows) of the saturation of the column span.
std::vector<IntVec> saturation_of_columns(const RowMatrix& a);

// Basis of the column span itself (Hermite-style, via the Smith transforms).
std::vector<IntVec> column_span_basis(const RowMatrix& a);

// Index of the column span inside its saturation (product of elementary
// divisors); 1 when the span is already saturated.
Int index_in_saturation(const RowMatrix& a);

int rank_of(const RowMatrix& a);

// Does the rational vector x lie in  span_Q(cols) + Z^n ?  Used for the
// membership test behind "strongly negative" torus elements.
bool in_rational_span_mod_lattice(const std::vector<IntVec>& cols, const std::vector<Rat>& x);

// Is x an integer combination of the given columns?
bool in_column_span(const std::vector<IntVec>& cols, const IntVec& x);

}  // namespace mrt

#include "mrt/two_adic.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

namespace mrt {

TwoAdicMatrix TwoAdicMatrix::identity(int dim, int k) {
  TwoAdicMatrix m(dim, k);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

TwoAdicMatrix TwoAdicMatrix::reduce(const IntMatrix& src, int k) {
  TwoAdicMatrix m(src.dim(), k);
  Int mod = Int(1) << k;
  for (int i = 0; i < src.dim(); ++i)
    for (int j = 0; j < src.dim(); ++j) m.at(i, j) = fmod(src.at(i, j), mod).get_ui();
  return m;
}

TwoAdicMatrix TwoAdicMatrix::operator*(const TwoAdicMatrix& o) const {
  if (dim_ != o.dim_ || k_ != o.k_) throw value_error("2-adic product: shape/precision mismatch");
  TwoAdicMatrix r(dim_, k_);
  u64 msk = mask_of(k_);
  for (int i = 0; i < dim_; ++i)
    for (int t = 0; t < dim_; ++t) {
      u64 a = at(i, t);
      if (!a) continue;
      for (int j = 0; j < dim_; ++j) r.at(i, j) = (r.at(i, j) + a * o.at(t, j)) & msk;
    }
  return r;
}

std::vector<u64> TwoAdicMatrix::apply(const std::vector<u64>& v) const {
  u64 msk = mask_of(k_);
  std::vector<u64> r(dim_, 0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r[i] = (r[i] + at(i, j) * v[j]) & msk;
  return r;
}

TwoAdicMatrix TwoAdicMatrix::negated() const {
  TwoAdicMatrix r(dim_, k_);
  u64 msk = mask_of(k_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = (~at(i, j) + 1) & msk;
  return r;
}

TwoAdicMatrix TwoAdicMatrix::truncated(int k) const {
  if (k > k_) throw precision_error("cannot raise precision by truncation");
  TwoAdicMatrix r(dim_, k);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = at(i, j) & mask_of(k);
  return r;
}

bool TwoAdicMatrix::is_identity() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if (at(i, j) != (i == j ? u64(1) : u64(0))) return false;
  return true;
}

bool TwoAdicMatrix::is_identity_mod2() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if ((at(i, j) & 1) != (i == j ? 1u : 0u)) return false;
  return true;
}

u64 TwoAdicMatrix::trace() const {
  u64 t = 0;
  for (int i = 0; i < dim_; ++i) t = (t + at(i, i)) & mask_of(k_);
  return t;
}

std::string TwoAdicMatrix::key() const {
  std::string s;
  s.reserve(a_.size() * 8);
  for (u64 x : a_)
    for (int b = 0; b < 8; ++b) s.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
  return s;
}

int val2(u64 x, int k) {
  if (x == 0) return k;
  int v = 0;
  while (!(x & 1)) {
    x >>= 1;
    ++v;
  }
  return v;
}

u64 inv_mod2k(u64 odd, int k) {
  check(odd & 1, "inverse of an even residue");
  u64 x = 1;  // Newton iteration doubles correct bits
  for (int it = 0; it < 6; ++it) x = x * (2 - odd * x);
  return x & mask_of(k);
}

SaturatedSpan saturate_columns_mod2k(std::vector<std::vector<u64>> cols, int n, int k, int need) {
  SaturatedSpan out;
  out.precision = k;
  std::vector<char> row_used(n, 0);
  while (true) {
    u64 msk = mask_of(out.precision);
    for (auto& c : cols)
      for (auto& x : c) x &= msk;
    // entry of smallest valuation among unused rows
    int bi = -1, bj = -1, bv = out.precision;
    for (size_t j = 0; j < cols.size(); ++j)
      for (int i = 0; i < n; ++i) {
        if (row_used[i]) continue;
        int v = val2(cols[j][i], out.precision);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = static_cast<int>(j);
        }
      }
    if (bi < 0) break;  // all remaining columns vanish at this precision
    std::vector<u64> piv = cols[bj];
    cols.erase(cols.begin() + bj);
    // divide the column by its 2-power content; costs bv bits of precision
    out.precision -= bv;
    if (out.precision < need)
      throw precision_error("saturation ran out of precision (need " + std::to_string(need) +
                            " bits)");
    u64 msk2 = mask_of(out.precision);
    for (auto& x : piv) x = (x >> bv) & msk2;
    u64 unit = inv_mod2k(piv[bi], out.precision);
    for (auto& x : piv) x = (x * unit) & msk2;
    // clear the pivot row from the other columns
    for (auto& c : cols) {
      u64 f = c[bi] & msk2;
      if (!f) continue;
      for (int i = 0; i < n; ++i) c[i] = (c[i] - f * piv[i]) & msk2;
    }
    // and from previous basis vectors, keeping the triangular shape
    for (auto& bvec : out.basis) {
      u64 f = bvec[bi] & msk2;
      if (!f) continue;
      for (int i = 0; i < n; ++i) bvec[i] = (bvec[i] - f * piv[i]) & msk2;
    }
    row_used[bi] = 1;
    out.pivot_rows.push_back(bi);
    out.basis.push_back(std::move(piv));
  }
  u64 msk = mask_of(out.precision);
  for (auto& b : out.basis)
    for (auto& x : b) x &= msk;
  return out;
}

std::optional<std::vector<u64>> coords_in_span(const SaturatedSpan& span, std::vector<u64> v) {
  u64 msk = mask_of(span.precision);
  int n = static_cast<int>(v.size());
  for (auto& x : v) x &= msk;
  std::vector<u64> coord(span.basis.size(), 0);
  for (size_t j = 0; j < span.basis.size(); ++j) {
    u64 c = v[span.pivot_rows[j]] & msk;
    coord[j] = c;
    if (!c) continue;
    for (int i = 0; i < n; ++i) v[i] = (v[i] - c * span.basis[j][i]) & msk;
  }
  for (u64 x : v)
    if (x & msk) return std::nullopt;
  return coord;
}

std::shared_ptr<const TwoAdicGroup> TwoAdicGroup::generate(const std::vector<TwoAdicMatrix>& gens,
                                                           long long cap) {
  if (gens.empty()) throw value_error("generate: need at least one generator");
  int dim = gens[0].dim(), k = gens[0].precision();
  for (const auto& g : gens)
    if (g.dim() != dim || g.precision() != k)
      throw value_error("generate: generators of mixed shape or precision");

  std::vector<TwoAdicMatrix> elems;
  std::unordered_map<std::string, int> seen;
  std::deque<int> queue;
  auto push = [&](const TwoAdicMatrix& m) {
    std::string key = m.key();
    if (seen.count(key)) return;
    if (static_cast<long long>(elems.size()) >= cap)
      throw value_error("generate: group size cap exceeded");
    seen.emplace(std::move(key), static_cast<int>(elems.size()));
    elems.push_back(m);
    queue.push_back(static_cast<int>(elems.size()) - 1);
  };
  push(TwoAdicMatrix::identity(dim, k));
  for (const auto& g : gens) push(g);
  while (!queue.empty()) {
    TwoAdicMatrix cur = elems[queue.front()];
    queue.pop_front();
    for (const auto& g : gens) push(cur * g);
  }
  std::sort(elems.begin(), elems.end());
  auto grp = std::shared_ptr<TwoAdicGroup>(new TwoAdicGroup());
  grp->dim_ = dim;
  grp->k_ = k;
  grp->elems_ = std::move(elems);
  for (int i = 0; i < grp->size(); ++i) grp->index_.emplace(grp->elems_[i].key(), i);
  grp->build_tables();
  return grp;
}

void TwoAdicGroup::build_tables() {
  int n = size();
  id_ = index_.at(TwoAdicMatrix::identity(dim_, k_).key());
  memo_.resize(n);
  inv_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (inv_[i] >= 0) continue;
    // finite order: walk the cyclic group
    int x = i, prev = id_;
    while (x != id_) {
      prev = x;
      x = mul(x, i);
    }
    inv_[i] = prev;
    inv_[prev] = i;
  }
  check(k_ >= 3, "group bookkeeping needs at least 3 bits of precision");
  sigma_of_elem_.assign(n, -1);
  u64 target = (u64(dim_) - 2) & mask_of(k_);
  for (int i = 0; i < n; ++i) {
    const TwoAdicMatrix& m = elems_[i];
    if (m.trace() == target && (m * m).is_identity()) {
      sigma_of_elem_[i] = static_cast<int>(refl_.size());
      refl_.push_back(i);
      refl_mod2_.push_back(m.is_identity_mod2() ? 1 : 0);
    }
  }
  int ns = static_cast<int>(refl_.size());
  class_of_.assign(ns, -1);
  for (int s = 0; s < ns; ++s) {
    if (class_of_[s] >= 0) continue;
    int ci = static_cast<int>(classes_.size());
    FiniteMatrixGroup::ReflectionClass cls;
    cls.rep = s;
    std::deque<int> q{s};
    class_of_[s] = ci;
    while (!q.empty()) {
      int cur = q.front();
      q.pop_front();
      cls.members.push_back(cur);
      for (int g = 0; g < n; ++g) {
        int t = conj_sigma(g, cur);
        if (class_of_[t] < 0) {
          class_of_[t] = ci;
          q.push_back(t);
        }
      }
    }
    std::sort(cls.members.begin(), cls.members.end());
    classes_.push_back(std::move(cls));
  }
}

int TwoAdicGroup::index_of(const TwoAdicMatrix& m) const {
  auto it = index_.find(m.key());
  return it == index_.end() ? -1 : it->second;
}

int TwoAdicGroup::mul(int a, int b) const {
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto& memo = memo_[a];
    auto it = memo.find(b);
    if (it != memo.end()) return it->second;
  }
  int r = index_of(elems_[a] * elems_[b]);
  check(r >= 0, "2-adic group closure is not closed");
  std::lock_guard<std::mutex> lock(memo_mutex_);
  memo_[a].emplace(b, r);
  return r;
}

int TwoAdicGroup::conj_sigma(int g, int sigma) const {
  int e = mul(mul(g, refl_[sigma]), inv_[g]);
  int t = sigma_of_elem_[e];
  check(t >= 0, "conjugate of a reflection must be a reflection");
  return t;
}

std::vector<int> TwoAdicGroup::subgroup_closure(const std::vector<int>& gens) const {
  std::vector<char> in(size(), 0);
  std::deque<int> q;
  auto push = [&](int e) {
    if (!in[e]) {
      in[e] = 1;
      q.push_back(e);
    }
  };
  push(id_);
  for (int g : gens) push(g);
  while (!q.empty()) {
    int cur = q.front();
    q.pop_front();
    for (int g : gens) push(mul(cur, g));
  }
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (in[i]) out.push_back(i);
  return out;
}

// ---- markings ----

namespace {

SaturatedSpan axis_span(const TwoAdicGroup& g, int sigma, int need) {
  // ker(1 + sigma) = saturation of im(1 - sigma) for a reflection
  const TwoAdicMatrix& m = g.mat(g.reflections()[sigma]);
  int n = m.dim(), k = m.precision();
  u64 msk = mask_of(k);
  std::vector<std::vector<u64>> cols;
  for (int j = 0; j < n; ++j) {
    std::vector<u64> c(n);
    for (int i = 0; i < n; ++i) c[i] = ((i == j ? 1 : 0) - m.at(i, j)) & msk;
    cols.push_back(std::move(c));
  }
  SaturatedSpan span = saturate_columns_mod2k(std::move(cols), n, k, need);
  check(span.basis.size() == 1, "a reflection has a rank-1 negative eigenlattice");
  return span;
}

}  // namespace

TwoAdicMarking two_adic_marking(const TwoAdicGroup& g, int sigma) {
  int k = g.precision();
  int need = std::max(3, k / 2);
  SaturatedSpan span = axis_span(g, sigma, need);
  TwoAdicMarking mk;
  mk.precision = span.precision;
  mk.b = span.basis[0];
  int pivot = span.pivot_rows[0];
  // beta from sigma = 1 + b beta^T on the pivot row (b[pivot] = 1)
  const TwoAdicMatrix& m = g.mat(g.reflections()[sigma]);
  u64 msk = mask_of(mk.precision);
  mk.beta.assign(m.dim(), 0);
  for (int j = 0; j < m.dim(); ++j)
    mk.beta[j] = (m.at(pivot, j) - (pivot == j ? 1 : 0)) & msk;
  // validity: sigma = 1 + b beta^T and beta(b) = -2, at the surviving precision
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) {
      u64 expect = ((i == j ? 1 : 0) + mk.b[i] * mk.beta[j]) & msk;
      check((m.at(i, j) & msk) == expect, "marking reconstructs the reflection");
    }
  u64 pair = 0;
  for (int j = 0; j < m.dim(); ++j) pair = (pair + mk.beta[j] * mk.b[j]) & msk;
  check(pair == ((~u64(1)) & msk), "beta(b) = -2");
  return mk;
}

std::vector<std::vector<u64>> two_adic_marking_vectors(const TwoAdicGroup& g, int sigma) {
  TwoAdicMarking mk = two_adic_marking(g, sigma);
  std::vector<std::vector<u64>> out{mk.b};
  if (g.reflection_trivial_mod2(sigma)) {
    std::vector<u64> twice(mk.b.size());
    u64 msk = mask_of(mk.precision);
    for (size_t i = 0; i < mk.b.size(); ++i) twice[i] = (2 * mk.b[i]) & msk;
    out.push_back(std::move(twice));
  }
  return out;
}

CompleteMarkedLattice promote(const MarkedReflectionLattice& m, int k) {
  std::vector<TwoAdicMatrix> gens;
  for (int gi : m.group->generators()) gens.push_back(TwoAdicMatrix::reduce(m.group->mat(gi), k));
  auto g2 = TwoAdicGroup::generate(gens);
  check(g2->size() == m.group->size(), "promotion preserves the group order (precision >= 3)");
  CompleteMarkedLattice out;
  out.group = g2;
  out.precision = k;
  Int mod = Int(1) << k;
  out.marking.resize(g2->reflections().size());
  for (size_t s = 0; s < m.marking.size(); ++s) {
    int old_elem = m.group->reflections()[s];
    int e2 = g2->index_of(TwoAdicMatrix::reduce(m.group->mat(old_elem), k));
    int s2 = g2->sigma_index(e2);
    check(s2 >= 0, "promoted reflections stay reflections");
    TwoAdicMarking mk;
    mk.precision = k;
    for (const auto& x : m.marking[s].b) mk.b.push_back(fmod(x, mod).get_ui());
    for (const auto& x : m.marking[s].beta) mk.beta.push_back(fmod(x, mod).get_ui());
    out.marking[s2] = std::move(mk);
  }
  return out;
}

CompleteMarkedLattice block_sum(const CompleteMarkedLattice& a, const CompleteMarkedLattice& b) {
  check(a.precision == b.precision, "block sum needs equal precisions");
  int k = a.precision;
  int ra = a.group->dim(), rb = b.group->dim(), r = ra + rb;
  auto embed = [&](const TwoAdicMatrix& m, bool first) {
    TwoAdicMatrix out = TwoAdicMatrix::identity(r, k);
    int off = first ? 0 : ra;
    for (int i = 0; i < m.dim(); ++i)
      for (int j = 0; j < m.dim(); ++j) out.at(off + i, off + j) = m.at(i, j);
    return out;
  };
  std::vector<TwoAdicMatrix> gens;
  for (int i = 0; i < a.group->size(); ++i)
    if (a.group->sigma_index(i) >= 0) gens.push_back(embed(a.group->mat(i), true));
  for (int i = 0; i < b.group->size(); ++i)
    if (b.group->sigma_index(i) >= 0) gens.push_back(embed(b.group->mat(i), false));
  auto g = TwoAdicGroup::generate(gens);
  check(static_cast<long long>(g->size()) ==
            static_cast<long long>(a.group->size()) * b.group->size(),
        "block sum has product order");
  CompleteMarkedLattice out;
  out.group = g;
  out.precision = k;
  out.marking.resize(g->reflections().size());
  auto place = [&](const CompleteMarkedLattice& src, bool first) {
    int off = first ? 0 : ra;
    for (size_t s = 0; s < src.marking.size(); ++s) {
      int e = g->index_of(embed(src.group->mat(src.group->reflections()[s]), first));
      int s2 = g->sigma_index(e);
      check(s2 >= 0, "embedded reflections stay reflections");
      TwoAdicMarking mk;
      mk.precision = src.marking[s].precision;
      mk.b.assign(r, 0);
      mk.beta.assign(r, 0);
      for (size_t i = 0; i < src.marking[s].b.size(); ++i) {
        mk.b[off + i] = src.marking[s].b[i];
        mk.beta[off + i] = src.marking[s].beta[i];
      }
      out.marking[s2] = std::move(mk);
    }
  };
  place(a, true);
  place(b, false);
  return out;
}

// ---- DI(4) ----

namespace {

struct BitMatrix {
  unsigned rows[3] = {0, 0, 0};  // 3 bits per row
  bool operator==(const BitMatrix& o) const {
    return rows[0] == o.rows[0] && rows[1] == o.rows[1] && rows[2] == o.rows[2];
  }
  bool operator<(const BitMatrix& o) const {
    for (int i = 0; i < 3; ++i)
      if (rows[i] != o.rows[i]) return rows[i] < o.rows[i];
    return false;
  }
};

unsigned bit_apply(const BitMatrix& m, unsigned v) {
  unsigned out = 0;
  for (int i = 0; i < 3; ++i) out |= (__builtin_popcount(m.rows[i] & v) & 1) << i;
  return out;
}

BitMatrix bit_mul(const BitMatrix& a, const BitMatrix& b) {
  // (a b) row i: apply b^T to rows of a -> compute column-wise
  BitMatrix r;
  for (int i = 0; i < 3; ++i) {
    unsigned row = 0;
    for (int j = 0; j < 3; ++j) {
      unsigned col = 0;
      for (int t = 0; t < 3; ++t) col |= ((b.rows[t] >> j) & 1) << t;
      row |= (__builtin_popcount(a.rows[i] & col) & 1) << j;
    }
    r.rows[i] = row;
  }
  return r;
}

bool bit_invertible(const BitMatrix& m) {
  // image of the 7 nonzero vectors covers 7 values
  unsigned seen = 0;
  for (unsigned v = 1; v < 8; ++v) {
    unsigned w = bit_apply(m, v);
    if (w == 0) return false;
    seen |= 1u << w;
  }
  return __builtin_popcount(seen) == 7;
}

std::vector<BitMatrix> gl3f2_elements() {
  std::vector<BitMatrix> out;
  for (unsigned bits = 0; bits < 512; ++bits) {
    BitMatrix m;
    m.rows[0] = bits & 7;
    m.rows[1] = (bits >> 3) & 7;
    m.rows[2] = (bits >> 6) & 7;
    if (bit_invertible(m)) out.push_back(m);
  }
  check(out.size() == 168, "|GL(3, F2)| = 168");
  return out;
}

int bit_order(const BitMatrix& m) {
  BitMatrix id;
  id.rows[0] = 1;
  id.rows[1] = 2;
  id.rows[2] = 4;
  BitMatrix x = m;
  int n = 1;
  while (!(x == id)) {
    x = bit_mul(x, m);
    ++n;
    check(n <= 8, "element orders in GL(3,F2) divide 168");
  }
  return n;
}

u64 hensel_root_x2_x_2(int k) {
  // the root of x^2 + x + 2 that is = 0 mod 2, by Newton iteration
  u64 msk = mask_of(k);
  u64 x = 0;
  for (int it = 0; it < k + 2; ++it) {
    u64 fx = (x * x + x + 2) & msk;
    u64 dfx = (2 * x + 1) & msk;
    x = (x - fx * inv_mod2k(dfx, k)) & msk;
  }
  check(((x * x + x + 2) & msk) == 0, "Hensel lift converged");
  check((x & 1) == 0, "chose the even branch");
  return x;
}

}  // namespace

DI4Data di4_compute(int k) {
  if (k < 3 || k > 40) throw value_error("di4_compute: precision must be in [3, 40]");
  int K = k + 14;  // slack for the projector divisions
  u64 msk = mask_of(K);
  std::vector<BitMatrix> gl = gl3f2_elements();
  int n = static_cast<int>(gl.size());
  std::map<std::string, int> index;
  auto key_of = [](const BitMatrix& m) {
    return std::to_string(m.rows[0]) + "," + std::to_string(m.rows[1]) + "," +
           std::to_string(m.rows[2]);
  };
  for (int i = 0; i < n; ++i) index[key_of(gl[i])] = i;
  auto mul = [&](int a, int b) { return index.at(key_of(bit_mul(gl[a], gl[b]))); };
  std::vector<int> inv(n), order(n);
  for (int i = 0; i < n; ++i) {
    order[i] = bit_order(gl[i]);
    int x = i, prev = 0;
    for (int t = 0; t < order[i] - 1; ++t) {
      prev = x;
      x = mul(x, i);
    }
    inv[i] = order[i] == 1 ? i : prev;
  }

  // split the two order-7 classes: the class of the first order-7 element
  int t7 = -1;
  for (int i = 0; i < n; ++i)
    if (order[i] == 7) {
      t7 = i;
      break;
    }
  std::vector<char> in7a(n, 0);
  for (int g = 0; g < n; ++g) in7a[mul(mul(g, t7), inv[g])] = 1;

  u64 alpha = hensel_root_x2_x_2(K);        // root of x^2 + x + 2, even branch
  u64 alpha_bar = (u64(0) - 1 - alpha) & msk;  // the conjugate root

  // character of a rank-3 constituent, by element order (and 7-class)
  auto chi = [&](int gi) -> u64 {
    switch (order[gi]) {
      case 1: return 3;
      case 2: return u64(0) - 1;  // masked on use
      case 3: return 0;
      case 4: return 1;
      case 7: return in7a[gi] ? alpha : alpha_bar;
      default: throw invariant_violation("unexpected element order in GL(3,F2)");
    }
  };

  // One copy of the rank-3 summand inside the regular representation:
  // q = (sum_g chi(g^-1) g) applied to the average over a cyclic <c4> of
  // order 4 (whose restriction contains the trivial character once); the
  // left translates of q span a rank-3 lattice.
  int c4 = -1;
  for (int i = 0; i < n; ++i)
    if (order[i] == 4) {
      c4 = i;
      break;
    }
  std::vector<u64> q(n, 0);
  for (int x = 0; x < n; ++x) {
    u64 acc = 0;
    int y = 0;  // identity
    for (int j = 0; j < 4; ++j) {
      acc = (acc + chi(mul(y, inv[x]))) & msk;
      y = mul(y, c4);
    }
    q[x] = acc;
  }
  std::vector<std::vector<u64>> cols;
  for (int g = 0; g < n; ++g) {
    std::vector<u64> col(n);
    for (int x = 0; x < n; ++x) col[x] = q[mul(inv[g], x)];
    cols.push_back(std::move(col));
  }
  SaturatedSpan span = saturate_columns_mod2k(std::move(cols), n, K, k + 2);
  check(span.basis.size() == 3, "the projected module has rank 3");

  // generators of GL(3,F2): the chosen order-7 element plus the first
  // involution generating together with it
  int g2 = -1;
  for (int i = 0; i < n && g2 < 0; ++i) {
    if (order[i] != 2) continue;
    std::vector<char> seen(n, 0);
    std::deque<int> bfs{0};
    seen[0] = 1;
    int cnt = 1;
    while (!bfs.empty()) {
      int cur = bfs.front();
      bfs.pop_front();
      for (int h : {t7, i}) {
        int nx = mul(cur, h);
        if (!seen[nx]) {
          seen[nx] = 1;
          ++cnt;
          bfs.push_back(nx);
        }
      }
    }
    if (cnt == n) g2 = i;
  }
  check(g2 >= 0, "found a generating pair");

  auto restrict_to_span = [&](int g) {
    // solve span * X = (left translation by g) * span, column by column
    TwoAdicMatrix x(3, span.precision);
    u64 msk2 = mask_of(span.precision);
    for (int j = 0; j < 3; ++j) {
      std::vector<u64> img(n);
      for (int t = 0; t < n; ++t) img[t] = span.basis[j][mul(inv[g], t)] & msk2;
      auto coord = coords_in_span(span, img);
      check(coord.has_value(), "the summand is stable under the group");
      for (int i = 0; i < 3; ++i) x.at(i, j) = (*coord)[i];
    }
    return x;
  };

  DI4Data out;
  out.precision = k;
  out.generators.push_back(restrict_to_span(t7).truncated(k));
  out.generators.push_back(restrict_to_span(g2).truncated(k));
  out.generators.push_back(TwoAdicMatrix::identity(3, k).negated());
  Report rep = di4_verify(out);
  if (!rep.ok()) throw invariant_violation("computed DI(4) data failed verification");
  return out;
}

CompleteMarkedLattice di4_lattice(const DI4Data& d) {
  auto g = TwoAdicGroup::generate(d.generators);
  CompleteMarkedLattice out;
  out.group = g;
  out.precision = d.precision;
  for (size_t s = 0; s < g->reflections().size(); ++s)
    out.marking.push_back(two_adic_marking(*g, static_cast<int>(s)));
  return out;
}

Report di4_verify(const DI4Data& d) {
  Report rep;
  TwoAdicGroupPtr g;
  try {
    // a corrupted fixture usually generates an unbounded group; cap tightly
    g = TwoAdicGroup::generate(d.generators, 2000);
  } catch (const value_error&) {
    rep.add("order-336", false, "generated group exceeds order 2000");
    return rep;
  }
  rep.add("order-336", g->size() == 336, "order " + std::to_string(g->size()));
  // -I present
  bool neg = g->index_of(TwoAdicMatrix::identity(3, d.precision).negated()) >= 0;
  rep.add("contains-minus-identity", neg);
  // mod-2 image has order 168
  std::map<std::string, char> mod2;
  for (int i = 0; i < g->size(); ++i) mod2[g->mat(i).truncated(1).key()] = 1;
  rep.add("mod2-image-168", mod2.size() == 168, std::to_string(mod2.size()) + " classes");
  // mod-2 action irreducible: no invariant line or plane over F2
  {
    bool invariant_subspace = false;
    for (unsigned sub = 1; sub < 127 && !invariant_subspace; ++sub) {
      // subsets of the 7 nonzero vectors closed under sums: subspaces minus 0
      unsigned members = sub;
      bool is_subspace = true;
      for (unsigned v = 1; v < 8 && is_subspace; ++v)
        for (unsigned w = 1; w < 8 && is_subspace; ++w)
          if ((members >> (v - 1) & 1) && (members >> (w - 1) & 1) && v != w)
            if (!((members >> ((v ^ w) - 1)) & 1)) is_subspace = false;
      if (!is_subspace) continue;
      int count = __builtin_popcount(members);
      if (count != 1 && count != 3) continue;  // proper nonzero subspaces
      bool stable = true;
      for (int i = 0; i < g->size() && stable; ++i) {
        // act mod 2 on the member vectors
        for (unsigned v = 1; v < 8 && stable; ++v) {
          if (!((members >> (v - 1)) & 1)) continue;
          std::vector<u64> vec{v & 1, (v >> 1) & 1, (v >> 2) & 1};
          auto img = g->mat(i).apply(vec);
          unsigned w = static_cast<unsigned>((img[0] & 1) | ((img[1] & 1) << 1) |
                                             ((img[2] & 1) << 2));
          if (w == 0 || !((members >> (w - 1)) & 1)) stable = false;
        }
      }
      if (stable) invariant_subspace = true;
    }
    rep.add("mod2-irreducible", !invariant_subspace);
  }
  // every reflection nontrivial mod 2, 21 of them, one marking each
  int nrefl = static_cast<int>(g->reflections().size());
  bool all_nontrivial = true;
  for (int s = 0; s < nrefl; ++s)
    if (g->reflection_trivial_mod2(s)) all_nontrivial = false;
  rep.add("reflections-21", nrefl == 21, std::to_string(nrefl) + " reflections");
  rep.add("reflections-nontrivial-mod2", all_nontrivial);
  bool single_markings = true;
  for (int s = 0; s < nrefl; ++s)
    if (two_adic_marking_vectors(*g, s).size() != 1) single_markings = false;
  rep.add("unique-marking-family", single_markings);
  return rep;
}

std::string di4_fixture_text(const DI4Data& d) {
  std::ostringstream out;
  out << "di4-fixture precision " << d.precision << "\n";
  for (const auto& m : d.generators) {
    out << "matrix\n";
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) out << (j ? " " : "") << m.at(i, j);
      out << "\n";
    }
  }
  return out.str();
}

DI4Data di4_parse_fixture(const std::string& text) {
  std::istringstream in(text);
  std::string word;
  in >> word;
  if (word != "di4-fixture") throw value_error("not a di4 fixture");
  in >> word;
  if (word != "precision") throw value_error("di4 fixture: missing precision header");
  DI4Data d;
  in >> d.precision;
  for (int m = 0; m < 3; ++m) {
    in >> word;
    if (word != "matrix") throw value_error("di4 fixture: expected 3 matrices");
    TwoAdicMatrix mat(3, d.precision);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        u64 v;
        if (!(in >> v)) throw value_error("di4 fixture: truncated matrix");
        mat.at(i, j) = v & mask_of(d.precision);
      }
    d.generators.push_back(std::move(mat));
  }
  return d;
}

// the committed fixture, embedded at build time
extern const char* kDi4FixtureText;

DI4Data di4_data(int k) {
  if (k < 3) throw value_error("di4_data: precision must be at least 3");
  std::string text;
  if (const char* dir = std::getenv("MRT_FIXTURE_DIR")) {
    std::ifstream in(std::string(dir) + "/di4_fixture.txt");
    if (!in) throw value_error("MRT_FIXTURE_DIR does not contain di4_fixture.txt");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  } else {
    text = kDi4FixtureText;
  }
  DI4Data d = di4_parse_fixture(text);
  if (d.precision < k)
    throw precision_error("di4 fixture precision " + std::to_string(d.precision) +
                          " below requested " + std::to_string(k));
  DI4Data out;
  out.precision = k;
  for (const auto& m : d.generators) out.generators.push_back(m.truncated(k));
  Report rep = di4_verify(out);
  if (!rep.ok()) {
    std::string bad;
    for (const auto& item : rep.items)
      if (!item.pass) bad += (bad.empty() ? "" : ", ") + item.name;
    throw invariant_violation("DI4 fixture failed verification: " + bad);
  }
  return out;
}

// ---- classification ----

PartitionResult reflection_partition(const CompleteMarkedLattice& c) {
  const auto& g = *c.group;
  int ns = static_cast<int>(g.reflections().size());
  int r = g.dim(), k = g.precision();
  PartitionResult out;
  if (ns == 0) {
    out.mod2_decomposes = r == 0;
    out.detail = r == 0 ? "" : "no reflections but positive rank";
    return out;
  }
  // components of the noncommuting graph
  std::vector<int> comp(ns, -1);
  int nc = 0;
  for (int s = 0; s < ns; ++s) {
    if (comp[s] >= 0) continue;
    std::deque<int> q{s};
    comp[s] = nc;
    while (!q.empty()) {
      int cur = q.front();
      q.pop_front();
      for (int t = 0; t < ns; ++t) {
        if (comp[t] >= 0) continue;
        int a = g.reflections()[cur], b = g.reflections()[t];
        if (g.mul(a, b) != g.mul(b, a)) {
          comp[t] = nc;
          q.push_back(t);
        }
      }
    }
    ++nc;
  }
  for (int ci = 0; ci < nc; ++ci) {
    LatticeFactor f;
    std::vector<int> elems;
    for (int s = 0; s < ns; ++s)
      if (comp[s] == ci) {
        f.sigma.push_back(s);
        elems.push_back(g.reflections()[s]);
      }
    f.group_elements = g.subgroup_closure(elems);
    f.order = static_cast<long long>(f.group_elements.size());
    f.reflection_count = static_cast<int>(f.sigma.size());
    // factor lattice: saturated span of the component's marking vectors
    std::vector<std::vector<u64>> cols;
    for (int s : f.sigma) {
      std::vector<u64> b = two_adic_marking(g, s).b;
      b.resize(r);
      cols.push_back(std::move(b));
    }
    f.lattice = saturate_columns_mod2k(std::move(cols), r, k, 3);
    f.rank = static_cast<int>(f.lattice.basis.size());
    // restrict every factor element to the factor basis, aligned with
    // group_elements so factor indices map back to the ambient group
    for (int e : f.group_elements) {
      TwoAdicMatrix x(f.rank, f.lattice.precision);
      for (int j = 0; j < f.rank; ++j) {
        std::vector<u64> img = g.mat(e).apply(f.lattice.basis[j]);
        auto coord = coords_in_span(f.lattice, img);
        check(coord.has_value(), "factor lattice is stable under its group");
        for (int i = 0; i < f.rank; ++i) x.at(i, j) = (*coord)[i];
      }
      f.restricted_gens.push_back(std::move(x));
    }
    out.factors.push_back(std::move(f));
  }
  // Nakayama check: the stacked factor bases must be invertible mod 2
  int total = 0;
  for (const auto& f : out.factors) total += f.rank;
  if (total != r) {
    out.mod2_decomposes = false;
    out.detail = "factor ranks sum to " + std::to_string(total) + " of " + std::to_string(r) +
                 " (central part is out of scope for the splitting check)";
    return out;
  }
  std::vector<std::vector<u64>> stacked;
  for (const auto& f : out.factors)
    for (const auto& b : f.lattice.basis) stacked.push_back(b);
  // invertible mod 2 <=> saturation at 1 bit of precision keeps r columns
  // with no divisions; test by rank over F2
  std::vector<unsigned> rows(r, 0);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) rows[i] |= static_cast<unsigned>(stacked[j][i] & 1) << j;
  int rank2 = 0;
  for (int col = 0; col < r; ++col) {
    int piv = -1;
    for (int i = rank2; i < r; ++i)
      if ((rows[i] >> col) & 1) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank2], rows[piv]);
    for (int i = 0; i < r; ++i)
      if (i != rank2 && ((rows[i] >> col) & 1)) rows[i] ^= rows[rank2];
    ++rank2;
  }
  out.mod2_decomposes = rank2 == r;
  if (!out.mod2_decomposes) out.detail = "stacked factor bases are singular mod 2";
  return out;
}

FactorTag classify_factor(const LatticeFactor& f) {
  FactorTag tag;
  if (f.order == 336 && f.rank == 3) {
    // mod-2 action irreducible with image of order 168
    auto g = TwoAdicGroup::generate(f.restricted_gens);
    DI4Data d;
    d.precision = g->precision();
    d.generators = f.restricted_gens;
    Report rep = di4_verify(d);
    bool ok = true;
    for (const auto& item : rep.items)
      if (!item.pass) ok = false;
    if (ok) {
      tag.di4 = true;
      return tag;
    }
  }
  struct Row {
    const char* name;
    long long order;
    int rank, nrefl;
  };
  static const Row table[] = {{"A1", 2, 1, 1},    {"A2", 6, 2, 3},   {"B2", 8, 2, 4},
                              {"G2", 12, 2, 6},   {"A3", 24, 3, 6},  {"B3", 48, 3, 9},
                              {"A4", 120, 4, 10}, {"D4", 192, 4, 12}, {"B4", 384, 4, 16},
                              {"F4", 1152, 4, 24}};
  for (const auto& row : table)
    if (row.order == f.order && row.rank == f.rank && row.nrefl == f.reflection_count) {
      tag.coxeter_name = row.name;
      return tag;
    }
  throw value_error("factor matches no irreducible Weyl group (order " + std::to_string(f.order) +
                    ", rank " + std::to_string(f.rank) + ", " +
                    std::to_string(f.reflection_count) + " reflections)");
}

MarkedReflectionLattice coxeterize(const CompleteMarkedLattice& c, const LatticeFactor& f,
                                   const FactorTag& tag) {
  if (tag.di4) throw value_error("coxeterize applies to Coxeter-type factors only");
  // integral model of the same type (the simply connected catalog form)
  std::string name = tag.coxeter_name;
  CatalogEntry model = build_entry(name == "G2" || name == "F4" ? name : name + "-sc");
  const auto& gm = *model.lattice.group;
  auto factor_group = TwoAdicGroup::generate(f.restricted_gens);
  check(static_cast<long long>(gm.size()) == f.order, "matched type has the right order");
  int r = f.rank, k = factor_group->precision();
  // factor elements back to the ambient group (for the marking family)
  std::vector<int> to_parent(factor_group->size(), -1);
  for (size_t i = 0; i < f.restricted_gens.size(); ++i)
    to_parent[factor_group->index_of(f.restricted_gens[i])] = f.group_elements[i];

  SimpleSystem ss = find_simple_system(model.lattice);
  int l = ss.rank();
  const auto& refl2 = factor_group->reflections();

  // all tuples of 2-adic reflections matching the model's Coxeter matrix and
  // generating the factor; the first tuple carrying a unimodular intertwiner
  // wins (pairings twisted by a diagram flip can fail at a 2-power index)
  std::vector<std::vector<int>> tuples;
  std::vector<int> chosen;
  std::function<void(int)> search = [&](int pos) {
    if (pos == l) {
      std::vector<int> elems;
      for (int s : chosen) elems.push_back(refl2[s]);
      if (static_cast<int>(factor_group->subgroup_closure(elems).size()) == factor_group->size())
        tuples.push_back(chosen);
      return;
    }
    for (int s = 0; s < static_cast<int>(refl2.size()); ++s) {
      bool used = false;
      for (int t : chosen) used = used || t == s;
      if (used) continue;
      bool ok = true;
      for (int q = 0; q < pos && ok; ++q) {
        int prod = factor_group->mul(refl2[chosen[q]], refl2[s]);
        int order = 1, x = prod;
        while (x != factor_group->id()) {
          x = factor_group->mul(x, prod);
          ++order;
        }
        if (order != ss.coxeter[q][pos]) ok = false;
      }
      if (!ok) continue;
      chosen.push_back(s);
      search(pos + 1);
      chosen.pop_back();
    }
  };
  search(0);
  check(!tuples.empty(), "found Coxeter generators in the 2-adic factor");

  Int mod = Int(1) << k;
  std::optional<TwoAdicMatrix> intertwiner;
  std::vector<int> pick(l, -1);
  for (const auto& tuple : tuples) {
    for (int unit_pos = 0; unit_pos < r * r && !intertwiner; ++unit_pos) {
      LinearSystem sys(r * r, mod);
      for (int i = 0; i < l; ++i) {
        const IntMatrix& a = gm.mat(ss.simples[i]);
        const TwoAdicMatrix& b = factor_group->mat(refl2[tuple[i]]);
        for (int row = 0; row < r; ++row)
          for (int col = 0; col < r; ++col) {
            IntVec coeffs(r * r, 0);
            // (phi a - b phi)_{row,col} = 0
            for (int t = 0; t < r; ++t) {
              coeffs[row * r + t] += a.at(t, col);
              coeffs[t * r + col] -= Int(static_cast<unsigned long>(b.at(row, t)));
            }
            sys.add_row(std::move(coeffs), 0);
          }
      }
      IntVec unit_row(r * r, 0);
      unit_row[unit_pos] = 1;
      sys.add_row(std::move(unit_row), 1);
      auto sol = sys.solve();
      if (!sol) continue;
      IntMatrix phi_int(r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) phi_int.at(i, j) = fmod((*sol)[i * r + j], mod);
      if (fmod(phi_int.det(), 2) != 1) continue;
      TwoAdicMatrix phi(r, k);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) phi.at(i, j) = phi_int.at(i, j).get_ui() & mask_of(k);
      intertwiner = phi;
      for (int i = 0; i < l; ++i) pick[i] = refl2[tuple[i]];
    }
    if (intertwiner) break;
  }
  check(intertwiner.has_value(), "reflection representations are equivalent over Z2");
  const TwoAdicMatrix& phi = *intertwiner;

  // phi is invertible mod 2^k, so the pullback of the factor lattice is the
  // model lattice itself and the action transports on the nose; verify the
  // conjugation on the generators
  for (int i = 0; i < l; ++i) {
    TwoAdicMatrix lhs = phi * TwoAdicMatrix::reduce(gm.mat(ss.simples[i]), k);
    TwoAdicMatrix rhs = factor_group->mat(pick[i]) * phi;
    check(lhs == rhs, "intertwiner conjugates the model onto the factor");
  }

  // markings: per class, pick the integral option whose image under phi has
  // the same 2-adic scale as the input marking of the matched reflection
  std::vector<int> choice;
  for (const auto& cls : gm.reflection_classes()) {
    int rep_elem = gm.reflections()[cls.rep];
    auto options = markings_of(gm.mat(rep_elem));
    if (options.size() == 1) {
      choice.push_back(0);
      continue;
    }
    TwoAdicMatrix image = phi * TwoAdicMatrix::reduce(gm.mat(rep_elem), k);
    int target = -1;
    for (int s = 0; s < static_cast<int>(refl2.size()); ++s)
      if (factor_group->mat(refl2[s]) * phi == image) target = s;
    check(target >= 0, "conjugated reflection lies in the factor");
    // input marking of the matched reflection, in factor coordinates
    int parent_elem = to_parent[refl2[target]];
    check(parent_elem >= 0, "factor reflections map back to the ambient group");
    int parent_sigma = c.group->sigma_index(parent_elem);
    check(parent_sigma >= 0, "ambient image is a reflection");
    const TwoAdicMarking& ambient_mk = c.marking[parent_sigma];
    int p = std::min(ambient_mk.precision, f.lattice.precision);
    std::vector<u64> b_ambient(ambient_mk.b.begin(), ambient_mk.b.end());
    auto factor_b = coords_in_span(f.lattice, b_ambient);
    check(factor_b.has_value(), "input marking lies in the factor lattice");
    int v_mk = p;
    for (int i = 0; i < r; ++i) v_mk = std::min(v_mk, val2((*factor_b)[i] & mask_of(p), p));
    int best = -1;
    for (size_t o = 0; o < options.size(); ++o) {
      std::vector<u64> b(r);
      for (int i = 0; i < r; ++i) b[i] = fmod(options[o].b[i], mod).get_ui();
      std::vector<u64> image_b = phi.apply(b);
      int v_img = p;
      for (int i = 0; i < r; ++i) v_img = std::min(v_img, val2(image_b[i] & mask_of(p), p));
      if (v_img == v_mk) best = static_cast<int>(o);
    }
    check(best >= 0, "marking scales match across the descent");
    choice.push_back(best);
  }
  MarkedReflectionLattice out = marked_lattice_from_class_choices(model.lattice.group, choice);
  return out;
}

// ---- discrete normalizer extension ----

TwoAdicGroupView::TwoAdicGroupView(TwoAdicGroupPtr g) : g_(std::move(g)) {
  for (const auto& cls : g_->reflection_classes()) {
    TwoAdicMarking mk = two_adic_marking(*g_, cls.rep);
    axes_.push_back(mk.b);
    axis_precision_.push_back(mk.precision);
  }
}

int TwoAdicGroupView::axis_sign(int g, int cls) const {
  int p = axis_precision_[cls];
  u64 msk = mask_of(p);
  std::vector<u64> img = g_->mat(g).apply(axes_[cls]);
  bool plus = true, minus = true;
  for (size_t i = 0; i < img.size(); ++i) {
    if (((img[i] - axes_[cls][i]) & msk) != 0) plus = false;
    if (((img[i] + axes_[cls][i]) & msk) != 0) minus = false;
  }
  if (plus) return 1;
  if (minus) return -1;
  return 0;
}

TorusElement TwoAdicGroupView::act_torus(int g, const TorusElement& t) const {
  int r = g_->dim();
  std::vector<Rat> out(r, Rat(0));
  const TwoAdicMatrix& m = g_->mat(g);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (t.c[j] == 0) continue;
      Int den = t.c[j].get_den();
      if (!is_two_power(den)) throw value_error("2-discrete torus element has a non-2-power denominator");
      int bits = static_cast<int>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
      if (bits >= g_->precision())
        throw precision_error("torus action needs more precision than the group carries");
      Int entry = Int(static_cast<unsigned long>(m.at(i, j) & mask_of(g_->precision())));
      out[i] += Rat(entry) * t.c[j];
    }
  return reduce_mod1(std::move(out));
}

std::vector<TorusElement> discrete_markings(const CompleteMarkedLattice& c) {
  std::vector<TorusElement> h;
  int r = c.group->dim();
  for (const auto& mk : c.marking) {
    std::vector<Rat> v(r, Rat(0));
    for (int i = 0; i < r; ++i) v[i] = Rat(Int(static_cast<unsigned long>(mk.b[i] & 1)), 2);
    h.push_back(reduce_mod1(std::move(v)));
  }
  return h;
}

NormalizerExtension discrete_normalizer_extension(const CompleteMarkedLattice& c) {
  auto view = std::make_shared<TwoAdicGroupView>(c.group);
  return NormalizerExtension(view, discrete_markings(c));
}

}  // namespace mrt

#include "mrt/matrix_group.hpp"

#include <algorithm>
#include <deque>

namespace mrt {

bool is_reflection(const IntMatrix& m) {
  Int d = m.det();
  if (d != 1 && d != -1) throw value_error("is_reflection: matrix is not invertible over Z");
  if ((m * m).is_identity() == false) return false;
  return m.trace() == m.dim() - 2;
}

bool is_trivial_mod2(const IntMatrix& m) { return m.is_identity_mod(2); }

std::shared_ptr<const FiniteMatrixGroup> FiniteMatrixGroup::generate(
    const std::vector<IntMatrix>& gens, long long cap) {
  if (gens.empty()) throw value_error("generate: need at least one generator");
  int dim = gens[0].dim();
  for (const auto& g : gens) {
    if (g.dim() != dim) throw value_error("generate: generators of mixed dimension");
    Int d = g.det();
    if (d != 1 && d != -1) throw value_error("generate: generator not invertible over Z");
  }

  std::vector<IntMatrix> elems;
  std::unordered_map<std::string, int> seen;
  std::deque<int> queue;
  auto push = [&](const IntMatrix& m) -> int {
    std::string k = m.key();
    auto it = seen.find(k);
    if (it != seen.end()) return it->second;
    int idx = static_cast<int>(elems.size());
    if (static_cast<long long>(idx) >= cap)
      throw value_error("generate: group size cap exceeded (cap=" + std::to_string(cap) +
                        "); the generators may span an infinite group");
    elems.push_back(m);
    seen.emplace(std::move(k), idx);
    queue.push_back(idx);
    return idx;
  };
  push(IntMatrix::identity(dim));
  for (const auto& g : gens) push(g);
  while (!queue.empty()) {
    IntMatrix cur = elems[queue.front()];
    queue.pop_front();
    for (const auto& g : gens) push(cur * g);
  }

  std::sort(elems.begin(), elems.end());
  auto grp = std::shared_ptr<FiniteMatrixGroup>(new FiniteMatrixGroup());
  grp->dim_ = dim;
  grp->elems_ = std::move(elems);
  for (int i = 0; i < grp->size(); ++i) grp->index_.emplace(grp->elems_[i].key(), i);
  for (const auto& g : gens) grp->gens_.push_back(grp->index_.at(g.key()));
  grp->build_tables();
  return grp;
}

void FiniteMatrixGroup::build_tables() {
  int n = size();
  id_ = index_.at(IntMatrix::identity(dim_).key());
  inv_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (inv_[i] >= 0) continue;
    int j = index_of(elems_[i].inverse_unimodular());
    check(j >= 0, "group closure is missing an inverse");
    inv_[i] = j;
    inv_[j] = i;
  }
  constexpr int kTableLimit = 512;
  if (n <= kTableLimit) {
    mult_.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int k = index_of(elems_[i] * elems_[j]);
        check(k >= 0, "group closure is not closed under products");
        mult_[i][j] = k;
      }
  } else {
    mult_memo_.resize(n);
  }

  sigma_of_elem_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const IntMatrix& m = elems_[i];
    if (m.trace() == dim_ - 2 && (m * m).is_identity()) {
      sigma_of_elem_[i] = static_cast<int>(refl_.size());
      refl_.push_back(i);
      refl_mod2_.push_back(m.is_identity_mod(2) ? 1 : 0);
    }
  }

  // conjugacy classes of reflections
  int ns = static_cast<int>(refl_.size());
  class_of_.assign(ns, -1);
  for (int s = 0; s < ns; ++s) {
    if (class_of_[s] >= 0) continue;
    int ci = static_cast<int>(classes_.size());
    ReflectionClass cls;
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

int FiniteMatrixGroup::index_of(const IntMatrix& m) const {
  auto it = index_.find(m.key());
  return it == index_.end() ? -1 : it->second;
}

int FiniteMatrixGroup::mul(int a, int b) const {
  if (!mult_.empty()) return mult_[a][b];
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto& memo = mult_memo_[a];
    auto it = memo.find(b);
    if (it != memo.end()) return it->second;
  }
  int r = index_of(elems_[a] * elems_[b]);
  check(r >= 0, "group closure is not closed under products");
  std::lock_guard<std::mutex> lock(memo_mutex_);
  mult_memo_[a].emplace(b, r);
  return r;
}

int FiniteMatrixGroup::order_of(int a) const {
  int x = a, n = 1;
  while (x != id_) {
    x = mul(x, a);
    ++n;
  }
  return n;
}

int FiniteMatrixGroup::sigma_index(int elem) const { return sigma_of_elem_[elem]; }

int FiniteMatrixGroup::conj_sigma(int g, int sigma) const {
  int t = sigma_of_elem_[conj(g, refl_[sigma])];
  check(t >= 0, "conjugate of a reflection must be a reflection");
  return t;
}

std::vector<int> FiniteMatrixGroup::centralizer(int x) const {
  std::vector<int> c;
  for (int g = 0; g < size(); ++g)
    if (mul(g, x) == mul(x, g)) c.push_back(g);
  return c;
}

std::vector<int> FiniteMatrixGroup::subgroup_closure(const std::vector<int>& gens) const {
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

bool FiniteMatrixGroup::generated_by_reflections() const {
  return static_cast<int>(subgroup_closure(refl_).size()) == size();
}

std::vector<int> FiniteMatrixGroup::small_generating_set(const std::vector<int>& elements) const {
  std::vector<int> gens;
  std::vector<int> have{id_};
  for (int e : elements) {
    if (std::binary_search(have.begin(), have.end(), e)) continue;
    gens.push_back(e);
    have = subgroup_closure(gens);
    std::sort(have.begin(), have.end());
    if (have.size() == elements.size()) break;
  }
  return gens;
}

}  // namespace mrt

#pragma once

// Finite groups of integer matrices: closure generation with a size cap,
// deterministic element ordering, and the reflection bookkeeping (classes,
// centralizers) the extension calculus is built on.

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "mrt/int_matrix.hpp"

namespace mrt {

inline constexpr long long kDefaultGroupCap = 2'000'000;

class FiniteMatrixGroup {
 public:
  // Closure of the generators under multiplication. Elements end up sorted
  // lexicographically on their entry sequences; indices refer to that order.
  static std::shared_ptr<const FiniteMatrixGroup> generate(const std::vector<IntMatrix>& gens,
                                                           long long cap = kDefaultGroupCap);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elems_.size()); }
  int id() const { return id_; }
  const IntMatrix& mat(int i) const { return elems_[i]; }
  const std::vector<int>& generators() const { return gens_; }

  int index_of(const IntMatrix& m) const;  // -1 if not an element
  int mul(int a, int b) const;
  int inv(int a) const { return inv_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }
  int order_of(int a) const;

  // Reflections in ascending element order; the position of a reflection in
  // this list is its Sigma index.
  const std::vector<int>& reflections() const { return refl_; }
  int sigma_index(int elem) const;  // -1 if elem is not a reflection
  bool reflection_trivial_mod2(int sigma) const { return refl_mod2_[sigma]; }

  // Conjugacy classes of reflections; classes are listed by their smallest
  // member, members as Sigma indices in ascending order.
  struct ReflectionClass {
    int rep;                  // Sigma index of the representative
    std::vector<int> members; // Sigma indices
  };
  const std::vector<ReflectionClass>& reflection_classes() const { return classes_; }
  int class_of(int sigma) const { return class_of_[sigma]; }
  int conj_sigma(int g, int sigma) const;  // Sigma index of g s g^-1

  std::vector<int> centralizer(int x) const;
  std::vector<int> subgroup_closure(const std::vector<int>& gens) const;
  bool generated_by_reflections() const;

  // smallest generating subset of the given sorted element list (greedy)
  std::vector<int> small_generating_set(const std::vector<int>& elements) const;

 private:
  FiniteMatrixGroup() = default;
  void build_tables();

  int dim_ = 0;
  int id_ = -1;
  std::vector<IntMatrix> elems_;
  std::vector<int> gens_;
  std::vector<int> inv_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> mult_;  // full table when the group is small
  // memoized products for large groups; guarded so concurrent reads are safe
  mutable std::vector<std::unordered_map<long long, int>> mult_memo_;
  mutable std::mutex memo_mutex_;
  std::vector<int> refl_;
  std::vector<char> refl_mod2_;
  std::vector<int> sigma_of_elem_;
  std::vector<ReflectionClass> classes_;
  std::vector<int> class_of_;
};

using GroupPtr = std::shared_ptr<const FiniteMatrixGroup>;

// Involution-plus-trace criterion, equivalent over Q to conjugacy with
// diag(-1,1,...,1). Throws value_error if m is not invertible over Z.
bool is_reflection(const IntMatrix& m);

bool is_trivial_mod2(const IntMatrix& m);

}  // namespace mrt

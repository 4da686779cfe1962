#pragma once

// 2-adic lattices at finite precision: entries are residues mod 2^k with the
// precision tracked through every computation, failing loudly when it runs
// out. Covers promotion of integral data, the exceptional rank-3 lattice with
// Weyl group Z/2 x GL(3,F2), the splitting of a marked complete reflection
// lattice into irreducible factors, their classification, and descent of
// Coxeter-type factors to integral forms.

#include <mutex>

#include "mrt/catalog.hpp"

namespace mrt {

using u64 = std::uint64_t;

inline u64 mask_of(int k) { return k >= 64 ? ~u64(0) : ((u64(1) << k) - 1); }

class TwoAdicMatrix {
 public:
  TwoAdicMatrix() : dim_(0), k_(0) {}
  TwoAdicMatrix(int dim, int k) : dim_(dim), k_(k), a_(static_cast<size_t>(dim) * dim, 0) {
    if (k < 1 || k > 62) throw value_error("precision must be between 1 and 62");
  }
  static TwoAdicMatrix identity(int dim, int k);
  static TwoAdicMatrix reduce(const IntMatrix& m, int k);

  int dim() const { return dim_; }
  int precision() const { return k_; }
  u64& at(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
  u64 at(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

  TwoAdicMatrix operator*(const TwoAdicMatrix& o) const;
  std::vector<u64> apply(const std::vector<u64>& v) const;
  TwoAdicMatrix negated() const;
  TwoAdicMatrix truncated(int k) const;
  bool is_identity() const;
  bool is_identity_mod2() const;
  u64 trace() const;

  bool operator==(const TwoAdicMatrix& o) const {
    return dim_ == o.dim_ && k_ == o.k_ && a_ == o.a_;
  }
  bool operator<(const TwoAdicMatrix& o) const { return a_ < o.a_; }
  std::string key() const;

 private:
  int dim_, k_;
  std::vector<u64> a_;
};

// residues scaled into [0, 2^k), helpers
int val2(u64 x, int k);  // 2-adic valuation, k for zero
u64 inv_mod2k(u64 odd, int k);

// Saturation of the span of the given columns in (Z/2^k)^n: a triangular
// basis with unit pivots, together with the precision that survives the
// divisions. Throws precision_error if fewer than `need` bits remain.
struct SaturatedSpan {
  std::vector<std::vector<u64>> basis;  // columns, unit pivot rows
  std::vector<int> pivot_rows;
  int precision = 0;  // entries of basis are valid mod 2^precision
};
SaturatedSpan saturate_columns_mod2k(std::vector<std::vector<u64>> cols, int n, int k, int need);

// coordinates of v in a saturated basis, mod 2^(span.precision); nullopt when
// v is not in the span at that precision
std::optional<std::vector<u64>> coords_in_span(const SaturatedSpan& span, std::vector<u64> v);

class TwoAdicGroup {
 public:
  static std::shared_ptr<const TwoAdicGroup> generate(const std::vector<TwoAdicMatrix>& gens,
                                                      long long cap = kDefaultGroupCap);
  int dim() const { return dim_; }
  int precision() const { return k_; }
  int size() const { return static_cast<int>(elems_.size()); }
  int id() const { return id_; }
  const TwoAdicMatrix& mat(int i) const { return elems_[i]; }
  int index_of(const TwoAdicMatrix& m) const;
  int mul(int a, int b) const;
  int inv(int a) const { return inv_[a]; }
  const std::vector<int>& reflections() const { return refl_; }
  int sigma_index(int elem) const { return sigma_of_elem_[elem]; }
  bool reflection_trivial_mod2(int sigma) const { return refl_mod2_[sigma]; }
  int conj_sigma(int g, int sigma) const;
  const std::vector<FiniteMatrixGroup::ReflectionClass>& reflection_classes() const {
    return classes_;
  }
  int class_of(int sigma) const { return class_of_[sigma]; }
  std::vector<int> subgroup_closure(const std::vector<int>& gens) const;

 private:
  TwoAdicGroup() = default;
  void build_tables();
  int dim_ = 0, k_ = 0, id_ = -1;
  std::vector<TwoAdicMatrix> elems_;
  std::vector<int> inv_;
  std::unordered_map<std::string, int> index_;
  mutable std::vector<std::unordered_map<long long, int>> memo_;
  mutable std::mutex memo_mutex_;
  std::vector<int> refl_;
  std::vector<char> refl_mod2_;
  std::vector<int> sigma_of_elem_;
  std::vector<FiniteMatrixGroup::ReflectionClass> classes_;
  std::vector<int> class_of_;
};

using TwoAdicGroupPtr = std::shared_ptr<const TwoAdicGroup>;

// strict marking mod 2^prec, unit-rescaled so the pivot entry of b is 1
struct TwoAdicMarking {
  std::vector<u64> b;
  std::vector<u64> beta;
  int precision = 0;
};

struct CompleteMarkedLattice {
  TwoAdicGroupPtr group;
  std::vector<TwoAdicMarking> marking;  // per Sigma index
  int precision = 0;
};

// axis of a 2-adic reflection: canonical generator of ker(1 + sigma),
// computed as the saturation of im(1 - sigma)
TwoAdicMarking two_adic_marking(const TwoAdicGroup& g, int sigma);

// markings of a reflection up to unit rescaling: {b, 2b} when trivial mod 2
std::vector<std::vector<u64>> two_adic_marking_vectors(const TwoAdicGroup& g, int sigma);

CompleteMarkedLattice promote(const MarkedReflectionLattice& m, int k);

CompleteMarkedLattice block_sum(const CompleteMarkedLattice& a, const CompleteMarkedLattice& b);

// ---- the exceptional rank-3 lattice ----

struct DI4Data {
  int precision = 0;
  std::vector<TwoAdicMatrix> generators;  // two GL(3,F2) lifts and -I
};

// character-projection construction: the rank-3 constituent of the 7-point
// permutation module, cut out with a Hensel lift of a root of x^2 + x + 2
DI4Data di4_compute(int k);

// from the committed fixture (or MRT_FIXTURE_DIR override), truncated to k
// and re-verified
DI4Data di4_data(int k);

CompleteMarkedLattice di4_lattice(const DI4Data& d);

Report di4_verify(const DI4Data& d);

std::string di4_fixture_text(const DI4Data& d);
DI4Data di4_parse_fixture(const std::string& text);

// ---- classification ----

struct LatticeFactor {
  std::vector<int> sigma;           // Sigma indices of the component
  std::vector<int> group_elements;  // closure of the component reflections
  SaturatedSpan lattice;            // basis of the factor lattice
  // the factor group in its own coordinates (restricted to the basis)
  std::vector<TwoAdicMatrix> restricted_gens;
  long long order = 0;
  int rank = 0;
  int reflection_count = 0;
};

struct PartitionResult {
  std::vector<LatticeFactor> factors;
  bool mod2_decomposes = false;  // (+) L_i -> L is an isomorphism mod 2
  std::string detail;
};

PartitionResult reflection_partition(const CompleteMarkedLattice& c);

struct FactorTag {
  bool di4 = false;
  std::string coxeter_name;  // when not di4
  std::string to_string() const { return di4 ? "DI4" : "Coxeter(" + coxeter_name + ")"; }
};

FactorTag classify_factor(const LatticeFactor& f);

// descent of a Coxeter-type factor to an integral marked reflection lattice;
// the returned lattice promotes back to the factor up to conjugation, which
// is verified before returning
MarkedReflectionLattice coxeterize(const CompleteMarkedLattice& c, const LatticeFactor& f,
                                   const FactorTag& tag);

// ---- 2-discrete normalizer extension ----

class TwoAdicGroupView final : public ExtensionGroup {
 public:
  explicit TwoAdicGroupView(TwoAdicGroupPtr g);
  int size() const override { return g_->size(); }
  int id() const override { return g_->id(); }
  int mul(int a, int b) const override { return g_->mul(a, b); }
  int inv(int a) const override { return g_->inv(a); }
  int rank() const override { return g_->dim(); }
  int num_reflections() const override { return static_cast<int>(g_->reflections().size()); }
  int reflection_elem(int sigma) const override { return g_->reflections()[sigma]; }
  int sigma_index(int elem) const override { return g_->sigma_index(elem); }
  int num_classes() const override { return static_cast<int>(g_->reflection_classes().size()); }
  int class_of(int sigma) const override { return g_->class_of(sigma); }
  int class_rep(int cls) const override { return g_->reflection_classes()[cls].rep; }
  int conj_sigma(int g, int sigma) const override { return g_->conj_sigma(g, sigma); }
  int axis_sign(int g, int cls) const override;
  long long rep_order_key(int g) const override { return g; }
  TorusElement act_torus(int g, const TorusElement& t) const override;
  const TwoAdicGroup& group() const { return *g_; }

 private:
  TwoAdicGroupPtr g_;
  std::vector<std::vector<u64>> axes_;
  std::vector<int> axis_precision_;
};

// markings h_sigma = b_sigma / 2 in the 2-discrete torus (Z/2^oo)^r
std::vector<TorusElement> discrete_markings(const CompleteMarkedLattice& c);

NormalizerExtension discrete_normalizer_extension(const CompleteMarkedLattice& c);

}  // namespace mrt

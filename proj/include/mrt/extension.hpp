#pragma once

// The three extensions of a reflection group W:
//   - the reflection extension by Z[Sigma], assembled from the canonical
//     centralizer extensions via induction with chosen coset representatives,
//   - the Tits extension inside Z[Sigma*] x| W generated by (s*, s),
//   - the normalizer extension by the torus, the pushforward of the
//     reflection extension along sigma |-> h_sigma.
// Cocycles are normalized; values are reproducible bit for bit.

#include <functional>
#include <memory>

#include "mrt/torus.hpp"
#include "mrt/words.hpp"

namespace mrt {

// What the extension calculus needs from a group: multiplication,
// reflection classes, and the sign of each centralizer element on the chosen
// axis of its class. Implemented by integer-matrix groups here and by 2-adic
// groups in two_adic.hpp.
class ExtensionGroup {
 public:
  virtual ~ExtensionGroup() = default;
  virtual int size() const = 0;
  virtual int id() const = 0;
  virtual int mul(int a, int b) const = 0;
  virtual int inv(int a) const = 0;
  virtual int rank() const = 0;
  virtual int num_reflections() const = 0;
  virtual int reflection_elem(int sigma) const = 0;
  virtual int sigma_index(int elem) const = 0;
  virtual int num_classes() const = 0;
  virtual int class_of(int sigma) const = 0;
  virtual int class_rep(int cls) const = 0;  // Sigma index
  virtual int conj_sigma(int g, int sigma) const = 0;
  // action of g on the axis of class cls: +1 fixed, -1 negated, 0 moved
  virtual int axis_sign(int g, int cls) const = 0;
  // preference key for coset representatives (smaller wins)
  virtual long long rep_order_key(int g) const = 0;
  virtual TorusElement act_torus(int g, const TorusElement& t) const = 0;
};

using ExtGroupPtr = std::shared_ptr<const ExtensionGroup>;

// View of a FiniteMatrixGroup; element indices are shared with the wrapped
// group. Representative preference is (length, index) when a simple system is
// supplied, plain index otherwise.
class LatticeGroupView final : public ExtensionGroup {
 public:
  LatticeGroupView(GroupPtr g, const SimpleSystem* ss = nullptr);
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
  long long rep_order_key(int g) const override;
  TorusElement act_torus(int g, const TorusElement& t) const override {
    return mrt::torus_act(g_->mat(g), t);
  }
  const FiniteMatrixGroup& group() const { return *g_; }
  const IntVec& axis(int cls) const { return axes_[cls]; }

 private:
  GroupPtr g_;
  std::vector<int> lengths_;  // empty if no simple system supplied
  std::vector<IntVec> axes_;  // canonical ker(1+rep) generator per class
};

// C = <t> x C_perp for the class representative t; axis is the canonical
// generator of ker(1 + t).
struct CentralizerSplitting {
  int cls = 0;
  int rep_sigma = 0;               // Sigma index of the representative
  std::vector<int> centralizer;    // element indices, ascending
  std::vector<int> perp;           // stabilizer of the axis, ascending
};

// Values of 2-cocycles over Z[Sigma] are small integer vectors indexed by
// the global Sigma order.
using SigmaVec = std::vector<long long>;

class ReflectionExtension {
 public:
  explicit ReflectionExtension(ExtGroupPtr g);
  const ExtensionGroup& group() const { return *g_; }
  SigmaVec value(int w1, int w2) const;  // normalized 2-cocycle over Z[Sigma]
  // value of the single-class summand over Z[Sigma_i]
  void accumulate_class_value(int cls, int w1, int w2, SigmaVec& out) const;
  const CentralizerSplitting& splitting(int cls) const { return split_[cls]; }
  int coset_rep(int cls, int member_pos) const { return rep_[cls][member_pos]; }

 private:
  bool eps(int g, int cls) const { return g_->axis_sign(g, cls) < 0; }
  ExtGroupPtr g_;
  std::vector<std::vector<int>> members_;     // per class: Sigma indices ascending
  std::vector<std::vector<int>> member_pos_;  // per class: Sigma index -> position or -1
  std::vector<std::vector<int>> rep_;         // per class: coset representative per position
  std::vector<CentralizerSplitting> split_;
};

CentralizerSplitting centralizer_splitting(const ExtensionGroup& g, int cls);

// ---- Tits extension: elements of Z[Sigma*] x| W ----

struct SemidirectElement {
  IntVec vec;  // over the Sigma* basis
  int w = 0;
};

SemidirectElement sd_identity(const FiniteMatrixGroup& g);
SemidirectElement sd_mul(const FiniteMatrixGroup& g, const SemidirectElement& a,
                         const SemidirectElement& b);
SemidirectElement sd_inv(const FiniteMatrixGroup& g, const SemidirectElement& a);

// the generators (s_i^*, s_i)
std::vector<SemidirectElement> tits_subgroup(const SimpleSystem& ss);

// product of generators along the word, and the closed form
// (sum of the reflection sequence, image); the two must agree.
SemidirectElement tits_word_element(const SimpleSystem& ss, const Word& w);

// cocycle of the section by lexicographically first minimal words, reported
// in the identification Z[Sigma] = 2 Z[Sigma*]; throws invariant_violation if
// a value falls outside 2 Z[Sigma*].
SigmaVec tits_cocycle_value(const SimpleSystem& ss, int w1, int w2);

// ---- normalizer extension ----

class NormalizerExtension {
 public:
  NormalizerExtension(ExtGroupPtr g, std::vector<TorusElement> h);
  const ExtensionGroup& group() const { return *g_; }
  ExtGroupPtr group_ptr() const { return g_; }
  const std::vector<TorusElement>& markings() const { return h_; }
  const ReflectionExtension& reflection_ext() const { return rho_; }
  TorusElement value(int w1, int w2) const;  // lies in the 2-torsion of T

 private:
  ExtGroupPtr g_;
  ReflectionExtension rho_;
  std::vector<TorusElement> h_;
};

NormalizerExtension normalizer_extension(ExtGroupPtr g, const MarkedReflectionTorus& t);

// multiplication in the group realized from a normalizer extension:
// (t1, w1)(t2, w2) = (t1 + w1 t2 + z(w1, w2), w1 w2)
struct NuElement {
  TorusElement t;
  int w = 0;
};
NuElement nu_mul(const NormalizerExtension& nu, const NuElement& a, const NuElement& b);
NuElement nu_inv(const NormalizerExtension& nu, const NuElement& a);

// Verifies the defining relations on section elements over the simple
// reflections: squares hit the markings, conjugation realizes the reflection
// action, and the two alternating products of length m_ij agree. If the
// plain (0, s_i) sections fail the braid family, a torus correction
// t_i in T^-(s_i) is solved for; the report records whether that was needed.
struct PresentationReport {
  Report report;
  bool corrected = false;
  std::vector<TorusElement> section;  // torus part of the q_i actually used
  bool ok() const { return report.ok(); }
};
PresentationReport presentation_check(const NormalizerExtension& nu, const SimpleSystem& ss);

// The square relation q_sigma^2 = h_sigma for every reflection; this is the
// class-level relation family available for non-Coxeter reflection groups.
Report reflection_square_check(const NormalizerExtension& nu);

// exhaustive normalized-2-cocycle identity check on all |W|^3 triples
bool cocycle_identity_holds(const ExtensionGroup& g,
                            const std::function<TorusElement(int, int)>& z);
bool sigma_cocycle_identity_holds(const ExtensionGroup& g,
                                  const std::function<SigmaVec(int, int)>& z);

}  // namespace mrt

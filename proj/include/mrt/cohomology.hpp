#pragma once

// Degree-2 cohomological calculus, posed entirely as explicit cocycle
// questions: Shapiro companions in both directions, double-coset restriction
// of induced classes, and coboundary witnesses found by exact linear algebra.
// H^2 groups are never computed abstractly.

#include "mrt/extension.hpp"
#include "mrt/linear.hpp"

namespace mrt {

// --- generic coboundary witness -------------------------------------------

struct GroupOps {
  int size = 0;
  int id = 0;
  std::function<int(int, int)> mul;
};

struct ModuleOps {
  int dim = 0;
  Int modulus;  // 0 solves over Z, otherwise over Z/modulus
  std::function<IntVec(int, const IntVec&)> act;
};

// d with  z(a,b) = d(a) + a d(b) - d(ab)  (componentwise, mod the modulus),
// or nullopt when z is not a coboundary. gens must generate the group.
std::optional<std::vector<IntVec>> coboundary_witness(const GroupOps& grp,
                                                      const std::vector<int>& gens,
                                                      const ModuleOps& mod,
                                                      const std::function<IntVec(int, int)>& z);

// --- specializations used throughout --------------------------------------

// witness for z1 - z2 over Z[Sigma] (permutation action); gens are element
// indices of the view's group
std::optional<std::vector<SigmaVec>> sigma_cohomologous_witness(
    const ExtensionGroup& g, const std::vector<int>& gens,
    const std::function<SigmaVec(int, int)>& z1, const std::function<SigmaVec(int, int)>& z2);

// witness for z1 - z2 with values in the 2-power torsion of the torus;
// cochains are allowed denominator 2^(v + 1 + extra_pow), v = v2(|W|)
std::optional<std::vector<TorusElement>> torus_cohomologous_witness(
    const ExtensionGroup& g, const std::vector<int>& gens, int extra_pow,
    const std::function<TorusElement(int, int)>& z1,
    const std::function<TorusElement(int, int)>& z2);

struct SplitCheckResult {
  bool split = false;
  std::vector<TorusElement> witness;  // per element when split
};

// Is the cocycle of the extension a coboundary? Decided at cochain
// denominator 2^(v+1) and re-verified one power wider.
SplitCheckResult split_check(const NormalizerExtension& nu);

// Splitness of the rank-one subextension over a reflection: the restriction
// of the cocycle to {1, sigma} with coefficients in the torsion of the
// negative axis circle T(1)*axis. Computed as a norm-quotient in that
// one-dimensional module; axis is the generator of ker(1 + sigma).
bool root_subextension_split(const NormalizerExtension& nu, int sigma, const IntVec& axis);

// --- Shapiro companions ----------------------------------------------------

struct CosetSpace {
  std::vector<int> ambient;   // the acting group A, ascending parent indices
  std::vector<int> subgroup;  // B <= A, ascending
  std::vector<int> reps;      // canonical representative per coset
  std::vector<int> coset_of;  // parent element -> coset index (-1 outside A)

  int num_cosets() const { return static_cast<int>(reps.size()); }
};

// cosets of subgroup inside ambient; representatives minimize order_key
// (element index when none supplied)
CosetSpace make_cosets(const FiniteMatrixGroup& g, std::vector<int> ambient,
                       std::vector<int> subgroup,
                       const std::vector<long long>* order_key = nullptr);

// induced cocycle over Z[A/B] from a B-cocycle over Z
IntVec shapiro_forward_value(const FiniteMatrixGroup& g, const CosetSpace& cs,
                             const std::function<Int(int, int)>& k, int w1, int w2);

// companion direction: pull back over B and project onto the trivial coset
Int shapiro_backward_value(const CosetSpace& cs, const std::function<IntVec(int, int)>& z, int h1,
                           int h2);

// --- double cosets ----------------------------------------------------------

struct DoubleCosetDecomp {
  std::vector<int> reps;                        // lexicographically least, ascending
  std::vector<std::vector<int>> intersections;  // K_a = K n x_a H x_a^-1
};

DoubleCosetDecomp double_cosets(const FiniteMatrixGroup& g, const std::vector<int>& K,
                                const std::vector<int>& H);

// v* u_#(k) vs (+)_a u^a_# v_a*(k), compared as K-cocycles over Z[G/H];
// the report carries the partition sanity checks and the witness verdict.
Report double_coset_formula_check(const FiniteMatrixGroup& g, const std::vector<int>& K,
                                  const std::vector<int>& H,
                                  const std::function<Int(int, int)>& k);

// the canonical centralizer 2-cocycle over Z for a reflection class: the
// pullback of the nonzero class of H^2(Z/2; Z) along C -> <t>
std::function<Int(int, int)> centralizer_class_cocycle(const LatticeGroupView& view, int cls);

// --- centralizer compatibility ----------------------------------------------

struct CentralizerCompatResult {
  bool applicable = false;  // W_A generated by its reflections
  bool cohomologous = false;
  std::string detail;
  GroupPtr fixer;  // the subgroup W_A as its own group
};

// nu(W_A) from the restricted marking family vs the pullback of nu(W) over
// W_A; the two must be cohomologous whenever W_A is reflection-generated.
CentralizerCompatResult centralizer_compat_check(const MarkedReflectionTorus& t,
                                                 const std::vector<TorusElement>& fixed_gens);

// elements of W fixing every given torus element
std::vector<int> torus_fixer(const FiniteMatrixGroup& g, const std::vector<TorusElement>& gens);

// rho(W) and the tits cocycle are cohomologous; returns the witness.
// Throws invariant_violation when no witness exists.
std::vector<SigmaVec> tits_vs_reflection(const ReflectionExtension& rho, const SimpleSystem& ss);

}  // namespace mrt

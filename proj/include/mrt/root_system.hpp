#pragma once

// Root systems in the integral sense: a finite root set with explicit coroot
// functionals subject to axioms (R1)-(R4), and the correspondence with marked
// reflection lattices.

#include <map>
#include <optional>
#include <string>

#include "mrt/reflection.hpp"

namespace mrt {

struct RootSystem {
  int rank = 0;
  std::vector<IntVec> roots;    // sorted lexicographically, no duplicates
  std::vector<IntVec> coroots;  // aligned with roots

  int root_index(const IntVec& r) const;
  void sort_canonical();
};

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::vector<CheckItem> items;
  bool ok() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  void add(const std::string& name, bool pass, const std::string& detail = "") {
    items.push_back({name, pass, detail});
  }
};

Report validate_root_system(const RootSystem& rs);

// Marked reflection lattice: markings aligned with group->reflections().
struct MarkedReflectionLattice {
  GroupPtr group;
  std::vector<StrictMarking> marking;

  const StrictMarking& marking_of_sigma(int sigma) const { return marking[sigma]; }
};

// W-equivariance and per-reflection validity of the family.
Report validate_marked_lattice(const MarkedReflectionLattice& m);

// Build the full equivariant family from a choice of marking on each
// conjugacy-class representative. choice[c] indexes into
// markings_of(class rep); throws value_error on an invalid choice.
MarkedReflectionLattice marked_lattice_from_class_choices(GroupPtr g, const std::vector<int>& choice);

// All equivariant marking families of the group, enumerated over per-class
// choices (2 per class trivial mod 2, 1 otherwise), in lexicographic choice
// order.
std::vector<MarkedReflectionLattice> all_marking_families(GroupPtr g);

RootSystem lattice_to_rootsystem(const MarkedReflectionLattice& m);
MarkedReflectionLattice rootsystem_to_lattice(const RootSystem& rs, long long cap = kDefaultGroupCap);

RootSystem dualize(const RootSystem& rs);

// 2^k with k = number of reflection classes trivial mod 2.
Int count_root_systems(const FiniteMatrixGroup& g);

// Integral form of a geometric root system. The roots live in Q^n; the
// reflection s_r(x) = x + h_r(x) r determines h_r rationally. The target
// lattice is given by a rational basis and must satisfy
// span_Z(roots) = L_min <= L <= L_max = { x : h_r(x) integral }.
RootSystem integral_form(const std::vector<std::vector<Rat>>& roots,
                         const std::vector<std::vector<Rat>>& lattice_basis);

bool same_marked_lattice(const MarkedReflectionLattice& a, const MarkedReflectionLattice& b);

}  // namespace mrt

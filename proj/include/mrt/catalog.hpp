#pragma once

// Built-in marked reflection lattices: the classical types at small rank in
// simply connected, adjoint and selected intermediate forms, plus the three
// rank-level models SU(2), SO(3) and U(2). Everything is constructed from
// explicit Cartan data; expected facts are re-derived by the extension
// calculus, not asserted.

#include "mrt/cohomology.hpp"
#include "mrt/torus.hpp"

namespace mrt {

struct CatalogEntry {
  std::string name;
  std::string cartan_type;  // "A1", "B2", ..., "A1xA1", "swap"
  int rank = 0;
  std::string form;  // "sc", "adjoint", "intermediate", "model"
  MarkedReflectionLattice lattice;
  // where the construction pins the answer: true = some root subextension is
  // nonsplit (equivalently a nonzero marking exists)
  std::optional<bool> expected_root_nonsplit;
};

std::vector<std::string> catalog_names();
bool is_catalog_name(const std::string& name);
CatalogEntry build_entry(const std::string& name);

// Propagate markings given on designated reflections (typically simples) to
// the whole group by equivariance; every reflection must be reached and the
// propagation must be path-independent.
MarkedReflectionLattice marked_lattice_from_seeds(GroupPtr g, const std::vector<int>& seed_elems,
                                                  const std::vector<StrictMarking>& seeds);

// Change of lattice: new_basis columns (rational, in current coordinates)
// span the new lattice; group action and markings must stay integral.
MarkedReflectionLattice relattice(const MarkedReflectionLattice& m,
                                  const std::vector<std::vector<Rat>>& new_basis);

// For simply connected entries: the simple roots form a lattice basis and the
// torus splits as the sum of the negative circles of the simples.
Report simply_connected_torus_splitting(const CatalogEntry& e);

struct NtModel {
  std::shared_ptr<LatticeGroupView> view;
  SimpleSystem ss;
  NormalizerExtension nu;
  // coboundary question for the full cocycle; solved when |W| is small or on
  // request (the witness search is quadratic in |W|)
  std::optional<SplitCheckResult> global_split;
  std::vector<bool> root_split_per_class;  // root subextension verdict per class
  bool any_root_nonsplit = false;
};

NtModel nt_model(const CatalogEntry& e, int global_split_limit = 256);

// block sum of two marked lattices (direct sum of lattices and groups)
MarkedReflectionLattice direct_sum(const MarkedReflectionLattice& a,
                                   const MarkedReflectionLattice& b);

}  // namespace mrt

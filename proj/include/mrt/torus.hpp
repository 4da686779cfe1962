#pragma once

// Torsion points of the torus T(1) (x) L: rational coordinate vectors taken
// mod Z, with canonical representatives in [0,1). Marked reflection tori and
// the bijection with marked reflection lattices (h = b/2).

#include "mrt/root_system.hpp"

namespace mrt {

struct TorusElement {
  std::vector<Rat> c;  // each entry reduced into [0,1)

  static TorusElement zero(int rank) { return TorusElement{std::vector<Rat>(rank, Rat(0))}; }
  int rank() const { return static_cast<int>(c.size()); }
  bool is_zero() const;
  bool operator==(const TorusElement& o) const { return c == o.c; }
  bool operator!=(const TorusElement& o) const { return !(*this == o); }
  bool operator<(const TorusElement& o) const;
};

TorusElement reduce_mod1(std::vector<Rat> v);
TorusElement torus_add(const TorusElement& a, const TorusElement& b);
TorusElement torus_sub(const TorusElement& a, const TorusElement& b);
TorusElement torus_neg(const TorusElement& a);
TorusElement torus_scale(const Int& k, const TorusElement& a);
TorusElement torus_act(const IntMatrix& w, const TorusElement& a);
// order of the element in T (lcm of denominators)
Int torus_order(const TorusElement& a);
// halves of a lattice vector, mod Z
TorusElement half_of(const IntVec& b);
std::string to_string(const TorusElement& t);

struct MarkedReflectionTorus {
  GroupPtr group;
  std::vector<TorusElement> h;  // aligned with group->reflections()
};

// x in the identity component of { t : sigma t = -t }, i.e. in T(1) (x) L^-(sigma).
bool strongly_negative(const IntMatrix& sigma, const TorusElement& x);

// The three marking conditions plus W-equivariance.
Report validate_marked_torus(const MarkedReflectionTorus& t);

MarkedReflectionTorus lattice_to_torus(const MarkedReflectionLattice& m);
MarkedReflectionLattice torus_to_lattice(const MarkedReflectionTorus& t);

}  // namespace mrt

#include "mrt/root_system.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mrt {

namespace {

bool lex_less(const IntVec& a, const IntVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace

int RootSystem::root_index(const IntVec& r) const {
  for (size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == r) return static_cast<int>(i);
  return -1;
}

void RootSystem::sort_canonical() {
  std::vector<size_t> order(roots.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return lex_less(roots[a], roots[b]); });
  std::vector<IntVec> r2, c2;
  for (size_t i : order) {
    r2.push_back(roots[i]);
    c2.push_back(coroots[i]);
  }
  roots = std::move(r2);
  coroots = std::move(c2);
}

Report validate_root_system(const RootSystem& rs) {
  Report rep;
  bool sane = rs.roots.size() == rs.coroots.size();
  for (const auto& r : rs.roots) sane = sane && static_cast<int>(r.size()) == rs.rank && !is_zero(r);
  for (const auto& c : rs.coroots) sane = sane && static_cast<int>(c.size()) == rs.rank;
  for (size_t i = 0; sane && i < rs.roots.size(); ++i)
    for (size_t j = i + 1; j < rs.roots.size(); ++j) sane = sane && rs.roots[i] != rs.roots[j];
  // negation closure with matching coroots is part of the stored-data contract
  for (size_t i = 0; sane && i < rs.roots.size(); ++i) {
    int j = rs.root_index(negated(rs.roots[i]));
    sane = sane && j >= 0 && rs.coroots[j] == negated(rs.coroots[i]);
  }
  rep.add("data", sane, sane ? "" : "roots/coroots malformed or not closed under negation");
  if (!sane) return rep;

  // (R1): roots and the common coroot kernel together span Q^rank
  {
    RowMatrix coroot_rows;
    for (const auto& c : rs.coroots) coroot_rows.push_back(c);
    std::vector<IntVec> kernel =
        coroot_rows.empty() ? std::vector<IntVec>() : kernel_basis(coroot_rows);
    RowMatrix span(rs.rank);
    for (int i = 0; i < rs.rank; ++i) {
      for (const auto& r : rs.roots) span[i].push_back(r[i]);
      for (const auto& k : kernel) span[i].push_back(k[i]);
      if (rs.roots.empty() && kernel.empty()) span[i].push_back(0);
    }
    int rk = rs.roots.empty() && kernel.empty() ? 0 : rank_of(span);
    if (rs.roots.empty()) rk = rs.rank;  // empty intersection is the whole lattice
    rep.add("R1", rk == rs.rank,
            rk == rs.rank ? "" : "roots plus coroot kernel span rank " + std::to_string(rk));
  }
  // (R2): n_r(r) = -2
  {
    bool ok = true;
    std::string det;
    for (size_t i = 0; i < rs.roots.size(); ++i)
      if (dot(rs.coroots[i], rs.roots[i]) != -2) {
        ok = false;
        det = "root " + to_string(rs.roots[i]);
        break;
      }
    rep.add("R2", ok, det);
  }
  // (R3): only +-1 multiples of a root are roots
  {
    bool ok = true;
    std::string det;
    for (size_t i = 0; ok && i < rs.roots.size(); ++i)
      for (size_t j = 0; ok && j < rs.roots.size(); ++j) {
        if (i == j) continue;
        // is roots[j] = k * roots[i] for an integer k != +-1?
        const IntVec &a = rs.roots[i], &b = rs.roots[j];
        int lead = -1;
        for (int t = 0; t < rs.rank; ++t)
          if (a[t] != 0) {
            lead = t;
            break;
          }
        if (b[lead] % a[lead] != 0) continue;
        Int k = b[lead] / a[lead];
        if (scaled(a, k) == b && k != 1 && k != -1) {
          ok = false;
          det = to_string(b) + " = " + k.get_str() + " * " + to_string(a);
        }
      }
    rep.add("R3", ok, det);
  }
  // (R4): t + n_r(t) r is a root
  {
    bool ok = true;
    std::string det;
    for (size_t i = 0; ok && i < rs.roots.size(); ++i)
      for (size_t j = 0; ok && j < rs.roots.size(); ++j) {
        IntVec image = rs.roots[j] + scaled(rs.roots[i], dot(rs.coroots[i], rs.roots[j]));
        if (rs.root_index(image) < 0) {
          ok = false;
          det = "reflection of " + to_string(rs.roots[j]) + " in " + to_string(rs.roots[i]);
        }
      }
    rep.add("R4", ok, det);
  }
  return rep;
}

Report validate_marked_lattice(const MarkedReflectionLattice& m) {
  Report rep;
  const auto& g = *m.group;
  bool gen = g.generated_by_reflections();
  rep.add("reflection-generated", gen);
  bool counts = m.marking.size() == g.reflections().size();
  rep.add("marking-per-reflection", counts);
  if (!counts) return rep;
  bool valid = true;
  std::string detail;
  for (size_t s = 0; s < m.marking.size(); ++s) {
    if (!marking_valid_for(g.mat(g.reflections()[s]), m.marking[s])) {
      valid = false;
      detail = "marking " + std::to_string(s);
      break;
    }
  }
  rep.add("marking-valid", valid, detail);
  bool equi = true;
  detail.clear();
  for (int w = 0; equi && w < g.size(); ++w)
    for (size_t s = 0; equi && s < m.marking.size(); ++s) {
      int t = g.conj_sigma(w, static_cast<int>(s));
      StrictMarking moved = conjugate_marking(g.mat(w), g.mat(g.inv(w)), m.marking[s]);
      if (!(moved == m.marking[t])) {
        equi = false;
        detail = "w=" + std::to_string(w) + " sigma=" + std::to_string(s);
      }
    }
  rep.add("marking-equivariant", equi, detail);
  return rep;
}

MarkedReflectionLattice marked_lattice_from_class_choices(GroupPtr g, const std::vector<int>& choice) {
  const auto& classes = g->reflection_classes();
  if (choice.size() != classes.size())
    throw value_error("marking choice count does not match reflection class count");
  int ns = static_cast<int>(g->reflections().size());
  std::vector<StrictMarking> marking(ns);
  std::vector<char> done(ns, 0);
  for (size_t c = 0; c < classes.size(); ++c) {
    int rep_sigma = classes[c].rep;
    auto options = markings_of(g->mat(g->reflections()[rep_sigma]));
    if (choice[c] < 0 || choice[c] >= static_cast<int>(options.size()))
      throw value_error("invalid marking choice for class " + std::to_string(c));
    marking[rep_sigma] = options[choice[c]];
    done[rep_sigma] = 1;
    for (int w = 0; w < g->size(); ++w) {
      int t = g->conj_sigma(w, rep_sigma);
      StrictMarking moved = conjugate_marking(g->mat(w), g->mat(g->inv(w)), marking[rep_sigma]);
      if (!done[t]) {
        marking[t] = moved;
        done[t] = 1;
      } else {
        check(marking[t] == moved, "marking propagation is path-independent");
      }
    }
  }
  for (int s = 0; s < ns; ++s) check(done[s], "every reflection receives a marking");
  return MarkedReflectionLattice{std::move(g), std::move(marking)};
}

std::vector<MarkedReflectionLattice> all_marking_families(GroupPtr g) {
  const auto& classes = g->reflection_classes();
  std::vector<int> limits;
  for (const auto& cls : classes) {
    int rep_elem = g->reflections()[cls.rep];
    limits.push_back(g->reflection_trivial_mod2(cls.rep) ? 2 : 1);
    (void)rep_elem;
  }
  std::vector<MarkedReflectionLattice> out;
  std::vector<int> choice(classes.size(), 0);
  while (true) {
    out.push_back(marked_lattice_from_class_choices(g, choice));
    int i = static_cast<int>(choice.size()) - 1;
    while (i >= 0) {
      if (++choice[i] < limits[i]) break;
      choice[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

RootSystem lattice_to_rootsystem(const MarkedReflectionLattice& m) {
  RootSystem rs;
  rs.rank = m.group->dim();
  for (const auto& mk : m.marking) {
    rs.roots.push_back(mk.b);
    rs.coroots.push_back(mk.beta);
    rs.roots.push_back(negated(mk.b));
    rs.coroots.push_back(negated(mk.beta));
  }
  rs.sort_canonical();
  for (size_t i = 0; i + 1 < rs.roots.size(); ++i)
    check(rs.roots[i] != rs.roots[i + 1], "distinct reflections have distinct marking lines");
  return rs;
}

MarkedReflectionLattice rootsystem_to_lattice(const RootSystem& rs, long long cap) {
  Report v = validate_root_system(rs);
  if (!v.ok()) throw value_error("rootsystem_to_lattice: input fails the root-system axioms");
  std::vector<IntMatrix> gens;
  for (size_t i = 0; i < rs.roots.size(); ++i)
    gens.push_back(rank_one_reflection(rs.roots[i], rs.coroots[i]));
  if (gens.empty()) {
    // empty root system: trivial group on the lattice
    gens.push_back(IntMatrix::identity(rs.rank));
  }
  GroupPtr g = FiniteMatrixGroup::generate(gens, cap);
  int ns = static_cast<int>(g->reflections().size());
  std::vector<StrictMarking> marking(ns);
  std::vector<char> done(ns, 0);
  for (size_t i = 0; i < rs.roots.size(); ++i) {
    int e = g->index_of(rank_one_reflection(rs.roots[i], rs.coroots[i]));
    check(e >= 0, "root reflections lie in the generated group");
    int s = g->sigma_index(e);
    check(s >= 0, "root reflections are reflections");
    StrictMarking mk = canonical_marking({rs.roots[i], rs.coroots[i]});
    if (done[s])
      check(marking[s] == mk, "each reflection is marked by a single root pair");
    marking[s] = mk;
    done[s] = 1;
  }
  for (int s = 0; s < ns; ++s)
    check(done[s] || rs.roots.empty(), "every reflection of the generated group comes from a root");
  return MarkedReflectionLattice{g, std::move(marking)};
}

RootSystem dualize(const RootSystem& rs) {
  RootSystem dual;
  dual.rank = rs.rank;
  dual.roots = rs.coroots;
  dual.coroots = rs.roots;
  dual.sort_canonical();
  return dual;
}

Int count_root_systems(const FiniteMatrixGroup& g) {
  if (!g.generated_by_reflections()) throw value_error("count_root_systems: group is not generated by reflections");
  int k = 0;
  for (const auto& cls : g.reflection_classes())
    if (g.reflection_trivial_mod2(cls.rep)) ++k;
  Int n = 1;
  return n << k;
}

namespace {

// Solve c x = y over Q for a square invertible rational matrix (columns c).
std::vector<Rat> rational_solve(std::vector<std::vector<Rat>> c, std::vector<Rat> y) {
  int n = static_cast<int>(y.size());
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (c[i][k] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw value_error("lattice basis is singular");
    std::swap(c[k], c[piv]);
    std::swap(y[k], y[piv]);
    for (int i = 0; i < n; ++i) {
      if (i == k || c[i][k] == 0) continue;
      Rat f = c[i][k] / c[k][k];
      for (int j = k; j < n; ++j) c[i][j] -= f * c[k][j];
      y[i] -= f * y[k];
    }
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = y[i] / c[i][i];
    x[i].canonicalize();
  }
  return x;
}

}  // namespace

RootSystem integral_form(const std::vector<std::vector<Rat>>& roots,
                         const std::vector<std::vector<Rat>>& lattice_basis) {
  if (roots.empty()) throw value_error("integral_form: empty geometric root system");
  int n = static_cast<int>(roots[0].size());
  if (static_cast<int>(lattice_basis.size()) != n)
    throw value_error("integral_form: lattice basis must have full rank");

  // h_r from the Euclidean reflection s_r(x) = x - 2 (x,r)/(r,r) r
  auto pairing = [&](const std::vector<Rat>& x, const std::vector<Rat>& r) {
    Rat num(0), den(0);
    for (int i = 0; i < n; ++i) {
      num += x[i] * r[i];
      den += r[i] * r[i];
    }
    Rat h = Rat(-2) * num / den;
    h.canonicalize();
    return h;
  };

  // basis matrix with columns = lattice basis vectors
  std::vector<std::vector<Rat>> cmat(n, std::vector<Rat>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) cmat[i][j] = lattice_basis[j][i];

  RootSystem out;
  out.rank = n;
  for (const auto& r : roots) {
    // L >= L_min: the root must have integer coordinates in the basis
    std::vector<Rat> coords = rational_solve(cmat, r);
    IntVec root(n);
    for (int i = 0; i < n; ++i) {
      if (coords[i].get_den() != 1)
        throw value_error("integral_form: lattice does not contain the root span (L_min)");
      root[i] = coords[i].get_num();
    }
    // L <= L_max: h_r must be integral on the basis
    IntVec coroot(n);
    for (int j = 0; j < n; ++j) {
      Rat h = pairing(lattice_basis[j], r);
      if (h.get_den() != 1)
        throw value_error("integral_form: lattice is not contained in L_max");
      coroot[j] = h.get_num();
    }
    out.roots.push_back(std::move(root));
    out.coroots.push_back(std::move(coroot));
  }
  out.sort_canonical();
  Report rep = validate_root_system(out);
  if (!rep.ok()) throw value_error("integral_form: result fails the root-system axioms");
  return out;
}

bool same_marked_lattice(const MarkedReflectionLattice& a, const MarkedReflectionLattice& b) {
  if (a.group->size() != b.group->size() || a.group->dim() != b.group->dim()) return false;
  for (int i = 0; i < a.group->size(); ++i)
    if (a.group->mat(i) != b.group->mat(i)) return false;
  if (a.marking.size() != b.marking.size()) return false;
  for (size_t s = 0; s < a.marking.size(); ++s)
    if (!(a.marking[s] == b.marking[s])) return false;
  return true;
}

}  // namespace mrt

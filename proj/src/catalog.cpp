#include "mrt/catalog.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace mrt {

namespace {

// c[i][j] = value of root i on coroot j; sigma_i(e_j) = e_j - c[i][j] e_i on
// the basis of simple coroots.
const std::map<std::string, std::vector<std::vector<int>>>& cartan_table() {
  static const std::map<std::string, std::vector<std::vector<int>>> table = {
      {"A1", {{2}}},
      {"A2", {{2, -1}, {-1, 2}}},
      {"A3", {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}},
      {"B2", {{2, -2}, {-1, 2}}},
      {"B3", {{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}},
      {"C3", {{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}},
      {"D4", {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}},
      {"G2", {{2, -1}, {-3, 2}}},
      {"F4", {{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}}},
  };
  return table;
}

struct SimpleData {
  GroupPtr group;
  std::vector<int> simple_elems;
  std::vector<StrictMarking> simple_markings;
};

SimpleData simply_connected_data(const std::string& type) {
  const auto& c = cartan_table().at(type);
  int rank = static_cast<int>(c.size());
  std::vector<IntMatrix> gens;
  std::vector<StrictMarking> markings;
  for (int i = 0; i < rank; ++i) {
    IntVec b(rank, 0), beta(rank, 0);
    b[i] = 1;
    for (int j = 0; j < rank; ++j) beta[j] = -c[i][j];
    gens.push_back(rank_one_reflection(b, beta));
    markings.push_back(StrictMarking{std::move(b), std::move(beta)});
  }
  GroupPtr g = FiniteMatrixGroup::generate(gens);
  SimpleData out;
  out.group = g;
  for (size_t i = 0; i < gens.size(); ++i) out.simple_elems.push_back(g->index_of(gens[i]));
  out.simple_markings = std::move(markings);
  return out;
}

std::vector<std::vector<Rat>> adjoint_basis(const MarkedReflectionLattice& sc) {
  // L_max = { x : beta(x) integral for every marking beta }; the simple betas
  // span the same functional lattice, so stacking all betas is safe.
  RowMatrix b;
  for (const auto& mk : sc.marking) b.push_back(mk.beta);
  SmithDecomposition s = smith(b);
  int r = sc.group->dim();
  check(s.rank == r, "adjoint form needs a semisimple entry");
  std::vector<std::vector<Rat>> basis;
  for (int j = 0; j < r; ++j) {
    std::vector<Rat> col(r);
    for (int i = 0; i < r; ++i) col[i] = Rat(s.v[i][j], s.diag[j]);
    basis.push_back(std::move(col));
  }
  return basis;
}

// L_min + the subgroup of L_max/L_min generated by (order/k) * generator of
// each cyclic factor; used only for the A3 intermediate form (k = 2).
std::vector<std::vector<Rat>> intermediate_basis(const MarkedReflectionLattice& sc, int k) {
  auto lmax = adjoint_basis(sc);
  int r = sc.group->dim();
  // columns: e_i and k-scaled adjoint basis vectors, over a common denominator
  Int den = 1;
  for (const auto& col : lmax)
    for (const auto& x : col) {
      Int d = x.get_den();
      Int g;
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
      den = den / g * d;
    }
  RowMatrix cols(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) cols[i].push_back(Int(i == j ? 1 : 0) * den);
    for (int j = 0; j < r; ++j) {
      Rat scaled = lmax[j][i] * Rat(k) * Rat(den);
      scaled.canonicalize();
      check(scaled.get_den() == 1, "scaled basis clears the denominator");
      cols[i].push_back(scaled.get_num());
    }
  }
  auto span = column_span_basis(cols);
  check(static_cast<int>(span.size()) == r, "intermediate lattice has full rank");
  std::vector<std::vector<Rat>> basis;
  for (const auto& col : span) {
    std::vector<Rat> v(r);
    for (int i = 0; i < r; ++i) {
      v[i] = Rat(col[i], den);
      v[i].canonicalize();
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rat> rational_solve_cols(std::vector<std::vector<Rat>> cols, std::vector<Rat> y) {
  int n = static_cast<int>(y.size());
  // cols are the columns of the matrix
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m[i][j] = cols[j][i];
  for (int kcol = 0; kcol < n; ++kcol) {
    int piv = -1;
    for (int i = kcol; i < n; ++i)
      if (m[i][kcol] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw value_error("relattice: singular basis");
    std::swap(m[kcol], m[piv]);
    std::swap(y[kcol], y[piv]);
    for (int i = 0; i < n; ++i) {
      if (i == kcol || m[i][kcol] == 0) continue;
      Rat f = m[i][kcol] / m[kcol][kcol];
      for (int j = kcol; j < n; ++j) m[i][j] -= f * m[kcol][j];
      y[i] -= f * y[kcol];
    }
  }
  std::vector<Rat> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = y[i] / m[i][i];
    x[i].canonicalize();
  }
  return x;
}

}  // namespace

MarkedReflectionLattice marked_lattice_from_seeds(GroupPtr g, const std::vector<int>& seed_elems,
                                                  const std::vector<StrictMarking>& seeds) {
  int ns = static_cast<int>(g->reflections().size());
  std::vector<StrictMarking> marking(ns);
  std::vector<char> done(ns, 0);
  for (size_t i = 0; i < seed_elems.size(); ++i) {
    int s = g->sigma_index(seed_elems[i]);
    if (s < 0) throw value_error("marking seed is not a reflection of the group");
    StrictMarking mk = canonical_marking(seeds[i]);
    if (!marking_valid_for(g->mat(seed_elems[i]), mk))
      throw value_error("marking seed does not mark its reflection");
    if (done[s] && !(marking[s] == mk)) throw value_error("conflicting marking seeds");
    marking[s] = mk;
    done[s] = 1;
  }
  // propagate by conjugation until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < ns; ++s) {
      if (!done[s]) continue;
      for (int w = 0; w < g->size(); ++w) {
        int t = g->conj_sigma(w, s);
        StrictMarking moved = conjugate_marking(g->mat(w), g->mat(g->inv(w)), marking[s]);
        if (!done[t]) {
          marking[t] = moved;
          done[t] = 1;
          changed = true;
        } else {
          check(marking[t] == moved, "marking propagation is path-independent");
        }
      }
    }
  }
  for (int s = 0; s < ns; ++s)
    if (!done[s]) throw value_error("marking seeds do not reach every reflection class");
  return MarkedReflectionLattice{std::move(g), std::move(marking)};
}

MarkedReflectionLattice relattice(const MarkedReflectionLattice& m,
                                  const std::vector<std::vector<Rat>>& new_basis) {
  int r = m.group->dim();
  if (static_cast<int>(new_basis.size()) != r)
    throw value_error("relattice: basis size must equal the rank");
  auto to_new_coords = [&](const std::vector<Rat>& v) {
    return rational_solve_cols(new_basis, v);
  };
  auto integral = [&](const std::vector<Rat>& v, IntVec& out) {
    out.resize(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i].get_den() != 1) return false;
      out[i] = v[i].get_num();
    }
    return true;
  };
  // transported generators
  std::vector<IntMatrix> gens;
  for (int gi : m.group->generators()) {
    const IntMatrix& a = m.group->mat(gi);
    IntMatrix moved(r);
    for (int j = 0; j < r; ++j) {
      // image of basis vector j: A * basis_j, in new coordinates
      std::vector<Rat> img(r, Rat(0));
      for (int i = 0; i < r; ++i)
        for (int t = 0; t < r; ++t) img[i] += Rat(a.at(i, t)) * new_basis[j][t];
      IntVec col;
      if (!integral(to_new_coords(img), col))
        throw value_error("relattice: group does not preserve the lattice");
      for (int i = 0; i < r; ++i) moved.at(i, j) = col[i];
    }
    gens.push_back(std::move(moved));
  }
  GroupPtr g2 = FiniteMatrixGroup::generate(gens);
  check(g2->size() == m.group->size(), "relattice preserves the group order");

  // transported seed markings on the generators that are reflections
  std::vector<int> seed_elems;
  std::vector<StrictMarking> seeds;
  for (size_t i = 0; i < gens.size(); ++i) {
    int old_elem = m.group->generators()[i];
    int s = m.group->sigma_index(old_elem);
    if (s < 0) continue;
    const StrictMarking& mk = m.marking[s];
    std::vector<Rat> b_rat(r);
    for (int t = 0; t < r; ++t) b_rat[t] = Rat(mk.b[t]);
    IntVec b_new;
    if (!integral(to_new_coords(b_rat), b_new))
      throw value_error("relattice: marking vector leaves the lattice");
    IntVec beta_new(r);
    for (int j = 0; j < r; ++j) {
      Rat acc(0);
      for (int t = 0; t < r; ++t) acc += Rat(mk.beta[t]) * new_basis[j][t];
      acc.canonicalize();
      if (acc.get_den() != 1) throw value_error("relattice: marking functional not integral");
      beta_new[j] = acc.get_num();
    }
    seed_elems.push_back(g2->index_of(gens[i]));
    seeds.push_back(StrictMarking{std::move(b_new), std::move(beta_new)});
  }
  // seeds cover every class because conjugates of the generators do
  return marked_lattice_from_seeds(g2, seed_elems, seeds);
}

MarkedReflectionLattice direct_sum(const MarkedReflectionLattice& a,
                                   const MarkedReflectionLattice& b) {
  int ra = a.group->dim(), rb = b.group->dim(), r = ra + rb;
  auto embed = [&](const IntMatrix& m, bool first) {
    IntMatrix out = IntMatrix::identity(r);
    int off = first ? 0 : ra;
    int d = m.dim();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out.at(off + i, off + j) = m.at(i, j);
    return out;
  };
  std::vector<IntMatrix> gens;
  std::vector<int> seed_elems;
  std::vector<StrictMarking> seeds;
  auto extend_vec = [&](const IntVec& v, bool first) {
    IntVec out(r, 0);
    int off = first ? 0 : ra;
    for (size_t i = 0; i < v.size(); ++i) out[off + i] = v[i];
    return out;
  };
  for (int gi : a.group->generators()) gens.push_back(embed(a.group->mat(gi), true));
  for (int gi : b.group->generators()) gens.push_back(embed(b.group->mat(gi), false));
  GroupPtr g = FiniteMatrixGroup::generate(gens);
  for (size_t s = 0; s < a.marking.size(); ++s) {
    int e = g->index_of(embed(a.group->mat(a.group->reflections()[s]), true));
    seed_elems.push_back(e);
    seeds.push_back({extend_vec(a.marking[s].b, true), extend_vec(a.marking[s].beta, true)});
  }
  for (size_t s = 0; s < b.marking.size(); ++s) {
    int e = g->index_of(embed(b.group->mat(b.group->reflections()[s]), false));
    seed_elems.push_back(e);
    seeds.push_back({extend_vec(b.marking[s].b, false), extend_vec(b.marking[s].beta, false)});
  }
  return marked_lattice_from_seeds(g, seed_elems, seeds);
}

std::vector<std::string> catalog_names() {
  // D4 is limited to the sc and adjoint forms; the half-spin lattice is a
  // straightforward extension point via relattice with its generator vector.
  return {"SU(2)",  "SO(3)",  "U(2)",   "A1xA1-sc", "A2-sc", "A2-adj", "A3-sc",
          "A3-int", "A3-adj", "B2-sc",  "B2-adj",   "B3-sc", "B3-adj", "C3-sc",
          "C3-adj", "D4-sc",  "D4-adj", "G2",       "F4"};
}

bool is_catalog_name(const std::string& name) {
  auto names = catalog_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

CatalogEntry build_entry_uncached(const std::string& name);

}  // namespace

CatalogEntry build_entry(const std::string& name) {
  // entries are immutable; cache them since the suites rebuild heavy ones
  static std::map<std::string, CatalogEntry> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  CatalogEntry e = build_entry_uncached(name);
  cache.emplace(name, e);
  return e;
}

namespace {

CatalogEntry build_entry_uncached(const std::string& name) {
  auto sc_entry = [&](const std::string& type, const std::string& alias,
                      std::optional<bool> expected) {
    SimpleData d = simply_connected_data(type);
    CatalogEntry e;
    e.name = alias.empty() ? type + "-sc" : alias;
    e.cartan_type = type;
    e.rank = d.group->dim();
    e.form = "sc";
    e.lattice = marked_lattice_from_seeds(d.group, d.simple_elems, d.simple_markings);
    e.expected_root_nonsplit = expected;
    return e;
  };
  auto derived_entry = [&](const std::string& type, const std::string& form,
                           const std::string& alias) {
    CatalogEntry sc = sc_entry(type, "tmp", std::nullopt);
    CatalogEntry e;
    e.cartan_type = type;
    e.rank = sc.rank;
    e.form = form;
    e.name = alias;
    e.lattice = form == "adjoint" ? relattice(sc.lattice, adjoint_basis(sc.lattice))
                                  : relattice(sc.lattice, intermediate_basis(sc.lattice, 2));
    return e;
  };

  if (name == "SU(2)" || name == "A1-sc") {
    CatalogEntry e = sc_entry("A1", "SU(2)", true);
    e.form = "model";
    return e;
  }
  if (name == "SO(3)" || name == "A1-adj") {
    CatalogEntry e = derived_entry("A1", "adjoint", "SO(3)");
    e.form = "model";
    e.expected_root_nonsplit = false;
    return e;
  }
  if (name == "U(2)") {
    IntMatrix swap(2, {Int(0), Int(1), Int(1), Int(0)});
    GroupPtr g = FiniteMatrixGroup::generate({swap});
    CatalogEntry e;
    e.name = "U(2)";
    e.cartan_type = "swap";
    e.rank = 2;
    e.form = "model";
    e.lattice = marked_lattice_from_class_choices(g, {0});
    e.expected_root_nonsplit = true;
    return e;
  }
  if (name == "A1xA1-sc") {
    CatalogEntry a1 = sc_entry("A1", "tmp", std::nullopt);
    CatalogEntry e;
    e.name = "A1xA1-sc";
    e.cartan_type = "A1xA1";
    e.rank = 2;
    e.form = "sc";
    e.lattice = direct_sum(a1.lattice, a1.lattice);
    return e;
  }
  if (name == "G2" || name == "F4") return sc_entry(name, name, std::nullopt);
  auto dash = name.find('-');
  if (dash != std::string::npos) {
    std::string type = name.substr(0, dash), form = name.substr(dash + 1);
    if (cartan_table().count(type)) {
      if (form == "sc") return sc_entry(type, name, std::nullopt);
      if (form == "adj") return derived_entry(type, "adjoint", name);
      if (form == "int") return derived_entry(type, "intermediate", name);
    }
  }
  throw value_error("unknown catalog entry: " + name);
}

}  // namespace

Report simply_connected_torus_splitting(const CatalogEntry& e) {
  Report rep;
  SimpleSystem ss = find_simple_system(e.lattice);
  int r = e.rank;
  bool full_rank = ss.rank() == r;
  rep.add("simple-count-equals-rank", full_rank,
          "simples " + std::to_string(ss.rank()) + ", rank " + std::to_string(r));
  if (!full_rank) return rep;
  IntMatrix b(r);
  for (int j = 0; j < r; ++j) {
    // the marking vector of the j-th simple reflection
    const IntVec& col = e.lattice.marking[ss.simple_sigma(j)].b;
    for (int i = 0; i < r; ++i) b.at(i, j) = col[i];
  }
  Int d = b.det();
  bool unimodular = d == 1 || d == -1;
  rep.add("simple-roots-form-basis", unimodular, "determinant " + d.get_str());
  // pairwise trivial intersections of the negative circles
  bool pairwise = true;
  for (int i = 0; i < r && pairwise; ++i)
    for (int j = i + 1; j < r && pairwise; ++j) {
      RowMatrix two(r, IntVec(2));
      for (int t = 0; t < r; ++t) {
        two[t][0] = b.at(t, i);
        two[t][1] = b.at(t, j);
      }
      if (rank_of(two) != 2) pairwise = false;
    }
  rep.add("negative-circles-intersect-trivially", pairwise);
  return rep;
}

NtModel nt_model(const CatalogEntry& e, int global_split_limit) {
  SimpleSystem ss = find_simple_system(e.lattice);
  auto view = std::make_shared<LatticeGroupView>(e.lattice.group, &ss);
  MarkedReflectionTorus torus = lattice_to_torus(e.lattice);
  NormalizerExtension nu(view, torus.h);
  std::optional<SplitCheckResult> global;
  if (e.lattice.group->size() <= global_split_limit) global = split_check(nu);
  const auto& g = *e.lattice.group;
  std::vector<bool> per_class;
  bool any_nonsplit = false;
  for (const auto& cls : g.reflection_classes()) {
    IntVec axis = negative_eigenvector(g.mat(g.reflections()[cls.rep]));
    bool split = root_subextension_split(nu, cls.rep, axis);
    per_class.push_back(split);
    if (!split) any_nonsplit = true;
  }
  return NtModel{view, std::move(ss), std::move(nu), std::move(global), std::move(per_class),
                 any_nonsplit};
}

}  // namespace mrt

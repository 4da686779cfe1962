#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mrt/catalog.hpp"
#include "mrt/cohomology.hpp"

using namespace mrt;

namespace {

std::vector<int> whole_group(const FiniteMatrixGroup& g) {
  std::vector<int> out(g.size());
  for (int i = 0; i < g.size(); ++i) out[i] = i;
  return out;
}

// Brute-force H^2(W; T[2]) by F2 linear algebra on the full cochain spaces.
// Returns a maximal set of pairwise non-cohomologous normalized cocycles,
// each as a dense table. Desk scale only.
struct BruteH2 {
  std::vector<std::vector<std::vector<int>>> reps;  // cocycle tables mod 2
};

BruteH2 brute_h2_mod2(const FiniteMatrixGroup& g) {
  int n = g.size(), r = g.dim();
  int vars = n * n * r;
  auto idx = [&](int a, int b, int c) { return (a * n + b) * r + c; };
  // cocycle identity rows and normalization rows over F2
  std::vector<std::vector<int>> rows;
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < r; ++c) {
      std::vector<int> row(vars, 0);
      row[idx(a, g.id(), c)] = 1;
      rows.push_back(row);
      std::vector<int> row2(vars, 0);
      row2[idx(g.id(), a, c)] = 1;
      rows.push_back(row2);
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int t = 0; t < r; ++t) {
          // a z(b,c) - z(ab,c) + z(a,bc) - z(a,b) = 0, with the action mod 2
          std::vector<int> row(vars, 0);
          const IntMatrix& ma = g.mat(a);
          for (int s = 0; s < r; ++s) {
            int coef = static_cast<int>(fmod(ma.at(t, s), 2).get_ui());
            if (coef) row[idx(b, c, s)] ^= 1;
          }
          row[idx(g.mul(a, b), c, t)] ^= 1;
          row[idx(a, g.mul(b, c), t)] ^= 1;
          row[idx(a, b, t)] ^= 1;
          rows.push_back(row);
        }
  // gaussian elimination to find the solution space basis of cocycles
  // (vars up to 8*8*2 = 128 for W(B2): fine dense)
  std::vector<std::vector<int>> mat = rows;
  std::vector<int> pivot_of_col(vars, -1);
  int rank = 0;
  for (int col = 0; col < vars; ++col) {
    int piv = -1;
    for (int i = rank; i < static_cast<int>(mat.size()); ++i)
      if (mat[i][col]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(mat[rank], mat[piv]);
    for (int i = 0; i < static_cast<int>(mat.size()); ++i)
      if (i != rank && mat[i][col])
        for (int j = col; j < vars; ++j) mat[i][j] ^= mat[rank][j];
    pivot_of_col[col] = rank++;
  }
  // kernel basis of the constraint matrix = space of normalized cocycles
  std::vector<std::vector<int>> cocycles;
  for (int col = 0; col < vars; ++col) {
    if (pivot_of_col[col] >= 0) continue;
    std::vector<int> v(vars, 0);
    v[col] = 1;
    for (int c2 = 0; c2 < vars; ++c2) {
      int p = pivot_of_col[c2];
      if (p >= 0 && mat[p][col]) v[c2] = 1;
    }
    cocycles.push_back(v);
  }
  // coboundary subspace: delta d for d : W -> T[2]
  std::vector<std::vector<int>> coboundaries;
  for (int e = 0; e < n; ++e)
    for (int t = 0; t < r; ++t) {
      std::vector<int> v(vars, 0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          // (delta d)(a,b) = d(a) + a d(b) - d(ab) with d = e_t at element e
          int acc = 0;
          if (a == e) acc ^= 1;
          (void)acc;
          for (int tt = 0; tt < r; ++tt) {
            int val = 0;
            if (a == e && tt == t) val ^= 1;
            if (b == e) {
              int coef = static_cast<int>(fmod(g.mat(a).at(tt, t), 2).get_ui());
              val ^= coef;
            }
            if (g.mul(a, b) == e && tt == t) val ^= 1;
            if (val) v[idx(a, b, tt)] ^= 1;
          }
        }
      coboundaries.push_back(v);
    }
  // reduce cocycles modulo coboundaries: greedily collect class reps
  std::vector<std::vector<int>> basis = coboundaries;  // row space for reduction
  std::vector<int> piv;
  auto reduce = [&](std::vector<int> v) {
    for (size_t i = 0; i < basis.size(); ++i) {
      if (piv.size() <= i) break;
      if (v[piv[i]]) {
        for (int j = 0; j < vars; ++j) v[j] ^= basis[i][j];
      }
    }
    return v;
  };
  // echelonize the coboundary space
  std::vector<std::vector<int>> ech;
  std::vector<int> echpiv;
  for (auto v : coboundaries) {
    for (size_t i = 0; i < ech.size(); ++i)
      if (v[echpiv[i]])
        for (int j = 0; j < vars; ++j) v[j] ^= ech[i][j];
    int lead = -1;
    for (int j = 0; j < vars; ++j)
      if (v[j]) {
        lead = j;
        break;
      }
    if (lead >= 0) {
      ech.push_back(v);
      echpiv.push_back(lead);
    }
  }
  // now quotient the cocycle space
  BruteH2 out;
  std::vector<std::vector<int>> class_ech = ech;
  std::vector<int> class_piv = echpiv;
  for (auto v : cocycles) {
    for (size_t i = 0; i < class_ech.size(); ++i)
      if (v[class_piv[i]])
        for (int j = 0; j < vars; ++j) v[j] ^= class_ech[i][j];
    int lead = -1;
    for (int j = 0; j < vars; ++j)
      if (v[j]) {
        lead = j;
        break;
      }
    if (lead < 0) continue;
    // new nontrivial class generator
    std::vector<std::vector<int>> table(n, std::vector<int>(n * r, 0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int t = 0; t < r; ++t) table[a][b * r + t] = v[idx(a, b, t)];
    out.reps.push_back(table);
    class_ech.push_back(v);
    class_piv.push_back(lead);
  }
  (void)reduce;
  (void)rank;
  return out;
}

}  // namespace

TEST_CASE("shapiro companions: forward then backward across the rank <= 3 catalog") {
  for (const char* name : {"A2-sc", "B2-sc", "G2", "A3-sc", "B3-sc"}) {
    CatalogEntry e = build_entry(name);
    SimpleSystem ss = find_simple_system(e.lattice);
    auto view = std::make_shared<LatticeGroupView>(e.lattice.group, &ss);
    const auto& g = *e.lattice.group;
    for (int cls = 0; cls < static_cast<int>(g.reflection_classes().size()); ++cls) {
      CentralizerSplitting sp = centralizer_splitting(*view, cls);
      auto k = centralizer_class_cocycle(*view, cls);
      CosetSpace cs = make_cosets(g, whole_group(g), sp.centralizer);
      // the subgroup fixes its own coset
      for (int h : sp.centralizer) CHECK(cs.coset_of[h] == cs.coset_of[g.id()]);
      // round trip equals k on the nose (the trivial coset is represented by e)
      for (int h1 : sp.centralizer)
        for (int h2 : sp.centralizer) {
          Int back = shapiro_backward_value(
              cs, [&](int a, int b) { return shapiro_forward_value(g, cs, k, a, b); }, h1, h2);
          CHECK(back == k(h1, h2));
        }
    }
  }
}

TEST_CASE("H = G degenerate shapiro") {
  CatalogEntry e = build_entry("SU(2)");
  const auto& g = *e.lattice.group;
  CosetSpace cs = make_cosets(g, whole_group(g), whole_group(g));
  CHECK(cs.num_cosets() == 1);
  auto k = [](int, int) { return Int(1); };
  IntVec v = shapiro_forward_value(g, cs, k, 0, 0);
  CHECK(v == IntVec{1});
}

TEST_CASE("the induced class is representative-independent") {
  // two coset systems (plain index order vs length order) give cohomologous
  // induced cocycles
  CatalogEntry e = build_entry("B2-sc");
  SimpleSystem ss = find_simple_system(e.lattice);
  auto view = std::make_shared<LatticeGroupView>(e.lattice.group, &ss);
  const auto& g = *e.lattice.group;
  CentralizerSplitting sp = centralizer_splitting(*view, 0);
  auto k = centralizer_class_cocycle(*view, 0);
  std::vector<long long> keys(g.size());
  for (int i = 0; i < g.size(); ++i) keys[i] = view->rep_order_key(i);
  CosetSpace cs1 = make_cosets(g, whole_group(g), sp.centralizer);
  CosetSpace cs2 = make_cosets(g, whole_group(g), sp.centralizer, &keys);
  // compare over the permutation module as W-cocycles; basis order may
  // differ, so align cosets via their member sets
  std::vector<int> align(cs2.num_cosets());
  for (int c = 0; c < cs2.num_cosets(); ++c) align[c] = cs1.coset_of[cs2.reps[c]];
  GroupOps ops{g.size(), g.id(), [&g](int a, int b) { return g.mul(a, b); }};
  ModuleOps mod;
  mod.dim = cs1.num_cosets();
  mod.modulus = 0;
  mod.act = [&](int a, const IntVec& v) {
    IntVec out(v.size(), 0);
    for (size_t c = 0; c < v.size(); ++c)
      if (v[c] != 0) out[cs1.coset_of[g.mul(a, cs1.reps[c])]] += v[c];
    return out;
  };
  auto z = [&](int a, int b) {
    IntVec v1 = shapiro_forward_value(g, cs1, k, a, b);
    IntVec v2 = shapiro_forward_value(g, cs2, k, a, b);
    for (int c = 0; c < cs2.num_cosets(); ++c) v1[align[c]] -= v2[c];
    return v1;
  };
  auto witness = coboundary_witness(ops, ss.simples, mod, z);
  CHECK(witness.has_value());
}

TEST_CASE("double cosets: decomposition sanity") {
  CatalogEntry e = build_entry("A2-sc");
  const auto& g = *e.lattice.group;
  // K = G gives a single double coset
  DoubleCosetDecomp whole = double_cosets(g, whole_group(g), {g.id()});
  CHECK(whole.reps.size() == 1);
  // K = H = <sigma> in W(A2): two double cosets on the 3 cosets
  int sigma = g.reflections()[0];
  std::vector<int> h = g.subgroup_closure({sigma});
  DoubleCosetDecomp dc = double_cosets(g, h, h);
  CHECK(dc.reps.size() == 2);
  long long total = 0;
  for (const auto& ka : dc.intersections) total += static_cast<long long>(h.size()) / ka.size();
  CHECK(total == 3);  // [G:H]
}

TEST_CASE("double coset formula: degenerate and centralizer instances") {
  for (const char* name : {"A2-sc", "B2-sc"}) {
    CatalogEntry e = build_entry(name);
    SimpleSystem ss = find_simple_system(e.lattice);
    auto view = std::make_shared<LatticeGroupView>(e.lattice.group, &ss);
    const auto& g = *e.lattice.group;
    for (int cls = 0; cls < static_cast<int>(g.reflection_classes().size()); ++cls) {
      CentralizerSplitting sp = centralizer_splitting(*view, cls);
      auto k = centralizer_class_cocycle(*view, cls);
      Report whole = double_coset_formula_check(g, whole_group(g), sp.centralizer, k);
      CHECK(whole.ok());
      Report cc = double_coset_formula_check(g, sp.centralizer, sp.centralizer, k);
      CHECK(cc.ok());
    }
  }
}

TEST_CASE("restriction vanishing when the representative leaves the fixer") {
  // When a double-coset representative conjugates the class representative
  // outside W_A and the isotropy group is generated by the reflections it
  // contains, the restricted centralizer class is trivial. (The premise is
  // checked explicitly; isotropy groups containing -I-like elements can fail
  // it, e.g. B3 with A = <(1/2,0,0)>, and there the axis-sign character is
  // genuinely nontrivial.)
  struct Case {
    const char* entry;
    std::vector<std::vector<int>> halves;
  };
  int checked = 0, skipped_premise = 0;
  for (const Case& c : {Case{"A3-sc", {{1, 0, 0}}}, Case{"A3-sc", {{0, 1, 0}}},
                        Case{"A3-sc", {{1, 0, 1}}}, Case{"A2-sc", {{1, 1}}}}) {
    CatalogEntry e = build_entry(c.entry);
    SimpleSystem ss = find_simple_system(e.lattice);
    auto view = std::make_shared<LatticeGroupView>(e.lattice.group, &ss);
    const auto& g = *e.lattice.group;
    std::vector<TorusElement> a;
    for (const auto& v : c.halves) {
      std::vector<Rat> coords(v.size());
      for (size_t i = 0; i < v.size(); ++i) coords[i] = Rat(v[i], 2);
      a.push_back(reduce_mod1(std::move(coords)));
    }
    std::vector<int> wa = torus_fixer(g, a);
    for (int cls = 0; cls < static_cast<int>(g.reflection_classes().size()); ++cls) {
      CentralizerSplitting sp = centralizer_splitting(*view, cls);
      auto k = centralizer_class_cocycle(*view, cls);
      DoubleCosetDecomp dc = double_cosets(g, wa, sp.centralizer);
      for (size_t alpha = 0; alpha < dc.reps.size(); ++alpha) {
        int x = dc.reps[alpha];
        int rep_elem = g.reflections()[g.reflection_classes()[cls].rep];
        int moved = g.conj(x, rep_elem);
        if (std::binary_search(wa.begin(), wa.end(), moved)) continue;
        const std::vector<int>& ka = dc.intersections[alpha];
        // the premise: isotropy generated by the reflections it contains
        std::vector<int> krefl;
        for (int el : ka)
          if (g.sigma_index(el) >= 0) krefl.push_back(el);
        std::vector<int> closure =
            krefl.empty() ? std::vector<int>{g.id()} : g.subgroup_closure(krefl);
        if (closure.size() != ka.size()) {
          ++skipped_premise;
          continue;
        }
        // conclusion: k(x^-1 h1 x, x^-1 h2 x) is a coboundary on K_alpha
        GroupOps ops{static_cast<int>(ka.size()), 0, nullptr};
        std::vector<int> pos(g.size(), -1);
        for (size_t i = 0; i < ka.size(); ++i) pos[ka[i]] = static_cast<int>(i);
        ops.id = pos[g.id()];
        ops.mul = [&g, &ka, &pos](int i, int j) { return pos[g.mul(ka[i], ka[j])]; };
        ModuleOps mod;
        mod.dim = 1;
        mod.modulus = 0;
        mod.act = [](int, const IntVec& v) { return v; };
        auto z = [&](int i, int j) {
          return IntVec{k(g.mul(g.mul(g.inv(x), ka[i]), x), g.mul(g.mul(g.inv(x), ka[j]), x))};
        };
        std::vector<int> gens;
        for (int kk : g.small_generating_set(ka)) gens.push_back(pos[kk]);
        if (gens.empty()) gens.push_back(ops.id);
        auto witness = coboundary_witness(ops, gens, mod, z);
        CHECK(witness.has_value());
        ++checked;
      }
    }
  }
  CHECK(checked >= 2);
}

TEST_CASE("odd-index restriction is injective on the brute-force classes") {
  // W(A2) with W_A = <sigma> of index 3: restriction of the b2-style classes
  // must separate them. Classes of H^2(W; T[2]) computed by brute force.
  CatalogEntry e = build_entry("A2-sc");
  const auto& g = *e.lattice.group;
  BruteH2 classes = brute_h2_mod2(g);
  // restriction to the centralizer of a reflection (odd index 3)
  int sigma = g.reflections()[0];
  std::vector<int> h = g.subgroup_closure({sigma});
  CHECK((g.size() / h.size()) % 2 == 1);
  // cochains d : H -> T[2] span the coboundary space on H; check that a
  // nontrivial class restricted to H stays nontrivial
  int nontrivial_kept = 0;
  for (const auto& table : classes.reps) {
    // build the restricted cocycle as a function on H
    GroupOps ops{static_cast<int>(h.size()), 0, nullptr};
    std::vector<int> pos(g.size(), -1);
    for (size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<int>(i);
    ops.id = pos[g.id()];
    ops.mul = [&g, &h, &pos](int a, int b) { return pos[g.mul(h[a], h[b])]; };
    ModuleOps mod;
    mod.dim = g.dim();
    mod.modulus = 2;
    mod.act = [&g, &h](int a, const IntVec& v) {
      IntVec out(v.size(), 0);
      for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) out[i] += fmod(g.mat(h[a]).at(i, j), 2) * v[j];
      for (auto& x : out) x = fmod(x, 2);
      return out;
    };
    auto z = [&](int a, int b) {
      IntVec out(g.dim());
      for (int t = 0; t < g.dim(); ++t) out[t] = table[h[a]][h[b] * g.dim() + t];
      return out;
    };
    std::vector<int> gens{pos[sigma]};
    auto witness = coboundary_witness(ops, gens, mod, z);
    if (!witness.has_value()) ++nontrivial_kept;
  }
  CHECK(nontrivial_kept == static_cast<int>(classes.reps.size()));
}

TEST_CASE("centralizer compatibility instances") {
  CatalogEntry e = build_entry("B2-sc");
  MarkedReflectionTorus t = lattice_to_torus(e.lattice);
  // A = 0 fixes everything: both sides are nu(W)
  CentralizerCompatResult all = centralizer_compat_check(t, {});
  CHECK(all.applicable);
  CHECK(all.cohomologous);
  CHECK(all.fixer->size() == e.lattice.group->size());
  // A = T[2] need not be applicable; the check must say so rather than fail
  std::vector<TorusElement> full2;
  full2.push_back(reduce_mod1({Rat(1, 2), Rat(0)}));
  full2.push_back(reduce_mod1({Rat(0), Rat(1, 2)}));
  CentralizerCompatResult res = centralizer_compat_check(t, full2);
  if (res.applicable) CHECK(res.cohomologous);
  // B3 with a half-basis generator: applicable and cohomologous
  CatalogEntry b3 = build_entry("B3-sc");
  MarkedReflectionTorus t3 = lattice_to_torus(b3.lattice);
  CentralizerCompatResult r3 =
      centralizer_compat_check(t3, {reduce_mod1({Rat(1, 2), Rat(0), Rat(0)})});
  CHECK(r3.applicable);
  CHECK(r3.cohomologous);
}

TEST_CASE("brute-force H^2(W(B2); T[2]) is finite and the split cocycle is detected") {
  CatalogEntry e = build_entry("B2-sc");
  BruteH2 classes = brute_h2_mod2(*e.lattice.group);
  // at least the class of the normalizer cocycle exists
  CHECK(classes.reps.size() >= 1);
}

TEST_CASE("linear systems over Z and Z/2^m: randomized solve-and-verify") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + rng() % 5, m = 1 + rng() % 6;
    bool modular = trial % 2;
    Int modulus = modular ? Int(1) << (3 + rng() % 8) : Int(0);
    RowMatrix a(m, IntVec(n));
    IntVec x0(n);
    for (auto& x : x0) x = static_cast<long>(rng() % 11) - 5;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = static_cast<long>(rng() % 11) - 5;
    LinearSystem sys(n, modulus);
    for (int i = 0; i < m; ++i) {
      Int rhs = 0;
      for (int j = 0; j < n; ++j) rhs += a[i][j] * x0[j];
      sys.add_row(a[i], rhs);
    }
    auto sol = sys.solve();
    REQUIRE(sol.has_value());
    for (int i = 0; i < m; ++i) {
      Int acc = 0;
      for (int j = 0; j < n; ++j) acc += a[i][j] * (*sol)[j];
      Int rhs = 0;
      for (int j = 0; j < n; ++j) rhs += a[i][j] * x0[j];
      Int diff = acc - rhs;
      if (modulus != 0) diff = fmod(diff, modulus);
      CHECK(diff == 0);
    }
  }
  // inconsistent systems are detected
  LinearSystem sys(2);
  sys.add_row({Int(2), Int(0)}, 1);
  CHECK_FALSE(sys.solve().has_value());
  LinearSystem sys2(1, Int(8));
  sys2.add_row({Int(2)}, 1);  // 2x = 1 has no solution mod 8
  CHECK_FALSE(sys2.solve().has_value());
  LinearSystem sys3(1, Int(8));
  sys3.add_row({Int(2)}, 6);  // 2x = 6 does
  auto s3 = sys3.solve();
  REQUIRE(s3.has_value());
  CHECK(fmod(Int(2) * (*s3)[0] - 6, Int(8)) == 0);
}

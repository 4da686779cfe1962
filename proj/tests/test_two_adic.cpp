#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mrt/document.hpp"

using namespace mrt;

TEST_CASE("mod-2^k scalar helpers") {
  CHECK(val2(8, 10) == 3);
  CHECK(val2(0, 10) == 10);
  CHECK(val2(5, 10) == 0);
  for (u64 odd : {1ull, 3ull, 255ull, 12345ull}) {
    u64 inv = inv_mod2k(odd, 20);
    CHECK(((odd * inv) & mask_of(20)) == 1);
  }
  CHECK_THROWS_AS(inv_mod2k(4, 8), invariant_violation);
}

TEST_CASE("saturation mod 2^k and precision accounting") {
  // columns (2,0), (0,12): saturation is Z^2 with 2+2 bits lost at worst
  std::vector<std::vector<u64>> cols = {{2, 0}, {0, 12}};
  SaturatedSpan span = saturate_columns_mod2k(cols, 2, 16, 4);
  CHECK(span.basis.size() == 2);
  CHECK(span.precision <= 15);
  CHECK(span.precision >= 12);
  // coordinates in the span
  auto coord = coords_in_span(span, {1, 1});
  CHECK(coord.has_value());
  // precision exhaustion fails loudly
  std::vector<std::vector<u64>> steep = {{u64(1) << 14, 0}};
  CHECK_THROWS_AS(saturate_columns_mod2k(steep, 2, 16, 8), precision_error);
}

TEST_CASE("promotion preserves order, reflections and marking counts") {
  for (const char* name : {"SU(2)", "SO(3)", "B2-sc", "A3-sc", "G2"}) {
    CatalogEntry e = build_entry(name);
    CompleteMarkedLattice c = promote(e.lattice, 10);
    CAPTURE(name);
    CHECK(c.group->size() == e.lattice.group->size());
    CHECK(c.group->reflections().size() == e.lattice.group->reflections().size());
    // marking counts over Z2 match the integral counts
    for (size_t s = 0; s < c.group->reflections().size(); ++s) {
      auto vectors = two_adic_marking_vectors(*c.group, static_cast<int>(s));
      size_t expect = c.group->reflection_trivial_mod2(static_cast<int>(s)) ? 2 : 1;
      CHECK(vectors.size() == expect);
    }
  }
}

TEST_CASE("promotion carries the marking scale") {
  // SO(3) has the doubled marking; its promoted b must be 2 * primitive
  CompleteMarkedLattice so3 = promote(build_entry("SO(3)").lattice, 10);
  REQUIRE(so3.marking.size() == 1);
  CHECK(so3.marking[0].b[0] == 2);
  CompleteMarkedLattice su2 = promote(build_entry("SU(2)").lattice, 10);
  CHECK(su2.marking[0].b[0] == 1);
}

TEST_CASE("di4 fixture data: all invariants") {
  DI4Data d = di4_data(8);
  Report rep = di4_verify(d);
  CHECK(rep.ok());
  // fixture parse/serialize round trip
  DI4Data d2 = di4_parse_fixture(di4_fixture_text(d));
  CHECK(d2.precision == 8);
  for (int i = 0; i < 3; ++i) CHECK(d2.generators[i] == d.generators[i]);
}

TEST_CASE("di4 oracle recomputes the fixture's group") {
  // the oracle at precision 8 generates a group conjugate to the fixture's;
  // invariant data must match exactly
  DI4Data computed = di4_compute(8);
  DI4Data fixture = di4_data(8);
  auto g1 = TwoAdicGroup::generate(computed.generators);
  auto g2 = TwoAdicGroup::generate(fixture.generators);
  CHECK(g1->size() == g2->size());
  CHECK(g1->reflections().size() == g2->reflections().size());
  // trace multisets agree (conjugation invariant)
  std::vector<u64> t1, t2;
  for (int i = 0; i < g1->size(); ++i) t1.push_back(g1->mat(i).trace());
  for (int i = 0; i < g2->size(); ++i) t2.push_back(g2->mat(i).trace());
  std::sort(t1.begin(), t1.end());
  std::sort(t2.begin(), t2.end());
  CHECK(t1 == t2);
}

TEST_CASE("corrupted fixture is rejected with the failing invariant named") {
  DI4Data d = di4_data(8);
  d.generators[0].at(0, 0) ^= 1;  // flip one bit
  bool named = false;
  try {
    auto g = TwoAdicGroup::generate(d.generators, 5000);
    Report rep = di4_verify(d);
    named = !rep.ok();
  } catch (const value_error&) {
    named = true;  // the closure may blow past the cap instead
  }
  CHECK(named);
}

TEST_CASE("reflection partition: single factors and block sums") {
  CompleteMarkedLattice b2 = promote(build_entry("B2-sc").lattice, 8);
  PartitionResult p1 = reflection_partition(b2);
  CHECK(p1.factors.size() == 1);
  CHECK(p1.mod2_decomposes);
  CHECK(classify_factor(p1.factors[0]).to_string() == "Coxeter(B2)");

  CompleteMarkedLattice a1a1 = promote(build_entry("A1xA1-sc").lattice, 8);
  PartitionResult p2 = reflection_partition(a1a1);
  CHECK(p2.factors.size() == 2);
  for (const auto& f : p2.factors) CHECK(classify_factor(f).to_string() == "Coxeter(A1)");

  CompleteMarkedLattice block = block_sum(di4_lattice(di4_data(8)), b2);
  PartitionResult p3 = reflection_partition(block);
  CHECK(p3.factors.size() == 2);
  CHECK(p3.mod2_decomposes);
  std::vector<std::string> tags;
  for (const auto& f : p3.factors) tags.push_back(classify_factor(f).to_string());
  std::sort(tags.begin(), tags.end());
  CHECK(tags == std::vector<std::string>{"Coxeter(B2)", "DI4"});
}

TEST_CASE("classification is stable under a 2-adic basis change") {
  CompleteMarkedLattice b2 = promote(build_entry("B2-sc").lattice, 12);
  // conjugate the generators by a unimodular 2-adic matrix
  TwoAdicMatrix u(2, 12);
  u.at(0, 0) = 1;
  u.at(0, 1) = 6;
  u.at(1, 0) = 0;
  u.at(1, 1) = 1;
  TwoAdicMatrix uinv(2, 12);
  uinv.at(0, 0) = 1;
  uinv.at(0, 1) = (u64(0) - 6) & mask_of(12);
  uinv.at(1, 0) = 0;
  uinv.at(1, 1) = 1;
  std::vector<TwoAdicMatrix> gens;
  for (int i = 0; i < b2.group->size(); ++i)
    if (b2.group->sigma_index(i) >= 0) gens.push_back(u * b2.group->mat(i) * uinv);
  auto g = TwoAdicGroup::generate(gens);
  CompleteMarkedLattice moved;
  moved.group = g;
  moved.precision = 12;
  for (size_t s = 0; s < g->reflections().size(); ++s)
    moved.marking.push_back(two_adic_marking(*g, static_cast<int>(s)));
  PartitionResult parts = reflection_partition(moved);
  REQUIRE(parts.factors.size() == 1);
  FactorTag tag = classify_factor(parts.factors[0]);
  CHECK(tag.to_string() == "Coxeter(B2)");
  MarkedReflectionLattice zform = coxeterize(moved, parts.factors[0], tag);
  CHECK(zform.group->size() == 8);
  CHECK(zform.group->reflections().size() == 4);
  CHECK(validate_marked_lattice(zform).ok());
}

TEST_CASE("coxeterize round trips the rank-level models") {
  for (const char* name : {"SU(2)", "SO(3)"}) {
    CompleteMarkedLattice c = promote(build_entry(name).lattice, 10);
    PartitionResult parts = reflection_partition(c);
    REQUIRE(parts.factors.size() == 1);
    FactorTag tag = classify_factor(parts.factors[0]);
    MarkedReflectionLattice zform = coxeterize(c, parts.factors[0], tag);
    // the descent recovers the marking scale: SO(3) keeps the doubled class
    CHECK(same_marked_lattice(zform, build_entry(name).lattice));
  }
}

TEST_CASE("discrete normalizer extensions: verdicts and DI4 squares") {
  CompleteMarkedLattice su2 = promote(build_entry("SU(2)").lattice, 10);
  NormalizerExtension nu1 = discrete_normalizer_extension(su2);
  CHECK_FALSE(split_check(nu1).split);
  CompleteMarkedLattice so3 = promote(build_entry("SO(3)").lattice, 10);
  NormalizerExtension nu2 = discrete_normalizer_extension(so3);
  CHECK(split_check(nu2).split);

  NormalizerExtension nu3 = discrete_normalizer_extension(di4_lattice(di4_data(8)));
  CHECK(reflection_square_check(nu3).ok());
}

TEST_CASE("coxeter-type discrete extension matches the integral one on 2-torsion") {
  // coset representatives differ between the integral and 2-adic sides, so
  // the cocycles agree up to a coboundary, not entrywise
  CatalogEntry e = build_entry("B2-sc");
  CompleteMarkedLattice c = promote(e.lattice, 10);
  NormalizerExtension discrete = discrete_normalizer_extension(c);
  NtModel integral = nt_model(e);
  const auto& gi = *e.lattice.group;
  const auto& gd = *c.group;
  std::vector<int> to_discrete(gi.size());
  for (int i = 0; i < gi.size(); ++i)
    to_discrete[i] = gd.index_of(TwoAdicMatrix::reduce(gi.mat(i), 10));
  auto transported = [&](int a, int b) {
    // integral value at the matching pair, as a 2-power-torsion element
    int ia = -1, ib = -1;
    for (int i = 0; i < gi.size(); ++i) {
      if (to_discrete[i] == a) ia = i;
      if (to_discrete[i] == b) ib = i;
    }
    return integral.nu.value(ia, ib);
  };
  auto view = std::make_shared<TwoAdicGroupView>(c.group);
  std::vector<int> gens;
  for (int s = 0; s < view->num_reflections(); ++s) gens.push_back(view->reflection_elem(s));
  auto witness = torus_cohomologous_witness(
      *view, gens, 0, [&](int a, int b) { return discrete.value(a, b); }, transported);
  CHECK(witness.has_value());
  // and the markings themselves agree on the nose
  for (int i = 0; i < gi.size(); ++i) {
    int s = gi.sigma_index(i);
    if (s < 0) continue;
    int sd = gd.sigma_index(to_discrete[i]);
    CHECK(discrete.markings()[sd] == integral.nu.markings()[s]);
  }
}

TEST_CASE("precision robustness: partition outputs identical at k and k+4") {
  for (int k : {8, 12}) {
    CompleteMarkedLattice block =
        block_sum(di4_lattice(di4_data(k)), promote(build_entry("A3-sc").lattice, k));
    PartitionResult parts = reflection_partition(block);
    std::vector<std::string> tags;
    for (const auto& f : parts.factors) tags.push_back(classify_factor(f).to_string());
    std::sort(tags.begin(), tags.end());
    CHECK(tags == std::vector<std::string>{"Coxeter(A3)", "DI4"});
  }
}

TEST_CASE("W_Delta contains no reflection trivial mod 2") {
  auto g = TwoAdicGroup::generate(di4_data(8).generators);
  CHECK(g->reflections().size() == 21);
  for (size_t s = 0; s < g->reflections().size(); ++s)
    CHECK_FALSE(g->reflection_trivial_mod2(static_cast<int>(s)));
}

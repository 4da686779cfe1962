#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "mrt/document.hpp"

using namespace mrt;

TEST_CASE("lattice document round trip through the exporter") {
  for (const char* name : {"SU(2)", "SO(3)", "U(2)", "B2-sc", "B2-adj"}) {
    CatalogEntry e = build_entry(name);
    std::string text = lattice_to_document(e.lattice);
    std::istringstream in(text);
    Document d = parse_document(in);
    MarkedReflectionLattice back = document_to_lattice(d);
    CAPTURE(name);
    CHECK(same_marked_lattice(e.lattice, back));
    // byte-identical re-export (determinism contract)
    CHECK(lattice_to_document(back) == text);
  }
}

TEST_CASE("root system document round trip") {
  RootSystem rs = lattice_to_rootsystem(build_entry("B2-sc").lattice);
  std::string text = rootsystem_to_document(rs);
  std::istringstream in(text);
  Document d = parse_document(in);
  d.roots.rank = d.rank;
  d.roots.sort_canonical();
  CHECK(d.roots.roots == rs.roots);
  CHECK(d.roots.coroots == rs.coroots);
  CHECK(validate_root_system(d.roots).ok());
}

TEST_CASE("torus document round trip") {
  MarkedReflectionTorus t = lattice_to_torus(build_entry("U(2)").lattice);
  std::string text = torus_to_document(t);
  std::istringstream in(text);
  MarkedReflectionTorus back = document_to_torus(parse_document(in));
  CHECK(back.h.size() == t.h.size());
  for (size_t s = 0; s < t.h.size(); ++s) CHECK(back.h[s] == t.h[s]);
}

TEST_CASE("two-adic document round trip") {
  CompleteMarkedLattice c = promote(build_entry("B2-sc").lattice, 8);
  std::string text = two_adic_to_document(c);
  std::istringstream in(text);
  Document d = parse_document(in);
  CompleteMarkedLattice back = document_to_two_adic(d);
  CHECK(back.group->size() == c.group->size());
  CHECK(back.precision == 8);
  // truncation via the override
  CompleteMarkedLattice lower = document_to_two_adic(d, 6);
  CHECK(lower.precision == 6);
  CHECK_THROWS_AS(document_to_two_adic(d, 12), precision_error);
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_line = [](const std::string& text, int line) {
    std::istringstream in(text);
    try {
      parse_document(in);
      FAIL("expected a parse error");
    } catch (const parse_error& e) {
      CHECK(e.line_no == line);
    }
  };
  expect_line("not a document\n", 1);
  expect_line("mrt-document v1\nkind nonsense\n", 2);
  expect_line("mrt-document v1\nkind lattice\nrank 2\nmatrix\n1 0\n", 5);   // truncated row
  expect_line("mrt-document v1\nkind lattice\nrank 1\nwhat 1\n", 4);
  // missing end
  std::istringstream in("mrt-document v1\nkind lattice\nrank 1\n");
  CHECK_THROWS_AS(parse_document(in), parse_error);
}

TEST_CASE("a lattice document with an undetermined marking is rejected") {
  // diag(-1,1) is trivial mod 2: two markings, so the bare group is ambiguous
  std::string text =
      "mrt-document v1\nkind lattice\nrank 1\nmatrix\n-1\nend\n";
  std::istringstream in(text);
  Document d = parse_document(in);
  CHECK_THROWS_AS(document_to_lattice(d), value_error);
  // with the marking supplied it works
  std::string marked =
      "mrt-document v1\nkind lattice\nrank 1\nmatrix\n-1\nmarked-matrix\n-1\nb 2\nend\n";
  std::istringstream in2(marked);
  MarkedReflectionLattice m = document_to_lattice(parse_document(in2));
  CHECK(m.marking[0].b == IntVec{2});
}

TEST_CASE("torus documents determine lattice forms") {
  std::string so3_doc =
      "mrt-document v1\nkind torus-marking\nrank 1\nmatrix\n-1\nmarked-matrix\n-1\nh 0\nend\n";
  std::istringstream in(so3_doc);
  MarkedReflectionTorus t = document_to_torus(parse_document(in));
  MarkedReflectionLattice m = torus_to_lattice(t);
  CHECK(m.marking[0].b == IntVec{2});
  std::string su2_doc =
      "mrt-document v1\nkind torus-marking\nrank 1\nmatrix\n-1\nmarked-matrix\n-1\nh 1/2\nend\n";
  std::istringstream in2(su2_doc);
  CHECK(torus_to_lattice(document_to_torus(parse_document(in2))).marking[0].b == IntVec{1});
}

TEST_CASE("subgroup documents parse") {
  std::string text =
      "mrt-document v1\nkind subgroup\nrank 2\nt 1/2 0\nt 0 1/2\nend\n";
  std::istringstream in(text);
  Document d = parse_document(in);
  CHECK(d.torus_elements.size() == 2);
  CHECK(d.torus_elements[0][0] == Rat(1, 2));
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text =
      "mrt-document v1\n# a comment\n\nkind lattice\nrank 1\n  \nmatrix\n-1  # inline\n"
      "marked-matrix\n-1\nb 1\nend\n";
  std::istringstream in(text);
  Document d = parse_document(in);
  CHECK(d.gens.size() == 1);
}

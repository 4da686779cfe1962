#pragma once

// Line-oriented plain-text documents describing lattices, root systems,
// torus markings, 2-adic lattices and torus subgroups: the CLI's interchange
// format. Diff-friendly, no binary payloads; parse errors carry line numbers.

#include <iosfwd>

#include "mrt/two_adic.hpp"

namespace mrt {

struct parse_error : value_error {
  parse_error(int line, const std::string& what)
      : value_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  int line_no;
};

struct Document {
  enum class Kind { lattice, rootsystem, torus_marking, two_adic, subgroup };
  Kind kind = Kind::lattice;
  int rank = 0;
  int precision = 0;  // two-adic only

  std::vector<IntMatrix> gens;  // lattice / torus-marking
  // marking seeds: reflection matrix together with b (lattice) or h (torus)
  std::vector<std::pair<IntMatrix, IntVec>> markings;
  std::vector<std::pair<IntMatrix, std::vector<Rat>>> torus_markings;

  RootSystem roots;  // rootsystem

  std::vector<std::vector<u64>> two_adic_gens;  // row-major entries

  std::vector<std::vector<Rat>> torus_elements;  // subgroup
};

Document parse_document(std::istream& in);
Document load_document(const std::string& path);

std::string kind_name(Document::Kind k);

// builders; throw value_error when the document under-determines the object
MarkedReflectionLattice document_to_lattice(const Document& d);
MarkedReflectionTorus document_to_torus(const Document& d);
CompleteMarkedLattice document_to_two_adic(const Document& d, int precision_override = 0);

// exporters
std::string lattice_to_document(const MarkedReflectionLattice& m);
std::string rootsystem_to_document(const RootSystem& rs);
std::string torus_to_document(const MarkedReflectionTorus& t);
std::string two_adic_to_document(const CompleteMarkedLattice& c);

}  // namespace mrt

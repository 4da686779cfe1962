#include "mrt/document.hpp"

#include <fstream>
#include <sstream>

namespace mrt {

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;
  std::string line;

  bool next() {
    while (std::getline(in, line)) {
      ++line_no;
      // strip comments and whitespace-only lines
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto end = line.find_last_not_of(" \t\r");
      if (end == std::string::npos) continue;
      line.erase(end + 1);
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const { throw parse_error(line_no, what); }
};

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

Int parse_int(LineReader& r, const std::string& tok) {
  try {
    return Int(tok);
  } catch (const std::invalid_argument&) {
    r.fail("expected an integer, got '" + tok + "'");
  }
}

Rat parse_rat(LineReader& r, const std::string& tok) {
  try {
    Rat q(tok);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    r.fail("expected a rational p/q, got '" + tok + "'");
  }
}

IntMatrix parse_matrix(LineReader& r, int rank) {
  IntMatrix m(rank);
  for (int i = 0; i < rank; ++i) {
    if (!r.next()) r.fail("unexpected end of file inside a matrix");
    auto toks = tokens_of(r.line);
    if (static_cast<int>(toks.size()) != rank)
      r.fail("matrix row needs " + std::to_string(rank) + " entries");
    for (int j = 0; j < rank; ++j) m.at(i, j) = parse_int(r, toks[j]);
  }
  return m;
}

}  // namespace

std::string kind_name(Document::Kind k) {
  switch (k) {
    case Document::Kind::lattice: return "lattice";
    case Document::Kind::rootsystem: return "rootsystem";
    case Document::Kind::torus_marking: return "torus-marking";
    case Document::Kind::two_adic: return "two-adic";
    case Document::Kind::subgroup: return "subgroup";
  }
  return "?";
}

Document parse_document(std::istream& in) {
  LineReader r{in, 0, ""};
  if (!r.next()) r.fail("empty document");
  if (r.line != "mrt-document v1") r.fail("expected header 'mrt-document v1'");
  if (!r.next()) r.fail("missing 'kind' line");
  auto toks = tokens_of(r.line);
  if (toks.size() != 2 || toks[0] != "kind") r.fail("expected 'kind <name>'");
  Document d;
  if (toks[1] == "lattice")
    d.kind = Document::Kind::lattice;
  else if (toks[1] == "rootsystem")
    d.kind = Document::Kind::rootsystem;
  else if (toks[1] == "torus-marking")
    d.kind = Document::Kind::torus_marking;
  else if (toks[1] == "two-adic")
    d.kind = Document::Kind::two_adic;
  else if (toks[1] == "subgroup")
    d.kind = Document::Kind::subgroup;
  else
    r.fail("unknown kind '" + toks[1] + "'");

  bool saw_rank = false;
  while (r.next()) {
    toks = tokens_of(r.line);
    const std::string& head = toks[0];
    if (head == "end") return d;
    if (head == "rank") {
      if (toks.size() != 2) r.fail("expected 'rank <n>'");
      d.rank = std::stoi(toks[1]);
      if (d.rank < 0 || d.rank > 24) r.fail("rank out of range");
      saw_rank = true;
    } else if (head == "precision") {
      if (toks.size() != 2) r.fail("expected 'precision <k>'");
      d.precision = std::stoi(toks[1]);
    } else if (head == "matrix") {
      if (!saw_rank) r.fail("'matrix' before 'rank'");
      if (d.kind == Document::Kind::two_adic) {
        if (d.precision < 1) r.fail("'matrix' before 'precision' in a two-adic document");
        std::vector<u64> entries;
        for (int i = 0; i < d.rank; ++i) {
          if (!r.next()) r.fail("unexpected end of file inside a matrix");
          auto row = tokens_of(r.line);
          if (static_cast<int>(row.size()) != d.rank)
            r.fail("matrix row needs " + std::to_string(d.rank) + " entries");
          for (const auto& t : row) {
            Int v = parse_int(r, t);
            entries.push_back(fmod(v, Int(1) << d.precision).get_ui());
          }
        }
        d.two_adic_gens.push_back(std::move(entries));
      } else {
        d.gens.push_back(parse_matrix(r, d.rank));
      }
    } else if (head == "marking") {
      // marking <rank matrix rows follow> then 'b ...' handled below
      r.fail("'marking' blocks start with 'marked-matrix'");
    } else if (head == "marked-matrix") {
      if (!saw_rank) r.fail("'marked-matrix' before 'rank'");
      IntMatrix m = parse_matrix(r, d.rank);
      if (!r.next()) r.fail("marked-matrix needs a following 'b' or 'h' line");
      auto mt = tokens_of(r.line);
      if (mt[0] == "b") {
        if (static_cast<int>(mt.size()) != d.rank + 1) r.fail("'b' needs rank entries");
        IntVec b(d.rank);
        for (int i = 0; i < d.rank; ++i) b[i] = parse_int(r, mt[i + 1]);
        d.markings.emplace_back(std::move(m), std::move(b));
      } else if (mt[0] == "h") {
        if (static_cast<int>(mt.size()) != d.rank + 1) r.fail("'h' needs rank entries");
        std::vector<Rat> h(d.rank);
        for (int i = 0; i < d.rank; ++i) h[i] = parse_rat(r, mt[i + 1]);
        d.torus_markings.emplace_back(std::move(m), std::move(h));
      } else {
        r.fail("expected 'b' or 'h' after a marked-matrix");
      }
    } else if (head == "root") {
      if (!saw_rank) r.fail("'root' before 'rank'");
      // root <r entries> coroot <r entries>
      if (static_cast<int>(toks.size()) != 2 * d.rank + 2 ||
          toks[d.rank + 1] != "coroot")
        r.fail("expected 'root <" + std::to_string(d.rank) + "> coroot <" +
               std::to_string(d.rank) + ">'");
      IntVec root(d.rank), coroot(d.rank);
      for (int i = 0; i < d.rank; ++i) root[i] = parse_int(r, toks[1 + i]);
      for (int i = 0; i < d.rank; ++i) coroot[i] = parse_int(r, toks[d.rank + 2 + i]);
      d.roots.roots.push_back(std::move(root));
      d.roots.coroots.push_back(std::move(coroot));
    } else if (head == "t") {
      if (!saw_rank) r.fail("'t' before 'rank'");
      if (static_cast<int>(toks.size()) != d.rank + 1) r.fail("'t' needs rank entries");
      std::vector<Rat> v(d.rank);
      for (int i = 0; i < d.rank; ++i) v[i] = parse_rat(r, toks[i + 1]);
      d.torus_elements.push_back(std::move(v));
    } else {
      r.fail("unknown directive '" + head + "'");
    }
  }
  r.fail("missing 'end'");
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw value_error("cannot open " + path);
  Document d = parse_document(in);
  if (d.kind == Document::Kind::rootsystem) d.roots.rank = d.rank;
  return d;
}

namespace {

MarkedReflectionLattice lattice_from_parts(GroupPtr g,
                                           const std::vector<std::pair<IntMatrix, IntVec>>& seeds) {
  if (!seeds.empty()) {
    std::vector<int> elems;
    std::vector<StrictMarking> marks;
    for (const auto& [m, b] : seeds) {
      int e = g->index_of(m);
      if (e < 0) throw value_error("marked-matrix is not an element of the generated group");
      auto options = markings_of(m);
      const StrictMarking* found = nullptr;
      IntVec bc = b;
      canonical_sign(bc);
      for (const auto& opt : options)
        if (opt.b == bc) found = &opt;
      if (!found) throw value_error("b " + to_string(b) + " is not a marking of its reflection");
      elems.push_back(e);
      marks.push_back(*found);
    }
    return marked_lattice_from_seeds(g, elems, marks);
  }
  // no markings given: every class must have a unique choice
  std::vector<int> choice;
  for (const auto& cls : g->reflection_classes()) {
    if (g->reflection_trivial_mod2(cls.rep))
      throw value_error(
          "document does not determine a marking: a reflection class trivial mod 2 has two; "
          "add marked-matrix blocks");
    choice.push_back(0);
  }
  return marked_lattice_from_class_choices(g, choice);
}

}  // namespace

MarkedReflectionLattice document_to_lattice(const Document& d) {
  if (d.kind != Document::Kind::lattice && d.kind != Document::Kind::torus_marking)
    throw value_error("document kind " + kind_name(d.kind) + " does not describe a lattice");
  if (d.gens.empty()) throw value_error("document has no generator matrices");
  GroupPtr g = FiniteMatrixGroup::generate(d.gens);
  if (!g->generated_by_reflections())
    throw value_error("generated group is not generated by its reflections");
  if (d.kind == Document::Kind::torus_marking) return torus_to_lattice(document_to_torus(d));
  return lattice_from_parts(g, d.markings);
}

MarkedReflectionTorus document_to_torus(const Document& d) {
  if (d.kind == Document::Kind::lattice) return lattice_to_torus(document_to_lattice(d));
  if (d.kind != Document::Kind::torus_marking)
    throw value_error("document kind " + kind_name(d.kind) + " does not describe a marked torus");
  if (d.gens.empty()) throw value_error("document has no generator matrices");
  GroupPtr g = FiniteMatrixGroup::generate(d.gens);
  int ns = static_cast<int>(g->reflections().size());
  std::vector<TorusElement> h(ns);
  std::vector<char> done(ns, 0);
  for (const auto& [m, hv] : d.torus_markings) {
    int e = g->index_of(m);
    if (e < 0) throw value_error("marked-matrix is not an element of the generated group");
    int s = g->sigma_index(e);
    if (s < 0) throw value_error("marked-matrix is not a reflection");
    h[s] = reduce_mod1(hv);
    done[s] = 1;
  }
  // extend by equivariance
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < ns; ++s) {
      if (!done[s]) continue;
      for (int w = 0; w < g->size(); ++w) {
        int t = g->conj_sigma(w, s);
        TorusElement moved = torus_act(g->mat(w), h[s]);
        if (!done[t]) {
          h[t] = moved;
          done[t] = 1;
          changed = true;
        } else if (h[t] != moved) {
          throw value_error("torus markings are not equivariant");
        }
      }
    }
  }
  for (int s = 0; s < ns; ++s) {
    if (done[s]) continue;
    if (!g->reflection_trivial_mod2(s)) {
      auto options = markings_of(g->mat(g->reflections()[s]));
      h[s] = half_of(options[0].b);
      done[s] = 1;
    } else {
      throw value_error("document does not determine h for a reflection trivial mod 2");
    }
  }
  MarkedReflectionTorus t{g, std::move(h)};
  Report rep = validate_marked_torus(t);
  if (!rep.ok()) throw value_error("torus markings fail validation");
  return t;
}

CompleteMarkedLattice document_to_two_adic(const Document& d, int precision_override) {
  if (d.kind != Document::Kind::two_adic)
    throw value_error("document kind " + kind_name(d.kind) + " is not two-adic");
  int k = precision_override > 0 ? precision_override : d.precision;
  if (k < 3) throw value_error("two-adic documents need precision >= 3");
  if (k > d.precision)
    throw precision_error("requested precision exceeds the document's precision");
  std::vector<TwoAdicMatrix> gens;
  for (const auto& entries : d.two_adic_gens) {
    TwoAdicMatrix m(d.rank, k);
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j)
        m.at(i, j) = entries[static_cast<size_t>(i) * d.rank + j] & mask_of(k);
    gens.push_back(std::move(m));
  }
  if (gens.empty()) {
    if (d.rank != 0) throw value_error("two-adic document has no generator matrices");
    gens.push_back(TwoAdicMatrix::identity(0, k));  // the empty lattice
  }
  auto g = TwoAdicGroup::generate(gens);
  CompleteMarkedLattice out;
  out.group = g;
  out.precision = k;
  for (size_t s = 0; s < g->reflections().size(); ++s)
    out.marking.push_back(two_adic_marking(*g, static_cast<int>(s)));
  return out;
}

namespace {

void write_matrix(std::ostream& out, const IntMatrix& m) {
  out << "matrix\n";
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out << (j ? " " : "") << m.at(i, j).get_str();
    out << "\n";
  }
}

}  // namespace

std::string lattice_to_document(const MarkedReflectionLattice& m) {
  std::ostringstream out;
  out << "mrt-document v1\nkind lattice\nrank " << m.group->dim() << "\n";
  for (int gi : m.group->generators()) write_matrix(out, m.group->mat(gi));
  for (const auto& cls : m.group->reflection_classes()) {
    int e = m.group->reflections()[cls.rep];
    out << "marked-";
    write_matrix(out, m.group->mat(e));
    out << "b";
    for (const auto& x : m.marking[cls.rep].b) out << ' ' << x.get_str();
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

std::string rootsystem_to_document(const RootSystem& rs) {
  std::ostringstream out;
  out << "mrt-document v1\nkind rootsystem\nrank " << rs.rank << "\n";
  for (size_t i = 0; i < rs.roots.size(); ++i) {
    out << "root";
    for (const auto& x : rs.roots[i]) out << ' ' << x.get_str();
    out << " coroot";
    for (const auto& x : rs.coroots[i]) out << ' ' << x.get_str();
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

std::string torus_to_document(const MarkedReflectionTorus& t) {
  std::ostringstream out;
  out << "mrt-document v1\nkind torus-marking\nrank " << t.group->dim() << "\n";
  for (int gi : t.group->generators()) write_matrix(out, t.group->mat(gi));
  for (const auto& cls : t.group->reflection_classes()) {
    int e = t.group->reflections()[cls.rep];
    out << "marked-";
    write_matrix(out, t.group->mat(e));
    out << "h";
    for (const auto& x : t.h[cls.rep].c)
      out << ' ' << x.get_num().get_str() << '/' << x.get_den().get_str();
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

std::string two_adic_to_document(const CompleteMarkedLattice& c) {
  std::ostringstream out;
  out << "mrt-document v1\nkind two-adic\nrank " << c.group->dim() << "\nprecision "
      << c.precision << "\n";
  for (int i = 0; i < c.group->size(); ++i) {
    if (c.group->sigma_index(i) < 0) continue;
    out << "matrix\n";
    const auto& m = c.group->mat(i);
    for (int r = 0; r < m.dim(); ++r) {
      for (int j = 0; j < m.dim(); ++j) out << (j ? " " : "") << m.at(r, j);
      out << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

}  // namespace mrt

// Python bindings for the main operations: catalog access, markings and
// root-system conversions, normalizer-extension verdicts, 2-adic
// classification, documents, and the acceptance selftest.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mrt/document.hpp"
#include "mrt/selftest.hpp"

namespace py = pybind11;
using namespace mrt;

namespace {

py::dict report_dict(const Report& rep) {
  py::list items;
  for (const auto& i : rep.items) {
    py::dict d;
    d["name"] = i.name;
    d["pass"] = i.pass;
    d["detail"] = i.detail;
    items.append(d);
  }
  py::dict out;
  out["ok"] = rep.ok();
  out["checks"] = items;
  return out;
}

py::list vec_list(const IntVec& v) {
  py::list out;
  for (const auto& x : v) out.append(py::int_(py::str(x.get_str())));
  return out;
}

py::list torus_list(const TorusElement& t) {
  py::list out;
  for (const auto& x : t.c) out.append(py::make_tuple(py::int_(py::str(x.get_num().get_str())),
                                                      py::int_(py::str(x.get_den().get_str()))));
  return out;
}

CatalogEntry entry_of(const std::string& name) { return build_entry(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact calculus of marked reflection lattices, tori and their normalizer extensions";

  m.def("catalog_names", &catalog_names);

  m.def("catalog_entry", [](const std::string& name) {
    CatalogEntry e = entry_of(name);
    py::dict out;
    out["name"] = e.name;
    out["cartan_type"] = e.cartan_type;
    out["rank"] = e.rank;
    out["form"] = e.form;
    out["group_order"] = e.lattice.group->size();
    out["reflections"] = e.lattice.group->reflections().size();
    out["reflection_classes"] = e.lattice.group->reflection_classes().size();
    out["root_systems"] = py::int_(py::str(count_root_systems(*e.lattice.group).get_str()));
    return out;
  });

  m.def("root_system", [](const std::string& name) {
    RootSystem rs = lattice_to_rootsystem(entry_of(name).lattice);
    py::list roots, coroots;
    for (const auto& r : rs.roots) roots.append(vec_list(r));
    for (const auto& c : rs.coroots) coroots.append(vec_list(c));
    py::dict out;
    out["rank"] = rs.rank;
    out["roots"] = roots;
    out["coroots"] = coroots;
    return out;
  });

  m.def("markings", [](const std::string& name) {
    CatalogEntry e = entry_of(name);
    const auto& g = *e.lattice.group;
    py::list out;
    for (const auto& cls : g.reflection_classes()) {
      const IntMatrix& mat = g.mat(g.reflections()[cls.rep]);
      py::dict d;
      d["class_size"] = cls.members.size();
      d["trivial_mod2"] = is_trivial_mod2(mat);
      py::list options;
      for (const auto& mk : markings_of(mat)) {
        py::dict o;
        o["b"] = vec_list(mk.b);
        o["beta"] = vec_list(mk.beta);
        options.append(o);
      }
      d["markings"] = options;
      out.append(d);
    }
    return out;
  });

  m.def("torus_markings", [](const std::string& name) {
    MarkedReflectionTorus t = lattice_to_torus(entry_of(name).lattice);
    py::list out;
    for (const auto& h : t.h) out.append(torus_list(h));
    return out;
  });

  m.def("nt_verdicts", [](const std::string& name) {
    NtModel model = nt_model(entry_of(name));
    py::dict out;
    out["any_root_subextension_nonsplit"] = model.any_root_nonsplit;
    if (model.global_split) out["cocycle_split"] = model.global_split->split;
    py::list per_class;
    for (bool s : model.root_split_per_class) per_class.append(s);
    out["root_subextension_split_per_class"] = per_class;
    return out;
  });

  m.def("presentation_check", [](const std::string& name) {
    NtModel model = nt_model(entry_of(name));
    PresentationReport rep = presentation_check(model.nu, model.ss);
    py::dict out = report_dict(rep.report);
    out["corrected_sections"] = rep.corrected;
    return out;
  });

  m.def("tits_vs_reflection_check", [](const std::string& name) {
    CatalogEntry e = entry_of(name);
    SimpleSystem ss = find_simple_system(e.lattice);
    auto view = std::make_shared<LatticeGroupView>(e.lattice.group, &ss);
    ReflectionExtension rho(view);
    tits_vs_reflection(rho, ss);  // throws if not cohomologous
    return true;
  });

  m.def(
      "classify_block",
      [](const std::vector<std::string>& names, int precision, bool include_di4) {
        std::optional<CompleteMarkedLattice> acc;
        if (include_di4) acc = di4_lattice(di4_data(precision));
        for (const auto& n : names) {
          CompleteMarkedLattice c = promote(entry_of(n).lattice, precision);
          acc = acc ? block_sum(*acc, c) : c;
        }
        if (!acc) throw value_error("classify_block: empty input");
        PartitionResult parts = reflection_partition(*acc);
        py::list tags;
        for (const auto& f : parts.factors) tags.append(classify_factor(f).to_string());
        py::dict out;
        out["tags"] = tags;
        out["lattice_sum_splits_mod2"] = parts.mod2_decomposes;
        return out;
      },
      py::arg("names"), py::arg("precision") = 8, py::arg("include_di4") = false);

  m.def("di4_invariants", [](int precision) {
    return report_dict(di4_verify(di4_data(precision)));
  }, py::arg("precision") = 8);

  m.def("validate_document", [](const std::string& text) {
    std::istringstream in(text);
    Document d = parse_document(in);
    Report rep;
    switch (d.kind) {
      case Document::Kind::rootsystem: {
        RootSystem rs = d.roots;
        rs.rank = d.rank;
        rs.sort_canonical();
        rep = validate_root_system(rs);
        break;
      }
      case Document::Kind::lattice:
        rep = validate_marked_lattice(document_to_lattice(d));
        break;
      case Document::Kind::torus_marking:
        rep = validate_marked_torus(document_to_torus(d));
        break;
      default:
        rep.add("schema", true);
    }
    return report_dict(rep);
  });

  m.def("export_entry", [](const std::string& name) {
    return lattice_to_document(entry_of(name).lattice);
  });

  m.def("selftest", [](const std::string& level) {
    auto results = run_selftest(level == "full" ? SelftestLevel::full : SelftestLevel::quick);
    py::list out;
    for (const auto& r : results) {
      py::dict d;
      d["id"] = r.id;
      d["title"] = r.title;
      d["pass"] = r.pass;
      d["ran"] = r.ran;
      d["detail"] = r.detail;
      d["seconds"] = r.seconds;
      out.append(d);
    }
    return out;
  }, py::arg("level") = "quick");

  py::register_exception<value_error>(m, "ValueError2", PyExc_ValueError);
  py::register_exception<precision_error>(m, "PrecisionError");
  py::register_exception<invariant_violation>(m, "InvariantViolation");
}

// Command-line front end: validations, normalizer-extension construction,
// cocycle comparison, 2-adic classification, catalog access, and the
// acceptance selftest. Every verdict printed here is produced by library
// calls; the CLI only formats.
//
// Exit codes: 0 pass, 1 validation failure, 2 usage or parse error,
//             3 internal invariant violation.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mrt/document.hpp"
#include "mrt/selftest.hpp"

using json = nlohmann::json;

namespace {

json report_json(const mrt::Report& rep) {
  json items = json::array();
  for (const auto& item : rep.items)
    items.push_back({{"name", item.name}, {"pass", item.pass}, {"detail", item.detail}});
  return {{"ok", rep.ok()}, {"checks", items}};
}

void print_report(const mrt::Report& rep) {
  for (const auto& item : rep.items)
    std::cout << (item.pass ? "  pass  " : "  FAIL  ") << item.name
              << (item.detail.empty() ? "" : "  (" + item.detail + ")") << "\n";
}

int cmd_validate(const std::string& path, bool as_json) {
  mrt::Document doc = mrt::load_document(path);
  mrt::Report rep;
  switch (doc.kind) {
    case mrt::Document::Kind::rootsystem: {
      mrt::RootSystem rs = doc.roots;
      rs.rank = doc.rank;
      rs.sort_canonical();
      rep = mrt::validate_root_system(rs);
      break;
    }
    case mrt::Document::Kind::lattice: {
      mrt::MarkedReflectionLattice m = mrt::document_to_lattice(doc);
      rep = mrt::validate_marked_lattice(m);
      break;
    }
    case mrt::Document::Kind::torus_marking: {
      mrt::MarkedReflectionTorus t = mrt::document_to_torus(doc);
      rep = mrt::validate_marked_torus(t);
      if (rep.ok() && t.group->size() <= 64) {
        auto view = std::make_shared<mrt::LatticeGroupView>(t.group);
        mrt::NormalizerExtension nu(view, t.h);
        rep.add("normalizer-cocycle-identity",
                mrt::cocycle_identity_holds(*view, [&](int a, int b) { return nu.value(a, b); }));
      }
      break;
    }
    case mrt::Document::Kind::two_adic: {
      mrt::CompleteMarkedLattice c = mrt::document_to_two_adic(doc);
      rep.add("group-generated", true,
              "order " + std::to_string(c.group->size()) + ", " +
                  std::to_string(c.group->reflections().size()) + " reflections");
      bool gen = static_cast<int>(c.group->subgroup_closure(c.group->reflections()).size()) ==
                 c.group->size();
      rep.add("generated-by-reflections", gen);
      break;
    }
    case mrt::Document::Kind::subgroup: {
      rep.add("schema", true,
              std::to_string(doc.torus_elements.size()) + " torus elements of rank " +
                  std::to_string(doc.rank));
      break;
    }
  }
  if (as_json)
    std::cout << report_json(rep).dump(2) << "\n";
  else
    print_report(rep);
  return rep.ok() ? 0 : 1;
}

int cmd_markings(const std::string& path, bool as_json) {
  mrt::Document doc = mrt::load_document(path);
  json out = json::array();
  if (doc.kind == mrt::Document::Kind::two_adic) {
    mrt::CompleteMarkedLattice c = mrt::document_to_two_adic(doc);
    for (const auto& cls : c.group->reflection_classes()) {
      auto vectors = mrt::two_adic_marking_vectors(*c.group, cls.rep);
      json jcls = {{"class_size", cls.members.size()},
                   {"trivial_mod2", (bool)c.group->reflection_trivial_mod2(cls.rep)},
                   {"markings", vectors.size()}};
      out.push_back(jcls);
      if (!as_json)
        std::cout << "class of size " << cls.members.size() << ": " << vectors.size()
                  << " marking(s), "
                  << (c.group->reflection_trivial_mod2(cls.rep) ? "trivial" : "nontrivial")
                  << " mod 2\n";
    }
  } else {
    if (doc.gens.empty()) throw mrt::value_error("document has no generator matrices");
    mrt::GroupPtr g = mrt::FiniteMatrixGroup::generate(doc.gens);
    for (const auto& cls : g->reflection_classes()) {
      const mrt::IntMatrix& m = g->mat(g->reflections()[cls.rep]);
      auto mk = mrt::markings_of(m);
      json jm = json::array();
      for (const auto& one : mk) {
        json jb = json::array(), jbeta = json::array();
        for (const auto& x : one.b) jb.push_back(x.get_str());
        for (const auto& x : one.beta) jbeta.push_back(x.get_str());
        jm.push_back({{"b", jb}, {"beta", jbeta}});
      }
      out.push_back({{"class_size", cls.members.size()},
                     {"trivial_mod2", mrt::is_trivial_mod2(m)},
                     {"markings", jm}});
      if (!as_json) {
        std::cout << "class of size " << cls.members.size() << " ("
                  << (mrt::is_trivial_mod2(m) ? "trivial" : "nontrivial") << " mod 2):\n";
        for (const auto& one : mk)
          std::cout << "  b = " << mrt::to_string(one.b) << ", beta = " << mrt::to_string(one.beta)
                    << "\n";
      }
    }
    if (!as_json)
      std::cout << "root systems on this reflection lattice: "
                << mrt::count_root_systems(*g).get_str() << "\n";
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_build_nt(const std::string& path, bool presentation, bool split, bool export_cocycle,
                 bool as_json) {
  mrt::Document doc = mrt::load_document(path);
  mrt::MarkedReflectionTorus torus = mrt::document_to_torus(doc);
  mrt::SimpleSystem ss = mrt::find_simple_system(mrt::torus_to_lattice(torus));
  auto view = std::make_shared<mrt::LatticeGroupView>(torus.group, &ss);
  mrt::NormalizerExtension nu(view, torus.h);
  json out;
  out["group_order"] = torus.group->size();
  out["reflections"] = torus.group->reflections().size();
  bool all_ok = true;
  if (!as_json)
    std::cout << "normalizer extension over a group of order " << torus.group->size() << "\n";
  if (export_cocycle) {
    std::ostringstream table;
    for (int a = 0; a < torus.group->size(); ++a)
      for (int b = 0; b < torus.group->size(); ++b) {
        mrt::TorusElement v = nu.value(a, b);
        if (v.is_zero()) continue;
        table << a << " " << b << " " << mrt::to_string(v) << "\n";
      }
    if (as_json)
      out["cocycle_table"] = table.str();
    else
      std::cout << "cocycle table (nonzero values):\n" << table.str();
  }
  if (presentation) {
    mrt::PresentationReport rep = mrt::presentation_check(nu, ss);
    all_ok = all_ok && rep.ok();
    out["presentation"] = report_json(rep.report);
    out["presentation_corrected_sections"] = rep.corrected;
    if (!as_json) {
      std::cout << "presentation relations:\n";
      print_report(rep.report);
    }
  }
  if (split) {
    mrt::SplitCheckResult res = mrt::split_check(nu);
    out["split"] = res.split;
    std::vector<bool> root_split;
    const auto& g = *torus.group;
    bool any_nonsplit = false;
    for (const auto& cls : g.reflection_classes()) {
      mrt::IntVec axis = mrt::negative_eigenvector(g.mat(g.reflections()[cls.rep]));
      bool s = mrt::root_subextension_split(nu, cls.rep, axis);
      root_split.push_back(s);
      any_nonsplit = any_nonsplit || !s;
    }
    out["root_subextensions_split"] = root_split;
    if (!as_json) {
      std::cout << "extension cocycle is " << (res.split ? "a coboundary (split)" : "nonsplit")
                << "\n";
      for (size_t i = 0; i < root_split.size(); ++i)
        std::cout << "root subextension of class " << i << ": "
                  << (root_split[i] ? "split" : "nonsplit") << "\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_compare(const std::string& path1, const std::string& path2, bool as_json) {
  mrt::MarkedReflectionTorus t1 = mrt::document_to_torus(mrt::load_document(path1));
  mrt::MarkedReflectionTorus t2 = mrt::document_to_torus(mrt::load_document(path2));
  if (t1.group->size() != t2.group->size() || t1.group->dim() != t2.group->dim())
    throw mrt::value_error("documents describe different groups; nothing to compare");
  for (int i = 0; i < t1.group->size(); ++i)
    if (t1.group->mat(i) != t2.group->mat(i))
      throw mrt::value_error("documents describe different groups; nothing to compare");
  mrt::SimpleSystem ss = mrt::find_simple_system(mrt::torus_to_lattice(t1));
  auto view = std::make_shared<mrt::LatticeGroupView>(t1.group, &ss);
  mrt::NormalizerExtension nu1(view, t1.h), nu2(view, t2.h);
  std::vector<int> gens;
  for (int e : t1.group->reflections()) gens.push_back(e);
  auto witness = mrt::torus_cohomologous_witness(
      *view, gens, 0, [&](int a, int b) { return nu1.value(a, b); },
      [&](int a, int b) { return nu2.value(a, b); });
  bool same = witness.has_value();
  if (as_json)
    std::cout << json{{"cohomologous", same}}.dump(2) << "\n";
  else
    std::cout << "normalizer cocycles are " << (same ? "cohomologous" : "not cohomologous")
              << "\n";
  return same ? 0 : 1;
}

int cmd_classify(const std::string& path, int precision, bool as_json) {
  mrt::Document doc = mrt::load_document(path);
  mrt::CompleteMarkedLattice c = mrt::document_to_two_adic(doc, precision);
  mrt::PartitionResult parts = mrt::reflection_partition(c);
  json out;
  out["factors"] = json::array();
  bool ok = parts.mod2_decomposes || parts.factors.empty();
  for (const auto& f : parts.factors) {
    mrt::FactorTag tag = mrt::classify_factor(f);
    out["factors"].push_back({{"tag", tag.to_string()},
                              {"rank", f.rank},
                              {"order", f.order},
                              {"reflections", f.reflection_count}});
    if (!as_json)
      std::cout << tag.to_string() << "  (rank " << f.rank << ", order " << f.order << ", "
                << f.reflection_count << " reflections)\n";
  }
  out["lattice_sum_splits_mod2"] = parts.mod2_decomposes;
  if (!parts.detail.empty()) out["detail"] = parts.detail;
  if (as_json) std::cout << out.dump(2) << "\n";
  if (!as_json && parts.factors.empty()) std::cout << "no factors (empty reflection set)\n";
  if (!as_json && !parts.detail.empty()) std::cout << parts.detail << "\n";
  return ok ? 0 : 1;
}

int cmd_catalog(const std::string& name, const std::string& export_kind, bool as_json) {
  if (name.empty()) {
    json out = json::array();
    for (const auto& n : mrt::catalog_names()) {
      mrt::CatalogEntry e = mrt::build_entry(n);
      out.push_back({{"name", n},
                     {"type", e.cartan_type},
                     {"rank", e.rank},
                     {"form", e.form},
                     {"group_order", e.lattice.group->size()}});
      if (!as_json)
        std::cout << n << "  type " << e.cartan_type << ", rank " << e.rank << ", form " << e.form
                  << ", |W| = " << e.lattice.group->size() << "\n";
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return 0;
  }
  mrt::CatalogEntry e = mrt::build_entry(name);
  if (!export_kind.empty()) {
    if (export_kind == "lattice")
      std::cout << mrt::lattice_to_document(e.lattice);
    else if (export_kind == "rootsystem")
      std::cout << mrt::rootsystem_to_document(mrt::lattice_to_rootsystem(e.lattice));
    else if (export_kind == "torus")
      std::cout << mrt::torus_to_document(mrt::lattice_to_torus(e.lattice));
    else if (export_kind == "two-adic")
      std::cout << mrt::two_adic_to_document(mrt::promote(e.lattice, 8));
    else
      throw mrt::value_error("unknown export kind: " + export_kind);
    return 0;
  }
  mrt::NtModel model = mrt::nt_model(e);
  json out = {{"name", e.name},
              {"rank", e.rank},
              {"group_order", e.lattice.group->size()},
              {"reflections", e.lattice.group->reflections().size()},
              {"root_systems", mrt::count_root_systems(*e.lattice.group).get_str()},
              {"any_root_subextension_nonsplit", model.any_root_nonsplit}};
  if (model.global_split) out["cocycle_split"] = model.global_split->split;
  if (as_json)
    std::cout << out.dump(2) << "\n";
  else
    std::cout << e.name << ": rank " << e.rank << ", |W| = " << e.lattice.group->size() << ", "
              << e.lattice.group->reflections().size() << " reflections, "
              << mrt::count_root_systems(*e.lattice.group).get_str() << " root system(s), "
              << (model.any_root_nonsplit ? "nonsplit" : "split") << " root subextensions\n";
  return 0;
}

int cmd_selftest(const std::string& level, bool as_json) {
  mrt::SelftestLevel lv =
      level == "full" ? mrt::SelftestLevel::full : mrt::SelftestLevel::quick;
  auto results = mrt::run_selftest(lv);
  bool all = true;
  json out = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    out.push_back({{"id", r.id},
                   {"title", r.title},
                   {"pass", r.pass},
                   {"ran", r.ran},
                   {"detail", r.detail},
                   {"seconds", r.seconds}});
    if (!as_json) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2fs", r.seconds);
      std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title
                << (r.detail.empty() ? "" : " -- " + r.detail) << " [" << buf << "]\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return all ? 0 : 1;
}

int cmd_di4_oracle(int precision, const std::string& out_path) {
  mrt::DI4Data d = mrt::di4_compute(precision);
  std::string text = mrt::di4_fixture_text(d);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw mrt::value_error("cannot write " + out_path);
    out << text;
    mrt::Report rep = mrt::di4_verify(d);
    std::cout << "wrote " << out_path << "\n";
    print_report(rep);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus of marked reflection lattices, tori and their normalizer extensions"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable reports");

  std::string path, path2, name, level = "quick", out_path, export_kind;
  int precision = 0, oracle_precision = 24;
  bool presentation = false, split = false, export_cocycle = false, export_doc = false;

  auto* validate = app.add_subcommand("validate", "run the validator for a document");
  validate->add_option("path", path)->required();

  auto* markings = app.add_subcommand("markings", "list the markings of each reflection class");
  markings->add_option("path", path)->required();

  auto* build_nt = app.add_subcommand("build-nt", "construct the normalizer extension");
  build_nt->add_option("path", path)->required();
  build_nt->add_flag("--presentation-check", presentation);
  build_nt->add_flag("--split-check", split);
  build_nt->add_flag("--export-cocycle", export_cocycle);

  auto* compare = app.add_subcommand("compare", "compare two marked tori on the same group");
  compare->add_option("path1", path)->required();
  compare->add_option("path2", path2)->required();

  auto* classify = app.add_subcommand("classify2adic", "split and classify a two-adic document");
  classify->add_option("path", path)->required();
  classify->add_option("--precision", precision, "working precision (bits)");

  auto* catalog = app.add_subcommand("catalog", "list or inspect built-in entries");
  catalog->add_option("name", name);
  catalog->add_flag("--export", export_doc, "emit the entry as a lattice document");
  catalog->add_option("--export-kind", export_kind,
                      "lattice|rootsystem|torus|two-adic (implies export)")
      ->check(CLI::IsMember({"lattice", "rootsystem", "torus", "two-adic"}));

  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
  selftest->add_option("--level", level, "quick|full")->check(CLI::IsMember({"quick", "full"}));

  auto* oracle = app.add_subcommand("di4-oracle", "regenerate the DI4 fixture data");
  oracle->add_option("--precision", oracle_precision, "fixture precision (bits)");
  oracle->add_option("--out", out_path, "output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, as_json);
    if (markings->parsed()) return cmd_markings(path, as_json);
    if (build_nt->parsed())
      return cmd_build_nt(path, presentation, split, export_cocycle, as_json);
    if (compare->parsed()) return cmd_compare(path, path2, as_json);
    if (classify->parsed()) return cmd_classify(path, precision, as_json);
    if (catalog->parsed())
      return cmd_catalog(name, export_kind.empty() ? (export_doc ? "lattice" : "") : export_kind,
                         as_json);
    if (selftest->parsed()) return cmd_selftest(level, as_json);
    if (oracle->parsed()) return cmd_di4_oracle(oracle_precision, out_path);
  } catch (const mrt::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const mrt::invariant_violation& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const mrt::precision_error& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 1;
  } catch (const mrt::value_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

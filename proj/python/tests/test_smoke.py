"""Smoke tests for the python module and the CLI binary.

The ctest harness sets MRT_MODULE_DIR to the directory holding the built
extension (and the mrt binary); an installed wheel works without it.
"""

import json
import os
import subprocess
import sys

import pytest


def _load():
    moddir = os.environ.get("MRT_MODULE_DIR")
    if moddir:
        sys.path.insert(0, moddir)
        import _core as m  # the extension module straight from the build tree

        return m
    import mrt

    return mrt


m = _load()


def test_catalog_listing():
    names = m.catalog_names()
    assert "SU(2)" in names and "F4" in names
    e = m.catalog_entry("B2-sc")
    assert e["group_order"] == 8
    assert e["reflections"] == 4
    assert e["root_systems"] == 2


def test_markings_law():
    for name in ("SU(2)", "B2-sc", "A2-sc"):
        for cls in m.markings(name):
            expected = 2 if cls["trivial_mod2"] else 1
            assert len(cls["markings"]) == expected


def test_root_system_round_trip_through_documents():
    text = m.export_entry("U(2)")
    report = m.validate_document(text)
    assert report["ok"]


def test_rank_level_verdicts():
    assert m.nt_verdicts("SU(2)")["any_root_subextension_nonsplit"] is True
    assert m.nt_verdicts("SO(3)")["any_root_subextension_nonsplit"] is False
    assert m.nt_verdicts("U(2)")["any_root_subextension_nonsplit"] is True
    assert m.nt_verdicts("SO(3)")["cocycle_split"] is True
    assert m.nt_verdicts("SU(2)")["cocycle_split"] is False


def test_presentation_and_tits():
    rep = m.presentation_check("G2")
    assert rep["ok"]
    assert m.tits_vs_reflection_check("A2-sc")


def test_classification():
    out = m.classify_block(["B2-sc", "SU(2)"], precision=8, include_di4=True)
    assert sorted(out["tags"]) == ["Coxeter(A1)", "Coxeter(B2)", "DI4"]
    assert out["lattice_sum_splits_mod2"]


def test_di4_invariants():
    rep = m.di4_invariants(8)
    assert rep["ok"]


def test_torus_markings_halving():
    h = m.torus_markings("SU(2)")
    assert h[0] == [(1, 2)]


@pytest.mark.skipif("MRT_MODULE_DIR" not in os.environ, reason="needs the build tree")
def test_cli_end_to_end(tmp_path):
    exe = os.path.join(os.environ["MRT_MODULE_DIR"], "mrt")
    assert os.path.exists(exe)

    out1 = subprocess.run([exe, "--json", "catalog"], capture_output=True, text=True, check=True)
    out2 = subprocess.run([exe, "--json", "catalog"], capture_output=True, text=True, check=True)
    assert out1.stdout == out2.stdout  # byte-identical reports
    entries = json.loads(out1.stdout)
    assert any(e["name"] == "G2" for e in entries)

    doc = subprocess.run([exe, "catalog", "SU(2)", "--export"], capture_output=True, text=True,
                         check=True).stdout
    path = tmp_path / "su2.mrt"
    path.write_text(doc)
    v = subprocess.run([exe, "validate", str(path)], capture_output=True, text=True)
    assert v.returncode == 0

    nt = subprocess.run([exe, "--json", "build-nt", str(path), "--split-check"],
                        capture_output=True, text=True, check=True)
    data = json.loads(nt.stdout)
    assert data["split"] is False

    bad = tmp_path / "bad.mrt"
    bad.write_text("mrt-document v1\nkind lattice\nrank 2\nmatrix\n1 0\n")
    p = subprocess.run([exe, "validate", str(bad)], capture_output=True, text=True)
    assert p.returncode == 2  # parse error with a line number
    assert "line" in p.stderr


@pytest.mark.skipif("MRT_MODULE_DIR" not in os.environ, reason="needs the build tree")
def test_cli_compare_and_classify(tmp_path):
    exe = os.path.join(os.environ["MRT_MODULE_DIR"], "mrt")

    # the two rank-1 torus markings are not cohomologous
    su2 = "mrt-document v1\nkind torus-marking\nrank 1\nmatrix\n-1\nmarked-matrix\n-1\nh 1/2\nend\n"
    so3 = "mrt-document v1\nkind torus-marking\nrank 1\nmatrix\n-1\nmarked-matrix\n-1\nh 0\nend\n"
    p1, p2 = tmp_path / "a.mrt", tmp_path / "b.mrt"
    p1.write_text(su2)
    p2.write_text(so3)
    r = subprocess.run([exe, "compare", str(p1), str(p2)], capture_output=True, text=True)
    assert r.returncode == 1
    assert "not cohomologous" in r.stdout
    r = subprocess.run([exe, "compare", str(p1), str(p1)], capture_output=True, text=True)
    assert r.returncode == 0

    # two-adic export/classify round trip
    doc = subprocess.run([exe, "catalog", "G2", "--export-kind", "two-adic"],
                         capture_output=True, text=True, check=True).stdout
    path = tmp_path / "g2.mrt"
    path.write_text(doc)
    out = subprocess.run([exe, "--json", "classify2adic", str(path)], capture_output=True,
                         text=True, check=True)
    data = json.loads(out.stdout)
    assert [f["tag"] for f in data["factors"]] == ["Coxeter(G2)"]


@pytest.mark.skipif("MRT_MODULE_DIR" not in os.environ, reason="needs the build tree")
def test_fixture_override_detects_corruption(tmp_path):
    exe = os.path.join(os.environ["MRT_MODULE_DIR"], "mrt")
    src = os.path.join(os.environ.get("MRT_SOURCE_DIR", "."), "data", "di4_fixture.txt")
    text = open(src).read()
    lines = text.splitlines()
    lines[2] = lines[2].replace(lines[2].split()[0], str(int(lines[2].split()[0]) + 1), 1)
    (tmp_path / "di4_fixture.txt").write_text("\n".join(lines) + "\n")
    env = dict(os.environ, MRT_FIXTURE_DIR=str(tmp_path))
    r = subprocess.run([exe, "selftest", "--level", "quick"], capture_output=True, text=True,
                       env=env)
    assert r.returncode == 1
    assert "criterion 11" in r.stdout and "FAIL" in r.stdout
    # the intact fixture directory passes
    env["MRT_FIXTURE_DIR"] = os.path.dirname(src)
    ok = subprocess.run([exe, "--json", "selftest", "--level", "quick"], capture_output=True,
                        text=True, env=env)
    assert ok.returncode == 0

import json
import random

import pytest

from instances import CANONICAL, EXTRA, instance, manifest_data
from nlconn.calculus import VectorForm
from nlconn.manifest import parse_manifest
from nlconn.randomgen import compatible_pair
from nlconn.ratpoly import MultiPoly
from nlconn.report import MAX_RESIDUAL_TERMS, CheckRecord, VerificationReport, emit_report, render_residual
from nlconn.suite import CHECKS, run_suite


def failing(report):
    return [c.check_id for c in report.checks if c.status == "fail"]


def test_registry_ids_unique_and_described():
    ids = [c[0] for c in CHECKS]
    assert len(ids) == len(set(ids)) == 51
    assert all(stmt and ref for _, stmt, ref, _ in CHECKS)


@pytest.mark.parametrize("name", CANONICAL)
def test_canonical_manifests_pass(name):
    rep = run_suite(parse_manifest(manifest_data(name)))
    assert failing(rep) == []
    assert [c.check_id for c in rep.checks] == sorted(c[0] for c in CHECKS)


def test_torsion_instance_skips_homogeneous_only_checks():
    rep = run_suite(parse_manifest(manifest_data("torsion_n1")))
    skipped = {c.check_id for c in rep.checks if c.status == "skipped"}
    assert skipped and all(c.residual for c in rep.checks if c.status == "skipped")


@pytest.mark.parametrize("name", EXTRA)
def test_curved_extras_fail_only_the_stated_hF_bracket(name):
    rep = run_suite(parse_manifest(manifest_data(name)))
    assert failing(rep) == ["F07"]
    assert rep.by_id("F08").status == "pass"


def test_incompatible_torsion_blocks_dependents():
    rep = run_suite(parse_manifest(manifest_data("incompatible_n1")))
    assert rep.by_id("G01").status == "fail"
    assert rep.by_id("G01").residual == "(y1) d/dy1"
    assert rep.by_id("L01").status == "pass"
    assert any(c.residual.startswith("blocked:") for c in rep.checks)


def test_seed_changes_points_not_verdicts():
    m = parse_manifest(manifest_data("curved_n2"))
    a, b = run_suite(m, seed=1), run_suite(m, seed=2)
    assert a.seed == 1 and b.seed == 2
    assert [c.status for c in a.checks] == [c.status for c in b.checks]


@pytest.mark.parametrize("seed", range(6))
def test_random_compatible_pairs(seed):
    rng = random.Random(seed)
    n = 1 + seed % 2
    G, t = compatible_pair(rng, n)
    data = {
        "dimension_n": n,
        "semispray_vertical": [g.format() for g in G],
        "strong_torsion": [[p.format() for p in row] for row in t],
        "seed": seed,
    }
    rep = run_suite(parse_manifest(data), extra_points=2)
    bad = failing(rep)
    assert set(bad) <= {"F07"}
    if bad:
        assert not instance_R_zero(data)


def instance_R_zero(data):
    from instances import from_data
    return from_data(data).R.is_zero()


def test_instance_objects_cached():
    ins = instance("curved_n2_corrected")
    assert ins.conn is ins.conn
    assert ins.R == instance("curved_n2_corrected").R


def test_empty_report():
    rep = VerificationReport(seed=7, n=2)
    assert json.loads(emit_report(rep)) == {
        "version": "1", "seed": 7, "n": 2, "checks": [], "summary": {"pass": 0, "fail": 0, "skipped": 0},
    }
    assert emit_report(rep, "text") == b"summary: 0 pass, 0 fail, 0 skipped (seed 7, n=2)\n"
    with pytest.raises(ValueError):
        emit_report(rep, "xml")


def test_report_text_includes_residual():
    rep = VerificationReport(seed=0, n=1, checks=[CheckRecord("X01", "a = b", "demo", "fail", "(y1) d/dy1", 0.5)])
    text = emit_report(rep, "text", timings=True).decode()
    assert "X01  FAIL  a = b  (demo)\n    residual: (y1) d/dy1  [0.500s]" in text
    assert json.loads(emit_report(rep, timings=True))["checks"][0]["duration"] == 0.5


def test_render_residual_truncates():
    N = 2
    big = sum((MultiPoly.monomial(N, (k, 1)) for k in range(40)), MultiPoly.zero(N))
    text = render_residual(big)
    assert text.endswith("[8 more terms omitted]")
    assert text.count("y1") == MAX_RESIDUAL_TERMS
    K = VectorForm.from_matrix([[MultiPoly.zero(N), MultiPoly.zero(N)], [big, big]])
    assert render_residual(K).endswith("[48 more terms omitted]")
    assert render_residual(MultiPoly.zero(N)) == ""
    assert render_residual(None) == ""
    with pytest.raises(TypeError):
        render_residual(3.5)

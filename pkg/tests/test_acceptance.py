"""Acceptance criteria 1-11, one test each.

Every test records a PASS/FAIL line with the measured error and run time;
the lines are echoed in the terminal summary.
"""

import io
import json
import math
import time
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from conftest import ACCEPTANCE_LINES
from rose import FLAT, HYPERBOLIC, RadiiTable, get_metric, get_table
from rose.cli import main
from rose.oracle import oracle_compare_suite
from rose.verify import (
    cat_comparison_suite,
    extreme_scan,
    isometry_suite,
    separation_law_suite,
    separation_suite,
    through_center_suite,
)


def record(label, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {title} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_radii():
    start = time.perf_counter()
    t = RadiiTable(FLAT)
    limit = math.pi / math.sqrt(6)
    tails_ok = all(1 / (n + 1) < math.pi**2 / 6 - t.radius(n) ** 2 < 1 / n for n in (10, 100, 1000, 10_000))
    bounded = all(t.radius(n) < limit for n in range(1, 10_001))
    err3 = abs(t.radius(3) - 7 / 6)
    elapsed = time.perf_counter() - start
    ok = t.radius(1) == 1.0 and err3 <= 1e-15 and tails_ok and bounded and elapsed < 1.0
    record("criterion  1", "radii", ok, f"|r_3 - 7/6| = {err3:.1e}, tails {tails_ok}, bounded {bounded}, {elapsed:.3f}s")


def test_criterion_02_angles():
    t = get_table(FLAT)
    d1 = math.degrees(t.theta(1))
    d12 = math.degrees(t.theta_sum(1, 2))
    ok = abs(d1 - 26.5651) <= 1e-4 and abs(d12 - 43.1666) <= 2e-4
    record("criterion  2", "figure angles", ok, f"theta_1 = {d1:.6f} deg, theta_1 + theta_2 = {d12:.6f} deg")


def test_criterion_03_angle_inequality():
    start = time.perf_counter()
    t = RadiiTable(FLAT)
    c = math.pi / math.sqrt(6)
    worst = min(math.sin(t.theta(n)) * c * (n + 1) for n in range(1, 10_001))
    elapsed = time.perf_counter() - start
    ok = worst > 1.0 and elapsed < 1.0
    record("criterion  3", "sin(theta_n) pi (n+1)/sqrt 6 > 1", ok, f"min ratio {worst:.12f}, {elapsed:.3f}s")


def test_criterion_04_oracle():
    start = time.perf_counter()
    r = oracle_compare_suite(get_metric(FLAT), 4, 0.02, 200, 42)
    elapsed = time.perf_counter() - start
    ok = r["pass"] and r["min_gap"] >= -1e-12 and r["max_gap"] <= 0.05 and elapsed < 60
    record("criterion  4", "oracle equivalence", ok,
           f"gaps in [{r['min_gap']:.1e}, {r['max_gap']:.2e}], refinement growth {r['max_refinement_growth']:.1e}, "
           f"{r['nodes']} nodes, {elapsed:.1f}s")


def test_criterion_05_cat():
    flat = cat_comparison_suite(get_metric(FLAT), 500, 6, 3)
    hyp = cat_comparison_suite(get_metric(HYPERBOLIC), 200, 6, 3)
    ok = flat["pass"] and hyp["pass"]
    record("criterion  5", "CAT(0) and CAT(-1) comparison", ok,
           f"violations {len(flat['violations'])} / {len(hyp['violations'])}, "
           f"max excess {flat['max_excess']:.1e} / {hyp['max_excess']:.1e}")


def test_criterion_06_no_extreme_points():
    r = extreme_scan(get_metric(FLAT), 8, 1000, 42)
    ok = r["pass"] and r["max_gap"] <= 1e-10 and r["min_leg"] > 0
    record("criterion  6", "no extreme points", ok,
           f"{r['corners']} corners + {r['samples']} samples, {len(r['failures'])} failures, max gap {r['max_gap']:.1e}")


def test_criterion_07_through_center(golden):
    m = get_metric(FLAT)
    tc = through_center_suite(m, 50, 42)
    law = separation_law_suite(m, 1000, 42)
    ok = tc["pass"] and tc["M"] == golden["flat"]["M_pi"] and law["pass"]
    record("criterion  7", "through-center threshold and pi/3 law", ok,
           f"M = {tc['M']}, {len(tc['failures'])} pair failures, pi/3 law on {law['samples']} applicable samples")


def test_criterion_08_separation_cover():
    r = separation_suite(get_metric(FLAT), 20, 42, depth=6, cover_samples=1000, geodesics=100)
    record("criterion  8", "separation cover", r["pass"],
           f"{r['pairs']} covers, uncovered {r['uncovered']}, geodesic escapes {r['geodesic_escapes']}")


def test_criterion_09_isometries():
    r = isometry_suite(get_metric(FLAT), 200, 8, 5)
    ok = r["pass"] and r["max_err"] <= 1e-12
    record("criterion  9", "isometry invariance", ok, f"max deviation {r['max_err']:.1e}, {r['involutions']} involutions checked")


def test_criterion_10_hyperbolic(golden):
    start = time.perf_counter()
    h = get_metric(HYPERBOLIC)
    t = RadiiTable(HYPERBOLIC)
    increasing = all(t.radius(n + 1) > t.radius(n) for n in range(1, 2000))
    drift = abs(t.radius(2000) - t.radius(1000))
    oracle = oracle_compare_suite(h, 3, 0.02, 100, 42)
    cat = cat_comparison_suite(h, 100, 3, 42)
    extreme = extreme_scan(h, 3, 100, 42)
    ok = increasing and drift < 1e-3 and oracle["pass"] and cat["pass"] and extreme["pass"]
    elapsed = time.perf_counter() - start
    record("criterion 10", "hyperbolic variant", ok,
           f"|s_2000 - s_1000| = {drift:.3e}, oracle max gap {oracle['max_gap']:.2e}, "
           f"cat {len(cat['violations'])} violations, extreme {len(extreme['failures'])} failures, {elapsed:.1f}s")


def test_criterion_11_render(tmp_path):
    docs = []
    for k in range(2):
        path = tmp_path / f"rose{k}.svg"
        code = main(["render", "--depth", "6", "--mode", "spiral", "--out", str(path)], stdout=io.StringIO())
        assert code == 0
        docs.append(path.read_bytes())
    ns = "{http://www.w3.org/2000/svg}"
    root = ET.fromstring(docs[0])
    counts = [len(g.findall(ns + "polygon")) for g in root.iter(ns + "g") if g.get("class") == "sheet"]
    radius = next(root.iter(ns + "circle")).get("r")
    ok = counts == [126, 126] and radius == "1.28254983" and docs[0] == docs[1]
    record("criterion 11", "spiral rendering", ok, f"triangles per sheet {counts}, circle r = {radius}, identical {docs[0] == docs[1]}")


def test_cli_verify_all_matches_golden_report():
    golden = json.loads((Path(__file__).parent / "golden_verify_depth6.json").read_text())
    out = io.StringIO()
    code = main(golden["argv"], stdout=out)
    doc = json.loads(out.getvalue())
    failed = [c["name"] for c in doc["checks"] if not c["pass"]]
    same = [c["name"] for c in doc["checks"]] == [c["name"] for c in golden["checks"]] and all(
        c["max_err"] == pytest.approx(g["max_err"], rel=1e-6, abs=1e-15)
        for c, g in zip(doc["checks"], golden["checks"])
    )
    record("verify all", "CLI report at depth 6 vs committed golden", code == 0 and not failed and same,
           f"exit {code}, {len(doc['checks'])} checks, failing {failed or 'none'}, matches golden {same}")

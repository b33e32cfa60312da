import io
import json
import math
import xml.etree.ElementTree as ET

import pytest

from rose import FLAT, HYPERBOLIC, DomainError, get_table, parse_point
from rose.cli import main, parse_target, UsageError
from rose.render import render_svg

SVG = "{http://www.w3.org/2000/svg}"


def sheet_counts(svg: str) -> dict:
    root = ET.fromstring(svg.encode())
    return {
        g.get("data-sheet"): len(g.findall(SVG + "polygon"))
        for g in root.iter(SVG + "g")
        if g.get("class") == "sheet"
    }


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stdout=out)
    return code, out.getvalue()


@pytest.mark.parametrize("depth", [1, 2, 6, 9])
def test_spiral_triangle_counts(depth):
    counts = sheet_counts(render_svg(get_table(FLAT), depth, "spiral"))
    assert counts == {"+": 2 ** (depth + 1) - 2, "-": 2 ** (depth + 1) - 2}


def test_spiral_annotations_and_bound():
    svg = render_svg(get_table(FLAT), 6, "spiral")
    root = ET.fromstring(svg.encode())
    circles = [c.get("r") for c in root.iter(SVG + "circle")]
    assert circles == ["1.28254983"]
    labels = [t.text for t in root.iter(SVG + "text")]
    assert labels == ["26.5651°", "43.1666°"]


def test_spiral_is_deterministic():
    assert render_svg(get_table(FLAT), 7) == render_svg(get_table(FLAT), 7)


def test_deep_spiral_collapses_siblings(golden):
    svg = render_svg(get_table(FLAT), 50)
    root = ET.fromstring(svg.encode())
    tagged = [p for p in root.iter(SVG + "polygon") if p.get("data-multiplicity")]
    assert tagged and int(tagged[-1].get("data-multiplicity")) == 2 ** 49
    # deepest border ray sits at the cumulative angle theta_1 + ... + theta_50
    last = [p for p in root.iter(SVG + "polygon") if p.get("data-address", "").startswith("R" * 49)][0]
    x, y = map(float, last.get("points").split()[2].split(","))
    angle = math.atan2(x, -y) % (2 * math.pi)
    assert angle == pytest.approx(golden["flat"]["theta_sum_1_50"] % (2 * math.pi), abs=1e-6)
    assert golden["flat"]["theta_sum_1_50"] < 2 * math.pi


def test_spiral_depth_limit():
    with pytest.raises(DomainError):
        render_svg(get_table(FLAT), 51)
    with pytest.raises(DomainError):
        render_svg(get_table(FLAT), 3, "radial")


def test_petal_mode():
    svg = render_svg(get_table(FLAT), 1, "petal")
    root = ET.fromstring(svg.encode())
    assert len(root.findall(f".//{SVG}polygon")) == 4
    texts = [t.text for t in root.iter(SVG + "text")]
    assert "median 2" in texts and "base half-length 0.5" in texts


def test_hyperbolic_render_uses_its_own_bound():
    svg = render_svg(get_table(HYPERBOLIC), 4)
    root = ET.fromstring(svg.encode())
    assert float(next(root.iter(SVG + "circle")).get("r")) == pytest.approx(1.38173086, abs=1e-8)


def test_parse_target():
    assert parse_target("pi") == math.pi
    assert parse_target("pi/3") == math.pi / 3
    assert parse_target("2pi") == 2 * math.pi
    assert parse_target("0.5") == 0.5
    with pytest.raises(UsageError):
        parse_target("tau")


def test_cli_dist_and_angle():
    code, out = run("dist", "-/R+:1:0", "-/R-:1:0")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"] == 2.0 and doc["command"] == "dist"
    assert doc["config"] == {
        "curvature": "flat", "depth": 8, "seed": 42, "step": 0.02,
        "mode": "spiral", "out": None, "tolerances": {},
    }
    assert doc["checks"] == []
    code, out = run("angle", "-/R+:1:0", "-/R-:1:0")
    assert json.loads(out)["result"] == math.pi


def test_cli_parse_error_exit_code():
    code, out = run("dist", "-/R+:1:0", "LR/X+:1:0")
    doc = json.loads(out)
    assert code == 2
    assert doc["error"]["position"] == 3
    code, _ = run("dist", "-/R+:1:0")
    assert code == 2
    code, _ = run("bogus")
    assert code == 2


def test_cli_geodesic_round_trips():
    code, out = run("geodesic", "-/L+:1:0.3", "RL/R+:1.1:0.1")
    doc = json.loads(out)
    assert code == 0
    t = get_table(FLAT)
    pts = [parse_point(s, t) for s in doc["result"]["points"]]
    assert len(pts) >= 3
    assert not doc["result"]["through_center"]


def test_cli_midpoint_witness_cover():
    code, out = run("midpoint", "-/R+:1:0", "-/R-:1:0")
    assert json.loads(out)["result"] == "center"
    code, out = run("witness", "center")
    doc = json.loads(out)
    assert code == 0 and doc["checks"][0]["pass"]
    code, out = run("cover", "-/R+:0.5:0", "R/R+:0.3:0.1")
    doc = json.loads(out)
    assert doc["result"]["n"] == 3 and doc["result"]["W_count"] == 8
    code, out = run("cover", "center", "center")
    assert code == 2


def test_cli_threshold(golden):
    code, out = run("threshold", "1", "pi")
    assert json.loads(out)["result"]["M"] == golden["flat"]["M_pi"]
    code, out = run("threshold", "1", "pi", "--curvature", "hyperbolic")
    assert json.loads(out)["result"]["M"] == golden["hyperbolic"]["M_pi"]
    code, out = run("threshold", "1", "pi/3")
    assert json.loads(out)["result"]["M"] == golden["flat"]["M_pi_over_3"]


def test_cli_verify_radius_and_tolerances():
    code, out = run("verify", "radius")
    doc = json.loads(out)
    assert code == 0 and doc["checks"][0]["name"] == "radius"
    # an impossible tolerance makes the suite fail with exit 1
    code, out = run("verify", "isometry", "--depth", "4", "--tol", "isometry=-1")
    assert code == 1
    assert json.loads(out)["config"]["tolerances"] == {"isometry": -1.0}
    code, _ = run("verify", "isometry", "--tol", "nonsense=1")
    assert code == 2


def test_cli_render(tmp_path, capsys):
    path = tmp_path / "rose.svg"
    code, out = run("render", "--depth", "3", "--out", str(path))
    doc = json.loads(out)
    assert code == 0 and doc["result"]["triangles_per_sheet"] == 14
    assert path.read_text() == render_svg(get_table(FLAT), 3)
    code, out = run("render", "--depth", "2", "--mode", "petal")
    assert code == 0 and out.startswith("<?xml")
    code, out = run("render", "--depth", "60")
    assert code == 2

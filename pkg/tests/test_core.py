import math
import random
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from rose import (
    CENTER,
    FLAT,
    HYPERBOLIC,
    LOWER,
    UPPER,
    DomainError,
    PointParseError,
    RadiiTable,
    RosePoint,
    canonicalize,
    format_point,
    get_table,
    level_of,
    make_point,
    parse_point,
)
from rose.core import REL_TOL, corner, vertex_point
from rose.verify import random_point


def test_flat_radii(golden):
    t = RadiiTable(FLAT)
    assert t.radius(1) == 1.0
    r3_exact = Fraction(1) + Fraction(1, 4) + Fraction(1, 9)
    assert r3_exact == Fraction(49, 36)
    assert abs(t.radius(3) - 7 / 6) <= 1e-15
    assert t.radius(10) == pytest.approx(golden["flat"]["r10"], rel=1e-15)


def test_hyperbolic_radii(golden):
    t = RadiiTable(HYPERBOLIC)
    assert t.radius(1) == 1.0
    assert t.radius(2) == pytest.approx(golden["hyperbolic"]["s2"], rel=1e-15)
    assert t.radius(1000) == pytest.approx(golden["hyperbolic"]["s1000"], rel=1e-14)


def test_angles(golden):
    t = get_table(FLAT)
    assert math.degrees(t.theta(1)) == pytest.approx(golden["flat"]["theta1_deg"], abs=1e-12)
    assert math.degrees(t.theta_sum(1, 2)) == pytest.approx(golden["flat"]["theta12_deg"], abs=1e-12)
    assert t.theta_sum(1, 50) == pytest.approx(golden["flat"]["theta_sum_1_50"], rel=1e-14)
    assert t.theta_sum(3, 2) == 0.0
    assert t.theta_sum(4, 4) == t.theta(4)
    assert t.depth("LRL") == t.theta_sum(1, 3)
    h = get_table(HYPERBOLIC)
    assert math.degrees(h.theta(1)) == pytest.approx(golden["hyperbolic"]["theta1_deg"], abs=1e-12)


def test_table_rejects_level_zero():
    with pytest.raises(DomainError):
        get_table().radius(0)
    with pytest.raises(DomainError):
        get_table().theta(0)


def test_table_concurrent_extension():
    t = RadiiTable(FLAT)
    results = []

    def work(n):
        results.append([t.radius(k) for k in range(1, n)])

    threads = [threading.Thread(target=work, args=(3000 + 100 * i,)) for i in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    reference = RadiiTable(FLAT)
    for row in results:
        assert row == [reference.radius(k) for k in range(1, len(row) + 1)]


def test_border_and_base_geometry():
    t = get_table()
    for n in (1, 2, 5):
        assert t.boundary(n, 0.0) == t.radius(n)
        assert t.boundary(n, t.theta(n)) == t.radius(n + 1)
        rho, alpha = t.base_point(n, t.half_base(n))
        assert rho == pytest.approx(t.radius(n + 1), rel=1e-15)
        assert alpha == pytest.approx(t.theta(n), rel=1e-15)
        assert t.base_offset(n, alpha) == pytest.approx(t.half_base(n), rel=1e-14)


def test_canonical_forms(table):
    assert canonicalize(RosePoint("LR", "L", UPPER, 0.0, 0.1), table) is CENTER
    # root median always on side R
    p = make_point(table, "", "L", LOWER, 0.5, 0.0)
    assert (p.addr, p.side, p.alpha) == ("", "R", 0.0)
    # child median becomes the parent's border
    p = make_point(table, "R", "L", UPPER, 0.5, 0.0)
    assert (p.addr, p.side, p.rho, p.alpha) == ("", "R", 0.5, table.theta(1))
    assert level_of(p) == 1
    p = make_point(table, "LR", "R", UPPER, 1.0, 0.0)
    assert (p.addr, p.side, p.alpha) == ("L", "R", table.theta(2))


def test_canonicalize_snaps_within_tolerance(table):
    r = table.radius(1)
    p = make_point(table, "", "R", UPPER, r * (1 + 0.5 * REL_TOL), 0.0)
    assert p.rho == r
    with pytest.raises(DomainError):
        make_point(table, "", "R", UPPER, r * (1 + 1e-9), 0.0)
    with pytest.raises(DomainError):
        make_point(table, "", "R", UPPER, 0.5, table.theta(1) + 1e-9)
    with pytest.raises(DomainError):
        make_point(table, "", "R", UPPER, -0.1, 0.0)
    with pytest.raises(DomainError):
        make_point(table, "LX", "R", UPPER, 0.1, 0.0)
    with pytest.raises(DomainError):
        make_point(table, "", "R", UPPER, math.nan, 0.0)


def test_corner_and_vertex_points(table):
    c = corner(table, "", "R", UPPER)
    assert c.rho == table.radius(2) and c.alpha == table.theta(1)
    assert canonicalize(c, table) == c
    assert vertex_point(table, "R", UPPER, 0.5) == make_point(table, "R", "L", UPPER, 0.5, 0.0)
    assert vertex_point(table, "", UPPER, 0.0) is CENTER


def test_parse_examples(table):
    assert parse_point("center", table) is CENTER
    p = parse_point("-/R+:1:0", table)
    assert p == RosePoint("", "R", UPPER, 1.0, 0.0)
    q = parse_point("RL/L-:1.1:0.01", table)
    assert (q.addr, q.side, q.sheet) == ("RL", "L", LOWER)
    assert format_point(q) == "RL/L-:1.1:0.01"
    # the median of petal R is stored on the root border
    assert format_point(parse_point("R/L+:0.5:0", table)) == f"-/R+:0.5:{table.theta(1)!r}"


@pytest.mark.parametrize(
    "text,position",
    [
        ("", 0),
        ("x/R+:1:0", 0),
        ("-R+:1:0", 1),
        ("-/Q+:1:0", 2),
        ("-/R*:1:0", 3),
        ("-/R+1:0", 4),
        ("-/R+:abc:0", 5),
        ("-/R+:1:0junk", 8),
        ("-/R+:5:0", 5),
    ],
)
def test_parse_errors_report_position(table, text, position):
    with pytest.raises(PointParseError) as info:
        parse_point(text, table)
    assert info.value.position == position


def test_point_outside_its_triangle_is_rejected(table):
    # theta_2 is about 0.289752, so alpha 0.2898 lies outside petal R
    with pytest.raises(PointParseError):
        parse_point("R/R+:1.0541:0.2898", table)


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.sampled_from([FLAT, HYPERBOLIC]))
def test_format_parse_round_trip(seed, kappa):
    t = get_table(kappa)
    p = random_point(random.Random(seed), t, 9)
    assert canonicalize(p, t) == p
    assert parse_point(format_point(p), t) == p


def test_theta_sums_worked_examples():
    t = get_table(FLAT)
    assert t.theta_sum(1, 2) == pytest.approx(0.7533993104368536, rel=1e-15)
    assert t.theta_sum(1, 5) == pytest.approx(1.267474229965851, rel=1e-14)

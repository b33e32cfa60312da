"""Command-line front end.

Every command prints one JSON document::

    {"command": ..., "config": {...}, "result": ..., "checks": [{"name", "pass", "max_err"}]}

Exit status is 0 when all checks pass, 1 when some check fails and 2 for
usage errors, malformed point literals and out-of-domain arguments.
``render`` without ``--out`` writes the SVG itself to standard output.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import asdict, dataclass, field

from .core import PointParseError, RosePoint, format_point, get_table, parse_point
from .kernel import Curvature, DomainError
from .metric import get_metric

SUITES = ("extreme", "cat", "oracle", "isometry", "radius", "through_center", "separation")
TOLERANCE_KEYS = ("cat", "isometry", "alexandrov")


@dataclass
class CommandConfig:
    curvature: str = "flat"
    depth: int = 8
    seed: int = 42
    step: float = 0.02
    mode: str = "spiral"
    out: str | None = None
    tolerances: dict = field(default_factory=dict)


class UsageError(Exception):
    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail


_TARGET = re.compile(r"^\s*(?:(?P<k>\d+(?:\.\d*)?)\s*\*?\s*)?pi\s*(?:/\s*(?P<d>\d+(?:\.\d*)?))?\s*$")


def parse_target(text: str) -> float:
    """A float or a multiple of pi such as ``pi``, ``pi/3`` or ``2pi``."""
    m = _TARGET.match(text.lower())
    if m:
        k = float(m.group("k") or 1.0)
        d = float(m.group("d") or 1.0)
        if d == 0.0:
            raise UsageError(f"division by zero in target {text!r}")
        return k * math.pi / d
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot read target {text!r}; use a number or e.g. pi/3") from None


def _tolerance(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep or key not in TOLERANCE_KEYS:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE with NAME in {', '.join(TOLERANCE_KEYS)}")
    try:
        return key, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance value {value!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--curvature", choices=("flat", "hyperbolic"), default="flat")
    common.add_argument("--depth", type=int, default=8)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--step", type=float, default=0.02, help="oracle mesh spacing")
    common.add_argument("--out", default=None, help="output path (render)")
    common.add_argument("--mode", choices=("spiral", "petal"), default="spiral")
    common.add_argument("--tol", type=_tolerance, action="append", default=[], metavar="NAME=VALUE")

    parser = argparse.ArgumentParser(prog="rose", description="Queries and checks on the rose.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("dist", "distance"), ("geodesic", "geodesic breakpoints"),
                           ("midpoint", "midpoint"), ("angle", "Alexandrov angle at the center"),
                           ("cover", "separation cover for P and Q")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("p")
        p.add_argument("q")
    p = sub.add_parser("witness", parents=[common], help="straddling segment for P")
    p.add_argument("p")
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    p = sub.add_parser("threshold", parents=[common], help="through-center level")
    p.add_argument("m", type=int)
    p.add_argument("target")
    sub.add_parser("render", parents=[common], help="SVG picture")
    return parser


# point literals for the root petal start with "-"; a leading space keeps
# argparse from reading them as options
def _protect(argv: list[str]) -> list[str]:
    return [" " + a if a.startswith("-/") else a for a in argv]


def _point(text: str, table) -> RosePoint:
    text = text.strip()
    try:
        return parse_point(text, table)
    except PointParseError as exc:
        raise UsageError(str(exc), literal=exc.text, position=exc.position) from None


def _check(name: str, ok: bool, max_err: float) -> dict:
    return {"name": name, "pass": bool(ok), "max_err": float(max_err)}


def run_suite(name: str, config: CommandConfig) -> dict:
    """Run one suite at the sizes used by the acceptance criteria."""
    from . import verify
    from .oracle import oracle_compare_suite

    metric = get_metric(Curvature.parse(config.curvature))
    hyper = metric.curvature is not Curvature.FLAT
    tol = config.tolerances
    depth, seed = config.depth, config.seed
    if name == "extreme":
        return verify.extreme_scan(metric, depth, 1000, seed)
    if name == "cat":
        kw = {"slack": tol["cat"]} if "cat" in tol else {}
        return verify.cat_comparison_suite(metric, 200 if hyper else 500, min(depth, 6), seed, **kw)
    if name == "oracle":
        if hyper:
            return oracle_compare_suite(metric, min(depth, 3), config.step, 100, seed)
        return oracle_compare_suite(metric, min(depth, 4), config.step, 200, seed)
    if name == "isometry":
        kw = {"tol": tol["isometry"]} if "isometry" in tol else {}
        return verify.isometry_suite(metric, 200, depth, seed, **kw)
    if name == "radius":
        return verify.radius_report(metric.table, 2000 if hyper else 10_000)
    if name == "through_center":
        report = verify.through_center_suite(metric, 50, seed)
        law = verify.separation_law_suite(metric, 1000, seed)
        kw = {"tol": tol["alexandrov"]} if "alexandrov" in tol else {}
        angle = verify.alexandrov_suite(metric, 1000, seed, **kw)
        report["sub_reports"] = [law, angle]
        report["pass"] = report["pass"] and law["pass"] and angle["pass"]
        return report
    if name == "separation":
        return verify.separation_suite(metric, 20, seed, depth=min(depth, 6))
    raise UsageError(f"unknown suite {name!r}")


def _execute(args, config: CommandConfig) -> tuple[object, list[dict]]:
    curvature = Curvature.parse(config.curvature)
    table = get_table(curvature)
    metric = get_metric(curvature)
    cmd = args.command
    if cmd in ("dist", "geodesic", "midpoint", "angle", "cover"):
        p, q = _point(args.p, table), _point(args.q, table)
        if cmd == "dist":
            return metric.distance(p, q), []
        if cmd == "geodesic":
            path = metric.geodesic(p, q)
            result = {
                "points": [format_point(x) for x in path.points],
                "through_center": path.through_center,
                "length": path.length,
            }
            return result, []
        if cmd == "midpoint":
            return format_point(metric.midpoint(p, q)), []
        if cmd == "angle":
            return metric.center_angle(p, q), []
        from .verify import separation_cover

        cover, x, y = separation_cover(table, p, q)
        result = cover.as_dict()
        result.update(x=format_point(x), y=format_point(y))
        y_out = not any(cover.in_W(w, y) for w in cover.W)
        return result, [_check("y_outside_W", y_out, 0.0)]
    if cmd == "witness":
        from .verify import check_witness, straddle_witness

        p = _point(args.p, table)
        w = straddle_witness(metric, p)
        ok, _ = check_witness(metric, w)
        return w.as_dict(), [_check("witness", ok, w.gap)]
    if cmd == "verify":
        names = SUITES if args.suite == "all" else (args.suite,)
        reports = {}
        checks = []
        for name in names:
            report = run_suite(name, config)
            reports[name] = report
            checks.append(_check(report["name"], report["pass"], report["max_err"]))
            for extra in report.get("sub_reports", []):
                checks.append(_check(extra["name"], extra["pass"], extra["max_err"]))
        return reports, checks
    if cmd == "threshold":
        target = parse_target(args.target)
        big_m = metric.through_center_level(args.m, target)
        result = {
            "m": args.m,
            "target": target,
            "M": big_m,
            "theta_sum": table.theta_sum(args.m + 1, big_m - 1),
        }
        return result, []
    raise UsageError(f"unknown command {cmd!r}")


def _emit(doc: dict, stream) -> None:
    stream.write(json.dumps(doc, indent=2, allow_nan=False) + "\n")


def main(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    config = CommandConfig(
        curvature=args.curvature,
        depth=args.depth,
        seed=args.seed,
        step=args.step,
        mode=args.mode,
        out=args.out,
        tolerances=dict(args.tol),
    )
    doc = {"command": args.command, "config": asdict(config)}
    try:
        if args.depth < 1 or args.step <= 0:
            raise UsageError("--depth must be >= 1 and --step must be positive")
        if args.command == "render":
            from .render import render_svg

            svg = render_svg(get_table(Curvature.parse(config.curvature)), config.depth, config.mode)
            if config.out is None:
                stdout.write(svg)
                return 0
            with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(svg)
            doc["result"] = {
                "path": config.out,
                "bytes": len(svg.encode("utf-8")),
                "triangles_per_sheet": svg.count('class="triangle"') // (2 if config.mode == "spiral" else 1),
            }
            doc["checks"] = []
        else:
            doc["result"], doc["checks"] = _execute(args, config)
    except UsageError as exc:
        doc["error"] = {"message": str(exc), **exc.detail}
        _emit(doc, stdout)
        return 2
    except DomainError as exc:
        doc["error"] = {"message": str(exc)}
        _emit(doc, stdout)
        return 2
    _emit(doc, stdout)
    return 0 if all(c["pass"] for c in doc["checks"]) else 1


if __name__ == "__main__":
    sys.exit(main())

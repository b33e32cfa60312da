"""Exact metric engine and verification tools for the rose, a bounded
complete CAT(0) space (and its CAT(-1) twin) without extreme points."""

from .core import (
    CENTER,
    LOWER,
    UPPER,
    DirectionLocus,
    PointParseError,
    RadiiTable,
    RosePoint,
    Sheet,
    TriangleId,
    canonicalize,
    direction_of,
    format_point,
    get_table,
    level_of,
    make_point,
    parse_point,
)
from .kernel import DISJOINT, FLAT, HYPERBOLIC, Curvature, DomainError
from .metric import GeodesicPath, RoseMetric, get_metric

__version__ = "0.1.0"

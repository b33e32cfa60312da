"""Trigonometry of right triangles and cones in the flat and hyperbolic planes.

Every function takes a :class:`Curvature` first and is total on both
variants.  Angles are radians.  Hyperbolic inverse functions are evaluated
through ``log1p``-style identities so that short lengths keep full relative
precision.
"""

from __future__ import annotations

import enum
import math


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a kernel operation."""


class Curvature(enum.Enum):
    FLAT = 0
    HYPERBOLIC = -1

    @property
    def kappa(self) -> int:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "Curvature":
        try:
            return {"flat": cls.FLAT, "hyperbolic": cls.HYPERBOLIC}[name.lower()]
        except KeyError:
            raise ValueError(f"unknown curvature {name!r}") from None


FLAT = Curvature.FLAT
HYPERBOLIC = Curvature.HYPERBOLIC


class _Disjoint:
    """Angular distance between directions that share no sheet."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DISJOINT"

    def __reduce__(self):
        return (_Disjoint, ())


DISJOINT = _Disjoint()


def acosh1p(x: float) -> float:
    """Return ``arcosh(1 + x)`` for ``x >= 0`` without cancellation."""
    if x <= 0.0:
        return 0.0
    return math.log1p(x + math.sqrt(x * (x + 2.0)))


def _half_sinh_sq(a: float) -> float:
    # cosh(a) - 1 == 2 sinh(a/2)^2
    s = math.sinh(0.5 * a)
    return 2.0 * s * s


def hypotenuse(kappa: Curvature, a: float, b: float) -> float:
    """Hypotenuse of the right triangle with legs ``a`` and ``b``."""
    if a < 0 or b < 0:
        raise DomainError(f"legs must be non-negative, got {a}, {b}")
    if kappa is FLAT:
        return math.hypot(a, b)
    # cosh a cosh b - 1 = (cosh a - 1) cosh b + (cosh b - 1)
    x = _half_sinh_sq(a) * math.cosh(b) + _half_sinh_sq(b)
    return acosh1p(x)


def apex_angle(kappa: Curvature, adjacent: float, opposite: float) -> float:
    """Angle at the vertex between the hypotenuse and the ``adjacent`` leg."""
    if adjacent <= 0 or opposite < 0:
        raise DomainError(f"need adjacent > 0 and opposite >= 0, got {adjacent}, {opposite}")
    if kappa is FLAT:
        return math.atan(opposite / adjacent)
    return math.atan(math.tanh(opposite) / math.sinh(adjacent))


def boundary_radius(kappa: Curvature, leg: float, alpha: float) -> float:
    """Distance from the apex to the far leg along the ray at angle ``alpha``.

    The far leg is the side perpendicular to the ``leg`` of length ``leg``
    issuing from the apex.
    """
    if leg <= 0:
        raise DomainError(f"leg must be positive, got {leg}")
    if not 0.0 <= alpha < 0.5 * math.pi:
        raise DomainError(f"alpha must lie in [0, pi/2), got {alpha}")
    if alpha == 0.0:
        return leg
    if kappa is FLAT:
        return leg / math.cos(alpha)
    k = math.tanh(leg) / math.cos(alpha)
    if k >= 1.0:
        raise DomainError(f"direction {alpha} leaves the triangle with leg {leg}")
    return math.atanh(k)


def cone_distance(kappa: Curvature, rho1: float, rho2: float, phi) -> float:
    """Law of cosines in the model cone, saturated at angle pi.

    ``phi`` may be :data:`DISJOINT`, meaning the only path runs through the
    apex.
    """
    if phi is DISJOINT or phi >= math.pi:
        return rho1 + rho2
    s = math.sin(0.5 * phi)
    if kappa is FLAT:
        d = rho1 - rho2
        return math.sqrt(d * d + 4.0 * rho1 * rho2 * s * s)
    # cosh d - 1 = (cosh(r1 - r2) - 1) + 2 sinh r1 sinh r2 sin^2(phi/2)
    x = _half_sinh_sq(rho1 - rho2) + 2.0 * math.sinh(rho1) * math.sinh(rho2) * s * s
    return acosh1p(x)


def geodesic_radius_at(kappa: Curvature, rho1: float, rho2: float, phi: float, gamma: float) -> float:
    """Radius of the model geodesic from ``(rho1, 0)`` to ``(rho2, phi)`` at angle ``gamma``.

    In the hyperbolic case the computation happens in the Klein model, where
    geodesics are straight chords and radii become ``tanh(rho)``.
    """
    if not 0.0 < phi < math.pi:
        raise DomainError(f"phi must lie in (0, pi), got {phi}")
    if gamma <= 0.0:
        return rho1
    if gamma >= phi:
        return rho2
    if kappa is FLAT:
        a, b = rho1, rho2
    else:
        a, b = math.tanh(rho1), math.tanh(rho2)
    r = a * b * math.sin(phi) / (a * math.sin(gamma) + b * math.sin(phi - gamma))
    if kappa is FLAT:
        return r
    return math.atanh(r)


def comparison_angle(kappa: Curvature, a: float, b: float, c: float, tol: float = 1e-9) -> float:
    """Angle opposite side ``a`` in the model triangle with sides ``a, b, c``."""
    if b <= 0 or c <= 0:
        raise DomainError("sides adjacent to the angle must be positive")
    if a < 0 or a > b + c + tol * (b + c) or b > a + c + tol * (a + c) or c > a + b + tol * (a + b):
        raise DomainError(f"sides {a}, {b}, {c} violate the triangle inequality")
    if kappa is FLAT:
        # (b^2 + c^2 - a^2) / 2bc written as 1 - (a^2 - (b-c)^2) / 2bc
        cos_angle = 1.0 - (a - (b - c)) * (a + (b - c)) / (2.0 * b * c)
    else:
        # (cosh b cosh c - cosh a) / (sinh b sinh c)
        #   = 1 - (cosh a - cosh(b - c)) / (sinh b sinh c)
        num = _half_sinh_sq(a) - _half_sinh_sq(b - c)
        cos_angle = 1.0 - num / (math.sinh(b) * math.sinh(c))
    return math.acos(min(1.0, max(-1.0, cos_angle)))

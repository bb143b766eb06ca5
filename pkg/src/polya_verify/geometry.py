"""Triangle moduli charts, shape classification, and case-region membership.

Triangles are encoded by the apex (a, b) of the triangle with vertices
(0, 0), (1, 0), (a, b).  Two charts are used: one where the unit side is the
longest (apex inside the quarter-disk box), one where it is the shortest
(apex above the unit circle).  Region membership is decided in exact
rational arithmetic on the defining polynomial inequalities, with all
boundaries closed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .constants import as_fraction

ANGLE_TOL = 1e-10
SIDE_TOL = 1e-10
DEGENERACY_CUTOFF = 1e-6


class DegenerateTriangle(ValueError):
    """Raised when the apex height is not positive."""


class UnknownRegion(KeyError):
    """Raised for a region id the membership test does not know."""


@dataclass(frozen=True)
class Triangle:
    """Triangle with vertices (0,0), (1,0), (a,b); requires b > 0."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.b > 0:
            raise DegenerateTriangle(f"apex height must be positive, got b={self.b}")


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle (-a, a) x (-b, b); a and b are half-widths."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (self.a > 0 and self.b > 0):
            raise ValueError(f"half-widths must be positive, got {self.a}, {self.b}")


@dataclass(frozen=True)
class Sector:
    """Circular sector of opening angle in (0, pi) and given radius."""

    angle: float
    radius: float

    def __post_init__(self) -> None:
        if not 0 < self.angle < math.pi:
            raise ValueError(f"sector angle must lie in (0, pi), got {self.angle}")
        if not self.radius > 0:
            raise ValueError(f"sector radius must be positive, got {self.radius}")


class TriangleClass(enum.Enum):
    Equilateral = "Equilateral"
    Acute = "Acute"
    Right = "Right"
    Obtuse = "Obtuse"
    IsoscelesAcute = "IsoscelesAcute"
    IsoscelesObtuse = "IsoscelesObtuse"
    Degenerate = "Degenerate"


@dataclass(frozen=True)
class TriangleData:
    """Derived metric data: side lengths, angles, and standard functionals.

    M and N are the side lengths from (0,0) and (1,0) to the apex; alpha,
    beta, gamma are the interior angles at (0,0), (1,0), (a,b).  d is the
    diameter (longest side), h_base the altitude onto the longest side, and
    R the inradius.
    """

    M: float
    N: float
    alpha: float
    beta: float
    gamma: float
    area: float
    P: float
    d: float
    h_base: float
    R: float


def derive(tri: Triangle) -> TriangleData:
    """All derived metric quantities for the triangle."""
    a, b = tri.a, tri.b
    if b <= 0:
        raise DegenerateTriangle(f"apex height must be positive, got b={b}")
    m_side = math.hypot(a, b)
    n_side = math.hypot(a - 1.0, b)
    alpha = math.atan2(b, a)
    beta = math.atan2(b, 1.0 - a)
    gamma = math.atan2(b, a * a - a + b * b)
    area = b / 2.0
    perimeter = 1.0 + m_side + n_side
    diameter = max(1.0, m_side, n_side)
    return TriangleData(
        M=m_side,
        N=n_side,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        area=area,
        P=perimeter,
        d=diameter,
        h_base=2.0 * area / diameter,
        R=2.0 * area / perimeter,
    )


def classify(tri: Triangle) -> TriangleClass:
    """Shape class by largest angle, with isosceles and equilateral refinement."""
    if tri.b <= 0:
        raise DegenerateTriangle(f"apex height must be positive, got b={tri.b}")
    if tri.b < DEGENERACY_CUTOFF:
        return TriangleClass.Degenerate
    data = derive(tri)
    sides = (1.0, data.M, data.N)
    largest = max(data.alpha, data.beta, data.gamma)
    spread = max(sides) - min(sides)
    if spread <= SIDE_TOL:
        return TriangleClass.Equilateral
    if abs(largest - math.pi / 2.0) <= ANGLE_TOL:
        return TriangleClass.Right
    isosceles = (
        abs(sides[0] - sides[1]) <= SIDE_TOL
        or abs(sides[0] - sides[2]) <= SIDE_TOL
        or abs(sides[1] - sides[2]) <= SIDE_TOL
    )
    if largest > math.pi / 2.0:
        return TriangleClass.IsoscelesObtuse if isosceles else TriangleClass.Obtuse
    return TriangleClass.IsoscelesAcute if isosceles else TriangleClass.Acute


def triangle_from_sides(base: float, second: float, third: float) -> Triangle:
    """Similarity-normalize so the base side is 1; apex above the base.

    second is the side from the origin, third the side from (1, 0).
    """
    if min(base, second, third) <= 0:
        raise DegenerateTriangle("sides must be positive")
    m = second / base
    n = third / base
    a = (m * m - n * n + 1.0) / 2.0
    h2 = m * m - a * a
    if h2 <= 0:
        raise DegenerateTriangle(
            f"sides {base}, {second}, {third} do not form a triangle"
        )
    return Triangle(a, math.sqrt(h2))


def chart_swap(tri: Triangle) -> Triangle:
    """Re-scale the same shape so the opposite extreme side becomes the base.

    A triangle based on its longest side maps to the similar triangle based
    on its shortest side, and vice versa.
    """
    data = derive(tri)
    sides = sorted((1.0, data.M, data.N))
    if 1.0 >= sides[2] - SIDE_TOL:  # base is currently (one of) the longest
        new_base = sides[0]
    else:
        new_base = sides[2]
    others = [s for s in (1.0, data.M, data.N)]
    others.remove(
        min(others, key=lambda s: abs(s - new_base))
    )
    lo, hi = sorted(others)
    return triangle_from_sides(new_base, lo, hi)


# ---------------------------------------------------------------------------
# Case regions (exact rational membership, closed boundaries)
# ---------------------------------------------------------------------------

_REGION_ALIASES = {
    "\U0001d4af": "T",
    "\U0001d4af′_acute": "T_prime_acute",
    "\U0001d4af'_acute": "T_prime_acute",
    "T'_acute": "T_prime_acute",
    "T_acute": "T_prime_acute",
    "\U0001d4af_obtuse": "T_obtuse",
}

REGION_IDS = (
    "T",
    "T_prime_acute",
    "T_obtuse",
    "acute-case-1",
    "acute-case-2",
    "obtuse-case-1",
    "obtuse-case-2",
    "obtuse-case-3",
)


def _in_t(a: Fraction, b: Fraction) -> bool:
    return (
        0 <= a <= Fraction(1, 2)
        and b >= 0
        and b * b <= Fraction(3, 4)
        and (a - 1) ** 2 + b * b <= 1
    )


def _in_t_prime_acute(a: Fraction, b: Fraction) -> bool:
    return 0 <= a <= Fraction(1, 2) and b >= 0 and a * a + b * b >= 1


def _in_t_obtuse(a: Fraction, b: Fraction) -> bool:
    return (
        0 <= a <= Fraction(1, 2)
        and 0 <= b <= Fraction(1, 2)
        and (a - Fraction(1, 2)) ** 2 + b * b <= Fraction(1, 4)
    )


def _in_obtuse_band_low(a: Fraction, b: Fraction) -> bool:
    """3/2 - (sqrt(5)/2) sqrt(1 + 2a - 2a^2) <= b, rationalized by squaring."""
    rhs = 3 - 2 * b
    if rhs <= 0:
        return True
    disc = 1 + 2 * a - 2 * a * a
    return 5 * disc >= rhs * rhs


def _in_obtuse_case_1(a: Fraction, b: Fraction) -> bool:
    return (
        _in_t_obtuse(a, b)
        and b * b <= a - a * a
        and _in_obtuse_band_low(a, b)
    )


def _curve_case_2(a: Fraction, b: Fraction) -> bool:
    """b <= 2a(1-a) / (1 - a + a^2); the denominator is always positive."""
    return b * (1 - a + a * a) <= 2 * a * (1 - a)


def _in_obtuse_case_2(a: Fraction, b: Fraction) -> bool:
    return _in_t_obtuse(a, b) and b >= 0 and _curve_case_2(a, b)


def _in_obtuse_case_3(a: Fraction, b: Fraction) -> bool:
    return (
        _in_t_obtuse(a, b)
        and b <= Fraction(3, 10)
        and b * b <= a - a * a
        and b * (1 - a + a * a) >= 2 * a * (1 - a)
    )


_REGION_TESTS = {
    "T": _in_t,
    "T_prime_acute": _in_t_prime_acute,
    "T_obtuse": _in_t_obtuse,
    "acute-case-1": lambda a, b: _in_t_prime_acute(a, b) and b <= 4,
    "acute-case-2": lambda a, b: _in_t_prime_acute(a, b) and b >= 3,
    "obtuse-case-1": _in_obtuse_case_1,
    "obtuse-case-2": _in_obtuse_case_2,
    "obtuse-case-3": _in_obtuse_case_3,
}


def in_region(point: tuple, region_id: str) -> bool:
    """Exact membership of (a, b) in a named chart or case region."""
    rid = _REGION_ALIASES.get(region_id, region_id)
    try:
        test = _REGION_TESTS[rid]
    except KeyError:
        raise UnknownRegion(region_id) from None
    a, b = point
    return test(as_fraction(a), as_fraction(b))

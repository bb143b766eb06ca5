"""Exact rational certificates that a one-variable polynomial is nonpositive.

The certifier works on an interval (0, dx] by carrying positive coefficients
down one degree at a time (a_i x^i <= a_i dx x^(i-1) for a_i > 0 and
0 < x <= dx), which proves P(x) <= c_0 for the reduced constant c_0.  When
c_0 > 0 the interval is split in half, the right half being handled by an
exact Taylor shift.  Everything is Fraction arithmetic end to end, so a
returned certificate is a proof, not a numeric indication.

The module also builds the four specific polynomials whose nonpositivity
underlies the triangle lower-bound case analysis.  Their irrational
coefficients are first enclosed in rational intervals and then rounded
upward once; since the certification domain lies in x > 0, the rounded
polynomial dominates the true one pointwise and its certificate transfers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .constants import (
    C1,
    K,
    RationalInterval,
    as_fraction,
    enclose,
    point,
)


class DepthExhausted(RuntimeError):
    """Subdivision hit the depth limit without settling the sign."""

    def __init__(self, message: str, witness: dict):
        super().__init__(message)
        self.witness = witness


class ZeroWidthInterval(ValueError):
    """Raised when asked to certify over an empty interval."""


class UnknownName(KeyError):
    """Raised for a lemma-polynomial name the builder does not know."""


@dataclass(frozen=True)
class RationalPoly:
    """Dense rational polynomial; coeffs[i] multiplies x**i, trailing zeros trimmed."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        cleaned = [as_fraction(c) for c in self.coeffs]
        while cleaned and cleaned[-1] == 0:
            cleaned.pop()
        object.__setattr__(self, "coeffs", tuple(cleaned))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: Fraction) -> Fraction:
        return eval_exact(self, x)

    def derivative(self) -> "RationalPoly":
        return RationalPoly(
            tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)
        )

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(tuple(-c for c in self.coeffs))


def eval_exact(poly: RationalPoly, x) -> Fraction:
    """Horner evaluation in exact rational arithmetic."""
    x = as_fraction(x)
    acc = Fraction(0)
    for c in reversed(poly.coeffs):
        acc = acc * x + c
    return acc


def taylor_shift(poly: RationalPoly, c) -> RationalPoly:
    """Exact coefficients of poly(x + c), by synthetic division."""
    c = as_fraction(c)
    b = list(poly.coeffs)
    n = len(b)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            b[j] += c * b[j + 1]
    return RationalPoly(tuple(b))


@dataclass(frozen=True)
class Certificate:
    """Outcome of a nonpositivity run over (0, dx].

    intervals tile (0, dx] exactly; each entry (lo, hi, reduced_constant)
    records that the polynomial is at most reduced_constant <= 0 on (lo, hi].
    failure_witness, when set, is a point x with polynomial(x) > 0.
    """

    polynomial: RationalPoly
    dx: Fraction
    intervals: tuple[tuple[Fraction, Fraction, Fraction], ...]
    depth: int
    failure_witness: Optional[tuple[Fraction, Fraction]] = None

    @property
    def ok(self) -> bool:
        return self.failure_witness is None

    def to_json_dict(self) -> dict:
        return {
            "ok": self.ok,
            "dx": str(self.dx),
            "depth": self.depth,
            "polynomial": [str(c) for c in self.polynomial.coeffs],
            "intervals": [
                [str(lo), str(hi), str(c0)] for lo, hi, c0 in self.intervals
            ],
            "failure_witness": (
                None
                if self.failure_witness is None
                else [str(self.failure_witness[0]), str(self.failure_witness[1])]
            ),
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def _scan_constant(coeffs: Sequence[Fraction], width: Fraction) -> Fraction:
    """Reduced constant of the positive-coefficient carry on (0, width]."""
    carry = Fraction(0)
    for a in reversed(coeffs[1:]):
        carry = a + width * carry
        if carry < 0:
            carry = Fraction(0)
    return coeffs[0] + width * carry if coeffs else Fraction(0)


def certify_nonpositive(
    poly: RationalPoly, dx, max_depth: int = 40
) -> Certificate:
    """Prove poly <= 0 on (0, dx], subdividing as needed.

    Returns a Certificate whose intervals tile (0, dx].  A point where the
    polynomial is exactly positive yields ok=False with that witness.  If the
    sign cannot be settled within max_depth subdivisions, DepthExhausted is
    raised with the offending subinterval.
    """
    dx = as_fraction(dx)
    if dx <= 0:
        raise ZeroWidthInterval(f"dx must be positive, got {dx}")
    if poly.degree < 0:  # the zero polynomial
        return Certificate(poly, dx, ((Fraction(0), dx, Fraction(0)),), 0)

    intervals: list[tuple[Fraction, Fraction, Fraction]] = []
    max_seen = 0

    def visit(local: RationalPoly, offset: Fraction, width: Fraction, depth: int):
        nonlocal max_seen
        max_seen = max(max_seen, depth)
        coeffs = local.coeffs if local.coeffs else (Fraction(0),)
        for probe in (width, width / 2):
            val = eval_exact(local, probe)
            if val > 0:
                return offset + probe, val
        c0 = _scan_constant(coeffs, width)
        if c0 <= 0:
            intervals.append((offset, offset + width, c0))
            return None
        if depth >= max_depth:
            raise DepthExhausted(
                f"depth {max_depth} exhausted on ({float(offset):.6g}, "
                f"{float(offset + width):.6g}] with reduced constant "
                f"{float(c0):.6g}",
                witness={
                    "lo": str(offset),
                    "hi": str(offset + width),
                    "reduced_constant": str(c0),
                },
            )
        half = width / 2
        bad = visit(local, offset, half, depth + 1)
        if bad is not None:
            return bad
        return visit(taylor_shift(local, half), offset + half, half, depth + 1)

    witness = visit(poly, Fraction(0), dx, 0)
    if witness is not None:
        return Certificate(poly, dx, tuple(intervals), max_seen, witness)
    return Certificate(poly, dx, tuple(intervals), max_seen)


# ---------------------------------------------------------------------------
# Interval-coefficient polynomial helpers (sparse, degree -> RationalInterval)
# ---------------------------------------------------------------------------

IntervalPoly = dict[int, RationalInterval]


def _ip(entries: dict[int, object]) -> IntervalPoly:
    out: IntervalPoly = {}
    for deg, val in entries.items():
        out[deg] = val if isinstance(val, RationalInterval) else point(val)
    return out


def _ip_add(p: IntervalPoly, q: IntervalPoly) -> IntervalPoly:
    out = dict(p)
    for deg, iv in q.items():
        out[deg] = out[deg] + iv if deg in out else iv
    return out


def _ip_mul(p: IntervalPoly, q: IntervalPoly) -> IntervalPoly:
    out: IntervalPoly = {}
    for d1, iv1 in p.items():
        for d2, iv2 in q.items():
            prod = iv1 * iv2
            deg = d1 + d2
            out[deg] = out[deg] + prod if deg in out else prod
    return out


def _ip_scale(p: IntervalPoly, s) -> IntervalPoly:
    s_iv = s if isinstance(s, RationalInterval) else point(s)
    return {deg: iv * s_iv for deg, iv in p.items()}


def _ip_pow(p: IntervalPoly, n: int) -> IntervalPoly:
    out = _ip({0: 1})
    for _ in range(n):
        out = _ip_mul(out, p)
    return out


def _ip_neg_derivative(p: IntervalPoly) -> IntervalPoly:
    return {deg - 1: _coerce_neg(iv) * point(deg) for deg, iv in p.items() if deg > 0}


def _coerce_neg(iv: RationalInterval) -> RationalInterval:
    return RationalInterval(-iv.hi, -iv.lo)


def _ip_to_dense(p) -> list[RationalInterval]:
    """Dense ascending coefficient list from a sparse dict or a dense list."""
    if isinstance(p, (list, tuple)):
        return list(p)
    if not p:
        return []
    top = max(p)
    zero = point(0)
    return [p.get(deg, zero) for deg in range(top + 1)]


def _ip_taylor_shift(p: IntervalPoly, c: Fraction) -> IntervalPoly:
    dense = _ip_to_dense(p)
    n = len(dense)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            dense[j] = dense[j] + dense[j + 1] * point(c)
    return {deg: iv for deg, iv in enumerate(dense)}


# ---------------------------------------------------------------------------
# The four lemma polynomials
# ---------------------------------------------------------------------------

_COEFF_EPS = Fraction(1, 10**30)


def _c_ratio() -> RationalInterval:
    """k * 2^(1/3) / pi^(2/3), the coefficient in the medium-aspect case."""
    return (
        point(K)
        * enclose("two_pow_1_3", _COEFF_EPS)
        / enclose("pi_pow_2_3", _COEFF_EPS)
    )


def _p1_acute_intervals() -> IntervalPoly:
    """Degree-33 polynomial whose nonpositivity gives the medium-aspect case.

    5x^3 (1 + 4 A(x)^2) - 3 B(x) (1 + C x^2)^2 with
    A = x^3 + x^9/3 + 2x^15/5, B = x^3 + x^9/3 + 2x^15/15,
    C = k 2^(1/3) / pi^(2/3).
    """
    a_poly = _ip({3: 1, 9: Fraction(1, 3), 15: Fraction(2, 5)})
    b_poly = _ip({3: 1, 9: Fraction(1, 3), 15: Fraction(2, 15)})
    c_iv = _c_ratio()
    quad = _ip({0: 1, 2: c_iv})
    first = _ip_add(_ip({3: 5}), _ip_scale(_ip_mul(_ip({3: 1}), _ip_pow(a_poly, 2)), 20))
    second = _ip_scale(_ip_mul(b_poly, _ip_pow(quad, 2)), -3)
    return _ip_add(first, second)


def _p2_acute_intervals() -> IntervalPoly:
    """The medium-aspect polynomial re-centered at 49/100."""
    return _ip_taylor_shift(_p1_acute_intervals(), Fraction(49, 100))


def _monotone_product_intervals() -> IntervalPoly:
    """Degree-22 product whose increase drives the thin-acute reduction.

    (x^6/3 + c2 x^9 + 2x^12/15 + 17x^18/315)
      * (pi^2 + 2^(2/3) c1 pi^(4/3) x^2 + c1^2 (pi/2)^(2/3) x^4),
    c2 = -124 zeta(5) / pi^5.
    """
    zeta5 = enclose("zeta5", _COEFF_EPS)
    pi2 = enclose("pi_pow_2", _COEFF_EPS)
    pi43 = enclose("pi_pow_4_3", _COEFF_EPS)
    pi23 = enclose("pi_pow_2_3", _COEFF_EPS)
    pi5 = enclose("pi_pow_5", _COEFF_EPS)
    cbrt4 = enclose("two_pow_2_3", _COEFF_EPS)
    c1 = point(C1)
    c2 = _coerce_neg(point(124) * zeta5 / pi5)
    series = _ip(
        {6: Fraction(1, 3), 9: c2, 12: Fraction(2, 15), 18: Fraction(17, 315)}
    )
    quad = _ip({0: pi2, 2: cbrt4 * c1 * pi43, 4: c1 * c1 * pi23 / cbrt4})
    return _ip_mul(series, quad)


def _neg_p1prime_intervals() -> IntervalPoly:
    return _ip_neg_derivative(_monotone_product_intervals())


def _q_mgeq3_intervals() -> IntervalPoly:
    """Degree-31 polynomial for the thin-triangle threshold reduction.

    (1 + x^6/3 + 2x^12/5)^2
      - (1 - x^6/8)^4 (1 + C x^2)^2 (1 - D x^3),
    C = c1 / (2^(1/3) pi^(2/3)), D = 372 zeta(5) / pi^5.
    """
    zeta5 = enclose("zeta5", _COEFF_EPS)
    pi23 = enclose("pi_pow_2_3", _COEFF_EPS)
    pi5 = enclose("pi_pow_5", _COEFF_EPS)
    cbrt2 = enclose("two_pow_1_3", _COEFF_EPS)
    c_iv = point(C1) / (cbrt2 * pi23)
    d_iv = point(372) * zeta5 / pi5
    part1 = _ip_pow(_ip({0: 1, 6: Fraction(1, 3), 12: Fraction(2, 5)}), 2)
    part2 = _ip_mul(
        _ip_mul(
            _ip_pow(_ip({0: 1, 6: Fraction(-1, 8)}), 4),
            _ip_pow(_ip({0: 1, 2: c_iv}), 2),
        ),
        _ip({0: 1, 3: _coerce_neg(d_iv)}),
    )
    return _ip_add(part1, _ip_scale(part2, -1))


def _neg_p1prime_shifted_intervals() -> IntervalPoly:
    """The derivative polynomial re-centered at 444/1000.

    Certifying this on (0, 444/1000] extends the base certificate from
    (0, 444/1000] to (0, 888/1000].
    """
    return _ip_taylor_shift(_neg_p1prime_intervals(), Fraction(444, 1000))


_LEMMA_BUILDERS = {
    "P1_acute": _p1_acute_intervals,
    "P2_acute": _p2_acute_intervals,
    "negP1prime_mono": _neg_p1prime_intervals,
    "negP1prime_mono_shifted": _neg_p1prime_shifted_intervals,
    "Q_mgeq3": _q_mgeq3_intervals,
}


def build_lemma_polynomial(name: str, rounding: str = "upper"):
    """Construct a lemma polynomial with controlled coefficient rounding.

    rounding="upper" returns a RationalPoly of upper-rounded coefficients
    (dominates the true polynomial pointwise for x > 0, so nonpositivity
    certificates transfer).  rounding="interval" returns the dense list of
    RationalInterval coefficients.
    """
    if name not in _LEMMA_BUILDERS:
        raise UnknownName(name)
    dense = _ip_to_dense(_LEMMA_BUILDERS[name]())
    if rounding == "interval":
        return dense
    if rounding == "upper":
        return RationalPoly(tuple(iv.hi for iv in dense))
    raise ValueError(f"unknown rounding mode {rounding!r}")

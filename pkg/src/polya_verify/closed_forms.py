"""Closed-form and series values: equilateral triangle, rectangles, sectors, Bessel zeros.

Every truncated series comes back as a SeriesValue carrying an explicit
tail bound, so callers can treat [value - tail_bound, value + tail_bound]
as an enclosure.  Bessel zeros are found by sign-change bracketing of the
ascending series evaluated on an arbitrary-precision substrate (the series
cancels catastrophically in double precision once the order grows).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

from .geometry import Rectangle, Sector


class AngleOutOfRange(ValueError):
    """Raised when a sector angle is outside the supported open range."""


class ConvergenceFailure(RuntimeError):
    """Raised when an iterative search fails to settle."""


@dataclass(frozen=True)
class SeriesValue:
    """Truncated series value with a certified truncation bound."""

    value: float
    tail_bound: float
    terms_used: int

    def __post_init__(self) -> None:
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")
        if self.terms_used < 1:
            raise ValueError("terms_used must be at least 1")


# ---------------------------------------------------------------------------
# Equilateral triangle (vertices (0,0), (1,0), (1/2, sqrt(3)/2))
# ---------------------------------------------------------------------------


def equilateral_exact() -> dict:
    """Exact torsional rigidity, principal eigenvalue, and their product ratio."""
    lambda1 = 16.0 * math.pi**2 / 3.0
    torsion = math.sqrt(3.0) / 320.0
    return {
        "T": torsion,
        "lambda1": lambda1,
        "F": math.pi**2 / 15.0,
    }


def equilateral_fields(x: float, y: float) -> dict:
    """Torsion function and first eigenfunction of the unit equilateral triangle.

    The torsion function is the cubic that vanishes on all three sides and
    satisfies -(Laplacian) = 1; the eigenfunction is the classical
    three-wave sine combination.
    """
    s3 = math.sqrt(3.0)
    u = (1.0 / (2.0 * s3)) * (y - s3 * x) * (y + s3 * x - s3) * y
    phi = (
        math.sin(4.0 * math.pi * y / s3)
        - math.sin(2.0 * math.pi * (x + y / s3))
        + math.sin(2.0 * math.pi * (x - y / s3))
    )
    return {"u": u, "phi": phi}


# ---------------------------------------------------------------------------
# Circular sector torsion
# ---------------------------------------------------------------------------


def sector_torsion(s: Sector, n_terms: int = 64) -> SeriesValue:
    """Torsional rigidity of a sector with opening angle below pi/2.

    T = (r^4/16) (tan(angle) - angle - (128 angle^4 / pi^5) * S) where S sums
    1/(n^2 (n + 2 angle/pi)^2 (n - 2 angle/pi)) over odd n.  The truncation
    makes the returned value an overestimate by at most tail_bound.
    """
    alpha = s.angle
    if not 0.0 < alpha < math.pi / 2.0:
        raise AngleOutOfRange(
            f"sector torsion series needs angle in (0, pi/2), got {alpha}"
        )
    r = 2.0 * alpha / math.pi
    total = 0.0
    for j in range(n_terms):
        n = 2 * j + 1
        total += 1.0 / (n * n * (n + r) * (n + r) * (n - r))
    prefactor = 128.0 * alpha**4 / math.pi**5
    scale = s.radius**4 / 16.0
    value = scale * (math.tan(alpha) - alpha - prefactor * total)
    n0 = 2 * n_terms + 1
    series_tail = (n0 / (n0 - 1.0)) * (n0**-5.0 + 0.125 * n0**-4.0)
    return SeriesValue(
        value=value,
        tail_bound=scale * prefactor * series_tail,
        terms_used=n_terms,
    )


# ---------------------------------------------------------------------------
# Bessel first zeros (ascending series on an arbitrary-precision substrate)
# ---------------------------------------------------------------------------


def _series_sign(nu: float, x, mp) -> int:
    """Sign of J_nu(x) via the even part of the ascending series.

    Evaluates sum_m (-1)^m (x^2/4)^m / (m! Gamma(m + nu + 1)), which shares
    the positive zeros of J_nu.  Terms stop once they are geometric with
    ratio <= 1/2 and negligible against the largest term seen.
    """
    t = mp.mpf(x) ** 2 / 4
    term = 1 / mp.gamma(nu + 1)
    total = term
    largest = abs(term)
    cutoff = mp.mpf(10) ** (-(mp.mp.dps + 10))
    m = 0
    while True:
        m += 1
        term = -term * t / (m * (nu + m))
        total += term
        largest = max(largest, abs(term))
        if (m + 1) * (nu + m + 1) > 2 * t and abs(term) < cutoff * largest:
            break
        if m > 100000:  # pragma: no cover - defensive
            raise ConvergenceFailure("ascending series did not settle")
    # the omitted tail is geometrically dominated by the last term
    if abs(total) <= 2 * abs(term):
        return 0
    return 1 if total > 0 else -1


def bessel_zero_bracket(nu: float, tol: float = 1e-12) -> tuple[float, float]:
    """Bracket [lo, hi] of the first positive zero of J_nu, hi - lo <= tol.

    The bracket endpoints carry opposite series signs at working precision.
    """
    if nu < 0:
        raise ValueError(f"order must be nonnegative, got {nu}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    import mpmath as mp

    hunt_start = nu if nu > 0 else 0.25
    dps = 30 + int(0.5 * (nu + 12.0))
    with mp.workdps(dps):
        lo = mp.mpf(hunt_start)
        step = min(1.0 + 0.1 * nu ** (1.0 / 3.0), 2.0)
        sign_lo = _series_sign(nu, lo, mp)
        if sign_lo <= 0:
            raise ConvergenceFailure(
                f"series not positive at hunt start x={float(lo)} for nu={nu}"
            )
        hi = lo + step
        hunts = 0
        while _series_sign(nu, hi, mp) > 0:
            lo, hi = hi, hi + step
            hunts += 1
            if hunts > 400:
                raise ConvergenceFailure(f"no sign change found for nu={nu}")
        while float(hi) - float(lo) > tol:
            mid = (lo + hi) / 2
            s = _series_sign(nu, mid, mp)
            if s > 0:
                lo = mid
            elif s < 0:
                hi = mid
            else:
                # can't resolve the sign this close to the zero; the bracket
                # is already within working-precision distance of it
                break
        return float(lo), float(hi)


@functools.lru_cache(maxsize=4096)
def _cached_bracket(nu: float, tol: float) -> tuple[float, float]:
    return bessel_zero_bracket(nu, tol)


def bessel_first_zero(nu: float, tol: float = 1e-12) -> float:
    """First positive zero of J_nu to within tol (default well under 1e-10)."""
    lo, hi = _cached_bracket(float(nu), float(tol))
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Rectangles R_{a,b} = (-a, a) x (-b, b)
# ---------------------------------------------------------------------------


def rect_lambda1(r: Rectangle) -> float:
    """Principal Dirichlet eigenvalue (pi/2a)^2 + (pi/2b)^2."""
    return (math.pi / (2.0 * r.a)) ** 2 + (math.pi / (2.0 * r.b)) ** 2


def _odd_fourth_tail(k: int) -> float:
    """Upper bound for sum over odd n >= 2k+1 of n^-4."""
    n0 = 2 * k + 1
    return n0**-4.0 + n0**-3.0 / 6.0


_SUM_ODD_INV_SQ = math.pi**2 / 8.0


def rect_torsion(r: Rectangle, n_terms: int = 64) -> SeriesValue:
    """Torsional rigidity by the double sine series, square truncation.

    T = (4^5 a^3 b^3 / pi^6) * sum over n, m of
    1 / (b^2 (2n+1)^4 (2m+1)^2 + a^2 (2m+1)^4 (2n+1)^2).
    """
    a, b = r.a, r.b
    total = 0.0
    for n in range(n_terms):
        p = 2 * n + 1
        p2, p4 = p * p, p * p * p * p
        for m in range(n_terms):
            q = 2 * m + 1
            q2 = q * q
            total += 1.0 / (b * b * p4 * q2 + a * a * q2 * q2 * p2)
    prefactor = 4**5 * a**3 * b**3 / math.pi**6
    # n-tail: sum_{n>=K, all m} <= (1/b^2) (sum odd n^-4 tail) (pi^2/8); symmetric in m
    tail = _odd_fourth_tail(n_terms) * _SUM_ODD_INV_SQ * (1.0 / b**2 + 1.0 / a**2)
    return SeriesValue(
        value=prefactor * total,
        tail_bound=prefactor * tail,
        terms_used=n_terms * n_terms,
    )


def rect_F(r: Rectangle, n_terms: int = 64) -> SeriesValue:
    """The scale-invariant eigenvalue-torsion functional of a rectangle.

    Identical term by term to rect_lambda1 * rect_torsion / area; summed
    directly for an independent route.
    """
    a, b = r.a, r.b
    total = 0.0
    s = a * a + b * b
    for n in range(n_terms):
        p = 2 * n + 1
        p2, p4 = p * p, p * p * p * p
        for m in range(n_terms):
            q = 2 * m + 1
            q2 = q * q
            total += s / (b * b * p4 * q2 + a * a * q2 * q2 * p2)
    prefactor = 4**3 / math.pi**4
    tail = s * _odd_fourth_tail(n_terms) * _SUM_ODD_INV_SQ * (
        1.0 / b**2 + 1.0 / a**2
    )
    return SeriesValue(
        value=prefactor * total,
        tail_bound=prefactor * tail,
        terms_used=n_terms * n_terms,
    )


def rect_center_torsion(r: Rectangle, n_terms: int = 256) -> SeriesValue:
    """Value of the torsion function at the rectangle center.

    u(0,0) = (4^3 a^2 / pi^4) * sum over n, m of
    (-1)^(n+m) / ((2n+1)^3 (2m+1)) / (1 + a^2 (2m+1)^2 / (b^2 (2n+1)^2)).
    Both index directions are alternating with decreasing magnitude, so the
    truncation error is controlled by first-omitted-term bounds.
    """
    a, b = r.a, r.b
    c = a * a / (b * b)
    total = 0.0
    for n in range(n_terms):
        p = 2 * n + 1
        inner = 0.0
        for m in range(n_terms):
            q = 2 * m + 1
            term = 1.0 / (q * (1.0 + c * q * q / (p * p)))
            inner += term if m % 2 == 0 else -term
        total += (inner / p**3) if n % 2 == 0 else (-inner / p**3)
    prefactor = 4**3 * a * a / math.pi**4
    q0 = 2 * n_terms + 1
    # m-truncation: first omitted magnitude per n, summed over n < K
    m_tail = sum(
        1.0 / ((2 * n + 1) ** 3 * q0 * (1.0 + c * q0 * q0 / (2 * n + 1) ** 2))
        for n in range(n_terms)
    )
    # n-truncation: every omitted n-block is an alternating inner sum with
    # magnitude below 1, so the block total is below sum of odd p^-3
    n_tail = q0**-3.0 + 0.25 * q0**-2.0
    return SeriesValue(
        value=prefactor * total,
        tail_bound=prefactor * (m_tail + n_tail),
        terms_used=n_terms * n_terms,
    )

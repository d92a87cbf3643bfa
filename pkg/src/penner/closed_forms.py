"""Analytic dilatation formulas: the flow function f, twist-and-click companion polynomials and limit values."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, InvalidParameter
from .orientations import twist_and_click_params
from .polys import AlgebraicReal, IntPoly, largest_real_root


@dataclass(frozen=True)
class FlowPoint:
    """A point of the open cone ``y > 0, |x| < y``; ``x`` plays the flow difference and ``y`` the cycle length."""

    x: float
    y: float

    def __post_init__(self):
        if not (self.y > 0 and abs(self.x) < self.y):
            raise DomainError(f"({self.x}, {self.y}) is outside the cone |x| < y")


def _h(t: float, s: float) -> float:
    return t - t ** (0.5 + s) - t ** (0.5 - s) - 1.0


def f(x, y=None, tol: float = 1e-13) -> float:
    """Largest real solution ``t`` of ``t - t**((y+x)/2y) - t**((y-x)/2y) - 1 = 0``.

    Accepts a ``FlowPoint`` or the pair ``(x, y)``. With ``s = |x|/(2y)`` the
    function ``h(t) = t - t**(1/2+s) - t**(1/2-s) - 1`` has ``h(1) = -2`` and is
    increasing for ``t > 1``, so bisection on ``(1, T]`` finds the root.
    """
    p = x if isinstance(x, FlowPoint) else FlowPoint(float(x), float(y))
    s = abs(p.x) / (2.0 * p.y)
    lo, hi = 1.0, 16.0
    while _h(hi, s) <= 0:
        lo, hi = hi, hi * 2
        if hi > 1e300:
            raise DomainError("flow point too close to the cone boundary")
    while hi - lo > tol * hi:
        mid = (lo + hi) / 2
        if _h(mid, s) > 0:
            hi = mid
        else:
            lo = mid
        if mid in (lo, hi) and hi - lo <= 4 * math.ulp(hi):
            break
    return (lo + hi) / 2


def companion_poly(l: int, c: int) -> IntPoly:
    """``t**l - t**(l-a) - t**a - 1`` where ``a c = 1 mod l``."""
    a, _ = twist_and_click_params(l, c)
    coeffs = [0] * (l + 1)
    coeffs[l] += 1
    coeffs[l - a] -= 1
    coeffs[a] -= 1
    coeffs[0] -= 1
    return IntPoly(tuple(coeffs))


def even_genus_poly(k: int) -> IntPoly:
    """``x**(2k-1) - x**k - x**(k-1) - 1``."""
    coeffs = [0] * (2 * k)
    coeffs[2 * k - 1] = 1
    coeffs[k] -= 1
    coeffs[k - 1] -= 1
    coeffs[0] -= 1
    return IntPoly(tuple(coeffs))


def even_genus_min(g: int, precision=Fraction(1, 10**15)) -> AlgebraicReal:
    """Minimal Penner dilatation on the closed nonorientable surface of even genus ``g = 2k``.

    This is ``r**(2k-1)`` for the largest real root ``r`` of ``even_genus_poly(k)``;
    the power is carried as the ``exponent`` of the result and its enclosure is
    refined to width ``precision``.
    """
    if g % 2 or g < 4:
        raise InvalidParameter(f"genus must be even and >= 4, got {g}")
    k = g // 2
    r = largest_real_root(even_genus_poly(k), Fraction(1, 2**20))
    ar = AlgebraicReal(r.poly, r.lo, r.hi, exponent=2 * k - 1)
    return ar.refine(precision)


def silver_limit() -> AlgebraicReal:
    """``3 + 2 sqrt 2``, the largest root of ``x**2 - 6x + 1``."""
    return largest_real_root(IntPoly((1, -6, 1)))


def conjectured_odd_limit() -> AlgebraicReal:
    """Largest real root of ``x**4 - 8x**3 + 13x**2 - 8x + 1`` (about 6.0713602414689)."""
    return largest_real_root(IntPoly((1, -8, 13, -8, 1)), Fraction(1, 10**30))

"""Integer polynomials, Sturm-sequence root isolation and certified algebraic reals.

All sign tests use exact rational evaluation; floating point only appears in
``approx`` fields.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Union

from .errors import DomainError, InvalidInput

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with integer coefficients, ``coeffs[k]`` multiplying ``t**k``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @classmethod
    def t(cls) -> "IntPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Rational) -> int:
        """Exact sign of ``p(x)`` at a rational point, without forming fractions."""
        x = Fraction(x)
        a, b = x.numerator, x.denominator
        n = self.degree
        if n < 0:
            return 0
        acc = 0
        bpow = 1
        # homogeneous Horner: accumulates sum c_k a^k b^(n-k) = b^n p(a/b), b > 0
        for c in reversed(self.coeffs):
            acc = acc * a + c * bpow
            bpow *= b
        return (acc > 0) - (acc < 0)

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(k * c for k, c in enumerate(self.coeffs))[1:])

    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    def primitive(self) -> "IntPoly":
        g = self.content()
        if g == 0:
            return self
        if self.lc < 0:
            g = -g
        return IntPoly(tuple(c // g for c in self.coeffs))

    def reversed(self) -> "IntPoly":
        return IntPoly(tuple(reversed(self.coeffs)))

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "IntPoly":
        return cls(tuple(int(c) for c in json.loads(text)))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            body = {0: f"{mag}", 1: "t" if mag == 1 else f"{mag}*t"}.get(
                k, f"t^{k}" if mag == 1 else f"{mag}*t^{k}"
            )
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly((x,))
    raise TypeError(f"cannot convert {type(x).__name__} to IntPoly")


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder scaled by ``|lc(b)|**(deg a - deg b + 1)``; same sign as the true remainder."""
    r = list(a.coeffs)
    db, lb = b.degree, b.lc
    scale = abs(lb)
    sgn = 1 if lb > 0 else -1
    while len(r) - 1 >= db and any(r):
        k = len(r) - 1 - db
        lead = r[-1]
        # r <- |lb| * r - sgn * lead * x^k * b  removes the leading term
        r = [scale * c for c in r]
        for i, c in enumerate(b.coeffs):
            r[i + k] -= sgn * lead * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return IntPoly(tuple(r))


def sturm_sequence(p: IntPoly) -> list[IntPoly]:
    """Sturm chain ``p, p', -rem, ...`` with every member scaled by a positive integer."""
    if p.degree < 1:
        return [p]
    seq = [p, p.derivative()]
    while True:
        r = _prem(seq[-2], seq[-1])
        if r.is_zero():
            break
        r = -r
        g = r.content()
        seq.append(IntPoly(tuple(c // g for c in r.coeffs)))
    return seq


def _variations(seq: list[IntPoly], x) -> int:
    signs = [s for s in (q.sign_at(x) for q in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _variations_at_infinity(seq: list[IntPoly]) -> int:
    signs = [1 if q.lc > 0 else -1 for q in seq if not q.is_zero()]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_real_roots(p: IntPoly, a: Rational, b=None, seq=None) -> int:
    """Distinct real roots in ``(a, b]``; ``b=None`` means ``+infinity``."""
    seq = seq or sturm_sequence(p)
    vb = _variations_at_infinity(seq) if b is None else _variations(seq, b)
    return _variations(seq, a) - vb


def root_upper_bound(p: IntPoly) -> Fraction:
    """Cauchy bound: every real root is below ``1 + max |c_k / c_n|``."""
    lc = abs(p.lc)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lc) if p.degree > 0 else Fraction(1)


def squarefree_part(p: IntPoly) -> IntPoly:
    seq = sturm_sequence(p)
    g = seq[-1]
    if g.degree <= 0:
        return p
    q = _exact_div(p, g)
    return q.primitive()


def _exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient over Q, scaled to a primitive integer polynomial."""
    r = [Fraction(c) for c in a.coeffs]
    q = [Fraction(0)] * (a.degree - b.degree + 1)
    for k in range(len(q) - 1, -1, -1):
        coef = r[k + b.degree] / b.lc
        q[k] = coef
        for i, c in enumerate(b.coeffs):
            r[i + k] -= coef * c
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in q), 1)
    return IntPoly(tuple(int(c * den) for c in q)).primitive()


@dataclass
class AlgebraicReal:
    """``root ** exponent``, where ``root`` is the unique root of ``poly`` in ``[lo, hi]``.

    The interval is refined by bisection with exact sign tests. ``exponent`` lets a
    power such as ``r**(2k-1)`` be carried with interval arithmetic instead of a
    resultant.
    """

    poly: IntPoly
    lo: Fraction
    hi: Fraction
    exponent: int = 1
    _approx: float = field(default=float("nan"), repr=False)

    def __post_init__(self):
        self.lo, self.hi = Fraction(self.lo), Fraction(self.hi)
        if self.lo > self.hi:
            raise InvalidInput("empty isolating interval")
        slo, shi = self.poly.sign_at(self.lo), self.poly.sign_at(self.hi)
        if slo * shi > 0:
            raise InvalidInput("poly has no sign change on the isolating interval")

    def root_interval(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    def interval(self) -> tuple[Fraction, Fraction]:
        """Enclosure of the represented value (the root raised to ``exponent``)."""
        e = self.exponent
        if self.lo >= 0 or e % 2:
            return self.lo**e, self.hi**e
        if self.hi <= 0:
            return self.hi**e, self.lo**e
        return Fraction(0), max(self.lo**e, self.hi**e)

    @property
    def approx(self) -> float:
        a, b = self.interval()
        return float((a + b) / 2)

    def __float__(self):
        return self.approx

    def width(self) -> Fraction:
        a, b = self.interval()
        return b - a

    def bisect(self) -> None:
        if self.lo == self.hi:
            return
        mid = (self.lo + self.hi) / 2
        sm = self.poly.sign_at(mid)
        if sm == 0:
            self.lo = self.hi = mid
        elif self.poly.sign_at(self.lo) == 0:
            self.hi = self.lo
        elif self.poly.sign_at(self.hi) == 0:
            self.lo = self.hi
        elif sm == self.poly.sign_at(self.lo):
            self.lo = mid
        else:
            self.hi = mid

    def refine(self, width: Rational) -> "AlgebraicReal":
        """Bisect until the value enclosure is at most ``width`` wide."""
        width = Fraction(width)
        while self.width() > width and self.lo != self.hi:
            self.bisect()
        return self

    def to_dict(self) -> dict:
        d = {
            "poly": [str(c) for c in self.poly.coeffs],
            "lo": f"{self.lo.numerator}/{self.lo.denominator}",
            "hi": f"{self.hi.numerator}/{self.hi.denominator}",
            "approx": self.approx,
        }
        if self.exponent != 1:
            d["exponent"] = self.exponent
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> "AlgebraicReal":
        return cls(
            IntPoly(tuple(int(c) for c in d["poly"])),
            Fraction(d["lo"]),
            Fraction(d["hi"]),
            int(d.get("exponent", 1)),
        )

    @classmethod
    def from_json(cls, text: str) -> "AlgebraicReal":
        return cls.from_dict(json.loads(text))


def largest_real_root(p: IntPoly, precision: Rational = Fraction(1, 10**15)) -> AlgebraicReal:
    """Isolate the largest real root of ``p`` (which must be positive) to width ``precision``."""
    if p.degree < 1:
        raise DomainError("constant polynomial has no roots")
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    if count_real_roots(q, 0, None, seq) == 0:
        raise DomainError(f"{p} has no real root in (0, inf)")
    lo, hi = Fraction(0), root_upper_bound(q)
    # invariant: the largest root lies in (lo, hi]
    while count_real_roots(q, lo, hi, seq) > 1:
        mid = (lo + hi) / 2
        if count_real_roots(q, mid, hi, seq) >= 1:
            lo = mid
        else:
            hi = mid
    if q.sign_at(hi) == 0:
        lo = hi
    return AlgebraicReal(q, lo, hi).refine(precision)


def taylor_shift(p: IntPoly, m: Rational) -> list[Fraction]:
    """Coefficients ``b_j`` of ``p(m + h) = sum_j b_j h**j``.

    With ``m = a/q`` the shift runs on the integer polynomial ``Q(z) = q**n p(z/q)``
    by ``a`` (synthetic division), then ``b_j = B_j q**j / q**n``.
    """
    m = Fraction(m)
    a, q = m.numerator, m.denominator
    n = p.degree
    big = [c * q ** (n - k) for k, c in enumerate(p.coeffs)]
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            big[j] += a * big[j + 1]
    qn = q**n
    return [Fraction(c * q**j, qn) for j, c in enumerate(big)]


def derivative_bound_isolates(p: IntPoly, lo: Fraction, hi: Fraction) -> bool:
    """True if ``p'`` provably keeps one sign on ``[lo, hi]`` (so ``p`` has at most one root there).

    With ``p(m + h) = sum b_j h**j`` about the midpoint and ``r`` the half width,
    ``|p'(m + h) - b_1| <= sum_{j>=2} j |b_j| r**(j-1)`` for ``|h| <= r``.
    """
    if p.degree < 1:
        return False
    mid = (lo + hi) / 2
    r = (hi - lo) / 2
    b = taylor_shift(p, mid)
    tail = sum(j * abs(c) * r ** (j - 1) for j, c in enumerate(b) if j >= 2)
    return abs(b[1]) > tail


def isolate_simple_root(p: IntPoly, lo: Fraction, hi: Fraction, max_steps: int = 2000) -> AlgebraicReal:
    """Turn a sign-change bracket into a certified isolating interval.

    Bisects while keeping the sign change until ``derivative_bound_isolates`` holds.
    Suited to high degree where Sturm chains are too costly.
    """
    ar = AlgebraicReal(p, lo, hi)
    for _ in range(max_steps):
        if ar.lo == ar.hi or derivative_bound_isolates(p, ar.lo, ar.hi):
            return ar
        ar.bisect()
    raise DomainError("could not certify a simple root in the bracket")

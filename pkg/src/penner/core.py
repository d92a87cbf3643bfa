"""Penner transition matrices, Perron-Frobenius eigenvalues and exact characteristic polynomials.

The matrix of a twist word is the product of ``I + R_i`` over the word, with the
first-twisted curve's factor applied first (rightmost). Acting on a vector, the
twists update coordinates in order::

    x[i] <- x[i] + sum_j omega[i][j] * x[j]

which is ``apply_word``. All spectral data is invariant under the choice of
product order because cyclic rotations of a word give conjugate matrices.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InvalidInput, NotPerronFrobenius, ResourceLimit
from .graphs import IntersectionGraph
from .orientations import TwistWord
from .polys import AlgebraicReal, IntPoly, isolate_simple_root

log = logging.getLogger(__name__)

CHAR_POLY_LIMIT = 256


@dataclass(frozen=True)
class BigMatrix:
    """Square matrix of Python integers (arbitrary precision), stored row-major and immutable."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise InvalidInput("BigMatrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "BigMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "BigMatrix") -> "BigMatrix":
        cols = list(zip(*other.rows))
        return BigMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def matvec(self, x: Sequence):
        return [sum(a * b for a, b in zip(r, x)) for r in self.rows]

    def transpose(self) -> "BigMatrix":
        return BigMatrix(tuple(zip(*self.rows)))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def to_numpy(self) -> np.ndarray:
        return np.array(self.rows, dtype=float)

    def determinant(self) -> int:
        """Bareiss fraction-free elimination."""
        a = [list(r) for r in self.rows]
        n, sign, prev = self.n, 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


def twist_matrix(g: IntersectionGraph, i: int) -> BigMatrix:
    """``I + R_i``: the identity with row ``i`` of ``omega`` added to row ``i``."""
    if not 0 <= i < g.n:
        raise InvalidInput(f"vertex {i} out of range for n={g.n}")
    rows = [list(r) for r in BigMatrix.identity(g.n).rows]
    rows[i] = [rows[i][j] + g.omega[i][j] for j in range(g.n)]
    return BigMatrix(tuple(tuple(r) for r in rows))


def word_matrix(w: TwistWord) -> BigMatrix:
    """Product of twist matrices over the word, first twist rightmost.

    Left-multiplying by ``I + R_i`` only changes row ``i``, so the product is built
    by row updates rather than full matrix products.
    """
    g = w.graph
    rows = [[int(i == j) for j in range(g.n)] for i in range(g.n)]
    for i in w.order:
        new = list(rows[i])
        for j, m in g.adjacency_lists[i]:
            rj = rows[j]
            for k in range(g.n):
                new[k] += m * rj[k]
        rows[i] = new
    return BigMatrix(tuple(tuple(r) for r in rows))


def apply_word(w: TwistWord, x: Sequence) -> list:
    """``word_matrix(w) @ x`` computed twist by twist; works for ints, floats and Fractions."""
    adj = w.graph.adjacency_lists
    x = list(x)
    for i in w.order:
        x[i] = x[i] + sum(m * x[j] for j, m in adj[i])
    return x


def is_irreducible(m: BigMatrix) -> bool:
    """Strong connectivity of the directed graph with an arc ``i -> j`` whenever ``m[i][j] != 0``."""
    n = m.n

    def reach(adj):
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    fwd = [[j for j in range(n) if m.rows[i][j]] for i in range(n)]
    bwd = [[j for j in range(n) if m.rows[j][i]] for i in range(n)]
    return reach(fwd) and reach(bwd)


def is_primitive(m: BigMatrix) -> bool:
    """Some power of the nonnegative matrix ``m`` is strictly positive.

    Irreducible with a positive diagonal is sufficient; otherwise the pattern is
    squared up to Wielandt's exponent ``(n - 1)**2 + 1``.
    """
    if any(v < 0 for r in m.rows for v in r):
        return False
    if not is_irreducible(m):
        return False
    if all(m.rows[i][i] > 0 for i in range(m.n)):
        return True
    pattern = np.array(m.rows, dtype=bool)
    power = pattern.copy()
    e = 1
    while e < (m.n - 1) ** 2 + 1:
        power = (power.astype(np.int64) @ power.astype(np.int64)) > 0
        e *= 2
    # power is pattern**e with e >= Wielandt's bound
    return bool(power.all())


def collatz_wielandt(m, x) -> tuple:
    """``(min_i (Mx)_i / x_i, max_i (Mx)_i / x_i)`` over positive ``x``; brackets the PF eigenvalue."""
    y = m.matvec(x) if isinstance(m, BigMatrix) else list(np.asarray(m) @ np.asarray(x))
    ratios = [Fraction(a) / Fraction(b) if isinstance(b, (int, Fraction)) else a / b for a, b in zip(y, x)]
    return min(ratios), max(ratios)


def _power_iteration(a: np.ndarray, tol: float, max_iter: int):
    x = np.ones(a.shape[0])
    lo = hi = float("nan")
    for _ in range(max_iter):
        y = a @ x
        ratios = y / x
        lo, hi = float(ratios.min()), float(ratios.max())
        x = y / y.max()
        if hi - lo <= tol * hi:
            break
    else:
        log.warning("power iteration did not reach tol=%g (bracket width %g)", tol, hi - lo)
    return (lo + hi) / 2, x, lo, hi


def spectral_radius_float(m: BigMatrix, tol: float = 1e-13, max_iter: int = 200000) -> float:
    """Perron-Frobenius eigenvalue by power iteration from the all-ones vector.

    Stops when the Collatz-Wielandt bracket ``[min (Mx)_i/x_i, max (Mx)_i/x_i]``
    has relative width at most ``tol``; returns the bracket midpoint.
    """
    if not is_primitive(m):
        raise NotPerronFrobenius("matrix is not primitive")
    lam, _, _, _ = _power_iteration(m.to_numpy(), tol, max_iter)
    return lam


def pf_eigenpair(m: BigMatrix, tol: float = 1e-13, max_iter: int = 200000):
    """``(lambda, y)`` with ``y`` the PF eigenvector normalised to max entry 1."""
    if not is_primitive(m):
        raise NotPerronFrobenius("matrix is not primitive")
    lam, x, _, _ = _power_iteration(m.to_numpy(), tol, max_iter)
    return lam, x / x.max()


def char_poly(m: BigMatrix, limit: int = CHAR_POLY_LIMIT) -> IntPoly:
    """Exact ``det(tI - m)`` by Faddeev-LeVerrier with exact integer division.

    ``M_k = m M_{k-1} + c_{n-k+1} I`` and ``c_{n-k} = -tr(m M_k) / k``; every division is exact.
    """
    n = m.n
    if n > limit:
        raise ResourceLimit(f"char_poly limited to dimension {limit}, got {n}")
    a = np.array(m.rows, dtype=object)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = np.zeros((n, n), dtype=object)
    eye = np.eye(n, dtype=int).astype(object)
    for k in range(1, n + 1):
        mk = a.dot(mk) + coeffs[n - k + 1] * eye
        tr = sum(a.dot(mk)[i, i] for i in range(n)) if n else 0
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("Faddeev-LeVerrier division was not exact")
        coeffs[n - k] = int(q)
    return IntPoly(tuple(coeffs))


def twist_pencil(w: TwistWord, t) -> list[dict]:
    """Sparse rows of ``t (I - A_in) - (I + A_out)`` for the word's orientation.

    ``A_in[i][j] = omega[i][j]`` when ``j`` is twisted before ``i``, ``A_out`` when after.
    Since ``(I - A_in) word_matrix = I + A_out`` and ``I - A_in`` is unipotent,
    ``det(t I - word_matrix) = det(pencil(t))``.
    """
    g, pos = w.graph, w.position()
    rows = []
    for i in range(g.n):
        row = {i: t - 1}
        for j in g.neighbors(i):
            row[j] = -g.omega[i][j] * (t if pos[j] < pos[i] else 1)
        rows.append(row)
    return rows


def sparse_determinant(rows: list[dict]) -> Fraction:
    """Determinant of a matrix given as sparse rows, by Gaussian elimination over Q.

    Pivots on the sparsest available row to limit fill-in; for cycles this keeps
    the cost linear in the dimension.
    """
    n = len(rows)
    rows = [{j: Fraction(v) for j, v in r.items() if v} for r in rows]
    col_rows: dict[int, set] = {}
    for i, r in enumerate(rows):
        for j in r:
            col_rows.setdefault(j, set()).add(i)
    alive = set(range(n))
    det = Fraction(1)
    perm = [0] * n
    for k in range(n):
        cands = [i for i in col_rows.get(k, ()) if i in alive]
        if not cands:
            return Fraction(0)
        p = min(cands, key=lambda i: (len(rows[i]), i))
        alive.discard(p)
        perm[k] = p
        prow = rows[p]
        piv = prow[k]
        det *= piv
        for i in cands:
            if i == p:
                continue
            r = rows[i]
            f = r[k] / piv
            for j, v in prow.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    if j not in r:
                        col_rows.setdefault(j, set()).add(i)
                    r[j] = nv
                else:
                    r.pop(j, None)
                    col_rows[j].discard(i)
    # sign of the row permutation perm (column k pivoted at row perm[k])
    seen, sign = [False] * n, 1
    for s in range(n):
        if seen[s]:
            continue
        length, v = 0, s
        while not seen[v]:
            seen[v] = True
            v = perm[v]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign * det


def word_char_poly(w: TwistWord) -> IntPoly:
    """Exact characteristic polynomial of ``word_matrix(w)`` via the sparse twist pencil.

    Evaluates ``det(pencil(t))`` at ``t = 0..n`` and interpolates with Newton
    forward differences; scales to dimensions in the hundreds for cycle graphs.
    """
    n = w.graph.n
    vals = [sparse_determinant(twist_pencil(w, t)) for t in range(n + 1)]
    # forward differences: p(t) = sum_k diff_k * binom(t, k)
    diffs = []
    cur = vals
    for _ in range(n + 1):
        diffs.append(cur[0])
        cur = [b - a for a, b in zip(cur, cur[1:])]
    coeffs = [Fraction(0)] * (n + 1)
    falling = [Fraction(1)]  # coefficients of t(t-1)...(t-k+1)/k!
    for k in range(n + 1):
        for i, c in enumerate(falling):
            coeffs[i] += diffs[k] * c
        nxt = [Fraction(0)] * (len(falling) + 1)
        for i, c in enumerate(falling):
            nxt[i + 1] += c / (k + 1)
            nxt[i] -= c * k / (k + 1)
        falling = nxt
    if any(c.denominator != 1 for c in coeffs):
        raise ArithmeticError("interpolated characteristic polynomial is not integral")
    return IntPoly(tuple(int(c) for c in coeffs))


def certified_spectral_radius(w: TwistWord, digits: int = 30, max_iter: int = 1000000):
    """Rigorous rational bracket ``(lo, hi)`` for the PF eigenvalue of ``word_matrix(w)``.

    Runs power iteration in fixed-point integers through ``apply_word``; the
    Collatz-Wielandt bounds of the final positive integer vector are exact
    rationals, so rounding inside the iteration never affects the bracket.
    """
    m = word_matrix(w)
    if not is_primitive(m):
        raise NotPerronFrobenius("word does not give a primitive matrix")
    # warm start from the floating eigenvector
    _, y0 = pf_eigenpair(m, tol=1e-12)
    # enough fraction bits that rounding the smallest entry stays below the target width
    spread = max(0, -math.floor(math.log2(float(y0.min()))))
    bits = int(digits * 3.33) + 64 + spread
    one = 1 << bits
    x = [max(1, int(v * one)) for v in y0]
    target = Fraction(1, 10**digits)
    for it in range(max_iter):
        y = apply_word(w, x)
        if it % 25 == 0:
            lo, hi = _exact_cw(x, y)
            if hi - lo <= target * lo:
                return lo, hi
        top = max(y)
        x = [max(1, (v << bits) // top) for v in y]
    log.warning("certified bracket did not reach 1e-%d after %d iterations", digits, max_iter)
    return _exact_cw(x, apply_word(w, x))


def _exact_cw(x: list[int], y: list[int]) -> tuple[Fraction, Fraction]:
    imin = imax = 0
    for i in range(1, len(x)):
        if y[i] * x[imin] < y[imin] * x[i]:
            imin = i
        if y[i] * x[imax] > y[imax] * x[i]:
            imax = i
    return Fraction(y[imin], x[imin]), Fraction(y[imax], x[imax])


def certified_dilatation(w: TwistWord, digits: int = 30) -> AlgebraicReal:
    """The dilatation of ``w`` as an algebraic real: exact char poly plus a certified isolating interval.

    The Collatz-Wielandt bracket proves the PF eigenvalue lies in ``[lo, hi]``;
    the char poly must change sign there, and a derivative bound then shows the
    root is the only one in the (possibly refined) interval.
    """
    lo, hi = certified_spectral_radius(w, digits)
    p = word_char_poly(w)
    if p.sign_at(lo) * p.sign_at(hi) > 0:
        raise ArithmeticError("characteristic polynomial does not change sign on the PF bracket")
    return isolate_simple_root(p, lo, hi)

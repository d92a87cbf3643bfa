"""Minimal Penner dilatations per genus, the enriched-cycle sequence mu_l, Perron-Frobenius vector tools
and brute-force verification harnesses.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional, Union

import numpy as np

from .closed_forms import conjectured_odd_limit, even_genus_min, f
from .core import (
    BigMatrix,
    apply_word,
    certified_dilatation,
    certified_spectral_radius,
    char_poly,
    pf_eigenpair,
    spectral_radius_float,
    word_matrix,
)
from .errors import InvalidInput, InvalidParameter, PreconditionViolation, ResourceLimit, UnsupportedGenus
from .graphs import (
    IntersectionGraph,
    adjacency_spectral_radius,
    cycle_graph,
    enriched_cycle_graph,
    genus_lower_bound,
    is_bipartite,
    shortest_induced_odd_cycle,
    tree_lower_bound,
)
from .orientations import (
    AcyclicOrientation,
    TwistWord,
    canonical_word,
    cycle_family,
    flow_difference,
    orientation_from_word,
)
from .polys import AlgebraicReal, largest_real_root

log = logging.getLogger(__name__)

CONJECTURE_KMAX = 150
# lower bound used for the graphs with a double edge whose pictures are not reconstructed
DOUBLE_EDGE_THRESHOLD = 7.0


@dataclass
class MinimizerCertificate:
    genus: int
    family: str  # "cycle" or "enriched-cycle"
    l: int
    flow_difference: int
    dilatation: Union[AlgebraicReal, float]
    witness_word: TwistWord

    @property
    def value(self) -> float:
        return float(self.dilatation)

    def verify(self, tol: float = 1e-9) -> bool:
        """Recompute the dilatation from the witness word."""
        lam = spectral_radius_float(word_matrix(self.witness_word))
        return abs(lam - self.value) <= tol * lam

    def to_dict(self) -> dict:
        dil = self.dilatation.to_dict() if isinstance(self.dilatation, AlgebraicReal) else {"approx": self.dilatation}
        return {
            "genus": self.genus,
            "family": self.family,
            "l": self.l,
            "flow_difference": self.flow_difference,
            "dilatation": dil,
            "witness_word": list(self.witness_word.order),
        }


def _check_odd(l: int) -> None:
    if l < 3 or l % 2 == 0:
        raise InvalidParameter(f"l must be odd and >= 3, got {l}")


def mu(l: int, tol: float = 1e-13) -> float:
    """Dilatation of the flow-1 enriched ``l``-cycle, by floating power iteration."""
    _check_odd(l)
    return spectral_radius_float(word_matrix(canonical_word(l, 1, enriched=True)), tol)


def mu_certified(l: int, digits: int = 30) -> tuple[Fraction, Fraction]:
    """Rational bracket ``(lo, hi)`` for ``mu_l`` of relative width ``10**-digits``."""
    _check_odd(l)
    return certified_spectral_radius(canonical_word(l, 1, enriched=True), digits)


def min_penner_dilatation(g: int, digits: int = 30) -> MinimizerCertificate:
    """Minimal Penner dilatation on the closed nonorientable surface of genus ``g``.

    Even ``g``: the flow-1 cycle of length ``g - 1``. Odd ``g``: the flow-1 enriched
    cycle of length ``g - 2``.
    """
    if g < 4:
        raise UnsupportedGenus(
            f"genus {g}: surfaces of genus at most 3 carry no pseudo-Anosov mapping classes from Penner's construction"
        )
    if g % 2 == 0:
        l = g - 1
        return MinimizerCertificate(g, "cycle", l, 1, even_genus_min(g, Fraction(1, 10**digits)), canonical_word(l, 1))
    l = g - 2
    w = canonical_word(l, 1, enriched=True)
    return MinimizerCertificate(g, "enriched-cycle", l, 1, certified_dilatation(w, digits), w)


def pf_vector(m: BigMatrix, tol: float = 1e-10) -> np.ndarray:
    """Perron-Frobenius eigenvector normalised to max entry 1, with ``||My - lambda y||_inf <= tol`` checked."""
    lam, y = pf_eigenpair(m, tol=min(tol, 1e-13))
    res = np.abs(m.to_numpy() @ y - lam * y).max()
    if res > tol:
        raise ArithmeticError(f"eigenvector residual {res:.3g} exceeds {tol}")
    return y


def minmax_ratio(m: BigMatrix, x) -> float:
    """``max (Mx)_i / x_i`` over ``x_i != 0``; an upper bound for the PF eigenvalue when ``x >= 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or not np.any(x):
        raise InvalidInput("x must be nonnegative and nonzero")
    y = m.to_numpy() @ x
    nz = x != 0
    return float((y[nz] / x[nz]).max())


def _cycle_nbrs(l: int, v: int) -> tuple[int, int]:
    return (v - 1) % l, (v + 1) % l


def prolongation_sites(w: TwistWord) -> list[int]:
    """Cycle vertices ``i`` around which the orientation reads ``i-2 -> i-1 <- i -> i+1 <- i+2``.

    ``i`` must have degree 2; its neighbours may carry the pendant, whose equations the
    prolongation leaves untouched. Prolonging at ``i`` turns it into a sink.
    """
    l, _ = cycle_family(w.graph)
    if l < 5:
        return []
    pos = w.position()
    g = w.graph
    sites = []
    for i in range(l):
        a, b = _cycle_nbrs(l, i)
        aa, bb = (i - 2) % l, (i + 2) % l
        if g.degree(i) != 2:
            continue
        if pos[i] < pos[a] and pos[i] < pos[b] and pos[aa] < pos[a] and pos[bb] < pos[b]:
            sites.append(i)
    return sites


@dataclass
class Prolongation:
    word: TwistWord
    relabel: dict  # old vertex -> new vertex; new vertices keyed "n+1" and "n+2"
    site: int


def prolong_at_sink(w: TwistWord, i: int) -> Prolongation:
    """Insert two vertices on the edges at ``i`` so the path reads ``i-1 - n+1 - i - n+2 - i+1``.

    The new vertices are twisted first, so ``i`` becomes a sink; the flow difference is
    unchanged. The result is relabelled as a standard (enriched) cycle of length ``l + 2``
    with old vertex 0 kept at 0.
    """
    l, enriched = cycle_family(w.graph)
    if i not in prolongation_sites(w):
        raise PreconditionViolation(f"vertex {i} is not a degree-2 source between two cycle sinks")
    a, b = _cycle_nbrs(l, i)
    # walk the new cycle from 0 in increasing direction
    walk: list = []
    for v in range(l):
        walk.append(v)
        if v == a:
            walk.append("n+1")
        if v == i:
            walk.append("n+2")
    relabel = {v: k for k, v in enumerate(walk)}
    if enriched:
        relabel[l] = l + 2
    new_graph = enriched_cycle_graph(l + 2) if enriched else cycle_graph(l + 2)
    order = (relabel["n+1"], relabel["n+2"]) + tuple(relabel[v] for v in w.order)
    return Prolongation(TwistWord(new_graph, order), relabel, i)


def check_prolongation_bound(w: TwistWord, i: int, tol: float = 1e-9) -> bool:
    """Certify ``lambda(prolonged) <= lambda(w)`` by the min-max functional.

    Requires ``y_i <= min(y_{i-2}, y_{i+2})`` for the PF vector ``y`` of ``w``. The test
    vector copies ``y``, puts ``y_i`` on both new vertices and ``min(y_{i-1}, y_{i+1})``
    at ``i``; the result is whether every ratio is at most ``lambda(w) + tol``.
    """
    l, _ = cycle_family(w.graph)
    pr = prolong_at_sink(w, i)
    m = word_matrix(w)
    lam, y = pf_eigenpair(m)
    a, b = _cycle_nbrs(l, i)
    aa, bb = (i - 2) % l, (i + 2) % l
    if y[i] > min(y[aa], y[bb]) + tol:
        raise PreconditionViolation(
            f"PF entry at {i} ({y[i]:.6g}) exceeds min of entries at {aa}, {bb} ({min(y[aa], y[bb]):.6g})"
        )
    x = np.zeros(w.graph.n + 2)
    for v in range(w.graph.n):
        x[pr.relabel[v]] = y[v]
    x[pr.relabel["n+1"]] = x[pr.relabel["n+2"]] = y[i]
    x[pr.relabel[i]] = min(y[a], y[b])
    mx = np.asarray(apply_word(pr.word, list(x)))
    ratio = float((mx / x).max())
    return ratio <= lam + tol


def hypothesis_sites(w: TwistWord, tol: float = 1e-12) -> list[int]:
    """Prolongation sites where the PF entry is at most its two second neighbours."""
    l, _ = cycle_family(w.graph)
    _, y = pf_eigenpair(word_matrix(w))
    return [i for i in prolongation_sites(w) if y[i] <= min(y[(i - 2) % l], y[(i + 2) % l]) + tol]


def find_prolongation_site(l: int, enriched: bool = False, flows=None) -> tuple[TwistWord, int]:
    """First ``(word, site)`` over orientations with flow difference in ``flows`` meeting the PF hypothesis.

    ``flows=None`` allows every achievable flow difference. Orientations are scanned
    in order of their clockwise-edge bitmask.

    All such words are conjugate, so any of them represents the class; the search
    only looks for one whose PF vector admits a prolongation.
    """
    if l > 20:
        raise ResourceLimit("site search limited to l <= 20")
    if flows is None:
        flows = tuple(d for d in range(2 - l, l - 1, 2))
    g = enriched_cycle_graph(l) if enriched else cycle_graph(l)
    for bits in range(2**l):
        cw = [(bits >> e) & 1 == 1 for e in range(l)]
        if 2 * sum(cw) - l not in flows:
            continue
        arcs = [(e, (e + 1) % l) if c else ((e + 1) % l, e) for e, c in enumerate(cw)]
        for pend in ([(0, l)], [(l, 0)]) if enriched else ([],):
            try:
                w = AcyclicOrientation(g, tuple(arcs + pend)).to_word()
            except InvalidInput:
                continue
            if not prolongation_sites(w):
                continue
            sites = hypothesis_sites(w)
            if sites:
                return w, sites[0]
    raise PreconditionViolation(f"no orientation of length {l} with flow in {tuple(flows)} admits a prolongation site")


@dataclass
class ConjugacyReport:
    l: int
    bucket_sizes: dict = field(default_factory=dict)  # d -> number of words
    polys: dict = field(default_factory=dict)  # |d| -> set of char polys
    roots: dict = field(default_factory=dict)  # |d| -> largest real root
    ok: bool = False

    def lines(self) -> list[str]:
        out = [f"l={self.l}"]
        for d in sorted(self.bucket_sizes):
            out.append(f"  d={d:+d}: {self.bucket_sizes[d]} words")
        for ad in sorted(self.polys):
            ps = ", ".join(str(p) for p in self.polys[ad])
            out.append(f"  |d|={ad}: {len(self.polys[ad])} poly(s) [{ps}], root {self.roots.get(ad, float('nan')):.6f}")
        out.append(f"  {'PASS' if self.ok else 'FAIL'}")
        return out


def verify_flowdiff_conjugacy(l: int) -> ConjugacyReport:
    """All ``l!`` words on ``C_l``: one char poly per ``|d|`` and roots increasing in ``|d|``."""
    if l > 9:
        raise ResourceLimit("conjugacy enumeration limited to l <= 9")
    g = cycle_graph(l)
    rep = ConjugacyReport(l)
    mats: dict[int, set] = {}
    for perm in permutations(range(l)):
        w = TwistWord(g, perm)
        d = flow_difference(orientation_from_word(w))
        rep.bucket_sizes[d] = rep.bucket_sizes.get(d, 0) + 1
        mats.setdefault(abs(d), set()).add(word_matrix(w))
    for ad, ms in mats.items():
        rep.polys[ad] = {char_poly(m) for m in ms}
    single = all(len(ps) == 1 for ps in rep.polys.values())
    for ad, ps in rep.polys.items():
        rep.roots[ad] = largest_real_root(next(iter(ps)), Fraction(1, 10**12)).approx
    rs = [rep.roots[ad] for ad in sorted(rep.roots)]
    rep.ok = single and all(x < y for x, y in zip(rs, rs[1:]))
    return rep


@dataclass
class SweepRow:
    k: int
    genus: int
    l: int
    mu: float
    gap: float
    mu_interval: Optional[tuple[Fraction, Fraction]] = None
    gap_upper: Optional[Fraction] = None


def _sweep_value(args):
    l, certified, digits, tol = args
    return mu_certified(l, digits) if certified else mu(l, tol)


def conjecture_sweep(
    k_max: int, certified: bool = False, digits: int = 40, tol: float = 1e-13, workers: int = 1
) -> list[SweepRow]:
    """``mu_{2k-1}`` and its distance to the conjectured limit for ``k = 2..k_max``.

    Raises ``AssertionError`` if the sequence increases: in floating mode beyond a
    relative ``10 * tol``, in certified mode whenever the rational brackets prove it.
    With ``workers > 1`` the values are computed in a process pool; rows keep ``k`` order.
    """
    if k_max > CONJECTURE_KMAX:
        raise ResourceLimit(f"k_max limited to {CONJECTURE_KMAX}")
    if k_max < 2:
        raise InvalidParameter("k_max must be >= 2")
    lim = conjectured_odd_limit().refine(Fraction(1, 10 ** (digits + 5)))
    llo, lhi = lim.interval()
    tasks = [(2 * k - 1, certified, digits, tol) for k in range(2, k_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_sweep_value, tasks))
    else:
        values = [_sweep_value(t) for t in tasks]
    rows = []
    for (l, *_), v in zip(tasks, values):
        k = (l + 1) // 2
        if certified:
            lo, hi = v
            val = float((lo + hi) / 2)
            rows.append(SweepRow(k, l + 2, l, val, abs(val - lim.approx), (lo, hi), max(hi - llo, lhi - lo)))
        else:
            rows.append(SweepRow(k, l + 2, l, v, abs(v - lim.approx)))
    for prev, cur in zip(rows, rows[1:]):
        if certified:
            if cur.mu_interval[0] > prev.mu_interval[1]:
                raise AssertionError(f"mu increases between k={prev.k} and k={cur.k}")
        elif cur.mu > prev.mu * (1 + 10 * tol):
            raise AssertionError(f"mu increases between k={prev.k} and k={cur.k}")
    return rows


def lower_bound_report(g: IntersectionGraph, w: Optional[TwistWord] = None) -> dict:
    """Which lower-bound rule applies to a Penner mapping class with intersection graph ``g``.

    Rules: bipartite graphs give no nonorientable filling; a double edge gives the tree
    bound at ``alpha = sqrt 5`` (about 6.854) and the documented threshold 7 for the
    remaining double-edge configurations; an induced odd cycle of length ``k`` bounds the
    genus below by ``k + 1`` and the dilatation below by the cycle's flow function value.
    """
    rep: dict = {"n": g.n, "rules": []}
    if not g.is_connected():
        rep["rules"].append({"rule": "disconnected", "bound": None})
        return rep
    if is_bipartite(g):
        rep["rules"].append({"rule": "bipartite", "bound": None, "note": "cannot fill a nonorientable surface"})
    if any(m >= 2 for _, _, m in g.edges()):
        rep["rules"].append({"rule": "double-edge-tree", "bound": tree_lower_bound(math.sqrt(5))})
        rep["rules"].append({"rule": "double-edge-threshold", "bound": DOUBLE_EDGE_THRESHOLD})
    k = shortest_induced_odd_cycle(g)
    if k is not None:
        rule = {"rule": "induced-odd-cycle", "k": k, "genus_at_least": genus_lower_bound(g), "bound": f(1, k)}
        rep["rules"].append(rule)
    if len(g.edges()) == g.n - 1:
        alpha = adjacency_spectral_radius(g)
        rep["rules"].append({"rule": "tree", "alpha": alpha, "bound": tree_lower_bound(alpha)})
    if w is not None:
        rep["dilatation"] = spectral_radius_float(word_matrix(w))
    bounds = [r["bound"] for r in rep["rules"] if r.get("bound") is not None]
    rep["best_bound"] = max(bounds) if bounds else None
    return rep

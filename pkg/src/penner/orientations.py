"""Twist words, acyclic orientations and flow difference on cycles and enriched cycles.

Clockwise on a cycle means ``i -> (i + 1) mod l``. Only the absolute value of the
flow difference affects spectra, so this choice of direction is a convention.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import product

from .errors import InvalidInput, InvalidParameter, PreconditionViolation, ResourceLimit
from .graphs import IntersectionGraph, cycle_graph, enriched_cycle_graph

MAX_ENUMERATION_LENGTH = 20


@dataclass(frozen=True)
class TwistWord:
    """Each curve twisted exactly once; ``order[k]`` is the k-th curve twisted."""

    graph: IntersectionGraph
    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(v) for v in self.order)
        if sorted(order) != list(range(self.graph.n)):
            raise InvalidInput(f"order {order} is not a permutation of 0..{self.graph.n - 1}")
        object.__setattr__(self, "order", order)

    def position(self) -> dict[int, int]:
        return {v: k for k, v in enumerate(self.order)}


@dataclass(frozen=True)
class AcyclicOrientation:
    """One arc ``(tail, head)`` per undirected edge, listed in edge order."""

    graph: IntersectionGraph
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arcs = tuple((int(a), int(b)) for a, b in self.arcs)
        expected = [(i, j) for i, j, _ in self.graph.edges()]
        if sorted(tuple(sorted(a)) for a in arcs) != expected:
            raise InvalidInput("arcs must orient every edge of the graph exactly once")
        object.__setattr__(self, "arcs", tuple(sorted(arcs, key=lambda a: tuple(sorted(a)))))
        if self.topological_order() is None:
            raise InvalidInput("orientation contains a directed cycle")

    def out_neighbors(self, v: int) -> list[int]:
        return [b for a, b in self.arcs if a == v]

    def in_neighbors(self, v: int) -> list[int]:
        return [a for a, b in self.arcs if b == v]

    def sources(self) -> list[int]:
        heads = {b for _, b in self.arcs}
        return [v for v in range(self.graph.n) if v not in heads]

    def sinks(self) -> list[int]:
        tails = {a for a, _ in self.arcs}
        return [v for v in range(self.graph.n) if v not in tails]

    def topological_order(self):
        """Lexicographically least topological order, or ``None`` if cyclic."""
        n = self.graph.n
        indeg = [0] * n
        succ: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.arcs:
            succ[a].append(b)
            indeg[b] += 1
        heap = [v for v in range(n) if indeg[v] == 0]
        heapq.heapify(heap)
        out = []
        while heap:
            v = heapq.heappop(heap)
            out.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
        return out if len(out) == n else None

    def to_word(self) -> TwistWord:
        return TwistWord(self.graph, tuple(self.topological_order()))


def orientation_from_word(w: TwistWord) -> AcyclicOrientation:
    """Direct each edge from the curve twisted earlier to the one twisted later."""
    pos = w.position()
    arcs = tuple((i, j) if pos[i] < pos[j] else (j, i) for i, j, _ in w.graph.edges())
    return AcyclicOrientation(w.graph, arcs)


def cycle_family(g: IntersectionGraph) -> tuple[int, bool]:
    """Return ``(l, enriched)`` if ``g`` is ``cycle_graph(l)`` or ``enriched_cycle_graph(l)``."""
    for l, enriched in ((g.n, False), (g.n - 1, True)):
        if l < 3:
            continue
        ref = enriched_cycle_graph(l) if enriched else cycle_graph(l)
        if ref == g:
            return l, enriched
    raise InvalidInput("graph is neither a cycle nor an enriched cycle in standard labelling")


def flow_difference(o: AcyclicOrientation) -> int:
    """Clockwise minus anticlockwise arcs on the cycle edges (the pendant edge is ignored)."""
    l, _ = cycle_family(o.graph)
    d = 0
    for a, b in o.arcs:
        if a < l and b < l:
            d += 1 if b == (a + 1) % l else -1
    return d


def source_to_sink(o: AcyclicOrientation, v: int) -> AcyclicOrientation:
    if v not in o.sources():
        raise PreconditionViolation(f"vertex {v} is not a source")
    arcs = tuple((b, a) if a == v else (a, b) for a, b in o.arcs)
    return AcyclicOrientation(o.graph, arcs)


def _check_flow(l: int, d: int) -> None:
    if l < 3:
        raise InvalidParameter(f"cycle length must be >= 3, got {l}")
    if abs(d) > l - 2:
        raise InvalidParameter(f"|d| = {abs(d)} exceeds l - 2 = {l - 2}")
    if (d - l) % 2:
        raise InvalidParameter(f"flow difference {d} must have the parity of l = {l}")


def _cycle_arcs(l: int, clockwise: list[bool]) -> list[tuple[int, int]]:
    return [(i, (i + 1) % l) if cw else ((i + 1) % l, i) for i, cw in enumerate(clockwise)]


def canonical_word(l: int, d: int, enriched: bool = False) -> TwistWord:
    """Fixed representative of flow difference ``d``: edges ``{i, i+1}`` clockwise for ``i < p``.

    ``p = (l + d) / 2``. The pendant of an enriched cycle is twisted last.
    """
    _check_flow(l, d)
    p = (l + d) // 2
    arcs = _cycle_arcs(l, [i < p for i in range(l)])
    if enriched:
        arcs.append((0, l))
    g = enriched_cycle_graph(l) if enriched else cycle_graph(l)
    return AcyclicOrientation(g, tuple(arcs)).to_word()


def alternating_word(l: int, enriched: bool = False) -> TwistWord:
    """Representative of minimal ``|d|`` whose arcs alternate around the cycle.

    For odd ``l`` the arcs ``l-1 -> 0 -> 1`` form the single non-alternating spot
    and ``d = +1``; for even ``l`` the orientation alternates fully and ``d = 0``.
    """
    if l < 3:
        raise InvalidParameter(f"cycle length must be >= 3, got {l}")
    arcs = _cycle_arcs(l, [i % 2 == 0 for i in range(l)])
    if enriched:
        arcs.append((0, l))
    g = enriched_cycle_graph(l) if enriched else cycle_graph(l)
    return AcyclicOrientation(g, tuple(arcs)).to_word()


def enumerate_orientations(l: int) -> list[AcyclicOrientation]:
    """All ``2**l - 2`` acyclic orientations of ``C_l``."""
    if l > MAX_ENUMERATION_LENGTH:
        raise ResourceLimit(f"enumeration limited to l <= {MAX_ENUMERATION_LENGTH}")
    g = cycle_graph(l)
    out = []
    for bits in product((True, False), repeat=l):
        if all(bits) or not any(bits):
            continue
        out.append(AcyclicOrientation(g, tuple(_cycle_arcs(l, list(bits)))))
    return out


def twist_and_click_params(l: int, c: int) -> tuple[int, int]:
    """``(a, d)``: ``a`` is the least positive inverse of ``c`` mod ``l`` and ``d = l - 2a``."""
    if not 1 <= c < l or math.gcd(c, l) != 1:
        raise InvalidParameter(f"c = {c} must be a unit modulo l = {l} with 1 <= c < l")
    a = pow(c, -1, l)
    return a, l - 2 * a

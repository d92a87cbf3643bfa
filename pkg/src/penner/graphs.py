"""Intersection graphs of curve systems and the graph predicates used to bound dilatations."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .errors import InvalidInput, InvalidParameter, ResourceLimit


@dataclass(frozen=True)
class IntersectionGraph:
    """Vertices ``0..n-1`` with a symmetric matrix of intersection multiplicities.

    ``omega[i][j]`` is the geometric intersection number of curves ``i`` and ``j``.
    """

    n: int
    omega: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput("graph needs at least one vertex")
        om = tuple(tuple(int(v) for v in row) for row in self.omega)
        if len(om) != self.n or any(len(row) != self.n for row in om):
            raise InvalidInput(f"omega must be {self.n}x{self.n}")
        for i in range(self.n):
            if om[i][i] != 0:
                raise InvalidInput(f"nonzero diagonal entry at vertex {i}")
            for j in range(i + 1, self.n):
                if om[i][j] != om[j][i]:
                    raise InvalidInput(f"omega not symmetric at ({i}, {j})")
                if om[i][j] < 0:
                    raise InvalidInput(f"negative multiplicity at ({i}, {j})")
        object.__setattr__(self, "omega", om)

    @classmethod
    def from_edges(cls, n: int, edges) -> "IntersectionGraph":
        """Build from ``(i, j, multiplicity)`` triples; ``(i, j)`` pairs mean multiplicity 1."""
        om = [[0] * n for _ in range(n)]
        for e in edges:
            i, j = int(e[0]), int(e[1])
            m = int(e[2]) if len(e) > 2 else 1
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidInput(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise InvalidInput(f"loop at vertex {i}")
            om[i][j] += m
            om[j][i] += m
        return cls(n, tuple(tuple(r) for r in om))

    def edges(self) -> list[tuple[int, int, int]]:
        """Undirected edges ``(i, j, multiplicity)`` with ``i < j``, sorted."""
        return [
            (i, j, self.omega[i][j])
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.omega[i][j] > 0
        ]

    @cached_property
    def adjacency_lists(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(neighbour, multiplicity)`` pairs."""
        return tuple(tuple((j, m) for j, m in enumerate(row) if m > 0) for row in self.omega)

    def neighbors(self, v: int) -> list[int]:
        return [j for j, _ in self.adjacency_lists[v]]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def is_connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def adjacency(self) -> np.ndarray:
        return np.array(self.omega, dtype=float)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges()]})

    @classmethod
    def from_json(cls, text: str) -> "IntersectionGraph":
        data = json.loads(text)
        return cls.from_edges(int(data["n"]), data["edges"])


def cycle_graph(l: int) -> IntersectionGraph:
    """The cycle ``C_l``: vertex ``i`` meets ``(i + 1) mod l`` once."""
    if l < 3:
        raise InvalidParameter(f"cycle length must be >= 3, got {l}")
    return IntersectionGraph.from_edges(l, [(i, (i + 1) % l) for i in range(l)])


def enriched_cycle_graph(l: int) -> IntersectionGraph:
    """The enriched cycle ``P_l``: ``C_l`` plus a pendant vertex ``l`` attached to vertex 0."""
    if l < 3:
        raise InvalidParameter(f"cycle length must be >= 3, got {l}")
    edges = [(i, (i + 1) % l) for i in range(l)] + [(l, 0)]
    return IntersectionGraph.from_edges(l + 1, edges)


def path_graph(n: int, multiplicity: int = 1) -> IntersectionGraph:
    return IntersectionGraph.from_edges(n, [(i, i + 1, multiplicity) for i in range(n - 1)])


def _two_coloring(g: IntersectionGraph) -> Optional[list[int]]:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def is_bipartite(g: IntersectionGraph) -> bool:
    return _two_coloring(g) is not None


def _is_induced_simple_cycle(g: IntersectionGraph, cyc: list[int]) -> bool:
    k = len(cyc)
    pos = {v: idx for idx, v in enumerate(cyc)}
    for a in cyc:
        for b in cyc:
            if a >= b:
                continue
            adjacent = (pos[a] - pos[b]) % k in (1, k - 1)
            if g.omega[a][b] != (1 if adjacent else 0):
                return False
    return True


def _bfs_shortest_odd_cycle(g: IntersectionGraph) -> Optional[list[int]]:
    best: Optional[list[int]] = None
    for root in range(g.n):
        level = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in level:
                    level[w] = level[v] + 1
                    parent[w] = v
                    queue.append(w)
        for u, v, _ in g.edges():
            if u in level and v in level and level[u] == level[v]:
                pu, pv = [u], [v]
                while pu[-1] != pv[-1]:
                    pu.append(parent[pu[-1]])
                    pv.append(parent[pv[-1]])
                cyc = pu + pv[-2::-1]
                if best is None or len(cyc) < len(best):
                    best = cyc
    return best


def _exhaustive_induced_odd_cycle(g: IntersectionGraph) -> Optional[int]:
    # Extends induced paths with simple edges; only reached when multi-edges spoil the BFS cycle.
    if g.n > 20:
        raise ResourceLimit("exhaustive induced-cycle search limited to 20 vertices")
    best = None

    def extend(path, on_path):
        nonlocal best
        head, start = path[-1], path[0]
        for w in g.neighbors(head):
            if g.omega[head][w] != 1:
                continue
            if w == start and len(path) >= 3:
                if len(path) % 2 == 1 and _is_induced_simple_cycle(g, path):
                    if best is None or len(path) < best:
                        best = len(path)
                continue
            if w in on_path or w < start:
                continue
            if best is not None and len(path) + 1 >= best:
                continue
            # keep the path induced apart from the closing edge
            if any(g.omega[w][p] for p in path[1:-1]):
                continue
            on_path.add(w)
            path.append(w)
            extend(path, on_path)
            path.pop()
            on_path.discard(w)

    for s in range(g.n):
        extend([s], {s})
    return best


def shortest_induced_odd_cycle(g: IntersectionGraph) -> Optional[int]:
    """Length of a shortest induced odd cycle, or ``None`` for bipartite graphs.

    A shortest odd cycle of the underlying simple graph has no chords, so it is
    induced unless one of its pairs is joined by a multi-edge. That case falls
    back to an exhaustive search over induced paths.
    """
    cyc = _bfs_shortest_odd_cycle(g)
    if cyc is None:
        return None
    if _is_induced_simple_cycle(g, cyc):
        return len(cyc)
    return _exhaustive_induced_odd_cycle(g)


def genus_lower_bound(g: IntersectionGraph) -> Optional[int]:
    """Lower bound ``l + 1`` on the genus of a surface filled by curves with this graph."""
    k = shortest_induced_odd_cycle(g)
    return None if k is None else k + 1


def adjacency_spectral_radius(g: IntersectionGraph, eps: float = 1e-12) -> float:
    """Largest adjacency eigenvalue of a connected graph, by power iteration.

    Iterates on ``A + I`` so that bipartite graphs (whose spectrum is symmetric)
    still converge; the Collatz-Wielandt bracket certifies the error.
    """
    if not g.is_connected():
        raise InvalidInput("adjacency_spectral_radius needs a connected graph")
    a = g.adjacency() + np.eye(g.n)
    x = np.ones(g.n)
    for _ in range(200000):
        y = a @ x
        ratios = y / x
        lo, hi = ratios.min(), ratios.max()
        if hi - lo <= 2 * eps:
            return float((lo + hi) / 2 - 1.0)
        x = y / y.max()
    return float((lo + hi) / 2 - 1.0)


def tree_lower_bound(alpha: float) -> float:
    """Larger root of ``lam + 1/lam - 2 = alpha**2``, a lower bound for any word containing the tree."""
    if alpha < 0:
        raise InvalidParameter("alpha must be nonnegative")
    a2 = alpha * alpha
    return (2.0 + a2 + math.sqrt(4.0 * a2 + a2 * a2)) / 2.0

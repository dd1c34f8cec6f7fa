"""The inclusion DAG: lifting, transitive reduction, degree statistics,
power-law exponent estimation.

Edges point from subcharacter to containing character.  Detecting
inclusions from signatures over-generates shortcut edges (every chain
a -> b -> c also yields a -> c), so the graph is detriangulated by
transitive reduction: an edge is dropped exactly when a longer path
between its endpoints exists, leaving reachability untouched.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import zeta

from .charstore import AllographClass
from .errors import DataError, InputError


@dataclass
class EdgeData:
    """Attributes attached to one inclusion edge.

    ``d_min``/``phi`` are per-language maps; a missing key means the
    distance (and hence the phoneticity) is unknown for that language.
    ``s`` is the globally normalized semanticity, ``None`` until computed.
    """

    d_min: dict[str, float] = field(default_factory=dict)
    phi: dict[str, float] = field(default_factory=dict)
    f1: int = 0
    f2: int = 0
    r: float = 0.0
    s_raw: float | None = None
    s: float | None = None

    def copy(self) -> "EdgeData":
        return EdgeData(dict(self.d_min), dict(self.phi),
                        self.f1, self.f2, self.r, self.s_raw, self.s)


class InclusionGraph:
    """Directed graph over integer node ids with attributed edges.

    Used both for the raw character-level inclusion graph (node ids are
    codepoints) and for the lifted class-level graph (node ids are
    allographic class ids).
    """

    def __init__(self) -> None:
        self._nodes: set[int] = set()
        self._succ: dict[int, set[int]] = {}
        self._pred: dict[int, set[int]] = {}
        self._edges: dict[tuple[int, int], EdgeData] = {}
        self.meta: dict[str, str] = {}

    # -- construction ------------------------------------------------------

    def add_node(self, node: int) -> None:
        if node not in self._nodes:
            self._nodes.add(node)
            self._succ[node] = set()
            self._pred[node] = set()

    def add_edge(self, sub: int, sup: int, data: EdgeData | None = None) -> None:
        if sub == sup:
            raise InputError(f"self-loop on node {sub} is not an inclusion")
        self.add_node(sub)
        self.add_node(sup)
        key = (sub, sup)
        if key not in self._edges:
            self._edges[key] = data if data is not None else EdgeData()
            self._succ[sub].add(sup)
            self._pred[sup].add(sub)

    # -- queries -----------------------------------------------------------

    @property
    def nodes(self) -> set[int]:
        return set(self._nodes)

    def __contains__(self, node: int) -> bool:
        return node in self._nodes

    def node_count(self) -> int:
        return len(self._nodes)

    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self._edges)

    def edge(self, sub: int, sup: int) -> EdgeData:
        try:
            return self._edges[(sub, sup)]
        except KeyError:
            raise DataError(f"no edge {sub} -> {sup}") from None

    def has_edge(self, sub: int, sup: int) -> bool:
        return (sub, sup) in self._edges

    def successors(self, node: int) -> set[int]:
        return set(self._succ[node])

    def predecessors(self, node: int) -> set[int]:
        return set(self._pred[node])

    def copy(self) -> "InclusionGraph":
        g = InclusionGraph()
        for n in self._nodes:
            g.add_node(n)
        for (a, b), data in self._edges.items():
            g.add_edge(a, b, data.copy())
        g.meta = dict(self.meta)
        return g

    def topological_order(self) -> list[int]:
        """Kahn topological order; raises DataError naming a cycle witness."""
        indeg = {n: len(self._pred[n]) for n in self._nodes}
        ready = sorted(n for n, d in indeg.items() if d == 0)
        order: list[int] = []
        while ready:
            n = ready.pop()
            order.append(n)
            for m in sorted(self._succ[n]):
                indeg[m] -= 1
                if indeg[m] == 0:
                    ready.append(m)
        if len(order) != len(self._nodes):
            witness = self._find_cycle({n for n, d in indeg.items() if d > 0})
            raise DataError("graph has a cycle: " +
                            " -> ".join(str(n) for n in witness))
        return order

    def _find_cycle(self, candidates: set[int]) -> list[int]:
        start = min(candidates)
        seen: dict[int, int] = {}
        path = [start]
        seen[start] = 0
        node = start
        while True:
            node = min(s for s in self._succ[node] if s in candidates)
            if node in seen:
                return path[seen[node]:] + [node]
            seen[node] = len(path)
            path.append(node)


def from_edges(edges: Iterable[tuple[int, int]],
               nodes: Iterable[int] = ()) -> InclusionGraph:
    g = InclusionGraph()
    for n in nodes:
        g.add_node(n)
    for a, b in edges:
        g.add_edge(a, b)
    return g


def lift_to_classes(
    char_edges: Iterable[tuple[int, int]],
    classes: Sequence[AllographClass] | Mapping[int, int],
) -> InclusionGraph:
    """Lift character-level inclusion edges to allographic classes.

    A class edge c1 -> c2 exists iff some member pair carries a character
    edge.  Edges between members of one class are allographic identities
    and are dropped.  All class ids become nodes, including isolated ones.
    """
    if isinstance(classes, Mapping):
        class_of = dict(classes)
        ids: set[int] = set(class_of.values())
    else:
        class_of = {}
        ids = set()
        for cls in classes:
            ids.add(cls.id)
            for cp in cls.members:
                class_of[cp] = cls.id
    g = InclusionGraph()
    for cid in ids:
        g.add_node(cid)
    for a, b in char_edges:
        if a not in class_of or b not in class_of:
            missing = a if a not in class_of else b
            raise InputError(f"codepoint U+{missing:04X} has no allographic class")
        ca, cb = class_of[a], class_of[b]
        if ca != cb:
            g.add_edge(ca, cb)
    return g


def transitive_reduce(g: InclusionGraph) -> InclusionGraph:
    """Unique transitive reduction of a DAG.

    Removes every edge (a, c) for which a path a -> ... -> c of length
    at least 2 exists; reachability is preserved exactly.  Kept edges
    retain their attributes.  Raises DataError on a cyclic input.
    """
    order = g.topological_order()
    # descendants computed in reverse topological order
    desc: dict[int, set[int]] = {}
    for node in reversed(order):
        d: set[int] = set()
        for s in g.successors(node):
            d.add(s)
            d |= desc[s]
        desc[node] = d

    reduced = InclusionGraph()
    for n in g.nodes:
        reduced.add_node(n)
    for a, c in g.edges():
        redundant = any(c in desc[b] for b in g.successors(a) if b != c)
        if not redundant:
            reduced.add_edge(a, c, g.edge(a, c).copy())
    reduced.meta = dict(g.meta)
    return reduced


@dataclass(frozen=True)
class DegreeStatistics:
    in_hist: dict[int, int]
    out_hist: dict[int, int]
    sources: set[int]
    leaves: set[int]
    max_in: int
    max_out: int


def degree_statistics(g: InclusionGraph) -> DegreeStatistics:
    """Exact in/out degree histograms; sources have in-degree 0, leaves
    out-degree 0."""
    in_deg = {n: len(g.predecessors(n)) for n in g.nodes}
    out_deg = {n: len(g.successors(n)) for n in g.nodes}
    return DegreeStatistics(
        in_hist=dict(Counter(in_deg.values())),
        out_hist=dict(Counter(out_deg.values())),
        sources={n for n, d in in_deg.items() if d == 0},
        leaves={n for n, d in out_deg.items() if d == 0},
        max_in=max(in_deg.values(), default=0),
        max_out=max(out_deg.values(), default=0),
    )


def fit_power_law(degrees: Iterable[int]) -> float:
    """Discrete (zeta-family) maximum-likelihood power-law exponent,
    x_min = 1.

    Zero degrees are excluded; at least 10 positive samples are required.
    Solves the score equation zeta'(a)/zeta(a) = -mean(log x) by
    bisection.  A degenerate sample with no spread (all degrees equal)
    carries no slope information and returns ``math.inf``.
    """
    xs = np.asarray([d for d in degrees if d > 0], dtype=float)
    if xs.size < 10:
        raise InputError(f"need at least 10 positive samples, got {xs.size}")
    if xs.min() == xs.max():
        return math.inf

    mean_log = float(np.mean(np.log(xs)))
    h = 1e-6

    def score(a: float) -> float:
        # increasing in a: d/da log zeta(a) rises from -inf toward 0
        return (math.log(zeta(a + h, 1)) - math.log(zeta(a - h, 1))) / (2 * h) + mean_log

    lo, hi = 1.0001, 60.0
    if score(lo) >= 0:  # extremely heavy tail, exponent at the lower boundary
        return lo
    if score(hi) <= 0:  # indistinguishable from a point mass at x_min
        return math.inf
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if score(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-10:
            break
    return 0.5 * (lo + hi)

"""Semantic approximation for characters without known meaning.

Starting at an unannotated class, walk the inclusion graph toward its
subcharacters.  Each path stops at the first node carrying a synset
annotation; that node contributes its synsets with a weight equal to the
product of edge semanticities along the path, discounted by the path
length.  Summed per synset and normalized, this gives a distribution
over synset ids that stands in for the unknown character's meaning.
"""

from __future__ import annotations

from typing import Mapping

from .errors import DataError, InputError
from .graphcore import InclusionGraph

SynsetVector = dict[str, float]


def _normalize(weights: SynsetVector) -> SynsetVector:
    total = sum(weights.values())
    if total <= 0:
        return {}
    return {sid: w / total for sid, w in weights.items()}


def semantic_approximation(
    g: InclusionGraph,
    annotations: Mapping[int, set[str]],
    node: int,
    max_depth: int = 4,
    direction: str = "sub",
) -> SynsetVector:
    """Distribution over synset ids approximating ``node``'s meaning.

    Paths of length <= ``max_depth`` are enumerated from ``node`` along
    incoming edges (``direction="sub"``, toward subcharacters) or outgoing
    edges (``direction="super"``).  A path contributes at its first
    annotated node: every synset of that node gains
    (product of edge S along the path) / (path length).  The result sums
    to 1, or is empty when no annotated node is reachable.  An annotated
    start node returns its own synsets, uniformly weighted.
    """
    if node not in g:
        raise DataError(f"node {node} not in graph")
    if direction not in ("sub", "super"):
        raise InputError(f"direction must be 'sub' or 'super', got {direction!r}")
    if max_depth < 1:
        raise InputError("max_depth must be >= 1")

    own = annotations.get(node)
    if own:
        return _normalize({sid: 1.0 for sid in own})

    neighbors = g.predecessors if direction == "sub" else g.successors

    def edge_s(frm: int, to: int) -> float:
        data = g.edge(to, frm) if direction == "sub" else g.edge(frm, to)
        if data.s is None:
            raise DataError(f"edge between {frm} and {to} has no semanticity; "
                            f"annotate the graph first")
        return data.s

    weights: SynsetVector = {}

    def walk(current: int, depth: int, product: float,
             on_path: frozenset[int]) -> None:
        for nxt in sorted(neighbors(current)):
            if nxt in on_path:
                continue
            p = product * edge_s(current, nxt)
            synsets = annotations.get(nxt)
            if synsets:
                contribution = p / depth
                for sid in synsets:
                    weights[sid] = weights.get(sid, 0.0) + contribution
                continue  # first annotated node ends the path
            if depth < max_depth:
                walk(nxt, depth + 1, p, on_path | {nxt})

    walk(node, 1, 1.0, frozenset({node}))
    return _normalize(weights)

import math
import random

import numpy as np
import pytest
from scipy.stats import zipf

from sinograph.charstore import build_allograph_classes
from sinograph.errors import DataError, InputError
from sinograph.graphcore import (
    InclusionGraph,
    degree_statistics,
    fit_power_law,
    from_edges,
    lift_to_classes,
    transitive_reduce,
)


def random_dag(rng, max_nodes=50, density=(0.1, 0.5)):
    n = rng.randrange(5, max_nodes + 1)
    p = rng.uniform(*density)
    g = from_edges([], nodes=range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                g.add_edge(i, j)
    return g


def reachable_from(g, src):
    """Plain DFS reachability, independent of the reduction code."""
    seen = set()
    stack = [src]
    while stack:
        node = stack.pop()
        for nxt in g.successors(node):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def brute_force_reduction(g):
    """Drop an edge iff the endpoints stay connected without it."""
    kept = set()
    for a, c in g.edges():
        h = InclusionGraph()
        for n in g.nodes:
            h.add_node(n)
        for e in g.edges():
            if e != (a, c):
                h.add_edge(*e)
        if c not in reachable_from(h, a):
            kept.add((a, c))
    return kept


def test_triangle_reduced():
    g = from_edges([(1, 2), (2, 3), (1, 3)])
    assert transitive_reduce(g).edges() == [(1, 2), (2, 3)]


def test_chain_unchanged():
    g = from_edges([(1, 2), (2, 3)])
    assert transitive_reduce(g).edges() == [(1, 2), (2, 3)]


def test_reduction_matches_brute_force_and_preserves_reachability():
    rng = random.Random(2024)
    for _ in range(200):
        g = random_dag(rng)
        reduced = transitive_reduce(g)
        assert set(reduced.edges()) == brute_force_reduction(g)
        for node in g.nodes:
            assert reachable_from(g, node) == reachable_from(reduced, node)


def test_reduction_idempotent():
    rng = random.Random(5)
    for _ in range(20):
        g = random_dag(rng, max_nodes=25)
        once = transitive_reduce(g)
        twice = transitive_reduce(once)
        assert once.edges() == twice.edges()


def test_cycle_reported_with_witness():
    g = from_edges([(1, 2), (2, 3), (3, 1)])
    with pytest.raises(DataError, match="cycle"):
        transitive_reduce(g)


def test_reduction_keeps_edge_attributes():
    g = from_edges([(1, 2), (2, 3), (1, 3)])
    g.edge(1, 2).f1 = 5
    reduced = transitive_reduce(g)
    assert reduced.edge(1, 2).f1 == 5


def test_self_loop_rejected():
    g = InclusionGraph()
    with pytest.raises(InputError):
        g.add_edge(4, 4)


def test_lift_singletons_isomorphic():
    classes = build_allograph_classes(set(), {10, 11, 12})
    cid = {cp: next(c.id for c in classes if cp in c.members)
           for cp in (10, 11, 12)}
    g = lift_to_classes([(10, 11), (11, 12)], classes)
    assert g.edges() == sorted([(cid[10], cid[11]), (cid[11], cid[12])])


def test_lift_deduplicates_variant_edges():
    classes = build_allograph_classes({(10, 11)}, {10, 11, 20})
    g = lift_to_classes([(10, 20), (11, 20)], classes)
    assert g.edge_count() == 1


def test_lift_drops_intra_class_edges():
    classes = build_allograph_classes({(10, 11)}, {10, 11})
    g = lift_to_classes([(10, 11)], classes)
    assert g.edge_count() == 0
    assert g.node_count() == 1


def test_lift_unknown_codepoint_rejected():
    classes = build_allograph_classes(set(), {10})
    with pytest.raises(InputError):
        lift_to_classes([(10, 99)], classes)


def test_lift_counts_bounded():
    rng = random.Random(3)
    chars = set(range(40))
    pairs = {tuple(rng.sample(sorted(chars), 2)) for _ in range(10)}
    classes = build_allograph_classes(pairs, chars)
    edges = [tuple(rng.sample(sorted(chars), 2)) for _ in range(60)]
    g = lift_to_classes(edges, classes)
    assert g.node_count() <= len(chars)
    assert g.edge_count() <= len(edges)


def test_degree_statistics_cases():
    g = from_edges([(1, 2)])
    s = degree_statistics(g)
    assert s.sources == {1} and s.leaves == {2}
    assert s.max_in == 1 and s.max_out == 1

    empty = from_edges([], nodes=[1, 2, 3])
    s = degree_statistics(empty)
    assert s.sources == {1, 2, 3} and s.leaves == {1, 2, 3}
    assert s.max_in == 0 and s.max_out == 0

    star = from_edges([(0, i) for i in range(1, 6)])
    s = degree_statistics(star)
    assert s.max_out == 5
    assert s.in_hist == {0: 1, 1: 5}


def test_power_law_recovery_single():
    xs = zipf(2.5).rvs(size=1000, random_state=np.random.default_rng(0))
    assert abs(fit_power_law(xs) - 2.5) <= 0.15


def test_power_law_excludes_zeros_and_needs_samples():
    xs = list(zipf(2.0).rvs(size=50, random_state=np.random.default_rng(1)))
    assert fit_power_law(xs + [0] * 10) == pytest.approx(fit_power_law(xs))
    with pytest.raises(InputError):
        fit_power_law([1, 2, 3])
    with pytest.raises(InputError):
        fit_power_law([0] * 50)


def test_power_law_degenerate_sentinel():
    assert fit_power_law([4] * 25) == math.inf

"""b-factor solver against subset-enumeration oracles.

The oracle enumerates every edge subset of small graphs, so agreement
on existence is checked without trusting the flow reduction.  Returned
witnesses are validated through the deficiency criterion: a vertex set
spanning fewer internal edges than b(X) - b(V)/2 rules the factor out.
"""

import itertools
import random

import pytest

from fairsplit.matching import (
    BipartiteGraph,
    find_b_factor,
    verify_b_factor,
    witness_slack,
)


def b_factor_exists_oracle(graph, b_left, b_right) -> bool:
    edges = graph.edges
    for bits in itertools.product((0, 1), repeat=len(edges)):
        chosen = [e for e, bit in zip(edges, bits) if bit]
        if all(
            sum(1 for l, _ in chosen if l == v) == b_left.get(v, 0)
            for v in graph.left
        ) and all(
            sum(1 for _, r in chosen if r == v) == b_right.get(v, 0)
            for v in graph.right
        ):
            return True
    return False


def test_single_edge_unit_factor():
    g = BipartiteGraph(left=(1,), right=("k",), edges=(((1, "k")),))
    res = find_b_factor(g, {1: 1}, {"k": 1})
    assert res.ok
    assert res.factor == frozenset({(1, "k")})
    assert verify_b_factor(g, {1: 1}, {"k": 1}, res.factor)


def test_isolated_demand_yields_witness():
    g = BipartiteGraph(left=(1,), right=("k",), edges=())
    res = find_b_factor(g, {1: 0}, {"k": 1})
    assert res.factor is None
    assert res.witness_right == frozenset({"k"})
    assert witness_slack(g, {1: 0}, {"k": 1}, res.witness_left, res.witness_right) > 0


def test_degree_choice_graph_forced_factor():
    # thieves 1,2,3 with demands (0,1,1); thief 3 reaches only bead 3,
    # which forces thief 2 onto bead 2
    g = BipartiteGraph(
        left=(1, 2, 3),
        right=(2, 3),
        edges=((1, 2), (2, 2), (2, 3), (3, 3)),
    )
    res = find_b_factor(g, {1: 0, 2: 1, 3: 1}, {2: 1, 3: 1})
    assert res.factor == frozenset({(2, 2), (3, 3)})


def test_doubled_demand_takes_both_beads():
    g = BipartiteGraph(
        left=(1, 2, 3),
        right=(2, 3),
        edges=((1, 2), (2, 2), (2, 3), (3, 3)),
    )
    res = find_b_factor(g, {1: 0, 2: 2, 3: 0}, {2: 1, 3: 1})
    assert res.factor == frozenset({(2, 2), (2, 3)})


def test_unequal_totals_witnessed_without_search():
    g = BipartiteGraph(left=(1,), right=(1, 2), edges=((1, 1), (1, 2)))
    res = find_b_factor(g, {1: 1}, {1: 1, 2: 1})
    assert res.factor is None
    assert res.witness_right == frozenset({1, 2})
    assert witness_slack(g, {1: 1}, {1: 1, 2: 1}, res.witness_left, res.witness_right) > 0


def test_balanced_but_infeasible_contention():
    # both left vertices need the same right vertex
    g = BipartiteGraph(left=(1, 2), right=(1, 2), edges=((1, 1), (2, 1)))
    b = {1: 1, 2: 1}
    res = find_b_factor(g, b, b)
    assert res.factor is None
    assert witness_slack(g, b, b, res.witness_left, res.witness_right) > 0
    assert not b_factor_exists_oracle(g, b, b)


def test_empty_graph_zero_demand():
    g = BipartiteGraph(left=(), right=(), edges=())
    res = find_b_factor(g, {}, {})
    assert res.ok and res.factor == frozenset()


def test_zero_demand_vertices_ignored():
    g = BipartiteGraph(left=(1, 2), right=("a",), edges=((1, "a"), (2, "a")))
    res = find_b_factor(g, {1: 0, 2: 1}, {"a": 1})
    assert res.factor == frozenset({(2, "a")})


def test_edges_stored_sorted_for_determinism():
    g = BipartiteGraph(left=(2, 1), right=(9, 8), edges=((2, 9), (1, 8), (2, 8)))
    assert g.edges == ((1, 8), (2, 8), (2, 9))


def test_constructor_rejects_bad_graphs():
    with pytest.raises(ValueError):
        BipartiteGraph(left=(1, 1), right=(2,), edges=())
    with pytest.raises(ValueError):
        BipartiteGraph(left=(1,), right=(2,), edges=((1, 3),))


def test_negative_demand_rejected():
    g = BipartiteGraph(left=(1,), right=(2,), edges=((1, 2),))
    with pytest.raises(ValueError):
        find_b_factor(g, {1: -1}, {2: -1})


def test_verify_b_factor_rejects_foreign_edges():
    g = BipartiteGraph(left=(1,), right=(2,), edges=((1, 2),))
    assert not verify_b_factor(g, {1: 1}, {2: 1}, [(1, 3)])


def test_random_small_graphs_match_subset_oracle():
    rng = random.Random(99)
    for trial in range(60):
        nl, nr = rng.randint(1, 4), rng.randint(1, 4)
        left = tuple(range(1, nl + 1))
        right = tuple(f"k{i}" for i in range(1, nr + 1))
        edges = tuple(
            (l, r) for l in left for r in right if rng.random() < 0.55
        )
        if len(edges) > 10:
            edges = edges[:10]
        g = BipartiteGraph(left=left, right=right, edges=edges)
        bl = {v: rng.randint(0, 2) for v in left}
        br = {v: rng.randint(0, 2) for v in right}
        res = find_b_factor(g, bl, br)
        assert res.ok == b_factor_exists_oracle(g, bl, br), (edges, bl, br)
        if res.ok:
            assert verify_b_factor(g, bl, br, res.factor)
        else:
            assert witness_slack(g, bl, br, res.witness_left, res.witness_right) > 0

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cyclepair.digraph import is_acyclic_without, parse_digraph
from cyclepair.instances import c5sq, digon, disjoint_union, k3d, random_multidigraph
from cyclepair.transversal import AT_LEAST_3, compute_tau_capped, is_transversal


def brute_tau_class(d):
    if is_acyclic_without(d, ()):
        return 0
    for v in d.verts:
        if is_acyclic_without(d, (v,)):
            return 1
    for u, v in combinations(d.verts, 2):
        if is_acyclic_without(d, (u, v)):
            return 2
    return AT_LEAST_3


def test_is_transversal_digon():
    assert is_transversal(digon(), {"1"})


def test_is_transversal_k3d_singleton_fails():
    assert not is_transversal(k3d(), {"1"})


def test_is_transversal_c5sq_consecutive_pair():
    # removing 0 and 1 leaves arcs 2->3, 3->4, 2->4: acyclic
    assert is_transversal(c5sq(), {"0", "1"})


def test_is_transversal_unknown_vertex_errors():
    with pytest.raises(ValueError):
        is_transversal(digon(), {"9"})


def test_tau_path_is_zero():
    d = parse_digraph("v 1\nv 2\nv 3\na 1 2\na 2 3")
    assert compute_tau_capped(d).tau == 0


def test_tau_digon():
    info = compute_tau_capped(digon())
    assert info.tau == 1
    assert info.one_transversals == ("1", "2")


def test_tau_k3d_is_two():
    info = compute_tau_capped(k3d())
    assert info.tau == 2
    assert is_transversal(k3d(), info.two_transversal)


def test_tau_three_disjoint_digons():
    d = disjoint_union(digon(), digon(), digon())
    assert compute_tau_capped(d).tau == AT_LEAST_3


def test_tau_loop_vertex_forced():
    d = parse_digraph("v 1\nv 2\nv 3\na 1 1\na 2 3\na 3 2")
    info = compute_tau_capped(d)
    assert info.tau == 2 and "1" in info.two_transversal


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_tau_matches_subset_bruteforce(seed):
    d = random_multidigraph(random.Random(seed), max_vertices=10, max_arcs=20)
    info = compute_tau_capped(d)
    assert info.tau == brute_tau_class(d)
    if info.tau == 1:
        expected = tuple(v for v in d.verts if is_acyclic_without(d, (v,)))
        assert info.one_transversals == expected
    if info.tau == 2:
        assert is_transversal(d, info.two_transversal)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_tau_monotone_under_arc_insertion(seed):
    rng = random.Random(seed)
    d = random_multidigraph(rng, max_vertices=8, max_arcs=14)
    rank = {0: 0, 1: 1, 2: 2, AT_LEAST_3: 3}
    before = rank[compute_tau_capped(d).tau]
    t = rng.choice(d.verts)
    h = rng.choice(d.verts)
    from cyclepair.digraph import Digraph

    bigger = Digraph(d.verts, list(d.arcs) + [(t, h)])
    assert rank[compute_tau_capped(bigger).tau] >= before


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_one_transversals_lie_on_every_chordless_dicycle(seed):
    from cyclepair.oracle import enumerate_chordless_dicycles

    d = random_multidigraph(random.Random(seed), max_vertices=9, max_arcs=18)
    info = compute_tau_capped(d)
    if info.tau != 1:
        return
    cycles, exhausted = enumerate_chordless_dicycles(d, cap=10**5)
    assert exhausted
    for b in cycles:
        verts = {d.tail(a) for a in b.arc_ids}
        for t in info.one_transversals:
            assert t in verts

import random
from itertools import product

from hypothesis import given, settings, strategies as st

from cyclepair.cycles import is_dicycle
from cyclepair.dag_linkage import LinkageQuery, is_intercyclic, two_disjoint_paths_dag
from cyclepair.digraph import parse_digraph
from cyclepair.instances import digon, disjoint_union, k3d, random_dag, random_multidigraph
from cyclepair.oracle import oracle_two_disjoint_dicycles
from cyclepair.transversal import compute_tau_capped

from helpers import brute_two_disjoint_paths

import pytest


def test_two_arcs_on_four_vertices():
    d = parse_digraph("v s1\nv t1\nv s2\nv t2\na s1 t1\na s2 t2")
    res = two_disjoint_paths_dag(LinkageQuery(d, "s1", "t1", "s2", "t2"))
    assert res == (["s1", "t1"], ["s2", "t2"])


def test_shared_middle_vertex_blocks():
    d = parse_digraph(
        "v s1\nv s2\nv x\nv t1\nv t2\n" "a s1 x\na x t1\na s2 x\na x t2"
    )
    assert two_disjoint_paths_dag(LinkageQuery(d, "s1", "t1", "s2", "t2")) is None


def test_trivial_path_occupies_its_vertex():
    d = parse_digraph("v a\nv b\na a b")
    assert two_disjoint_paths_dag(LinkageQuery(d, "a", "a", "b", "b")) == (["a"], ["b"])
    assert two_disjoint_paths_dag(LinkageQuery(d, "a", "a", "a", "b")) is None


def test_cyclic_input_is_an_error():
    with pytest.raises(ValueError):
        two_disjoint_paths_dag(LinkageQuery(digon(), "1", "1", "2", "2"))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_linkage_matches_bruteforce_on_random_dags(seed):
    rng = random.Random(seed)
    d = random_dag(rng, rng.randint(2, 7))
    vs = list(d.verts)
    # a random sample of terminal placements per dag
    for _ in range(12):
        s1, t1, s2, t2 = (rng.choice(vs) for _ in range(4))
        got = two_disjoint_paths_dag(LinkageQuery(d, s1, t1, s2, t2))
        want = brute_two_disjoint_paths(d, s1, t1, s2, t2)
        assert (got is not None) == want
        if got is not None:
            p1, p2 = got
            assert p1[0] == s1 and p1[-1] == t1
            assert p2[0] == s2 and p2[-1] == t2
            assert not (set(p1) & set(p2))
            for p in (p1, p2):
                for x, y in zip(p, p[1:]):
                    assert any(d.head(a) == y for a in d.out_arcs(x))


def test_intercyclic_k3d():
    d = k3d()
    ok, pair = is_intercyclic(d, compute_tau_capped(d))
    assert ok and pair is None


def test_intercyclic_two_digons_false_with_pair():
    d = disjoint_union(digon(), digon())
    ok, pair = is_intercyclic(d, compute_tau_capped(d))
    assert not ok
    b1, b2 = pair
    assert is_dicycle(d, b1) and is_dicycle(d, b2)
    assert not ({d.tail(a) for a in b1.arc_ids} & {d.tail(a) for a in b2.arc_ids})


def test_intercyclic_digon_tau1():
    d = digon()
    ok, _ = is_intercyclic(d, compute_tau_capped(d))
    assert ok


def test_intercyclic_rejects_tau3():
    d = disjoint_union(digon(), digon(), digon())
    with pytest.raises(ValueError):
        is_intercyclic(d, compute_tau_capped(d))


def test_intercyclic_with_loops():
    d = parse_digraph("v 1\nv 2\nv 3\na 1 1\na 2 3\na 3 2")
    ok, pair = is_intercyclic(d, compute_tau_capped(d))
    assert not ok
    b1, b2 = pair
    assert is_dicycle(d, b1) and is_dicycle(d, b2)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_intercyclic_agrees_with_oracle(seed):
    d = random_multidigraph(random.Random(seed), max_vertices=10, max_arcs=20)
    tau = compute_tau_capped(d)
    if tau.tau not in (0, 1, 2):
        return
    ok, pair = is_intercyclic(d, tau)
    want = oracle_two_disjoint_dicycles(d, cap=10**5)
    assert want.verdict in ("yes", "no")
    assert ok == (want.verdict == "no")
    if pair is not None:
        b1, b2 = pair
        assert is_dicycle(d, b1) and is_dicycle(d, b2)
        assert not ({d.tail(a) for a in b1.arc_ids} & {d.tail(a) for a in b2.arc_ids})

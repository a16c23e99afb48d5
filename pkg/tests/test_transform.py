import random

import pytest
from hypothesis import given, settings, strategies as st

from cyclepair.digraph import Digraph, is_strongly_connected, parse_digraph, strong_components
from cyclepair.instances import c5sq, digon, k3d, mw3, random_multidigraph
from cyclepair.transform import (
    Display,
    display_member_split,
    member_as_dipath,
    reduce_contract,
    smooth_1_1,
    subdivide,
)

from helpers import digraphs_isomorphic


def test_smooth_subdivided_digon_collapses_to_loop():
    # 1 -> x -> 2 -> 1: every vertex is a subdivision vertex, so the whole
    # dicycle collapses to a single retained loop
    d = parse_digraph("v 1\nv x\nv 2\na 1 x\na x 2\na 2 1")
    s, mapping = smooth_1_1(d)
    assert s.n == 1 and s.m == 1
    (t, h) = s.arcs[0]
    assert t == h
    assert sorted(mapping[0]) == [0, 1, 2]


def test_smooth_digon_collapses_to_loop():
    s, mapping = smooth_1_1(digon())
    assert s.n == 1 and s.m == 1 and s.tail(0) == s.head(0)
    assert sorted(mapping[0]) == [0, 1]


def test_smooth_k3d_unchanged():
    s, mapping = smooth_1_1(k3d())
    assert s == k3d()
    assert all(mapping[a] == (a,) for a in range(s.m))


def test_smooth_keeps_loops():
    d = parse_digraph("v 1\nv 2\na 1 1\na 1 2\na 2 1")
    s, _ = smooth_1_1(d)
    # vertex 2 is (1,1) and is suppressed; the loop at 1 stays
    assert s.n == 1 and s.m == 2


def test_subdivide_then_smooth_roundtrip():
    d = c5sq()
    host, mapping = subdivide(d, {0: 2, 7: 1})
    s, smap = smooth_1_1(host)
    assert digraphs_isomorphic(s, d)


def test_reduce_contract_k3d_unchanged():
    disp = reduce_contract(k3d())
    assert disp.reduced == k3d()
    assert all(not arcs for _, arcs in disp.members.values())


def test_reduce_contract_mw3_unchanged():
    # every MW3 vertex has in- and out-degree 2: nothing contractible
    disp = reduce_contract(mw3())
    assert disp.reduced.n == 4 and disp.reduced.m == mw3().m


def test_reduce_contract_rejects_subdivision_vertices():
    d = parse_digraph("v 1\nv x\nv 2\na 1 x\na x 2\na 2 1")
    with pytest.raises(ValueError):
        reduce_contract(d)


def test_reduce_contract_out_star_leaves_merge():
    # out-star h -> {a, b}; each leaf has out-degree 2, so the star arcs are
    # the unique in-arcs of the leaves and contract into the root's member
    d = parse_digraph(
        "v h\nv a\nv b\nv u\nv w\n"
        "a h a\na h b\na a u\na a w\na b u\na b w\na u h\na w h"
    )
    disp = reduce_contract(d)
    roots = {v: verts for v, (verts, _) in disp.members.items()}
    member_of_h = next(verts for verts in roots.values() if "h" in verts)
    assert {"a", "b"} <= member_of_h


def test_member_as_dipath():
    d = parse_digraph("v 1\nv 2\nv 3\na 1 2\na 2 3")
    assert member_as_dipath(d, frozenset({"1", "2", "3"}), frozenset({0, 1})) == ["1", "2", "3"]
    assert member_as_dipath(d, frozenset({"1"}), frozenset()) == ["1"]
    assert member_as_dipath(d, frozenset({"1", "3"}), frozenset()) is None


def _strongify(d: Digraph) -> Digraph | None:
    comps = [c for c in strong_components(d) if len(c.vertices) >= 3]
    if not comps:
        return None
    sub, _ = d.restricted_to(max(comps, key=lambda c: len(c.vertices)).vertices)
    return sub


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_display_members_split_into_in_and_out_trees(seed):
    d = _strongify(random_multidigraph(random.Random(seed), max_vertices=9, max_arcs=22))
    if d is None:
        return
    s, _ = smooth_1_1(d)
    if s.n < 2 or not is_strongly_connected(s):
        return
    disp = reduce_contract(s)
    for v in disp.reduced.verts:
        verts, arcs = disp.members[v]
        assert display_member_split(s, verts, arcs) is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_smoothing_preserves_the_verdict(seed):
    from cyclepair.oracle import oracle_solve

    d = random_multidigraph(random.Random(seed), max_vertices=10, max_arcs=20)
    s, _ = smooth_1_1(d)
    assert oracle_solve(d).verdict == oracle_solve(s).verdict


def test_reduce_contract_on_generated_trivault_merges_star_leaves():
    from cyclepair.structures.trivault import STAR, gen_trivault

    host, dec = gen_trivault(
        random.Random(2),
        sizes=((STAR, 3, STAR, 2), (STAR, 2, STAR, 2), (STAR, 2, STAR, 2)),
    )
    s, _ = smooth_1_1(host)
    disp = reduce_contract(s)
    for v in disp.reduced.verts:
        verts, arcs = disp.members[v]
        assert display_member_split(s, verts, arcs) is not None
    # the out-star leaves share a member with their root
    part0 = dec.parts[0]
    member_of = {}
    for name, (verts, _) in disp.members.items():
        for w in verts:
            member_of[w] = name
    assert len({member_of[w] for w in part0.r_verts}) == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_reduce_contract_order_independent_up_to_iso(seed):
    rng = random.Random(seed)
    d = _strongify(random_multidigraph(rng, max_vertices=8, max_arcs=18))
    if d is None:
        return
    s, _ = smooth_1_1(d)
    if s.n < 2 or not is_strongly_connected(s):
        return
    base = reduce_contract(s).reduced
    perm = list(range(s.m))
    rng.shuffle(perm)
    shuffled = Digraph(s.verts, [s.arcs[a] for a in perm])
    other = reduce_contract(shuffled).reduced
    assert digraphs_isomorphic(base, other)

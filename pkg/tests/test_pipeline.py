import random

from hypothesis import given, settings, strategies as st

from cyclepair.cycles import verify_certificate
from cyclepair.digraph import Digraph, parse_digraph, strong_components
from cyclepair.instances import disjoint_union, k3d, random_multidigraph
from cyclepair.oracle import oracle_solve
from cyclepair.pipeline import solve
from cyclepair.structures import (
    recognize_multiwheel,
    recognize_trivault,
    recognize_vault,
    verify_multiwheel,
    verify_trivault,
    verify_vault,
)


def test_empty_graph_is_a_no():
    rep = solve(Digraph((), ()))
    assert rep.verdict == "no" and rep.route == "acyclic"


def test_single_loop_is_a_no():
    rep = solve(parse_digraph("v 1\na 1 1"))
    assert rep.verdict == "no" and rep.route == "tau1"


def test_two_loops_yes():
    rep = solve(parse_digraph("v 1\nv 2\na 1 1\na 2 2"))
    assert rep.verdict == "yes"
    assert verify_certificate(parse_digraph("v 1\nv 2\na 1 1\na 2 2"), rep.certificate)


def test_three_loops_two_scc():
    d = parse_digraph("v 1\nv 2\nv 3\na 1 1\na 2 2\na 3 3")
    rep = solve(d)
    assert rep.verdict == "yes" and rep.route == "two-scc"


def test_k3d_plus_digon_two_scc():
    from cyclepair.instances import digon

    d = disjoint_union(k3d(), digon())
    rep = solve(d)
    assert rep.verdict == "yes" and rep.route == "two-scc"
    assert verify_certificate(d, rep.certificate)


def test_k4d_single_component_routes_tau3():
    vs = ["1", "2", "3", "4"]
    d = Digraph(vs, [(t, h) for t in vs for h in vs if t != h])
    rep = solve(d)
    assert rep.verdict == "yes" and rep.route == "tau3"
    assert verify_certificate(d, rep.certificate)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_pipeline_matches_oracle(seed):
    d = random_multidigraph(random.Random(seed), max_vertices=11, max_arcs=22)
    rep = solve(d)
    assert rep.verdict == oracle_solve(d).verdict
    if rep.certificate is not None:
        assert verify_certificate(d, rep.certificate)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_recognizers_never_return_unverified_decompositions(seed):
    d = random_multidigraph(random.Random(seed), max_vertices=8, max_arcs=18)
    comps = [c for c in strong_components(d) if len(c.vertices) >= 3]
    if not comps:
        return
    sub, _ = d.restricted_to(max(comps, key=lambda c: len(c.vertices)).vertices)
    dec = recognize_vault(sub)
    if dec is not None:
        assert verify_vault(sub, dec)
    mdec = recognize_multiwheel(sub)
    if mdec is not None:
        assert verify_multiwheel(sub, mdec)
    tdec, _ = recognize_trivault(sub)
    if tdec is not None:
        assert verify_trivault(sub, tdec)

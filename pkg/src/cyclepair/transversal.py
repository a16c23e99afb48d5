"""Dicycle transversal number capped at 3, with witnesses.

A transversal is a vertex set whose removal leaves the digraph acyclic.  The
solvers only ever need to know whether the number is 0, 1, 2, or at least 3;
at 1 every transversal vertex is enumerated, at 2 one witness pair is kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .digraph import Digraph, Vertex, is_acyclic_without

AT_LEAST_3 = "AtLeast3"


@dataclass(frozen=True)
class TauInfo:
    tau: int | str  # 0, 1, 2, or AT_LEAST_3
    one_transversals: tuple[Vertex, ...] = ()
    two_transversal: tuple[Vertex, Vertex] | None = None


def is_transversal(d: Digraph, s) -> bool:
    """True iff d minus the vertex set s is acyclic."""
    s = set(s)
    for v in s:
        if not d.has_vertex(v):
            raise ValueError(f"unknown vertex {v!r}")
    return is_acyclic_without(d, s)


def compute_tau_capped(d: Digraph) -> TauInfo:
    """Exact transversal number if <= 2 (testing singletons then pairs), else AtLeast3.

    A vertex carrying a loop lies in every transversal, which prunes the
    search.  Witnesses come out in declaration order.
    """
    if is_acyclic_without(d, ()):
        return TauInfo(0)
    looped = [v for v in d.verts if any(d.head(a) == v for a in d.out_arcs(v))]
    if len(looped) <= 1:
        singles = looped if looped else list(d.verts)
        ones = tuple(v for v in singles if is_acyclic_without(d, (v,)))
        if ones:
            return TauInfo(1, one_transversals=ones)
    if len(looped) > 2:
        return TauInfo(AT_LEAST_3)
    if len(looped) == 2:
        pair = tuple(sorted(looped, key=d.index))
        if is_acyclic_without(d, pair):
            return TauInfo(2, two_transversal=pair)
        return TauInfo(AT_LEAST_3)
    if len(looped) == 1:
        w = looped[0]
        for v in d.verts:
            if v == w:
                continue
            pair = tuple(sorted((w, v), key=d.index))
            if is_acyclic_without(d, pair):
                return TauInfo(2, two_transversal=pair)
        return TauInfo(AT_LEAST_3)
    for u, v in combinations(d.verts, 2):
        if is_acyclic_without(d, (u, v)):
            return TauInfo(2, two_transversal=(u, v))
    return TauInfo(AT_LEAST_3)

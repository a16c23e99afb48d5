"""Exponential-time ground truth for the disjoint-cycle-pair problem.

Enumerates chordless dicycles shortest-first and checks the undirected
complement for each.  Soundness of restricting to chordless dicycles: any
arc between dicycle vertices whose head is not the cyclic successor of its
tail yields a strictly smaller dicycle on a vertex subset, so if some dicycle
admits a disjoint undirected cycle, a chordless one does too.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import (
    Certificate,
    Dicycle,
    UndirectedCycle,
    find_undirected_cycle,
)
from .digraph import Digraph

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class OracleOutcome:
    verdict: str  # "yes" | "no" | "exceeded"
    certificate: Certificate | None = None


def _is_chordless(d: Digraph, arc_ids: tuple[int, ...]) -> bool:
    """No arc of d between cycle vertices other than (parallels of) cycle arcs.

    With positions taken cyclically: an arc whose tail is cycle vertex i is a
    chord unless its head is the vertex at position i+1.  Loops at cycle
    vertices of a longer cycle are chords.
    """
    pos = {d.tail(a): i for i, a in enumerate(arc_ids)}
    k = len(arc_ids)
    on_cycle = set(arc_ids)
    for v, i in pos.items():
        succ = d.tail(arc_ids[(i + 1) % k])
        for a in d.out_arcs(v):
            if a in on_cycle:
                continue
            h = d.head(a)
            if h in pos and h != succ:
                return False
    return True


def enumerate_chordless_dicycles(d: Digraph, cap: int = DEFAULT_CAP) -> tuple[list[Dicycle], bool]:
    """Chordless dicycles, shortest first, stopping at `cap`.

    Returns (cycles, exhausted).  Rotations are deduplicated by starting each
    cycle at its least vertex (declaration order).
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    found: list[Dicycle] = []

    # length 1: loops
    for a, (t, h) in enumerate(d.arcs):
        if t == h:
            found.append(Dicycle((a,)))
            if len(found) >= cap:
                return found, False

    idx = {v: i for i, v in enumerate(d.verts)}
    n = d.n

    for length in range(2, n + 1):
        # DFS from each start vertex; interior vertices must have larger index
        for start in d.verts:
            s_i = idx[start]
            # path: list of arcs; used: vertex indices on the path
            stack: list[tuple[int, int]] = [(a, 0) for a in reversed(d.out_arcs(start))]
            path: list[int] = []
            used: set[int] = {s_i}

            while stack:
                a, depth = stack.pop()
                while len(path) > depth:
                    used.discard(idx[d.head(path.pop())])
                h = d.head(a)
                h_i = idx[h]
                if depth + 1 == length:
                    if h == start:
                        cyc = tuple(path) + (a,)
                        if _is_chordless(d, cyc):
                            found.append(Dicycle(cyc))
                            if len(found) >= cap:
                                return found, False
                    continue
                if h_i <= s_i or h_i in used:
                    continue
                path.append(a)
                used.add(h_i)
                for b in reversed(d.out_arcs(h)):
                    stack.append((b, depth + 1))
    return found, True


def oracle_solve(d: Digraph, cap: int = DEFAULT_CAP) -> OracleOutcome:
    """Brute-force decision with certificate.

    Yes iff some chordless dicycle's complement holds an undirected cycle; No
    only when enumeration was exhausted without success.
    """
    cycles, exhausted = enumerate_chordless_dicycles(d, cap)
    for b in cycles:
        bverts = {d.tail(a) for a in b.arc_ids}
        c = find_undirected_cycle(d, bverts)
        if c is not None:
            return OracleOutcome("yes", Certificate(b, c))
    return OracleOutcome("no" if exhausted else "exceeded")


@dataclass(frozen=True)
class DisjointPairOutcome:
    verdict: str  # "yes" | "no" | "exceeded"
    pair: tuple[Dicycle, Dicycle] | None = None


def oracle_two_disjoint_dicycles(d: Digraph, cap: int = DEFAULT_CAP) -> DisjointPairOutcome:
    """A vertex-disjoint pair of chordless dicycles, if any.

    Two disjoint dicycles always shrink to two disjoint chordless ones, so
    searching the chordless list is exact once it is exhausted.
    """
    cycles, exhausted = enumerate_chordless_dicycles(d, cap)
    vsets = [frozenset(d.tail(a) for a in b.arc_ids) for b in cycles]
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            if not (vsets[i] & vsets[j]):
                return DisjointPairOutcome("yes", (cycles[i], cycles[j]))
    return DisjointPairOutcome("no" if exhausted else "exceeded")


def dicycle_as_undirected(b: Dicycle) -> UndirectedCycle:
    """Read a dicycle's arc set as a cycle of the underlying graph."""
    return UndirectedCycle(b.arc_ids)

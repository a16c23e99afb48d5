"""Two vertex-disjoint directed paths in an acyclic digraph, and the derived
polynomial intercyclicity test for transversal number at most 2.

The linkage runs a pebble game over ordered vertex pairs: from (u, v) only the
pebble on the topologically smaller vertex may advance (a pebble that reached
its target stays put).  Advancing the smaller pebble means the other pebble is
already past every vertex the mover can still touch, which is what makes the
traced paths vertex-disjoint, not merely never co-located.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cycles import Dicycle, find_any_dicycle
from .digraph import Digraph, Vertex, is_acyclic, topological_order
from .transversal import AT_LEAST_3, TauInfo


@dataclass(frozen=True)
class LinkageQuery:
    dag: Digraph
    s1: Vertex
    t1: Vertex
    s2: Vertex
    t2: Vertex


def _bfs_path(d: Digraph, s: Vertex, t: Vertex, forbidden) -> list[Vertex] | None:
    forbidden_set = set(forbidden)
    if s in forbidden_set or t in forbidden_set:
        return None
    if s == t:
        return [s]
    parent: dict[Vertex, Vertex] = {}
    queue = [s]
    seen = {s}
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for a in d.out_arcs(v):
            h = d.head(a)
            if h in seen or h in forbidden_set:
                continue
            parent[h] = v
            if h == t:
                path = [t]
                while path[-1] != s:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            seen.add(h)
            queue.append(h)
    return None


def two_disjoint_paths_dag(q: LinkageQuery) -> tuple[list[Vertex], list[Vertex]] | None:
    """Vertex-disjoint s1->t1 and s2->t2 paths in a DAG, or None (exact).

    A trivial path (s == t) is allowed and occupies its single vertex.
    """
    d = q.dag
    if not is_acyclic(d):
        raise ValueError("two_disjoint_paths_dag needs an acyclic digraph")
    s1, t1, s2, t2 = q.s1, q.t1, q.s2, q.t2
    for v in (s1, t1, s2, t2):
        if not d.has_vertex(v):
            raise ValueError(f"unknown terminal {v!r}")

    if s1 == t1 and s2 == t2:
        return ([s1], [s2]) if s1 != s2 else None
    if s1 == t1:
        p2 = _bfs_path(d, s2, t2, (s1,))
        return ([s1], p2) if p2 is not None else None
    if s2 == t2:
        p1 = _bfs_path(d, s1, t1, (s2,))
        return (p1, [s2]) if p1 is not None else None
    if {s1, t1} & {s2, t2}:
        return None

    topo = {v: i for i, v in enumerate(topological_order(d))}

    start = (s1, s2)
    goal = (t1, t2)
    parent: dict[tuple, tuple] = {start: None}
    queue = [start]
    qi = 0
    while qi < len(queue):
        u, v = queue[qi]
        qi += 1
        if (u, v) == goal:
            break
        if u == t1:
            move_first = False
        elif v == t2:
            move_first = True
        else:
            move_first = topo[u] < topo[v]
        if move_first:
            for a in d.out_arcs(u):
                h = d.head(a)
                if h == v:
                    continue
                st = (h, v)
                if st not in parent:
                    parent[st] = (u, v)
                    queue.append(st)
        else:
            for a in d.out_arcs(v):
                h = d.head(a)
                if h == u:
                    continue
                st = (u, h)
                if st not in parent:
                    parent[st] = (u, v)
                    queue.append(st)
    if goal not in parent:
        return None
    # walk parents back, collecting each pebble's trajectory
    p1 = [t1]
    p2 = [t2]
    st = goal
    while parent[st] is not None:
        pu, pv = parent[st]
        if pu != st[0]:
            p1.append(pu)
        else:
            p2.append(pv)
        st = (pu, pv)
    p1.reverse()
    p2.reverse()
    return p1, p2


def _arc_between(d: Digraph, t: Vertex, h: Vertex) -> int:
    for a in d.out_arcs(t):
        if d.head(a) == h:
            return a
    raise ValueError(f"no arc {t!r}->{h!r}")


def _vertex_path_to_arcs(d: Digraph, path: list[Vertex]) -> list[int]:
    return [_arc_between(d, path[i], path[i + 1]) for i in range(len(path) - 1)]


def is_intercyclic(d: Digraph, tau: TauInfo):
    """Decide whether d has no two vertex-disjoint dicycles (tau must be <= 2).

    Returns (True, None) or (False, (b1, b2)) with the disjoint dicycle pair.
    At tau 2 with witness pair {u, v}, two disjoint dicycles exist iff there
    are disjoint dicycles through u avoiding v and through v avoiding u; their
    u-free/v-free interiors are paths of the acyclic d - {u, v}, found by the
    DAG linkage over supersource/supersink copies of u's and v's neighbourhoods.
    """
    if tau.tau == AT_LEAST_3:
        raise ValueError("is_intercyclic requires tau <= 2; route tau >= 3 separately")
    if tau.tau in (0, 1):
        return True, None
    u, v = tau.two_transversal

    def loop_at(w):
        for a in d.out_arcs(w):
            if d.head(a) == w:
                return a
        return None

    lu, lv = loop_at(u), loop_at(v)
    if lu is not None and lv is not None:
        return False, (Dicycle((lu,)), Dicycle((lv,)))
    if lu is not None:
        b2 = find_any_dicycle(d, forbidden=(u,))
        # d - u is not acyclic because tau is 2, so b2 exists
        return False, (Dicycle((lu,)), b2)
    if lv is not None:
        b1 = find_any_dicycle(d, forbidden=(v,))
        return False, (b1, Dicycle((lv,)))

    core, arc_map = d.without_vertices((u, v))
    existing = set(core.verts)
    names = ["~S1", "~T1", "~S2", "~T2"]
    while any(nm in existing for nm in names):
        names = [nm + "~" for nm in names]
    s1, t1, s2, t2 = names
    verts = [s1, t1, s2, t2] + list(core.verts)
    aug_arcs: list[tuple[Vertex, Vertex]] = []
    origin: list[int | None] = []
    for a in arc_map:
        aug_arcs.append(d.arcs[a])
        origin.append(a)
    for w_sym, s_sym, t_sym in ((u, s1, t1), (v, s2, t2)):
        for a in d.out_arcs(w_sym):
            h = d.head(a)
            if h in (u, v):
                continue
            aug_arcs.append((s_sym, h))
            origin.append(a)
        for a in d.in_arcs(w_sym):
            t = d.tail(a)
            if t in (u, v):
                continue
            aug_arcs.append((t, t_sym))
            origin.append(a)
    aug = Digraph(verts, aug_arcs)
    res = two_disjoint_paths_dag(LinkageQuery(aug, s1, t1, s2, t2))
    if res is None:
        return True, None
    p1, p2 = res

    def path_to_dicycle(p: list[Vertex]) -> Dicycle:
        # p = [S, x1, ..., xr, T]; sentinel arcs map back to arcs at u resp. v
        arcs = []
        for i in range(len(p) - 1):
            arcs.append(origin[_arc_between(aug, p[i], p[i + 1])])
        return Dicycle(tuple(arcs))

    return False, (path_to_dicycle(p1), path_to_dicycle(p2))

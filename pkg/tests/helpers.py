"""Independent brute-force references used to pin expected values.

Everything here is deliberately naive and separate from the library's own
search paths, so tests compare two implementations that share nothing.
"""

from __future__ import annotations

from itertools import permutations

from cyclepair.cycles import Dicycle, UndirectedCycle, is_undirected_cycle
from cyclepair.digraph import Digraph


def all_dicycles(d: Digraph) -> set[tuple[int, ...]]:
    """Every simple dicycle as a rotation-canonical arc tuple (min arc first)."""
    out: set[tuple[int, ...]] = set()

    def canon(seq):
        k = seq.index(min(seq))
        return tuple(seq[k:] + seq[:k])

    def extend(path_arcs, used_verts, start):
        last = d.head(path_arcs[-1])
        if last == start:
            out.add(canon(path_arcs))
            return
        for a in d.out_arcs(last):
            h = d.head(a)
            if h == start or h not in used_verts:
                if h != start:
                    used_verts.add(h)
                extend(path_arcs + [a], used_verts, start)
                if h != start:
                    used_verts.discard(h)

    for a, (t, h) in enumerate(d.arcs):
        if t == h:
            out.add((a,))
    for v in d.verts:
        for a in d.out_arcs(v):
            if d.head(a) != v:
                extend([a], {v, d.head(a)}, v)
    # dedupe by arc set is wrong for rotations; canon handles it, but each cycle
    # is found once per start vertex: keep only tuples whose start is minimal
    return out


def all_undirected_cycles(d: Digraph, forbidden=()) -> list[UndirectedCycle]:
    """Every cycle of UG(d) avoiding forbidden vertices (small graphs only)."""
    forbidden = set(forbidden)
    res = []
    seen = set()
    alive_arcs = [
        a
        for a, (t, h) in enumerate(d.arcs)
        if t not in forbidden and h not in forbidden
    ]

    adj: dict = {}
    for a in alive_arcs:
        t, h = d.arcs[a]
        adj.setdefault(t, []).append((a, h))
        if t != h:
            adj.setdefault(h, []).append((a, t))

    def walk(arcs, verts, start, cur):
        for a, nxt in adj.get(cur, ()):  # nxt is the other endpoint
            if a in arcs:
                continue
            if nxt == start and len(arcs) >= 1:
                cand = tuple(sorted(arcs | {a}))
                if cand not in seen:
                    cyc_arcs = order_cycle(arcs | {a}, start)
                    if cyc_arcs is not None:
                        seen.add(cand)
                        res.append(UndirectedCycle(cyc_arcs))
                continue
            if nxt in verts:
                continue
            walk(arcs | {a}, verts | {nxt}, start, nxt)

    def order_cycle(arc_set, start):
        arcs_left = set(arc_set)
        seq = []
        cur = start
        while arcs_left:
            found = None
            for a in sorted(arcs_left):
                t, h = d.arcs[a]
                if t == cur or h == cur:
                    found = a
                    break
            if found is None:
                return None
            seq.append(found)
            arcs_left.discard(found)
            t, h = d.arcs[found]
            cur = h if t == cur else t
        if cur != start:
            return None
        cand = UndirectedCycle(tuple(seq))
        return tuple(seq) if is_undirected_cycle(d, cand) else None

    for a in alive_arcs:
        t, h = d.arcs[a]
        if t == h:
            cand = (a,)
            if cand not in seen:
                seen.add(cand)
                res.append(UndirectedCycle(cand))
    for v in d.verts:
        if v not in forbidden:
            walk(frozenset(), {v}, v, v)
    return res


def solve_by_full_enumeration(d: Digraph) -> bool:
    """Doubly-exponential reference: all dicycles x undirected complement."""
    for cyc in all_dicycles(d):
        bverts = {d.tail(a) for a in cyc}
        if all_undirected_cycles(d, bverts):
            return True
    return False


def brute_sccs(d: Digraph) -> set[frozenset]:
    """SCCs by pairwise reachability."""
    reach: dict = {}
    for v in d.verts:
        seen = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for a in d.out_arcs(x):
                h = d.head(a)
                if h not in seen:
                    seen.add(h)
                    stack.append(h)
        reach[v] = seen
    comps = set()
    for v in d.verts:
        comp = frozenset(w for w in d.verts if w in reach[v] and v in reach[w])
        comps.add(comp)
    return comps


def all_simple_vertex_paths(d: Digraph, s, t) -> list[tuple]:
    """All simple directed s->t paths as vertex tuples."""
    out = []

    def go(cur, path, used):
        if cur == t:
            out.append(tuple(path))
            return
        for a in d.out_arcs(cur):
            h = d.head(a)
            if h not in used:
                used.add(h)
                path.append(h)
                go(h, path, used)
                path.pop()
                used.discard(h)

    go(s, [s], {s})
    return out


def brute_two_disjoint_paths(d: Digraph, s1, t1, s2, t2) -> bool:
    """Exhaustive disjoint path-pair search (exact, tiny DAGs only)."""
    p1s = all_simple_vertex_paths(d, s1, t1)
    if not p1s:
        return False
    p2s = all_simple_vertex_paths(d, s2, t2)
    for p1 in p1s:
        sp1 = set(p1)
        for p2 in p2s:
            if not (sp1 & set(p2)):
                return True
    return False


def digraphs_isomorphic(a: Digraph, b: Digraph) -> bool:
    """Backtracking multidigraph isomorphism for small graphs."""
    if a.n != b.n or a.m != b.m:
        return False

    def sig(d, v):
        return (d.in_degree(v), d.out_degree(v))

    from collections import Counter

    if Counter(sig(a, v) for v in a.verts) != Counter(sig(b, v) for v in b.verts):
        return False

    def arc_multiset(d):
        from collections import Counter

        return Counter(d.arcs)

    bs = list(b.verts)

    def backtrack(mapping, used):
        if len(mapping) == a.n:
            ca = Counter((mapping[t], mapping[h]) for t, h in a.arcs)
            return ca == arc_multiset(b)
        v = a.verts[len(mapping)]
        for w in bs:
            if w in used or sig(a, v) != sig(b, w):
                continue
            mapping[v] = w
            used.add(w)
            # partial consistency: arcs among mapped vertices must match counts
            ok = True
            if ok and backtrack(mapping, used):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return backtrack({}, set())

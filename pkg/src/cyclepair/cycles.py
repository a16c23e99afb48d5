"""Cycle objects, their validation, certificate verification, and cycle search.

Cycles are stored as cyclic sequences of arc ids of the host digraph so that
parallel arcs stay unambiguous.  A loop arc alone is a length-1 cycle in both
the directed and the undirected sense; two parallel or antiparallel arcs form
a length-2 undirected cycle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, ParseError, Vertex


@dataclass(frozen=True)
class Dicycle:
    arc_ids: tuple[int, ...]

    def __len__(self):
        return len(self.arc_ids)


@dataclass(frozen=True)
class UndirectedCycle:
    arc_ids: tuple[int, ...]

    def __len__(self):
        return len(self.arc_ids)


@dataclass(frozen=True)
class Certificate:
    dicycle: Dicycle
    cycle: UndirectedCycle


def _check_arc_ids(d: Digraph, arc_ids) -> None:
    for a in arc_ids:
        if not isinstance(a, int) or a < 0 or a >= d.m:
            raise ValueError(f"arc id out of range: {a!r}")


def dicycle_vertices(d: Digraph, cyc: Dicycle) -> list[Vertex]:
    """Tail vertices of the dicycle arcs, in traversal order."""
    return [d.tail(a) for a in cyc.arc_ids]


def is_dicycle(d: Digraph, cyc: Dicycle) -> bool:
    """True iff cyc is a dicycle of d: consecutive head-to-tail, no vertex repeats."""
    _check_arc_ids(d, cyc.arc_ids)
    ids = cyc.arc_ids
    if not ids or len(set(ids)) != len(ids):
        return False
    k = len(ids)
    for i in range(k):
        if d.head(ids[i]) != d.tail(ids[(i + 1) % k]):
            return False
    tails = [d.tail(a) for a in ids]
    return len(set(tails)) == k


def undirected_cycle_vertices(d: Digraph, cyc: UndirectedCycle) -> list[Vertex]:
    """Vertex sequence of a valid undirected cycle (one entry per arc)."""
    ids = cyc.arc_ids
    if len(ids) == 1:
        return [d.tail(ids[0])]
    if len(ids) == 2:
        u, w = d.arcs[ids[0]]
        return [u, w]
    # walk: the vertex shared between arc i and arc i+1
    verts = []
    k = len(ids)
    for i in range(k):
        shared = set(d.arcs[ids[i]]) & set(d.arcs[ids[(i + 1) % k]])
        if len(shared) != 1:
            raise ValueError("not a cycle: consecutive arcs do not share one endpoint")
        verts.append(next(iter(shared)))
    return verts


def is_undirected_cycle(d: Digraph, cyc: UndirectedCycle) -> bool:
    """True iff cyc is a cycle of UG(d): closed, arcs distinct, no vertex repeats."""
    _check_arc_ids(d, cyc.arc_ids)
    ids = cyc.arc_ids
    if not ids or len(set(ids)) != len(ids):
        return False
    if len(ids) == 1:
        t, h = d.arcs[ids[0]]
        return t == h
    if len(ids) == 2:
        e0 = frozenset(d.arcs[ids[0]])
        e1 = frozenset(d.arcs[ids[1]])
        return e0 == e1 and len(e0) == 2
    # length >= 3: no loops, walk must visit distinct vertices
    for a in ids:
        if d.tail(a) == d.head(a):
            return False
    k = len(ids)
    joints = []
    for i in range(k):
        shared = set(d.arcs[ids[i]]) & set(d.arcs[ids[(i + 1) % k]])
        if len(shared) != 1:
            return False
        joints.append(next(iter(shared)))
    if len(set(joints)) != k:
        return False
    # each arc's endpoints must be exactly the two neighbouring joints
    for i in range(k):
        if {joints[i - 1], joints[i]} != set(d.arcs[ids[i]]):
            return False
    return True


def verify_certificate(d: Digraph, cert: Certificate) -> bool:
    """Check cert independently of how it was found.

    Raises ValueError on arc ids out of range (distinct from returning False).
    """
    _check_arc_ids(d, cert.dicycle.arc_ids)
    _check_arc_ids(d, cert.cycle.arc_ids)
    if not is_dicycle(d, cert.dicycle):
        return False
    if not is_undirected_cycle(d, cert.cycle):
        return False
    bverts = set(dicycle_vertices(d, cert.dicycle))
    cverts = set()
    for a in cert.cycle.arc_ids:
        cverts.add(d.tail(a))
        cverts.add(d.head(a))
    return not (bverts & cverts)


def find_undirected_cycle(d: Digraph, forbidden=()) -> UndirectedCycle | None:
    """Some cycle of UG(d) avoiding `forbidden` vertices, or None if that part is a forest.

    Checks loops, then parallel/antiparallel pairs, then DFS for a longer cycle.
    """
    forbidden_set = set(forbidden)
    alive = [v for v in d.verts if v not in forbidden_set]
    alive_set = set(alive)
    # incident arc lists restricted to surviving arcs
    pair_seen: dict[frozenset, int] = {}
    adj: dict[Vertex, list[tuple[int, Vertex]]] = {v: [] for v in alive}
    for a, (t, h) in enumerate(d.arcs):
        if t not in alive_set or h not in alive_set:
            continue
        if t == h:
            return UndirectedCycle((a,))
        key = frozenset((t, h))
        if key in pair_seen:
            return UndirectedCycle((pair_seen[key], a))
        pair_seen[key] = a
        adj[t].append((a, h))
        adj[h].append((a, t))
    # simple graph now: grow a forest with union-find; the first arc joining
    # two vertices of one component closes a cycle along the tree path
    root_of: dict[Vertex, Vertex] = {v: v for v in alive}

    def find(x):
        while root_of[x] != x:
            root_of[x] = root_of[root_of[x]]
            x = root_of[x]
        return x

    tree_adj: dict[Vertex, list[tuple[int, Vertex]]] = {v: [] for v in alive}
    for v in alive:
        for a, w in adj[v]:
            if d.tail(a) != v:
                continue  # handle each arc once, from its tail
            ra, rb = find(v), find(w)
            if ra == rb:
                # tree path w .. v plus arc a
                parent: dict[Vertex, tuple[int, Vertex]] = {}
                queue = [w]
                seen = {w}
                while queue:
                    x = queue.pop()
                    if x == v:
                        break
                    for b, y in tree_adj[x]:
                        if y not in seen:
                            seen.add(y)
                            parent[y] = (b, x)
                            queue.append(y)
                path_arcs = []
                x = v
                while x != w:
                    b, y = parent[x]
                    path_arcs.append(b)
                    x = y
                path_arcs.reverse()
                path_arcs.append(a)
                return UndirectedCycle(tuple(path_arcs))
            root_of[ra] = rb
            tree_adj[v].append((a, w))
            tree_adj[w].append((a, v))
    return None


def find_any_dicycle(d: Digraph, forbidden=()) -> Dicycle | None:
    """Some dicycle of d avoiding `forbidden`, or None. Deterministic DFS."""
    forbidden_set = set(forbidden)
    for a, (t, h) in enumerate(d.arcs):
        if t == h and t not in forbidden_set:
            return Dicycle((a,))
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v: WHITE for v in d.verts if v not in forbidden_set}
    for root in d.verts:
        if root in forbidden_set or color[root] != WHITE:
            continue
        # stack of (vertex, next arc position); path_arcs traces the grey path
        stack = [(root, 0)]
        color[root] = GREY
        path_arcs: list[int] = []
        while stack:
            v, i = stack[-1]
            out = d.out_arcs(v)
            advanced = False
            while i < len(out):
                a = out[i]
                i += 1
                w = d.head(a)
                if w in forbidden_set:
                    continue
                if color[w] == GREY:
                    # close the cycle: walk grey path backwards until tail == w
                    cyc = []
                    x = v
                    j = len(path_arcs) - 1
                    while x != w:
                        cyc.append(path_arcs[j])
                        x = d.tail(path_arcs[j])
                        j -= 1
                    cyc.reverse()
                    cyc.append(a)
                    return Dicycle(tuple(cyc))
                if color[w] == WHITE:
                    stack[-1] = (v, i)
                    color[w] = GREY
                    stack.append((w, 0))
                    path_arcs.append(a)
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                color[v] = BLACK
                if path_arcs:
                    path_arcs.pop()
    return None


def shortest_dicycle_through(d: Digraph, v: Vertex) -> Dicycle | None:
    """A shortest dicycle containing v (BFS over arcs, deterministic)."""
    for a in d.out_arcs(v):
        if d.head(a) == v:
            return Dicycle((a,))
    # BFS from each out-neighbour back to v
    parent_arc: dict[Vertex, int] = {}
    dist: dict[Vertex, int] = {v: 0}
    queue: list[Vertex] = []
    first_arc: dict[Vertex, int] = {}
    for a in d.out_arcs(v):
        h = d.head(a)
        if h not in dist:
            dist[h] = 1
            parent_arc[h] = a
            queue.append(h)
    qi = 0
    while qi < len(queue):
        u = queue[qi]
        qi += 1
        for a in d.out_arcs(u):
            h = d.head(a)
            if h == v:
                cyc = [a]
                x = u
                while x != v:
                    cyc.append(parent_arc[x])
                    x = d.tail(parent_arc[x])
                cyc.reverse()
                return Dicycle(tuple(cyc))
            if h not in dist:
                dist[h] = dist[u] + 1
                parent_arc[h] = a
                queue.append(h)
    return None


def canonical_dicycle(cyc: Dicycle) -> tuple[int, ...]:
    """Rotation-canonical arc-id tuple (min arc id first) for set comparisons."""
    ids = cyc.arc_ids
    k = ids.index(min(ids))
    return ids[k:] + ids[:k]


def format_certificate(cert: Certificate) -> str:
    dl = " ".join(str(a) for a in cert.dicycle.arc_ids)
    cl = " ".join(str(a) for a in cert.cycle.arc_ids)
    return f"dicycle: {dl}\ncycle: {cl}\n"


def parse_certificate(text: str) -> Certificate:
    dicycle = None
    cycle = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("dicycle:"):
            try:
                dicycle = tuple(int(x) for x in line[len("dicycle:"):].split())
            except ValueError:
                raise ParseError(lineno, f"bad arc id list: {raw!r}")
        elif line.startswith("cycle:"):
            try:
                cycle = tuple(int(x) for x in line[len("cycle:"):].split())
            except ValueError:
                raise ParseError(lineno, f"bad arc id list: {raw!r}")
        else:
            raise ParseError(lineno, f"malformed certificate line: {raw!r}")
    if dicycle is None or cycle is None:
        raise ParseError(0, "certificate needs both a dicycle and a cycle line")
    return Certificate(Dicycle(dicycle), UndirectedCycle(cycle))

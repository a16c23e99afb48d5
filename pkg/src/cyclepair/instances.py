"""Canonical instances and seeded samplers shared by tests and scripts."""

from __future__ import annotations

import random

from .digraph import Digraph, Vertex


def digon() -> Digraph:
    """Two vertices with arcs both ways: arcs 0:(1->2), 1:(2->1)."""
    return Digraph(["1", "2"], [("1", "2"), ("2", "1")])


def k3d() -> Digraph:
    """Complete digraph on 3 vertices, both arcs per pair."""
    vs = ["1", "2", "3"]
    arcs = [(t, h) for t in vs for h in vs if t != h]
    return Digraph(vs, arcs)


def c5sq() -> Digraph:
    """Square of the directed 5-cycle: arcs i->i+1 (ids 0-4) then i->i+2 (ids 5-9)."""
    vs = [str(i) for i in range(5)]
    arcs = [(str(i), str((i + 1) % 5)) for i in range(5)]
    arcs += [(str(i), str((i + 2) % 5)) for i in range(5)]
    return Digraph(vs, arcs)


def mw3() -> Digraph:
    """Multiwheel with 3 rim vertices and one spoke each way per rim vertex."""
    vs = ["c0", "c1", "c2", "v"]
    arcs = [("c0", "c1"), ("c1", "c2"), ("c2", "c0")]
    for c in ("c0", "c1", "c2"):
        arcs.append(("v", c))
        arcs.append((c, "v"))
    return Digraph(vs, arcs)


def disjoint_union(*graphs: Digraph) -> Digraph:
    """Disjoint union, relabelling vertices as g<i>.<name> when names collide."""
    names: list[Vertex] = []
    arcs: list[tuple[Vertex, Vertex]] = []
    seen: set[Vertex] = set()
    for gi, g in enumerate(graphs):
        ren = {}
        for v in g.verts:
            nv = v if v not in seen else f"g{gi}.{v}"
            while nv in seen:
                nv = f"g{gi}.{nv}"
            ren[v] = nv
            seen.add(nv)
            names.append(nv)
        arcs.extend((ren[t], ren[h]) for t, h in g.arcs)
    return Digraph(names, arcs)


def random_multidigraph(
    rng: random.Random,
    max_vertices: int = 12,
    max_arcs: int = 24,
    loop_prob: float = 0.08,
) -> Digraph:
    """Seeded random multidigraph with loops and parallel arcs allowed."""
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_arcs)
    vs = [str(i + 1) for i in range(n)]
    arcs = []
    for _ in range(m):
        if rng.random() < loop_prob:
            v = rng.choice(vs)
            arcs.append((v, v))
        else:
            t = rng.choice(vs)
            h = rng.choice(vs)
            arcs.append((t, h))
    return Digraph(vs, arcs)


def random_dag(rng: random.Random, n: int, arc_prob: float = 0.35) -> Digraph:
    """Seeded random DAG: arcs only forward along a shuffled order."""
    vs = [str(i + 1) for i in range(n)]
    order = vs[:]
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    arcs = []
    for t in vs:
        for h in vs:
            if pos[t] < pos[h] and rng.random() < arc_prob:
                arcs.append((t, h))
    return Digraph(vs, arcs)


def subdivide_random_arcs(d: Digraph, rng: random.Random, count: int, prefix: str = "sub"):
    """Subdivide `count` randomly chosen arcs once each; returns (host, arc path map)."""
    from .transform import subdivide

    if d.m == 0:
        return d, {a: (a,) for a in range(d.m)}
    picks = rng.sample(range(d.m), min(count, d.m))
    return subdivide(d, {a: 1 for a in picks}, name_hint=prefix)


def tau1_scaling_instance(ell: int = 100) -> Digraph:
    """A two-transversal no-instance with `ell` openly disjoint paths per
    segment and 4*ell vertices (400 at the default size).

    Both transversal vertices sit on every dicycle.  A cyclic ladder of rungs
    across the first segment's paths creates one long undirected cycle that
    every path choice breaks, so the solver must sweep the whole tuple space
    (including one-switch reroutes over the rungs) before answering no.
    """
    a, t = "a", "t"
    verts = [a, t]
    arcs: list[tuple[str, str]] = []
    seg1 = []
    for i in range(ell):
        m1, m2 = f"p{i}.1", f"p{i}.2"
        verts += [m1, m2]
        arcs += [(a, m1), (m1, m2), (m2, t)]
        seg1.append((m1, m2))
    for j in range(ell):
        if j < ell - 2:
            q1, q2 = f"q{j}.1", f"q{j}.2"
            verts += [q1, q2]
            arcs += [(t, q1), (q1, q2), (q2, a)]
        else:
            q1 = f"q{j}.1"
            verts.append(q1)
            arcs += [(t, q1), (q1, a)]
    for i in range(ell):
        arcs.append((seg1[i][0], seg1[(i + 1) % ell][1]))
    return Digraph(verts, arcs)


def attach_externals(
    core: Digraph,
    rng: random.Random,
    externals: int,
    max_neighbors: int = 3,
    tree_bloat: int = 0,
    pendants: int = 0,
) -> Digraph:
    """Attach external tree components to a strongly connected core.

    Each external is a small tree touching >= 2 distinct core vertices.  All
    attachment arcs of one component point the same way (into or out of the
    core) so no new dicycle can pass through the component; tree-internal
    orientation is free.  `pendants` adds degree-1 vertices that
    preprocessing should strip.
    """
    verts = list(core.verts)
    arcs = list(core.arcs)
    next_id = 0

    def fresh(tag: str) -> str:
        nonlocal next_id
        while True:
            cand = f"{tag}{next_id}"
            next_id += 1
            if cand not in verts:
                return cand

    def orient(x, y):
        return (x, y) if rng.random() < 0.5 else (y, x)

    for _ in range(externals):
        tree = [fresh("x")]
        verts.append(tree[0])
        for _ in range(tree_bloat):
            w = fresh("x")
            verts.append(w)
            arcs.append(orient(rng.choice(tree), w))
            tree.append(w)
        into_core = rng.random() < 0.5
        k = rng.randint(2, max(2, max_neighbors))
        targets = rng.sample(list(core.verts), min(k, core.n))
        if len(targets) < 2:
            targets = list(core.verts)[:2]
        for t in targets:
            x = rng.choice(tree)
            arcs.append((x, t) if into_core else (t, x))
    for _ in range(pendants):
        w = fresh("p")
        verts.append(w)
        anchor = rng.choice(verts[: len(verts) - 1])
        arcs.append(orient(w, anchor))
    return Digraph(verts, arcs)

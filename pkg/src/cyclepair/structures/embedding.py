"""Subdivision certificates: a host digraph as a subdivision of a skeleton.

A decomposition of a host into one of the structure families is stated on a
small skeleton digraph plus an embedding that sends every skeleton arc to a
host dipath (its link).  Recognition produces the skeleton by smoothing; the
generators go the other way by subdividing.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..cycles import Dicycle, UndirectedCycle
from ..digraph import Digraph, Vertex
from ..transform import lift_arc_seq, lift_arc_seq_undirected, smooth_1_1, subdivide


@dataclass(frozen=True)
class Embedding:
    skeleton: Digraph
    host: Digraph
    vertex_map: dict  # skeleton vertex -> host vertex
    arc_paths: dict  # skeleton arc id -> tuple of host arc ids (a dipath)

    def host_path(self, sk_arcs) -> tuple[int, ...]:
        return lift_arc_seq(sk_arcs, self.arc_paths)

    def lift_dicycle(self, sk_arcs) -> Dicycle:
        return Dicycle(self.host_path(sk_arcs))

    def lift_undirected(self, sk_arcs) -> UndirectedCycle:
        return UndirectedCycle(lift_arc_seq_undirected(self.host, sk_arcs, self.arc_paths))


def identity_embedding(d: Digraph) -> Embedding:
    return Embedding(d, d, {v: v for v in d.verts}, {a: (a,) for a in range(d.m)})


def smoothing_embedding(host: Digraph) -> Embedding:
    """Smooth the host; the smoothed graph is the skeleton, links the merged arcs."""
    skel, mapping = smooth_1_1(host)
    return Embedding(skel, host, {v: v for v in skel.verts}, mapping)


def subdivision_embedding(skeleton: Digraph, plan: dict[int, int], name_hint: str = "s") -> Embedding:
    host, mapping = subdivide(skeleton, plan, name_hint=name_hint)
    return Embedding(skeleton, host, {v: v for v in skeleton.verts}, mapping)


def verify_embedding(emb: Embedding) -> bool:
    """The host is exactly the subdivision of the skeleton described by emb."""
    sk, host = emb.skeleton, emb.host
    vmap = emb.vertex_map
    if set(vmap) != set(sk.verts):
        return False
    images = list(vmap.values())
    if len(set(images)) != len(images):
        return False
    if not all(host.has_vertex(w) for w in images):
        return False
    image_set = set(images)
    seen_arcs: set[int] = set()
    interior_owner: dict[Vertex, int] = {}
    for a in range(sk.m):
        path = emb.arc_paths.get(a)
        if not path:
            return False
        t, h = sk.arcs[a]
        if host.tail(path[0]) != vmap[t] or host.head(path[-1]) != vmap[h]:
            return False
        for i in range(len(path) - 1):
            if host.head(path[i]) != host.tail(path[i + 1]):
                return False
        for b in path:
            if b in seen_arcs:
                return False
            seen_arcs.add(b)
        for b in path[:-1]:
            w = host.head(b)
            if w in image_set or w in interior_owner:
                return False
            interior_owner[w] = a
    if len(seen_arcs) != host.m:
        return False
    if len(image_set) + len(interior_owner) != host.n:
        return False
    return True


def host_walk(emb: Embedding, sk_arcs) -> tuple[list[Vertex], list[int]]:
    """Host vertex and arc sequences along a skeleton dipath."""
    arcs = list(emb.host_path(sk_arcs))
    if not arcs:
        return [], []
    verts = [emb.host.tail(arcs[0])]
    for a in arcs:
        verts.append(emb.host.head(a))
    return verts, arcs

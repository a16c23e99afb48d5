"""Multiwheels: a rim dicycle plus a center (or a split center pair) carrying
spokes to and from every rim vertex.

In the split form the center is two vertices joined by one arc; all in-spokes
enter the minus side and all out-spokes leave the plus side.  Every dicycle is
the rim or one out-spoke plus a rim path plus one in-spoke (plus the center
link when split), so brute force over that quadratic list is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from ..cycles import Dicycle
from ..digraph import Digraph, Vertex, is_strongly_connected
from .embedding import Embedding, smoothing_embedding, subdivision_embedding, verify_embedding


@dataclass(frozen=True)
class MultiwheelDecomposition:
    embedding: Embedding
    kind: str  # "plain" | "split"
    rim: tuple[Vertex, ...]  # skeleton rim vertices in cyclic order
    rim_arcs: tuple[int, ...]  # rim_arcs[i]: rim[i] -> rim[i+1]
    center: tuple  # ("plain", v) | ("split", v_minus, v_plus, center_arc)
    spokes_out: tuple[int, ...]  # skeleton arcs center -> rim
    spokes_in: tuple[int, ...]  # skeleton arcs rim -> center

    @property
    def p(self) -> int:
        return len(self.rim)


def verify_multiwheel(host: Digraph, dec: MultiwheelDecomposition) -> bool:
    emb = dec.embedding
    if emb.host != host or not verify_embedding(emb):
        return False
    sk = emb.skeleton
    p = dec.p
    if p < 3:
        return False
    if dec.kind == "plain":
        _, v = dec.center
        centers = {v}
        out_src, in_dst = v, v
    elif dec.kind == "split":
        _, vm, vp, ce = dec.center
        if vm == vp or sk.arcs[ce] != (vm, vp):
            return False
        centers = {vm, vp}
        out_src, in_dst = vp, vm
    else:
        return False
    if set(dec.rim) & centers or len(set(dec.rim)) != p:
        return False
    if set(dec.rim) | centers != set(sk.verts):
        return False
    if len(dec.rim_arcs) != p:
        return False
    for i in range(p):
        if sk.arcs[dec.rim_arcs[i]] != (dec.rim[i], dec.rim[(i + 1) % p]):
            return False
    rim_set = set(dec.rim)
    used = set(dec.rim_arcs)
    if dec.kind == "split":
        used.add(dec.center[3])
    for a in dec.spokes_out:
        if a in used:
            return False
        used.add(a)
        if sk.tail(a) != out_src or sk.head(a) not in rim_set:
            return False
    for a in dec.spokes_in:
        if a in used:
            return False
        used.add(a)
        if sk.head(a) != in_dst or sk.tail(a) not in rim_set:
            return False
    if len(used) != sk.m:
        return False
    # every rim vertex of the skeleton carries at least one spoke
    touched = {sk.head(a) for a in dec.spokes_out} | {sk.tail(a) for a in dec.spokes_in}
    return touched == rim_set


def recognize_multiwheel(host: Digraph) -> MultiwheelDecomposition | None:
    """Try every vertex as a plain center and every arc as a split center link;
    the rest (one rim dicycle through all other vertices) is forced."""
    if host.n == 0 or not is_strongly_connected(host):
        return None
    emb = smoothing_embedding(host)
    sk = emb.skeleton
    if sk.n < 4:
        return None

    def try_centers(centers: set, kind, center_field, out_src, in_dst, internal: set):
        rim_verts = [v for v in sk.verts if v not in centers]
        if len(rim_verts) < 3:
            return None
        nxt: dict[Vertex, Vertex] = {}
        nxt_arc: dict[Vertex, int] = {}
        spokes_out = []
        spokes_in = []
        for a, (t, h) in enumerate(sk.arcs):
            if a in internal:
                continue
            t_c, h_c = t in centers, h in centers
            if t_c and h_c:
                return None
            if t_c:
                if t != out_src:
                    return None
                spokes_out.append(a)
            elif h_c:
                if h != in_dst:
                    return None
                spokes_in.append(a)
            else:
                if t == h or t in nxt:
                    return None  # rim must be a plain dicycle
                nxt[t] = h
                nxt_arc[t] = a
        if len(nxt) != len(rim_verts):
            return None
        start = min(rim_verts, key=sk.index)
        rim = [start]
        rim_arcs = [nxt_arc[start]]
        cur = nxt.get(start)
        while cur is not None and cur != start and len(rim) <= len(rim_verts):
            rim.append(cur)
            rim_arcs.append(nxt_arc[cur])
            cur = nxt.get(cur)
        if cur != start or len(rim) != len(rim_verts):
            return None
        dec = MultiwheelDecomposition(
            embedding=emb,
            kind=kind,
            rim=tuple(rim),
            rim_arcs=tuple(rim_arcs),
            center=center_field,
            spokes_out=tuple(spokes_out),
            spokes_in=tuple(spokes_in),
        )
        return dec if verify_multiwheel(host, dec) else None

    for v in sk.verts:
        dec = try_centers({v}, "plain", ("plain", v), v, v, set())
        if dec is not None:
            return dec
    for a, (t, h) in enumerate(sk.arcs):
        if t == h:
            continue
        dec = try_centers({t, h}, "split", ("split", t, h, a), h, t, {a})
        if dec is not None:
            return dec
    return None


def enumerate_multiwheel_dicycles(dec: MultiwheelDecomposition) -> Iterator[Dicycle]:
    """Exactly the dicycles of the host: the rim, then every out/in spoke pair
    composed with the rim path between their endpoints (and the center link
    when the center is split).  Lifted through the embedding."""
    emb = dec.embedding
    sk = emb.skeleton
    p = dec.p
    rim_pos = {v: i for i, v in enumerate(dec.rim)}
    yield emb.lift_dicycle(dec.rim_arcs)
    center_arcs = [dec.center[3]] if dec.kind == "split" else []
    for o in dec.spokes_out:
        c_out = sk.head(o)
        for i in dec.spokes_in:
            c_in = sk.tail(i)
            seq = [o]
            j = rim_pos[c_out]
            while dec.rim[j] != c_in:
                seq.append(dec.rim_arcs[j])
                j = (j + 1) % p
            seq.append(i)
            seq.extend(center_arcs)
            yield emb.lift_dicycle(seq)


def gen_multiwheel(
    rng: random.Random,
    p: int = 3,
    split: bool = False,
    max_spokes: int = 1,
    subdivision_prob: float = 0.0,
) -> tuple[Digraph, MultiwheelDecomposition]:
    """Build a multiwheel per the definition; every rim vertex gets at least
    one spoke.  Split centers get at least two spokes on each side so the
    split shape survives smoothing."""
    if p < 3:
        raise ValueError("rim needs at least 3 vertices")
    rim = [f"c{i}" for i in range(p)]
    verts = list(rim)
    arcs: list[tuple[str, str]] = []
    rim_arcs = []
    for i in range(p):
        rim_arcs.append(len(arcs))
        arcs.append((rim[i], rim[(i + 1) % p]))
    if split:
        vm, vp = "v-", "v+"
        verts += [vm, vp]
        center_arc = len(arcs)
        arcs.append((vm, vp))
        out_src, in_dst = vp, vm
    else:
        v = "v"
        verts.append(v)
        out_src, in_dst = v, v
    spokes_out = []
    spokes_in = []
    for i in range(p):
        ell_i = rng.randint(0, max_spokes)
        k_i = rng.randint(0, max_spokes)
        if ell_i + k_i == 0:
            if rng.random() < 0.5:
                ell_i = 1
            else:
                k_i = 1
        for _ in range(ell_i):
            spokes_out.append(len(arcs))
            arcs.append((out_src, rim[i]))
        for _ in range(k_i):
            spokes_in.append(len(arcs))
            arcs.append((rim[i], in_dst))
    # strong connectivity needs both directions; split kind needs two each
    need = 2 if split else 1
    i = 0
    while len(spokes_out) < need:
        spokes_out.append(len(arcs))
        arcs.append((out_src, rim[i % p]))
        i += 1
    while len(spokes_in) < need:
        spokes_in.append(len(arcs))
        arcs.append((rim[i % p], in_dst))
        i += 1

    skeleton = Digraph(verts, arcs)
    plan = {
        a: rng.randint(1, 2)
        for a in range(skeleton.m)
        if rng.random() < subdivision_prob
    }
    emb = subdivision_embedding(skeleton, plan)
    center_field = ("split", vm, vp, center_arc) if split else ("plain", v)
    dec = MultiwheelDecomposition(
        embedding=emb,
        kind="split" if split else "plain",
        rim=tuple(rim),
        rim_arcs=tuple(rim_arcs),
        center=center_field,
        spokes_out=tuple(spokes_out),
        spokes_in=tuple(spokes_in),
    )
    return emb.host, dec

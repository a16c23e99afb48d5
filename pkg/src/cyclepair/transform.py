"""Graph rewrites that preserve the disjoint-cycle-pair verdict.

`smooth_1_1` removes subdivision vertices (in-degree 1, out-degree 1, no
loop) by merging their two arcs; `subdivide` is its inverse; `reduce_contract`
contracts arcs that are the unique out-arc at their tail or the unique in-arc
at their head, yielding the quotient plus its display (what every quotient
vertex stands for in the original).
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, Vertex


def smooth_1_1(d: Digraph) -> tuple[Digraph, dict[int, tuple[int, ...]]]:
    """Suppress vertices with in-degree 1 and out-degree 1 (and no loop).

    Repeats to a fixpoint.  Returns the smoothed digraph plus a map from each
    smoothed arc id to the path of original arc ids it represents; cycles in
    the smoothed graph lift back through this map.  A dicycle consisting
    entirely of such vertices collapses to a single looped vertex, which is
    retained.
    """
    # working arc list: (tail, head, original arc path)
    arcs: list[tuple[Vertex, Vertex, tuple[int, ...]]] = [
        (t, h, (a,)) for a, (t, h) in enumerate(d.arcs)
    ]
    verts = list(d.verts)
    changed = True
    while changed:
        changed = False
        indeg: dict[Vertex, list[int]] = {v: [] for v in verts}
        outdeg: dict[Vertex, list[int]] = {v: [] for v in verts}
        for i, (t, h, _) in enumerate(arcs):
            outdeg[t].append(i)
            indeg[h].append(i)
        for v in verts:
            if len(indeg[v]) == 1 and len(outdeg[v]) == 1:
                ia, oa = indeg[v][0], outdeg[v][0]
                if ia == oa:
                    continue  # loop at v: retained
                t_in, _, path_in = arcs[ia]
                _, h_out, path_out = arcs[oa]
                merged = (t_in, h_out, path_in + path_out)
                keep = [arcs[i] for i in range(len(arcs)) if i not in (ia, oa)]
                lo = min(ia, oa)
                keep.insert(lo, merged)
                arcs = keep
                verts = [w for w in verts if w != v]
                changed = True
                break
    out = Digraph(verts, [(t, h) for t, h, _ in arcs])
    mapping = {i: path for i, (_, _, path) in enumerate(arcs)}
    return out, mapping


def lift_arc_seq(arc_ids, mapping: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    """Expand a smoothed-level arc sequence into host-level arcs."""
    out: list[int] = []
    for a in arc_ids:
        out.extend(mapping[a])
    return tuple(out)


def lift_arc_seq_undirected(d_host: Digraph, arc_ids, mapping) -> tuple[int, ...]:
    """Expand an arc sequence traversed as an undirected walk.

    Each smoothed arc's path is written forward; when the walk traverses the
    arc against its orientation the path is reversed so consecutive host arcs
    still share endpoints.
    """
    segs = [mapping[a] for a in arc_ids]
    if len(segs) == 1:
        return tuple(segs[0])
    out: list[int] = []
    k = len(segs)
    for i, seg in enumerate(segs):
        nxt = segs[(i + 1) % k]
        nxt_ends = {d_host.tail(nxt[0]), d_host.head(nxt[-1])}
        # orient seg so its written end touches the next segment
        if d_host.head(seg[-1]) in nxt_ends:
            out.extend(seg)
        elif d_host.tail(seg[0]) in nxt_ends:
            out.extend(reversed(seg))
        else:
            raise ValueError("undirected lift: segments do not chain")
    return tuple(out)


def subdivide(d: Digraph, plan: dict[int, int], name_hint: str = "s") -> tuple[Digraph, dict[int, tuple[int, ...]]]:
    """Subdivide arc `a` into plan[a]+1 arcs by inserting plan[a] fresh vertices.

    Returns the subdivided host plus a map old arc id -> host arc path, i.e.
    exactly the shape smooth_1_1 would return going the other way.
    """
    existing = set(d.verts)
    verts = list(d.verts)
    fresh_count = 0

    def fresh() -> str:
        nonlocal fresh_count
        while True:
            cand = f"{name_hint}{fresh_count}"
            fresh_count += 1
            if cand not in existing:
                existing.add(cand)
                return cand

    host_arcs: list[tuple[Vertex, Vertex]] = []
    mapping: dict[int, tuple[int, ...]] = {}
    for a, (t, h) in enumerate(d.arcs):
        k = plan.get(a, 0)
        if k <= 0:
            mapping[a] = (len(host_arcs),)
            host_arcs.append((t, h))
            continue
        mids = [fresh() for _ in range(k)]
        verts.extend(mids)
        chain = [t] + mids + [h]
        ids = []
        for i in range(len(chain) - 1):
            ids.append(len(host_arcs))
            host_arcs.append((chain[i], chain[i + 1]))
        mapping[a] = tuple(ids)
    return Digraph(verts, host_arcs), mapping


@dataclass(frozen=True)
class Display:
    """Quotient of arc contraction plus what each quotient vertex represents."""

    reduced: Digraph
    members: dict[Vertex, tuple[frozenset, frozenset]]  # new vid -> (orig verts, orig arc ids)
    arc_origin: tuple[int, ...]  # reduced arc id -> original arc id


def reduce_contract(d: Digraph) -> Display:
    """Contract arcs that are the unique out-arc at their tail or unique in-arc
    at their head, as long as possible (quotient loops are never contracted).

    Precondition: d strongly connected with no vertex of both in- and
    out-degree 1.  The result is unique up to labels; arcs are processed in
    ascending id order for determinism.
    """
    from .digraph import is_strongly_connected

    if not is_strongly_connected(d):
        raise ValueError("reduce_contract needs a strongly connected digraph")
    for v in d.verts:
        if d.in_degree(v) == 1 and d.out_degree(v) == 1 and (d.arcs[d.in_arcs(v)[0]][0] != v):
            raise ValueError(f"vertex {v!r} has in- and out-degree 1; smooth first")

    # union-find over vertices
    parent = {v: v for v in d.verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    contracted: set[int] = set()
    while True:
        # degrees of current classes over surviving arcs (quotient loops count)
        outdeg: dict[Vertex, int] = {}
        indeg: dict[Vertex, int] = {}
        for a, (t, h) in enumerate(d.arcs):
            if a in contracted:
                continue
            outdeg[find(t)] = outdeg.get(find(t), 0) + 1
            indeg[find(h)] = indeg.get(find(h), 0) + 1
        pick = None
        for a, (t, h) in enumerate(d.arcs):
            if a in contracted:
                continue
            rt, rh = find(t), find(h)
            if rt == rh:
                continue  # quotient loop
            if outdeg[rt] == 1 or indeg[rh] == 1:
                pick = (a, rt, rh)
                break
        if pick is None:
            break
        a, rt, rh = pick
        contracted.add(a)
        # union: root at the class whose least original index is smaller
        ka = min(d.index(v) for v in d.verts if find(v) == rt)
        kb = min(d.index(v) for v in d.verts if find(v) == rh)
        if ka <= kb:
            parent[rh] = rt
        else:
            parent[rt] = rh

    # assemble members named by their least original vertex
    groups: dict[Vertex, list[Vertex]] = {}
    for v in d.verts:
        groups.setdefault(find(v), []).append(v)
    name_of: dict[Vertex, Vertex] = {}
    for root, vs in groups.items():
        name_of[root] = min(vs, key=d.index)
    member_arcs: dict[Vertex, set[int]] = {name_of[r]: set() for r in groups}
    for a in contracted:
        member_arcs[name_of[find(d.tail(a))]].add(a)
    new_verts = sorted((name_of[r] for r in groups), key=d.index)
    arc_origin = [a for a in range(d.m) if a not in contracted]
    reduced = Digraph(
        new_verts,
        [(name_of[find(d.tail(a))], name_of[find(d.head(a))]) for a in arc_origin],
    )
    members = {
        name_of[r]: (frozenset(vs), frozenset(member_arcs[name_of[r]]))
        for r, vs in groups.items()
    }
    return Display(reduced, members, tuple(arc_origin))


def member_as_dipath(d: Digraph, verts: frozenset, arcs: frozenset) -> list[Vertex] | None:
    """If the member's arcs form a directed path covering its vertices, return
    the vertex sequence, else None."""
    if not arcs:
        return list(verts) if len(verts) == 1 else None
    if len(arcs) != len(verts) - 1:
        return None
    outd: dict[Vertex, int] = {v: 0 for v in verts}
    ind: dict[Vertex, int] = {v: 0 for v in verts}
    nxt: dict[Vertex, Vertex] = {}
    for a in arcs:
        t, h = d.arcs[a]
        if t not in outd or h not in ind:
            return None
        outd[t] += 1
        ind[h] += 1
        nxt[t] = h
    starts = [v for v in verts if ind[v] == 0]
    if len(starts) != 1 or any(outd[v] > 1 or ind[v] > 1 for v in verts):
        return None
    seq = [starts[0]]
    while seq[-1] in nxt:
        seq.append(nxt[seq[-1]])
    return seq if len(seq) == len(verts) else None


def display_member_split(
    d: Digraph, verts: frozenset, arcs: frozenset
) -> tuple[frozenset, frozenset, int | None] | None:
    """Check the display-member shape: an in-tree and an out-tree which share
    only their root, or are disjoint and joined by one root-to-root arc, with
    every external out-arc leaving the out-tree and every external in-arc
    entering the in-tree.  Returns (in-tree verts, out-tree verts, joining arc
    or None), or None if no decomposition exists."""
    ext_out = {v for v in verts for a in d.out_arcs(v) if a not in arcs}
    ext_in = {v for v in verts for a in d.in_arcs(v) if a not in arcs}

    def reach_within(sources, arc_set, forward):
        seen = set(sources)
        queue = list(sources)
        while queue:
            v = queue.pop()
            for a in arc_set:
                t, h = d.arcs[a]
                w = None
                if forward and t == v:
                    w = h
                elif not forward and h == v:
                    w = t
                if w is not None and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def is_in_tree(tree_verts, arc_sub, root):
        # arcs oriented toward root: every non-root has exactly one out-arc in sub
        if len(arc_sub) != len(tree_verts) - 1:
            return False
        outc = {v: 0 for v in tree_verts}
        for a in arc_sub:
            t, h = d.arcs[a]
            if t not in tree_verts or h not in tree_verts:
                return False
            outc[t] += 1
        if outc[root] != 0 or any(outc[v] != 1 for v in tree_verts if v != root):
            return False
        return reach_within([root], arc_sub, forward=False) == tree_verts

    def is_out_tree(tree_verts, arc_sub, root):
        if len(arc_sub) != len(tree_verts) - 1:
            return False
        inc = {v: 0 for v in tree_verts}
        for a in arc_sub:
            t, h = d.arcs[a]
            if t not in tree_verts or h not in tree_verts:
                return False
            inc[h] += 1
        if inc[root] != 0 or any(inc[v] != 1 for v in tree_verts if v != root):
            return False
        return reach_within([root], arc_sub, forward=True) == tree_verts

    def attempt(root_l, root_r, join_arc):
        inner = set(arcs) - ({join_arc} if join_arc is not None else set())
        lverts = reach_within([root_l], inner, forward=False)
        rverts = reach_within([root_r], inner, forward=True)
        if join_arc is None:
            if lverts & rverts != {root_l}:
                return None
        else:
            if lverts & rverts:
                return None
        if lverts | rverts != verts:
            return None
        l_arcs = {a for a in inner if d.tail(a) in lverts and d.head(a) in lverts}
        r_arcs = {a for a in inner if d.tail(a) in rverts and d.head(a) in rverts}
        if l_arcs | r_arcs != inner:
            return None
        if not is_in_tree(lverts, l_arcs, root_l) or not is_out_tree(rverts, r_arcs, root_r):
            return None
        if not ext_out <= rverts or not ext_in <= lverts:
            return None
        return frozenset(lverts), frozenset(rverts), join_arc

    ordered = sorted(verts, key=d.index)
    for r in ordered:
        res = attempt(r, r, None)
        if res:
            return res
    for a in sorted(arcs):
        res = attempt(d.tail(a), d.head(a), a)
        if res:
            return res
    return None

"""Trivaults: three parts, each an in-side funnelling into an out-side.

Part i has an in-side L_i (a nontrivial in-star rooted at c_i or a path ending
at c_i) and an out-side R_i (a nontrivial out-star rooted at b_i or a path
starting at b_i), joined by a single arc c_i -> b_i or by identifying the two
roots.  Arcs between parts always run from an R to an L, with mandatory
minimums depending on the two shapes.  Every dicycle threads whole parts
through their roots, so the cubic list of arc tuples enumerates all of them.

Niche types certify yes-instances: (a) a crossing pair between a path R and a
path L, (b) a path R with an attachment to the third part followed by two
later exits to one L, (c) the mirror image on a path L.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from ..cycles import Dicycle
from ..digraph import Digraph, Vertex, is_strongly_connected
from .embedding import Embedding, smoothing_embedding, subdivision_embedding, verify_embedding

STAR = "star"
PATH = "path"


@dataclass(frozen=True)
class TrivaultPart:
    r_kind: str  # STAR | PATH
    r_verts: tuple[Vertex, ...]  # star: (b, leaves...); path: b .. x
    r_arcs: tuple[int, ...]  # star: one arc per leaf, in r_verts order; path: chain
    l_kind: str
    l_verts: tuple[Vertex, ...]  # star: (c, leaves...); path: y .. c
    l_arcs: tuple[int, ...]
    junction_arc: int | None  # None means b and c are the same vertex

    @property
    def b(self) -> Vertex:
        return self.r_verts[0]

    @property
    def c(self) -> Vertex:
        return self.l_verts[0] if self.l_kind == STAR else self.l_verts[-1]

    @property
    def x(self) -> Vertex:
        return self.r_verts[-1] if self.r_kind == PATH else self.r_verts[0]

    @property
    def y(self) -> Vertex:
        return self.l_verts[0]

    def r_set(self) -> set:
        return set(self.r_verts)

    def l_set(self) -> set:
        return set(self.l_verts)


@dataclass(frozen=True)
class TrivaultDecomposition:
    embedding: Embedding
    parts: tuple[TrivaultPart, TrivaultPart, TrivaultPart]


@dataclass(frozen=True)
class TrivaultNiche:
    kind: str  # "crossing" | "late-exit" | "early-entry"
    i: int
    j: int
    arcs: tuple[int, ...]  # witnesses: the crossing pair or the two counted arcs


def _r_pos(part: TrivaultPart) -> dict:
    return {v: k for k, v in enumerate(part.r_verts)}


def _l_pos(part: TrivaultPart) -> dict:
    # path L is stored y .. c; star L has no order
    return {v: k for k, v in enumerate(part.l_verts)}


def _inter_arcs(sk: Digraph, parts) -> dict[tuple[int, int], list[int]] | None:
    """Classify every non-internal skeleton arc as R_i -> L_j, or fail."""
    internal: set[int] = set()
    for part in parts:
        internal.update(part.r_arcs)
        internal.update(part.l_arcs)
        if part.junction_arc is not None:
            internal.add(part.junction_arc)
    r_of: dict[Vertex, int] = {}
    l_of: dict[Vertex, int] = {}
    for i, part in enumerate(parts):
        for v in part.r_set():
            r_of[v] = i
        for v in part.l_set():
            l_of[v] = i
    out: dict[tuple[int, int], list[int]] = {
        (i, j): [] for i in range(3) for j in range(3) if i != j
    }
    for a, (t, h) in enumerate(sk.arcs):
        if a in internal:
            continue
        i = r_of.get(t)
        j = l_of.get(h)
        if i is None or j is None or i == j:
            return None
        out[(i, j)].append(a)
    return out


def verify_trivault(host: Digraph, dec: TrivaultDecomposition) -> bool:
    emb = dec.embedding
    if emb.host != host or not verify_embedding(emb):
        return False
    sk = emb.skeleton
    parts = dec.parts
    if len(parts) != 3:
        return False
    # parts cover the vertex set; L and R of one part overlap only at an
    # identified junction; different parts are disjoint
    all_claimed: list[Vertex] = []
    for part in parts:
        r, l = part.r_set(), part.l_set()
        shared = r & l
        if part.junction_arc is None:
            if shared != {part.b} or part.b != part.c:
                return False
        else:
            if shared:
                return False
            if sk.arcs[part.junction_arc] != (part.c, part.b):
                return False
        all_claimed.extend(r | l)
    if len(all_claimed) != len(set(all_claimed)) or set(all_claimed) != set(sk.verts):
        return False
    # internal shapes
    for part in parts:
        if part.r_kind == STAR:
            if len(part.r_verts) < 2:
                return False
            if len(part.r_arcs) != len(part.r_verts) - 1:
                return False
            for k, a in enumerate(part.r_arcs):
                if sk.arcs[a] != (part.b, part.r_verts[k + 1]):
                    return False
        elif part.r_kind == PATH:
            if len(part.r_arcs) != len(part.r_verts) - 1:
                return False
            for k, a in enumerate(part.r_arcs):
                if sk.arcs[a] != (part.r_verts[k], part.r_verts[k + 1]):
                    return False
        else:
            return False
        if part.l_kind == STAR:
            if len(part.l_verts) < 2:
                return False
            if len(part.l_arcs) != len(part.l_verts) - 1:
                return False
            for k, a in enumerate(part.l_arcs):
                if sk.arcs[a] != (part.l_verts[k + 1], part.c):
                    return False
        elif part.l_kind == PATH:
            if len(part.l_arcs) != len(part.l_verts) - 1:
                return False
            for k, a in enumerate(part.l_arcs):
                if sk.arcs[a] != (part.l_verts[k], part.l_verts[k + 1]):
                    return False
        else:
            return False
    inter = _inter_arcs(sk, parts)
    if inter is None:
        return False
    # per-pair rules
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            ri, lj = parts[i], parts[j]
            arcs = inter[(i, j)]
            if ri.r_kind == STAR and lj.l_kind == STAR:
                leaves_r = set(ri.r_verts[1:])
                leaves_l = set(lj.l_verts[1:])
                per_leaf: dict[Vertex, int] = {v: 0 for v in leaves_r}
                per_lleaf: dict[Vertex, int] = {v: 0 for v in leaves_l}
                for a in arcs:
                    t, h = sk.arcs[a]
                    if t in leaves_r:
                        if h != lj.c:
                            return False
                        per_leaf[t] += 1
                    elif t == ri.b:
                        if h in leaves_l:
                            per_lleaf[h] += 1
                        elif h != lj.c:
                            return False
                    else:
                        return False
                if any(k != 1 for k in per_leaf.values()):
                    return False
                if any(k != 1 for k in per_lleaf.values()):
                    return False
            elif ri.r_kind == STAR and lj.l_kind == PATH:
                leaves_r = set(ri.r_verts[1:])
                lpos = _l_pos(lj)
                targets = {sk.head(a) for a in arcs if sk.tail(a) in leaves_r}
                if len(targets) != 1:
                    return False
                v = next(iter(targets))
                per_leaf = {w: 0 for w in leaves_r}
                got_to_y = False
                for a in arcs:
                    t, h = sk.arcs[a]
                    if t in leaves_r:
                        if h != v:
                            return False
                        per_leaf[t] += 1
                    elif t == ri.b:
                        if lpos[h] > lpos[v]:
                            return False
                        if h == lj.y:
                            got_to_y = True
                    else:
                        return False
                if any(k != 1 for k in per_leaf.values()) or not got_to_y:
                    return False
            elif ri.r_kind == PATH and lj.l_kind == STAR:
                leaves_l = set(lj.l_verts[1:])
                rpos = _r_pos(ri)
                sources = {sk.tail(a) for a in arcs if sk.head(a) in leaves_l}
                if len(sources) != 1:
                    return False
                v = next(iter(sources))
                per_lleaf = {w: 0 for w in leaves_l}
                got_from_x = False
                for a in arcs:
                    t, h = sk.arcs[a]
                    if h in leaves_l:
                        if t != v:
                            return False
                        per_lleaf[h] += 1
                    elif h == lj.c:
                        if rpos[t] < rpos[v]:
                            return False
                        if t == ri.x:
                            got_from_x = True
                    else:
                        return False
                if any(k != 1 for k in per_lleaf.values()) or not got_from_x:
                    return False
            else:  # path / path
                if not any(sk.tail(a) == ri.x for a in arcs):
                    return False
                if not any(sk.head(a) == lj.y for a in arcs):
                    return False
    return True


def trivault_niche(dec: TrivaultDecomposition) -> TrivaultNiche | None:
    sk = dec.embedding.skeleton
    parts = dec.parts
    inter = _inter_arcs(sk, parts)
    assert inter is not None
    # (a) crossing between a path R_i and a path L_j
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            ri, lj = parts[i], parts[j]
            if ri.r_kind != PATH or lj.l_kind != PATH:
                continue
            rpos, lpos = _r_pos(ri), _l_pos(lj)
            arcs = sorted(
                inter[(i, j)], key=lambda a: (rpos[sk.tail(a)], lpos[sk.head(a)], a)
            )
            for x in range(len(arcs)):
                for y in range(x + 1, len(arcs)):
                    p, q = rpos[sk.tail(arcs[x])], lpos[sk.head(arcs[x])]
                    r, s = rpos[sk.tail(arcs[y])], lpos[sk.head(arcs[y])]
                    if p < r and q > s:
                        return TrivaultNiche("crossing", i, j, (arcs[x], arcs[y]))
    # (b) path R_i: an attachment into L_k followed by >= 2 exits to L_j
    for i in range(3):
        ri = parts[i]
        if ri.r_kind != PATH:
            continue
        rpos = _r_pos(ri)
        for j in range(3):
            for k in range(3):
                if len({i, j, k}) != 3:
                    continue
                to_j = inter[(i, j)]
                for a in inter[(i, k)]:
                    x = sk.tail(a)
                    late = [b for b in to_j if rpos[sk.tail(b)] > rpos[x]]
                    if len(late) >= 2:
                        return TrivaultNiche("late-exit", i, j, tuple(sorted(late)[:2]))
    # (c) path L_i: an attachment from R_k preceded by >= 2 entries from R_j
    for i in range(3):
        li = parts[i]
        if li.l_kind != PATH:
            continue
        lpos = _l_pos(li)
        for j in range(3):
            for k in range(3):
                if len({i, j, k}) != 3:
                    continue
                from_j = inter[(j, i)]
                for a in inter[(k, i)]:
                    y = sk.head(a)
                    early = [b for b in from_j if lpos[sk.head(b)] < lpos[y]]
                    if len(early) >= 2:
                        return TrivaultNiche("early-entry", i, j, tuple(sorted(early)[:2]))
    return None


def _path_within_part(sk: Digraph, part: TrivaultPart, entry: Vertex, exit_: Vertex) -> list[int]:
    """The unique dipath inside a part from an entry on its L side to an exit
    on its R side (through the junction)."""
    arcs: list[int] = []
    if part.l_kind == STAR:
        if entry != part.c:
            k = part.l_verts.index(entry)
            arcs.append(part.l_arcs[k - 1])
    else:
        lpos = _l_pos(part)
        arcs.extend(part.l_arcs[lpos[entry]:])
    if part.junction_arc is not None:
        arcs.append(part.junction_arc)
    if part.r_kind == STAR:
        if exit_ != part.b:
            k = part.r_verts.index(exit_)
            arcs.append(part.r_arcs[k - 1])
    else:
        rpos = _r_pos(part)
        arcs.extend(part.r_arcs[:rpos[exit_]])
    return arcs


def enumerate_trivault_dicycles(dec: TrivaultDecomposition) -> Iterator[Dicycle]:
    """Exactly the dicycles of the host: a two-part tour between parts i < j,
    or a three-part tour in one of the two cyclic orders; each tour crosses
    parts on one inter-arc per hop and threads the unique internal paths."""
    sk = dec.embedding.skeleton
    emb = dec.embedding
    parts = dec.parts
    inter = _inter_arcs(sk, parts)
    assert inter is not None
    for i in range(3):
        for j in range(i + 1, 3):
            for a1 in inter[(i, j)]:
                for a2 in inter[(j, i)]:
                    seq = [a1]
                    seq += _path_within_part(sk, parts[j], sk.head(a1), sk.tail(a2))
                    seq.append(a2)
                    seq += _path_within_part(sk, parts[i], sk.head(a2), sk.tail(a1))
                    yield emb.lift_dicycle(seq)
    for order in ((0, 1, 2), (0, 2, 1)):
        i, j, k = order
        for a1 in inter[(i, j)]:
            for a2 in inter[(j, k)]:
                for a3 in inter[(k, i)]:
                    seq = [a1]
                    seq += _path_within_part(sk, parts[j], sk.head(a1), sk.tail(a2))
                    seq.append(a2)
                    seq += _path_within_part(sk, parts[k], sk.head(a2), sk.tail(a3))
                    seq.append(a3)
                    seq += _path_within_part(sk, parts[i], sk.head(a3), sk.tail(a1))
                    yield emb.lift_dicycle(seq)


def _grow_r(sk: Digraph, b: Vertex, blocked: set) -> set:
    """R side from its root: add vertices all of whose in-arcs come from the
    grown set (inter-part arcs only ever enter L sides)."""
    grown = {b}
    changed = True
    while changed:
        changed = False
        for v in sk.verts:
            if v in grown or v in blocked:
                continue
            ins = sk.in_arcs(v)
            if ins and all(sk.tail(a) in grown for a in ins):
                grown.add(v)
                changed = True
    return grown


def _grow_l(sk: Digraph, c: Vertex, blocked: set) -> set:
    grown = {c}
    changed = True
    while changed:
        changed = False
        for v in sk.verts:
            if v in grown or v in blocked:
                continue
            outs = sk.out_arcs(v)
            if outs and all(sk.head(a) in grown for a in outs):
                grown.add(v)
                changed = True
    return grown


def _shape_candidates(sk: Digraph, verts: set, root: Vertex, out_side: bool):
    """Orderings of a part as star and/or path; ambiguity only at size 2."""
    res = []
    n = len(verts)
    if n == 1:
        res.append((PATH, (root,), ()))
        return res
    inner = []
    for a, (t, h) in enumerate(sk.arcs):
        if t in verts and h in verts:
            inner.append(a)
    if len(inner) != n - 1:
        return res
    if out_side:
        star_ok = all(sk.tail(a) == root for a in inner)
        if star_ok:
            leaves = sorted((sk.head(a) for a in inner), key=sk.index)
            arcs = []
            for w in leaves:
                arcs.append(next(a for a in inner if sk.head(a) == w))
            res.append((STAR, (root, *leaves), tuple(arcs)))
        # path: chain from root
        nxt = {sk.tail(a): (a, sk.head(a)) for a in inner}
        seq_v, seq_a, cur = [root], [], root
        while cur in nxt:
            a, cur2 = nxt[cur]
            seq_a.append(a)
            seq_v.append(cur2)
            cur = cur2
        if len(seq_v) == n and len(set(seq_v)) == n and len(nxt) == n - 1:
            res.append((PATH, tuple(seq_v), tuple(seq_a)))
    else:
        star_ok = all(sk.head(a) == root for a in inner)
        if star_ok:
            leaves = sorted((sk.tail(a) for a in inner), key=sk.index)
            arcs = []
            for w in leaves:
                arcs.append(next(a for a in inner if sk.tail(a) == w))
            res.append((STAR, (root, *leaves), tuple(arcs)))
        prv = {sk.head(a): (a, sk.tail(a)) for a in inner}
        seq_v, seq_a, cur = [root], [], root
        while cur in prv:
            a, cur2 = prv[cur]
            seq_a.append(a)
            seq_v.append(cur2)
            cur = cur2
        if len(seq_v) == n and len(set(seq_v)) == n and len(prv) == n - 1:
            res.append((PATH, tuple(reversed(seq_v)), tuple(reversed(seq_a))))
    return res


def recognize_trivault(host: Digraph) -> tuple[TrivaultDecomposition | None, TrivaultNiche | None]:
    """Decompose the host as a subdivision of a trivault.

    Junction candidates are identified vertices and arcs out of out-degree-1
    vertices (an L root's only out-arc is its junction); parts grow from the
    junctions by closure and the verifier arbitrates.  Prefers a niche-free
    decomposition when several parses verify.
    """
    if host.n == 0 or not is_strongly_connected(host):
        return None, None
    emb = smoothing_embedding(host)
    sk = emb.skeleton
    if sk.n < 3:
        return None, None
    if any(t == h for t, h in sk.arcs):
        return None, None

    juncs: list[tuple[Vertex, Vertex, int | None]] = []  # (c, b, junction arc)
    for v in sk.verts:
        juncs.append((v, v, None))
    for a, (t, h) in enumerate(sk.arcs):
        if sk.out_degree(t) == 1:
            juncs.append((t, h, a))

    from itertools import combinations

    found: list[TrivaultDecomposition] = []
    for triple in combinations(range(len(juncs)), 3):
        picks = [juncs[t] for t in triple]
        anchor = set()
        ok = True
        for c, b, _ in picks:
            if c in anchor or (b != c and b in anchor):
                ok = False
                break
            anchor.add(c)
            anchor.add(b)
        if not ok:
            continue
        dec = _attempt_parts(host, emb, sk, picks)
        if dec is not None:
            found.append(dec)
            if trivault_niche(dec) is None:
                return dec, None
    if found:
        dec = found[0]
        return dec, trivault_niche(dec)
    return None, None


def _attempt_parts(host, emb, sk, picks) -> TrivaultDecomposition | None:
    blocked = set()
    for c, b, _ in picks:
        blocked.add(c)
        blocked.add(b)
    r_sets = []
    l_sets = []
    for c, b, _ in picks:
        r = _grow_r(sk, b, blocked - {b})
        l = _grow_l(sk, c, blocked - {c})
        r_sets.append(r)
        l_sets.append(l)
    for idx, (c, b, _) in enumerate(picks):
        overlap = r_sets[idx] & l_sets[idx]
        if b == c:
            if overlap != {b}:
                return None
        elif overlap:
            return None
    counts: dict = {}
    for idx in range(3):
        for v in r_sets[idx] | l_sets[idx]:
            counts[v] = counts.get(v, 0) + 1
    if any(k > 1 for k in counts.values()) or set(counts) != set(sk.verts):
        return None

    per_part_options = []
    for idx, (c, b, ja) in enumerate(picks):
        r_opts = _shape_candidates(sk, r_sets[idx], b, out_side=True)
        l_opts = _shape_candidates(sk, l_sets[idx], c, out_side=False)
        opts = []
        for rk, rv, ra in r_opts:
            for lk, lv, la in l_opts:
                opts.append(TrivaultPart(rk, rv, ra, lk, lv, la, ja))
        if not opts:
            return None
        per_part_options.append(opts)

    from itertools import product

    best = None
    for combo in product(*per_part_options):
        dec = TrivaultDecomposition(embedding=emb, parts=tuple(combo))
        if verify_trivault(host, dec):
            if trivault_niche(dec) is None:
                return dec
            if best is None:
                best = dec
    return best


def gen_trivault(
    rng: random.Random,
    sizes: tuple | None = None,
    plant_niche: bool = False,
    subdivision_prob: float = 0.0,
    extra_arcs: int = 0,
) -> tuple[Digraph, TrivaultDecomposition]:
    """Build a trivault: shapes and sizes random unless given.

    Path parts attach to other parts only at their tips (last R vertex out,
    first L vertex in), which provably avoids all three niche shapes; a
    planted niche adds one crossing pair between a path R and a path L.
    `extra_arcs` sprinkles extra root-to-root arcs where the rules allow any
    number.
    """
    shapes = []
    for i in range(3):
        if sizes is not None:
            shapes.append(sizes[i])
            continue
        rk = rng.choice([STAR, PATH])
        lk = rng.choice([STAR, PATH])
        rn = rng.randint(2, 3) if rk == STAR else rng.randint(1, 3)
        ln = rng.randint(2, 3) if lk == STAR else rng.randint(1, 3)
        shapes.append((rk, rn, lk, ln))
    if plant_niche:
        rk, rn, lk, ln = shapes[0]
        shapes[0] = (PATH, max(rn, 2), lk, ln)
        rk, rn, lk, ln = shapes[1]
        shapes[1] = (rk, rn, PATH, max(ln, 2))

    verts: list[str] = []
    arcs: list[tuple[str, str]] = []
    parts_raw = []
    for i, (rk, rn, lk, ln) in enumerate(shapes):
        identify = rng.random() < 0.5
        if lk == STAR:
            c = f"t{i}c"
            l_verts = (c,) + tuple(f"t{i}l{k}" for k in range(ln - 1))
        else:
            l_verts = tuple(f"t{i}l{k}" for k in range(ln - 1)) + (f"t{i}c",)
            c = l_verts[-1]
        if identify:
            b = c
            r_rest = tuple(f"t{i}r{k}" for k in range(rn - 1))
        else:
            b = f"t{i}b"
            r_rest = tuple(f"t{i}r{k}" for k in range(rn - 1))
        r_verts = (b,) + r_rest
        for v in l_verts:
            if v not in verts:
                verts.append(v)
        for v in r_verts:
            if v not in verts:
                verts.append(v)
        l_arcs = []
        if lk == STAR:
            for w in l_verts[1:]:
                l_arcs.append(len(arcs))
                arcs.append((w, c))
        else:
            for k in range(len(l_verts) - 1):
                l_arcs.append(len(arcs))
                arcs.append((l_verts[k], l_verts[k + 1]))
        r_arcs = []
        if rk == STAR:
            for w in r_verts[1:]:
                r_arcs.append(len(arcs))
                arcs.append((b, w))
        else:
            for k in range(len(r_verts) - 1):
                r_arcs.append(len(arcs))
                arcs.append((r_verts[k], r_verts[k + 1]))
        if identify:
            ja = None
        else:
            ja = len(arcs)
            arcs.append((c, b))
        parts_raw.append((rk, r_verts, tuple(r_arcs), lk, l_verts, tuple(l_arcs), ja))

    def part(i):
        return parts_raw[i]

    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            rk, rv, _, _, _, _, _ = part(i)
            _, _, _, lk, lv, _, _ = part(j)
            b_i, x_i = rv[0], rv[-1]
            if lk == STAR:
                c_j = lv[0]
                l_leaves = lv[1:]
                y_j = lv[0]
            else:
                c_j = lv[-1]
                l_leaves = ()
                y_j = lv[0]
            if rk == STAR and lk == STAR:
                for w in rv[1:]:
                    arcs.append((w, c_j))
                for w in l_leaves:
                    arcs.append((b_i, w))
                for _ in range(rng.randint(0, extra_arcs)):
                    arcs.append((b_i, c_j))
            elif rk == STAR and lk == PATH:
                # select v = y_j so every entry hits the path tip
                for w in rv[1:]:
                    arcs.append((w, y_j))
                arcs.append((b_i, y_j))
            elif rk == PATH and lk == STAR:
                for w in l_leaves:
                    arcs.append((x_i, w))
                arcs.append((x_i, c_j))
            else:
                arcs.append((x_i, y_j))
    if plant_niche:
        rv = parts_raw[0][1]
        lv = parts_raw[1][4]
        # crossing pair between path R_0 and path L_1
        arcs.append((rv[0], lv[-1]))
        arcs.append((rv[-1], lv[0]))

    skeleton = Digraph(verts, arcs)
    plan = {
        a: 1 for a in range(skeleton.m) if rng.random() < subdivision_prob
    }
    emb = subdivision_embedding(skeleton, plan)
    parts = tuple(
        TrivaultPart(rk, rv, ra, lk, lv, la, ja)
        for rk, rv, ra, lk, lv, la, ja in parts_raw
    )
    dec = TrivaultDecomposition(embedding=emb, parts=parts)
    return emb.host, dec

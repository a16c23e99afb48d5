"""Vaults: an odd ring of walls joined by cross links and single central links.

A vault has an odd number ell >= 5 of vertex-disjoint directed paths (walls)
P_0..P_{ell-1}.  Wall i carries marks a_i (start), b_i, c_i, d_i (end) with
b_i c_i a wall arc or b_i = c_i at an end of the wall.  For every i there is
at least one cross arc from P_i[c_i, d_i] to P_{i+1}[a_{i+1}, b_{i+1}] and
exactly one central arc d_i -> a_{i+2} (indices mod ell).  A niche is a pair
of cross arcs of one gap that cross: tails ordered one way, heads the other;
it yields an explicit certificate pair.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..cycles import Certificate
from ..digraph import Digraph, Vertex, is_strongly_connected
from ..transform import member_as_dipath, reduce_contract
from .embedding import Embedding, smoothing_embedding, subdivision_embedding, verify_embedding


@dataclass(frozen=True)
class VaultDecomposition:
    embedding: Embedding
    walls: tuple[tuple[Vertex, ...], ...]  # skeleton vertex sequences
    wall_arcs: tuple[tuple[int, ...], ...]  # skeleton arcs along each wall
    b_pos: tuple[int, ...]
    c_pos: tuple[int, ...]
    cross: tuple[tuple[int, ...], ...]  # per gap i: skeleton arcs wall i -> wall i+1
    central: tuple[int, ...]  # per gap i: the skeleton arc d_i -> a_{i+2}

    @property
    def ell(self) -> int:
        return len(self.walls)


@dataclass(frozen=True)
class VaultNiche:
    gap: int
    arc_pq: int  # earlier tail, later head
    arc_rs: int  # later tail, earlier head


def _positions(dec: VaultDecomposition) -> dict[Vertex, tuple[int, int]]:
    pos = {}
    for i, wall in enumerate(dec.walls):
        for j, v in enumerate(wall):
            pos[v] = (i, j)
    return pos


def verify_vault(host: Digraph, dec: VaultDecomposition) -> bool:
    """Every clause of the definition, plus exact coverage via the embedding."""
    emb = dec.embedding
    if emb.host != host or not verify_embedding(emb):
        return False
    sk = emb.skeleton
    ell = dec.ell
    if ell < 5 or ell % 2 == 0:
        return False
    if not (len(dec.wall_arcs) == len(dec.b_pos) == len(dec.c_pos) == ell):
        return False
    if not (len(dec.cross) == len(dec.central) == ell):
        return False
    # walls partition the skeleton vertices and are skeleton dipaths
    seen: set[Vertex] = set()
    for i, wall in enumerate(dec.walls):
        if not wall or set(wall) & seen:
            return False
        seen.update(wall)
        arcs = dec.wall_arcs[i]
        if len(arcs) != len(wall) - 1:
            return False
        for j, a in enumerate(arcs):
            if sk.arcs[a] != (wall[j], wall[j + 1]):
                return False
    if seen != set(sk.verts):
        return False
    # marks
    for i, wall in enumerate(dec.walls):
        b, c = dec.b_pos[i], dec.c_pos[i]
        if not (0 <= b <= c <= len(wall) - 1):
            return False
        if c == b + 1:
            pass  # b_i c_i is a wall arc
        elif b == c and (b == 0 or b == len(wall) - 1):
            pass
        else:
            return False
    # arc classification is exact
    used: set[int] = set()
    for arcs in dec.wall_arcs:
        used.update(arcs)
    pos = _positions(dec)
    for i in range(ell):
        if not dec.cross[i]:
            return False
        for a in dec.cross[i]:
            if a in used:
                return False
            used.add(a)
            wi, pi = pos[sk.tail(a)]
            wh, ph = pos[sk.head(a)]
            if wi != i or wh != (i + 1) % ell:
                return False
            if pi < dec.c_pos[i] or ph > dec.b_pos[(i + 1) % ell]:
                return False
        a = dec.central[i]
        if a in used:
            return False
        used.add(a)
        if sk.tail(a) != dec.walls[i][-1] or sk.head(a) != dec.walls[(i + 2) % ell][0]:
            return False
    return len(used) == sk.m


def vault_niche(dec: VaultDecomposition) -> VaultNiche | None:
    """A crossing pair of cross arcs in some gap, or None."""
    sk = dec.embedding.skeleton
    pos = _positions(dec)
    for i in range(dec.ell):
        links = sorted(
            dec.cross[i], key=lambda a: (pos[sk.tail(a)][1], pos[sk.head(a)][1], a)
        )
        for x in range(len(links)):
            for y in range(x + 1, len(links)):
                a1, a2 = links[x], links[y]
                p, q = pos[sk.tail(a1)][1], pos[sk.head(a1)][1]
                r, s = pos[sk.tail(a2)][1], pos[sk.head(a2)][1]
                if p < r and q > s:
                    return VaultNiche(i, a1, a2)
    return None


def _wall_seg(dec: VaultDecomposition, i: int, lo: int, hi: int) -> list[int]:
    """Skeleton arcs of wall i from position lo to position hi (inclusive ends)."""
    return list(dec.wall_arcs[i][lo:hi])


def vault_niche_certificate(
    host: Digraph, dec: VaultDecomposition, niche: VaultNiche
) -> Certificate:
    """The explicit disjoint pair from a crossing: the dicycle runs through the
    crossing arc and every second wall; the undirected cycle takes the other
    arc and the remaining walls."""
    sk = dec.embedding.skeleton
    pos = _positions(dec)
    ell = dec.ell
    i = niche.gap
    p = pos[sk.tail(niche.arc_pq)][1]
    q = pos[sk.head(niche.arc_pq)][1]
    r = pos[sk.tail(niche.arc_rs)][1]
    s = pos[sk.head(niche.arc_rs)][1]
    if not (p < r and q > s):
        raise ValueError("invalid niche witness")

    j1 = (i + 1) % ell
    b_arcs: list[int] = []
    b_arcs += _wall_seg(dec, i, 0, p)  # a_i .. p
    b_arcs.append(niche.arc_pq)
    b_arcs += _wall_seg(dec, j1, q, len(dec.walls[j1]) - 1)  # q .. d_{i+1}
    b_arcs.append(dec.central[j1])
    off = 3
    while off <= ell - 2:
        w = (i + off) % ell
        b_arcs += list(dec.wall_arcs[w])
        b_arcs.append(dec.central[w])
        off += 2

    c_arcs: list[int] = []
    c_arcs += _wall_seg(dec, i, r, len(dec.walls[i]) - 1)  # r .. d_i
    c_arcs.append(dec.central[i])
    off = 2
    while off <= ell - 1:
        w = (i + off) % ell
        c_arcs += list(dec.wall_arcs[w])
        c_arcs.append(dec.central[w])
        off += 2
    c_arcs += _wall_seg(dec, j1, 0, s)  # a_{i+1} .. s
    c_arcs.append(niche.arc_rs)  # closes s back to r, against orientation

    emb = dec.embedding
    return Certificate(emb.lift_dicycle(b_arcs), emb.lift_undirected(c_arcs))


def _wall_labelings(reduced: Digraph) -> list[list[Vertex]]:
    """Cyclic wall orders consistent with cross arcs to the successor and one
    central arc to the successor's successor."""
    ell = reduced.n
    succs: dict[Vertex, set[Vertex]] = {}
    for v in reduced.verts:
        outs = {reduced.head(a) for a in reduced.out_arcs(v)}
        if v in outs:  # quotient loop: never a vault
            return []
        if len(outs) != 2:
            return []
        succs[v] = outs
    w0 = reduced.verts[0]
    results = []
    for w1 in sorted(succs[w0], key=reduced.index):
        seq = [w0, w1]
        ok = True
        for _ in range(ell - 2):
            prev2, prev1 = seq[-2], seq[-1]
            rest = succs[prev2] - {prev1}
            if len(rest) != 1:
                ok = False
                break
            seq.append(next(iter(rest)))
        if not ok or len(set(seq)) != ell:
            continue
        # closure: the ring must wrap consistently
        if succs[seq[-2]] != {seq[-1], seq[0]} or succs[seq[-1]] != {seq[0], seq[1]}:
            continue
        results.append(seq)
    return results


def recognize_vault(host: Digraph) -> VaultDecomposition | None:
    """Decompose the host as a subdivision of a vault, or return None.

    Smooth first; the arc-contraction quotient of a smoothed vault is the
    thick ring on its walls, so the quotient fixes everything and the
    verifier has the last word.  When both ring orientations verify, the
    niche-free one is preferred.
    """
    if host.n == 0 or not is_strongly_connected(host):
        return None
    emb = smoothing_embedding(host)
    sk = emb.skeleton
    if sk.n < 5:
        return None
    if any(t == h for t, h in sk.arcs):
        return None
    try:
        disp = reduce_contract(sk)
    except ValueError:
        return None
    ell = disp.reduced.n
    if ell < 5 or ell % 2 == 0:
        return None
    members = {}
    for v in disp.reduced.verts:
        verts, arcs = disp.members[v]
        path = member_as_dipath(sk, verts, arcs)
        if path is None:
            return None
        members[v] = path

    candidates = []
    for labeling in _wall_labelings(disp.reduced):
        dec = _assemble_vault(host, emb, sk, disp, members, labeling)
        if dec is not None and verify_vault(host, dec):
            candidates.append(dec)
    if not candidates:
        return None
    for dec in candidates:
        if vault_niche(dec) is None:
            return dec
    return candidates[0]


def _assemble_vault(host, emb, sk, disp, members, labeling) -> VaultDecomposition | None:
    ell = len(labeling)
    wall_of = {v: i for i, name in enumerate(labeling) for v in members[name]}
    walls = []
    wall_arcs = []
    for name in labeling:
        path = members[name]
        walls.append(tuple(path))
        arcs_set = disp.members[name][1]
        seq = []
        for j in range(len(path) - 1):
            arc = next(
                (a for a in sorted(arcs_set) if sk.arcs[a] == (path[j], path[j + 1])),
                None,
            )
            if arc is None:
                return None
            seq.append(arc)
        wall_arcs.append(tuple(seq))
    pos_in_wall = {}
    for i, wall in enumerate(walls):
        for j, v in enumerate(wall):
            pos_in_wall[v] = j

    cross: list[list[int]] = [[] for _ in range(ell)]
    central: list[int | None] = [None] * ell
    for ra in range(disp.reduced.m):
        a = disp.arc_origin[ra]
        wi = wall_of[sk.tail(a)]
        wh = wall_of[sk.head(a)]
        if wh == (wi + 1) % ell:
            cross[wi].append(a)
        elif wh == (wi + 2) % ell:
            if central[wi] is not None:
                return None
            central[wi] = a
        else:
            return None
    if any(c is None for c in central) or any(not cs for cs in cross):
        return None
    for i in range(ell):
        a = central[i]
        if sk.tail(a) != walls[i][-1] or sk.head(a) != walls[(i + 2) % ell][0]:
            return None

    b_pos = []
    c_pos = []
    for i in range(ell):
        heads_in = [pos_in_wall[sk.head(a)] for a in cross[(i - 1) % ell]]
        tails_out = [pos_in_wall[sk.tail(a)] for a in cross[i]]
        hi = max(heads_in)
        lo = min(tails_out)
        last = len(walls[i]) - 1
        if hi < lo:
            b, c = hi, hi + 1
        elif hi == lo == 0:
            b = c = 0
        elif hi == lo == last:
            b = c = last
        else:
            return None
        b_pos.append(b)
        c_pos.append(c)

    return VaultDecomposition(
        embedding=emb,
        walls=tuple(walls),
        wall_arcs=tuple(wall_arcs),
        b_pos=tuple(b_pos),
        c_pos=tuple(c_pos),
        cross=tuple(tuple(sorted(cs)) for cs in cross),
        central=tuple(central),
    )


def gen_vault(
    rng: random.Random,
    ell: int = 5,
    max_wall: int = 1,
    max_cross: int = 1,
    plant_niche: bool = False,
    subdivision_prob: float = 0.0,
) -> tuple[Digraph, VaultDecomposition]:
    """Build a vault per the definition, optionally subdivided, with an
    optional planted crossing pair; deterministic in the rng."""
    if ell < 5 or ell % 2 == 0:
        raise ValueError("a vault needs an odd wall count >= 5")
    if max_wall < 1 or max_cross < 1:
        raise ValueError("bad size parameters")
    niche_gap = rng.randrange(ell) if plant_niche else None

    lengths = [rng.randint(1, max_wall) for _ in range(ell)]
    marks = []
    for i in range(ell):
        n = lengths[i]
        if plant_niche and i == niche_gap:
            lengths[i] = n = max(n, 2)
            marks.append((0, 0))  # c = a: out-links may leave anywhere
            continue
        if plant_niche and i == (niche_gap + 1) % ell:
            lengths[i] = n = max(n, 2)
            marks.append((n - 1, n - 1))  # b = d: in-links may enter anywhere
            continue
        choices = [(0, 0), (n - 1, n - 1)] + [(b, b + 1) for b in range(n - 1)]
        marks.append(rng.choice(choices))

    verts = []
    walls = []
    for i in range(ell):
        wall = tuple(f"w{i}v{j}" for j in range(lengths[i]))
        walls.append(wall)
        verts.extend(wall)
    arcs: list[tuple[str, str]] = []
    wall_arcs = []
    for wall in walls:
        seq = []
        for j in range(len(wall) - 1):
            seq.append(len(arcs))
            arcs.append((wall[j], wall[j + 1]))
        wall_arcs.append(tuple(seq))

    cross: list[list[int]] = [[] for _ in range(ell)]
    for i in range(ell):
        nxt = (i + 1) % ell
        b_next = marks[nxt][0]
        c_here = marks[i][1]
        k = rng.randint(1, max_cross)
        tails = sorted(rng.randint(c_here, lengths[i] - 1) for _ in range(k))
        heads = sorted(rng.randint(0, b_next) for _ in range(k))
        for t, h in zip(tails, heads):
            cross[i].append(len(arcs))
            arcs.append((walls[i][t], walls[nxt][h]))
        if plant_niche and i == niche_gap:
            # crossing pair: tails strictly ordered, heads strictly reversed
            cross[i].append(len(arcs))
            arcs.append((walls[i][0], walls[nxt][b_next]))
            cross[i].append(len(arcs))
            arcs.append((walls[i][lengths[i] - 1], walls[nxt][0]))

    central = []
    for i in range(ell):
        central.append(len(arcs))
        arcs.append((walls[i][-1], walls[(i + 2) % ell][0]))

    skeleton = Digraph(verts, arcs)
    plan = {
        a: rng.randint(1, 2)
        for a in range(skeleton.m)
        if rng.random() < subdivision_prob
    }
    emb = subdivision_embedding(skeleton, plan)
    dec = VaultDecomposition(
        embedding=emb,
        walls=tuple(walls),
        wall_arcs=tuple(wall_arcs),
        b_pos=tuple(b for b, _ in marks),
        c_pos=tuple(c for _, c in marks),
        cross=tuple(tuple(cs) for cs in cross),
        central=tuple(central),
    )
    return emb.host, dec

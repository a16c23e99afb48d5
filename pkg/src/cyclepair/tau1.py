"""Deciding instances with dicycle transversal number 1.

Every dicycle passes through every transversal vertex, in one fixed order.
Splitting one transversal vertex turns the graph into a DAG whose source-sink
dipaths are exactly the dicycles; per segment between consecutive transversal
vertices a maximum family of openly disjoint paths is fixed, and a candidate
dicycle uses one path per segment, rerouted by at most one bridge switch.
Enumerating all such tuples and checking the undirected complement of each is
exact; the run time is (paths + switches)^k times a polynomial.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .cycles import (
    Certificate,
    Dicycle,
    UndirectedCycle,
    find_undirected_cycle,
    shortest_dicycle_through,
)
from .digraph import Digraph, Vertex, is_acyclic, reachable_from, strong_components
from .transversal import TauInfo

log = logging.getLogger(__name__)


class SplitOrderError(ValueError):
    """The transversal vertices were not visited in one consistent order."""


def preprocess_tau1(d: Digraph, tau: TauInfo) -> tuple[Digraph, list[int]]:
    """Drop arcs joining transversal vertices to vertices outside the core
    strong component, then strip degree-<=1 outsiders; certificates cannot use
    either.  Returns the pruned digraph and its arc-id origin map."""
    if tau.tau != 1:
        raise ValueError("preprocess_tau1 requires tau = 1")
    transversal = set(tau.one_transversals)
    nontrivial = [c for c in strong_components(d) if c.nontrivial]
    core = set().union(*(c.vertices for c in nontrivial)) if nontrivial else set()
    dead_arcs = set()
    for a, (t, h) in enumerate(d.arcs):
        if (t in transversal and h not in core) or (h in transversal and t not in core):
            dead_arcs.add(a)
    dead_verts: set[Vertex] = set()
    while True:
        deg: dict[Vertex, int] = {v: 0 for v in d.verts if v not in dead_verts}
        for a, (t, h) in enumerate(d.arcs):
            if a in dead_arcs or t in dead_verts or h in dead_verts:
                continue
            deg[t] += 1
            deg[h] += 1
        drop = next(
            (v for v in d.verts if v not in dead_verts and v not in core and deg[v] <= 1),
            None,
        )
        if drop is None:
            break
        dead_verts.add(drop)
    keep_verts = [v for v in d.verts if v not in dead_verts]
    arc_map = [
        a
        for a, (t, h) in enumerate(d.arcs)
        if a not in dead_arcs and t not in dead_verts and h not in dead_verts
    ]
    pruned = Digraph(keep_verts, [d.arcs[a] for a in arc_map])
    return pruned, arc_map


@dataclass(frozen=True)
class SplitDag:
    dag: Digraph  # arc ids equal the preprocessed graph's
    terminals: tuple  # a_out, t_1, ..., t_{k-1}, a_in
    split_vertex: Vertex
    a_out: Vertex
    a_in: Vertex

    @property
    def k(self) -> int:
        return len(self.terminals) - 1


def split_transversal(d: Digraph, tau: TauInfo) -> SplitDag:
    """Split the first transversal vertex into a source and a sink and order
    the rest along a shortest dicycle through it.

    Asserts the split is acyclic, every transversal vertex separates source
    from sink, and their reachability forms one chain; if not, raises
    SplitOrderError rather than guessing.
    """
    if tau.tau != 1:
        raise ValueError("split_transversal requires tau = 1")
    transversal = list(tau.one_transversals)
    a = min(transversal, key=d.index)
    z = shortest_dicycle_through(d, a)
    if z is None:
        raise ValueError("no dicycle through the transversal vertex")
    order = []
    for arc in z.arc_ids:
        v = d.tail(arc)
        if v in set(transversal):
            order.append(v)
    if order[0] != a:
        k = order.index(a)
        order = order[k:] + order[:k]
    if set(order) != set(transversal):
        raise SplitOrderError("a dicycle misses a transversal vertex")

    names = set(d.verts)
    a_out, a_in = f"{a}.out", f"{a}.in"
    while a_out in names or a_in in names:
        a_out += "~"
        a_in += "~"
    verts = [a_out if v == a else v for v in d.verts] + [a_in]
    arcs = []
    for t, h in d.arcs:
        t2 = a_out if t == a else t
        h2 = a_in if h == a else h
        arcs.append((t2, h2))
    dag = Digraph(verts, arcs)
    if not is_acyclic(dag):
        raise SplitOrderError("split graph is not acyclic")
    terminals = tuple([a_out] + order[1:] + [a_in])
    # each inner terminal separates source from sink
    for t in terminals[1:-1]:
        if dag.has_vertex(t) and a_in in reachable_from(dag, [a_out], forbidden={t}):
            raise SplitOrderError(f"{t!r} does not separate the split vertex")
    # reachability between terminals must follow the order
    for x in range(1, len(terminals) - 1):
        reach = reachable_from(dag, [terminals[x]])
        for y in range(1, len(terminals) - 1):
            if y > x and terminals[y] not in reach:
                raise SplitOrderError("terminal order broken (missing forward reach)")
            if y < x and terminals[y] in reach:
                raise SplitOrderError("terminal order broken (backward reach)")
    return SplitDag(dag, terminals, a, a_out, a_in)


@dataclass(frozen=True)
class SegmentPath:
    arcs: tuple[int, ...]
    verts: tuple  # includes both terminals


@dataclass(frozen=True)
class PathSystems:
    systems: tuple[tuple[SegmentPath, ...], ...]  # per segment
    cut_vertices: tuple[tuple, ...]  # per segment: Menger vertex cut
    direct_arcs: tuple[tuple[int, ...], ...]  # per segment: terminal-to-terminal arcs
    pstar_verts: frozenset

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.systems)


def _max_disjoint_paths(d: Digraph, s: Vertex, t: Vertex):
    """Maximum openly disjoint s->t paths by unit-capacity augmentation over
    the vertex-split network; returns (paths, cut vertices, direct arcs).

    Interior vertices carry capacity 1 and arcs are uncapacitated (except
    direct s->t arcs), so the certifying min cut consists of vertices plus the
    unavoidable direct arcs."""
    INF = 1 << 30
    cap: dict[tuple, int] = {}
    adj: dict = {}

    def add(u, v, c):
        cap[(u, v)] = cap.get((u, v), 0) + c
        cap.setdefault((v, u), 0)
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for v in d.verts:
        add(("in", v), ("out", v), INF if v in (s, t) else 1)
    for a, (u, w) in enumerate(d.arcs):
        add(("out", u), ("out", u, a), INF)
        add(("out", u, a), ("in", w), 1 if (u == s and w == t) else INF)

    src, snk = ("out", s), ("in", t)
    flow = 0
    while True:
        parent = {src: None}
        queue = [src]
        qi = 0
        while qi < len(queue) and snk not in parent:
            u = queue[qi]
            qi += 1
            for v in adj.get(u, ()):  # deterministic: insertion order
                if v not in parent and cap.get((u, v), 0) > 0:
                    parent[v] = u
                    queue.append(v)
        if snk not in parent:
            break
        v = snk
        while parent[v] is not None:
            u = parent[v]
            cap[(u, v)] -= 1
            cap[(v, u)] += 1
            v = u
        flow += 1

    # an arc carried flow iff its gadget edge gained reverse capacity
    used_arc = {
        a
        for a, (u, w) in enumerate(d.arcs)
        if cap.get((("in", w), ("out", u, a)), 0) > 0
    }
    out_by: dict[Vertex, list[int]] = {}
    for a in sorted(used_arc):
        out_by.setdefault(d.tail(a), []).append(a)
    paths = []
    direct = []
    for first in list(out_by.get(s, ())):
        arcs = []
        cur = s
        a = first
        while True:
            out_by[cur].remove(a)
            arcs.append(a)
            cur = d.head(a)
            if cur == t:
                break
            a = out_by[cur][0]
        verts = (s,) + tuple(d.head(x) for x in arcs)
        if len(arcs) == 1:
            direct.append(arcs[0])
        paths.append(SegmentPath(tuple(arcs), verts))
    # residual reachability gives the certifying cut
    reach = {src}
    queue = [src]
    while queue:
        u = queue.pop()
        for v in adj.get(u, ()):
            if v not in reach and cap.get((u, v), 0) > 0:
                reach.add(v)
                queue.append(v)
    cut = tuple(
        v
        for v in d.verts
        if v not in (s, t) and ("in", v) in reach and ("out", v) not in reach
    )
    return paths, cut, tuple(direct)


def build_path_systems(s: SplitDag) -> PathSystems:
    systems = []
    cuts = []
    directs = []
    pstar = set()
    for x in range(s.k):
        paths, cut, direct = _max_disjoint_paths(s.dag, s.terminals[x], s.terminals[x + 1])
        if not paths:
            raise AssertionError("a segment between transversal vertices has no path")
        assert len(paths) == len(cut) + len(direct), "path system not Menger-certified"
        systems.append(tuple(paths))
        cuts.append(cut)
        directs.append(direct)
        for p in paths:
            pstar.update(p.verts)
    return PathSystems(tuple(systems), tuple(cuts), tuple(directs), frozenset(pstar))


@dataclass(frozen=True)
class Switch:
    segment: int  # 0-based segment index
    entry: Vertex
    exit: Vertex
    arcs: tuple[int, ...]
    from_options: tuple[int, ...]
    to_options: tuple[int, ...]
    interior: tuple


def enumerate_switches(s: SplitDag, ps: PathSystems):
    """All bridge dipaths rerouting between two paths of one segment.

    Returns ("yes", Certificate) if the complement of the whole path union
    already holds an undirected cycle, else ("switches", list).  Bridge
    interiors live in forest components off the path union, so each (entry
    arc, exit arc) pair determines at most one dipath.
    """
    dag = s.dag
    pstar = ps.pstar_verts
    c = find_undirected_cycle(dag, forbidden=pstar)
    if c is not None:
        arcs = []
        for x in range(s.k):
            arcs.extend(ps.systems[x][0].arcs)
        cert = Certificate(Dicycle(tuple(arcs)), c)
        return "yes", cert

    loc: dict[Vertex, tuple[int, int]] = {}
    for x, system in enumerate(ps.systems):
        for i, p in enumerate(system):
            for v in p.verts[1:-1]:
                loc[v] = (x, i)
    term_index = {t: y for y, t in enumerate(s.terminals)}

    # forest components off the path union
    comp_of: dict[Vertex, int] = {}
    comps: list[list[Vertex]] = []
    for v in dag.verts:
        if v in pstar or v in comp_of:
            continue
        cid = len(comps)
        comp = [v]
        comp_of[v] = cid
        qi = 0
        while qi < len(comp):
            u = comp[qi]
            qi += 1
            for a in dag.out_arcs(u):
                w = dag.head(a)
                if w not in pstar and w not in comp_of:
                    comp_of[w] = cid
                    comp.append(w)
            for a in dag.in_arcs(u):
                w = dag.tail(a)
                if w not in pstar and w not in comp_of:
                    comp_of[w] = cid
                    comp.append(w)
        comps.append(comp)

    pset_arcs = set()
    for system in ps.systems:
        for p in system:
            pset_arcs.update(p.arcs)

    raw: list[tuple[Vertex, Vertex, tuple[int, ...]]] = []
    for a, (t, h) in enumerate(dag.arcs):
        if a in pset_arcs:
            continue
        if t in pstar and h in pstar:
            raw.append((t, h, (a,)))
    entries: dict[int, list[int]] = {}
    exits: dict[int, list[int]] = {}
    for a, (t, h) in enumerate(dag.arcs):
        if t in pstar and h not in pstar:
            entries.setdefault(comp_of[h], []).append(a)
        elif t not in pstar and h in pstar:
            exits.setdefault(comp_of[t], []).append(a)
    for cid in range(len(comps)):
        for e in entries.get(cid, ()):  # bridge path: e, interior, f
            for f in exits.get(cid, ()):
                start, goal = dag.head(e), dag.tail(f)
                # unique interior dipath start..goal inside the component
                parent: dict[Vertex, int] = {}
                seen = {start}
                queue = [start]
                qi = 0
                while qi < len(queue):
                    u = queue[qi]
                    qi += 1
                    for a in dag.out_arcs(u):
                        w = dag.head(a)
                        if w in pstar or w in seen:
                            continue
                        seen.add(w)
                        parent[w] = a
                        queue.append(w)
                if goal not in seen:
                    continue
                mid = []
                x = goal
                while x != start:
                    mid.append(parent[x])
                    x = dag.tail(parent[x])
                mid.reverse()
                raw.append((dag.tail(e), dag.head(f), tuple([e] + mid + [f])))

    switches: list[Switch] = []
    for v, w, arcs in raw:
        interior = tuple(dag.head(a) for a in arcs[:-1])
        x_w = None
        to_opts: tuple[int, ...]
        if w in loc:
            x_w, j = loc[w]
            to_opts = (j,)
        elif w in term_index:
            y = term_index[w]
            if y == 0:
                continue  # cannot end at the source
            x_w = y - 1
            to_opts = tuple(range(len(ps.systems[x_w])))
        else:
            continue
        if v in loc:
            x_v, i = loc[v]
            if x_v != x_w:
                continue
            from_opts = (i,)
        elif v in term_index:
            y = term_index[v]
            if y != x_w:  # v must be the segment's start terminal
                continue
            from_opts = tuple(range(len(ps.systems[x_w])))
        else:
            continue
        if len(from_opts) == 1 and from_opts == to_opts:
            continue  # switch within one path is never needed
        assert not (v in term_index and w in term_index), (
            "a terminal-to-terminal bridge contradicts the path system's maximality"
        )
        switches.append(Switch(x_w, v, w, arcs, from_opts, to_opts, interior))
    switches.sort(key=lambda sw: (sw.segment, sw.arcs))
    return "switches", switches


def assemble_candidate(s: SplitDag, ps: PathSystems, pi) -> tuple[tuple[int, ...], set] | None:
    """Build the source-sink dipath for one choice per segment.

    Each entry of pi is ("path", i) or ("switch", switch, i, j); returns
    (arcs, vertex set), or None if a switch's endpoints do not lie on the
    claimed paths or the result revisits a vertex."""
    arcs: list[int] = []
    verts: list = [s.a_out]
    for x, choice in enumerate(pi):
        system = ps.systems[x]
        if choice[0] == "path":
            p = system[choice[1]]
            arcs.extend(p.arcs)
            verts.extend(p.verts[1:])
            continue
        _, sw, i, j = choice
        if i == j:
            return None
        pi_path, pj_path = system[i], system[j]
        if sw.entry not in pi_path.verts or sw.exit not in pj_path.verts:
            return None
        cut_i = pi_path.verts.index(sw.entry)
        cut_j = pj_path.verts.index(sw.exit)
        arcs.extend(pi_path.arcs[:cut_i])
        verts.extend(pi_path.verts[1 : cut_i + 1])
        arcs.extend(sw.arcs)
        verts.extend(sw.interior)
        verts.append(sw.exit)
        arcs.extend(pj_path.arcs[cut_j:])
        verts.extend(pj_path.verts[cut_j + 1 :])
    vset = set(verts)
    if len(vset) != len(verts):
        return None
    return tuple(arcs), vset


def _first_hit(candidates, test, workers: int):
    """First non-None result in candidate order; with several workers the
    scan runs in chunks but the reduction stays order-canonical."""
    if workers <= 1:
        for cand in candidates:
            r = test(cand)
            if r is not None:
                return r
        return None
    from concurrent.futures import ThreadPoolExecutor
    from itertools import islice

    it = iter(candidates)
    with ThreadPoolExecutor(max_workers=workers) as ex:
        while True:
            chunk = list(islice(it, 512))
            if not chunk:
                return None
            for r in ex.map(test, chunk):
                if r is not None:
                    return r


class _ComplementOracle:
    """Cycle-in-the-complement queries against the DAG minus the terminals,
    preprocessed by component so each query touches only affected parts.

    Unicyclic components carry their single cycle's vertex set, making their
    query a disjointness test; anything denser falls back to union-find."""

    def __init__(self, dag: Digraph, terminals):
        self.dag = dag
        tset = set(terminals)
        self.comp_of: dict[Vertex, int] = {}
        comp_edges: list[list[tuple[Vertex, Vertex]]] = []
        comp_verts: list[list[Vertex]] = []
        adj: dict[Vertex, list[Vertex]] = {}
        pairs = []
        for a, (t, h) in enumerate(dag.arcs):
            if t in tset or h in tset:
                continue
            pairs.append((t, h))
            adj.setdefault(t, []).append(h)
            adj.setdefault(h, []).append(t)
        for v in dag.verts:
            if v in tset or v in self.comp_of:
                continue
            cid = len(comp_verts)
            comp = [v]
            self.comp_of[v] = cid
            qi = 0
            while qi < len(comp):
                u = comp[qi]
                qi += 1
                for w in adj.get(u, ()):
                    if w not in self.comp_of:
                        self.comp_of[w] = cid
                        comp.append(w)
            comp_verts.append(comp)
            comp_edges.append([])
        for t, h in pairs:
            comp_edges[self.comp_of[t]].append((t, h))
        self.comp_edges = comp_edges
        self.comp_verts = comp_verts
        TREE, UNICYCLIC, COMPLEX = 0, 1, 2
        self.comp_kind = []
        self.comp_cycle_verts: list[frozenset | None] = []
        for c in range(len(comp_verts)):
            ne, nv = len(comp_edges[c]), len(comp_verts[c])
            if ne < nv:
                self.comp_kind.append(TREE)
                self.comp_cycle_verts.append(None)
            elif ne == nv:
                # peel leaves; what remains is the unique cycle
                deg: dict[Vertex, int] = {v: 0 for v in comp_verts[c]}
                nbr: dict[Vertex, list[Vertex]] = {v: [] for v in comp_verts[c]}
                for t, h in comp_edges[c]:
                    deg[t] += 1
                    deg[h] += 1
                    nbr[t].append(h)
                    nbr[h].append(t)
                alive = dict(deg)
                stack = [v for v, k in alive.items() if k <= 1]
                dead = set()
                while stack:
                    v = stack.pop()
                    if v in dead:
                        continue
                    dead.add(v)
                    for w in nbr[v]:
                        if w not in dead:
                            alive[w] -= 1
                            if alive[w] <= 1:
                                stack.append(w)
                self.comp_kind.append(UNICYCLIC)
                self.comp_cycle_verts.append(
                    frozenset(v for v in comp_verts[c] if v not in dead)
                )
            else:
                self.comp_kind.append(COMPLEX)
                self.comp_cycle_verts.append(None)
        self.any_cyclic = any(k != TREE for k in self.comp_kind)

    def has_cycle_avoiding(self, removed: set) -> bool:
        if not self.any_cyclic:
            return False
        touched = {self.comp_of[v] for v in removed if v in self.comp_of}
        for c, kind in enumerate(self.comp_kind):
            if kind != 0 and c not in touched:
                return True
        for c in touched:
            kind = self.comp_kind[c]
            if kind == 0:
                continue
            if kind == 1:
                if not (self.comp_cycle_verts[c] & removed):
                    return True
                continue
            root: dict = {}

            def find(x):
                while root[x] != x:
                    root[x] = root[root[x]]
                    x = root[x]
                return x

            for v in self.comp_verts[c]:
                if v not in removed:
                    root[v] = v
            for t, h in self.comp_edges[c]:
                if t in removed or h in removed:
                    continue
                rt, rh = find(t), find(h)
                if rt == rh:
                    return True
                root[rt] = rh
        return False


def solve_tau1(
    d: Digraph,
    tau: TauInfo,
    k_budget: int = 8,
    use_switches: bool = True,
    workers: int = 1,
):
    """Exact decision at transversal number 1.

    Returns (verdict, certificate or None).  Phase 1 walks pure path tuples;
    phase 2 adds tuples with at least one switch.  Exhaustion is a proof of
    the no answer for candidates limited to one switch per segment.
    """
    if tau.tau != 1:
        raise ValueError("solve_tau1 requires tau = 1")
    pruned, arc_map = preprocess_tau1(d, tau)
    k = len(tau.one_transversals)
    if k > k_budget:
        log.warning(
            "instance has %d transversal vertices; enumeration is exponential in that count",
            k,
        )
    s = split_transversal(pruned, tau)
    ps = build_path_systems(s)
    comp = _ComplementOracle(s.dag, s.terminals)

    def lift(cert: Certificate) -> Certificate:
        b = Dicycle(tuple(arc_map[a] for a in cert.dicycle.arc_ids))
        c = UndirectedCycle(tuple(arc_map[a] for a in cert.cycle.arc_ids))
        return Certificate(b, c)

    if not comp.any_cyclic:
        return "no", None

    term_set = set(s.terminals)

    def certificate_for(arcs: tuple[int, ...], vset: set) -> Certificate:
        c = find_undirected_cycle(s.dag, forbidden=vset)
        assert c is not None
        return lift(Certificate(Dicycle(arcs), c))

    def test(pi):
        built = assemble_candidate(s, ps, pi)
        if built is None:
            return None
        arcs, vset = built
        if comp.has_cycle_avoiding(vset - term_set):
            return built
        return None

    # phase 1: pure path tuples, lexicographic
    from itertools import product

    sizes = ps.sizes()
    phase1 = (
        tuple(("path", i) for i in combo)
        for combo in product(*(range(n) for n in sizes))
    )
    hit = _first_hit(phase1, test, workers)
    if hit is not None:
        return "yes", certificate_for(*hit)

    if not use_switches:
        return "no", None

    res, switches = enumerate_switches(s, ps)
    if res == "yes":
        return "yes", lift(switches)
    by_segment: list[list] = [[] for _ in range(s.k)]
    for sw in switches:
        for i in sw.from_options:
            for j in sw.to_options:
                if i != j:
                    by_segment[sw.segment].append(("switch", sw, i, j))

    options = []
    for x in range(s.k):
        opts = [("path", i) for i in range(sizes[x])]
        opts.extend(by_segment[x])
        options.append(opts)
    phase2 = (
        pi for pi in product(*options) if not all(c[0] == "path" for c in pi)
    )
    hit = _first_hit(phase2, test, workers)
    if hit is not None:
        return "yes", certificate_for(*hit)
    return "no", None

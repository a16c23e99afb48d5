"""Hardness constructions: 3SAT to a bipartite cycle-avoidance problem to the
disjoint-cycle-pair problem.

The bipartite instance chains one theta-shaped gadget per variable (two paths
of odd length, one side per polarity); a cycle through the chain picks the
false side of every variable, and clause cells of three tagged vertices force
at least one avoided literal per clause.  The digraph stage threads every cell
through a gate vertex ring, so its dicycles are exactly the cell-avoiding
selections.  Both stages have brute-force deciders used as test oracles.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .digraph import Digraph, ParseError

SAT_VAR_LIMIT = 20
BIP_VERTEX_LIMIT = 60  # admits the reductions of every 4-variable 4-clause formula


@dataclass(frozen=True)
class CnfFormula:
    n: int
    clauses: tuple  # each clause: 3-tuple of (variable 1-based, negated flag)

    def validate(self) -> None:
        seen = set()
        for cl in self.clauses:
            if len(cl) != 3:
                raise ValueError("every clause needs exactly 3 literals")
            for var, neg in cl:
                if not 1 <= var <= self.n:
                    raise ValueError(f"literal variable out of range: {var}")
                seen.add(var)
        missing = set(range(1, self.n + 1)) - seen
        if missing:
            raise ValueError(f"variables never occur: {sorted(missing)}")


@dataclass(frozen=True)
class VariableGadget:
    """Two undirected (u, v)-paths: u y_1 .. y_p v and u z_1 .. z_q v."""

    u: str
    v: str
    ys: tuple[str, ...]
    zs: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]


def build_variable_gadget(p: int, q: int, tag: str = "g") -> VariableGadget:
    if p < 1 or q < 1:
        raise ValueError("both path lengths must be at least 1")
    u, v = f"{tag}.u", f"{tag}.v"
    ys = tuple(f"{tag}.y{k}" for k in range(1, p + 1))
    zs = tuple(f"{tag}.z{k}" for k in range(1, q + 1))
    edges = []
    chain = (u,) + ys + (v,)
    edges += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    chain = (u,) + zs + (v,)
    edges += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    return VariableGadget(u, v, ys, zs, tuple(edges))


@dataclass(frozen=True)
class BipartiteInstance:
    u_class: tuple  # colour class U
    v_class: tuple  # colour class V
    edges: tuple  # pairs, each crossing the classes
    cells: tuple  # partition of V into nonempty disjoint tuples
    tags: dict = field(default_factory=dict, compare=False)

    def validate(self) -> None:
        uset, vset = set(self.u_class), set(self.v_class)
        if uset & vset:
            raise ValueError("colour classes overlap")
        for x, y in self.edges:
            if not ((x in uset and y in vset) or (x in vset and y in uset)):
                raise ValueError(f"edge {x!r}-{y!r} does not cross the classes")
        covered: list = []
        for cell in self.cells:
            if not cell:
                raise ValueError("empty cell")
            covered.extend(cell)
        if sorted(map(str, covered)) != sorted(map(str, vset)) or len(covered) != len(vset):
            raise ValueError("cells do not partition the V class")


def sat_to_bipartite(f: CnfFormula) -> BipartiteInstance:
    """The clause-tagging chain construction.

    Variable i with p positive and q negated occurrences becomes a gadget
    with sides of length 2p+1 and 2q+1; its r-th positive occurrence is the
    (2r-1)-th side vertex, and the last side vertices form a per-variable
    cell; a closure pair completes the 2-connected graph.
    """
    f.validate()
    pos_count = {i: 0 for i in range(1, f.n + 1)}
    neg_count = {i: 0 for i in range(1, f.n + 1)}
    for cl in f.clauses:
        for var, neg in cl:
            if neg:
                neg_count[var] += 1
            else:
                pos_count[var] += 1

    gadgets = {}
    edges: list[tuple[str, str]] = []
    verts: list[str] = []
    for i in range(1, f.n + 1):
        g = build_variable_gadget(2 * pos_count[i] + 1, 2 * neg_count[i] + 1, tag=f"x{i}")
        gadgets[i] = g
        verts += [g.u] + list(g.ys) + list(g.zs)
        if i == f.n:
            verts.append(g.v)
        edges += list(g.edges)
    # chain: identify v_i with u_{i+1}
    rename = {}
    for i in range(1, f.n):
        rename[gadgets[i].v] = gadgets[i + 1].u
    edges = [(rename.get(a, a), rename.get(b, b)) for a, b in edges]
    s = gadgets[1].u
    t_raw = gadgets[f.n].v
    t = rename.get(t_raw, t_raw)

    zc1, zc2 = "closure.1", "closure.2"
    verts += [zc1, zc2]
    edges += [(s, zc1), (s, zc2), (zc1, t), (zc2, t)]

    # clause cells: the occurrence-indexed odd vertices
    pos_seen = {i: 0 for i in range(1, f.n + 1)}
    neg_seen = {i: 0 for i in range(1, f.n + 1)}
    clause_cells = []
    for cl in f.clauses:
        cell = []
        for var, neg in cl:
            if neg:
                neg_seen[var] += 1
                cell.append(gadgets[var].zs[2 * neg_seen[var] - 2])
            else:
                pos_seen[var] += 1
                cell.append(gadgets[var].ys[2 * pos_seen[var] - 2])
        clause_cells.append(tuple(cell))
    var_cells = [
        (gadgets[i].ys[-1], gadgets[i].zs[-1]) for i in range(1, f.n + 1)
    ]
    cells = tuple(clause_cells) + tuple(var_cells) + ((zc1, zc2),)

    v_class = [zc1, zc2]
    for i in range(1, f.n + 1):
        v_class += list(gadgets[i].ys[0::2]) + list(gadgets[i].zs[0::2])
    vset = set(v_class)
    u_class = [w for w in verts if w not in vset]
    inst = BipartiteInstance(
        u_class=tuple(u_class),
        v_class=tuple(v_class),
        edges=tuple(edges),
        cells=cells,
        tags={
            "s": s,
            "t": t,
            "closure": (zc1, zc2),
            "clause_cells": tuple(clause_cells),
        },
    )
    inst.validate()
    return inst


def bipartite_to_digraph(b: BipartiteInstance) -> Digraph:
    """Gate-ring digraph whose dicycles pick one cell vertex per cell."""
    b.validate()
    k = len(b.cells)
    taken = set(map(str, b.u_class)) | set(map(str, b.v_class))
    gates = []
    for i in range(k + 1):
        name = f"gate{i}"
        while name in taken:
            name = "~" + name
        taken.add(name)
        gates.append(name)
    verts = list(gates) + list(b.v_class) + list(b.u_class)
    arcs = []
    for i, cell in enumerate(b.cells, start=1):
        for p in cell:
            arcs.append((gates[i - 1], p))
            arcs.append((p, gates[i]))
    uset = set(b.u_class)
    for x, y in b.edges:
        bl, p = (x, y) if x in uset else (y, x)
        arcs.append((bl, p))
    arcs.append((gates[k], gates[0]))
    return Digraph(verts, arcs)


def _cycles_of_multigraph(verts, edges):
    """All simple cycles as (vertex set, edge index list); includes 2-cycles
    from parallel edges."""
    adj: dict = {v: [] for v in verts}
    for idx, (x, y) in enumerate(edges):
        adj[x].append((idx, y))
        adj[y].append((idx, x))
    order = {v: i for i, v in enumerate(verts)}
    out = []
    seen_sets = set()

    def walk(start, cur, used_edges, used_verts):
        for idx, nxt in adj[cur]:
            if idx in used_edges:
                continue
            if nxt == start and len(used_edges) >= 1:
                key = frozenset(used_edges | {idx})
                if key not in seen_sets:
                    seen_sets.add(key)
                    out.append((frozenset(used_verts), sorted(used_edges | {idx})))
                continue
            if nxt in used_verts or order[nxt] < order[start]:
                continue
            walk(start, nxt, used_edges | {idx}, used_verts | {nxt})

    for v in verts:
        walk(v, v, frozenset(), frozenset([v]))
    return out


def solve_bipartite_bruteforce(b: BipartiteInstance):
    """A cycle avoiding at least one vertex per cell, or None (exhaustive)."""
    b.validate()
    verts = list(b.u_class) + list(b.v_class)
    if len(verts) > BIP_VERTEX_LIMIT:
        raise ValueError(f"brute force capped at {BIP_VERTEX_LIMIT} vertices")
    for vset, edge_idxs in _cycles_of_multigraph(verts, b.edges):
        if all(any(p not in vset for p in cell) for cell in b.cells):
            return sorted(vset, key=str)
    return None


def sat_bruteforce(f: CnfFormula):
    """A satisfying assignment as a dict, or None (exhaustive)."""
    f.validate()
    if f.n > SAT_VAR_LIMIT:
        raise ValueError(f"brute force capped at {SAT_VAR_LIMIT} variables")
    for mask in range(1 << f.n):
        assign = {i + 1: bool(mask >> i & 1) for i in range(f.n)}
        ok = True
        for cl in f.clauses:
            if not any(assign[var] != neg for var, neg in cl):
                ok = False
                break
        if ok:
            return assign
    return None


def random_cnf(rng: random.Random, n: int, m: int) -> CnfFormula:
    """Seeded random 3-CNF in which every variable occurs at least once."""
    if n < 1 or m < 1:
        raise ValueError("need at least one variable and one clause")
    if n > 3 * m:
        raise ValueError("3 literals per clause cannot cover all variables")
    slots = [(ci, li) for ci in range(m) for li in range(3)]
    rng.shuffle(slots)
    chosen: dict[tuple, int] = {}
    for v in range(1, n + 1):
        chosen[slots[v - 1]] = v
    clauses = []
    for ci in range(m):
        cl = []
        for li in range(3):
            var = chosen.get((ci, li), None)
            if var is None:
                var = rng.randint(1, n)
            cl.append((var, rng.random() < 0.5))
        clauses.append(tuple(cl))
    f = CnfFormula(n, tuple(clauses))
    f.validate()
    return f


def parse_dimacs(text: str) -> CnfFormula:
    """DIMACS-style CNF: `p cnf n m` then clause lines of three nonzero
    literals terminated by 0."""
    n = None
    m = None
    clauses = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(lineno, f"bad problem line: {raw!r}")
            n, m = int(parts[2]), int(parts[3])
            continue
        if n is None:
            raise ParseError(lineno, "clause before the problem line")
        try:
            lits = [int(x) for x in line.split()]
        except ValueError:
            raise ParseError(lineno, f"bad clause line: {raw!r}")
        if not lits or lits[-1] != 0 or len(lits) != 4 or any(x == 0 for x in lits[:-1]):
            raise ParseError(lineno, "clauses need exactly three nonzero literals and a 0")
        clauses.append(tuple((abs(x), x < 0) for x in lits[:-1]))
    if n is None or len(clauses) != m:
        raise ParseError(0, "clause count does not match the problem line")
    f = CnfFormula(n, tuple(clauses))
    f.validate()
    return f


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.n} {len(f.clauses)}"]
    for cl in f.clauses:
        lines.append(" ".join(str(-var if neg else var) for var, neg in cl) + " 0")
    return "\n".join(lines) + "\n"

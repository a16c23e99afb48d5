"""Multidigraph representation, parsing, and basic traversals.

Vertices are arbitrary hashable tokens; their canonical order is
declaration order.  Arcs are identified by dense integer ids assigned in
input order, so loops and parallel arcs are unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

Vertex = Hashable


class ParseError(ValueError):
    """Raised on malformed graph or certificate files; carries a line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Digraph:
    """Finite multidigraph with identified arcs (loops and parallels allowed)."""

    __slots__ = ("verts", "arcs", "_index", "_out", "_in")

    def __init__(self, vertices: Iterable[Vertex], arcs: Iterable[tuple[Vertex, Vertex]]):
        self.verts: tuple[Vertex, ...] = tuple(vertices)
        self._index: dict[Vertex, int] = {}
        for i, v in enumerate(self.verts):
            if v in self._index:
                raise ValueError(f"duplicate vertex {v!r}")
            self._index[v] = i
        self.arcs: tuple[tuple[Vertex, Vertex], ...] = tuple(arcs)
        self._out: dict[Vertex, list[int]] = {v: [] for v in self.verts}
        self._in: dict[Vertex, list[int]] = {v: [] for v in self.verts}
        for a, (t, h) in enumerate(self.arcs):
            if t not in self._index or h not in self._index:
                raise ValueError(f"arc {a} endpoint not a declared vertex: {t!r}->{h!r}")
            self._out[t].append(a)
            self._in[h].append(a)

    @property
    def n(self) -> int:
        return len(self.verts)

    @property
    def m(self) -> int:
        return len(self.arcs)

    def index(self, v: Vertex) -> int:
        return self._index[v]

    def has_vertex(self, v: Vertex) -> bool:
        return v in self._index

    def tail(self, a: int) -> Vertex:
        return self.arcs[a][0]

    def head(self, a: int) -> Vertex:
        return self.arcs[a][1]

    def out_arcs(self, v: Vertex) -> list[int]:
        return self._out[v]

    def in_arcs(self, v: Vertex) -> list[int]:
        return self._in[v]

    def out_degree(self, v: Vertex) -> int:
        return len(self._out[v])

    def in_degree(self, v: Vertex) -> int:
        return len(self._in[v])

    def degree(self, v: Vertex) -> int:
        """Degree in the underlying undirected multigraph (a loop counts twice)."""
        return len(self._out[v]) + len(self._in[v])

    def sort_key(self, v: Vertex) -> int:
        """Canonical (declaration-order) key used for all deterministic tie-breaks."""
        return self._index[v]

    def restricted_to(self, keep: Iterable[Vertex]) -> tuple["Digraph", list[int]]:
        """Induced subgraph on `keep`; returns it plus sub-arc-id -> original-arc-id."""
        keep_set = set(keep)
        verts = [v for v in self.verts if v in keep_set]
        arc_map = [a for a, (t, h) in enumerate(self.arcs) if t in keep_set and h in keep_set]
        sub = Digraph(verts, [self.arcs[a] for a in arc_map])
        return sub, arc_map

    def without_vertices(self, drop: Iterable[Vertex]) -> tuple["Digraph", list[int]]:
        drop_set = set(drop)
        return self.restricted_to(v for v in self.verts if v not in drop_set)

    def without_arcs(self, drop: Iterable[int]) -> tuple["Digraph", list[int]]:
        drop_set = set(drop)
        arc_map = [a for a in range(self.m) if a not in drop_set]
        sub = Digraph(self.verts, [self.arcs[a] for a in arc_map])
        return sub, arc_map

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Digraph)
            and self.verts == other.verts
            and self.arcs == other.arcs
        )

    def __hash__(self):
        return hash((self.verts, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph({list(self.verts)!r}, {list(self.arcs)!r})"


def parse_digraph(text: str) -> Digraph:
    """Parse the graph file format: `#` comments, `v NAME`, `a TAIL HEAD`.

    Arc ids are assigned by order of `a` lines starting at 0.
    """
    verts: list[str] = []
    seen: set[str] = set()
    arcs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "v":
            if len(parts) != 2:
                raise ParseError(lineno, f"malformed vertex line: {raw!r}")
            name = parts[1]
            if name in seen:
                raise ParseError(lineno, f"duplicate vertex declaration: {name}")
            seen.add(name)
            verts.append(name)
        elif parts[0] == "a":
            if len(parts) != 3:
                raise ParseError(lineno, f"malformed arc line: {raw!r}")
            t, h = parts[1], parts[2]
            if t not in seen:
                raise ParseError(lineno, f"undeclared vertex reference: {t}")
            if h not in seen:
                raise ParseError(lineno, f"undeclared vertex reference: {h}")
            arcs.append((t, h))
        else:
            raise ParseError(lineno, f"malformed line: {raw!r}")
    return Digraph(verts, arcs)


def format_digraph(d: Digraph) -> str:
    lines = [f"v {v}" for v in d.verts]
    lines += [f"a {t} {h}" for t, h in d.arcs]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SCC:
    vertices: frozenset
    nontrivial: bool


def strong_components(d: Digraph) -> list[SCC]:
    """Tarjan's SCC partition; a single vertex counts as nontrivial iff it has a loop."""
    index_of: dict[Vertex, int] = {}
    low: dict[Vertex, int] = {}
    on_stack: set[Vertex] = set()
    stack: list[Vertex] = []
    counter = 0
    comps: list[SCC] = []

    for root in d.verts:
        if root in index_of:
            continue
        # iterative DFS: (vertex, iterator position into out arcs)
        work = [(root, 0)]
        index_of[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, i = work[-1]
            out = d.out_arcs(v)
            if i < len(out):
                work[-1] = (v, i + 1)
                w = d.head(out[i])
                if w not in index_of:
                    index_of[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index_of[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index_of[v]:
                    comp = set()
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        comp.add(w)
                        if w == v:
                            break
                    nontrivial = len(comp) > 1 or any(
                        d.head(a) == v for a in d.out_arcs(v)
                    )
                    comps.append(SCC(frozenset(comp), nontrivial))
    return comps


def is_acyclic_without(d: Digraph, removed: Iterable[Vertex] = ()) -> bool:
    """True iff d minus `removed` has no dicycle (a loop is a dicycle)."""
    removed_set = set(removed)
    indeg: dict[Vertex, int] = {}
    for v in d.verts:
        if v in removed_set:
            continue
        if any(d.tail(a) == v for a in d.in_arcs(v)):
            return False  # loop
        indeg[v] = sum(1 for a in d.in_arcs(v) if d.tail(a) not in removed_set)
    queue = [v for v, k in indeg.items() if k == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for a in d.out_arcs(v):
            h = d.head(a)
            if h in removed_set:
                continue
            indeg[h] -= 1
            if indeg[h] == 0:
                queue.append(h)
    return seen == len(indeg)


def is_acyclic(d: Digraph) -> bool:
    return is_acyclic_without(d, ())


def topological_order(d: Digraph) -> list[Vertex]:
    """Topological order; raises ValueError if d has a dicycle."""
    indeg = {v: d.in_degree(v) for v in d.verts}
    queue = [v for v in d.verts if indeg[v] == 0]
    order: list[Vertex] = []
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        order.append(v)
        for a in d.out_arcs(v):
            h = d.head(a)
            indeg[h] -= 1
            if indeg[h] == 0:
                queue.append(h)
    if len(order) != d.n:
        raise ValueError("digraph has a dicycle")
    return order


def reachable_from(d: Digraph, sources: Iterable[Vertex], forbidden: Iterable[Vertex] = ()) -> set:
    """Vertices reachable from `sources` by directed paths avoiding `forbidden`."""
    forbidden_set = set(forbidden)
    seen = set()
    queue = [s for s in sources if s not in forbidden_set]
    seen.update(queue)
    while queue:
        v = queue.pop()
        for a in d.out_arcs(v):
            h = d.head(a)
            if h not in seen and h not in forbidden_set:
                seen.add(h)
                queue.append(h)
    return seen


def is_strongly_connected(d: Digraph) -> bool:
    if d.n == 0:
        return False
    comps = strong_components(d)
    return len(comps) == 1

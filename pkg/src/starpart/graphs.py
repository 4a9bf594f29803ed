"""Immutable simple-graph model, file formats, and structural queries.

Vertices are dense integers 0..n-1.  Input labels (edge-list tokens, DIMACS
numbers) are preserved in a sidecar ``names`` tuple so certificates can be
reported in the user's vocabulary.  Graphs are frozen after construction;
all mutation goes through :class:`GraphBuilder`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

INFINITY = float("inf")


class GraphError(ValueError):
    """Base class for graph construction and parsing failures."""


class ValidationError(GraphError):
    """A simplicity invariant was violated (self-loop or duplicate edge)."""

    def __init__(self, message: str, edge: tuple[int, int] | None = None):
        super().__init__(message)
        self.edge = edge


class ParseError(GraphError):
    """Malformed input bytes; ``offset`` locates the first bad byte/line."""

    def __init__(self, message: str, offset: int | None = None):
        super().__init__(message)
        self.offset = offset


class Graph:
    """A simple undirected graph with sorted adjacency lists.

    Invariants enforced at construction: no self-loops, no parallel edges,
    symmetric adjacency, ``edge_count == sum(degrees) / 2``.
    """

    __slots__ = ("n", "adj", "edge_count", "names", "_adjset")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 names: Sequence[str] | None = None):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) out of range 0..{n - 1}",
                                      edge=(u, v))
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}", edge=(u, v))
            if v in adj[u]:
                raise ValidationError(f"duplicate edge ({u}, {v})", edge=(u, v))
            adj[u].add(v)
            adj[v].add(u)
            m += 1
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in adj)
        self._adjset: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in adj)
        self.edge_count = m
        if names is not None:
            if len(names) != n:
                raise GraphError("names must have one entry per vertex")
            self.names = tuple(str(x) for x in names)
        else:
            self.names = None

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjset[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted lexicographically."""
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def name_of(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph plus the list mapping new ids to old ids."""
        keep = sorted(set(vertices))
        index = {old: new for new, old in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges()
                 if u in index and v in index]
        names = [self.name_of(v) for v in keep] if self.names else None
        return Graph(len(keep), edges, names), keep

    def with_additions(self, extra_vertices: int,
                       extra_edges: Iterable[tuple[int, int]]) -> "Graph":
        """New graph with ``extra_vertices`` appended and ``extra_edges`` added."""
        edges = list(self.edges()) + list(extra_edges)
        names = None
        if self.names is not None:
            names = list(self.names) + [str(self.n + i) for i in range(extra_vertices)]
        return Graph(self.n + extra_vertices, edges, names)

    def bfs_distances(self, source: int) -> list[float]:
        dist: list[float] = [INFINITY] * self.n
        dist[source] = 0
        q = deque([source])
        while q:
            u = q.popleft()
            for w in self.adj[u]:
                if dist[w] == INFINITY:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return dist

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            q = deque([s])
            while q:
                u = q.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        q.append(w)
            out.append(sorted(comp))
        return out

    def is_forest(self) -> bool:
        seen = [False] * self.n
        for s in range(self.n):
            if seen[s]:
                continue
            nv = ne = 0
            seen[s] = True
            q = deque([s])
            while q:
                u = q.popleft()
                nv += 1
                ne += len(self.adj[u])
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        q.append(w)
            if ne // 2 >= nv:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and self.adj == other.adj)

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


class GraphBuilder:
    """Accumulates vertices and edges, validating on :meth:`build`."""

    def __init__(self, n: int = 0):
        self.n = n
        self._edges: list[tuple[int, int]] = []
        self._names: list[str] | None = None

    def ensure_vertex(self, v: int) -> None:
        if v >= self.n:
            self.n = v + 1

    def add_edge(self, u: int, v: int) -> None:
        self.ensure_vertex(max(u, v))
        self._edges.append((u, v))

    def set_names(self, names: Sequence[str]) -> None:
        self._names = list(names)

    def build(self) -> Graph:
        return Graph(self.n, self._edges, self._names)


def balls2(g: Graph) -> list[frozenset[int]]:
    """For every vertex, the set of vertices at distance exactly 1 or 2."""
    out = []
    for v in range(g.n):
        ball = set(g.adj[v])
        for u in g.adj[v]:
            ball.update(g.adj[u])
        ball.discard(v)
        out.append(frozenset(ball))
    return out


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------

def _g6_number(data: bytes, pos: int) -> tuple[int, int]:
    if pos >= len(data):
        raise ParseError("truncated graph6 header", offset=pos)
    b = data[pos]
    if b == 126:
        if pos + 1 < len(data) and data[pos + 1] == 126:
            chunk = data[pos + 2:pos + 8]
            if len(chunk) < 6:
                raise ParseError("truncated graph6 extended header", offset=pos)
            n = 0
            for c in chunk:
                if not 63 <= c <= 126:
                    raise ParseError(f"invalid graph6 byte {c}", offset=pos)
                n = (n << 6) | (c - 63)
            return n, pos + 8
        chunk = data[pos + 1:pos + 4]
        if len(chunk) < 3:
            raise ParseError("truncated graph6 extended header", offset=pos)
        n = 0
        for c in chunk:
            if not 63 <= c <= 126:
                raise ParseError(f"invalid graph6 byte {c}", offset=pos)
            n = (n << 6) | (c - 63)
        return n, pos + 4
    if not 63 <= b <= 125:
        raise ParseError(f"invalid graph6 size byte {b}", offset=pos)
    return b - 63, pos + 1


def parse_graph6(text: str | bytes) -> Graph:
    """Parse one graph6 line (short or extended size form)."""
    if isinstance(text, str):
        data = text.strip().encode("ascii", errors="replace")
    else:
        data = text.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise ParseError("empty graph6 input", offset=0)
    n, pos = _g6_number(data, 0)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != nbytes:
        raise ParseError(
            f"graph6 body has {len(body)} bytes, expected {nbytes}", offset=pos)
    bits = []
    for i, c in enumerate(body):
        if not 63 <= c <= 126:
            raise ParseError(f"invalid graph6 byte {c}", offset=pos + i)
        bits.append(format(c - 63, "06b"))
    bitstring = "".join(bits)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bitstring[idx] == "1":
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


def to_graph6(g: Graph) -> str:
    """Serialize in canonical graph6 (shortest size form, zero padding)."""
    n = g.n
    if n <= 62:
        header = [n + 63]
    elif n <= 258047:
        header = [126, 63 + ((n >> 12) & 63), 63 + ((n >> 6) & 63), 63 + (n & 63)]
    else:
        header = [126, 126] + [63 + ((n >> (6 * k)) & 63) for k in range(5, -1, -1)]
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append("1" if g.has_edge(i, j) else "0")
    bitstring = "".join(bits)
    pad = (-len(bitstring)) % 6
    bitstring += "0" * pad
    body = [63 + int(bitstring[k:k + 6], 2) for k in range(0, len(bitstring), 6)]
    return bytes(header + body).decode("ascii")


# ---------------------------------------------------------------------------
# edge list
# ---------------------------------------------------------------------------

def parse_edge_list(text: str | bytes) -> Graph:
    """Whitespace-separated edge list.

    Each nonblank, non-``#`` line holds either two tokens (an edge) or one
    token (an isolated-vertex declaration).  Tokens become vertex ids in
    first-appearance order; original tokens are kept as names.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    ids: dict[str, int] = {}
    names: list[str] = []
    edges: list[tuple[int, int]] = []

    def intern(tok: str) -> int:
        if tok not in ids:
            ids[tok] = len(names)
            names.append(tok)
        return ids[tok]

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        toks = stripped.split()
        if len(toks) == 1:
            intern(toks[0])
        elif len(toks) == 2:
            u, v = intern(toks[0]), intern(toks[1])
            if u == v:
                raise ValidationError(
                    f"self-loop '{toks[0]} {toks[1]}' on line {lineno}", edge=(u, v))
            edges.append((u, v))
        else:
            raise ParseError(f"expected 1 or 2 tokens on line {lineno}",
                             offset=lineno)
    return Graph(len(names), edges, names)


def to_edge_list(g: Graph) -> str:
    """Canonical edge-list form: all vertices declared, then sorted edges."""
    lines = [g.name_of(v) for v in range(g.n)]
    lines += [f"{g.name_of(u)} {g.name_of(v)}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# DIMACS .col
# ---------------------------------------------------------------------------

def parse_dimacs(text: str | bytes) -> Graph:
    """DIMACS ``p edge n m`` / ``e u v`` format with 1-based vertices."""
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    n = None
    declared_m = None
    edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = line.split()
        if not toks or toks[0] == "c":
            continue
        if toks[0] == "p":
            if n is not None:
                raise ParseError(f"duplicate 'p' line at line {lineno}", offset=lineno)
            if len(toks) != 4 or toks[1] not in ("edge", "edges", "col"):
                raise ParseError(f"bad 'p' line at line {lineno}", offset=lineno)
            n, declared_m = int(toks[2]), int(toks[3])
        elif toks[0] == "e":
            if n is None:
                raise ParseError(f"'e' line before 'p' at line {lineno}", offset=lineno)
            if len(toks) != 3:
                raise ParseError(f"bad 'e' line at line {lineno}", offset=lineno)
            u, v = int(toks[1]), int(toks[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range on line {lineno}", offset=lineno)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {toks[0]!r} at line {lineno}",
                             offset=lineno)
    if n is None:
        raise ParseError("missing 'p edge' header", offset=0)
    if declared_m is not None and declared_m != len(edges):
        raise ParseError(f"header declares {declared_m} edges, found {len(edges)}",
                         offset=0)
    return Graph(n, edges, [str(v + 1) for v in range(n)])


def to_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.edge_count}"]
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


FORMATS = ("graph6", "edgelist", "dimacs")


def sniff_format(text: str) -> str:
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if s.startswith(("c ", "c\t", "p ")) or s == "c":
            return "dimacs"
        if s.startswith(">>graph6<<"):
            return "graph6"
        toks = s.split("#", 1)[0].split()
        if len(toks) == 1 and all(63 <= ord(ch) <= 126 for ch in toks[0]) \
                and not toks[0].isdigit():
            return "graph6"
        return "edgelist"
    return "edgelist"


def parse_graph(text: str | bytes, fmt: str = "auto") -> Graph:
    """Parse ``text`` in the declared format ('graph6', 'edgelist', 'dimacs')."""
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    if fmt == "auto":
        fmt = sniff_format(text)
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "dimacs":
        return parse_dimacs(text)
    raise ParseError(f"unknown format {fmt!r}")


def serialize_graph(g: Graph, fmt: str) -> str:
    if fmt == "graph6":
        return to_graph6(g)
    if fmt == "edgelist":
        return to_edge_list(g)
    if fmt == "dimacs":
        return to_dimacs(g)
    raise ParseError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------

def girth(g: Graph) -> int | float:
    """Length of a shortest cycle, or ``INFINITY`` for forests.

    BFS from every root; a non-tree edge (u, w) seen from root r witnesses a
    closed walk of length dist(u)+dist(w)+1 containing a cycle no longer than
    that, and for any root on a shortest cycle the bound is attained.
    """
    best: int | float = INFINITY
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            if 2 * dist[u] >= best:
                continue
            for w in g.adj[u]:
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif w != parent[u]:
                    cand = dist[u] + dist[w] + 1
                    if cand < best:
                        best = cand
    return best


@dataclass(frozen=True)
class PendentCycle:
    """A cycle whose vertices all have degree 2 except the apex.

    ``cycle`` starts at the apex and walks the cycle; a free-standing cycle
    (every vertex of degree 2) is *not* pendent: the apex must have degree
    at least 3.
    """

    apex: int
    cycle: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.cycle)

    @property
    def two_vertices(self) -> tuple[int, ...]:
        return self.cycle[1:]


def find_pendent_cycles(g: Graph) -> list[PendentCycle]:
    """All pendent cycles, each reported once, apexes ascending."""
    out = []
    used: set[int] = set()
    for apex in range(g.n):
        if g.degree(apex) < 3:
            continue
        for start in g.adj[apex]:
            if g.degree(start) != 2 or start in used:
                continue
            walk = [start]
            prev, cur = apex, start
            closed = False
            while True:
                nxt = next(w for w in g.adj[cur] if w != prev)
                if nxt == apex:
                    closed = True
                    break
                if g.degree(nxt) != 2 or nxt in used:
                    break
                prev, cur = cur, nxt
                walk.append(cur)
            if closed and len(walk) >= 2:
                used.update(walk)
                out.append(PendentCycle(apex, (apex, *walk)))
    return out


def find_pendent_triangles(g: Graph) -> list[PendentCycle]:
    """Pendent 3-cycles: triangles with exactly two degree-2 vertices."""
    return [c for c in find_pendent_cycles(g) if len(c) == 3]


def pendent_triangles_at(g: Graph) -> dict[int, list[PendentCycle]]:
    at: dict[int, list[PendentCycle]] = {}
    for tri in find_pendent_triangles(g):
        at.setdefault(tri.apex, []).append(tri)
    return at


class VertexClass(Enum):
    """The vertex taxonomy used by the discharging analysis.

    W2: 2-vertex not on a pendent triangle.
    W3: 3-vertex with (at least) two 2-neighbors.
    W4: 4-vertex on exactly one pendent triangle.
    W5: 5-vertex on two pendent triangles.
    Vk: k-vertex not in Wk, for k in 3..6 (V6 is every 6-vertex).
    T2: 2-vertex on a pendent triangle.
    OTHER: anything else (degree <= 1 or >= 7).
    """

    W2 = "W2"
    W3 = "W3"
    W4 = "W4"
    W5 = "W5"
    V3 = "V3"
    V4 = "V4"
    V5 = "V5"
    V6 = "V6"
    T2 = "T2"
    OTHER = "Other"


def classify_vertices(g: Graph) -> list[VertexClass]:
    """Assign every vertex its taxonomy class (a total, disjoint labeling)."""
    tri_at = pendent_triangles_at(g)
    on_tri_2 = set()
    for tris in tri_at.values():
        for tri in tris:
            on_tri_2.update(tri.two_vertices)
    out = []
    for v in range(g.n):
        d = g.degree(v)
        ntri = len(tri_at.get(v, ()))
        if d == 2:
            out.append(VertexClass.T2 if v in on_tri_2 else VertexClass.W2)
        elif d == 3:
            two_nbrs = sum(1 for u in g.adj[v] if g.degree(u) == 2)
            out.append(VertexClass.W3 if two_nbrs >= 2 else VertexClass.V3)
        elif d == 4:
            out.append(VertexClass.W4 if ntri == 1 else VertexClass.V4)
        elif d == 5:
            out.append(VertexClass.W5 if ntri == 2 else VertexClass.V5)
        elif d == 6:
            out.append(VertexClass.V6)
        else:
            out.append(VertexClass.OTHER)
    return out


def pendent_cycle_two_vertices(g: Graph) -> set[int]:
    """2-vertices lying on a pendent cycle of any length (charge rule R1)."""
    out: set[int] = set()
    for c in find_pendent_cycles(g):
        out.update(c.two_vertices)
    return out

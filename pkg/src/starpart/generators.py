"""Graph family constructors and test corpora.

``gen_g5n`` builds the tightness family: a 5n-cycle with two pendent
triangles attached at three of every five consecutive cycle vertices.  It
has 17n vertices, 23n edges, maximum average degree exactly 46/17, and no
FII-partition.  ``gen_mad_bounded`` produces random graphs under an exact
density cap by rejection sampling.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterator

from .graphs import Graph
from . import density


def gen_cycle(k: int) -> Graph:
    if k < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def gen_path(k: int) -> Graph:
    if k < 1:
        raise ValueError("path needs at least 1 vertex")
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def gen_complete(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def gen_star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def gen_tree_random(n: int, seed: int) -> Graph:
    """Random tree: vertex i >= 1 hangs off a uniformly chosen earlier vertex."""
    if n < 1:
        raise ValueError("tree needs at least 1 vertex")
    rng = random.Random(seed)
    return Graph(n, [(rng.randrange(i), i) for i in range(1, n)])


def gen_g5n(n: int) -> Graph:
    """The tightness family: 5n-cycle, two pendent triangles on v_i whenever
    i mod 5 is 1, 2, or 3.

    Vertex numbering is stable for certificates: cycle vertices 0..5n-1
    first, then triangle vertices in (cycle position, first, second) order.
    """
    if n < 1:
        raise ValueError("n must be positive")
    cyc = 5 * n
    edges = [(i, (i + 1) % cyc) for i in range(cyc)]
    nxt = cyc
    for i in range(cyc):
        if i % 5 in (1, 2, 3):
            for _ in range(2):
                a, b = nxt, nxt + 1
                nxt += 2
                edges += [(i, a), (i, b), (a, b)]
    g = Graph(nxt, edges)
    assert g.n == 17 * n and g.edge_count == 23 * n
    return g


def gen_mad_bounded(n: int, bound: Fraction | str, seed: int,
                    tries: int | None = None) -> Graph:
    """Random graph on n vertices with mad <= bound, deterministic per seed.

    Candidate edges are shuffled and inserted one by one; an edge (u, v) is
    rejected exactly when some set containing both endpoints would push the
    weighted potential p|S| - 2q|E(S)| below zero, i.e. when
    min over S >= {u,v} of that potential is < 2q.  One min-cut per attempt.
    """
    bound = Fraction(bound)
    if bound < 1:
        raise ValueError("bound must be at least 1")
    p, q = bound.numerator, bound.denominator
    rng = random.Random(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    if tries is not None:
        pairs = pairs[:tries]
    edges: list[tuple[int, int]] = []
    g = Graph(n, edges)
    for u, v in pairs:
        if density.rho_star_weighted(g, (u, v), p, 2 * q).value >= 2 * q:
            edges.append((u, v))
            g = Graph(n, edges)
    assert density.mad_le(g, bound)
    return g


def gen_corpus(count: int, n_max: int, bound: Fraction | str,
               seed: int) -> Iterator[tuple[str, Graph]]:
    """A deterministic corpus of mad-bounded random graphs, sizes cycling
    through 4..n_max."""
    bound = Fraction(bound)
    rng = random.Random(seed)
    for i in range(count):
        n = 4 + (i % max(1, n_max - 3))
        yield f"corpus-{i:04d}-n{n}", gen_mad_bounded(n, bound, rng.randrange(2**31))

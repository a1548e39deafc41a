"""Canonical labelings and exhaustive enumeration of small connected graphs.

The canonical form of a graph is its relabeling with the lexicographically
least graph6 bitstring over all vertex orderings. Bipartite graphs with a
recorded bipartition are canonicalized over orderings that list one side
first, taking the better of the two side choices, so the representative
has ``X = 0..k-1``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from distpm import kernels
from distpm.graph import Graph, is_connected, two_coloring

MAX_BUILTIN_ORDER = 8
MAX_BUILTIN_SIDE = 4


class EnumerationRangeError(ValueError):
    pass


def _from_code(code: int, n: int) -> Graph:
    adj = [0] * n
    nbits = n * (n - 1) // 2
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if code >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(adj))


def canonical_code(g: Graph) -> int:
    return kernels.canonical_code(g.adj, g.n)[0]


def canonical_form(g: Graph) -> Graph:
    code, order = kernels.canonical_code(g.adj, g.n)
    return g.relabel(order).without_bipartition()


def bipartite_canonical(g: Graph) -> tuple[int, Graph]:
    """Canonical code and representative over side-first orderings (either side)."""
    x, y = g.bipartition
    xm = sum(1 << v for v in x)
    ym = sum(1 << v for v in y)
    best = None
    for cells in ([xm, ym], [ym, xm]) if len(x) == len(y) else ([xm, ym],):
        code, order = kernels.canonical_code(g.adj, g.n, cells)
        if best is None or code < best[0]:
            best = (code, order, cells[0])
    code, order, first = best
    k = first.bit_count()
    rep = g.relabel(order).without_bipartition().with_bipartition(range(k), range(k, g.n))
    return code, rep


def isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_code(g) == canonical_code(h)


@lru_cache(maxsize=None)
def _connected_codes(n: int) -> tuple[int, ...]:
    if n == 1:
        return (0,)
    codes: set[int] = set()
    for code in _connected_codes(n - 1):
        base = _from_code(code, n - 1)
        # every connected graph has a vertex whose deletion leaves it connected
        for nbrs in range(1, 1 << (n - 1)):
            adj = [row | ((nbrs >> v & 1) << (n - 1)) for v, row in enumerate(base.adj)]
            adj.append(nbrs)
            codes.add(kernels.canonical_code(adj, n)[0])
    return tuple(sorted(codes))


def enumerate_connected(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected graphs.

    Built in up to order 8; larger orders must come from external graph6
    streams. Output is sorted by canonical code.
    """
    if not 1 <= n <= MAX_BUILTIN_ORDER:
        raise EnumerationRangeError(
            f"built-in enumeration covers 1 <= n <= {MAX_BUILTIN_ORDER}; "
            "feed larger orders as a graph6 stream (sweep --stream FILE)"
        )
    for code in _connected_codes(n):
        yield _from_code(code, n)


@lru_cache(maxsize=None)
def _bipartite_reps(k: int) -> tuple[Graph, ...]:
    n = 2 * k
    pairs = [(i, k + j) for i in range(k) for j in range(k)]
    found: dict[int, Graph] = {}
    for mask in range(1, 1 << len(pairs)):
        xdeg = [0] * k
        ydeg = [0] * k
        for e, (i, j) in enumerate(pairs):
            if mask >> e & 1:
                xdeg[i] += 1
                ydeg[j - k] += 1
        # some member of every class has both sides sorted by degree
        if xdeg != sorted(xdeg, reverse=True) or ydeg != sorted(ydeg, reverse=True):
            continue
        if 0 in xdeg or 0 in ydeg:
            continue
        edges = [pairs[e] for e in range(len(pairs)) if mask >> e & 1]
        g = Graph.from_edges(n, edges, (range(k), range(k, n)))
        if not is_connected(g):
            continue
        code, rep = bipartite_canonical(g)
        found.setdefault(code, rep)
    return tuple(found[c] for c in sorted(found))


def enumerate_connected_balanced_bipartite(n_side: int) -> Iterator[Graph]:
    """Connected bipartite graphs with both sides of size ``n_side``, up to isomorphism.

    Each representative carries its bipartition with ``X = 0..n_side-1``.
    """
    if not 1 <= n_side <= MAX_BUILTIN_SIDE:
        raise EnumerationRangeError(
            f"built-in bipartite enumeration covers 1 <= n_side <= {MAX_BUILTIN_SIDE}; "
            "feed larger sides as a graph6 stream (sweep --stream FILE)"
        )
    yield from _bipartite_reps(n_side)


def declare_bipartition(g: Graph) -> Graph | None:
    """Attach the (unique) bipartition of a connected bipartite graph, vertex 0 in X."""
    if g.bipartition is not None:
        return g
    sides = two_coloring(g)
    if sides is None:
        return None
    return g.with_bipartition(*sides)


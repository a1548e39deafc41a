"""Graph representation, graph6 I/O, the extremal families and BFS distances."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

import numpy as np

from distpm import kernels


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ParameterError(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask. ``bipartition``
    holds the two vertex classes when the graph was built or declared
    bipartite; the first class is the ``X`` side.
    """

    n: int
    adj: tuple[int, ...]
    bipartition: tuple[frozenset[int], frozenset[int]] | None = field(default=None)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("graph must have at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in _bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if self.bipartition is not None:
            x, y = self.bipartition
            if x & y or (x | y) != frozenset(range(self.n)):
                raise ValueError("bipartition classes must be disjoint and cover V")
            for u, v in self.edges():
                if (u in x) == (v in x):
                    raise ValueError(f"edge ({u},{v}) does not cross the bipartition")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        bipartition: tuple[Iterable[int], Iterable[int]] | None = None,
    ) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        bp = None
        if bipartition is not None:
            bp = (frozenset(bipartition[0]), frozenset(bipartition[1]))
        return cls(n, tuple(adj), bp)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, row in enumerate(self.adj):
            for v in _bits(row >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def relabel(self, order: Sequence[int]) -> Graph:
        """Graph whose vertex ``i`` is the old vertex ``order[i]``."""
        pos = {old: new for new, old in enumerate(order)}
        edges = [(pos[u], pos[v]) for u, v in self.edges()]
        bp = None
        if self.bipartition is not None:
            bp = tuple(frozenset(pos[v] for v in side) for side in self.bipartition)
        return Graph.from_edges(self.n, edges, bp)

    def without_bipartition(self) -> Graph:
        return Graph(self.n, self.adj)

    def with_bipartition(self, x: Iterable[int], y: Iterable[int]) -> Graph:
        return Graph(self.n, self.adj, (frozenset(x), frozenset(y)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, g6={write_graph6(self)!r})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- graph6 ----------------------------------------------------------------

def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (optionally prefixed by ``>>graph6<<``)."""
    line = text.strip("\r\n")
    base = 0
    if line.startswith(">>graph6<<"):
        base = len(">>graph6<<")
        line = line[base:]
    if not line:
        raise Graph6Error("empty graph6 string", base)
    for i, ch in enumerate(line):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range 63..126", base + i)
    if line[0] == "~":
        raise Graph6Error("multi-byte headers (n > 62) are not supported", base)
    n = ord(line[0]) - 63
    if n < 1:
        raise Graph6Error("graph must have at least one vertex", base)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    payload = line[1:]
    if len(payload) != nbytes:
        off = base + 1 + min(len(payload), nbytes)
        raise Graph6Error(
            f"payload has {len(payload)} bytes, expected {nbytes} for n={n}", off
        )
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(payload[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if nbytes and (ord(payload[-1]) - 63) & ((1 << (6 * nbytes - nbits)) - 1):
        raise Graph6Error("nonzero padding bits", base + nbytes)
    return Graph(n, tuple(adj))


def write_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ParameterError("graph6 writer supports n <= 62")
    out = [chr(63 + g.n)]
    acc = nacc = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(63 + acc))
                acc = nacc = 0
    if nacc:
        out.append(chr(63 + (acc << (6 - nacc))))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, Graph | Graph6Error]]:
    """Yield ``(line_number, graph or error)``; blank and ``>>`` lines are skipped.

    A ``>>graph6<<`` prefix directly followed by data is decoded, a bare
    header line is skipped.
    """
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line == ">>graph6<<":
            continue
        if line.startswith(">>") and not line.startswith(">>graph6<<"):
            continue
        try:
            yield lineno, parse_graph6(line)
        except Graph6Error as exc:
            yield lineno, exc


# -- operations --------------------------------------------------------------

def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint copies of ``g`` and ``h`` plus every edge between them."""
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    adj = [row | hmask for row in g.adj] + [(row << g.n) | gmask for row in h.adj]
    return Graph(g.n + h.n, tuple(adj))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    adj = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(g.n + h.n, tuple(adj))


def union_all(graphs: Sequence[Graph]) -> Graph:
    out = graphs[0]
    for g in graphs[1:]:
        out = disjoint_union(out, g)
    return out


def is_connected(g: Graph) -> bool:
    seen = frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def components(g: Graph, removed: int = 0) -> list[int]:
    """Connected components of ``g`` minus the vertex mask ``removed``, as masks."""
    alive = ((1 << g.n) - 1) & ~removed
    out = []
    while alive:
        seed = alive & -alive
        comp = frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & alive & ~comp
            comp |= frontier
        out.append(comp)
        alive &= ~comp
    return out


def two_coloring(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Bipartition of a connected graph with vertex 0 on the first side, or None."""
    color = [-1] * g.n
    color[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for v in _bits(g.adj[u]):
            if color[v] < 0:
                color[v] = 1 - color[u]
                stack.append(v)
            elif color[v] == color[u]:
                return None
    if -1 in color:
        return None
    return (
        frozenset(v for v in range(g.n) if color[v] == 0),
        frozenset(v for v in range(g.n) if color[v] == 1),
    )


# -- families ----------------------------------------------------------------

class Family(str, Enum):
    COMPLETE = "CompleteN"
    EMPTY = "EmptyN"
    COMPLETE_BIPARTITE = "CompleteBipartite"
    PATH = "Path"
    SNK = "Snk"
    GSTAR = "GStar"
    GTILDE = "GTilde"
    GDOUBLEPRIME = "GDoublePrime"
    GPRIME = "GPrime"
    BSP = "Bsp"


@dataclass(frozen=True)
class FamilyParams:
    """Family kind plus its integer parameters.

    Parameter names per kind: CompleteN/EmptyN/Path/GStar ``n``;
    CompleteBipartite ``a, b``; Snk ``n, k``; GTilde ``n, s``;
    GDoublePrime ``n, s, q``; GPrime ``s, parts``; Bsp ``n, s, p``.
    """

    kind: Family
    n: int | None = None
    k: int | None = None
    s: int | None = None
    q: int | None = None
    p: int | None = None
    a: int | None = None
    b: int | None = None
    parts: tuple[int, ...] | None = None

    def order(self) -> int:
        if self.kind is Family.GPRIME:
            return self.s + sum(self.parts)
        if self.kind is Family.COMPLETE_BIPARTITE:
            return self.a + self.b
        if self.kind is Family.BSP:
            return 2 * self.n
        return self.n

    def label(self) -> str:
        fields = {
            Family.COMPLETE: ("n",), Family.EMPTY: ("n",), Family.PATH: ("n",),
            Family.GSTAR: ("n",), Family.COMPLETE_BIPARTITE: ("a", "b"),
            Family.SNK: ("n", "k"), Family.GTILDE: ("n", "s"),
            Family.GDOUBLEPRIME: ("n", "s", "q"), Family.GPRIME: ("s", "parts"),
            Family.BSP: ("n", "s", "p"),
        }[self.kind]
        vals = []
        for name in fields:
            v = getattr(self, name)
            vals.append("/".join(map(str, v)) if isinstance(v, tuple) else str(v))
        return f"{self.kind.value}({','.join(vals)})"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def _need(params: FamilyParams, *names: str) -> None:
    for name in names:
        _require(getattr(params, name) is not None, f"{params.kind.value} needs parameter {name}")


def validate_params(params: FamilyParams) -> None:
    kind = params.kind
    if kind in (Family.COMPLETE, Family.EMPTY, Family.PATH):
        _need(params, "n")
        _require(params.n >= 1, "n >= 1")
    elif kind is Family.COMPLETE_BIPARTITE:
        _need(params, "a", "b")
        _require(params.a >= 1 and params.b >= 1, "a >= 1 and b >= 1")
    elif kind is Family.SNK:
        _need(params, "n", "k")
        _require(1 <= params.k < params.n, "1 <= k < n")
    elif kind is Family.GSTAR:
        _need(params, "n")
        _require(params.n >= 4, "n >= 4")
    elif kind is Family.GTILDE:
        _need(params, "n", "s")
        _require(params.s >= 1, "s >= 1")
        _require(params.n >= 2 * params.s + 2, "n >= 2s+2")
    elif kind is Family.GDOUBLEPRIME:
        _need(params, "n", "s", "q")
        _require(params.s >= 1, "s >= 1")
        _require(params.q >= 1, "q >= 1")
        _require(params.n - params.s - (params.q - 1) >= 1, "n-s-(q-1) >= 1")
    elif kind is Family.GPRIME:
        _need(params, "s", "parts")
        _require(params.s >= 1, "s >= 1")
        _require(len(params.parts) >= 1, "at least one part")
        _require(all(p >= 1 and p % 2 == 1 for p in params.parts), "every part odd and positive")
        _require(list(params.parts) == sorted(params.parts, reverse=True), "parts sorted non-increasing")
    elif kind is Family.BSP:
        _need(params, "n", "s", "p")
        _require(1 <= params.p < params.s <= params.n - 1, "1 <= p < s <= n-1")
    else:  # pragma: no cover
        raise ParameterError(f"unknown family {kind!r}")


def _join_clique_with_cliques(s: int, parts: Sequence[int]) -> Graph:
    inner = union_all([complete(p) for p in parts])
    return join(complete(s), inner)


def build_family(params: FamilyParams) -> Graph:
    """Construct a family member with the fixed labeling.

    Clique (and centre) vertices come first, then the larger clique blocks,
    then independent vertices. For Bsp, ``X = 0..n-1`` with ``S = 0..s-1``
    and ``Y = n..2n-1`` with ``N(S) = n..n+p-1``.
    """
    validate_params(params)
    kind = params.kind
    if kind is Family.COMPLETE:
        return complete(params.n)
    if kind is Family.EMPTY:
        return empty(params.n)
    if kind is Family.PATH:
        return Graph.from_edges(params.n, [(i, i + 1) for i in range(params.n - 1)])
    if kind is Family.COMPLETE_BIPARTITE:
        a, b = params.a, params.b
        return Graph.from_edges(
            a + b, [(i, a + j) for i in range(a) for j in range(b)],
            (range(a), range(a, a + b)),
        )
    if kind is Family.SNK:
        return join(complete(params.k), empty(params.n - params.k))
    if kind is Family.GSTAR:
        return _join_clique_with_cliques(1, [params.n - 3, 1, 1])
    if kind is Family.GTILDE:
        n, s = params.n, params.s
        return _join_clique_with_cliques(s, [n - 2 * s - 1] + [1] * (s + 1))
    if kind is Family.GDOUBLEPRIME:
        n, s, q = params.n, params.s, params.q
        return _join_clique_with_cliques(s, [n - s - (q - 1)] + [1] * (q - 1))
    if kind is Family.GPRIME:
        return _join_clique_with_cliques(params.s, params.parts)
    if kind is Family.BSP:
        n, s, p = params.n, params.s, params.p
        edges = [(i, n + j) for i in range(s) for j in range(p)]
        edges += [(i, n + j) for i in range(s, n) for j in range(n)]
        return Graph.from_edges(2 * n, edges, (range(n), range(n, 2 * n)))
    raise ParameterError(f"unknown family {kind!r}")  # pragma: no cover


def snk(n: int, k: int) -> Graph:
    return build_family(FamilyParams(Family.SNK, n=n, k=k))


def gstar(n: int) -> Graph:
    return build_family(FamilyParams(Family.GSTAR, n=n))


def gtilde(n: int, s: int) -> Graph:
    return build_family(FamilyParams(Family.GTILDE, n=n, s=s))


def gdoubleprime(n: int, s: int, q: int) -> Graph:
    return build_family(FamilyParams(Family.GDOUBLEPRIME, n=n, s=s, q=q))


def gprime(s: int, parts: Sequence[int]) -> Graph:
    return build_family(FamilyParams(Family.GPRIME, s=s, parts=tuple(parts)))


def bsp(n: int, s: int, p: int) -> Graph:
    return build_family(FamilyParams(Family.BSP, n=n, s=s, p=p))


# -- distances ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Read-only shortest-path distance matrix of a connected graph."""

    n: int
    d: np.ndarray

    def __post_init__(self) -> None:
        self.d.setflags(write=False)

    def row_sums(self) -> np.ndarray:
        return self.d.sum(axis=1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DistanceMatrix) and np.array_equal(self.d, other.d)

    __hash__ = None  # type: ignore[assignment]


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    d = kernels.bfs_all_pairs(g.adj, g.n)
    if (d < 0).any():
        raise DisconnectedGraphError("distance undefined: graph is disconnected")
    return DistanceMatrix(g.n, d)


def wiener_index(d: DistanceMatrix) -> int:
    return int(np.triu(d.d, 1).sum())

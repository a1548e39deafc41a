"""Maximum matchings and certificates for the absence of a perfect matching."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from distpm import kernels
from distpm.graph import Graph, components

MAX_TUTTE_ORDER = 24


class WitnessSizeError(ValueError):
    pass


class BipartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.edges)

    def mate(self) -> dict[int, int]:
        out = {}
        for u, v in self.edges:
            out[u] = v
            out[v] = u
        return out

    def is_valid_in(self, g: Graph) -> bool:
        covered: set[int] = set()
        for u, v in self.edges:
            if not g.has_edge(u, v) or u in covered or v in covered:
                return False
            covered.update((u, v))
        return self.size <= g.n // 2


def _matching_from_mate(mate: list[int]) -> Matching:
    return Matching(frozenset((v, m) for v, m in enumerate(mate) if m > v))


@dataclass(frozen=True)
class TutteWitness:
    """``S`` with ``q = o(G - S) > |S|``."""

    s_set: frozenset[int]
    odd_count: int


@dataclass(frozen=True)
class HallWitness:
    """``S`` inside the ``X`` side with ``|N(S)| < |S|``."""

    s_set: frozenset[int]
    neighborhood_size: int
    neighborhood: frozenset[int]


def maximum_matching(g: Graph) -> Matching:
    """Edmonds' blossom algorithm (cardinality version)."""
    n = g.n
    nbrs = [g.neighbors(v) for v in range(n)]
    match = [-1] * n

    # greedy start; augmentation fixes any suboptimality
    for v in range(n):
        if match[v] < 0:
            for u in nbrs[v]:
                if match[u] < 0:
                    match[u], match[v] = v, u
                    break

    for root in range(n):
        if match[root] >= 0:
            continue
        parent = [-1] * n
        base = list(range(n))
        used = [False] * n
        used[root] = True
        queue = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] < 0:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        end = -1
        while queue and end < 0:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and parent[match[to]] >= 0):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] < 0:
                    parent[to] = v
                    if match[to] < 0:
                        end = to
                        break
                    used[match[to]] = True
                    queue.append(match[to])
        v = end
        while v >= 0:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return _matching_from_mate(match)


def has_perfect_matching(g: Graph) -> bool:
    return g.n % 2 == 0 and maximum_matching(g).size == g.n // 2


def odd_component_count(g: Graph, s: frozenset[int] | set[int]) -> int:
    """Number of odd-order components of ``G - S``."""
    removed = 0
    for v in s:
        removed |= 1 << v
    return kernels.odd_component_count(g.adj, g.n, removed)


def normalize_tutte(g: Graph, w: TutteWitness) -> TutteWitness:
    """Move one vertex of each even component into ``S`` until all components are odd.

    Each move raises ``|S|`` by one and the odd count by at least one, so the
    deficiency ``q - |S|`` never drops.
    """
    s = set(w.s_set)
    while True:
        mask = sum(1 << v for v in s)
        even = [c for c in components(g, mask) if c.bit_count() % 2 == 0]
        if not even:
            break
        for comp in even:
            s.add((comp & -comp).bit_length() - 1)
    return TutteWitness(frozenset(s), odd_component_count(g, s))


def tutte_witness(g: Graph, normalize: bool = False) -> TutteWitness | None:
    """Smallest (then lexicographically first) ``S`` with ``o(G - S) > |S|``.

    ``None`` exactly when ``G`` has a perfect matching.
    """
    if g.n > MAX_TUTTE_ORDER:
        raise WitnessSizeError(f"Tutte witness search is limited to n <= {MAX_TUTTE_ORDER}")
    # q > |S| and q <= n - |S| force |S| <= (n-1)/2
    for size in range(0, (g.n - 1) // 2 + 1):
        for s in combinations(range(g.n), size):
            removed = 0
            for v in s:
                removed |= 1 << v
            q = kernels.odd_component_count(g.adj, g.n, removed)
            if q > size:
                w = TutteWitness(frozenset(s), q)
                return normalize_tutte(g, w) if normalize else w
    return None


def _sides(g: Graph) -> tuple[list[int], list[int]]:
    if g.bipartition is None:
        raise BipartitionError("graph has no recorded bipartition")
    x, y = g.bipartition
    return sorted(x), sorted(y)


def hopcroft_karp(g: Graph) -> Matching:
    """Maximum matching of a bipartite graph by shortest augmenting path phases."""
    xs, ys = _sides(g)
    mate = [-1] * g.n
    inf = g.n + 1

    def bfs() -> tuple[bool, dict[int, int]]:
        dist = {}
        queue = deque()
        for x in xs:
            if mate[x] < 0:
                dist[x] = 0
                queue.append(x)
            else:
                dist[x] = inf
        found = False
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                m = mate[y]
                if m < 0:
                    found = True
                elif dist[m] == inf:
                    dist[m] = dist[x] + 1
                    queue.append(m)
        return found, dist

    def dfs(x: int, dist: dict[int, int]) -> bool:
        for y in g.neighbors(x):
            m = mate[y]
            if m < 0 or (dist[m] == dist[x] + 1 and dfs(m, dist)):
                mate[x], mate[y] = y, x
                return True
        dist[x] = inf
        return False

    while True:
        found, dist = bfs()
        if not found:
            break
        for x in xs:
            if mate[x] < 0:
                dfs(x, dist)
    return _matching_from_mate(mate)


def hall_witness(g: Graph) -> HallWitness | None:
    """``S`` in ``X`` with ``|N(S)| < |S|``, or ``None`` when a perfect matching exists.

    ``S`` and ``N(S)`` are the ``X`` and ``Y`` vertices reachable by
    alternating paths from the ``X`` vertices a maximum matching leaves
    unsaturated.
    """
    xs, ys = _sides(g)
    if len(xs) != len(ys):
        raise BipartitionError("unbalanced sides: no perfect matching possible")
    mate = hopcroft_karp(g).mate()
    free = [x for x in xs if x not in mate]
    if not free:
        return None
    reached_x = set(free)
    reached_y: set[int] = set()
    queue = deque(free)
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y in reached_y:
                continue
            reached_y.add(y)
            m = mate[y]  # reachable Y vertices are saturated, else the matching augments
            if m not in reached_x:
                reached_x.add(m)
                queue.append(m)
    return HallWitness(frozenset(reached_x), len(reached_y), frozenset(reached_y))

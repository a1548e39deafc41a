from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import strategies as st

from distpm.graph import Graph, components


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()])


def connect(g: Graph, rng: random.Random) -> Graph:
    """Join the components of ``g`` by random extra edges."""
    comps = components(g)
    edges = list(g.edges())
    reps = []
    for mask in comps:
        members = [v for v in range(g.n) if mask >> v & 1]
        reps.append(rng.choice(members))
    for a, b in zip(reps, reps[1:]):
        edges.append((a, b))
    return Graph.from_edges(g.n, edges)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(
        n, [(u, v) for v in range(n) for u in range(v) if rng.random() < p]
    )


def random_connected(rng: random.Random, n: int, p: float | None = None) -> Graph:
    return connect(random_graph(rng, n, rng.random() if p is None else p), rng)


def random_tree(rng: random.Random, n: int) -> Graph:
    if n <= 2:
        return Graph.from_edges(n, [(0, 1)] if n == 2 else [])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return from_nx(nx.from_prufer_sequence(seq))


def brute_matching_number(g: Graph) -> int:
    @lru_cache(maxsize=None)
    def best(free: int) -> int:
        if not free:
            return 0
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        top = best(rest)
        nb = g.adj[v] & rest
        while nb:
            u = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            top = max(top, 1 + best(rest & ~(1 << u)))
        return top

    return best((1 << g.n) - 1)


def brute_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    target = set(h.edges())
    for perm in permutations(range(g.n)):
        if all(tuple(sorted((perm[u], perm[v]))) in target for u, v in g.edges()):
            return True
    return False


def has_augmenting_path(g: Graph, mate: dict[int, int]) -> bool:
    """Exhaustive search over simple alternating paths between free vertices."""

    def extend(v: int, seen: set[int], need_matched: bool) -> bool:
        for u in g.neighbors(v):
            if u in seen:
                continue
            if need_matched != (mate.get(v) == u):
                continue
            if not need_matched and u not in mate:
                return True
            seen.add(u)
            if extend(u, seen, not need_matched):
                return True
            seen.discard(u)
        return False

    return any(extend(v, {v}, False) for v in range(g.n) if v not in mate)


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 10, connected: bool = False) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for v in range(n) for u in range(v)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])
    if connected:
        g = connect(g, random.Random(draw(st.integers(0, 2**16))))
    return g


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")

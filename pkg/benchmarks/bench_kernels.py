"""Compare the compiled and pure-Python kernels on representative inputs.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

import numpy as np

from distpm import _purekernels as pure
from distpm.canon import enumerate_connected
from distpm.graph import Graph

try:
    from distpm import _ckernels as compiled
except ImportError:  # pragma: no cover
    compiled = None


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(rng.randrange(v), v) for v in range(1, n)]  # random spanning tree
    edges += [(u, v) for v in range(n) for u in range(v) if rng.random() < p]
    return Graph.from_edges(n, edges)


def workloads(rng: random.Random):
    sevens = list(enumerate_connected(7))
    mid = [random_connected(rng, 30, 0.1) for _ in range(20)]
    mats = [pure.bfs_all_pairs(g.adj, g.n).astype(np.float64) for g in mid]
    eights = [random_connected(rng, 8, 0.4) for _ in range(50)]

    def bfs(mod):
        for g in mid:
            mod.bfs_all_pairs(g.adj, g.n)

    def perron(mod):
        for d in mats:
            mod.perron_iterate(d, 1e-10, 10**6)

    def canon(mod):
        for g in eights:
            mod.canonical_code(g.adj, g.n, None)

    def odd(mod):
        for g in sevens:
            for removed in range(0, 128, 5):
                mod.odd_component_count(g.adj, g.n, removed)

    return [
        ("bfs_all_pairs (20 graphs, n=30)", bfs),
        ("perron_iterate (20 matrices, n=30)", perron),
        ("canonical_code (50 graphs, n=8)", canon),
        ("odd_component_count (853 graphs x 26 sets)", odd),
    ]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if compiled is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'kernel':<46}{'pure (ms)':>12}{'compiled (ms)':>15}{'speedup':>10}")
    for name, fn in workloads(random.Random(0)):
        t_pure = min(timeit.repeat(lambda: fn(pure), number=1, repeat=args.repeat))
        t_comp = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:<46}{t_pure * 1e3:>12.2f}{t_comp * 1e3:>15.2f}{t_pure / t_comp:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

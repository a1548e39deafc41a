"""Pure-Python reference kernels.

Same contracts as the compiled ``_ckernels`` module; used when the extension
is not built or when ``DISTPM_PURE=1`` is set.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

EPS = np.finfo(float).eps


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bfs_all_pairs(adj: Sequence[int], n: int) -> np.ndarray:
    """BFS distances from every vertex; ``-1`` marks unreachable pairs."""
    d = np.full((n, n), -1, dtype=np.int64)
    for src in range(n):
        row = d[src]
        seen = frontier = 1 << src
        dist = 0
        while frontier:
            for v in _bits(frontier):
                row[v] = dist
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
            dist += 1
    return d


def perron_iterate(d: np.ndarray, tol: float, max_iter: int):
    """Power iteration from the all-ones vector with Collatz-Wielandt bounds.

    Returns ``(value, lo, hi, vector, iterations, converged)``. ``lo``/``hi``
    are widened by a floating-point rounding allowance.
    """
    n = d.shape[0]
    x = np.ones(n)
    lo = hi = value = 0.0
    for it in range(1, max_iter + 1):
        y = d @ x
        ratios = y / x
        top = float(ratios.max())
        slack = 2.0 * n * EPS * abs(top)
        lo = float(ratios.min()) - slack
        hi = top + slack
        if hi - lo <= tol:
            value = float(x @ y) / float(x @ x)
            return value, lo, hi, x, it, True
        x = y / y.max()
    value = float(x @ (d @ x)) / float(x @ x)
    return value, lo, hi, x, max_iter, False


def canonical_code(adj: Sequence[int], n: int, cells: Sequence[int] | None = None):
    """Lexicographically least adjacency bitstring over admissible orderings.

    Bits are read in graph6 order (upper triangle, column by column). An
    ordering is admissible when position ``j`` holds a vertex of the cell
    that owns that position; ``cells`` is a list of vertex masks filled in
    order (default: one cell holding every vertex, i.e. all ``n!`` orders).

    Column ``j`` of the bitstring only depends on the first ``j+1`` chosen
    vertices, so the optimum is built column by column keeping every tied
    prefix. Prefixes with the same used set and the same adjacency vectors
    for every unused vertex have identical continuations and are merged.

    Returns ``(code, order)`` where ``order[i]`` is the vertex placed at ``i``.
    """
    if cells is None:
        cells = [(1 << n) - 1]
    slots: list[int] = []
    for cell in cells:
        slots.extend([cell] * cell.bit_count())
    if len(slots) != n:
        raise ValueError("cells must cover every vertex exactly once")

    states: dict[tuple[int, tuple[int, ...]], tuple[int, ...]] = {(0, (0,) * n): ()}
    code = 0
    for j in range(n):
        allowed = slots[j]
        best = None
        for (used, vec) in states:
            for v in _bits(allowed & ~used):
                if best is None or vec[v] < best:
                    best = vec[v]
        nxt: dict[tuple[int, tuple[int, ...]], tuple[int, ...]] = {}
        for (used, vec), order in states.items():
            for v in _bits(allowed & ~used):
                if vec[v] != best:
                    continue
                nu = used | (1 << v)
                row = adj[v]
                nv = tuple(
                    0 if nu >> w & 1 else (vec[w] << 1) | (row >> w & 1)
                    for w in range(n)
                )
                key = (nu, nv)
                if key not in nxt:
                    nxt[key] = order + (v,)
        states = nxt
        code = (code << j) | best
    order = next(iter(states.values()))
    return code, list(order)


def odd_component_count(adj: Sequence[int], n: int, removed: int) -> int:
    alive = ((1 << n) - 1) & ~removed
    odd = 0
    while alive:
        comp = frontier = alive & -alive
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= adj[v]
            frontier = nxt & alive & ~comp
            comp |= frontier
        odd += comp.bit_count() & 1
        alive &= ~comp
    return odd

"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``DISTPM_PURE=1`` before import to force the fallback.
"""

from __future__ import annotations

import os

from distpm import _purekernels as pure

BACKEND = "python"
if os.environ.get("DISTPM_PURE", "") not in ("1", "true", "yes"):
    try:
        from distpm import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None
    else:
        BACKEND = "cython"
else:
    compiled = None

_impl = compiled if compiled is not None else pure

MAX_COMPILED_N = 32


def bfs_all_pairs(adj, n):
    if n > 64:
        return pure.bfs_all_pairs(adj, n)
    return _impl.bfs_all_pairs(adj, n)


def perron_iterate(d, tol, max_iter):
    return _impl.perron_iterate(d, tol, max_iter)


def canonical_code(adj, n, cells=None):
    if n > MAX_COMPILED_N:
        return pure.canonical_code(adj, n, cells)
    return _impl.canonical_code(adj, n, cells)


def odd_component_count(adj, n, removed):
    if n > 64:
        return pure.odd_component_count(adj, n, removed)
    return _impl.odd_component_count(adj, n, removed)

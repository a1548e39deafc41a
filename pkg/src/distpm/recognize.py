"""Structural recognition of the extremal families.

Every non-bipartite family here has the shape ``K_s v (K_a1 u ... u K_aq)``.
Such a graph is determined up to isomorphism by ``s`` and the multiset of
clique sizes, which can be read off the graph: the universal vertices are
the join part (when ``q >= 2``) and the remaining components must be cliques.

The bipartite family ``B_{s,p} = K_{n,n} - e(S, Y - N(S))`` is recognised from
its two degree classes on one side. Reading it from the other side gives
``B_{n-p,n-s}``, so signatures use the smaller of the two parameter pairs.
"""

from __future__ import annotations

from distpm.canon import isomorphic
from distpm.graph import (
    Family,
    FamilyParams,
    Graph,
    build_family,
    components,
    is_connected,
    two_coloring,
    validate_params,
)

BRUTE_FORCE_MAX_N = 10


def _norm(s: int, parts) -> tuple[int, tuple[int, ...]]:
    parts = tuple(sorted((p for p in parts if p > 0), reverse=True))
    if len(parts) <= 1:
        return (s + sum(parts), ())
    return (s, parts)


def clique_join_signature(g: Graph) -> tuple[int, tuple[int, ...]] | None:
    """``(s, clique sizes)`` if ``g`` is ``K_s`` joined to a union of cliques.

    Complete graphs come out as ``(n, ())``; ``None`` means the shape fails.
    """
    full = (1 << g.n) - 1
    umask = 0
    for v in range(g.n):
        if g.adj[v] == full & ~(1 << v):
            umask |= 1 << v
    s = umask.bit_count()
    parts = []
    for comp in components(g, umask):
        for v in range(g.n):
            if comp >> v & 1 and g.adj[v] & comp != comp & ~(1 << v):
                return None
        parts.append(comp.bit_count())
    return _norm(s, parts)


def bsp_signature(g: Graph) -> tuple[int, int, int] | None:
    """``(n, s, p)`` with ``g`` isomorphic to ``B_{s,p}`` on sides of size ``n``."""
    if g.n % 2 or not is_connected(g):
        return None
    sides = g.bipartition or two_coloring(g)
    if sides is None or len(sides[0]) != len(sides[1]):
        return None
    n = g.n // 2
    found = []
    for x, y in (sides, sides[::-1]):
        ymask = sum(1 << v for v in y)
        full = [v for v in x if g.adj[v] & ymask == ymask]
        rest = [v for v in x if g.adj[v] & ymask != ymask]
        if not full or not rest:
            continue
        nbhd = g.adj[rest[0]]
        if any(g.adj[v] != nbhd for v in rest):
            continue
        s, p = len(rest), nbhd.bit_count()
        if 1 <= p < s:
            found.append((s, p))
    if not found:
        return None
    s, p = found[0]
    return (n,) + min((s, p), (n - p, n - s))


def family_signature(params: FamilyParams):
    """Signature of a family member computed from its parameters alone."""
    validate_params(params)
    kind = params.kind
    if kind is Family.COMPLETE:
        return _norm(params.n, ())
    if kind is Family.SNK:
        return _norm(params.k, [1] * (params.n - params.k))
    if kind is Family.GSTAR:
        return _norm(1, [params.n - 3, 1, 1])
    if kind is Family.GTILDE:
        n, s = params.n, params.s
        return _norm(s, [n - 2 * s - 1] + [1] * (s + 1))
    if kind is Family.GDOUBLEPRIME:
        n, s, q = params.n, params.s, params.q
        return _norm(s, [n - s - q + 1] + [1] * (q - 1))
    if kind is Family.GPRIME:
        return _norm(params.s, params.parts)
    if kind is Family.BSP:
        n, s, p = params.n, params.s, params.p
        return (n,) + min((s, p), (n - p, n - s))
    return None


def graph_signature(g: Graph, kind: Family):
    if kind is Family.BSP:
        return bsp_signature(g)
    if kind in (Family.COMPLETE, Family.SNK, Family.GSTAR, Family.GTILDE,
                Family.GDOUBLEPRIME, Family.GPRIME):
        return clique_join_signature(g)
    return None


def _infer(g: Graph, kind: Family) -> bool:
    n = g.n
    if kind is Family.BSP:
        return bsp_signature(g) is not None
    if kind is Family.EMPTY:
        return g.edge_count() == 0
    if kind is Family.PATH:
        return is_connected(g) and g.edge_count() == n - 1 and max(g.degrees(), default=0) <= 2
    if kind is Family.COMPLETE_BIPARTITE:
        sides = two_coloring(g) if is_connected(g) else None
        return sides is not None and g.edge_count() == len(sides[0]) * len(sides[1])
    sig = clique_join_signature(g)
    if sig is None:
        return False
    s, parts = sig
    if kind is Family.COMPLETE:
        return parts == ()
    if kind is Family.SNK:
        return parts == () or all(p == 1 for p in parts)
    if kind is Family.GSTAR:
        return n >= 4 and sig == family_signature(FamilyParams(Family.GSTAR, n=n))
    if kind is Family.GTILDE:
        return any(
            sig == family_signature(FamilyParams(Family.GTILDE, n=n, s=t))
            for t in range(1, (n - 2) // 2 + 1)
        )
    if kind is Family.GDOUBLEPRIME:
        return s >= 1 and all(p == 1 for p in parts[1:])
    if kind is Family.GPRIME:
        return s >= 1 and all(p % 2 for p in parts) and parts != ()
    return False


def recognize_family(g: Graph, kind: Family, params: FamilyParams | None = None) -> bool:
    """Whether ``g`` is isomorphic to a member of ``kind`` (to ``params`` if given).

    Uses the structural signatures; for families without one, falls back to
    an exact canonical-form comparison against ``build_family`` when
    ``n <= 10``.
    """
    kind = Family(kind)
    if params is None:
        return _infer(g, kind)
    if params.kind is not kind:
        raise ValueError("params kind does not match the requested family")
    if params.order() != g.n:
        return False
    want = family_signature(params)
    if want is not None:
        return graph_signature(g, kind) == want
    if g.n <= BRUTE_FORCE_MAX_N:
        return isomorphic(g, build_family(params))
    return False


def same_family_member(g: Graph, h: Graph, kind: Family) -> bool:
    """Isomorphism test for two graphs known to lie in the structural families."""
    if g.n != h.n:
        return False
    a, b = graph_signature(g, kind), graph_signature(h, kind)
    if a is not None and b is not None:
        return a == b
    return isomorphic(g, h)

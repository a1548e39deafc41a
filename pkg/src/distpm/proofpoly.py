"""The polynomials used in the extremality arguments, as literally stated.

Every function evaluates the stated expression exactly (integers and
``Fraction``). Where a stated expression disagrees with the one recomputed
from the quotient matrices, the recomputed form is available with
``stated=False``; the verifier reports the difference.
"""

from __future__ import annotations

from fractions import Fraction

from distpm.graph import ParameterError
from distpm.spectral import Polynomial


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def f_unbal(n: int, s: int) -> Polynomial:
    """Cubic for the three-class quotient of ``K_s v (K_{n-2s-1} u (s+1)K_1)``."""
    _check(s >= 1 and n >= 2 * s + 2, "f_unbal needs s >= 1 and n >= 2s+2")
    return Polynomial.of(
        1,
        -(s + n - 3),
        -(2 * s * n - 5 * s * s + 5 * n - 6 * s - 6),
        n * s * s - 2 * s**3 - s * n + 2 * s * s - 4 * n + 6 * s + 4,
    )


def q_unbal(n: int) -> Polynomial:
    _check(n >= 4, "q_unbal needs n >= 4")
    return Polynomial.of(1, -(n - 2), -(7 * n - 17), -4 * n + 10)


def h_theta(n: int, s: int, theta: int | Fraction) -> Fraction:
    """Factored difference ``(s-1)(-t^2 + (-2n+5s+11)t + sn - 2s^2 + 6)``."""
    _check(s >= 1 and n >= 2 * s + 2, "h_theta needs s >= 1 and n >= 2s+2")
    t = Fraction(theta)
    return (s - 1) * (-t * t + (-2 * n + 5 * s + 11) * t + s * n - 2 * s * s + 6)


def h_theta_expanded(n: int, s: int, theta: int | Fraction) -> Fraction:
    _check(s >= 1 and n >= 2 * s + 2, "h_theta needs s >= 1 and n >= 2s+2")
    t = Fraction(theta)
    return (
        -(s - 1) * t * t
        - (2 * n * s - 5 * s * s - 2 * n - 6 * s + 11) * t
        + n * s * s - 2 * s**3 - s * n + 2 * s * s + 6 * s - 6
    )


def h1_theta(n: int, s: int, theta: int | Fraction) -> Fraction:
    t = Fraction(theta)
    return -t * t + (-2 * n + 5 * s + 11) * t + s * n - 2 * s * s + 6


def g_n(n: int, s: int) -> int:
    """``h1(n+1) = -3n^2 + (6s+7)n - 2s^2 + 5s + 16``."""
    _check(s >= 1 and n >= 2 * s + 2, "g_n needs s >= 1 and n >= 2s+2")
    return -3 * n * n + (6 * s + 7) * n - 2 * s * s + 5 * s + 16


def f_bip(n: int, s: int) -> Polynomial:
    """Quartic for the four-class quotient of ``B_{s,s-1}`` on sides of size ``n``."""
    _check(n >= 3 and 2 <= s <= n - 1, "f_bip needs n >= 3 and 2 <= s <= n-1")
    return Polynomial.of(
        1,
        -4 * n + 8,
        3 * n * n - 8 * n * s + 8 * s * s - 24 * n - 8 * s + 24,
        8 * n * n * s - 8 * n * s * s + 12 * n * n - 32 * n * s + 40 * s * s - 48 * n - 40 * s + 32,
        -12 * n * n * s * s + 24 * s**3 * n - 12 * s**4 + 28 * n * n * s - 52 * n * s * s
        + 24 * s**3 + 12 * n * n - 20 * s * n + 36 * s * s - 32 * n - 48 * s + 16,
    )


def q_bip(n: int) -> Polynomial:
    _check(n >= 3, "q_bip needs n >= 3")
    return Polynomial.of(
        1, -4 * n + 8, 3 * n * n - 40 * n + 40, 28 * n * n - 144 * n + 112, 20 * n * n - 88 * n + 64
    )


def h_rho(n: int, s: int, rho: int | Fraction) -> Fraction:
    _check(n >= 4 and 2 <= s <= n - 2, "h_rho needs 2 <= s <= n-2")
    r = Fraction(rho)
    return (
        (8 * s * s - (8 * n + 8) * s + 16 * n - 16) * r * r
        + (8 * s * n * n - 8 * n * s * s - 16 * n * n - 32 * n * s + 40 * s * s + 96 * n - 40 * s - 80) * r
        - 12 * n * n * s * s + 24 * s**3 * n - 12 * s**4 + 28 * s * n * n - 52 * n * s * s
        + 24 * s**3 - 8 * n * n - 20 * s * n + 36 * s * s + 56 * n - 48 * s - 48
    )


def r_s(n: int, s: int, stated: bool = True) -> int:
    """Last factor of ``g(s)``.

    Stated: ``-3s^2 + (3s+3)n + 19n + 4n^2 + 6``. Recomputed from ``h(2n)``:
    ``-3s^2 + 3sn + 3s + 19n + 4n^2 + 6``; only the recomputed form gives
    ``r(2) = 4n^2 + 25n`` and ``r(n-2) = 4n^2 + 28n - 12``.
    """
    _check(n >= 4 and 2 <= s <= n - 2, "r_s needs n >= 4 and 2 <= s <= n-2")
    if stated:
        return -3 * s * s + (3 * s + 3) * n + 19 * n + 4 * n * n + 6
    return -3 * s * s + 3 * s * n + 3 * s + 19 * n + 4 * n * n + 6


def g_s(n: int, s: int, stated: bool = True) -> int:
    """``h(2n) = -4(s-2)(n-s-1) r(s)``."""
    _check(n >= 4 and 2 <= s <= n - 2, "g_s needs n >= 4 and 2 <= s <= n-2")
    return -4 * (s - 2) * (-s + n - 1) * r_s(n, s, stated)


def bip_wiener_mean_stated(n: int) -> Fraction:
    """Stated value of ``2W(B_{n-1,n-2}) / (2n)``: ``2n + 5 - 6/n``."""
    _check(n >= 3, "n >= 3")
    return 2 * n + 5 - Fraction(6, n)


KINDS = {
    "f_unbal": f_unbal,
    "q_unbal": q_unbal,
    "h_theta": h_theta,
    "g_n": g_n,
    "f_bip": f_bip,
    "q_bip": q_bip,
    "h_rho": h_rho,
    "g_s": g_s,
    "r_s": r_s,
}


def proof_polynomials(kind: str, **params):
    """Dispatch by name, e.g. ``proof_polynomials("g_n", n=8, s=2)``."""
    try:
        fn = KINDS[kind]
    except KeyError:
        raise ParameterError(f"unknown polynomial {kind!r}; choose from {sorted(KINDS)}") from None
    return fn(**params)

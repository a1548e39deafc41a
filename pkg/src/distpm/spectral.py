"""Perron value of distance matrices, quotient matrices and exact polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from distpm import kernels
from distpm.graph import DistanceMatrix

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10**6
ROOT_TOL = 1e-12
SCAN_STEPS = 10**4


class ConvergenceError(RuntimeError):
    """Power iteration hit its cap; carries the last enclosure."""

    def __init__(self, lo: float, hi: float, iterations: int) -> None:
        super().__init__(
            f"no convergence after {iterations} iterations; last enclosure [{lo!r}, {hi!r}]"
        )
        self.lo = lo
        self.hi = hi
        self.iterations = iterations


class RootIsolationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EigenEstimate:
    """Perron value with a Collatz-Wielandt enclosure ``lo <= value <= hi``.

    ``vector`` is the Perron vector scaled to unit maximum entry.
    """

    value: float
    lo: float
    hi: float
    vector: np.ndarray
    iterations: int


def perron_estimate(
    d: DistanceMatrix, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> EigenEstimate:
    """Power iteration from the all-ones vector, stopped once ``hi - lo <= tol``.

    After each product ``y = Dx`` the bounds are ``min y_i/x_i`` and
    ``max y_i/x_i``; the reported value is the Rayleigh quotient at the last
    iterate, which always lies between them.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    value, lo, hi, x, iters, converged = kernels.perron_iterate(
        np.asarray(d.d, dtype=np.float64), float(tol), int(max_iter)
    )
    if not converged:
        raise ConvergenceError(float(lo), float(hi), int(iters))
    vec = np.array(x, dtype=np.float64)
    vec /= vec.max()
    value = min(max(float(value), float(lo)), float(hi))
    return EigenEstimate(value, float(lo), float(hi), vec, int(iters))


def rayleigh_floor(wiener: int, n: int) -> float:
    """``2W/n``: the Rayleigh quotient at the all-ones vector, a lower bound on the Perron value."""
    if n < 1:
        raise ValueError("n >= 1")
    return 2 * wiener / n


# -- partitions and quotients --------------------------------------------------

@dataclass(frozen=True)
class Partition:
    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for cls in self.classes:
            if not cls:
                raise ValueError("partition classes must be nonempty")
            if seen & set(cls):
                raise ValueError("partition classes must be disjoint")
            seen |= set(cls)

    @classmethod
    def of(cls, *classes: Sequence[int]) -> Partition:
        return cls(tuple(tuple(c) for c in classes))

    def check_covers(self, n: int) -> None:
        covered = sorted(v for c in self.classes for v in c)
        if covered != list(range(n)):
            raise ValueError("partition must cover every vertex exactly once")


@dataclass(frozen=True)
class QuotientMatrix:
    """Row ``r``, column ``c``: total distance from a vertex of class ``r`` to class ``c``.

    Entries are taken at the first vertex of each class; ``equitable`` says
    whether every vertex of the class gives the same sums.
    """

    k: int
    m: tuple[tuple[Fraction, ...], ...]
    equitable: bool

    def as_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.m])

    def max_row_sum(self) -> Fraction:
        return max(sum(row) for row in self.m)


def quotient_matrix(d: DistanceMatrix, p: Partition) -> QuotientMatrix:
    p.check_covers(d.n)
    sums = [[d.d[list(v_row)][:, list(cls)].sum(axis=1) for cls in p.classes] for v_row in p.classes]
    # sums[r][c][i]: distance from the i-th vertex of class r to class c
    equitable = all(
        int(block.min()) == int(block.max()) for row in sums for block in row
    )
    m = tuple(tuple(Fraction(int(block[0])) for block in row) for row in sums)
    return QuotientMatrix(len(p.classes), m, equitable)


# -- polynomials ----------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Exact polynomial, coefficients highest degree first."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def of(cls, *coeffs: int | Fraction) -> Polynomial:
        return cls(tuple(Fraction(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0 if not isinstance(x, float) else 0.0
        for c in self.coeffs:
            acc = acc * x + (float(c) if isinstance(x, float) else c)
        return acc

    def __sub__(self, other: Polynomial) -> tuple[Fraction, ...]:
        """Coefficient difference (may have a vanishing leading term)."""
        width = max(len(self.coeffs), len(other.coeffs))
        a = (Fraction(0),) * (width - len(self.coeffs)) + self.coeffs
        b = (Fraction(0),) * (width - len(other.coeffs)) + other.coeffs
        return tuple(x - y for x, y in zip(a, b))

    def integer_coeffs(self) -> tuple[int, ...]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("polynomial has non-integer coefficients")
        return tuple(int(c) for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for power, c in zip(range(self.degree, -1, -1), self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and power) else str(mag)
            if power:
                body += "x" if power == 1 else f"x^{power}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        head = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
        return head + "".join(f" {sgn} {body}" for sgn, body in terms[1:])


def char_poly(q: QuotientMatrix | Sequence[Sequence[int | Fraction]]) -> Polynomial:
    """det(xI - M) by the Faddeev-LeVerrier trace recursion in exact arithmetic."""
    rows = q.m if isinstance(q, QuotientMatrix) else q
    a = [[Fraction(v) for v in row] for row in rows]
    k = len(a)
    if k > 6:
        raise ValueError("char_poly supports matrices up to 6x6")
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * k for _ in range(k)]
    for step in range(1, k + 1):
        # M_step = A M_{step-1} + c_{step-1} I
        am = [[sum(a[i][t] * m[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
        for i in range(k):
            am[i][i] += coeffs[-1]
        m = am
        tr = sum(sum(a[i][t] * m[t][i] for t in range(k)) for i in range(k))
        coeffs.append(-tr / step)
    return Polynomial(tuple(coeffs))


def largest_real_root(p: Polynomial, bracket_hi: float) -> float:
    """Largest real root in ``[-bracket_hi, bracket_hi]``.

    Scans downwards from ``bracket_hi`` in steps of ``bracket_hi / 10**4``
    for the first sign change, then bisects to ``1e-12``.
    """
    hi = float(bracket_hi)
    if hi <= 0:
        raise RootIsolationError("bracket_hi must be positive")
    exact_top = p(Fraction(bracket_hi))
    if exact_top == 0:
        return hi
    if (exact_top > 0) != (p.coeffs[0] > 0):
        raise RootIsolationError(f"{p} has a root above the bracket {hi}")
    step = hi / SCAN_STEPS
    x_prev, f_prev = hi, p(hi)
    for i in range(1, 2 * SCAN_STEPS + 1):
        x = hi - i * step
        fx = p(x)
        if fx == 0:
            return x
        if (fx < 0) != (f_prev < 0):
            lo_x, hi_x, f_lo = x, x_prev, fx
            while hi_x - lo_x > ROOT_TOL:
                mid = 0.5 * (lo_x + hi_x)
                fm = p(mid)
                if fm == 0:
                    return mid
                if (fm < 0) == (f_lo < 0):
                    lo_x, f_lo = mid, fm
                else:
                    hi_x = mid
            return 0.5 * (lo_x + hi_x)
        x_prev, f_prev = x, fx
    raise RootIsolationError(f"no sign change of {p} on [-{hi}, {hi}]")


def closed_form_snk(n: int) -> float:
    """The literal closed form ``(3n - 4 + sqrt(n^2 + 24n - 16)) / 4`` for ``S_{n,n/2-1}``.

    Audit input only: it does not agree with the largest root of the
    two-class quotient of ``S_{n,n/2-1}`` (see ``verifier.audit_closed_forms``).
    """
    if n < 4 or n % 2:
        raise ValueError("n must be even and >= 4")
    return (3 * n - 4 + math.sqrt(n * n + 24 * n - 16)) / 4


def integer_determinant(d: DistanceMatrix | Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    rows = d.d.tolist() if isinstance(d, DistanceMatrix) else d
    a = [[int(v) for v in row] for row in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1

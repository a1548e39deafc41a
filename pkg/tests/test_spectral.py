from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from distpm.graph import (
    all_pairs_distances,
    bsp,
    complete,
    gstar,
    parse_graph6,
    snk,
    wiener_index,
)
from distpm.spectral import (
    ConvergenceError,
    Partition,
    Polynomial,
    RootIsolationError,
    char_poly,
    closed_form_snk,
    integer_determinant,
    largest_real_root,
    perron_estimate,
    quotient_matrix,
    rayleigh_floor,
)

from conftest import graphs, random_connected, random_tree


def numpy_lambda(g) -> float:
    return float(np.linalg.eigvalsh(all_pairs_distances(g).d.astype(float))[-1])


@given(graphs(min_n=2, max_n=14, connected=True))
@settings(max_examples=200, deadline=None)
def test_perron_matches_dense_eigensolver(g):
    est = perron_estimate(all_pairs_distances(g))
    assert est.lo <= est.value <= est.hi
    assert est.hi - est.lo <= 1e-10 + 1e-12 * est.hi
    assert abs(est.value - numpy_lambda(g)) <= 1e-8
    assert est.vector.max() == pytest.approx(1.0)
    assert (est.vector > 0).all()


@given(graphs(min_n=2, max_n=12, connected=True))
@settings(max_examples=100, deadline=None)
def test_enclosure_contains_true_value(g):
    est = perron_estimate(all_pairs_distances(g), tol=1e-6)
    true = numpy_lambda(g)
    assert est.lo - 1e-12 <= true <= est.hi + 1e-12


def test_complete_graphs():
    for n in range(2, 13):
        assert perron_estimate(all_pairs_distances(complete(n))).value == pytest.approx(n - 1, abs=1e-10)


def test_p4():
    est = perron_estimate(all_pairs_distances(parse_graph6("Ch")))
    assert abs(est.value - (2 + math.sqrt(10))) <= 1e-9


def test_single_vertex():
    est = perron_estimate(all_pairs_distances(complete(1)))
    assert est.value == 0.0


def test_iteration_cap_raises_with_enclosure():
    d = all_pairs_distances(gstar(10))
    with pytest.raises(ConvergenceError) as info:
        perron_estimate(d, tol=1e-14, max_iter=3)
    assert info.value.lo <= info.value.hi
    assert info.value.iterations == 3


def test_bad_tolerance():
    with pytest.raises(ValueError):
        perron_estimate(all_pairs_distances(complete(3)), tol=0)


def test_rayleigh_floor(rng):
    for _ in range(200):
        g = random_connected(rng, rng.randint(2, 12))
        d = all_pairs_distances(g)
        assert perron_estimate(d).value >= rayleigh_floor(wiener_index(d), g.n) - 1e-9


def test_transmission_regular_graph_value_is_row_sum():
    g = parse_graph6("Dhc")  # C5
    d = all_pairs_distances(g)
    assert perron_estimate(d).value == pytest.approx(float(d.row_sums()[0]), abs=1e-10)


def test_snk_quotient_matrix():
    n = 6
    q = quotient_matrix(all_pairs_distances(snk(n, 2)), Partition.of(range(2), range(2, n)))
    assert q.equitable
    assert q.m == ((1, 4), (2, 6))
    assert char_poly(q).integer_coeffs() == (1, -7, -2)


def test_non_equitable_partition_flagged():
    q = quotient_matrix(all_pairs_distances(parse_graph6("Ch")), Partition.of([0, 1], [2, 3]))
    assert not q.equitable


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition.of([0, 1], [1, 2])
    with pytest.raises(ValueError):
        quotient_matrix(all_pairs_distances(complete(3)), Partition.of([0], [1]))


@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=4, max_size=4))
def test_char_poly_matches_numpy(rows):
    ours = [float(c) for c in char_poly(rows).coeffs]
    assert np.allclose(ours, np.poly(np.array(rows, dtype=float)), atol=1e-6)


def test_char_poly_is_exact_for_rationals():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(2), Fraction(-1, 5)]]
    p = char_poly(m)
    assert p.coeffs == (1, -Fraction(3, 10), Fraction(-1, 10) - Fraction(2, 3))


def test_largest_root():
    p = Polynomial.of(1, -7, -2)
    assert largest_real_root(p, 8) == pytest.approx((7 + math.sqrt(57)) / 2, abs=1e-11)
    with pytest.raises(RootIsolationError, match="above the bracket"):
        largest_real_root(p, 7)
    cubic = Polynomial.of(1, -6, 11, -6)
    assert largest_real_root(cubic, 10) == pytest.approx(3.0, abs=1e-11)
    assert largest_real_root(Polynomial.of(1, -10), 10) == 10.0
    with pytest.raises(RootIsolationError):
        largest_real_root(Polynomial.of(1, 0, 1), 5)


def test_polynomial_helpers():
    p = Polynomial.of(1, -2, 0, 3)
    assert p(2) == 3 and p(2.0) == 3.0
    assert str(p) == "x^3 - 2x^2 + 3"
    assert p - Polynomial.of(1, 0, 0, 0) == (0, -2, 0, 3)
    with pytest.raises(ValueError):
        Polynomial.of(0, 1)


def test_bipartite_extremal_at_n3_is_ten():
    est = perron_estimate(all_pairs_distances(bsp(3, 2, 1)))
    assert abs(est.value - 10) <= 1e-9


def test_closed_form_snk_values():
    assert closed_form_snk(6) == pytest.approx((7 + math.sqrt(41)) / 2)
    assert closed_form_snk(10) == pytest.approx(11.0)
    with pytest.raises(ValueError):
        closed_form_snk(7)


def test_determinant_matches_numpy(rng):
    for _ in range(100):
        k = rng.randint(1, 7)
        m = [[rng.randint(-4, 4) for _ in range(k)] for _ in range(k)]
        assert integer_determinant(m) == round(np.linalg.det(np.array(m, dtype=float)))


def test_tree_determinant():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 10)
        t = random_tree(rng, n)
        det = integer_determinant(all_pairs_distances(t))
        assert det == (-1) ** (n - 1) * (n - 1) * 2 ** (n - 2)

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from distpm.graph import (
    Family,
    FamilyParams,
    Graph,
    ParameterError,
    all_pairs_distances,
    build_family,
    bsp,
    complete,
    empty,
    gstar,
    gtilde,
    snk,
    write_graph6,
)
from distpm.spectral import perron_estimate
from distpm.verifier import (
    COMPUTED,
    PAPER_SPLIT,
    InputError,
    Verdict,
    audit_closed_forms,
    bip_extremal,
    certify_bipartite,
    certify_general,
    family_lambda,
    gstar_params,
    odd_partitions,
    quotient_route,
    snk_half,
    sweep,
    threshold_bipartite,
    threshold_general,
    verify_claim,
    verify_witness,
)

# Reference values: closed-form roots of the quotient polynomials, evaluated independently.
SQRT57_HALF = (7 + math.sqrt(57)) / 2
S10_COMPUTED = (13 + math.sqrt(145)) / 2


def cubic_root(n: int) -> float:
    roots = np.roots([1, -(n - 2), -(7 * n - 17), -(4 * n - 10)])
    return float(max(r.real for r in roots if abs(r.imag) < 1e-9))


def test_threshold_examples():
    assert threshold_general(6) == pytest.approx(SQRT57_HALF, abs=1e-10)
    assert threshold_general(12) == pytest.approx(cubic_root(12), abs=1e-10)
    assert threshold_general(10, COMPUTED) == pytest.approx(cubic_root(10), abs=1e-10)
    assert threshold_general(10, COMPUTED) == pytest.approx(12.45042, abs=1e-5)
    assert threshold_general(10, PAPER_SPLIT) == pytest.approx(S10_COMPUTED, abs=1e-10)
    assert threshold_bipartite(3) == pytest.approx(10.0, abs=1e-10)


def test_threshold_errors():
    for bad in (5, 2, 0):
        with pytest.raises(ParameterError):
            threshold_general(bad)
    with pytest.raises(ParameterError):
        threshold_general(6, "other")
    with pytest.raises(ParameterError):
        threshold_bipartite(2)


def test_threshold_reproducibility_against_explicit_graphs():
    for n in range(4, 17, 2):
        for params in (snk_half(n), gstar_params(n)):
            assert abs(quotient_route(params)[2] - family_lambda(params).value) <= 1e-8
    for n in range(3, 9):
        assert abs(threshold_bipartite(n) - family_lambda(bip_extremal(n)).value) <= 1e-8


def test_computed_mode_is_minimum():
    for n in range(4, 21, 2):
        s_val = quotient_route(snk_half(n))[2]
        g_val = quotient_route(gstar_params(n))[2]
        assert threshold_general(n, COMPUTED) == min(s_val, g_val)


def test_certify_general_examples():
    r = certify_general(complete(6))
    assert r.verdict is Verdict.CERTIFIED_PM and r.pm_actual
    r = certify_general(gstar(12))
    assert r.verdict is Verdict.EXTREMAL_MATCH
    assert r.extremal_match == "GStar(12)"
    assert r.witness.s_set == frozenset({0})
    r = certify_general(snk(10, 4), COMPUTED)
    assert r.verdict is Verdict.CONDITION_NOT_MET and not r.pm_actual
    assert any("exceeds threshold" in note for note in r.notes)
    assert r.lambda1.value > r.threshold_computed


def test_certify_general_input_errors():
    with pytest.raises(InputError):
        certify_general(complete(5))
    with pytest.raises(InputError):
        certify_general(empty(4))
    with pytest.raises(InputError):
        certify_general(complete(4), "other")


def test_certify_bipartite_examples():
    k33 = build_family(FamilyParams(Family.COMPLETE_BIPARTITE, a=3, b=3))
    assert certify_bipartite(k33).verdict is Verdict.CERTIFIED_PM
    r = certify_bipartite(bsp(3, 2, 1))
    assert r.verdict is Verdict.EXTREMAL_MATCH
    assert r.lambda1.value == pytest.approx(10.0, abs=1e-9)
    assert len(r.witness.s_set) == 2
    # B_{2,1} on sides of four is the side-swapped reading of B_{3,2}
    r = certify_bipartite(bsp(4, 2, 1))
    ext = family_lambda(bip_extremal(4)).value
    assert abs(r.lambda1.value - ext) <= 1e-8
    assert r.verdict is Verdict.EXTREMAL_MATCH


def test_certify_bipartite_derives_bipartition_and_checks_scope():
    r = certify_bipartite(bsp(3, 2, 1).without_bipartition())
    assert r.verdict is Verdict.EXTREMAL_MATCH
    with pytest.raises(InputError, match="not bipartite"):
        certify_bipartite(complete(3))
    with pytest.raises(InputError, match="n >= 3"):
        certify_bipartite(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    r = certify_bipartite(star)
    assert r.verdict is Verdict.CONDITION_NOT_MET and not r.pm_actual
    assert "no perfect matching possible" in r.notes[0]


def check_report_invariants(r) -> None:
    if r.verdict is Verdict.CERTIFIED_PM:
        assert r.lambda1.hi <= r.threshold and r.pm_actual
    if r.verdict is Verdict.EXTREMAL_MATCH:
        assert r.extremal_match and not r.pm_actual
    if not r.pm_actual:
        assert r.witness is not None


@pytest.mark.parametrize("mode", [PAPER_SPLIT, COMPUTED])
@pytest.mark.parametrize("n", [4, 6])
def test_general_sweep_invariants(n, mode):
    rep = sweep("general", mode, n=n)
    assert rep.total == {4: 6, 6: 112}[n]
    assert not rep.discrepancies
    ids = [r.graph_id for r in rep.records]
    assert ids == sorted(ids)
    for r in rep.records:
        check_report_invariants(r)
    lambdas = [v for _, v in rep.pm_free]
    assert rep.minimizer_lambda == min(lambdas)


def test_sweep_n4_example():
    rep = sweep(n=4)
    assert len(rep.pm_free) == 1
    gid, lam = rep.pm_free[0]
    assert gid == write_graph6(Graph.from_edges(4, [(0, 3), (1, 3), (2, 3)]))
    assert abs(lam - (2 + math.sqrt(7))) <= 1e-9
    assert rep.minimizer == [gid]


def test_bipartite_sweep_n3():
    rep = sweep("bipartite", n=3)
    assert not rep.discrepancies
    assert len(rep.pm_free) == 1
    assert rep.minimizer_lambda == pytest.approx(10.0, abs=1e-9)
    for r in rep.records:
        check_report_invariants(r)


def test_sweep_threads_do_not_change_output():
    a = sweep(n=6, threads=1)
    b = sweep(n=6, threads=2)
    assert [(r.graph_id, r.lambda1.value, r.verdict) for r in a.records] == [
        (r.graph_id, r.lambda1.value, r.verdict) for r in b.records
    ]


def test_stream_sweep_reports_bad_lines():
    lines = [">>graph6<<", "C~", "garbage", "C?", "E?~w", "CF"]
    rep = sweep(stream=lines)
    assert rep.total == 2  # C~ and CF; E?~w has order 6
    joined = "\n".join(rep.errors)
    assert "line 3" in joined and "line 4: graph is disconnected" in joined and "line 5" in joined
    assert not rep.discrepancies


def test_stream_sweep_bipartite_declares_sides():
    lines = [write_graph6(bsp(3, 2, 1)), write_graph6(complete(3)), "E?bw"]
    rep = sweep("bipartite", stream=lines)
    assert any("not bipartite" in e for e in rep.errors)
    assert rep.pm_free and rep.minimizer_lambda == pytest.approx(10.0, abs=1e-9)


def test_sweep_argument_errors():
    with pytest.raises(InputError):
        sweep(n=5)
    with pytest.raises(InputError):
        sweep()
    with pytest.raises(InputError):
        sweep("bipartite", n=2)


def test_verify_witness_rejects_bad_witnesses():
    from distpm.matching import HallWitness, TutteWitness

    g = gstar(6)
    assert verify_witness(g, TutteWitness(frozenset({0}), 3))
    assert not verify_witness(g, TutteWitness(frozenset({1}), 3))
    b = bsp(3, 2, 1)
    assert verify_witness(b, HallWitness(frozenset({0, 1}), 1, frozenset({3})))
    assert not verify_witness(b, HallWitness(frozenset({0, 2}), 1, frozenset({3})))


def test_odd_partitions():
    assert list(odd_partitions(5)) == [(5,), (3, 1, 1), (1, 1, 1, 1, 1)]
    assert all(sum(p) == 9 and all(x % 2 for x in p) for p in odd_partitions(9))


def test_claim_examples():
    (c,) = [c for c in verify_claim("T2.C1", {"n": [4], "s": [3]}) if c.params["p"] == 1]
    assert c.satisfied and c.lhs > c.rhs + 1e-8
    (c,) = verify_claim("T1.C3", {"n": [12], "s": [2]})
    assert c.satisfied and c.lhs > c.rhs + 1e-8
    # n - s must split into at least s + 2 odd parts: n = 10, s = 2 needs four parts
    (c,) = [
        c for c in verify_claim("T1.C1", {"n": [10], "s": [2]}) if c.params["parts"] == (3, 3, 1, 1)
    ]
    assert c.satisfied and c.lhs > c.rhs + 1e-8


@pytest.mark.parametrize("cid", ["T1.C1", "T1.C2", "T1.C3", "T1.C4", "T2.C1", "T2.C2"])
def test_ordering_claims_hold_with_equality_only_for_isomorphic_pairs(cid):
    checks = [c for c in verify_claim(cid, {"n": range(4, 15)}) if c.satisfied is not None]
    assert checks
    for c in checks:
        assert c.satisfied, (c.params, c.notes)


def test_equality_cases_are_isomorphic_pairs():
    eq = [c for c in verify_claim("T1.C3", {"n": range(6, 15, 2)}) if c.gap <= 1e-8]
    assert eq and all(c.params["s"] == 1 for c in eq)


def test_claim5_reverses_at_ten():
    checks = {c.params["n"]: c for c in verify_claim("T1.C5", {"n": [4, 6, 8, 10]})}
    assert checks[4].satisfied and checks[6].satisfied and checks[8].satisfied
    assert checks[10].satisfied is False
    assert "reverses" in checks[10].notes[-1]


def test_claim_grid_skips():
    (c,) = verify_claim("T1.C4", {"n": [10]})
    assert c.satisfied is None
    (c,) = verify_claim("T1.C1", {"n": [7]})
    assert c.satisfied is None
    with pytest.raises(ParameterError):
        verify_claim("T9", {"n": [4]})
    with pytest.raises(ParameterError):
        verify_claim("H", {})


@pytest.mark.parametrize("cid", ["H", "GN", "GFACT.corrected", "R.corrected"])
def test_identity_claims_hold(cid):
    checks = verify_claim(cid, {"n": range(4, 21)})
    assert checks and all(c.satisfied for c in checks)


def test_stated_bipartite_bracket_differs_from_recomputation():
    checks = verify_claim("GFACT", {"n": range(4, 12)})
    assert all(c.satisfied for c in checks if c.params["s"] == 2)
    assert not any(c.satisfied for c in checks if c.params["s"] >= 3)
    r_checks = verify_claim("R", {"n": [6]})
    assert r_checks[0].satisfied is False and r_checks[1].satisfied is False
    assert r_checks[2].satisfied is True  # positivity holds for either bracket
    fixed = verify_claim("R.corrected", {"n": [6]})
    assert all(c.satisfied for c in fixed)


def test_audit_values():
    checks = audit_closed_forms(10)
    s = {c.params["n"]: c for c in checks if c.claim_id == "AUDIT.S"}
    for n, c in s.items():
        literal = (3 * n - 4 + math.sqrt(n * n + 24 * n - 16)) / 4
        # two-class quotient [[k-1, n-k], [k, 2(n-k-1)]] with k = n/2 - 1
        k = n // 2 - 1
        tr, det = (k - 1) + 2 * (n - k - 1), (k - 1) * 2 * (n - k - 1) - (n - k) * k
        root = (tr + math.sqrt(tr * tr - 4 * det)) / 2
        assert abs(c.gap - abs(literal - root)) <= 1e-9
        assert c.satisfied is False
    assert s[6].gap == pytest.approx((math.sqrt(57) - math.sqrt(41)) / 2, abs=1e-9)
    assert s[10].lhs == 11.0 and s[10].rhs == pytest.approx(S10_COMPUTED, abs=1e-9)
    bw = {c.params["n"]: c for c in checks if c.claim_id == "AUDIT.BW"}
    assert bw[3].lhs == 9 and bw[3].rhs == Fraction(29, 3)
    for n, c in bw.items():
        assert c.rhs == Fraction(3 * n * n + 2 * n - 4, n)
    assert all(c.satisfied for c in checks if c.claim_id == "AUDIT.BW.rho")


def test_gstar10_under_literal_split_is_flagged():
    r = certify_general(gstar(10), PAPER_SPLIT)
    assert r.verdict is Verdict.THEOREM_DISCREPANCY and not r.pm_actual
    assert any("disagree" in note for note in r.notes)
    assert certify_general(gstar(10), COMPUTED).verdict is Verdict.EXTREMAL_MATCH

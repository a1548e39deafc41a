"""JSON, CSV and text rendering of certificates, sweeps and claim checks.

Reals are written as decimal strings with 12 significant digits so that
output is byte-identical across runs and thread counts.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from typing import Iterable

from distpm.matching import HallWitness, TutteWitness
from distpm.spectral import EigenEstimate
from distpm.verifier import CertificateReport, ClaimCheck, SweepReport

CSV_COLUMNS = ("graph6", "n", "lambda1", "lambda1_lo", "lambda1_hi", "wiener", "pm", "witness", "verdict")


def real(x: float | Fraction | int | None) -> str | None:
    if x is None:
        return None
    x = float(x)
    if math.isnan(x):
        return "nan"
    return "%#.12g" % x


def _exact_or_real(x) -> str | int | None:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, int):
        return x
    return real(x)


def witness_dict(w: TutteWitness | HallWitness | None) -> dict | None:
    if w is None:
        return None
    if isinstance(w, TutteWitness):
        return {"kind": "tutte", "S": sorted(w.s_set), "odd_components": w.odd_count}
    return {
        "kind": "hall",
        "S": sorted(w.s_set),
        "neighborhood": sorted(w.neighborhood),
        "neighborhood_size": w.neighborhood_size,
    }


def witness_text(w: TutteWitness | HallWitness | None) -> str:
    if w is None:
        return ""
    s = " ".join(map(str, sorted(w.s_set)))
    if isinstance(w, TutteWitness):
        return f"tutte S={{{s}}} odd={w.odd_count}"
    return f"hall S={{{s}}} |N(S)|={w.neighborhood_size}"


def estimate_dict(e: EigenEstimate) -> dict:
    return {"value": real(e.value), "lo": real(e.lo), "hi": real(e.hi), "iterations": e.iterations}


def certificate_dict(r: CertificateReport) -> dict:
    return {
        "graph_id": r.graph_id,
        "n": r.n,
        "theorem": r.theorem,
        "mode": r.mode,
        "lambda1": estimate_dict(r.lambda1),
        "wiener": r.wiener,
        "threshold_paper_split": real(r.threshold_paper_split),
        "threshold_computed": real(r.threshold_computed),
        "extremal_family": r.extremal_family,
        "extremal_match": r.extremal_match,
        "pm_actual": r.pm_actual,
        "matching_size": r.matching_size,
        "witness": witness_dict(r.witness),
        "verdict": r.verdict.value,
        "notes": list(r.notes),
    }


def claim_dict(c: ClaimCheck) -> dict:
    return {
        "claim_id": c.claim_id,
        "params": {k: (list(v) if isinstance(v, tuple) else v) for k, v in c.params.items()},
        "lhs": _exact_or_real(c.lhs),
        "rhs": _exact_or_real(c.rhs),
        "relation": c.relation,
        "satisfied": c.satisfied,
        "gap": real(c.gap),
        "notes": list(c.notes),
    }


def sweep_dict(s: SweepReport) -> dict:
    return {
        "n": s.n,
        "theorem": s.theorem,
        "mode": s.mode,
        "total": s.total,
        "threshold": real(s.threshold),
        "extremal_family": s.extremal_family,
        "pm_free": [[g, real(v)] for g, v in s.pm_free],
        "minimizer": s.minimizer,
        "minimizer_lambda": real(s.minimizer_lambda),
        "discrepancies": s.discrepancies,
        "errors": s.errors,
        "records": [certificate_dict(r) for r in s.records],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def certificates_csv(records: Iterable[CertificateReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([
            r.graph_id, r.n, real(r.lambda1.value), real(r.lambda1.lo), real(r.lambda1.hi),
            r.wiener, str(r.pm_actual).lower(), witness_text(r.witness), r.verdict.value,
        ])
    return buf.getvalue()


def claims_csv(checks: Iterable[ClaimCheck]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("claim_id", "params", "lhs", "rhs", "relation", "satisfied", "gap", "notes"))
    for c in checks:
        params = ";".join(f"{k}={v}" for k, v in c.params.items())
        w.writerow([
            c.claim_id, params, _exact_or_real(c.lhs), _exact_or_real(c.rhs), c.relation,
            "" if c.satisfied is None else str(c.satisfied).lower(), real(c.gap) or "",
            "; ".join(c.notes),
        ])
    return buf.getvalue()


def certificate_text(r: CertificateReport) -> str:
    lines = [
        f"graph      {r.graph_id}  (n = {r.n}, {r.theorem} theorem, {r.mode})",
        f"lambda1    {real(r.lambda1.value)}  in [{real(r.lambda1.lo)}, {real(r.lambda1.hi)}]",
        f"wiener     {r.wiener}",
        f"threshold  {real(r.threshold)}  (paper_split {real(r.threshold_paper_split)}, "
        f"computed {real(r.threshold_computed)})",
        f"extremal   {r.extremal_family}: {'match' if r.extremal_match else 'no match'}",
        f"pm         {str(r.pm_actual).lower()}  (matching size {r.matching_size})",
    ]
    if r.witness is not None:
        lines.append(f"witness    {witness_text(r.witness)}")
    lines.append(f"verdict    {r.verdict.value}")
    lines.extend(f"note       {note}" for note in r.notes)
    return "\n".join(lines) + "\n"


def sweep_text(s: SweepReport) -> str:
    lines = [
        f"{s.theorem} sweep, n = {s.n}, mode {s.mode}: {s.total} graphs",
        f"threshold {real(s.threshold)} ({s.extremal_family})",
        f"perfect-matching-free: {len(s.pm_free)}",
    ]
    if s.minimizer:
        lines.append(f"minimizer {', '.join(s.minimizer)} with lambda1 {real(s.minimizer_lambda)}")
    lines.extend(f"discrepancy {d}" for d in s.discrepancies)
    lines.extend(f"error {e}" for e in s.errors)
    return "\n".join(lines) + "\n"


def claims_text(checks: Iterable[ClaimCheck]) -> str:
    out = []
    for c in checks:
        status = {True: "ok  ", False: "FAIL", None: "skip"}[c.satisfied]
        params = " ".join(f"{k}={v}" for k, v in c.params.items())
        line = f"{status} {c.claim_id:<16} {params:<28} lhs={_exact_or_real(c.lhs)} {c.relation} rhs={_exact_or_real(c.rhs)}"
        if c.notes:
            line += "  # " + "; ".join(c.notes)
        out.append(line)
    return "\n".join(out) + ("\n" if out else "")

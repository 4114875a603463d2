"""Acceptance criteria 1-10, one test each, at the stated tolerances.

Each test records a ``CRITERION n: PASS|FAIL`` line (printed in the
terminal summary) before asserting, so the summary is complete even when a
criterion fails.
"""

from __future__ import annotations

import time
from math import comb

import pytest

from hermsinger import rrspace as rr
from hermsinger.codes import (
    bz_min_distance,
    distance_lower_bound_by_columns,
    evaluation_vector,
    exhaustive_min_distance,
    quasi_cyclic_check,
    weight,
)
from hermsinger.harness.reference import reproduce_reference
from hermsinger.harness.verify import GEOMETRY, PASS, Context, verify

from conftest import ACCEPTANCE_LINES, context


def record(n: int, checks: dict[str, bool], detail: str) -> None:
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    if failed:
        line += f"  failed checks: {', '.join(failed)}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _warm_kernels() -> None:
    """Compile the JIT kernels once (a one-off cost, cached on disk afterwards)."""
    from hermsinger.codes import random_code
    from hermsinger.gftower import small_field

    for q in (3, 4):
        exhaustive_min_distance(random_code(small_field(q), 4, 2, 0))


def test_criterion_1_functional_code_q3():
    _warm_kernels()
    start = time.perf_counter()
    ctx = Context(3)
    C = ctx.functional(1)
    rep = exhaustive_min_distance(C)
    elapsed = time.perf_counter() - start
    checks = {
        "[n,k]=[21,5]": (C.n, C.k) == (21, 5),
        "field F_9": C.q2 == 9,
        "d=14": rep.distance == 14,
        "7381 projective words": rep.extra["projective_messages"] == 7381 == rep.visited,
        "runtime < 1 s": elapsed < 1.0,
    }
    record(1, checks, f"[{C.n}, {C.k}, {rep.distance}] over F_{C.q2} in {elapsed:.2f}s")
    assert all(checks.values()), checks


def test_criterion_2_functional_code_q4():
    ctx = context(4)
    C = ctx.functional(1)
    t0 = time.perf_counter()
    single = exhaustive_min_distance(C, threads=1)
    t1 = time.perf_counter()
    multi = exhaustive_min_distance(C, threads=8)
    t2 = time.perf_counter()
    wit = evaluation_vector(rr.lambda_product_witness(ctx.dom, 1), ctx.dom)
    checks = {
        "[n,k]=[52,8]": (C.n, C.k) == (52, 8),
        "field F_16": C.q2 == 16,
        "exhaustive d >= 39": single.lower >= 39,
        "2.86e8 projective words": single.visited == (16**8 - 1) // 15,
        "witness weight 39": weight(wit) == 39 and C.contains(wit),
        "d = 39": single.distance == 39 == multi.distance,
        "single-threaded < 10 min": t1 - t0 < 600,
        "8-way partitioned < 2 min": t2 - t1 < 120,
    }
    record(2, checks, f"[52, 8, {single.distance}] single {t1 - t0:.1f}s, 8-way {t2 - t1:.1f}s")
    assert all(checks.values()), checks


def test_criterion_3_subcode():
    out, checks = [], {}
    for q, n, k, d, limit in [(3, 21, 3, 17, 1.0), (4, 52, 6, 42, 10.0)]:
        ctx = context(q)
        start = time.perf_counter()
        S = ctx.subcode()
        rep = exhaustive_min_distance(S)
        elapsed = time.perf_counter() - start
        _, u, _ = ctx.fam.chord_disjoint_statistics(ctx.tau_index, ctx.dom.G)
        wit = evaluation_vector(rr.chord_witness_polynomial(ctx.dom, u), ctx.dom)
        checks[f"q={q} [{n},{k},{d}]"] = (S.n, S.k, rep.distance) == (n, k, d)
        checks[f"q={q} chord witness weight {d}"] = weight(wit) == d and S.contains(wit)
        checks[f"q={q} runtime < {limit:g} s"] = elapsed < limit
        out.append(f"[{S.n}, {S.k}, {rep.distance}] in {elapsed:.2f}s")
    record(3, checks, "; ".join(out))
    assert all(checks.values()), checks


def _differential(q: int, d: int, limit: float, n_ind: int) -> tuple[dict, str]:
    ctx = context(q)
    start = time.perf_counter()
    C = ctx.functional(1)
    D = ctx.differential()
    rep = distance_lower_bound_by_columns(D, d - 1)
    elapsed = time.perf_counter() - start
    W = rr.differential_witness(ctx.dom)
    wvec = evaluation_vector(W.function, ctx.dom)
    checks = {
        f"[n,k]=[{D.n},{D.k}]": D.k == D.n - C.k,
        f"all {n_ind} {d - 1}-subsets checked": comb(D.n, d - 1) == n_ind and rep.extra["certified_independent_up_to"] == d - 1,
        f"dependent {d}-subset": rep.exact and rep.distance == d and len(rep.extra["dependent_columns"]) == d,
        "witness orthogonal": C.orthogonal_to(wvec),
        f"witness weight >= d": weight(wvec) >= d,
        f"runtime < {limit:g} s": elapsed < limit,
    }
    return checks, f"[{D.n}, {D.k}, {rep.distance}] in {elapsed:.2f}s, witness weight {weight(wvec)}"


def test_criterion_4_differential_q3():
    checks, detail = _differential(3, 5, 5.0, 5985)
    checks["dimension 16"] = context(3).differential().k == 16
    record(4, checks, detail)
    assert all(checks.values()), checks


def test_criterion_5_differential_q4():
    checks, detail = _differential(4, 6, 120.0, comb(52, 5))
    checks["dimension 44"] = context(4).differential().k == 44
    record(5, checks, detail)
    assert all(checks.values()), checks


def test_criterion_6_lambda_codes_q4():
    ctx = context(4)
    checks, out = {}, []
    for lam, k, w in [(2, 21, 26), (3, 34, 13)]:
        start = time.perf_counter()
        rep = verify("Thm4.3", 4, lam, ctx=ctx)[0]
        elapsed = time.perf_counter() - start
        checks[f"lambda={lam} dimension {k}"] = rep.computed["k"] == k
        checks[f"lambda={lam} witness weight {w}"] = rep.computed["witness_weight"] == w and rep.computed["witness_in_code"]
        checks[f"lambda={lam} lower bound theorem-given"] = rep.computed.get("d_lower_source", "").startswith("theorem")
        checks[f"lambda={lam} runtime < 1 min"] = elapsed < 60
        out.append(f"lambda={lam}: [52, {rep.computed['k']}, {rep.computed['witness_weight']}] in {elapsed:.2f}s")
    record(6, checks, "; ".join(out))
    assert all(checks.values()), checks


def test_criterion_7_geometry_suite():
    checks, out = {}, []
    for q in (3, 4, 5):
        ctx = context(q)
        start = time.perf_counter()
        for name in GEOMETRY:
            for rep in verify(name, q, ctx=ctx):
                checks[f"q={q} {rep.claim}"] = rep.status == PASS
        elapsed = time.perf_counter() - start
        if q == 5:
            checks["q=5 runtime < 5 min"] = elapsed < 300
        out.append(f"q={q} {elapsed:.1f}s")
    record(7, checks, f"{len(checks)} checks; " + ", ".join(out))
    assert all(checks.values()), checks


def test_criterion_8_conic_census():
    start = time.perf_counter()
    res = reproduce_reference(all_conventions=False)
    elapsed = time.perf_counter() - start
    c = res.census
    checks = {
        "exactly 13 conics with >= 7 points": c.count == 13,
        "none with 8": c.max_incidence == 7,
        "displayed conic on exactly P0,P1,P3,P4,P9,P10,P12": res.conic_check["ok"],
        "runtime < 30 s": elapsed < 30,
    }
    record(8, checks, f"{c.count} conics with 7 points, max incidence {c.max_incidence}, {elapsed:.2f}s")
    assert all(checks.values()), checks


def test_criterion_9_literal_reproduction():
    res = reproduce_reference(all_conventions=True)
    checks = {
        "literal or structural": res.level in ("literal", "structural"),
        "orbit size 13": len(res.census.omega) == 13,
        "census statistics identical across conventions": len(set(res.census_stats)) == 1,
    }
    how = res.literal_matches[0] if res.literal_matches else {}
    record(9, checks, f"level={res.level} ({len(res.literal_matches)} literal conventions, first {how})")
    assert all(checks.values()), checks


def test_criterion_10_structural_invariants():
    checks = {}
    exact: dict[str, int] = {}
    for q in (3, 4, 5):
        ctx = context(q)
        codes = {f"q={q} functional lam={lam}": (ctx.functional(lam), lam) for lam in range(1, q)}
        codes[f"q={q} subcode"] = (ctx.subcode(), 1)
        codes[f"q={q} differential"] = (ctx.differential(), None)
        for name, (C, lam) in codes.items():
            checks[f"{name} quasi-cyclic"] = quasi_cyclic_check(C, ctx.dom)
        C1, D1 = ctx.functional(1), ctx.differential()
        checks[f"q={q} dual dimension identity"] = C1.k + D1.k == C1.n and D1.dual().same_code(C1)
        if q == 5:
            continue
        # exact distances where an engine terminates, cross-checked against a second engine
        for name, (C, lam) in codes.items():
            if "differential" in name:
                d = distance_lower_bound_by_columns(C, {3: 4, 4: 5}[q]).distance
            elif C.k <= 8:
                d = exhaustive_min_distance(C).distance
            else:
                continue
            exact[name] = d
            checks[f"{name} Singleton"] = C.k + d <= C.n + 1
            if lam is not None:
                designed = C.n - lam * (q * q - q + 1)
                checks[f"{name} designed bound"] = d >= designed
            bz = bz_min_distance(C, budget=2 * 10**7)
            if bz.exact:
                checks[f"{name} bz agrees"] = bz.distance == d
            else:
                checks[f"{name} bz bounds consistent"] = bz.lower <= d <= bz.upper
            if C.n - C.k <= 8 or d <= 6:
                continue
            col = distance_lower_bound_by_columns(C, d - 1, budget=2 * 10**8) if comb(C.n, d - 1) < 10**7 else None
            if col is not None:
                checks[f"{name} columns agree"] = col.distance == d
    record(10, checks, f"{len(checks)} checks; exact distances {exact}")
    assert all(checks.values()), checks


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))

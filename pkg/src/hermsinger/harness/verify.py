"""Claim-by-claim verification.

Each claim tag maps to a check that rebuilds what it needs from scratch and
returns a :class:`VerificationReport`.  Distances are compared exactly;
claims that only bound a quantity are compared as bounds.  When a lower
bound comes from the algebraic-geometry (Goppa) bound rather than a
computation the report says so.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from ..codes import (
    EvaluationDomain,
    LinearCode,
    bz_min_distance,
    distance_lower_bound_by_columns,
    evaluate,
    evaluation_vector,
    exhaustive_min_distance,
    quasi_cyclic_check,
    weight,
)
from ..codes.distance import DEFAULT_BUDGET, projective_message_count
from ..errors import BadParameter, UnknownClaim
from ..forms import HomogeneousForm
from ..frame import conjugated_singer, fermat_form, frame_roots, make_frame, small_matrix, transform_form
from ..gftower import build_tower
from ..hermitian import family
from ..linalg import rank
from ..projgeom import A0, A1, A2, frobenius_collineation
from .. import rrspace as rr
from .census import conic_census

PASS, FAIL, PARTIAL, SKIP = "PASS", "FAIL", "PARTIAL", "SKIP"


@dataclass
class VerificationReport:
    claim: str
    q: int
    lam: int | None
    expected: dict
    computed: dict
    status: str
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "q": self.q,
            "lambda": self.lam,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
            "elapsed_s": round(self.elapsed, 3),
            "notes": self.notes,
        }

    def line(self) -> str:
        lam = f" lambda={self.lam}" if self.lam is not None else ""
        return (
            f"{self.claim:<11} q={self.q}{lam}  expected={_compact(self.expected)}  "
            f"computed={_compact(self.computed)}  {self.status}  {self.elapsed:.2f}s"
        )


def _compact(d: dict) -> str:
    return "{" + ", ".join(f"{k}: {v}" for k, v in d.items()) + "}"


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


@dataclass
class Context:
    q: int
    tau_index: int = 0
    budget: int = DEFAULT_BUDGET
    threads: int = 1

    def __post_init__(self) -> None:
        self.tower = build_tower(self.q)
        self.fam = family(self.tower)
        self.dom = EvaluationDomain(self.tower, self.fam, self.tau_index)
        self._cache: dict = {}

    def basis(self) -> rr.RRBasis:
        if "basis" not in self._cache:
            self._cache["basis"] = rr.basis_L_G(self.dom)
        return self._cache["basis"]

    def functional(self, lam: int = 1) -> LinearCode:
        key = ("functional", lam)
        if key not in self._cache:
            span = rr.spanning_L_lambdaG(lam, self.basis())
            self._cache[key] = build_functional(self.dom, span, lam)
        return self._cache[key]

    def subcode(self) -> LinearCode:
        if "subcode" not in self._cache:
            B = rr.lambda_subcode_basis(self.dom)
            self._cache["subcode"] = evaluate(
                B, self.dom, len(B), {"kind": "subcode", "q": self.q, "tau_index": self.tau_index}
            )
        return self._cache["subcode"]

    def differential(self) -> LinearCode:
        if "differential" not in self._cache:
            D = self.functional(1).dual()
            D.provenance = {"kind": "differential", "q": self.q, "tau_index": self.tau_index}
            self._cache["differential"] = D
        return self._cache["differential"]


def build_functional(dom: EvaluationDomain, span: rr.RRBasis, lam: int) -> LinearCode:
    """Evaluation code of a (spanning set of) L(lam*G), rank-checked against Riemann-Roch."""
    from ..codes.linear import LinearCode as LC
    from ..frame import normalize_into_subfield
    from ..gftower import small_field
    from ..linalg import row_basis
    from ..errors import RankShortfall

    F = small_field(dom.q)
    raw = span.evaluate_raw(dom.points)
    rows = np.array([F.from_tower(normalize_into_subfield(r, dom.tower)) for r in raw])
    basis = row_basis(F, rows)
    k = rr.lambda_dimension(dom.q, lam)
    if basis.shape[0] != k:
        raise RankShortfall(f"products span rank {basis.shape[0]}, Riemann-Roch gives {k}")
    prov = {"kind": "functional", "q": dom.q, "lambda": lam, "tau_index": dom.tau_index}
    return LC(F, basis, prov, dom)


def designed_distance(q: int, lam: int) -> int:
    return q * (q * q - q + 1) - lam * (q * q - q + 1)


# -- geometry -----------------------------------------------------------------------


def check_unital_counts(ctx: Context) -> VerificationReport:
    fam, q = ctx.fam, ctx.q
    sizes, agree, preserved = [], True, True
    phi = frobenius_collineation(ctx.tower)
    S = fam.subplane
    for j in range(fam.num_curves):
        solver = fam.unital_indices(j)
        sizes.append(len(solver))
        agree &= solver == fam.unital_bruteforce(j)
        img = phi.apply_many(S.points[solver])
        preserved &= sorted(S.index_of(tuple(p)) for p in img) == solver
    unital = np.zeros(S.size, dtype=bool)
    unital[fam.unital_indices(ctx.tau_index)] = True
    line_counts = sorted({int(unital[S.line_points(i)].sum()) for i in range(S.size)})
    ok = set(sizes) == {q**3 + 1} and agree and preserved and line_counts == [1, q + 1]
    return VerificationReport(
        "Prop3.1",
        q,
        None,
        {"points_per_curve": q**3 + 1, "line_sections": [1, q + 1]},
        {
            "points_per_curve": sorted(set(sizes)),
            "solver_equals_bruteforce": bool(agree),
            "frobenius_preserves": bool(preserved),
            "line_sections": line_counts,
        },
        _status(ok),
    )


def check_side_tangency(ctx: Context) -> VerificationReport:
    fam, q = ctx.fam, ctx.q
    sides = [((0, 0, 1), A1, A2), ((1, 0, 0), A2, A0), ((0, 1, 0), A0, A1)]
    ok = True
    seen = []
    for j in range(fam.num_curves):
        for line, a, b in sides:
            div = fam.line_intersection_divisor(j, line)
            good = dict(div) == {a: q, b: 1}
            ok &= good
            if j == 0:
                seen.append({str(k): v for k, v in div.items()})
    return VerificationReport(
        "Lemma3.3",
        q,
        None,
        {"side_divisor": f"q*A_i + A_(i+1), q={q}"},
        {"all_curves_all_sides": bool(ok), "curve0": seen},
        _status(ok),
    )


def check_orbit_incidence(ctx: Context) -> VerificationReport:
    fam, q = ctx.fam, ctx.q
    counts = []
    for orbit in fam.all_orbits():
        mem = fam.membership[:, orbit]
        counts.append(int(mem.all(axis=1).sum()))
    per_curve = [len(fam.orbit_partition(j)) for j in range(fam.num_curves)]
    double = sum(counts) == sum(per_curve)
    ok = set(counts) == {q + 1} and set(per_curve) == {q + 1} and double
    return VerificationReport(
        "Prop3.4",
        q,
        None,
        {"curves_per_orbit": q + 1, "orbits_per_curve": q + 1},
        {"curves_per_orbit": sorted(set(counts)), "orbits_per_curve": sorted(set(per_curve)), "double_count": double},
        _status(ok),
    )


def check_unital_coverage(ctx: Context) -> VerificationReport:
    fam = ctx.fam
    mem = fam.membership
    uncovered = 0
    for j in range(fam.num_curves):
        pts = fam.unital_indices(j)
        others = np.delete(mem[:, pts], j, axis=0)
        uncovered += int((~others.any(axis=0)).sum())
    return VerificationReport(
        "Prop3.5", ctx.q, None, {"uncovered_points": 0}, {"uncovered_points": uncovered}, _status(uncovered == 0)
    )


def _pairs(ctx: Context) -> list[tuple[int, int]]:
    n = ctx.fam.num_curves
    if ctx.q <= 4:
        return list(combinations(range(n), 2))
    # shifting subplane indices is a collineation permuting the curves transitively,
    # so pairs through curve 0 cover every pair up to symmetry
    return [(0, k) for k in range(1, n)]


def check_pairwise_intersections(ctx: Context) -> VerificationReport:
    fam, q = ctx.fam, ctx.q
    worst, simple, nonempty = 0, True, True
    pairs = _pairs(ctx)
    for j, k in pairs:
        rep = fam.curve_intersection(j, k, with_resultants=False)
        worst = max(worst, len(rep.common))
        simple &= rep.all_simple
        nonempty &= len(rep.common) > 0
    ok = worst <= q * q - q + 1 and simple and nonempty
    return VerificationReport(
        "Prop3.6",
        q,
        None,
        {"max_common": q * q - q + 1, "transversal": True, "nonempty (Cor 3.7)": True},
        {"max_common": worst, "transversal": bool(simple), "nonempty (Cor 3.7)": bool(nonempty), "pairs": len(pairs)},
        _status(ok),
    )


def check_intersection_divisor(ctx: Context) -> VerificationReport:
    fam, q = ctx.fam, ctx.q
    n = fam.num_curves
    pairs = [(0, k) for k in range(1, n)] if q >= 4 else list(combinations(range(n), 2))
    ok, totals, mults = True, set(), set()
    for j, k in pairs:
        rep = fam.curve_intersection(j, k)
        ok &= rep.ok
        totals.add(rep.bezout_total)
        mults.update(rep.triangle.values())
    return VerificationReport(
        "Lemma3.7",
        q,
        None,
        {"one_orbit": True, "vertex_multiplicity": q, "bezout_total": (q + 1) ** 2},
        {"all_pairs_ok": bool(ok), "vertex_multiplicity": sorted(mults), "bezout_total": sorted(totals), "pairs": len(pairs)},
        _status(ok),
    )


def check_disjoint_chords(ctx: Context) -> VerificationReport:
    q = ctx.q
    best, witness, _ = ctx.fam.chord_disjoint_statistics(ctx.tau_index, ctx.dom.G)
    bound = 0.5 * (q - 1) ** 2 - 1
    return VerificationReport(
        "Prop3.8",
        q,
        None,
        {"max_disjoint_chords_at_least": math.ceil(bound), "real_bound": bound},
        {"max_disjoint_chords": best, "witness_point": witness},
        _status(best >= math.ceil(bound)),
    )


def check_arc(ctx: Context) -> VerificationReport:
    fam = ctx.fam
    K = fam.singer_arc()
    is_arc = fam.is_arc(K)
    complete = fam.arc_is_complete(K)
    sub_complete = fam.arc_is_complete(K[:3])
    g_arc = fam.is_arc(ctx.dom.G) and fam.arc_is_complete(ctx.dom.G)
    ok = is_arc and complete and not sub_complete and g_arc
    return VerificationReport(
        "Arc",
        ctx.q,
        None,
        {"size": ctx.q**2 - ctx.q + 1, "arc": True, "complete": True, "3-subset complete": False},
        {
            "size": len(K),
            "arc": is_arc,
            "complete": complete,
            "3-subset complete": sub_complete,
            "G is a complete arc": g_arc,
        },
        _status(ok),
    )


def check_fermat_frame(ctx: Context) -> VerificationReport:
    T, q = ctx.tower, ctx.q
    sg = ctx.fam.singer
    H1 = ctx.fam.curve_for_t(1).form
    fermat = fermat_form(T)
    roots = frame_roots(T)
    results = []
    for a in roots:
        fc = make_frame(T, a)
        maps = transform_form(H1, fc).proportional_to(fermat)
        N = conjugated_singer(fc, sg)
        Nm = small_matrix(N)
        symmetric = bool(np.array_equal(Nm, Nm.T))
        order = 1
        P = N
        while not P.is_scalar():
            P = P.compose(N)
            order += 1
        canon = fc.to_canonical(ctx.fam.subplane.points)
        rational = bool(np.all(T.in_subfield_v(canon, 2)))
        results.append({"maps_to_fermat": maps, "symmetric": symmetric, "order": order, "points_rational": rational})
    ok = bool(roots) and all(
        r["maps_to_fermat"] and r["symmetric"] and r["order"] == q * q - q + 1 and r["points_rational"] for r in results
    )
    return VerificationReport(
        "Remark6.1",
        q,
        None,
        {"fermat_image": True, "symmetric_generator": True, "generator_order": q * q - q + 1},
        {"frame_roots": len(roots), "per_root": results},
        _status(ok),
    )


# -- codes ---------------------------------------------------------------------------


def _structural(ctx: Context, code: LinearCode, d_exact: int | None, lam: int | None) -> dict:
    n, k = code.n, code.k
    out = {"quasi_cyclic": quasi_cyclic_check(code, ctx.dom)}
    if d_exact is not None:
        out["singleton"] = k + d_exact <= n + 1
        if lam is not None:
            out["designed_bound"] = d_exact >= designed_distance(ctx.q, lam)
    return out


def check_functional_code(ctx: Context) -> VerificationReport:
    q = ctx.q
    n = q * (q * q - q + 1)
    k_exp = (q * q - q) // 2 + 2
    d_exp = q**3 + 1 - 2 * (q * q - q + 1)
    C = ctx.functional(1)
    wit = rr.lambda_product_witness(ctx.dom, 1)
    wvec = evaluation_vector(wit, ctx.dom)
    computed = {"n": C.n, "k": C.k, "witness_weight": weight(wvec), "witness_in_code": C.contains(wvec)}
    notes = []
    if projective_message_count(C.q2, C.k) <= ctx.budget:
        rep = exhaustive_min_distance(C, ctx.budget, ctx.threads)
        computed["d"] = rep.lower
        computed["d_method"] = "exhaustive"
        computed["min_weight_words"] = rep.extra["min_weight_projective_count"]
        d = rep.lower
        status = _status(C.n == n and C.k == k_exp and d == d_exp and computed["witness_weight"] == d_exp)
    else:
        d = None
        computed["d_lower"] = designed_distance(q, 1)
        computed["d_upper"] = weight(wvec)
        notes.append("lower bound is the algebraic-geometry designed distance (theorem-given), upper bound from the witness")
        status = _status(C.n == n and C.k == k_exp and computed["d_lower"] == computed["d_upper"] == d_exp)
    computed.update(_structural(ctx, C, d, 1))
    if not all(computed.get(x, True) for x in ("quasi_cyclic", "singleton", "designed_bound", "witness_in_code")):
        status = FAIL
    return VerificationReport("Thm4.1", q, 1, {"n": n, "k": k_exp, "d": d_exp}, computed, status, notes=notes)


def check_subcode(ctx: Context) -> VerificationReport:
    q = ctx.q
    n = q * (q * q - q + 1)
    k_exp = (q * q - q) // 2
    d_exp = q**3 - 2 * (q * q - q - 1)
    C = ctx.subcode()
    best, u, _ = ctx.fam.chord_disjoint_statistics(ctx.tau_index, ctx.dom.G)
    wit = rr.chord_witness_polynomial(ctx.dom, u)
    wvec = evaluation_vector(wit, ctx.dom)
    computed = {"n": C.n, "k": C.k, "chord_witness_weight": weight(wvec), "witness_in_code": C.contains(wvec)}
    notes = []
    if projective_message_count(C.q2, C.k) <= ctx.budget:
        rep = exhaustive_min_distance(C, ctx.budget, ctx.threads)
        computed["d"] = rep.lower
        computed["improvement_over_designed"] = rep.lower - designed_distance(q, 1)
        ok = C.k == k_exp and rep.lower == d_exp and weight(wvec) == d_exp and computed["witness_in_code"]
        status = _status(ok)
    else:
        computed["d_upper"] = weight(wvec)
        computed["d_lower_designed"] = designed_distance(q, 1)
        notes.append("exhaustive enumeration exceeds the budget; only the witness side is computed")
        status = PARTIAL if C.k == k_exp and weight(wvec) == d_exp else FAIL
    computed["quasi_cyclic"] = quasi_cyclic_check(C, ctx.dom)
    if not computed["quasi_cyclic"]:
        status = FAIL
    return VerificationReport("Thm4.2", q, 1, {"n": n, "k": k_exp, "d": d_exp}, computed, status, notes=notes)


def check_lambda_code(ctx: Context, lam: int) -> VerificationReport:
    q = ctx.q
    n = q * (q * q - q + 1)
    k_exp = ((2 * lam - 1) * (q * q - q)) // 2 + lam + 1
    d_exp = (q - lam) * (q * q - q + 1)
    C = ctx.functional(lam)
    wit = rr.lambda_product_witness(ctx.dom, lam)
    wvec = evaluation_vector(wit, ctx.dom)
    computed = {"n": C.n, "k": C.k, "witness_weight": weight(wvec), "witness_in_code": C.contains(wvec)}
    notes = []
    if projective_message_count(C.q2, C.k) <= ctx.budget:
        rep = exhaustive_min_distance(C, ctx.budget, ctx.threads)
        computed["d"] = rep.lower
        d = rep.lower
    else:
        d = None
        computed["d_lower"] = designed_distance(q, lam)
        computed["d_lower_source"] = "theorem (designed distance)"
        notes.append("lower bound is theorem-given; the witness certifies the upper bound")
    ok = C.k == k_exp and weight(wvec) == d_exp and computed["witness_in_code"] and (d is None or d == d_exp)
    computed.update(_structural(ctx, C, d, lam))
    ok &= computed["quasi_cyclic"]
    return VerificationReport("Thm4.3", q, lam, {"n": n, "k": k_exp, "d": d_exp}, computed, _status(ok), notes=notes)


def seven_point_conic(ctx: Context, omega_block: int = 0) -> tuple[HomogeneousForm, list[int]]:
    """A subplane-rational conic through the most points of one orbit of D (q = 4)."""
    omega = ctx.dom.D_orbits[omega_block]
    pts = ctx.fam.subplane.points[omega]
    census = conic_census(ctx.tower, pts, threshold=5)
    best = census.conics[0]
    on = [omega[i] for i in best["points"]]
    Z = rr.rational_form_through(ctx.tower, ctx.fam.subplane.points[on[:5]], 2)
    return Z, on


def check_differential_code(ctx: Context) -> VerificationReport:
    q = ctx.q
    n = q * (q * q - q + 1)
    k_exp = q**3 - (3 * q * q) // 2 + (3 * q) // 2 - 2
    upper_claim = (q * q - q) // 2 + 2
    C = ctx.functional(1)
    D = ctx.differential()
    W = rr.differential_witness(ctx.dom)
    wvec = evaluation_vector(W.function, ctx.dom)
    orth = C.orthogonal_to(wvec)
    support = np.flatnonzero(wvec)
    twist_dependent = rank(C.field, C.generator[:, support]) < len(support)
    computed = {
        "n": D.n,
        "k": D.k,
        "dual_identity": C.k + D.k == n,
        "witness_weight": weight(wvec),
        "witness_orthogonal": orth,
        "support_columns_dependent": bool(twist_dependent),
        "quasi_cyclic": quasi_cyclic_check(D, ctx.dom),
    }
    expected = {"n": n, "k": k_exp, "d_range": f"[3, {upper_claim}]"}
    notes = []
    exact = {3: 5, 4: 6}.get(q)
    if exact is not None:
        expected["d"] = exact
        rep = distance_lower_bound_by_columns(D, exact - 1, ctx.budget, ctx.threads)
        computed["d"] = rep.lower if rep.exact else None
        computed["dependent_columns"] = rep.extra.get("dependent_columns")
        lower, upper = rep.lower, rep.upper
    else:
        rep = distance_lower_bound_by_columns(D, 4, ctx.budget, ctx.threads, find_witness=False)
        lower = rep.lower
        upper = rep.upper if rep.exact else (weight(wvec) if orth else D.n - D.k + 1)
        computed["d_lower"] = lower
        computed["d_upper"] = upper
        notes.append("only the claimed bounds are checked; the exact distance is out of reach of the column engine")
    ok = (
        D.k == k_exp
        and computed["dual_identity"]
        and computed["quasi_cyclic"]
        and lower >= 3
        and upper <= upper_claim
        and weight(wvec) <= upper_claim
        and (orth or twist_dependent)
        and (exact is None or (rep.exact and rep.lower == exact))
    )
    if not orth:
        notes.append("witness is not orthogonal as evaluated; support dependence holds up to a column scaling")
    return VerificationReport("Thm5.1", q, 1, expected, computed, _status(ok), notes=notes)


def check_conic_refinement(ctx: Context) -> VerificationReport:
    """Conic refinement at q = 4: a 7-point conic through Omega gives weight 6."""
    q = ctx.q
    Z, on = seven_point_conic(ctx)
    W = rr.differential_witness(ctx.dom, z_form=Z)
    wvec = evaluation_vector(W.function, ctx.dom)
    C = ctx.functional(1)
    kappa = len(on) - (q - 2) * (q + 1) // 2
    bound = (q * q - q) // 2 + 2 - kappa
    computed = {
        "conic_points_on_omega": len(on),
        "kappa": kappa,
        "witness_weight": weight(wvec),
        "witness_orthogonal": C.orthogonal_to(wvec),
    }
    ok = kappa == 2 and weight(wvec) == bound and computed["witness_orthogonal"]
    return VerificationReport("Remark5.2", q, 1, {"kappa": 2, "witness_weight": 6}, computed, _status(ok))


def check_census(ctx: Context) -> VerificationReport:
    from .reference import REFERENCE_CENSUS, reproduce_reference

    res = reproduce_reference(all_conventions=True)
    c = res.census
    computed = {
        "conics_with_7_or_more": c.count,
        "max_incidence": c.max_incidence,
        "all_irreducible": all(e["irreducible"] for e in c.conics),
        "displayed_conic_points": res.conic_check["points_on_conic"],
        "singer_orbits_of_conics": res.extra["conic_orbits_under_singer_group"],
    }
    ok = res.census_matches_reference and res.conic_check["ok"] and computed["all_irreducible"]
    notes = []
    if not res.census_matches_reference:
        notes.append(
            f"census has {c.count} conics forming {len(res.extra['conic_orbits_under_singer_group'])} "
            f"Singer orbits of size {res.extra['displayed_conic_orbit_size']}; reference count is {REFERENCE_CENSUS[0]}"
        )
    return VerificationReport(
        "census",
        ctx.q,
        None,
        {"conics_with_7_or_more": REFERENCE_CENSUS[0], "max_incidence": REFERENCE_CENSUS[1], "displayed_conic_points": [0, 1, 3, 4, 9, 10, 12]},
        computed,
        _status(ok),
        notes=notes,
    )


def check_reproduce(ctx: Context) -> VerificationReport:
    from .reference import reproduce_reference

    res = reproduce_reference(all_conventions=True)
    first = res.literal_matches[0] if res.literal_matches else None
    computed = {
        "level": res.level,
        "literal_conventions": len(res.literal_matches),
        "first_literal": first,
        "conventions_searched": res.extra["conventions"],
        "census_stats_across_orbits": sorted(set(res.census_stats)),
    }
    return VerificationReport(
        "reproduce",
        ctx.q,
        None,
        {"level": "literal or structural"},
        computed,
        res.status,
        notes=[f"reproduction level: {res.level}"],
    )


# -- registry ------------------------------------------------------------------------

GEOMETRY = {
    "Prop3.1": check_unital_counts,
    "Lemma3.3": check_side_tangency,
    "Prop3.4": check_orbit_incidence,
    "Prop3.5": check_unital_coverage,
    "Prop3.6": check_pairwise_intersections,
    "Lemma3.7": check_intersection_divisor,
    "Prop3.8": check_disjoint_chords,
    "Arc": check_arc,
}

CLAIMS: dict[str, Callable[..., VerificationReport]] = {
    **GEOMETRY,
    "Remark6.1": check_fermat_frame,
    "Thm4.1": check_functional_code,
    "Thm4.2": check_subcode,
    "Thm4.3": check_lambda_code,
    "Thm5.1": check_differential_code,
    "Remark5.2": check_conic_refinement,
    "census": check_census,
    "reproduce": check_reproduce,
}

ALIASES = {"Cor3.7": "Prop3.6", "Prop3.7": "Lemma3.7", "Thm5.1+6.1": "Thm5.1", "Thm5.1+6.2": "Thm5.1"}

ONLY_Q4 = {"Remark5.2", "census", "reproduce"}


def claims_for(q: int) -> list[str]:
    return [c for c in CLAIMS if c not in ONLY_Q4 or q == 4]


def verify(
    claim: str,
    q: int,
    lam: int | None = None,
    tau_index: int = 0,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    ctx: Context | None = None,
) -> list[VerificationReport]:
    """Run one claim (or ``"all"``); returns one report per check performed."""
    if claim != "all":
        claim = ALIASES.get(claim, claim)
        if claim not in CLAIMS:
            raise UnknownClaim(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")
    if q < 3:
        raise BadParameter("q must be at least 3")
    ctx = ctx or Context(q, tau_index, budget, threads)
    names = claims_for(q) if claim == "all" else [claim]
    out = []
    for name in names:
        if name in ONLY_Q4 and q != 4:
            out.append(VerificationReport(name, q, None, {}, {}, SKIP, notes=["defined for q = 4 only"]))
            continue
        lams: list[int | None] = [None]
        if name == "Thm4.3":
            lams = [lam] if lam is not None else list(range(2, q))
        for lv in lams:
            start = time.perf_counter()
            rep = CLAIMS[name](ctx, lv) if name == "Thm4.3" else CLAIMS[name](ctx)
            rep.elapsed = time.perf_counter() - start
            out.append(rep)
    return out


def overall_status(reports: list[VerificationReport]) -> str:
    statuses = {r.status for r in reports}
    if FAIL in statuses:
        return FAIL
    if PARTIAL in statuses:
        return PARTIAL
    return PASS

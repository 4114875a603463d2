"""Riemann-Roch spaces L(lambda*G) on H_tau and low-weight witness functions.

All functions are ratios of forms that are rational over the subplane up to
a scalar, so every evaluation vector on D is a constant multiple of a
vector over F_{q^2}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .codes.domain import EvaluationDomain
from .errors import (
    BadAuxiliaryCurve,
    BelowThreshold,
    InsufficientCurves,
    InterpolationFailure,
    LambdaOutOfRange,
    NotEnoughChords,
)
from .forms import HomogeneousForm, RationalFunction, monomials, multisets, subplane_rational_forms
from .gftower import FieldTower
from .hermitian import HermitianFamily
from .linalg import nullspace


def genus(q: int) -> int:
    return q * (q - 1) // 2


def rr_dimension(deg_G: int, genus: int) -> int:
    """``deg - genus + 1``, valid above the canonical degree."""
    if deg_G <= 2 * genus - 2:
        raise BelowThreshold(f"degree {deg_G} <= 2g-2 = {2 * genus - 2}")
    return deg_G - genus + 1


def lambda_dimension(q: int, lam: int) -> int:
    return rr_dimension(lam * (q * q - q + 1), genus(q))


@dataclass
class RRBasis:
    tau_index: int
    lam: int
    functions: list[RationalFunction]
    kind: str = "basis"
    meta: dict = field(default_factory=dict)
    factors: list[tuple[int, ...]] | None = None
    base: "RRBasis | None" = None

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def evaluate_raw(self, points: np.ndarray) -> np.ndarray:
        """Tower values of every function at ``points`` (one row per function).

        Product spanning sets reuse the values of their base functions.
        """
        if self.factors is None or self.base is None:
            return np.array([f.evaluate_many(points) for f in self.functions], dtype=np.int64)
        T = self.functions[0].tower
        base_vals = self.base.evaluate_raw(points)
        rows = np.empty((len(self.factors), base_vals.shape[1]), dtype=np.int64)
        for r, combo in enumerate(self.factors):
            acc = base_vals[combo[0]]
            for i in combo[1:]:
                acc = T.mul_v(acc, base_vals[i])
            rows[r] = acc
        return rows

    def to_json(self, frame: str = "subplane") -> dict:
        return {
            "tau_index": self.tau_index,
            "lambda": self.lam,
            "kind": self.kind,
            "functions": [f.to_json(frame) for f in self.functions],
        }


def triangle_form(tower: FieldTower) -> HomogeneousForm:
    """``X1 X2 X0``, the product of the sides of the fundamental triangle."""
    return HomogeneousForm.monomial(tower, (1, 1, 1))


def line_form(tower: FieldTower, line: Sequence[int]) -> HomogeneousForm:
    return HomogeneousForm.linear(tower, *(int(v) for v in line))


def _check_auxiliary(fam: HermitianFamily, tau: int, t: int, u: int | None, g_orbit: Sequence[int]) -> None:
    mem = fam.membership
    if t == tau:
        raise BadAuxiliaryCurve("t must differ from tau")
    if not mem[t, list(g_orbit)].all():
        raise BadAuxiliaryCurve(f"curve {t} does not contain G")
    if u is None:
        return
    if u in (tau, t):
        raise BadAuxiliaryCurve("u must differ from tau and t")
    if mem[u, list(g_orbit)].any():
        raise BadAuxiliaryCurve(f"curve {u} passes through G")


def lambda_subcode_functions(fam: HermitianFamily, t_index: int) -> list[RationalFunction]:
    """``G_m X1 X2 X0 / F_t`` for a subplane-rational basis ``G_m`` of forms of degree q-2."""
    T = fam.tower
    q = fam.q
    Ft = fam.curve(t_index).form
    tri = triangle_form(T)
    out = []
    for m, Gm in enumerate(subplane_rational_forms(T, q - 2)):
        out.append(RationalFunction([(Gm, 1), (tri, 1)], [(Ft, 1)], label=f"G{m}*X1X2X0/F_t"))
    return out


def basis_L_G(dom: EvaluationDomain, t_index: int | None = None, u_index: int | None = None) -> RRBasis:
    """Basis of L(G): the subcode functions, ``F_u / F_t`` and the constant 1."""
    fam = dom.fam
    t = dom.t_index if t_index is None else t_index
    u = dom.u_index(0) if u_index is None else u_index
    _check_auxiliary(fam, dom.tau_index, t, u, dom.G)
    funcs = lambda_subcode_functions(fam, t)
    funcs.append(RationalFunction([(fam.curve(u).form, 1)], [(fam.curve(t).form, 1)], label="F_u/F_t"))
    funcs.append(RationalFunction.constant(dom.tower))
    return RRBasis(dom.tau_index, 1, funcs, "basis", {"t_index": t, "u_index": u})


def lambda_subcode_basis(dom: EvaluationDomain, t_index: int | None = None) -> RRBasis:
    t = dom.t_index if t_index is None else t_index
    _check_auxiliary(dom.fam, dom.tau_index, t, None, dom.G)
    return RRBasis(dom.tau_index, 1, lambda_subcode_functions(dom.fam, t), "subcode", {"t_index": t})


def spanning_L_lambdaG(lam: int, basis: RRBasis) -> RRBasis:
    """All ``lam``-fold products of the L(G) basis functions."""
    q = basis.functions[0].tower.q
    if not 1 <= lam <= q - 1:
        raise LambdaOutOfRange(f"lambda must lie in 1..{q - 1}")
    if lam == 1:
        return basis
    combos = multisets(len(basis.functions), lam)
    funcs = []
    for combo in combos:
        f = basis.functions[combo[0]]
        for i in combo[1:]:
            f = f * basis.functions[i]
        funcs.append(f)
    return RRBasis(basis.tau_index, lam, funcs, "products", dict(basis.meta), combos, basis)


def chord_witness_polynomial(dom: EvaluationDomain, u_point: int, t_index: int | None = None) -> RationalFunction:
    """Subcode function whose zeros on D are q-2 unital chords through ``u_point`` missing G."""
    fam = dom.fam
    q = dom.q
    t = dom.t_index if t_index is None else t_index
    chords = fam.chord_lines(dom.tau_index, dom.G, u_point)
    if len(chords) < q - 2:
        raise NotEnoughChords(f"only {len(chords)} chords through point {u_point}, need {q - 2}")
    T = dom.tower
    G = HomogeneousForm.constant(T)
    for i in chords[: q - 2]:
        G = G * line_form(T, fam.subplane.line(i))
    return RationalFunction(
        [(G, 1), (triangle_form(T), 1)],
        [(fam.curve(t).form, 1)],
        label="chords*X1X2X0/F_t",
        meta={"u_point": u_point, "chord_lines": chords[: q - 2]},
    )


def lambda_product_witness(dom: EvaluationDomain, lam: int, u_indices: Sequence[int] | None = None) -> RationalFunction:
    """``F_{u_1} ... F_{u_lam} / F_t^lam`` with the ``u_i`` through distinct orbits of D."""
    q = dom.q
    if not 1 <= lam <= q - 1:
        raise LambdaOutOfRange(f"lambda must lie in 1..{q - 1}")
    if u_indices is None:
        if lam > len(dom.D_orbits):
            raise InsufficientCurves("not enough orbits in D")
        u_indices = [dom.u_index(b) for b in range(lam)]
    if len(set(u_indices)) != lam:
        raise InsufficientCurves(f"need {lam} distinct curves, got {list(u_indices)}")
    fam = dom.fam
    for u in u_indices:
        _check_auxiliary(fam, dom.tau_index, dom.t_index, u, dom.G)
    num = [(fam.curve(u).form, 1) for u in u_indices]
    return RationalFunction(
        num,
        [(fam.curve(dom.t_index).form, lam)],
        label=f"prod F_u / F_t^{lam}",
        meta={"u_indices": list(u_indices), "t_index": dom.t_index},
    )


# -- interpolation -----------------------------------------------------------


def forms_through_points(tower: FieldTower, points: np.ndarray, degree: int) -> list[HomogeneousForm]:
    """Basis of the forms of ``degree`` vanishing at every row of ``points``."""
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
    monos = monomials(degree)
    A = np.array(
        [HomogeneousForm.monomial(tower, m).evaluate_many(pts) for m in monos], dtype=np.int64
    ).T.reshape(len(pts), len(monos))
    ker = nullspace(tower, A)
    return [HomogeneousForm.from_vector(tower, degree, row) for row in ker]


def rational_form_through(tower: FieldTower, points: np.ndarray, degree: int) -> HomogeneousForm:
    """A subplane-rational form of ``degree`` through subplane ``points``.

    The solution space is stable under the twist because subplane points are
    fixed by it, so the first nonzero trace ``c*Z + T(c*Z) + T^2(c*Z)`` over
    kernel vectors ``Z`` and ``c`` in {1, g, g^2} lies in it.
    """
    ker = forms_through_points(tower, points, degree)
    if not ker:
        raise InterpolationFailure(f"no form of degree {degree} through {len(points)} points")
    for Z in ker:
        for c in (1, tower.from_log(1), tower.from_log(2)):
            cz = Z.scale(c)
            tr = cz + cz.twist() + cz.twist().twist()
            if not tr.is_zero():
                return tr.normalized()
    raise InterpolationFailure("solution space has no rational member")


def tangent_form(fam: HermitianFamily, j: int, point_index: int) -> HomogeneousForm:
    line = fam.tangent_line(j, fam.subplane.point(point_index))
    if line is None:
        raise ValueError("singular point")
    return line_form(fam.tower, line)


@dataclass
class DifferentialWitness:
    function: RationalFunction
    omega: list[int]
    z_points: list[int]
    z_form: HomogeneousForm
    u_indices: list[int]
    equalizer: str

    @property
    def expected_weight(self) -> int:
        return len(self.omega) - len(self.z_points)


def differential_witness(
    dom: EvaluationDomain,
    omega_block: int = 0,
    z_points: Sequence[int] | None = None,
    z_form: HomogeneousForm | None = None,
    equalizer: str = "tangent",
) -> DifferentialWitness:
    """``F_t^2 * prod F_u * Z / ((X1 X2 X0)^q * L^e)`` supported on one orbit Omega of D.

    The ``q-1`` curves ``H_u`` cover the orbits of D other than Omega, ``Z``
    has degree q-2 and passes through ``z_points`` of Omega (by default the
    first q(q-1)/2 - 1 members after the representative).  ``L`` is the
    tangent to H_tau at the first point of G, which meets the unital only
    there; ``equalizer="x0"`` uses the line X0 = 0 instead.
    """
    fam = dom.fam
    T = dom.tower
    q = dom.q
    omega = dom.D_orbits[omega_block]
    others = [b for b in range(len(dom.D_orbits)) if b != omega_block]
    u_indices = [dom.u_index(b) for b in others]
    if z_form is None:
        if z_points is None:
            z_points = omega[1 : 1 + (q - 2) * (q + 1) // 2]
        z_points = list(z_points)
        if len(z_points) != (q - 2) * (q + 1) // 2 or not set(z_points) <= set(omega):
            raise InterpolationFailure("Z needs q(q-1)/2 - 1 points of Omega")
        if q == 2:
            raise InterpolationFailure("degree q-2 = 0 leaves nothing to interpolate")
        z_form = rational_form_through(T, fam.subplane.points[z_points], q - 2)
    if z_points is None:
        vals = z_form.evaluate_many(fam.subplane.points[omega])
        z_points = [i for i, v in zip(omega, vals) if v == 0]
    tri = triangle_form(T)
    num = [(fam.curve(dom.t_index).form, 2), (z_form, 1)] + [(fam.curve(u).form, 1) for u in u_indices]
    num_deg = sum(f.degree * e for f, e in num)
    e = num_deg - 3 * q
    if equalizer == "tangent":
        L = tangent_form(fam, dom.tau_index, dom.G[0])
    elif equalizer == "x0":
        L = HomogeneousForm.monomial(T, (0, 0, 1))
    else:
        raise ValueError(f"unknown equalizer {equalizer!r}")
    f = RationalFunction(num, [(tri, q), (L, e)], label="differential witness")
    return DifferentialWitness(f, list(omega), list(z_points), z_form, u_indices, equalizer)

"""The family of Hermitian curves H_t of the subplane and their Singer orbits.

``H_t : t*X1*X2^q + t^(q^2+1)*X2*X0^q + X0*X1^q = 0`` for each
``(q^2+q+1)``-th root of unity ``t``.  Curves are indexed by ``j`` with
``t = zeta^j``, ``zeta`` the canonical primitive ``(q^2+q+1)``-th root.

The Singer group is generated by ``B = diag(beta, beta^q, 1)`` with
``beta = a^(q^2+q+1)``; on subplane indices it acts as ``i -> i + q^2+q+1``,
so its orbits are the residue classes mod ``q^2+q+1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BadParameter, OrbitNotOnFamily, SameCurve
from .forms import HomogeneousForm
from .gftower import FieldTower
from .linalg import determinant
from .projgeom import (
    A0,
    A1,
    A2,
    Collineation,
    ProjLine,
    ProjPoint,
    Subplane,
    build_subplane,
    cross,
    normalize,
)


class Divisor(dict):
    """Finitely supported map point -> multiplicity."""

    @property
    def degree(self) -> int:
        return sum(self.values())

    def support(self) -> list:
        return [p for p, m in self.items() if m]


def hermitian_form(tower: FieldTower, t: int) -> HomogeneousForm:
    q = tower.q
    return HomogeneousForm(
        tower,
        q + 1,
        {(1, q, 0): t, (0, 1, q): tower.pow(t, q * q + 1), (q, 0, 1): 1},
    )


@dataclass(frozen=True)
class HermitianCurve:
    tower: FieldTower
    j: int
    t: int

    @cached_property
    def form(self) -> HomogeneousForm:
        return hermitian_form(self.tower, self.t)


@dataclass(frozen=True)
class SingerGroup:
    tower: FieldTower
    alpha: int
    beta: int
    generator: Collineation
    step: int  # index shift of the generator on subplane points

    @property
    def order(self) -> int:
        q = self.tower.q
        return q * q - q + 1


def singer_generator(tower: FieldTower) -> SingerGroup:
    """``B = diag(beta, beta^q, 1)``, ``beta = alpha^(q^2+q+1)``."""
    S = build_subplane(tower)
    q = tower.q
    m = q * q + q + 1
    beta = tower.pow(S.a, m)
    B = Collineation.diagonal(tower, beta, tower.pow(beta, q), 1)
    return SingerGroup(tower, S.a, beta, B, m)


def _poly_trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(T: FieldTower, a: list[int], b: list[int]) -> list[int]:
    a = _poly_trim(a)
    b = _poly_trim(b)
    inv = T.inv(b[-1])
    while len(a) >= len(b):
        c = T.mul(a[-1], inv)
        shift = len(a) - len(b)
        for i, v in enumerate(b):
            a[shift + i] = T.sub(a[shift + i], T.mul(c, v))
        a = _poly_trim(a)
    return a


def poly_gcd(T: FieldTower, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Monic gcd of two univariate polynomials (coefficients low to high)."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(T, a, b)
    if not a:
        return []
    inv = T.inv(a[-1])
    return [T.mul(v, inv) for v in a]


def _interpolate(T: FieldTower, xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    """Coefficients of the interpolating polynomial (Newton form expanded)."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = T.div(T.sub(coef[i], coef[i - 1]), T.sub(xs[i], xs[i - j]))
    poly = [coef[-1]]
    for i in range(n - 2, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        new = [0] * (len(poly) + 1)
        for k, v in enumerate(poly):
            new[k + 1] = T.add(new[k + 1], v)
            new[k] = T.sub(new[k], T.mul(v, xs[i]))
        new[0] = T.add(new[0], coef[i])
        poly = new
    return poly


def _coeffs_in_y(form: HomogeneousForm, x: int) -> list[int]:
    """``form(x, Y, 1)`` as a polynomial in Y."""
    T = form.tower
    out = [0] * (form.degree + 1)
    for (e1, e2, _), c in form.coeffs.items():
        out[e2] = T.add(out[e2], T.mul(c, T.pow(x, e1)))
    return out


def _sylvester_det(T: FieldTower, f: list[int], g: list[int]) -> int:
    m = len(f) - 1
    n = len(g) - 1
    size = m + n
    mat = np.zeros((size, size), dtype=np.int64)
    for i in range(n):
        mat[i, i : i + m + 1] = f[::-1]
    for i in range(m):
        mat[n + i, i : i + n + 1] = g[::-1]
    return int(determinant(T, mat))


def resultant_multiplicity(
    F: HomogeneousForm,
    G: HomogeneousForm,
    point: ProjPoint,
    centers: Iterable[Sequence[int]],
) -> tuple[int, ProjPoint]:
    """Intersection multiplicity of F and G at ``point`` via a resultant.

    A projection centre ``C`` is taken from ``centers``: it must lie on
    neither curve, and the line ``C point`` must meet ``F`` and ``G`` in no
    common point besides ``point`` (checked by a univariate gcd over
    F_{q^6}, so conjugate points over extensions are covered as well).
    After sending ``C`` to (0:1:0) and ``point`` to (0:0:1), the
    multiplicity is the order at ``x = 0`` of ``Res_Y(F, G)(x, Y, 1)``.
    """
    T = F.tower
    P = normalize(T, point)
    for C in centers:
        C = normalize(T, C)
        if C == P or F(C) == 0 or G(C) == 0:
            continue
        rf = F.restrict_to_line(C, P)
        rg = G.restrict_to_line(C, P)
        g = poly_gcd(T, rf, rg)
        if not g or any(g[:-1]):
            continue  # another common point on the line C P
        line = normalize(T, cross(T, C, P))
        E = None
        for cand in (A1, A2, A0, (1, 1, 1)):
            if T.sum(T.mul(u, v) for u, v in zip(line, cand)) != 0:
                E = cand
                break
        M = np.array([E, C, P], dtype=np.int64).T  # columns E, C, P
        images = [HomogeneousForm.linear(T, *(int(v) for v in M[i])) for i in range(3)]
        Ft = F.substitute(images)
        Gt = G.substitute(images)
        bound = F.degree * G.degree
        xs = [T.from_log(k) for k in range(1, bound + 2)]
        ys = [_sylvester_det(T, _coeffs_in_y(Ft, x), _coeffs_in_y(Gt, x)) for x in xs]
        res = _interpolate(T, xs, ys)
        nz = [k for k, v in enumerate(res) if v]
        if not nz:
            raise ValueError("curves share a component")
        return nz[0], C
    raise ValueError("no admissible projection centre")


class HermitianFamily:
    """All curves H_t of one tower with their subplane point sets."""

    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.q = q = tower.q
        self.subplane: Subplane = build_subplane(tower)
        self.singer = singer_generator(tower)
        self.num_curves = q * q + q + 1
        zeta = tower.root_of_unity(self.num_curves)
        self.curves = [HermitianCurve(tower, j, tower.pow(zeta, j)) for j in range(self.num_curves)]
        self._by_t = {c.t: c for c in self.curves}

    def curve(self, t_or_index: int, *, by_index: bool = True) -> HermitianCurve:
        if by_index:
            return self.curves[t_or_index % self.num_curves]
        if t_or_index not in self._by_t:
            raise BadParameter("t is not a (q^2+q+1)-th root of unity")
        return self._by_t[t_or_index]

    def curve_for_t(self, t: int) -> HermitianCurve:
        T = self.tower
        if t == 0 or T.pow(t, self.num_curves) != 1:
            raise BadParameter("t^(q^2+q+1) != 1")
        return self._by_t[t]

    @cached_property
    def membership(self) -> np.ndarray:
        """Boolean (curve j, subplane point i): point i on H_{t_j}, by direct evaluation."""
        pts = self.subplane.points
        return np.stack([c.form.evaluate_many(pts) == 0 for c in self.curves])

    # -- points -----------------------------------------------------------
    def unital_indices(self, j: int) -> list[int]:
        """Subplane indices on H_{t_j}, found by the two-stage root solver.

        First the q+1 roots ``eps`` of ``t X^(q+1) + t^(q^2+1) X + 1``, then
        for each of them the q^2-q+1 roots of ``X^(q^2-q+1) = eps``; every
        root ``gamma`` gives the point ``(gamma : gamma^(q^2+1) : 1)``.
        """
        T = self.tower
        q = self.q
        t = self.curves[j % self.num_curves].t
        stage1 = [0] * (q + 2)
        stage1[0] = 1
        stage1[1] = T.pow(t, q * q + 1)
        stage1[q + 1] = t
        eps_roots = T.univariate_roots(stage1)
        m = q * q - q + 1
        out = []
        for eps in eps_roots:
            stage2 = [0] * (m + 1)
            stage2[0] = T.neg(eps)
            stage2[m] = 1
            for gamma in T.univariate_roots(stage2):
                out.append(self.subplane.index_of((gamma, T.pow(gamma, q * q + 1), 1)))
        return sorted(out)

    def unital_points(self, j: int) -> list[ProjPoint]:
        return [self.subplane.point(i) for i in self.unital_indices(j)]

    def unital_bruteforce(self, j: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.membership[j % self.num_curves])]

    # -- orbits -----------------------------------------------------------
    def singer_orbit(self, i: int) -> list[int]:
        """Orbit of subplane point ``i``, from its smallest index by successive B-powers."""
        m = self.singer.step
        r = i % m
        return [r + k * m for k in range(self.singer.order)]

    def orbit_partition(self, j: int) -> list[list[int]]:
        seen: list[int] = []
        out = []
        for i in self.unital_indices(j):
            r = i % self.singer.step
            if r not in seen:
                seen.append(r)
                out.append(self.singer_orbit(r))
        out.sort(key=lambda o: o[0])
        return out

    def all_orbits(self) -> list[list[int]]:
        return [self.singer_orbit(r) for r in range(self.singer.step)]

    def curves_through_orbit(self, orbit: Sequence[int]) -> list[int]:
        """Indices j of every curve containing the whole orbit; always q+1 of them."""
        mem = self.membership[:, list(orbit)]
        js = [int(j) for j in np.flatnonzero(mem.all(axis=1))]
        if len(js) != self.q + 1:
            raise OrbitNotOnFamily(f"orbit lies on {len(js)} curves, expected {self.q + 1}")
        return js

    # -- intersections ------------------------------------------------------
    def line_intersection_divisor(self, j: int, line: ProjLine) -> Divisor:
        """Intersection of H_{t_j} with a line, restricted to F_{q^6}-points."""
        T = self.tower
        F = self.curves[j % self.num_curves].form
        pts = []
        for e in (A1, A2, A0):
            c = cross(T, line, e)
            if any(c):
                p = normalize(T, c)
                if p not in pts:
                    pts.append(p)
        P, R = pts[0], pts[1]
        poly = F.restrict_to_line(P, R)
        trimmed = _poly_trim(poly)
        div = Divisor()
        at_inf = F.degree - (len(trimmed) - 1)
        if at_inf:
            div[P] = at_inf
        for s in T.univariate_roots(trimmed):
            mult = T.root_multiplicity(trimmed, s)
            point = normalize(T, [T.add(T.mul(s, P[i]), R[i]) for i in range(3)])
            div[point] = div.get(point, 0) + mult
        return div

    def tangent_line(self, j: int, point: ProjPoint) -> ProjLine | None:
        F = self.curves[j % self.num_curves].form
        grad = tuple(F.derivative(k)(point) for k in range(3))
        if not any(grad):
            return None
        return normalize(self.tower, grad)

    def common_subplane_points(self, j: int, k: int) -> list[int]:
        mem = self.membership
        return [int(i) for i in np.flatnonzero(mem[j % self.num_curves] & mem[k % self.num_curves])]

    def vertex_multiplicity(self, j: int, k: int, vertex: ProjPoint) -> int:
        F = self.curves[j % self.num_curves].form
        G = self.curves[k % self.num_curves].form
        centers = (self.subplane.point(i) for i in range(self.subplane.size))
        mult, _ = resultant_multiplicity(F, G, vertex, centers)
        return mult

    def curve_intersection(self, j: int, k: int, with_resultants: bool = True) -> "IntersectionReport":
        if j % self.num_curves == k % self.num_curves:
            raise SameCurve("a curve does not meet itself in a finite divisor")
        common = self.common_subplane_points(j, k)
        orbits = sorted({i % self.singer.step for i in common})
        one_orbit = len(orbits) == 1 and sorted(common) == sorted(self.singer_orbit(orbits[0]))
        simple = []
        for i in common:
            P = self.subplane.point(i)
            a = self.tangent_line(j, P)
            b = self.tangent_line(k, P)
            simple.append(a is not None and b is not None and a != b)
        triangle = Divisor()
        if with_resultants:
            for v in (A1, A2, A0):
                triangle[v] = self.vertex_multiplicity(j, k, v)
        return IntersectionReport(
            j=j,
            k=k,
            common=common,
            orbit=self.singer_orbit(orbits[0]) if one_orbit else [],
            one_orbit=one_orbit,
            all_simple=all(simple),
            triangle=triangle,
            bezout_total=len(common) + triangle.degree if all(simple) else None,
            bezout_expected=(self.q + 1) ** 2,
        )

    # -- chords and arcs ------------------------------------------------------
    def chord_disjoint_statistics(self, j: int, arc: Sequence[int]) -> tuple[int, int, np.ndarray]:
        """Max over subplane points U off H_{t_j} of the number of lines through U
        meeting the unital in q+1 points and missing the arc.

        Returns ``(max_count, witness_index, counts)`` where ``counts[i]`` is
        the count for point ``i`` (``-1`` on the unital).
        """
        S = self.subplane
        unital = np.zeros(S.size, dtype=bool)
        unital[self.unital_bruteforce(j)] = True
        in_arc = np.zeros(S.size, dtype=bool)
        in_arc[list(arc)] = True
        good_line = np.zeros(S.size, dtype=bool)
        for i in range(S.size):
            pts = S.line_points(i)
            good_line[i] = unital[pts].sum() == self.q + 1 and not in_arc[pts].any()
        counts = np.full(S.size, -1, dtype=np.int64)
        for u in np.flatnonzero(~unital):
            counts[u] = int(good_line[S.lines_through(int(u))].sum())
        best = int(counts.max())
        return best, int(np.flatnonzero(counts == best)[0]), counts

    def chord_lines(self, j: int, arc: Sequence[int], u: int) -> list[int]:
        """Subplane lines through point ``u`` that are unital chords missing the arc."""
        S = self.subplane
        unital = set(self.unital_bruteforce(j))
        arc = set(arc)
        out = []
        for i in S.lines_through(u):
            pts = set(int(x) for x in S.line_points(int(i)))
            if len(pts & unital) == self.q + 1 and not (pts & arc):
                out.append(int(i))
        return out

    def is_arc(self, points: Sequence[int]) -> bool:
        S = self.subplane
        pts = np.zeros(S.size, dtype=bool)
        pts[list(points)] = True
        return all(pts[S.line_points(i)].sum() <= 2 for i in range(S.size))

    def arc_is_complete(self, points: Sequence[int]) -> bool:
        """Every subplane point off the arc lies on a 2-secant of it."""
        S = self.subplane
        pts = np.zeros(S.size, dtype=bool)
        pts[list(points)] = True
        covered = pts.copy()
        for i in range(S.size):
            on = S.line_points(i)
            if pts[on].sum() == 2:
                covered[on] = True
        return bool(covered.all())

    def singer_arc(self) -> list[int]:
        """The orbit of ``(alpha : alpha^(q^2+1) : 1)``, subplane point 1."""
        return self.singer_orbit(1)


@dataclass
class IntersectionReport:
    j: int
    k: int
    common: list[int]
    orbit: list[int]
    one_orbit: bool
    all_simple: bool
    triangle: Divisor
    bezout_total: int | None
    bezout_expected: int
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        q = int(round(self.bezout_expected**0.5)) - 1
        return (
            self.one_orbit
            and self.all_simple
            and all(m == q for m in self.triangle.values())
            and self.bezout_total == self.bezout_expected
        )


_FAMILIES: dict[int, HermitianFamily] = {}


def family(tower: FieldTower) -> HermitianFamily:
    if tower.q not in _FAMILIES:
        _FAMILIES[tower.q] = HermitianFamily(tower)
    return _FAMILIES[tower.q]

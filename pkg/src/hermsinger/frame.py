"""Change of frame from the subplane model to canonical coordinates of PG(2, q^2).

With ``a`` a root of ``X^(q+1) + X + 1`` in F_{q^3} minus F_q and
``b = a^(q^2+1)``, the matrix

    M = [[a, 1, b],
         [b, a, 1],
         [1, b, a]]

sends canonical coordinates to subplane coordinates (``X = M Xbar``) and
satisfies ``M^T M = s I`` with ``s = 1 + a^2 + b^2``.  A subplane point
``X`` therefore has canonical coordinates proportional to ``M^T X``, and a
collineation ``X -> B X`` becomes ``Xbar -> M^T B M Xbar``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoFrameElement, NormalizationFailure
from .forms import HomogeneousForm
from .gftower import FieldTower, SmallField, small_field
from .hermitian import SingerGroup
from .linalg import determinant, matmul
from .projgeom import Collineation, normalize, normalize_many


@dataclass(frozen=True)
class FrameChange:
    tower: FieldTower
    a: int
    M: np.ndarray
    scale: int

    @property
    def MT(self) -> np.ndarray:
        return self.M.T.copy()

    def to_canonical(self, points: np.ndarray) -> np.ndarray:
        """Subplane-model points to normalized canonical coordinates (tower encoding)."""
        T = self.tower
        pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
        MT = self.MT
        out = np.zeros_like(pts)
        for i in range(3):
            acc = np.zeros(pts.shape[0], dtype=np.int64)
            for j in range(3):
                acc = T.add_v(acc, T.mul_v(MT[i, j], pts[:, j]))
            out[:, i] = acc
        return normalize_many(T, out)

    def to_canonical_small(self, points: np.ndarray) -> np.ndarray:
        """As :meth:`to_canonical`, in the F_{q^2} encoding of :class:`SmallField`."""
        return small_field(self.tower.q).from_tower(self.to_canonical(points))

    def from_canonical(self, points: np.ndarray) -> np.ndarray:
        T = self.tower
        pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
        out = np.zeros_like(pts)
        for i in range(3):
            acc = np.zeros(pts.shape[0], dtype=np.int64)
            for j in range(3):
                acc = T.add_v(acc, T.mul_v(self.M[i, j], pts[:, j]))
            out[:, i] = acc
        return normalize_many(T, out)

    def to_json(self) -> dict:
        T = self.tower
        return {
            "a": T.serialize(self.a),
            "s": T.serialize(self.scale),
            "M": [[T.serialize(int(v)) for v in row] for row in self.M],
        }


def frame_roots(tower: FieldTower) -> list[int]:
    """Roots of ``X^(q+1) + X + 1`` in F_{q^3} outside F_q, by encoding."""
    q = tower.q
    coeffs = [1, 1] + [0] * (q - 1) + [1]
    return [
        a
        for a in tower.univariate_roots(coeffs)
        if tower.in_subfield(a, 3) and not tower.in_subfield(a, 1)
    ]


def make_frame(tower: FieldTower, a: int) -> FrameChange:
    T = tower
    q = T.q
    b = T.pow(a, q * q + 1)
    M = np.array([[a, 1, b], [b, a, 1], [1, b, a]], dtype=np.int64)
    s = T.add(T.add(1, T.pow(a, 2)), T.pow(b, 2))
    if determinant(T, M) == 0:
        raise NoFrameElement("frame matrix is singular")
    MtM = matmul(T, M.T, M)
    expected = np.diag([s, s, s])
    if not np.array_equal(MtM, expected):
        raise NoFrameElement("frame matrix is not orthogonal up to scale")
    return FrameChange(T, a, M, s)


def find_frame(tower: FieldTower) -> FrameChange:
    roots = frame_roots(tower)
    if not roots:
        raise NoFrameElement("no root of X^(q+1)+X+1 in F_{q^3} \\ F_q")
    return make_frame(tower, roots[0])


def normalize_into_subfield(values: np.ndarray, tower: FieldTower, k: int = 2) -> np.ndarray:
    """Scale so the first nonzero entry is 1 and check every entry lies in F_{q^k}."""
    vals = np.asarray(values, dtype=np.int64)
    flat = vals.ravel()
    nz = np.flatnonzero(flat)
    if nz.size == 0:
        return vals.copy()
    out = tower.mul_v(vals, tower.inv(int(flat[nz[0]])))
    if not np.all(tower.in_subfield_v(out, k)):
        raise NormalizationFailure(f"no scalar multiple lies in F_(q^{k})")
    return out


def transform_form(form: HomogeneousForm, fc: FrameChange, rational: bool = True) -> HomogeneousForm:
    """``Ubar(Xbar) = U(M Xbar)``; with ``rational`` the result is scaled into F_{q^2}."""
    T = fc.tower
    images = [HomogeneousForm.linear(T, *(int(v) for v in fc.M[i])) for i in range(3)]
    out = form.substitute(images)
    if not rational or out.is_zero():
        return out
    out = out.normalized()
    if not all(T.in_subfield(c, 2) for c in out.coeffs.values()):
        raise NormalizationFailure("transformed form is not proportional to an F_{q^2} form")
    return out


def conjugated_singer(fc: FrameChange, sg: SingerGroup) -> Collineation:
    """``M^T B M`` scaled so its entries lie in F_{q^2}."""
    T = fc.tower
    N = matmul(T, matmul(T, fc.MT, sg.generator.array()), fc.M)
    return Collineation.from_matrix(T, normalize_into_subfield(N, T))


def small_matrix(coll: Collineation, F: SmallField | None = None) -> np.ndarray:
    F = F or small_field(coll.tower.q)
    return F.from_tower(coll.array())


def fermat_form(tower: FieldTower) -> HomogeneousForm:
    q = tower.q
    return HomogeneousForm(tower, q + 1, {(q + 1, 0, 0): 1, (0, q + 1, 0): 1, (0, 0, q + 1): 1})


def canonical_point(tower: FieldTower, coords) -> tuple[int, int, int]:
    return normalize(tower, coords)

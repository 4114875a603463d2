"""Points, lines and collineations of PG(2, q^6) and the subplane of order q^2.

Points and lines are plain tuples ``(x1, x2, x0)`` of tower encodings,
normalized so that the last nonzero coordinate is 1.  The subplane's point
``i`` is ``(a^i : a^(i(q^2+1)) : 1)`` with ``a`` the canonical primitive
``(q^4+q^2+1)``-th root of unity; line ``i`` has coefficients
``(a^i, a^(i(q^2+1)), 1)``.  Point ``j`` lies on line ``i`` iff
``(i + j) mod (q^4+q^2+1)`` is in a fixed difference set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import NotSubplaneLine
from .gftower import FieldTower

ProjPoint = tuple[int, int, int]
ProjLine = tuple[int, int, int]

A1: ProjPoint = (1, 0, 0)
A2: ProjPoint = (0, 1, 0)
A0: ProjPoint = (0, 0, 1)


def normalize(tower: FieldTower, coords: Sequence[int]) -> ProjPoint:
    c = [int(v) for v in coords]
    for k in (2, 1, 0):
        if c[k]:
            inv = tower.inv(c[k])
            return tuple(tower.mul(v, inv) for v in c)  # type: ignore[return-value]
    raise ValueError("(0, 0, 0) is not a projective point")


def normalize_many(tower: FieldTower, coords: np.ndarray) -> np.ndarray:
    c = np.asarray(coords, dtype=np.int64).reshape(-1, 3)
    last = np.where(c[:, 2] != 0, c[:, 2], np.where(c[:, 1] != 0, c[:, 1], c[:, 0]))
    if np.any(last == 0):
        raise ValueError("(0, 0, 0) is not a projective point")
    return tower.mul_v(c, tower.inv_v(last)[:, None])


def incident(tower: FieldTower, line: ProjLine, point: ProjPoint) -> bool:
    acc = 0
    for u, x in zip(line, point):
        acc = tower.add(acc, tower.mul(u, x))
    return acc == 0


def cross(tower: FieldTower, u: Sequence[int], v: Sequence[int]) -> tuple[int, int, int]:
    """Cross product: the line through two points, or the meet of two lines."""
    T = tower

    def det2(a, b, c, d):
        return T.sub(T.mul(a, d), T.mul(b, c))

    return (det2(u[1], u[2], v[1], v[2]), det2(u[2], u[0], v[2], v[0]), det2(u[0], u[1], v[0], v[1]))


def line_through(tower: FieldTower, p: ProjPoint, r: ProjPoint) -> ProjLine:
    return normalize(tower, cross(tower, p, r))


def collinear(tower: FieldTower, p: ProjPoint, r: ProjPoint, s: ProjPoint) -> bool:
    return incident(tower, cross(tower, p, r), s)


@dataclass(frozen=True)
class Collineation:
    """``x -> matrix @ (x ** (q ** twist))``; twist is taken mod 6."""

    tower: FieldTower
    matrix: tuple[tuple[int, ...], ...]
    twist: int = 0

    @classmethod
    def from_matrix(cls, tower: FieldTower, matrix, twist: int = 0) -> "Collineation":
        m = tuple(tuple(int(v) for v in row) for row in np.asarray(matrix))
        return cls(tower, m, twist % 6)

    @classmethod
    def identity(cls, tower: FieldTower) -> "Collineation":
        return cls.from_matrix(tower, np.eye(3, dtype=np.int64))

    @classmethod
    def diagonal(cls, tower: FieldTower, d1: int, d2: int, d0: int) -> "Collineation":
        return cls.from_matrix(tower, np.diag([d1, d2, d0]))

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    def apply_raw(self, coords: Sequence[int]) -> tuple[int, int, int]:
        T = self.tower
        x = [T.frob(int(v), self.twist) for v in coords] if self.twist else [int(v) for v in coords]
        return tuple(T.sum(T.mul(self.matrix[i][j], x[j]) for j in range(3)) for i in range(3))  # type: ignore

    def __call__(self, point: Sequence[int]) -> ProjPoint:
        return normalize(self.tower, self.apply_raw(point))

    def apply_many(self, points: np.ndarray) -> np.ndarray:
        T = self.tower
        pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
        if self.twist:
            pts = T.pow_v(pts, T.q**self.twist)
        m = self.array()
        out = np.zeros_like(pts)
        for i in range(3):
            acc = np.zeros(pts.shape[0], dtype=np.int64)
            for j in range(3):
                acc = T.add_v(acc, T.mul_v(m[i, j], pts[:, j]))
            out[:, i] = acc
        return normalize_many(T, out)

    def compose(self, other: "Collineation") -> "Collineation":
        """``self o other``: apply ``other`` first."""
        T = self.tower
        a = self.array()
        b = other.array()
        if self.twist:
            b = T.pow_v(b, T.q**self.twist)
        out = np.zeros((3, 3), dtype=np.int64)
        for i in range(3):
            for j in range(3):
                out[i, j] = T.sum(T.mul(int(a[i, k]), int(b[k, j])) for k in range(3))
        return Collineation.from_matrix(T, out, self.twist + other.twist)

    def __pow__(self, k: int) -> "Collineation":
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = Collineation.identity(self.tower)
        base = self
        while k:
            if k & 1:
                out = out.compose(base)
            base = base.compose(base)
            k >>= 1
        return out

    def scale(self, c: int) -> "Collineation":
        T = self.tower
        return Collineation.from_matrix(T, T.mul_v(self.array(), c), self.twist)

    def is_scalar(self) -> bool:
        """True iff this is the identity collineation (a scalar matrix, no twist)."""
        m = self.array()
        return self.twist == 0 and not np.any(m[~np.eye(3, dtype=bool)]) and len(set(np.diag(m))) == 1

    def det(self) -> int:
        from .linalg import determinant

        return int(determinant(self.tower, self.array()))

    def same_as(self, other: "Collineation") -> bool:
        """Equality modulo scalars."""
        if self.twist != other.twist:
            return False
        a = self.array().ravel()
        b = other.array().ravel()
        if np.any((a == 0) != (b == 0)):
            return False
        nz = np.flatnonzero(a)
        T = self.tower
        ratio = T.mul_v(a[nz], T.inv_v(b[nz]))
        return bool(np.all(ratio == ratio[0]))


def orbit(g: Collineation, point: Sequence[int], limit: int | None = None) -> list[ProjPoint]:
    """``P, gP, g^2 P, ...`` until the orbit closes."""
    T = g.tower
    start = normalize(T, point)
    out = [start]
    cur = g(start)
    limit = limit or (T.order**2 + T.order + 1)
    while cur != start:
        out.append(cur)
        if len(out) > limit:
            raise RuntimeError("orbit did not close")
        cur = g(cur)
    return out


def frobenius_collineation(tower: FieldTower) -> Collineation:
    """The semilinear map ``rho o Phi`` fixing every subplane point.

    ``Phi`` raises coordinates to the power q^2, ``rho`` cycles
    ``(X1 : X2 : X0) -> (X0 : X1 : X2)``.
    """
    rho = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=np.int64)
    return Collineation.from_matrix(tower, rho, twist=2)


class Subplane:
    """The subplane of order q^2 in non-canonical position."""

    def __init__(self, tower: FieldTower):
        self.tower = tower
        q = tower.q
        self.q = q
        self.size = q**4 + q**2 + 1
        self.a = tower.root_of_unity(self.size)
        T = tower
        idx = np.arange(self.size, dtype=np.int64)
        la = T.log(self.a)
        self.points = np.stack(
            [(la * idx) % T.N + 1, (la * idx * (q * q + 1)) % T.N + 1, np.ones(self.size, dtype=np.int64)],
            axis=1,
        )
        self.points.setflags(write=False)
        self.lines = self.points.copy()
        self.lines.setflags(write=False)
        self.point_index = {tuple(int(v) for v in row): i for i, row in enumerate(self.points)}
        # (i + j) mod size in diffset  <=>  point j on line i
        vals = T.add_v(T.add_v(self.points[:, 0], self.points[:, 1]), 1)
        self.diffset = np.flatnonzero(vals == 0)
        self._in_diffset = np.zeros(self.size, dtype=bool)
        self._in_diffset[self.diffset] = True

    def point(self, i: int) -> ProjPoint:
        return tuple(int(v) for v in self.points[i % self.size])  # type: ignore[return-value]

    def line(self, i: int) -> ProjLine:
        return tuple(int(v) for v in self.lines[i % self.size])  # type: ignore[return-value]

    def index_of(self, point: Sequence[int]) -> int:
        return self.point_index[normalize(self.tower, point)]

    def contains(self, point: Sequence[int]) -> bool:
        return normalize(self.tower, point) in self.point_index

    def line_index(self, line: Sequence[int]) -> int:
        key = normalize(self.tower, line)
        if key not in self.point_index:
            raise NotSubplaneLine(f"{key} is not a line of the subplane")
        return self.point_index[key]

    def on_line(self, line_i: int, point_j: int) -> bool:
        return bool(self._in_diffset[(line_i + point_j) % self.size])

    def line_points(self, line_i: int) -> np.ndarray:
        return np.sort((self.diffset - line_i) % self.size)

    def lines_through(self, point_j: int) -> np.ndarray:
        return np.sort((self.diffset - point_j) % self.size)

    def line_through_points(self, j1: int, j2: int) -> int:
        common = np.intersect1d(self.lines_through(j1), self.lines_through(j2))
        if common.size != 1:
            raise ValueError(f"points {j1} and {j2} do not span a unique line")
        return int(common[0])

    def line_section(self, line: Sequence[int], strict: bool = True) -> list[ProjPoint]:
        """Subplane points on ``line``.

        With ``strict`` the line must be a subplane line; otherwise any line
        of PG(2, q^6) is scanned against every subplane point.
        """
        if strict:
            i = self.line_index(line)
            return [self.point(j) for j in self.line_points(i)]
        T = self.tower
        pts = self.points
        vals = T.add_v(T.add_v(T.mul_v(pts[:, 0], line[0]), T.mul_v(pts[:, 1], line[1])), T.mul_v(pts[:, 2], line[2]))
        return [self.point(j) for j in np.flatnonzero(vals == 0)]

    @cached_property
    def singer_collineation(self) -> Collineation:
        """``A = diag(a, a^(q^2+1), 1)``: point i -> point i+1."""
        T = self.tower
        return Collineation.diagonal(T, self.a, T.pow(self.a, self.q**2 + 1), 1)

    def to_json(self) -> dict:
        T = self.tower
        return {
            "q": self.q,
            "tower": T.header(),
            "points": [[T.serialize(int(v)) for v in row] for row in self.points],
        }


_SUBPLANES: dict[int, Subplane] = {}


def build_subplane(tower: FieldTower) -> Subplane:
    if tower.q not in _SUBPLANES:
        _SUBPLANES[tower.q] = Subplane(tower)
    return _SUBPLANES[tower.q]

"""Homogeneous forms in (X1, X2, X0) and ratios of products of forms over F_{q^6}."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import PoleOnDomain
from .gftower import FieldTower

Monomial = tuple[int, int, int]


def monomials(degree: int) -> list[Monomial]:
    """All exponent triples (e1, e2, e0) of total ``degree``, lexicographically descending."""
    out = []
    for e1 in range(degree, -1, -1):
        for e2 in range(degree - e1, -1, -1):
            out.append((e1, e2, degree - e1 - e2))
    return out


class HomogeneousForm:
    """A form of fixed degree; ``coeffs`` maps exponent triples to nonzero elements."""

    __slots__ = ("tower", "degree", "coeffs")

    def __init__(self, tower: FieldTower, degree: int, coeffs: Mapping[Monomial, int] | None = None):
        self.tower = tower
        self.degree = degree
        clean = {}
        for mono, c in (coeffs or {}).items():
            if sum(mono) != degree:
                raise ValueError(f"monomial {mono} is not of degree {degree}")
            if c:
                clean[tuple(mono)] = int(c)
        self.coeffs: dict[Monomial, int] = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def linear(cls, tower: FieldTower, u1: int, u2: int, u0: int) -> "HomogeneousForm":
        return cls(tower, 1, {(1, 0, 0): u1, (0, 1, 0): u2, (0, 0, 1): u0})

    @classmethod
    def monomial(cls, tower: FieldTower, mono: Monomial, coeff: int = 1) -> "HomogeneousForm":
        return cls(tower, sum(mono), {mono: coeff})

    @classmethod
    def constant(cls, tower: FieldTower, c: int = 1) -> "HomogeneousForm":
        return cls(tower, 0, {(0, 0, 0): c})

    @classmethod
    def from_vector(cls, tower: FieldTower, degree: int, vec: Sequence[int]) -> "HomogeneousForm":
        """Inverse of :meth:`vector` (coefficients in :func:`monomials` order)."""
        return cls(tower, degree, dict(zip(monomials(degree), (int(v) for v in vec))))

    def vector(self) -> list[int]:
        return [self.coeffs.get(m, 0) for m in monomials(self.degree)]

    # -- algebra -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degrees")
        T = self.tower
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = T.add(out.get(m, 0), c)
        return HomogeneousForm(T, self.degree, out)

    def scale(self, c: int) -> "HomogeneousForm":
        T = self.tower
        return HomogeneousForm(T, self.degree, {m: T.mul(c, v) for m, v in self.coeffs.items()})

    def __mul__(self, other: "HomogeneousForm") -> "HomogeneousForm":
        T = self.tower
        out: dict[Monomial, int] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[m] = T.add(out.get(m, 0), T.mul(c1, c2))
        return HomogeneousForm(T, self.degree + other.degree, out)

    def __pow__(self, k: int) -> "HomogeneousForm":
        out = HomogeneousForm.constant(self.tower)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, HomogeneousForm)
            and other.degree == self.degree
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.degree, tuple(sorted(self.coeffs.items()))))

    def substitute(self, images: Sequence["HomogeneousForm"]) -> "HomogeneousForm":
        """``F(L1, L2, L0)`` for forms ``L1, L2, L0`` of a common degree."""
        T = self.tower
        deg = images[0].degree
        cache: list[dict[int, HomogeneousForm]] = [{}, {}, {}]

        def power(i: int, e: int) -> HomogeneousForm:
            if e not in cache[i]:
                cache[i][e] = images[i] ** e
            return cache[i][e]

        out = HomogeneousForm(T, deg * self.degree)
        for (e1, e2, e0), c in self.coeffs.items():
            term = (power(0, e1) * power(1, e2) * power(2, e0)).scale(c)
            out = out + term
        return out

    def twist(self) -> "HomogeneousForm":
        """Image of the curve under the Frobenius collineation fixing the subplane.

        ``T(F)(X1, X2, X0) = F^(q^2)(X2, X0, X1)``: a curve is rational over
        the subplane exactly when ``T(F)`` is a scalar multiple of ``F``.
        """
        T = self.tower
        Q = T.q**2
        return HomogeneousForm(
            T, self.degree, {(c, a, b): T.pow(v, Q) for (a, b, c), v in self.coeffs.items()}
        )

    def derivative(self, var: int) -> "HomogeneousForm":
        """Partial derivative w.r.t. X1 (0), X2 (1) or X0 (2)."""
        T = self.tower
        out = {}
        for m, c in self.coeffs.items():
            e = m[var]
            if e % T.p == 0:
                continue
            mm = list(m)
            mm[var] -= 1
            out[tuple(mm)] = T.mul(T.from_int(e), c)
        return HomogeneousForm(T, max(self.degree - 1, 0), out)

    def leading(self) -> tuple[Monomial, int]:
        for m in monomials(self.degree):
            if m in self.coeffs:
                return m, self.coeffs[m]
        raise ValueError("zero form has no leading term")

    def normalized(self) -> "HomogeneousForm":
        """Scalar multiple with leading coefficient 1 (in :func:`monomials` order)."""
        if self.is_zero():
            return self
        return self.scale(self.tower.inv(self.leading()[1]))

    def proportional_to(self, other: "HomogeneousForm") -> bool:
        return self.degree == other.degree and self.normalized() == other.normalized()

    # -- evaluation --------------------------------------------------------
    def __call__(self, point: Sequence[int]) -> int:
        T = self.tower
        x1, x2, x0 = (int(v) for v in point)
        acc = 0
        for (e1, e2, e0), c in self.coeffs.items():
            t = T.mul(c, T.mul(T.pow(x1, e1), T.mul(T.pow(x2, e2), T.pow(x0, e0))))
            acc = T.add(acc, t)
        return acc

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Values at the rows of an ``(m, 3)`` array of coordinates."""
        T = self.tower
        pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
        acc = np.zeros(pts.shape[0], dtype=np.int64)
        for (e1, e2, e0), c in self.coeffs.items():
            t = T.mul_v(T.pow_v(pts[:, 0], e1), T.pow_v(pts[:, 1], e2))
            t = T.mul_v(t, T.pow_v(pts[:, 2], e0))
            acc = T.add_v(acc, T.mul_v(t, c))
        return acc

    def restrict_to_line(self, p: Sequence[int], r: Sequence[int]) -> list[int]:
        """Coefficients (low to high) in ``s`` of ``F(s*p + r)``.

        The parameter ``s = infinity`` stands for ``p``; its multiplicity is
        ``degree - deg`` of the returned polynomial.
        """
        T = self.tower
        lines = [[int(r[i]), int(p[i])] for i in range(3)]
        out = [0] * (self.degree + 1)
        for (e1, e2, e0), c in self.coeffs.items():
            poly = [c]
            for i, e in enumerate((e1, e2, e0)):
                for _ in range(e):
                    poly = _poly_mul(T, poly, lines[i])
            for k, v in enumerate(poly):
                out[k] = T.add(out[k], v)
        return out

    # -- export --------------------------------------------------------------
    def to_json(self) -> dict:
        T = self.tower
        return {
            "degree": self.degree,
            "terms": [
                {"exponents": list(m), "coeff": T.serialize(c)}
                for m, c in sorted(self.coeffs.items(), reverse=True)
            ],
        }

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (e1, e2, e0), c in sorted(self.coeffs.items(), reverse=True):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("X1", e1), ("X2", e2), ("X0", e0)) if e
            )
            coeff = "" if c == 1 and mono else f"g^{c - 1}"
            terms.append("*".join(t for t in (coeff, mono) if t))
        return " + ".join(terms)


def _poly_mul(T: FieldTower, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = T.add(out[i + j], T.mul(x, y))
    return out


def all_forms_basis(tower: FieldTower, degree: int) -> list[HomogeneousForm]:
    return [HomogeneousForm.monomial(tower, m) for m in monomials(degree)]


def subplane_rational_forms(tower: FieldTower, degree: int) -> list[HomogeneousForm]:
    """Basis of the forms of ``degree`` fixed by :meth:`HomogeneousForm.twist`.

    Built from traces ``G + T(G) + T^2(G)`` of ``c * m`` with ``m`` a monomial
    and ``c`` in {1, g, g^2} (an F_{q^2}-basis of F_{q^6}); the first
    independent ones are kept.  Their number is the dimension of the space
    of all forms of ``degree``.
    """
    from .linalg import rank

    basis: list[HomogeneousForm] = []
    rows: list[list[int]] = []
    target = len(monomials(degree))
    current = 0
    for m in monomials(degree):
        for c in (1, tower.from_log(1), tower.from_log(2)):
            g = HomogeneousForm.monomial(tower, m, c)
            tr = g + g.twist() + g.twist().twist()
            if tr.is_zero():
                continue
            cand = rows + [tr.vector()]
            r = rank(tower, np.array(cand))
            if r > current:
                rows = cand
                basis.append(tr)
                current = r
            if current == target:
                return basis
    return basis


@dataclass
class RationalFunction:
    """``prod(num_i ** a_i) / prod(den_j ** b_j)`` with equal total degrees.

    Kept factored: evaluation multiplies factor values, so products of
    functions never expand their forms.
    """

    numerator: list[tuple[HomogeneousForm, int]]
    denominator: list[tuple[HomogeneousForm, int]]
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.num_degree != self.den_degree:
            raise ValueError(
                f"numerator degree {self.num_degree} != denominator degree {self.den_degree}"
            )

    @property
    def tower(self) -> FieldTower:
        for f, _ in self.numerator + self.denominator:
            return f.tower
        raise ValueError("empty rational function")

    @property
    def num_degree(self) -> int:
        return sum(f.degree * e for f, e in self.numerator)

    @property
    def den_degree(self) -> int:
        return sum(f.degree * e for f, e in self.denominator)

    @classmethod
    def constant(cls, tower: FieldTower, c: int = 1) -> "RationalFunction":
        return cls([(HomogeneousForm.constant(tower, c), 1)], [], label="1")

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.numerator + other.numerator,
            self.denominator + other.denominator,
            label=f"({self.label})*({other.label})",
        )

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        T = self.tower
        pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
        num = np.ones(pts.shape[0], dtype=np.int64)
        den = np.ones(pts.shape[0], dtype=np.int64)
        for f, e in self.numerator:
            num = T.mul_v(num, T.pow_v(f.evaluate_many(pts), e))
        for f, e in self.denominator:
            den = T.mul_v(den, T.pow_v(f.evaluate_many(pts), e))
        if np.any(den == 0):
            bad = int(np.flatnonzero(den == 0)[0])
            raise PoleOnDomain(f"denominator of {self.label or 'function'} vanishes at point #{bad}")
        return T.mul_v(num, T.inv_v(den))

    def __call__(self, point: Sequence[int]) -> int:
        return int(self.evaluate_many(np.asarray(point)[None, :])[0])

    def expand(self) -> tuple[HomogeneousForm, HomogeneousForm]:
        T = self.tower
        num = HomogeneousForm.constant(T)
        for f, e in self.numerator:
            num = num * f**e
        den = HomogeneousForm.constant(T)
        for f, e in self.denominator:
            den = den * f**e
        return num, den

    def to_json(self, frame: str = "subplane") -> dict:
        num, den = self.expand()
        return {"label": self.label, "frame": frame, "numerator": num.to_json(), "denominator": den.to_json()}


def product(functions: Iterable[RationalFunction]) -> RationalFunction:
    out = None
    for f in functions:
        out = f if out is None else out * f
    if out is None:
        raise ValueError("empty product")
    return out


def multisets(n: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations_with_replacement(range(n), k))

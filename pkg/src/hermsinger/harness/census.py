"""Conics through five points of an orbit, and their incidence counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from ..forms import monomials
from ..linalg import matvec, nullspace

CONIC_MONOMIALS = monomials(2)  # X1^2, X1X2, X1X0, X2^2, X2X0, X0^2


def _pow_v(F, x: np.ndarray, e: int) -> np.ndarray:
    out = np.ones_like(x)
    for _ in range(e):
        out = F.mul_v(out, x)
    return out


def monomial_values(F, points: np.ndarray, degree: int) -> np.ndarray:
    """``(len(points), #monomials)`` matrix of monomial values."""
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 3)
    cols = []
    for e1, e2, e0 in monomials(degree):
        v = F.mul_v(_pow_v(F, pts[:, 0], e1), _pow_v(F, pts[:, 1], e2))
        cols.append(F.mul_v(v, _pow_v(F, pts[:, 2], e0)))
    return np.stack(cols, axis=1)


def _field_int(F, n: int) -> int:
    acc = 0
    for _ in range(n % F.tower.p if hasattr(F, "tower") else n % F.p):
        acc = F.add(acc, 1)
    return acc


def conic_discriminant(F, coeffs: Sequence[int]) -> int:
    """``4abc + fgh - af^2 - bg^2 - ch^2``; zero iff the conic is degenerate."""
    a, h, g, b, f, c = (int(x) for x in coeffs)
    m = F.mul
    four = _field_int(F, 4)
    pos = F.add(m(four, m(a, m(b, c))), m(f, m(g, h)))
    neg = F.add(F.add(m(a, m(f, f)), m(b, m(g, g))), m(c, m(h, h)))
    return F.sub(pos, neg)


def _normalize_coeffs(F, vec: np.ndarray) -> tuple[int, ...]:
    nz = np.flatnonzero(vec)
    return tuple(int(x) for x in F.mul_v(vec, F.inv(int(vec[nz[0]]))))


@dataclass
class ConicCensus:
    omega: np.ndarray
    conics: list[dict]
    max_incidence: int
    threshold: int
    subsets: int
    unique_through_five: bool
    distinct_conics: int
    extra: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.conics)

    def to_json(self, serialize=None) -> dict:
        ser = serialize or (lambda x: int(x))
        return {
            "orbit_size": int(len(self.omega)),
            "threshold": self.threshold,
            "count": self.count,
            "max_incidence": self.max_incidence,
            "distinct_conics": self.distinct_conics,
            "five_subsets": self.subsets,
            "unique_conic_through_every_five": self.unique_through_five,
            "conics": [
                {
                    "coeffs": [ser(c) for c in entry["coeffs"]],
                    "points": entry["points"],
                    "irreducible": entry["irreducible"],
                }
                for entry in self.conics
            ],
        }


def conic_census(F, omega: np.ndarray, threshold: int = 7) -> ConicCensus:
    """Every conic through five points of ``omega``, kept if it meets ``threshold`` of them.

    ``F`` is any table field (small field or tower); points are rows of
    ``omega`` in that field's encoding.
    """
    pts = np.asarray(omega, dtype=np.int64).reshape(-1, 3)
    V = monomial_values(F, pts, 2)
    seen: dict[tuple[int, ...], list[int]] = {}
    unique = True
    count = 0
    for subset in combinations(range(len(pts)), 5):
        count += 1
        ker = nullspace(F, V[list(subset)])
        if ker.shape[0] != 1:
            unique = False
            continue
        key = _normalize_coeffs(F, ker[0])
        if key not in seen:
            vals = matvec(F, V, np.array(key))
            seen[key] = [int(i) for i in np.flatnonzero(vals == 0)]
    conics = []
    for key, on in seen.items():
        if len(on) >= threshold:
            conics.append({"coeffs": key, "points": on, "irreducible": conic_discriminant(F, key) != 0})
    conics.sort(key=lambda e: (-len(e["points"]), e["points"]))
    max_inc = max((len(on) for on in seen.values()), default=0)
    return ConicCensus(pts, conics, max_inc, threshold, count, unique, len(seen))


def conic_vanishes(F, coeffs: Sequence[int], points: np.ndarray) -> np.ndarray:
    V = monomial_values(F, points, 2)
    return matvec(F, V, np.asarray(coeffs, dtype=np.int64)) == 0

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..errors import NormalizationFailure, RankShortfall
from ..forms import RationalFunction
from ..frame import normalize_into_subfield
from ..gftower import SmallField, small_field
from ..linalg import in_row_space, matmul, nullspace, rank, row_basis
from .domain import EvaluationDomain


@dataclass
class LinearCode:
    """Row-reduced generator matrix over F_{q^2} (small-field encoding)."""

    field: SmallField
    generator: np.ndarray
    provenance: dict = field(default_factory=dict)
    domain: EvaluationDomain | None = None

    def __post_init__(self) -> None:
        self.generator = np.asarray(self.generator, dtype=np.int64).reshape(-1, self.generator.shape[-1])

    @property
    def n(self) -> int:
        return int(self.generator.shape[1])

    @property
    def k(self) -> int:
        return int(self.generator.shape[0])

    @property
    def q2(self) -> int:
        return self.field.order

    def contains(self, vec: Sequence[int]) -> bool:
        return in_row_space(self.field, self.generator, vec)

    def encode(self, message: Sequence[int]) -> np.ndarray:
        m = np.asarray(message, dtype=np.int64)
        return matmul(self.field, m[None, :], self.generator)[0]

    def orthogonal_to(self, vec: Sequence[int]) -> bool:
        v = np.asarray(vec, dtype=np.int64)
        return not np.any(matmul(self.field, self.generator, v[:, None]))

    def dual(self) -> "LinearCode":
        H = nullspace(self.field, self.generator)
        H = row_basis(self.field, H) if H.shape[0] else H
        prov = {"kind": "dual", "of": self.provenance}
        return LinearCode(self.field, H, prov, self.domain)

    def same_code(self, other: "LinearCode") -> bool:
        return self.k == other.k and rank(self.field, np.vstack([self.generator, other.generator])) == self.k

    def to_json(self) -> dict:
        F = self.field
        return {
            "field_order": F.order,
            "n": self.n,
            "k": self.k,
            "provenance": self.provenance,
            "encoding": "coefficient vector over F_p in the tower basis, little-endian",
            "generator": [[F.serialize(int(x)) for x in row] for row in self.generator],
            "generator_exponents": [[None if x == 0 else int(x) - 1 for x in row] for row in self.generator],
        }

    def to_csv(self) -> str:
        """One row per generator row; entries are exponents of the primitive element, '-' for zero."""
        buf = io.StringIO()
        w = csv.writer(buf)
        for row in self.generator:
            w.writerow(["-" if x == 0 else int(x) - 1 for x in row])
        return buf.getvalue()


def weight(vec: Sequence[int]) -> int:
    return int(np.count_nonzero(np.asarray(vec)))


def evaluation_vector(fn: RationalFunction, dom: EvaluationDomain) -> np.ndarray:
    """``ev_D(fn)`` scaled by one constant into F_{q^2}, in small-field encoding."""
    raw = fn.evaluate_many(dom.points)
    try:
        vals = normalize_into_subfield(raw, dom.tower, 2)
    except NormalizationFailure as exc:
        raise NormalizationFailure(f"{fn.label or 'function'}: {exc}") from None
    return small_field(dom.q).from_tower(vals)


def evaluation_matrix(functions: Iterable[RationalFunction], dom: EvaluationDomain) -> np.ndarray:
    rows = [evaluation_vector(f, dom) for f in functions]
    return np.array(rows, dtype=np.int64).reshape(len(rows), dom.n)


def evaluate(
    functions: Iterable[RationalFunction],
    dom: EvaluationDomain,
    expected_dim: int | None = None,
    provenance: dict | None = None,
) -> LinearCode:
    """Evaluation code spanned by ``functions`` on ``dom``.

    With ``expected_dim`` a rank different from it raises
    :class:`RankShortfall`.
    """
    F = small_field(dom.q)
    M = evaluation_matrix(functions, dom)
    basis = row_basis(F, M) if M.shape[0] else M
    if expected_dim is not None and basis.shape[0] != expected_dim:
        raise RankShortfall(f"row space has rank {basis.shape[0]}, expected {expected_dim}")
    return LinearCode(F, basis, dict(provenance or {}), dom)


def quasi_cyclic_check(code: LinearCode, dom: EvaluationDomain | None = None) -> bool:
    """Row space invariant under the block-cyclic shift induced by the Singer generator."""
    dom = dom or code.domain
    if dom is None:
        raise ValueError("quasi-cyclic check needs the evaluation domain")
    shifted = dom.apply_shift(code.generator)
    return code.same_code(LinearCode(code.field, shifted))


def random_code(F: SmallField, n: int, k: int, seed: int = 0) -> LinearCode:
    """Uniformly random full-rank k x n code (negative control)."""
    rng = np.random.default_rng(seed)
    while True:
        G = rng.integers(0, F.order, size=(k, n))
        if rank(F, G) == k:
            return LinearCode(F, row_basis(F, G), {"kind": "random", "seed": seed})

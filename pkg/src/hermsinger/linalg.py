"""Dense linear algebra over a table field.

``field`` is anything with ``add_v``, ``mul_v``, ``neg_v`` and a scalar
``inv``: both :class:`~hermsinger.gftower.FieldTower` and
:class:`~hermsinger.gftower.SmallField` qualify.  Matrices are integer
numpy arrays of element encodings.
"""

from __future__ import annotations

import numpy as np


def rref(field, matrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = np.array(matrix, dtype=np.int64, copy=True)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = field.mul_v(field.inv(int(m[r, c])), m[r])
        factors = field.neg_v(m[:, c])
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            m[hit] = field.add_v(m[hit], field.mul_v(factors[hit, None], m[r][None, :]))
        pivots.append(c)
        r += 1
    return m, pivots


def rank(field, matrix) -> int:
    matrix = np.asarray(matrix)
    if matrix.size == 0:
        return 0
    return len(rref(field, matrix)[1])


def row_basis(field, matrix) -> np.ndarray:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    r, piv = rref(field, matrix)
    return r[: len(piv)]


def nullspace(field, matrix) -> np.ndarray:
    """Rows spanning ``{x : matrix @ x = 0}``, one per free column."""
    matrix = np.asarray(matrix, dtype=np.int64)
    cols = matrix.shape[1]
    r, piv = rref(field, matrix)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = field.neg_v(r[i, f])
    return out


def matvec(field, matrix, vec) -> np.ndarray:
    """``matrix @ vec`` over the field."""
    prod = field.mul_v(np.asarray(matrix, dtype=np.int64), np.asarray(vec, dtype=np.int64)[None, :])
    acc = np.zeros(prod.shape[0], dtype=np.int64)
    for j in range(prod.shape[1]):
        acc = field.add_v(acc, prod[:, j])
    return acc


def matmul(field, a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out = field.add_v(out, field.mul_v(a[:, j][:, None], b[j][None, :]))
    return out


def in_row_space(field, basis, vec) -> bool:
    basis = np.asarray(basis, dtype=np.int64)
    if basis.shape[0] == 0:
        return not np.any(vec)
    return rank(field, np.vstack([basis, np.asarray(vec, dtype=np.int64)[None, :]])) == rank(field, basis)


def same_row_space(field, a, b) -> bool:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    ra = rank(field, a)
    return ra == rank(field, b) == rank(field, np.vstack([a, b]))


def determinant(field, matrix) -> int:
    m = np.array(matrix, dtype=np.int64, copy=True)
    n = m.shape[0]
    det = 1
    for c in range(n):
        nz = np.flatnonzero(m[c:, c])
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            m[[c, i]] = m[[i, c]]
            det = field.neg_v(det).item()
        piv = int(m[c, c])
        det = field.mul_v(det, piv).item()
        inv = field.inv(piv)
        below = field.neg_v(field.mul_v(m[c + 1 :, c], inv))
        if below.size:
            m[c + 1 :] = field.add_v(m[c + 1 :], field.mul_v(below[:, None], m[c][None, :]))
    return det

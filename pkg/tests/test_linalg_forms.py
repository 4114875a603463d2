from __future__ import annotations

import numpy as np
from hypothesis import given, settings, strategies as st

from hermsinger.forms import HomogeneousForm, monomials, multisets, subplane_rational_forms
from hermsinger.gftower import small_field
from hermsinger.linalg import in_row_space, matmul, matvec, nullspace, rank, row_basis, rref


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 8), st.integers(0, 10**6))
def test_rank_nullity(rows, cols, seed):
    F = small_field(3)
    A = np.random.default_rng(seed).integers(0, F.order, size=(rows, cols))
    K = nullspace(F, A)
    assert rank(F, A) + K.shape[0] == cols
    for v in K:
        assert not np.any(matvec(F, A, v))
    B = row_basis(F, A)
    assert B.shape[0] == rank(F, A)
    for row in A:
        assert in_row_space(F, B, row)


def test_rref_identity():
    F = small_field(4)
    R, piv = rref(F, np.eye(3, dtype=np.int64))
    assert piv == [0, 1, 2] and np.array_equal(R, np.eye(3, dtype=np.int64))
    assert np.array_equal(matmul(F, np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64)), np.eye(2, dtype=np.int64))


def test_monomial_counts():
    assert len(monomials(2)) == 6
    assert len(monomials(3)) == 10
    assert len(multisets(3, 2)) == 6


def test_form_arithmetic(towers):
    T = towers[3]
    x = HomogeneousForm.linear(T, 1, 0, 0)
    y = HomogeneousForm.linear(T, 0, 1, 0)
    f = (x + y) ** 3
    # characteristic 3: (x+y)^3 = x^3 + y^3
    assert f == x**3 + y**3
    P = (5, 9, 1)
    assert f(P) == T.add(T.pow(5, 3), T.pow(9, 3))
    assert list(f.evaluate_many(np.array([P]))) == [f(P)]


def test_rational_forms_evaluate_rationally(towers, families):
    T = towers[3]
    forms = subplane_rational_forms(T, 1)
    assert len(forms) == 3
    pts = families[3].subplane.points
    for F in forms:
        vals = F.evaluate_many(pts)
        assert F.twist() == F or F.twist().proportional_to(F)
        assert vals.shape == (len(pts),)

from __future__ import annotations

import numpy as np
import pytest

from hermsinger.frame import (
    conjugated_singer,
    fermat_form,
    find_frame,
    frame_roots,
    normalize_into_subfield,
    small_matrix,
    transform_form,
)
from hermsinger.linalg import determinant, matmul


@pytest.mark.parametrize("q", [3, 4, 5])
def test_frame_root_and_orthogonality(towers, q):
    T = towers[q]
    fc = find_frame(T)
    a = fc.a
    assert fc.a == frame_roots(T)[0]
    assert T.add(T.add(T.pow(a, q + 1), a), 1) == 0
    assert T.in_subfield(a, 3) and not T.in_subfield(a, 1)
    assert determinant(T, fc.M) != 0
    s = fc.scale
    assert np.array_equal(matmul(T, fc.M.T, fc.M), np.diag([s, s, s]))


@pytest.mark.parametrize("q", [3, 4])
def test_curve_one_becomes_fermat(towers, families, q):
    T = towers[q]
    fc = find_frame(T)
    assert transform_form(families[q].curve_for_t(1).form, fc).proportional_to(fermat_form(T))


def test_every_curve_becomes_rational(towers, families):
    T, fam = towers[3], families[3]
    fc = find_frame(T)
    for j in range(fam.num_curves):
        F = transform_form(fam.curve(j).form, fc)
        assert all(T.in_subfield(c, 2) for c in F.coeffs.values())


def test_subplane_points_map_to_rational_points(towers, families):
    T = towers[3]
    fc = find_frame(T)
    S = families[3].subplane
    canon = fc.to_canonical(S.points)
    assert np.all(T.in_subfield_v(canon, 2))
    assert len({tuple(p) for p in canon}) == S.size
    back = fc.from_canonical(canon)
    assert {tuple(p) for p in back} == {tuple(p) for p in S.points}


@pytest.mark.parametrize("q", [3, 4])
def test_conjugated_generator(towers, families, q):
    T = towers[q]
    fc = find_frame(T)
    N = conjugated_singer(fc, families[q].singer)
    Nm = small_matrix(N)
    assert np.array_equal(Nm, Nm.T)
    assert (N ** (q * q - q + 1)).is_scalar()
    # maps the Fermat unital (image of curve 1) to itself
    S = families[q].subplane
    pts = fc.to_canonical(S.points[families[q].unital_indices(families[q].curve_for_t(1).j)])
    img = {tuple(p) for p in N.apply_many(pts)}
    assert img == {tuple(p) for p in pts}


def test_normalize_into_subfield(towers):
    T = towers[3]
    c = T.root_of_unity(91)
    vals = np.array([1, T.from_log(T.N // 8), 0])
    scaled = T.mul_v(vals, c)
    out = normalize_into_subfield(scaled, T)
    assert np.all(T.in_subfield_v(out, 2))

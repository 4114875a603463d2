from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermsinger.errors import BadSubfieldIndex, NotPrime, OrderNotDividing, ZeroPolynomial
from hermsinger.gftower import PrimePower, build_tower, conway_polynomial, prime_factors, small_field


@pytest.mark.parametrize("q,order", [(3, 729), (4, 4096), (5, 15625)])
def test_tower_order(towers, q, order):
    assert towers[q].order == order


@pytest.mark.parametrize(
    "p,n,coeffs",
    [
        (2, 6, (1, 1, 0, 1, 1, 0, 1)),
        (3, 6, (2, 2, 1, 0, 2, 0, 1)),
        (5, 6, (2, 0, 1, 4, 1, 0, 1)),
        (2, 12, (1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1)),
        (3, 2, (2, 2, 1)),
        (2, 4, (1, 1, 0, 0, 1)),
    ],
)
def test_conway_polynomials_match_reference_tables(p, n, coeffs):
    assert conway_polynomial(p, n) == coeffs


@pytest.mark.parametrize("q", [3, 4, 5])
def test_every_nonzero_element_has_order_dividing_group(towers, q):
    T = towers[q]
    xs = np.arange(1, T.order, dtype=np.int64)
    assert np.all(T.pow_v(xs, T.N) == 1)


@pytest.mark.parametrize("q", [3, 4, 5])
@pytest.mark.parametrize("k", [1, 2, 3, 6])
def test_subfield_sizes(towers, q, k):
    T = towers[q]
    count = sum(T.in_subfield(int(x), k) for x in range(T.order))
    assert count == q**k


def test_subfield_bad_index(towers):
    with pytest.raises(BadSubfieldIndex):
        towers[3].in_subfield(2, 4)


def test_subfield_examples(towers):
    T = towers[3]
    x = T.root_of_unity(7)
    assert T.in_subfield(1, 1)
    assert not T.in_subfield(x, 2)
    assert T.in_subfield(x, 6)


@pytest.mark.parametrize("q,m", [(3, 91), (3, 7), (4, 273), (4, 13), (5, 651), (5, 21)])
def test_root_of_unity_exact_order(towers, q, m):
    T = towers[q]
    z = T.root_of_unity(m)
    assert T.pow(z, m) == 1
    assert all(T.pow(z, m // r) != 1 for r in prime_factors(m))
    assert T.order_of(z) == m


def test_root_of_unity_errors_and_trivial(towers):
    with pytest.raises(OrderNotDividing):
        towers[3].root_of_unity(5)
    assert towers[3].root_of_unity(1) == 1


def test_roots_of_curve_polynomial_at_t_one(towers):
    # t X^(q+1) + t^(q^2+1) X + 1 with t = 1 and q = 3
    T = towers[3]
    roots = T.univariate_roots([1, 1, 0, 0, 1])
    assert len(roots) == 4
    assert all(T.pow(r, 13) == 1 for r in roots)


def test_roots_of_binomial(towers):
    T = towers[3]
    eps = T.root_of_unity(13)
    coeffs = [T.neg(eps)] + [0] * 6 + [1]
    roots = T.univariate_roots(coeffs)
    assert len(roots) == 7
    assert all(T.pow(r, 7) == eps for r in roots)


def test_square_roots_of_one(towers):
    T = towers[3]
    assert sorted(T.univariate_roots([T.minus_one, 0, 1])) == sorted([1, T.minus_one])


def test_zero_polynomial_rejected(towers):
    with pytest.raises(ZeroPolynomial):
        towers[3].univariate_roots([0, 0])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 728), min_size=2, max_size=6))
def test_roots_agree_with_pointwise_evaluation(coeffs):
    T = build_tower(3)
    if not any(coeffs[1:]):
        return
    roots = T.univariate_roots(coeffs)
    brute = [x for x in range(T.order) if T.poly_eval(coeffs, x) == 0]
    assert roots == brute
    for r in roots:
        assert T.root_multiplicity(coeffs, r) >= 1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 4095), st.integers(0, 4095), st.integers(0, 4095))
def test_field_axioms_q4(a, b, c):
    T = build_tower(4)
    assert T.add(a, b) == T.add(b, a)
    assert T.mul(a, T.add(b, c)) == T.add(T.mul(a, b), T.mul(a, c))
    assert T.mul(T.mul(a, b), c) == T.mul(a, T.mul(b, c))
    assert T.add(a, T.neg(a)) == 0
    if a:
        assert T.mul(a, T.inv(a)) == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 728), st.integers(0, 728))
def test_addition_matches_coefficient_vectors(a, b):
    T = build_tower(3)
    va, vb = T.vector(a), T.vector(b)
    assert T.add(a, b) == T.from_vector([(x + y) % 3 for x, y in zip(va, vb)])


def test_serialization_roundtrip(towers):
    T = towers[5]
    for a in range(0, T.order, 97):
        assert T.deserialize(T.serialize(a)) == a
    assert T.header()["defining_polynomial"] == list(conway_polynomial(5, 6))


def test_table_sidecar_roundtrip(tmp_path):
    from hermsinger import gftower

    gftower._TOWERS.pop((3, 1), None)
    T1 = build_tower(3, cache_dir=tmp_path)
    assert (tmp_path / "tower_p3_h1.npz").exists()
    gftower._TOWERS.pop((3, 1), None)
    T2 = build_tower(3, cache_dir=tmp_path)
    assert np.array_equal(T1.exp_vec, T2.exp_vec)


def test_not_prime_power():
    with pytest.raises(NotPrime):
        PrimePower.from_q(6)
    with pytest.raises(NotPrime):
        build_tower(PrimePower(4, 1))


@pytest.mark.parametrize("q", [3, 4, 5])
def test_small_field_tables_agree_with_tower(towers, fields, q):
    T, F = towers[q], fields[q]
    a = np.repeat(np.arange(F.order), F.order)
    b = np.tile(np.arange(F.order), F.order)
    ta, tb = F.to_tower(a), F.to_tower(b)
    assert np.array_equal(F.to_tower(F.add_table[a, b]), T.add_v(ta, tb))
    assert np.array_equal(F.to_tower(F.mul_table[a, b]), T.mul_v(ta, tb))
    assert np.array_equal(F.from_tower(F.to_tower(np.arange(F.order))), np.arange(F.order))


def test_small_field_generator_is_conway_root(fields):
    # r is a root of the degree-2h Conway polynomial: r^2 + 2r + 2 = 0 over F_3
    F = fields[3]
    r = F.element(1)
    two = F.add(1, 1)
    assert F.add(F.add(F.mul(r, r), F.mul(two, r)), two) == 0

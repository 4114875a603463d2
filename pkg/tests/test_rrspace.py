from __future__ import annotations

import numpy as np
import pytest

from hermsinger import rrspace as rr
from hermsinger.codes import evaluate
from hermsinger.errors import BelowThreshold, LambdaOutOfRange, NormalizationFailure, NotEnoughChords
from hermsinger.codes import evaluation_vector, weight
from hermsinger.linalg import rank

from oracles import naive_orthogonal, naive_weight


def test_genus_and_dimensions():
    assert rr.genus(3) == 3 and rr.genus(4) == 6
    assert rr.rr_dimension(7, 3) == 5
    assert rr.rr_dimension(26, 6) == 21
    assert rr.rr_dimension(2 * 6 - 1, 6) == 6
    with pytest.raises(BelowThreshold):
        rr.rr_dimension(10, 6)
    assert [rr.lambda_dimension(4, lam) for lam in (1, 2, 3)] == [8, 21, 34]


@pytest.mark.parametrize("q,k", [(3, 5), (4, 8), (5, 12)])
def test_basis_of_L_G_is_independent(q, k):
    from conftest import context

    ctx = context(q)
    B = ctx.basis()
    assert len(B) == k
    C = evaluate(B, ctx.dom, k)
    assert C.k == k and C.n == q * (q * q - q + 1)


def test_spanning_sets_reach_riemann_roch(ctx4):
    assert ctx4.functional(2).k == 21
    assert ctx4.functional(3).k == 34
    with pytest.raises(LambdaOutOfRange):
        rr.spanning_L_lambdaG(4, ctx4.basis())


def test_product_evaluation_reuses_base_values(ctx3):
    span = rr.spanning_L_lambdaG(2, ctx3.basis())
    fast = span.evaluate_raw(ctx3.dom.points)
    slow = np.array([f.evaluate_many(ctx3.dom.points) for f in span.functions])
    assert np.array_equal(fast, slow)


@pytest.mark.parametrize("q,lam,w", [(3, 1, 14), (3, 2, 7), (4, 1, 39), (4, 2, 26), (4, 3, 13)])
def test_lambda_product_witness_weight(q, lam, w):
    from conftest import context

    ctx = context(q)
    fn = rr.lambda_product_witness(ctx.dom, lam)
    vec = evaluation_vector(fn, ctx.dom)
    assert weight(vec) == w
    assert naive_weight(fn, ctx.dom) == w
    assert ctx.functional(lam).contains(vec)


@pytest.mark.parametrize("q,w", [(3, 17), (4, 42)])
def test_chord_witness_weight(q, w):
    from conftest import context

    ctx = context(q)
    _, u, _ = ctx.fam.chord_disjoint_statistics(0, ctx.dom.G)
    fn = rr.chord_witness_polynomial(ctx.dom, u)
    assert weight(evaluation_vector(fn, ctx.dom)) == w == naive_weight(fn, ctx.dom)
    assert ctx.subcode().contains(evaluation_vector(fn, ctx.dom))


def test_chord_witness_needs_enough_chords(ctx4):
    # every line through a point of G meets G, so none of them is admissible
    with pytest.raises(NotEnoughChords):
        rr.chord_witness_polynomial(ctx4.dom, ctx4.dom.G[0])


def test_subcode_functions_lie_in_L_G(ctx3, ctx4):
    for ctx in (ctx3, ctx4):
        assert ctx.functional(1).contains(ctx.subcode().generator[0])
        for row in ctx.subcode().generator:
            assert ctx.functional(1).contains(row)


@pytest.mark.parametrize("q,w", [(3, 5), (4, 8), (5, 12)])
def test_differential_witness(q, w):
    from conftest import context

    ctx = context(q)
    W = rr.differential_witness(ctx.dom)
    vec = evaluation_vector(W.function, ctx.dom)
    assert weight(vec) == w == W.expected_weight == (q * q - q) // 2 + 2
    assert ctx.functional(1).orthogonal_to(vec)
    if q < 5:
        assert naive_weight(W.function, ctx.dom) == w
        assert naive_orthogonal(W.function, ctx.dom, ctx.functional(1))


def test_differential_witness_x0_equalizer_is_not_rational(ctx3):
    W = rr.differential_witness(ctx3.dom, equalizer="x0")
    with pytest.raises(NormalizationFailure):
        evaluation_vector(W.function, ctx3.dom)


def test_conic_witness_improves_weight(ctx4):
    from hermsinger.harness.verify import seven_point_conic

    Z, on = seven_point_conic(ctx4)
    assert len(on) == 7
    W = rr.differential_witness(ctx4.dom, z_form=Z)
    vec = evaluation_vector(W.function, ctx4.dom)
    assert weight(vec) == 6 == naive_weight(W.function, ctx4.dom)
    assert naive_orthogonal(W.function, ctx4.dom, ctx4.functional(1))


def test_rational_form_through_points(ctx4):
    T = ctx4.tower
    pts = ctx4.fam.subplane.points[ctx4.dom.D_orbits[0][:5]]
    Z = rr.rational_form_through(T, pts, 2)
    assert not np.any(Z.evaluate_many(pts))
    assert Z.twist().proportional_to(Z)
    assert len(rr.forms_through_points(T, pts, 2)) == 1


def test_basis_serializes(ctx3):
    js = ctx3.basis().to_json()
    assert js["lambda"] == 1 and len(js["functions"]) == 5

from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hermsinger.codes import (
    DistanceReport,
    EvaluationDomain,
    bz_min_distance,
    distance_lower_bound_by_columns,
    evaluate,
    exhaustive_min_distance,
    min_distance,
    quasi_cyclic_check,
    random_code,
)
from hermsinger.codes.linear import LinearCode
from hermsinger.errors import BadParameter, BudgetExceeded, RankShortfall
from hermsinger.gftower import small_field
from hermsinger.linalg import matmul

from oracles import brute_min_distance


def test_domain_layout(ctx3):
    dom = ctx3.dom
    assert dom.n == 21 and dom.block_length == 7 and len(dom.D_orbits) == 3
    assert not set(dom.G) & set(dom.D)
    with pytest.raises(BadParameter):
        EvaluationDomain.build(3, tau_index=99)


@pytest.mark.parametrize("q", [3, 4])
def test_shift_is_the_singer_generator(families, q):
    from conftest import context

    dom = context(q).dom
    S = dom.fam.subplane
    img = dom.fam.singer.generator.apply_many(dom.points)
    moved = [dom.position[S.index_of(tuple(p))] for p in img]
    assert np.array_equal(moved, dom.shift_permutation())


def test_evaluate_rank_check(ctx3):
    with pytest.raises(RankShortfall):
        evaluate(ctx3.basis(), ctx3.dom, expected_dim=6)


@pytest.mark.parametrize("q,k,kd", [(3, 5, 16), (4, 8, 44)])
def test_dual_dimensions_and_orthogonality(q, k, kd):
    from conftest import context

    ctx = context(q)
    C, D = ctx.functional(1), ctx.differential()
    assert (C.k, D.k) == (k, kd) and C.k + D.k == C.n
    F = C.field
    assert not np.any(matmul(F, C.generator, D.generator.T))
    assert D.dual().same_code(C)


def test_quasi_cyclic_positive(ctx3, ctx4):
    assert quasi_cyclic_check(ctx3.functional(1), ctx3.dom)
    assert quasi_cyclic_check(ctx3.subcode(), ctx3.dom)
    assert quasi_cyclic_check(ctx4.differential(), ctx4.dom)
    assert quasi_cyclic_check(ctx4.functional(2), ctx4.dom)


@pytest.mark.parametrize("seed", range(5))
def test_quasi_cyclic_negative_control(ctx3, seed):
    R = random_code(small_field(3), 21, 5, seed)
    assert not quasi_cyclic_check(R, ctx3.dom)


def test_serialization(ctx4):
    C = ctx4.functional(1)
    js = json.loads(json.dumps(C.to_json()))
    assert (js["n"], js["k"], js["field_order"]) == (52, 8, 16)
    assert len(js["generator"]) == 8 and len(js["generator"][0]) == 52
    rows = C.to_csv().strip().splitlines()
    assert len(rows) == 8 and len(rows[0].split(",")) == 52


def test_exhaustive_q3(ctx3):
    rep = exhaustive_min_distance(ctx3.functional(1))
    assert rep.exact and rep.distance == 14
    assert rep.extra["projective_messages"] == 7381
    assert rep.extra["min_weight_projective_count"] == 3
    assert exhaustive_min_distance(ctx3.subcode()).distance == 17


def test_engines_agree_q3(ctx3):
    C = ctx3.functional(1)
    ex = exhaustive_min_distance(C)
    bz = bz_min_distance(C)
    col = distance_lower_bound_by_columns(C, 13)
    assert ex.distance == bz.distance == col.distance == 14
    D = ctx3.differential()
    assert distance_lower_bound_by_columns(D, 4).distance == 5
    assert bz_min_distance(D).distance == 5


def test_thread_partitioning_is_deterministic(ctx3):
    C = ctx3.functional(1)
    one = exhaustive_min_distance(C, threads=1)
    many = exhaustive_min_distance(C, threads=4, chunks=7)
    assert one.distance == many.distance
    assert one.extra["min_weight_projective_count"] == many.extra["min_weight_projective_count"]
    a = distance_lower_bound_by_columns(ctx3.differential(), 4, threads=1)
    b = distance_lower_bound_by_columns(ctx3.differential(), 4, threads=3)
    assert a.distance == b.distance


def test_columns_trivial_bound(ctx3):
    rep = distance_lower_bound_by_columns(ctx3.functional(1), 1, find_witness=False)
    assert rep.lower >= 2


def test_bz_zero_budget(ctx3):
    from hermsinger import rrspace as rr
    from hermsinger.codes import evaluation_vector

    wit = evaluation_vector(rr.lambda_product_witness(ctx3.dom, 1), ctx3.dom)
    rep = bz_min_distance(ctx3.functional(1), budget=0, witnesses=[wit])
    assert rep.lower == 1 and rep.upper == 14


def test_budget_is_enforced(ctx4):
    with pytest.raises(BudgetExceeded):
        exhaustive_min_distance(ctx4.functional(2), budget=10**6)
    with pytest.raises(BudgetExceeded):
        distance_lower_bound_by_columns(ctx4.differential(), 6, budget=1000)


def test_report_rejects_inverted_bounds():
    with pytest.raises(ValueError):
        DistanceReport("x", 5, 2, 4, 3)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 4]), st.integers(2, 3), st.integers(4, 9), st.integers(0, 10**6))
def test_engines_match_brute_force(q, k, n, seed):
    F = small_field(q)
    C = random_code(F, n, k, seed)
    truth = brute_min_distance(F, C.generator)
    assert exhaustive_min_distance(C).distance == truth
    assert bz_min_distance(C).distance == truth
    col = distance_lower_bound_by_columns(C, n - 1)
    assert col.lower <= truth <= col.upper
    if col.exact:
        assert col.distance == truth
    assert min_distance(C).distance == truth


def test_min_distance_dispatch(ctx3):
    assert min_distance(ctx3.functional(1), "auto").distance == 14
    assert min_distance(ctx3.differential(), "columns", w=4).distance == 5
    with pytest.raises(ValueError):
        min_distance(ctx3.functional(1), "columns")
    with pytest.raises(ValueError):
        min_distance(ctx3.functional(1), "nope")

"""Minimum-distance engines.

* ``exhaustive``: one message per projective class, incremental updates.
* ``column_rank``: every w-subset of parity-check columns independent
  certifies d > w; a dependent subset is a low-weight codeword.
* ``bz``: disjoint information sets (Brouwer-Zimmermann lower bound) plus
  the best weight met along the way.

Work is split into disjoint ranges and min-reduced, so the answer does not
depend on ``threads``.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

import numpy as np

from ..errors import BudgetExceeded
from ..gftower import SmallField
from ..linalg import nullspace, rref
from . import _kernels as K
from .linear import LinearCode, weight

DEFAULT_BUDGET = 10**9


@dataclass
class DistanceReport:
    method: str
    n: int
    k: int
    lower: int
    upper: int
    witness: list[int] | None = None
    elapsed: float = 0.0
    visited: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def distance(self) -> int | None:
        return self.lower if self.exact else None

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "n": self.n,
            "k": self.k,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "witness": self.witness,
            "elapsed_s": round(self.elapsed, 4),
            "visited": self.visited,
            **self.extra,
        }


def _run(tasks, threads: int):
    if threads <= 1 or len(tasks) <= 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda t: t(), tasks))


def _additive_table(F: SmallField) -> np.ndarray:
    """Small-field encoding -> F_2-coefficient bitmask (characteristic 2 only)."""
    T = F.tower
    out = np.zeros(F.order, dtype=np.int64)
    for a in range(F.order):
        bits = T.vector(int(F.to_tower_table[a]))
        out[a] = sum(b << i for i, b in enumerate(bits))
    return out


def projective_message_count(q2: int, k: int) -> int:
    return (q2**k - 1) // (q2 - 1)


def exhaustive_min_distance(
    code: LinearCode, budget: int = DEFAULT_BUDGET, threads: int = 1, chunks: int | None = None
) -> DistanceReport:
    F = code.field
    G = np.ascontiguousarray(code.generator, dtype=np.int64)
    k, n = G.shape
    Q = F.order
    total = projective_message_count(Q, k)
    if total > budget:
        raise BudgetExceeded(f"{total} projective messages exceed the budget {budget}")
    start = time.perf_counter()
    S = K.scaled_rows(G, np.ascontiguousarray(F.mul_table))
    add = np.ascontiguousarray(F.add_table)
    xor = F.tower.p == 2
    if xor:
        S = _additive_table(F)[S]
    chunks = chunks or max(1, threads)

    def make(L: int, lo: int, hi: int):
        def task():
            msg = np.zeros(k, dtype=np.int64)
            if xor:
                w, cnt, vis = K.enumerate_lead_xor(S, L, lo, hi, msg)
            else:
                w, cnt, vis = K.enumerate_lead(S, add, L, lo, hi, msg)
            return int(w), int(cnt), int(vis), msg

        return task

    tasks = []
    for L in range(k):
        if k - L - 1 == 0:
            tasks.append(make(L, 0, Q))
            continue
        edges = np.linspace(0, Q, min(chunks, Q) + 1).astype(int)
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi > lo:
                tasks.append(make(L, int(lo), int(hi)))
    results = _run(tasks, threads)
    best = min(r[0] for r in results)
    count = sum(r[1] for r in results if r[0] == best)
    visited = sum(r[2] for r in results)
    msg = next(r[3] for r in results if r[0] == best)
    word = code.encode(msg)
    if weight(word) != best:
        raise AssertionError("enumeration kernel and re-encoding disagree on the witness weight")
    return DistanceReport(
        "exhaustive",
        n,
        k,
        best,
        best,
        [int(x) for x in word],
        time.perf_counter() - start,
        visited,
        {"min_weight_projective_count": count, "projective_messages": total},
    )


def _first_dependent(H: np.ndarray, F: SmallField, size: int, threads: int) -> tuple[list[int] | None, int]:
    n = H.shape[1]
    parts = max(1, threads)
    edges = np.linspace(0, n, min(parts, n) + 1).astype(int)
    tabs = [np.ascontiguousarray(t) for t in (F.add_table, F.mul_table, F.neg_table, F.inv_table)]

    def make(lo: int, hi: int):
        def task():
            out = np.zeros(size, dtype=np.int64)
            s, vis = K.first_dependent_subset(H, *tabs, size, lo, hi, out)
            return (list(map(int, out[:s])) if s else None), int(vis)

        return task

    res = _run([make(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a], threads)
    found = next((r[0] for r in res if r[0] is not None), None)
    return found, sum(r[1] for r in res)


def codeword_on_columns(code: LinearCode, H: np.ndarray, cols: Sequence[int]) -> np.ndarray:
    """Nonzero codeword supported on ``cols`` given a parity-check matrix ``H``."""
    F = code.field
    ker = nullspace(F, H[:, list(cols)])
    if ker.shape[0] == 0:
        raise ValueError("columns are independent")
    word = np.zeros(code.n, dtype=np.int64)
    word[list(cols)] = ker[0]
    return word


def distance_lower_bound_by_columns(
    code: LinearCode,
    w: int,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    find_witness: bool = True,
    parity_check: np.ndarray | None = None,
) -> DistanceReport:
    """Certify ``d >= w + 1`` from the parity-check columns.

    Subset sizes 1, 2, ... are tried in turn, so the first dependent subset
    found has minimal size and gives the exact distance.  If none of size
    <= ``w`` exists and ``find_witness`` is set, size ``w + 1`` is searched
    for a matching upper bound.
    """
    F = code.field
    H = parity_check if parity_check is not None else code.dual().generator
    H = np.ascontiguousarray(H, dtype=np.int64)
    n = code.n
    top = w + 1 if find_witness else w
    cost = sum(comb(n, s) for s in range(1, top + 1))
    if cost > budget:
        raise BudgetExceeded(f"{cost} column subsets exceed the budget {budget}")
    start = time.perf_counter()
    visited = 0
    for s in range(1, top + 1):
        found, vis = _first_dependent(H, F, s, threads)
        visited += vis
        if found is not None:
            word = codeword_on_columns(code, H, found)
            if not code.contains(word) or weight(word) != s:
                raise AssertionError("dependent column set does not give a codeword of that weight")
            return DistanceReport(
                "column_rank",
                n,
                code.k,
                s,
                s,
                [int(x) for x in word],
                time.perf_counter() - start,
                visited,
                {"dependent_columns": found, "certified_independent_up_to": s - 1},
            )
    return DistanceReport(
        "column_rank",
        n,
        code.k,
        top + 1 if find_witness else w + 1,
        n - code.k + 1,
        None,
        time.perf_counter() - start,
        visited,
        {"certified_independent_up_to": top},
    )


def information_sets(code: LinearCode) -> list[tuple[list[int], np.ndarray]]:
    """Greedy disjoint information sets with the generator made systematic on each."""
    F = code.field
    G = code.generator
    k, n = G.shape
    remaining = list(range(n))
    out = []
    while len(remaining) >= k:
        sub = G[:, remaining]
        R, piv = rref(F, np.hstack([sub, G]))
        piv = [p for p in piv if p < len(remaining)]
        if len(piv) < k:
            break
        cols = [remaining[p] for p in piv]
        # R[:, len(remaining):] is the generator expressed in the new basis
        Gs = R[:k, len(remaining):]
        out.append((cols, Gs))
        remaining = [c for c in remaining if c not in set(cols)]
    return out


def bz_min_distance(
    code: LinearCode,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
    witnesses: Sequence[Sequence[int]] = (),
) -> DistanceReport:
    F = code.field
    k, n = code.k, code.n
    start = time.perf_counter()
    upper = n - k + 1
    best_word = None
    for w in witnesses:
        if not code.contains(w):
            raise ValueError("supplied witness is not a codeword")
        if 0 < weight(w) <= upper:
            upper = weight(w)
            best_word = [int(x) for x in w]
    sets = information_sets(code)
    m = len(sets)
    lower = 1
    visited = 0
    level = 0
    add = np.ascontiguousarray(F.add_table)
    mul = np.ascontiguousarray(F.mul_table)
    S_list = [K.scaled_rows(np.ascontiguousarray(Gs), mul) for _, Gs in sets]
    completed_levels = 0
    while budget > 0 and lower < upper and level < k:
        level += 1
        remaining = budget - visited
        if remaining <= 0:
            break

        def make(S):
            def task():
                msg = np.zeros(k, dtype=np.int64)
                b, vis, done = K.min_weight_fixed_message_weight(S, add, level, remaining, msg)
                return int(b), int(vis), bool(done), msg, S

            return task

        res = _run([make(S) for S in S_list], threads)
        visited += sum(r[1] for r in res)
        for b, _, _, msg, S in res:
            if b < upper:
                upper = b
                j = next(i for i, s in enumerate(S_list) if s is S)
                word = np.zeros(n, dtype=np.int64)
                Gs = sets[j][1]
                for r in range(k):
                    if msg[r]:
                        word = F.add_v(word, F.mul_v(msg[r], Gs[r]))
                best_word = [int(x) for x in word]
        if not all(r[2] for r in res):
            break
        completed_levels = level
        lower = max(lower, m * (level + 1))
    lower = min(lower, upper)
    return DistanceReport(
        "bz",
        n,
        k,
        lower,
        upper,
        best_word,
        time.perf_counter() - start,
        visited,
        {"information_sets": m, "completed_message_weight": completed_levels},
    )


def min_distance(code: LinearCode, method: str = "auto", budget: int = DEFAULT_BUDGET, threads: int = 1, w: int | None = None) -> DistanceReport:
    if method == "exhaustive":
        return exhaustive_min_distance(code, budget, threads)
    if method == "columns":
        if w is None:
            raise ValueError("the column engine needs a subset size w")
        return distance_lower_bound_by_columns(code, w, budget, threads)
    if method == "bz":
        return bz_min_distance(code, budget, threads)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if projective_message_count(code.field.order, code.k) <= budget:
        return exhaustive_min_distance(code, budget, threads)
    if w is not None:
        return distance_lower_bound_by_columns(code, w, budget, threads)
    return bz_min_distance(code, budget, threads)

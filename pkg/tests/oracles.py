"""Independent reference routes used to cross-check the vectorised code paths."""

from __future__ import annotations

from itertools import product

import numpy as np


def naive_values(fn, dom) -> list[int]:
    """Point-by-point scalar evaluation of the expanded numerator and denominator (tower values)."""
    T = dom.tower
    num, den = fn.expand()
    out = []
    for i in dom.D:
        P = dom.fam.subplane.point(i)
        d = den(P)
        assert d != 0, f"pole at subplane point {i}"
        out.append(T.div(num(P), d))
    return out


def naive_weight(fn, dom) -> int:
    return sum(v != 0 for v in naive_values(fn, dom))


def naive_orthogonal(fn, dom, code) -> bool:
    """Dot products in F_{q^6} against the generator lifted back to the tower."""
    T = dom.tower
    vals = naive_values(fn, dom)
    for row in code.field.to_tower(code.generator):
        acc = 0
        for g, v in zip(row, vals):
            acc = T.add(acc, T.mul(int(g), v))
        if acc != 0:
            return False
    return True


def brute_min_distance(F, G: np.ndarray) -> int:
    """Weight of every nonzero message, one nested loop at a time."""
    k, n = G.shape
    best = n + 1
    for msg in product(range(F.order), repeat=k):
        if not any(msg):
            continue
        word = np.zeros(n, dtype=np.int64)
        for c, row in zip(msg, G):
            if c:
                word = F.add_table[word, F.mul_table[c, row]]
        best = min(best, int(np.count_nonzero(word)))
    return best

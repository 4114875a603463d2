"""numba kernels behind the minimum-distance engines.

Field elements are small-field encodings; ``add`` and ``mul`` are the dense
tables of :class:`~hermsinger.gftower.SmallField`.  ``S[j, a]`` is row ``j``
of a generator matrix scaled by the element ``a``.  Every kernel releases
the GIL so partitions can run on a thread pool.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def scaled_rows(G, mul):
    k, n = G.shape
    Q = mul.shape[0]
    S = np.empty((k, Q, n), dtype=np.int64)
    for j in range(k):
        for a in range(Q):
            for i in range(n):
                S[j, a, i] = mul[a, G[j, i]]
    return S


@njit(cache=True, nogil=True)
def enumerate_lead(S, add, L, lo, hi, msg_out):
    """Minimum weight over messages ``(0, .., 0, 1, m_{L+1}, .., m_{k-1})``.

    The digit right after the leading 1 is restricted to ``[lo, hi)``.
    Returns ``(best_weight, count_at_best, words_visited)``; the best message
    is written into ``msg_out``.
    """
    k = S.shape[0]
    Q = S.shape[1]
    n = S.shape[2]
    free = k - L - 1
    best = n + 1
    best_count = 0
    visited = 0
    if free == 0:
        w = 0
        for i in range(n):
            if S[L, 1, i] != 0:
                w += 1
        for j in range(k):
            msg_out[j] = 0
        msg_out[L] = 1
        return w, 1, 1
    P = np.empty((free + 1, n), dtype=np.int64)
    for i in range(n):
        P[0, i] = S[L, 1, i]
    vals = np.zeros(free + 1, dtype=np.int64)
    for d in range(1, free):
        vals[d] = lo if d == 1 else 0
        for i in range(n):
            P[d, i] = add[P[d - 1, i], S[L + d, vals[d], i]]
    j = L + free
    a_lo = lo if free == 1 else 0
    a_hi = hi if free == 1 else Q
    while True:
        for a in range(a_lo, a_hi):
            w = 0
            for i in range(n):
                if add[P[free - 1, i], S[j, a, i]] != 0:
                    w += 1
            visited += 1
            if w < best:
                best = w
                best_count = 1
                for t in range(k):
                    msg_out[t] = 0
                msg_out[L] = 1
                for d in range(1, free):
                    msg_out[L + d] = vals[d]
                msg_out[j] = a
            elif w == best:
                best_count += 1
        d = free - 1
        while d >= 1:
            vals[d] += 1
            limit = hi if d == 1 else Q
            if vals[d] < limit:
                break
            vals[d] = lo if d == 1 else 0
            d -= 1
        if d < 1:
            break
        for e in range(d, free):
            for i in range(n):
                P[e, i] = add[P[e - 1, i], S[L + e, vals[e], i]]
    return best, best_count, visited


@njit(cache=True, nogil=True)
def enumerate_lead_xor(S, L, lo, hi, msg_out):
    """:func:`enumerate_lead` for characteristic 2 with ``S`` in additive (bit-vector) encoding."""
    k = S.shape[0]
    Q = S.shape[1]
    n = S.shape[2]
    free = k - L - 1
    best = n + 1
    best_count = 0
    visited = 0
    if free == 0:
        w = 0
        for i in range(n):
            if S[L, 1, i] != 0:
                w += 1
        for j in range(k):
            msg_out[j] = 0
        msg_out[L] = 1
        return w, 1, 1
    P = np.empty((free + 1, n), dtype=np.int64)
    for i in range(n):
        P[0, i] = S[L, 1, i]
    vals = np.zeros(free + 1, dtype=np.int64)
    for d in range(1, free):
        vals[d] = lo if d == 1 else 0
        for i in range(n):
            P[d, i] = P[d - 1, i] ^ S[L + d, vals[d], i]
    j = L + free
    a_lo = lo if free == 1 else 0
    a_hi = hi if free == 1 else Q
    while True:
        for a in range(a_lo, a_hi):
            w = 0
            for i in range(n):
                w += (P[free - 1, i] ^ S[j, a, i]) != 0
            visited += 1
            if w < best:
                best = w
                best_count = 1
                for t in range(k):
                    msg_out[t] = 0
                msg_out[L] = 1
                for d in range(1, free):
                    msg_out[L + d] = vals[d]
                msg_out[j] = a
            elif w == best:
                best_count += 1
        d = free - 1
        while d >= 1:
            vals[d] += 1
            limit = hi if d == 1 else Q
            if vals[d] < limit:
                break
            vals[d] = lo if d == 1 else 0
            d -= 1
        if d < 1:
            break
        for e in range(d, free):
            for i in range(n):
                P[e, i] = P[e - 1, i] ^ S[L + e, vals[e], i]
    return best, best_count, visited


@njit(cache=True, nogil=True)
def first_dependent_subset(H, add, mul, neg, inv, max_size, first_lo, first_hi, out):
    """Depth-first search over column subsets of ``H`` in lexicographic order.

    Columns are added one at a time to an incrementally reduced basis; the
    first subset (of size <= ``max_size``, smallest column first in
    ``[first_lo, first_hi)``) whose newest column reduces to zero is written
    to ``out``.  Returns ``(size, subsets_visited)``, size 0 if every subset
    is independent.
    """
    r, n = H.shape
    basis = np.zeros((max_size, r), dtype=np.int64)
    piv = np.zeros(max_size, dtype=np.int64)
    chosen = np.zeros(max_size, dtype=np.int64)
    v = np.zeros(r, dtype=np.int64)
    visited = 0
    level = 0
    chosen[0] = first_lo - 1
    while level >= 0:
        chosen[level] += 1
        limit = first_hi if level == 0 else n
        if chosen[level] >= limit or chosen[level] > n - 1:
            level -= 1
            continue
        c = chosen[level]
        for i in range(r):
            v[i] = H[i, c]
        for b in range(level):
            coef = v[piv[b]]
            if coef != 0:
                f = neg[coef]
                for i in range(r):
                    v[i] = add[v[i], mul[f, basis[b, i]]]
        visited += 1
        p = -1
        for i in range(r):
            if v[i] != 0:
                p = i
                break
        if p < 0:
            for t in range(level + 1):
                out[t] = chosen[t]
            return level + 1, visited
        if level + 1 < max_size:
            s = inv[v[p]]
            for i in range(r):
                basis[level, i] = mul[s, v[i]]
            piv[level] = p
            level += 1
            chosen[level] = c
    return 0, visited


@njit(cache=True, nogil=True)
def min_weight_fixed_message_weight(S, add, w, budget, msg_out):
    """Minimum codeword weight over projective messages of Hamming weight exactly ``w``.

    Messages have first nonzero entry 1.  Stops after ``budget`` codewords;
    returns ``(best_weight, visited, completed)``.
    """
    k = S.shape[0]
    Q = S.shape[1]
    n = S.shape[2]
    best = n + 1
    visited = 0
    pos = np.arange(w)
    vals = np.ones(w, dtype=np.int64)
    c = np.zeros(n, dtype=np.int64)
    while True:
        # values: vals[0] == 1, others run over 1..Q-1
        while True:
            for i in range(n):
                c[i] = 0
            for t in range(w):
                for i in range(n):
                    c[i] = add[c[i], S[pos[t], vals[t], i]]
            wt = 0
            for i in range(n):
                if c[i] != 0:
                    wt += 1
            visited += 1
            if wt < best and wt > 0:
                best = wt
                for t in range(k):
                    msg_out[t] = 0
                for t in range(w):
                    msg_out[pos[t]] = vals[t]
            if visited >= budget:
                return best, visited, False
            t = w - 1
            while t >= 1:
                vals[t] += 1
                if vals[t] < Q:
                    break
                vals[t] = 1
                t -= 1
            if t < 1:
                break
        # next combination of positions
        t = w - 1
        while t >= 0 and pos[t] == k - w + t:
            t -= 1
        if t < 0:
            break
        pos[t] += 1
        for s in range(t + 1, w):
            pos[s] = pos[s - 1] + 1
    return best, visited, True

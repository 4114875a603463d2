"""Finite-field tower F_q < F_{q^2} < F_{q^3} < F_{q^6} on discrete-log tables.

Every element of F_{q^6} is a plain ``int``: ``0`` is zero and ``1 + k`` is
``g**k`` for the fixed primitive element ``g`` (a root of the Conway
polynomial of degree ``6h`` over F_p).  Multiplication is index arithmetic,
addition goes through a Zech logarithm table.  Each scalar operation has a
numpy counterpart with a ``_v`` suffix that works elementwise on integer
arrays of encodings.

:class:`SmallField` re-encodes the subfield F_{q^2} with its own
primitive element ``g**((q^6-1)/(q^2-1))`` and full addition and
multiplication tables; the code engines work in that encoding.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSubfieldIndex,
    CapExceeded,
    NormalizationFailure,
    NotPrime,
    OrderNotDividing,
    ZeroPolynomial,
)

DEFAULT_CAP = 2**24


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class PrimePower:
    p: int
    h: int = 1

    @property
    def q(self) -> int:
        return self.p**self.h

    @classmethod
    def from_q(cls, q: int) -> "PrimePower":
        if q < 2:
            raise NotPrime(f"{q} is not a prime power")
        p = prime_factors(q)[0]
        h = 0
        m = q
        while m % p == 0:
            m //= p
            h += 1
        if m != 1:
            raise NotPrime(f"{q} is not a prime power")
        return cls(p, h)


# ---------------------------------------------------------------------------
# Conway polynomials
# ---------------------------------------------------------------------------


def _mulmod(a: list[int], b: list[int], f: Sequence[int], p: int) -> list[int]:
    n = len(f) - 1
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(n + 1):
                prod[d - n + i] -= c * f[i]
    return [c % p for c in prod[:n]]


def _powmod(base: list[int], e: int, f: Sequence[int], p: int) -> list[int]:
    n = len(f) - 1
    result = [1] + [0] * (n - 1)
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        base = _mulmod(base, base, f, p)
        e >>= 1
    return result


def _x_poly(n: int) -> list[int]:
    if n == 1:
        return [0]
    return [0, 1] + [0] * (n - 2)


def _evaluate_in_ring(g: Sequence[int], y: list[int], f: Sequence[int], p: int) -> list[int]:
    n = len(f) - 1
    acc = [0] * n
    for c in reversed(g):
        acc = _mulmod(acc, y, f, p)
        acc[0] = (acc[0] + c) % p
    return acc


@functools.lru_cache(maxsize=None)
def conway_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Conway polynomial of degree ``n`` over F_p, coefficients low to high.

    Candidates ``x^n - a_{n-1} x^{n-1} + a_{n-2} x^{n-2} - ...`` are visited
    in lexicographic order of ``(a_{n-1}, ..., a_0)``; the first primitive one
    compatible with every proper-divisor Conway polynomial wins.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    order = p**n - 1
    factors = prime_factors(order)
    lower = {d: conway_polynomial(p, d) for d in divisors(n) if d < n}
    for idx in range(p**n):
        alphas = [(idx // p ** (n - 1 - j)) % p for j in range(n)]  # a_{n-1} .. a_0
        f = [0] * (n + 1)
        f[n] = 1
        for j, a in enumerate(alphas):
            i = n - 1 - j
            sign = -1 if (n - i) % 2 else 1
            f[i] = (sign * a) % p
        if f[0] == 0:
            continue
        x = _x_poly(n) if n > 1 else [(-f[0]) % p]
        one = [1] + [0] * (n - 1)
        if _powmod(x, order, f, p) != one:
            continue
        if any(_powmod(x, order // r, f, p) == one for r in factors):
            continue
        ok = True
        for d, g in lower.items():
            y = _powmod(x, order // (p**d - 1), f, p)
            if any(_evaluate_in_ring(g, y, f, p)):
                ok = False
                break
        if ok:
            return tuple(f)
    raise AssertionError(f"no Conway polynomial found for p={p}, n={n}")


# ---------------------------------------------------------------------------
# The tower
# ---------------------------------------------------------------------------


class FieldTower:
    """Arithmetic in F_{q^6} with the subfields F_q, F_{q^2}, F_{q^3} marked.

    Immutable once built; use :func:`build_tower`.
    """

    SUBFIELD_DEGREES = (1, 2, 3, 6)

    def __init__(self, pp: PrimePower, poly: Sequence[int], exp_vec: np.ndarray):
        self.pp = pp
        self.p = pp.p
        self.h = pp.h
        self.q = pp.q
        self.degree = 6 * pp.h
        self.poly = tuple(int(c) for c in poly)
        self.order = self.q**6
        self.N = self.order - 1
        self.exp_vec = np.asarray(exp_vec, dtype=np.int64)
        self.exp_vec.setflags(write=False)
        log = np.full(self.order, -1, dtype=np.int64)
        log[self.exp_vec] = np.arange(self.N, dtype=np.int64)
        self.log_of_vec = log
        log.setflags(write=False)
        p = self.p
        v = self.exp_vec
        plus_one = np.where(v % p == p - 1, v - (p - 1), v + 1)
        zech = np.where(plus_one == 0, -1, log[plus_one])
        self.zech = zech
        zech.setflags(write=False)
        self.minus_one = 1 + int(log[p - 1]) if p != 2 else 1

    # -- encodings ---------------------------------------------------------
    def from_log(self, k: int) -> int:
        return 1 + k % self.N

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of zero")
        return a - 1

    def from_int(self, c: int) -> int:
        c %= self.p
        return 0 if c == 0 else 1 + int(self.log_of_vec[c])

    def vector(self, a: int) -> list[int]:
        """F_p coordinates of ``a`` in the polynomial basis, little-endian."""
        v = 0 if a == 0 else int(self.exp_vec[a - 1])
        out = []
        for _ in range(self.degree):
            out.append(v % self.p)
            v //= self.p
        return out

    def from_vector(self, digits: Sequence[int]) -> int:
        v = 0
        for d in reversed(list(digits)):
            v = v * self.p + int(d) % self.p
        return 0 if v == 0 else 1 + int(self.log_of_vec[v])

    def elements(self) -> range:
        return range(self.order)

    # -- scalar arithmetic ---------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return (a + b - 2) % self.N + 1

    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        la = a - 1
        z = int(self.zech[(b - 1 - la) % self.N])
        if z < 0:
            return 0
        return (la + z) % self.N + 1

    def neg(self, a: int) -> int:
        return self.mul(a, self.minus_one)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return (-(a - 1)) % self.N + 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return ((a - 1) * e) % self.N + 1

    def frob(self, a: int, e: int) -> int:
        """``a ** (q ** e)``."""
        return self.pow(a, self.q ** (e % 6))

    def sum(self, items: Iterable[int]) -> int:
        acc = 0
        for x in items:
            acc = self.add(acc, x)
        return acc

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        k = a - 1
        from math import gcd

        return self.N // gcd(self.N, k)

    def in_subfield(self, a: int, k: int) -> bool:
        if k not in self.SUBFIELD_DEGREES:
            raise BadSubfieldIndex(f"subfield degree {k} not in {self.SUBFIELD_DEGREES}")
        if a == 0:
            return True
        return (a - 1) % (self.N // (self.q**k - 1)) == 0

    def root_of_unity(self, m: int) -> int:
        """Canonical primitive m-th root of unity ``g ** ((q^6 - 1) / m)``."""
        if m <= 0 or self.N % m:
            raise OrderNotDividing(f"{m} does not divide q^6 - 1 = {self.N}")
        return self.from_log(self.N // m)

    # -- vectorised arithmetic ------------------------------------------------
    def mul_v(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return np.where((a == 0) | (b == 0), 0, (a + b - 2) % self.N + 1)

    def add_v(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        a_b = np.broadcast_arrays(a, b)
        a, b = a_b
        z = self.zech[(b - a) % self.N]
        s = np.where(z < 0, 0, (a - 1 + z) % self.N + 1)
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def neg_v(self, a) -> np.ndarray:
        return self.mul_v(a, self.minus_one)

    def inv_v(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return (-(a - 1)) % self.N + 1

    def pow_v(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        return np.where(a == 0, 0, ((a - 1) * e) % self.N + 1)

    def in_subfield_v(self, a, k: int) -> np.ndarray:
        if k not in self.SUBFIELD_DEGREES:
            raise BadSubfieldIndex(f"subfield degree {k} not in {self.SUBFIELD_DEGREES}")
        a = np.asarray(a, dtype=np.int64)
        return (a == 0) | ((a - 1) % (self.N // (self.q**k - 1)) == 0)

    # -- univariate polynomials (coefficients low to high) ---------------------
    def poly_eval(self, coeffs: Sequence[int], x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def poly_eval_all(self, coeffs: Sequence[int]) -> np.ndarray:
        """Values of the polynomial at every element, indexed by encoding."""
        xs = np.arange(self.order, dtype=np.int64)
        acc = np.zeros(self.order, dtype=np.int64)
        for c in reversed(list(coeffs)):
            acc = self.add_v(self.mul_v(acc, xs), c)
        return acc

    def univariate_roots(self, coeffs: Sequence[int]) -> list[int]:
        """All roots in F_{q^6} by exhaustive scan, sorted by encoding."""
        coeffs = _trim(coeffs)
        if not coeffs:
            raise ZeroPolynomial("the zero polynomial has every element as a root")
        values = self.poly_eval_all(coeffs)
        return [int(x) for x in np.flatnonzero(values == 0)]

    def root_multiplicity(self, coeffs: Sequence[int], r: int) -> int:
        coeffs = _trim(coeffs)
        if not coeffs:
            raise ZeroPolynomial("multiplicity in the zero polynomial is undefined")
        m = 0
        while len(coeffs) > 1:
            quotient, rem = self.divide_by_linear(coeffs, r)
            if rem != 0:
                break
            coeffs = quotient
            m += 1
        return m

    def divide_by_linear(self, coeffs: Sequence[int], r: int) -> tuple[list[int], int]:
        """Synthetic division by ``X - r``; returns (quotient, remainder)."""
        n = len(coeffs) - 1
        out = [0] * n
        acc = 0
        for i in range(n, 0, -1):
            acc = self.add(self.mul(acc, r), coeffs[i])
            out[i - 1] = acc
        rem = self.add(self.mul(acc, r), coeffs[0])
        return out, rem

    # -- serialization -------------------------------------------------------
    def header(self) -> dict:
        return {"p": self.p, "h": self.h, "defining_polynomial": list(self.poly)}

    def serialize(self, a: int) -> list[int]:
        return self.vector(a)

    def deserialize(self, digits: Sequence[int]) -> int:
        return self.from_vector(digits)

    def save_tables(self, path: str | Path) -> None:
        np.savez_compressed(
            path, p=self.p, h=self.h, poly=np.array(self.poly), exp_vec=self.exp_vec
        )

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, h={self.h}, order={self.order})"


def _trim(coeffs: Sequence[int]) -> list[int]:
    out = list(int(c) for c in coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def _exp_table(p: int, poly: Sequence[int]) -> np.ndarray:
    n = len(poly) - 1
    N = p**n - 1
    weights = [p**i for i in range(n)]
    coeffs = [1] + [0] * (n - 1)
    out = np.empty(N, dtype=np.int64)
    for k in range(N):
        out[k] = sum(c * w for c, w in zip(coeffs, weights))
        top = coeffs[-1]
        coeffs = [0] + coeffs[:-1]
        if top:
            for i in range(n):
                coeffs[i] = (coeffs[i] - top * poly[i]) % p
    return out


_TOWERS: dict[tuple[int, int], FieldTower] = {}


def build_tower(pp: PrimePower | int, cap: int = DEFAULT_CAP, cache_dir: str | Path | None = None) -> FieldTower:
    """Build (or fetch) the tower for ``q = p^h``.

    An integer argument is read as ``q``.  With ``cache_dir`` the exponent
    table is read from / written to ``tower_p{p}_h{h}.npz`` there.
    """
    if isinstance(pp, int):
        pp = PrimePower.from_q(pp)
    if not is_prime(pp.p):
        raise NotPrime(f"{pp.p} is not prime")
    if pp.h < 1:
        raise ValueError("exponent h must be positive")
    if pp.q**6 > cap:
        raise CapExceeded(f"q^6 = {pp.q ** 6} exceeds the table cap {cap}")
    key = (pp.p, pp.h)
    if key in _TOWERS:
        return _TOWERS[key]
    poly = conway_polynomial(pp.p, 6 * pp.h)
    exp_vec = None
    sidecar = None
    if cache_dir is not None:
        sidecar = Path(cache_dir) / f"tower_p{pp.p}_h{pp.h}.npz"
        if sidecar.exists():
            with np.load(sidecar) as data:
                if int(data["p"]) == pp.p and int(data["h"]) == pp.h and tuple(data["poly"]) == poly:
                    exp_vec = data["exp_vec"]
    if exp_vec is None:
        exp_vec = _exp_table(pp.p, poly)
    tower = FieldTower(pp, poly, exp_vec)
    if sidecar is not None and not sidecar.exists():
        sidecar.parent.mkdir(parents=True, exist_ok=True)
        tower.save_tables(sidecar)
    _TOWERS[key] = tower
    return tower


# ---------------------------------------------------------------------------
# F_{q^2} in its own encoding
# ---------------------------------------------------------------------------


class SmallField:
    """F_{q^2} with dense tables; element ``1 + j`` is ``r ** j``.

    ``r = g ** ((q^6 - 1) / (q^2 - 1))`` is a root of the Conway polynomial of
    degree ``2h``, so printed exponents of ``r`` agree with systems that use
    Conway polynomials.
    """

    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.q = tower.q
        self.order = tower.q**2
        self.N = self.order - 1
        self.step = tower.N // self.N
        to_tower = np.zeros(self.order, dtype=np.int64)
        to_tower[1:] = 1 + self.step * np.arange(self.N)
        self.to_tower_table = to_tower
        Q = self.order
        a = np.repeat(np.arange(Q), Q)
        b = np.tile(np.arange(Q), Q)
        s = tower.add_v(to_tower[a], to_tower[b])
        self.add_table = self._from_tower_exact(s).reshape(Q, Q).astype(np.int64)
        self.mul_table = np.where((a == 0) | (b == 0), 0, (a + b - 2) % self.N + 1).reshape(Q, Q).astype(np.int64)
        self.neg_table = np.array([self.add_table[x].tolist().index(0) for x in range(Q)], dtype=np.int64)
        self.inv_table = np.zeros(Q, dtype=np.int64)
        self.inv_table[1:] = (-(np.arange(1, Q) - 1)) % self.N + 1
        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            t.setflags(write=False)
        self.minus_one = int(self.neg_table[1])

    def _from_tower_exact(self, arr: np.ndarray) -> np.ndarray:
        arr = np.asarray(arr, dtype=np.int64)
        ok = (arr == 0) | ((arr - 1) % self.step == 0)
        if not np.all(ok):
            raise NormalizationFailure("value outside F_{q^2}")
        return np.where(arr == 0, 0, (arr - 1) // self.step + 1)

    def from_tower(self, arr) -> np.ndarray:
        """Tower encodings of F_{q^2} elements to small-field encodings."""
        return self._from_tower_exact(arr)

    def to_tower(self, arr) -> np.ndarray:
        return self.to_tower_table[np.asarray(arr, dtype=np.int64)]

    def element(self, exponent: int) -> int:
        """``r ** exponent``."""
        return 1 + exponent % self.N

    def exponent(self, a: int) -> int | None:
        return None if a == 0 else a - 1

    # scalar ops
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return ((a - 1) * e) % self.N + 1

    # vector ops
    def add_v(self, a, b) -> np.ndarray:
        return self.add_table[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]

    def mul_v(self, a, b) -> np.ndarray:
        return self.mul_table[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]

    def neg_v(self, a) -> np.ndarray:
        return self.neg_table[np.asarray(a, dtype=np.int64)]

    def serialize(self, a: int) -> list[int]:
        return self.tower.vector(int(self.to_tower_table[a]))

    def __repr__(self) -> str:
        return f"SmallField(order={self.order})"


@functools.lru_cache(maxsize=None)
def small_field(q: int) -> SmallField:
    return SmallField(build_tower(q))

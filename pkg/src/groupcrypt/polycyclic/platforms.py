"""Concrete polycyclic platforms.

``HeisenbergLikeElement`` lives in Z^2 ⋊_M Z with ``(a, k)(b, l) = (a + M^k b, k + l)``.
``UnitriangularMatrix`` lives in U_m(F_p), nilpotent of class ``m - 1``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence, Tuple

import gmpy2
from gmpy2 import mpz

Matrix2 = Tuple[Tuple[int, int], Tuple[int, int]]

DEFAULT_MATRIX: Matrix2 = ((2, 1), (1, 1))


def _mat_mul(x, y):
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


class MetabelianPlatform:
    """The group Z^2 ⋊_M Z for a fixed integer matrix ``M`` with ``|det M| = 1``.

    Powers of ``M`` are cached; for the default ``[[2, 1], [1, 1]]`` they are
    read off Fibonacci numbers, ``M^k = [[F(2k+1), F(2k)], [F(2k), F(2k-1)]]``.
    """

    def __init__(self, matrix: Sequence[Sequence[int]] = DEFAULT_MATRIX, cache_size: int = 512):
        (a, b), (c, d) = matrix
        det = a * d - b * c
        if det not in (1, -1):
            raise ValueError(f"matrix must have determinant ±1, got {det}")
        self.matrix: Matrix2 = ((int(a), int(b)), (int(c), int(d)))
        self.det = det
        self._inverse = ((d * det, -b * det), (-c * det, a * det))
        self._fibonacci = self.matrix == DEFAULT_MATRIX
        self.matrix_power = lru_cache(maxsize=cache_size)(self._matrix_power)

    def __eq__(self, other):
        return isinstance(other, MetabelianPlatform) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"MetabelianPlatform({self.matrix})"

    def _matrix_power(self, k: int):
        if self._fibonacci:
            f2k, f2k1 = gmpy2.fib2(2 * abs(k)) if k else (mpz(0), mpz(1))
            if k == 0:
                return ((mpz(1), mpz(0)), (mpz(0), mpz(1)))
            big = f2k + f2k1
            if k > 0:
                return ((big, f2k), (f2k, f2k1))
            return ((f2k1, -f2k), (-f2k, big))
        base = self.matrix if k >= 0 else self._inverse
        base = tuple(tuple(mpz(x) for x in row) for row in base)
        result = ((mpz(1), mpz(0)), (mpz(0), mpz(1)))
        k = abs(k)
        while k:
            if k & 1:
                result = _mat_mul(result, base)
            k >>= 1
            if k:
                base = _mat_mul(base, base)
        return result

    def act(self, k: int, vec: Tuple[int, int]) -> Tuple[int, int]:
        """``M^k`` applied to ``vec``."""
        if not vec[0] and not vec[1]:
            return (0, 0)
        if k == 0:
            return vec
        (a, b), (c, d) = self.matrix_power(k)
        x, y = mpz(vec[0]), mpz(vec[1])
        return (int(a * x + b * y), int(c * x + d * y))

    def element(self, vec=(0, 0), shift: int = 0) -> "HeisenbergLikeElement":
        return HeisenbergLikeElement((int(vec[0]), int(vec[1])), int(shift), self)

    def identity(self) -> "HeisenbergLikeElement":
        return self.element()

    def random_element(self, rng: random.Random, bits: int, shift_bound: int) -> "HeisenbergLikeElement":
        vec = (rng.getrandbits(bits) * rng.choice((1, -1)), rng.getrandbits(bits) * rng.choice((1, -1)))
        return self.element(vec, rng.randint(-shift_bound, shift_bound))


@dataclass(frozen=True)
class HeisenbergLikeElement:
    vec: Tuple[int, int]
    shift: int
    platform: MetabelianPlatform = field(compare=True, repr=False)

    def __mul__(self, other: "HeisenbergLikeElement") -> "HeisenbergLikeElement":
        return heis_mul(self, other)

    def __pow__(self, k: int) -> "HeisenbergLikeElement":
        return heis_pow(self, k)

    def inv(self) -> "HeisenbergLikeElement":
        return heis_inv(self)

    def is_identity(self) -> bool:
        return self.shift == 0 and self.vec == (0, 0)

    def to_bytes(self) -> bytes:
        """Unambiguous binary encoding: three length-prefixed signed integers."""
        parts = []
        for v in (self.vec[0], self.vec[1], self.shift):
            raw = int(v).to_bytes((int(v).bit_length() + 8) // 8, "big", signed=True)
            parts.append(len(raw).to_bytes(4, "big") + raw)
        return b"".join(parts)


def heis_mul(x: HeisenbergLikeElement, y: HeisenbergLikeElement) -> HeisenbergLikeElement:
    mv = x.platform.act(x.shift, y.vec)
    return HeisenbergLikeElement((x.vec[0] + mv[0], x.vec[1] + mv[1]), x.shift + y.shift, x.platform)


def heis_inv(x: HeisenbergLikeElement) -> HeisenbergLikeElement:
    mv = x.platform.act(-x.shift, x.vec)
    return HeisenbergLikeElement((-mv[0], -mv[1]), -x.shift, x.platform)


def heis_pow(x: HeisenbergLikeElement, k: int) -> HeisenbergLikeElement:
    if k < 0:
        x, k = heis_inv(x), -k
    result = x.platform.identity()
    while k:
        if k & 1:
            result = heis_mul(result, x)
        k >>= 1
        if k:
            x = heis_mul(x, x)
    return result


def heis_conj(x: HeisenbergLikeElement, c: HeisenbergLikeElement) -> HeisenbergLikeElement:
    """``x^c = c^-1 x c``."""
    return heis_mul(heis_mul(heis_inv(c), x), c)


# --- unitriangular matrices ----------------------------------------------------


@dataclass(frozen=True)
class UnitriangularMatrix:
    """Upper unitriangular ``m x m`` matrix over F_p, stored as a tuple of rows."""

    rows: Tuple[Tuple[int, ...], ...]
    p: int

    def __post_init__(self):
        m = len(self.rows)
        for i, row in enumerate(self.rows):
            if len(row) != m:
                raise ValueError("matrix must be square")
            for j, x in enumerate(row):
                if j < i and x % self.p:
                    raise ValueError("entries below the diagonal must vanish")
                if j == i and x % self.p != 1:
                    raise ValueError("diagonal entries must be 1")

    @classmethod
    def _trusted(cls, rows, p: int) -> "UnitriangularMatrix":
        # results of our own arithmetic are unitriangular by construction
        out = object.__new__(cls)
        object.__setattr__(out, "rows", rows)
        object.__setattr__(out, "p", p)
        return out

    @property
    def m(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, m: int, p: int) -> "UnitriangularMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(m)) for i in range(m)), p)

    @classmethod
    def elementary(cls, m: int, p: int, entries) -> "UnitriangularMatrix":
        """``I + sum c * E_ij`` with 1-based ``(i, j)`` keys, as in ``I + E_12``."""
        rows = [[int(i == j) for j in range(m)] for i in range(m)]
        for (i, j), c in dict(entries).items():
            rows[i - 1][j - 1] = c % p
        return cls(tuple(map(tuple, rows)), p)

    @classmethod
    def random(cls, rng: random.Random, m: int, p: int) -> "UnitriangularMatrix":
        rows = [[int(i == j) if j <= i else rng.randrange(p) for j in range(m)] for i in range(m)]
        return cls(tuple(map(tuple, rows)), p)

    def entry(self, i: int, j: int) -> int:
        """1-based entry."""
        return self.rows[i - 1][j - 1]

    def __mul__(self, other: "UnitriangularMatrix") -> "UnitriangularMatrix":
        m, p = self.m, self.p
        a, b = self.rows, other.rows
        rows = []
        for i in range(m):
            row = [0] * m
            row[i] = 1
            for j in range(i + 1, m):
                row[j] = sum(a[i][k] * b[k][j] for k in range(i, j + 1)) % p
            rows.append(tuple(row))
        return UnitriangularMatrix._trusted(tuple(rows), p)

    def inv(self) -> "UnitriangularMatrix":
        # back substitution on X with self * X = I, column by column
        m, p, a = self.m, self.p, self.rows
        x = [[int(i == j) for j in range(m)] for i in range(m)]
        for j in range(m):
            for i in range(j - 1, -1, -1):
                x[i][j] = -sum(a[i][k] * x[k][j] for k in range(i + 1, j + 1)) % p
        return UnitriangularMatrix._trusted(tuple(map(tuple, x)), p)

    def __pow__(self, k: int) -> "UnitriangularMatrix":
        base = self if k >= 0 else self.inv()
        k = abs(k)
        if k == 1:
            return base
        result = UnitriangularMatrix.identity(self.m, self.p)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def is_identity(self) -> bool:
        return all(self.rows[i][j] == 0 for i in range(self.m) for j in range(i + 1, self.m))

    def to_lists(self):
        return [list(r) for r in self.rows]


def enumerate_unitriangular(m: int, p: int) -> Iterator[UnitriangularMatrix]:
    slots = [(i, j) for i in range(m) for j in range(i + 1, m)]
    for values in itertools.product(range(p), repeat=len(slots)):
        rows = [[int(i == j) for j in range(m)] for i in range(m)]
        for (i, j), v in zip(slots, values):
            rows[i][j] = v
        yield UnitriangularMatrix(tuple(map(tuple, rows)), p)


def unitriangular_order(m: int, p: int) -> int:
    return p ** (m * (m - 1) // 2)

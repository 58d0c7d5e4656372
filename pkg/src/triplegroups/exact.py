"""Exact rational linear algebra for small dense matrices.

Everything here is tolerance-free: scalars are ``int`` or
``fractions.Fraction`` and matrices are either tuples of tuples or
:class:`LinMap` objects (an integer numpy array over a common
denominator).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

Scalar = int | Fraction

# int64 products are safe below this bound for the dimensions used here.
_INT64_SAFE = 1 << 28


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def fmt_frac(x: Scalar) -> str:
    """Render a rational as ``"p/q"`` (``"p"`` when integral)."""
    x = frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum((a * b for a, b in zip(u, v)), 0)


def mat_vec(m: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> tuple:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def transpose(a: Sequence[Sequence[Scalar]]) -> tuple:
    return tuple(zip(*a))


def identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    m = [[frac(x) for x in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows: Sequence[Sequence[Scalar]]) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {x : rows @ x = 0}."""
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -red[i][f]
        basis.append(tuple(x))
    return basis


def primitive_integer(v: Iterable[Scalar]) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    v = [frac(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def solve(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar]) -> tuple[Fraction, ...] | None:
    """Unique solution of a @ x = b, or None when inconsistent or underdetermined."""
    n = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots or len(pivots) < n:
        return None
    return tuple(red[i][n] for i in range(n))


def inverse(a: Sequence[Sequence[Scalar]]) -> tuple:
    n = len(a)
    aug = [list(row) + list(e) for row, e in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(red[i][n:]) for i in range(n))


class LinMap:
    """Exact square matrix stored as ``num / den`` with ``num`` an integer array.

    Acts on column vectors: ``(a @ b).apply(v) == a.apply(b.apply(v))``.
    Instances are normalized (``den > 0``, ``gcd(num, den) == 1``) so that
    equality and hashing are structural.
    """

    __slots__ = ("num", "den", "_key")

    def __init__(self, num: np.ndarray, den: int = 1):
        if den < 0:
            num, den = -num, -den
        g = den
        for x in num.flat:
            g = gcd(g, int(x))
            if g == 1:
                break
        if g > 1:
            num = num // g
            den //= g
        if num.dtype == object and _fits_int64(num):
            num = num.astype(np.int64)
        num.setflags(write=False)
        self.num = num
        self.den = den
        self._key = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "LinMap":
        rows = [[frac(x) for x in row] for row in rows]
        den = lcm(*(x.denominator for row in rows for x in row))
        data = [[int(x * den) for x in row] for row in rows]
        arr = np.array(data, dtype=object)
        if _fits_int64(arr):
            arr = arr.astype(np.int64)
        return cls(arr, den)

    @classmethod
    def identity(cls, n: int) -> "LinMap":
        return cls(np.eye(n, dtype=np.int64), 1)

    @property
    def dim(self) -> int:
        return self.num.shape[0]

    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(Fraction(int(x), self.den) for x in row) for row in self.num)

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.num[i, j]), self.den)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(x), self.den) for x in self.num[:, j])

    def __matmul__(self, other: "LinMap") -> "LinMap":
        a, b = self.num, other.num
        if a.dtype != object and b.dtype != object:
            bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * a.shape[0]
            if bound >= (1 << 62):
                a, b = a.astype(object), b.astype(object)
        else:
            a, b = a.astype(object), b.astype(object)
        return LinMap(a @ b, self.den * other.den)

    def apply(self, v: Sequence[Scalar]) -> tuple[Fraction, ...]:
        v = [frac(y) for y in v]
        return tuple(sum((int(x) * y for x, y in zip(row, v)), Fraction(0)) / self.den for row in self.num)

    def inverse(self) -> "LinMap":
        return LinMap.from_rows(inverse(self.rows()))

    def transpose(self) -> "LinMap":
        return LinMap(self.num.T.copy(), self.den)

    def is_identity(self) -> bool:
        return self.den == 1 and np.array_equal(self.num, np.eye(self.dim, dtype=np.int64))

    def _k(self):
        if self._key is None:
            self._key = (self.den, tuple(int(x) for x in self.num.flat))
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return self.den == other.den and self.num.shape == other.num.shape and np.array_equal(self.num, other.num)

    def __hash__(self) -> int:
        return hash(self._k())

    def to_json(self) -> list[list[str]]:
        return [[fmt_frac(x) for x in row] for row in self.rows()]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "LinMap":
        return cls.from_rows([[Fraction(x) for x in row] for row in data])

    def first_difference(self, other: "LinMap") -> dict | None:
        """Location and values of the first entry where two maps differ."""
        for i in range(self.dim):
            for j in range(self.dim):
                a, b = self.entry(i, j), other.entry(i, j)
                if a != b:
                    return {"row": i, "col": j, "lhs": fmt_frac(a), "rhs": fmt_frac(b)}
        return None

    def __repr__(self) -> str:
        return f"LinMap({self.to_json()})"


def _fits_int64(arr: np.ndarray) -> bool:
    return all(-_INT64_SAFE < int(x) < _INT64_SAFE for x in arr.flat)

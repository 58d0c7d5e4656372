"""Affine Cartan data, lattices and the canonical bilinear form.

Node 0 is the affine node; nodes ``1..n`` carry Bourbaki numbering for
the finite part.  A vector of the finite span is stored by its
coordinates over the simple roots ``alpha_1..alpha_n`` together with an
optional coefficient of the null root ``delta``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterator

from . import exact
from .errors import ExcludedType, MismatchedType, UnknownType

_TYPE_RE = re.compile(r"^([A-G])(\d+)~([123])$")

EXCLUDED_FAMILIES = {("B", 1), ("C", 1), ("F", 1), ("G", 1)}


class LatticeMode(str, Enum):
    ROOT = "RootLattice"
    WEIGHT = "WeightLattice"


# Diagram edges (i, j, a_ij, a_ji) plus embedded marks/comarks.
def _chain(nodes):
    return [(a, b, -1, -1) for a, b in zip(nodes, nodes[1:])]


def _table_a1(n):
    edges = _chain(list(range(n + 1))) + [(n, 0, -1, -1)]
    marks = (1,) * (n + 1)
    return edges, marks, marks, 1


def _table_d1(n):
    edges = _chain(list(range(1, n - 1))) + [(n - 2, n - 1, -1, -1), (n - 2, n, -1, -1), (0, 2, -1, -1)]
    marks = (1, 1) + (2,) * (n - 3) + (1, 1)
    return edges, marks, marks, 2


_E_TABLES = {
    6: ([(1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (0, 2)], (1, 1, 2, 2, 3, 2, 1), 2),
    7: ([(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4), (0, 1)], (1, 2, 2, 3, 4, 3, 2, 1), 1),
    8: ([(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4), (0, 8)], (1, 2, 3, 4, 6, 5, 4, 3, 2), 8),
}


def _table_e1(n):
    pairs, marks, alpha = _E_TABLES[n]
    return [(a, b, -1, -1) for a, b in pairs], marks, marks, alpha


def _table_a2(n):
    # A_{2n}^{(2)}: short affine node, finite part of type C_n with alpha_n long.
    if n == 1:
        return [(0, 1, -4, -1)], (2, 1), (1, 2), 1
    edges = [(0, 1, -2, -1)] + _chain(list(range(1, n))) + [(n - 1, n, -2, -1)]
    return edges, (2,) * n + (1,), (1,) + (2,) * n, 1


def _table_b2(n):
    # The twisted family with finite part B_n and a short affine node
    # (D_{n+1}^{(2)} in Kac's naming).
    edges = [(0, 1, -2, -1)] + _chain(list(range(1, n))) + [(n - 1, n, -1, -2)]
    return edges, (1,) * (n + 1), (1,) + (2,) * (n - 1) + (1,), 1


_FAMILIES = {
    ("A", 1): (_table_a1, lambda n: n >= 2),
    ("D", 1): (_table_d1, lambda n: n >= 4),
    ("E", 1): (_table_e1, lambda n: n in (6, 7, 8)),
    ("A", 2): (_table_a2, lambda n: n >= 2 and n % 2 == 0),
    ("B", 2): (_table_b2, lambda n: n >= 2),
}

# Listed by ``catalog`` unless gated types are requested explicitly.
GATED_FAMILIES = {("B", 2)}

DEFAULT_CATALOG = (
    [f"A{n}~1" for n in range(2, 8)]
    + [f"D{n}~1" for n in range(4, 8)]
    + ["E6~1", "E7~1", "E8~1"]
    + [f"A{2 * n}~2" for n in range(1, 5)]
)
GATED_CATALOG = [f"B{n}~2" for n in range(2, 6)]


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple[Fraction, ...]
    delta: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        object.__setattr__(self, "delta", Fraction(self.delta))

    @classmethod
    def zero(cls, n: int) -> "LatticeVector":
        return cls((Fraction(0),) * n)

    @classmethod
    def simple(cls, n: int, j: int) -> "LatticeVector":
        """The simple root alpha_j, 1 <= j <= n."""
        return cls(tuple(Fraction(int(k == j - 1)) for k in range(n)))

    @classmethod
    def null_root(cls, n: int, coeff=1) -> "LatticeVector":
        return cls((Fraction(0),) * n, Fraction(coeff))

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.delta + other.delta)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return self + (-other)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.coords), -self.delta)

    def __mul__(self, k) -> "LatticeVector":
        k = Fraction(k)
        return LatticeVector(tuple(k * a for a in self.coords), k * self.delta)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.delta == 0 and not any(self.coords)

    def finite(self) -> "LatticeVector":
        return LatticeVector(self.coords)

    def to_json(self) -> dict:
        out = {"coords": [exact.fmt_frac(c) for c in self.coords]}
        if self.delta:
            out["delta"] = exact.fmt_frac(self.delta)
        return out

    def __str__(self) -> str:
        terms = [f"{exact.fmt_frac(c)}*a{j + 1}" for j, c in enumerate(self.coords) if c]
        if self.delta:
            terms.append(f"{exact.fmt_frac(self.delta)}*delta")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class AffineCartanData:
    type_id: str
    family: tuple[str, int]
    n: int
    cartan: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    alpha_index: int
    lattice_mode: LatticeMode = field(default=LatticeMode.ROOT)

    @cached_property
    def d(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, c) for a, c in zip(self.marks, self.comarks))

    def laces(self, i: int, j: int) -> int:
        if i == j:
            return 0
        return self.cartan[i][j] * self.cartan[j][i]

    @cached_property
    def l0(self) -> int:
        # A2~2 has four laces between nodes 0 and 1; the doubled bond value is used.
        return min(self.laces(0, self.alpha_index), 2)

    @cached_property
    def r(self) -> int:
        return max(self.laces(i, j) for i in range(self.n + 1) for j in range(self.n + 1))

    @property
    def a0(self) -> int:
        return self.marks[0]

    @property
    def twisted_even(self) -> bool:
        """True for the A_{2n}^{(2)} series (weight lattice replaces root lattice)."""
        return self.family == ("A", 2)

    def form_affine(self, j: int, k: int) -> Fraction:
        """(alpha_j, alpha_k) for 0 <= j, k <= n."""
        return self.cartan[j][k] / self.d[j]

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix of the finite simple roots alpha_1..alpha_n."""
        return tuple(tuple(self.form_affine(j, k) for k in range(1, self.n + 1)) for j in range(1, self.n + 1))

    def check(self) -> None:
        """Validate every structural invariant; raises AssertionError on failure."""
        a = self.cartan
        size = self.n + 1
        for i in range(size):
            assert a[i][i] == 2, "diagonal entries must be 2"
            for j in range(size):
                if i != j:
                    assert a[i][j] <= 0, "off-diagonal entries must be nonpositive"
                    assert (a[i][j] == 0) == (a[j][i] == 0), "zero pattern must be symmetric"
        km, kc = kernel_marks(a)
        assert km == self.marks, f"marks {self.marks} differ from kernel {km}"
        assert kc == self.comarks, f"comarks {self.comarks} differ from kernel {kc}"
        assert all(x == 0 for x in exact.mat_vec(a, self.marks))
        g = self.gram
        for j in range(self.n):
            for k in range(self.n):
                assert g[j][k] == g[k][j], "bilinear form must be symmetric"
        assert self.laces(0, self.alpha_index) > 0
        assert self.l0 in (1, 2)
        # the affine simple root is short
        assert all(self.form_affine(0, 0) <= self.form_affine(j, j) for j in range(size))

    # -- lattice vectors --------------------------------------------------

    def bilinear(self, x: LatticeVector, y: LatticeVector) -> Fraction:
        if len(x.coords) != self.n or len(y.coords) != self.n:
            raise MismatchedType(f"vectors do not belong to {self.type_id}")
        g = self.gram
        return sum(
            (x.coords[j] * g[j][k] * y.coords[k] for j in range(self.n) for k in range(self.n)
             if x.coords[j] and y.coords[k]),
            Fraction(0),
        )

    def norm2(self, x: LatticeVector) -> Fraction:
        return self.bilinear(x, x)

    def simple(self, j: int) -> LatticeVector:
        return LatticeVector.simple(self.n, j)

    def zero(self) -> LatticeVector:
        return LatticeVector.zero(self.n)

    @cached_property
    def theta(self) -> LatticeVector:
        return LatticeVector(tuple(Fraction(a) for a in self.marks[1:]))

    @cached_property
    def alpha0(self) -> LatticeVector:
        """alpha_0 = a_0^{-1} (delta - theta)."""
        return LatticeVector(tuple(Fraction(-a, self.a0) for a in self.marks[1:]), Fraction(1, self.a0))

    @cached_property
    def theta_over_a0(self) -> LatticeVector:
        return self.theta * Fraction(1, self.a0)

    def coroot_pairing(self, x: LatticeVector, j: int) -> Fraction:
        """(x, alpha_j^vee) with alpha_j^vee = d_j alpha_j."""
        return self.d[j] * self.bilinear(x, self.simple(j))

    def in_lattice(self, x: LatticeVector) -> bool:
        """Membership of a finite vector in the active lattice (Q or P)."""
        if x.delta != 0 or len(x.coords) != self.n:
            return False
        if self.lattice_mode is LatticeMode.ROOT:
            return all(c.denominator == 1 for c in x.coords)
        return all(self.coroot_pairing(x, j).denominator == 1 for j in range(1, self.n + 1))

    def in_affine_lattice(self, x: LatticeVector) -> bool:
        """Membership in Q + Z delta (root mode) or P + 1/2 Z delta (weight mode)."""
        step = 1 if self.lattice_mode is LatticeMode.ROOT else 2
        return (x.delta * step).denominator == 1 and self.in_lattice(x.finite())

    # -- finite root system -------------------------------------------------

    def reflect_finite(self, j: int, x: LatticeVector) -> LatticeVector:
        return x - self.simple(j) * self.coroot_pairing(x, j)

    @cached_property
    def finite_roots(self) -> tuple[LatticeVector, ...]:
        seen = {self.simple(j) for j in range(1, self.n + 1)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for v in frontier:
                for j in range(1, self.n + 1):
                    w = self.reflect_finite(j, v)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return tuple(sorted(seen, key=lambda v: (self.height(v) < 0, abs(self.height(v)), v.coords)))

    @cached_property
    def positive_roots(self) -> tuple[LatticeVector, ...]:
        return tuple(v for v in self.finite_roots if self.height(v) > 0)

    @staticmethod
    def height(v: LatticeVector) -> Fraction:
        return sum(v.coords, Fraction(0))

    @cached_property
    def root_lengths(self) -> tuple[Fraction, Fraction]:
        lengths = [self.norm2(self.simple(j)) for j in range(1, self.n + 1)]
        return min(lengths), max(lengths)

    def is_long(self, v: LatticeVector) -> bool:
        short, long = self.root_lengths
        if self.twisted_even:
            return self.norm2(v) == 4
        return short != long and self.norm2(v) == long

    def to_json(self) -> dict:
        return {
            "type": self.type_id,
            "n": self.n,
            "cartan": [list(row) for row in self.cartan],
            "marks": list(self.marks),
            "comarks": list(self.comarks),
            "d": [exact.fmt_frac(x) for x in self.d],
            "alphaIndex": self.alpha_index,
            "l0": self.l0,
            "r": self.r,
            "latticeMode": self.lattice_mode.value,
            "theta": [exact.fmt_frac(c) for c in self.theta.coords],
        }


def kernel_marks(cartan) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Minimal positive integer kernel vectors of A and of A transpose."""
    out = []
    for m in (cartan, exact.transpose(cartan)):
        basis = exact.nullspace(m)
        if len(basis) != 1:
            raise ValueError("Cartan matrix is not of corank one")
        v = exact.primitive_integer(basis[0])
        if v[0] < 0:
            v = tuple(-x for x in v)
        if any(x <= 0 for x in v):
            raise ValueError("kernel vector is not positive")
        out.append(v)
    return out[0], out[1]


def parse_type(type_id: str) -> tuple[str, int, int]:
    m = _TYPE_RE.match(type_id.strip())
    if not m:
        raise UnknownType(f"malformed type identifier {type_id!r}; expected e.g. 'A2~1'")
    return m.group(1), int(m.group(2)), int(m.group(3))


def load_catalog(type_id: str) -> AffineCartanData:
    letter, rank, twist = parse_type(type_id)
    if (letter, twist) in EXCLUDED_FAMILIES:
        raise ExcludedType(f"{type_id}: the affine simple root is long for this family")
    if (letter, rank, twist) == ("A", 1, 1):
        raise ExcludedType("A1~1 is outside the supported catalog (four laces between its two nodes)")
    entry = _FAMILIES.get((letter, twist))
    if entry is None or not entry[1](rank):
        raise UnknownType(f"{type_id} is not in the supported catalog")
    builder, _ = entry
    n = rank // 2 if (letter, twist) == ("A", 2) else rank
    edges, marks, comarks, alpha = builder(n)
    a = [[2 if i == j else 0 for j in range(n + 1)] for i in range(n + 1)]
    for i, j, aij, aji in edges:
        a[i][j], a[j][i] = aij, aji
    mode = LatticeMode.WEIGHT if (letter, twist) == ("A", 2) else LatticeMode.ROOT
    data = AffineCartanData(
        type_id=type_id,
        family=(letter, twist),
        n=n,
        cartan=tuple(tuple(row) for row in a),
        marks=tuple(marks),
        comarks=tuple(comarks),
        alpha_index=alpha,
        lattice_mode=mode,
    )
    data.check()
    return data


def catalog_ids(include_gated: bool = False) -> list[str]:
    return DEFAULT_CATALOG + (GATED_CATALOG if include_gated else [])


def iter_catalog(include_gated: bool = False) -> Iterator[AffineCartanData]:
    for t in catalog_ids(include_gated):
        yield load_catalog(t)


def bilinear(data: AffineCartanData, x: LatticeVector, y: LatticeVector) -> Fraction:
    return data.bilinear(x, y)


def theta(data: AffineCartanData) -> LatticeVector:
    return data.theta

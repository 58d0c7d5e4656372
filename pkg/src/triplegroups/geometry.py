"""The space V = h*_fin + R d1 + R d2 + R L1 + R L2 and reflections on it.

Basis order is fixed as ``(alpha_1..alpha_n, delta_1, delta_2, Lambda_1,
Lambda_2)``; every matrix produced here uses that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from . import exact
from .errors import IsotropicRoot, MismatchedType, NotInLattice, UnknownGenerator
from .exact import LinMap
from .rootsys import AffineCartanData, LatticeVector

F0 = Fraction(0)


@dataclass(frozen=True)
class VectorV:
    finite: tuple[Fraction, ...]
    d1: Fraction = F0
    d2: Fraction = F0
    l1: Fraction = F0
    l2: Fraction = F0

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(Fraction(c) for c in self.finite))
        for name in ("d1", "d2", "l1", "l2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_coords(cls, coords) -> "VectorV":
        coords = list(coords)
        return cls(tuple(coords[:-4]), *coords[-4:])

    @classmethod
    def from_lattice(cls, v: LatticeVector, m=0, n=0) -> "VectorV":
        """Embed a finite vector and add m delta_1 + n delta_2."""
        if v.delta:
            raise ValueError("embed the finite part only; pass delta multiples as m, n")
        return cls(v.coords, Fraction(m), Fraction(n))

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self.finite + (self.d1, self.d2, self.l1, self.l2)

    def finite_part(self) -> LatticeVector:
        return LatticeVector(self.finite)

    def __add__(self, other: "VectorV") -> "VectorV":
        return VectorV.from_coords(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "VectorV") -> "VectorV":
        return VectorV.from_coords(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "VectorV":
        return VectorV.from_coords(-a for a in self.coords)

    def __mul__(self, k) -> "VectorV":
        k = Fraction(k)
        return VectorV.from_coords(k * a for a in self.coords)

    __rmul__ = __mul__

    def to_json(self) -> list[str]:
        return [exact.fmt_frac(c) for c in self.coords]


@dataclass(frozen=True)
class TildeRoot:
    """base + m delta_1 + n delta_2 with base a finite vector."""

    base: LatticeVector
    m: Fraction = F0
    n: Fraction = F0

    def __post_init__(self):
        object.__setattr__(self, "m", Fraction(self.m))
        object.__setattr__(self, "n", Fraction(self.n))

    def vector(self) -> VectorV:
        return VectorV.from_lattice(self.base, self.m, self.n)


class DoubleSpace:
    """V together with its form, for one affine type."""

    def __init__(self, data: AffineCartanData):
        self.data = data
        self.n = data.n
        self.dim = data.n + 4

    # indices of the extra basis vectors
    @property
    def i_d1(self) -> int:
        return self.n

    @property
    def i_d2(self) -> int:
        return self.n + 1

    @property
    def i_l1(self) -> int:
        return self.n + 2

    @property
    def i_l2(self) -> int:
        return self.n + 3

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.n
        g = [[F0] * self.dim for _ in range(self.dim)]
        for j in range(n):
            for k in range(n):
                g[j][k] = self.data.gram[j][k]
        # (delta_i, Lambda_j) = Kronecker; (Lambda_i, Lambda_j) = 0 by convention.
        for a, b in ((self.i_d1, self.i_l1), (self.i_d2, self.i_l2)):
            g[a][b] = g[b][a] = Fraction(1)
        return tuple(tuple(row) for row in g)

    @cached_property
    def gram_map(self) -> LinMap:
        return LinMap.from_rows(self.gram)

    def _check(self, x: VectorV) -> None:
        if len(x.finite) != self.n:
            raise MismatchedType(f"vector does not belong to {self.data.type_id}")

    def form(self, x: VectorV, y: VectorV) -> Fraction:
        self._check(x)
        self._check(y)
        xs, ys, g = x.coords, y.coords, self.gram
        return sum((xs[i] * g[i][j] * ys[j] for i in range(self.dim) if xs[i]
                    for j in range(self.dim) if ys[j] and g[i][j]), F0)

    # -- named vectors ------------------------------------------------------

    def basis(self, i: int) -> VectorV:
        return VectorV.from_coords(Fraction(int(k == i)) for k in range(self.dim))

    def alpha(self, j: int) -> VectorV:
        return self.basis(j - 1)

    @property
    def delta1(self) -> VectorV:
        return self.basis(self.i_d1)

    @property
    def delta2(self) -> VectorV:
        return self.basis(self.i_d2)

    @property
    def lambda1(self) -> VectorV:
        return self.basis(self.i_l1)

    @property
    def lambda2(self) -> VectorV:
        return self.basis(self.i_l2)

    def embed(self, v: LatticeVector, m=0, n=0) -> VectorV:
        return VectorV.from_lattice(v, m, n)

    # -- roots and reflections ----------------------------------------------

    def in_tilde_r(self, root: TildeRoot) -> bool:
        data = self.data
        base = root.base
        if base.delta or len(base.coords) != self.n:
            return False
        roots = set(data.finite_roots)
        ints = root.m.denominator == 1 and root.n.denominator == 1
        if base in roots:
            if not data.is_long(base):
                return ints
            r = data.r
            return ints and root.m % r == 0 and root.n % r == 0
        if data.twisted_even and base * 2 in roots and data.is_long(base * 2):
            half = Fraction(1, 2)
            return (root.m - half).denominator == 1 and (root.n - half).denominator == 1
        return False

    def reflect(self, root: VectorV | TildeRoot) -> LinMap:
        a = root.vector() if isinstance(root, TildeRoot) else root
        self._check(a)
        aa = self.form(a, a)
        if aa == 0:
            raise IsotropicRoot("cannot reflect in an isotropic vector")
        ga = exact.mat_vec(self.gram, a.coords)
        ac = a.coords
        rows = [[Fraction(int(i == k)) - 2 * ga[k] / aa * ac[i] for k in range(self.dim)] for i in range(self.dim)]
        return LinMap.from_rows(rows)

    def affine_root(self, m, n) -> VectorV:
        """a_0^{-1}(m delta_1 + n delta_2 - theta)."""
        a0 = self.data.a0
        return self.embed(-self.data.theta_over_a0, Fraction(m, a0), Fraction(n, a0))

    @cached_property
    def generator_ids(self) -> tuple[str, ...]:
        return tuple(f"s{j}" for j in range(1, self.n + 1)) + ("s01", "s02", "s03", "tau")

    def generator_matrix(self, gen: str) -> LinMap:
        return _generator_matrix(self, gen)

    def central_matrix(self, c) -> LinMap:
        """x -> x + c (x, delta_2) delta_1 - c (x, delta_1) delta_2."""
        c = Fraction(c)
        rows = [list(r) for r in exact.identity(self.dim)]
        rows = [[Fraction(x) for x in r] for r in rows]
        # column of Lambda_2 gains c delta_1, column of Lambda_1 gains -c delta_2
        rows[self.i_d1][self.i_l2] += c
        rows[self.i_d2][self.i_l1] -= c
        return LinMap.from_rows(rows)

    def translation_matrix(self, kind: str, v: LatticeVector) -> LinMap:
        """Matrix of lambda_v (kind 'lambda') or tau_v (kind 'tau')."""
        if not self.data.in_lattice(v):
            raise NotInLattice(f"{v} is not in the lattice of {self.data.type_id}")
        return self._translation(kind, v)

    def _translation(self, kind: str, v: LatticeVector) -> LinMap:
        if kind in ("lambda", "Lambda"):
            di, li = self.i_d1, self.i_l1
        elif kind in ("tau", "Tau"):
            di, li = self.i_d2, self.i_l2
        else:
            raise ValueError(f"unknown translation kind {kind!r}")
        n = self.n
        half_norm = self.data.norm2(v) / 2
        rows = [[Fraction(int(i == k)) for k in range(self.dim)] for i in range(self.dim)]
        # alpha_k -> alpha_k - (alpha_k, v) delta
        for k in range(n):
            rows[di][k] -= self.data.bilinear(self.data.simple(k + 1), v)
        # Lambda -> Lambda + v - |v|^2/2 delta
        for j in range(n):
            rows[j][li] += v.coords[j]
        rows[di][li] -= half_norm
        return LinMap.from_rows(rows)

    def preserves_form(self, m: LinMap) -> bool:
        return m.transpose() @ self.gram_map @ m == self.gram_map

    def restrict_v00(self, m: LinMap) -> LinMap:
        """Restriction to V_(0,0) = h*_fin + R d1 + R d2 (assumed invariant)."""
        k = self.n + 2
        return LinMap(m.num[:k, :k].copy(), m.den)


@lru_cache(maxsize=None)
def _generator_matrix(space: DoubleSpace, gen: str) -> LinMap:
    n = space.n
    if gen.startswith("s") and gen[1:].isdigit() and not gen.startswith("s0"):
        j = int(gen[1:])
        if 1 <= j <= n:
            return space.reflect(space.alpha(j))
    if gen == "s01":
        return space.reflect(space.affine_root(1, 0))
    if gen == "s03":
        return space.reflect(space.affine_root(0, 1))
    if gen == "s02":
        return space.reflect(space.affine_root(1, 1))
    if gen == "tau":
        return space.central_matrix(Fraction(1, space.data.a0))
    raise UnknownGenerator(f"unknown generator {gen!r} for {space.data.type_id}")


@lru_cache(maxsize=None)
def space_for(data: AffineCartanData) -> DoubleSpace:
    return DoubleSpace(data)


def form_v(data: AffineCartanData, x: VectorV, y: VectorV) -> Fraction:
    return space_for(data).form(x, y)


def in_tilde_r(data: AffineCartanData, root: TildeRoot) -> bool:
    return space_for(data).in_tilde_r(root)


def reflect(data: AffineCartanData, root: VectorV | TildeRoot) -> LinMap:
    return space_for(data).reflect(root)


def generator_matrix(data: AffineCartanData, gen: str) -> LinMap:
    return space_for(data).generator_matrix(gen)


def translation_matrix(data: AffineCartanData, kind: str, v: LatticeVector) -> LinMap:
    return space_for(data).translation_matrix(kind, v)

"""The double affine Weyl group as a concrete group.

An element is stored in the normal form ``w . lambda_mu . tau_beta .
tau_{c delta}`` with ``w`` in the finite Weyl group, ``mu`` and ``beta``
in the lattice and ``c`` rational.  Multiplication follows

    (w1, mu1, b1, c1)(w2, mu2, b2, c2)
        = (w1 w2, w2^-1 mu1 + mu2, w2^-1 b1 + b2, c1 + c2 + (w2^-1 b1, mu2)).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import exact
from .errors import MismatchedType, NotAffine, NotInGroup, UnknownGenerator
from .exact import LinMap
from .geometry import DoubleSpace, TildeRoot, VectorV, space_for
from .rootsys import AffineCartanData, LatticeMode, LatticeVector
from .words import Word

F0 = Fraction(0)


@dataclass(frozen=True)
class FiniteWeylElement:
    """Integer matrix of a finite Weyl group element on simple-root coordinates."""

    matrix: tuple[tuple[int, ...], ...]
    inv: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)

    def __mul__(self, other: "FiniteWeylElement") -> "FiniteWeylElement":
        return FiniteWeylElement(exact.mat_mul(self.matrix, other.matrix), exact.mat_mul(other.inv, self.inv))

    def inverse(self) -> "FiniteWeylElement":
        return FiniteWeylElement(self.inv, self.matrix)

    def apply(self, v: LatticeVector) -> LatticeVector:
        return LatticeVector(exact.mat_vec(self.matrix, v.coords), v.delta)

    def apply_inverse(self, v: LatticeVector) -> LatticeVector:
        return LatticeVector(exact.mat_vec(self.inv, v.coords), v.delta)

    def is_identity(self) -> bool:
        return self.matrix == exact.identity(len(self.matrix))

    def is_minus_one(self) -> bool:
        n = len(self.matrix)
        return self.matrix == tuple(tuple(-x for x in row) for row in exact.identity(n))

    def column(self, j: int) -> LatticeVector:
        return LatticeVector(tuple(row[j] for row in self.matrix))


@dataclass(frozen=True)
class DAWElement:
    w: FiniteWeylElement
    mu: LatticeVector
    beta: LatticeVector
    c: Fraction
    type_id: str
    group: "DoubleAffineWeyl" = field(compare=False, repr=False, hash=False)

    def __mul__(self, other: "DAWElement") -> "DAWElement":
        return self.group.multiply(self, other)

    def inverse(self) -> "DAWElement":
        return self.group.inverse(self)

    def is_identity(self) -> bool:
        return self.w.is_identity() and self.mu.is_zero() and self.beta.is_zero() and self.c == 0

    def is_affine(self) -> bool:
        return self.beta.is_zero() and self.c == 0

    def to_json(self) -> dict:
        return {
            "w": [list(row) for row in self.w.matrix],
            "mu": [exact.fmt_frac(x) for x in self.mu.coords],
            "beta": [exact.fmt_frac(x) for x in self.beta.coords],
            "c": exact.fmt_frac(self.c),
        }

    def describe(self) -> str:
        word = self.group.finite_word(self.w)
        return f"(w={'*'.join(f's{j}' for j in word) or 'id'}, mu=[{self.mu}], beta=[{self.beta}], c={exact.fmt_frac(self.c)})"


@dataclass(frozen=True)
class AffineVector:
    """x = finite + delta * delta + lam0 * Lambda_0 in h* of the affine algebra."""

    finite: LatticeVector
    delta: Fraction = F0
    lam0: Fraction = F0

    def __post_init__(self):
        object.__setattr__(self, "delta", Fraction(self.delta))
        object.__setattr__(self, "lam0", Fraction(self.lam0))

    def __add__(self, other: "AffineVector") -> "AffineVector":
        return AffineVector(self.finite + other.finite, self.delta + other.delta, self.lam0 + other.lam0)

    def __sub__(self, other: "AffineVector") -> "AffineVector":
        return self + other * -1

    def __mul__(self, k) -> "AffineVector":
        return AffineVector(self.finite * k, self.delta * k, self.lam0 * k)


class DoubleAffineWeyl:
    """Normal-form arithmetic, the reflection representation and its inverse."""

    def __init__(self, data: AffineCartanData):
        self.data = data
        self.n = data.n
        self.space: DoubleSpace = space_for(data)

    # -- finite Weyl group ----------------------------------------------------

    @cached_property
    def _simple_finite(self) -> tuple[FiniteWeylElement, ...]:
        out = []
        a = self.data.cartan
        for j in range(1, self.n + 1):
            rows = [[int(r == c) for c in range(self.n)] for r in range(self.n)]
            for k in range(1, self.n + 1):
                rows[j - 1][k - 1] -= a[j][k]
            m = tuple(tuple(r) for r in rows)
            out.append(FiniteWeylElement(m, m))
        return tuple(out)

    def s(self, j: int) -> FiniteWeylElement:
        return self._simple_finite[j - 1]

    @cached_property
    def finite_identity(self) -> FiniteWeylElement:
        m = exact.identity(self.n)
        return FiniteWeylElement(m, m)

    def finite_from_word(self, word: Sequence[int]) -> FiniteWeylElement:
        w = self.finite_identity
        for j in word:
            w = w * self.s(j)
        return w

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.data.finite_roots)

    def _descend(self, matrix) -> list[int] | None:
        """Right-descent reduction of an integer matrix; None if not in the finite Weyl group.

        Returns letters j1, j2, ... with matrix s_j1 s_j2 ... = identity.
        """
        x = [list(r) for r in matrix]
        letters = []
        bound = len(self.data.positive_roots) + 1
        for _ in range(bound):
            desc = None
            for j in range(self.n):
                col = LatticeVector(tuple(row[j] for row in x))
                if col not in self._root_set:
                    return None
                if self.data.height(col) < 0:
                    desc = j + 1
                    break
            if desc is None:
                return letters if tuple(map(tuple, x)) == exact.identity(self.n) else None
            x = [list(r) for r in exact.mat_mul(x, self.s(desc).matrix)]
            letters.append(desc)
        return None

    def finite_word(self, w: FiniteWeylElement) -> tuple[int, ...]:
        """Lexicographically least reduced word of w."""
        letters = self._descend(w.inv)
        if letters is None:
            raise NotInGroup("matrix is not a finite Weyl group element")
        return tuple(letters)

    def finite_from_matrix(self, matrix) -> FiniteWeylElement:
        if any(Fraction(x).denominator != 1 for row in matrix for x in row):
            raise NotInGroup("finite block is not integral")
        m = tuple(tuple(int(x) for x in row) for row in matrix)
        letters = self._descend(m)
        if letters is None:
            raise NotInGroup("finite block is not a Weyl group element")
        return self.finite_from_word(reversed(letters))

    @cached_property
    def longest(self) -> FiniteWeylElement:
        w = self.finite_identity
        while True:
            for j in range(1, self.n + 1):
                if self.data.height(w.column(j - 1)) > 0:
                    w = w * self.s(j)
                    break
            else:
                return w

    @cached_property
    def s_theta(self) -> FiniteWeylElement:
        rows = self.space.reflect(self.space.embed(self.data.theta)).rows()
        return self.finite_from_matrix([row[: self.n] for row in rows[: self.n]])

    @cached_property
    def s_theta_word(self) -> tuple[int, ...]:
        return self.finite_word(self.s_theta)

    # -- normal forms ---------------------------------------------------------

    def element(self, w=None, mu=None, beta=None, c=0) -> DAWElement:
        return DAWElement(
            w or self.finite_identity,
            mu or self.data.zero(),
            beta or self.data.zero(),
            Fraction(c),
            self.data.type_id,
            self,
        )

    @cached_property
    def identity(self) -> DAWElement:
        return self.element()

    def lam(self, mu: LatticeVector) -> DAWElement:
        return self.element(mu=mu)

    def tau_lattice(self, beta: LatticeVector) -> DAWElement:
        return self.element(beta=beta)

    def tau_delta(self, c) -> DAWElement:
        return self.element(c=c)

    def finite(self, w: FiniteWeylElement) -> DAWElement:
        return self.element(w=w)

    def _same(self, *gs: DAWElement) -> None:
        for g in gs:
            if g.type_id != self.data.type_id:
                raise MismatchedType(f"element of {g.type_id} used in {self.data.type_id}")

    def multiply(self, g1: DAWElement, g2: DAWElement) -> DAWElement:
        self._same(g1, g2)
        mu1 = g2.w.apply_inverse(g1.mu)
        b1 = g2.w.apply_inverse(g1.beta)
        return DAWElement(
            g1.w * g2.w,
            mu1 + g2.mu,
            b1 + g2.beta,
            g1.c + g2.c + self.data.bilinear(b1, g2.mu),
            self.data.type_id,
            self,
        )

    def inverse(self, g: DAWElement) -> DAWElement:
        self._same(g)
        return DAWElement(
            g.w.inverse(),
            -g.w.apply(g.mu),
            -g.w.apply(g.beta),
            -g.c + self.data.bilinear(g.beta, g.mu),
            self.data.type_id,
            self,
        )

    @cached_property
    def _generators(self) -> dict[str, DAWElement]:
        th = self.data.theta_over_a0
        s_theta = self.finite(self.s_theta)
        gens = {f"s{j}": self.finite(self.s(j)) for j in range(1, self.n + 1)}
        s01 = self.multiply(s_theta, self.lam(-th))
        tau = self.tau_delta(Fraction(1, self.data.a0))
        # tau_{alpha_0} with alpha_0 = a_0^{-1}(delta - theta)
        tau_alpha0 = self.multiply(self.tau_lattice(-th), tau)
        gens["s01"] = s01
        gens["s02"] = self.multiply(s01, tau_alpha0)
        gens["s03"] = self.multiply(self.tau_lattice(th), s_theta)
        gens["tau"] = tau
        return gens

    @property
    def generator_ids(self) -> tuple[str, ...]:
        return self.space.generator_ids

    def from_generator(self, gen: str) -> DAWElement:
        try:
            return self._generators[gen]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {gen!r} for {self.data.type_id}") from None

    def word_eval(self, word: Word | str) -> DAWElement:
        if isinstance(word, str):
            word = Word.parse(word)
        g = self.identity
        for gen, e in word:
            x = self.from_generator(gen)
            g = self.multiply(g, x if e > 0 else self.inverse(x))
        return g

    # -- representation -------------------------------------------------------

    def finite_matrix(self, w: FiniteWeylElement) -> LinMap:
        rows = [[Fraction(int(i == k)) for k in range(self.space.dim)] for i in range(self.space.dim)]
        for i in range(self.n):
            for k in range(self.n):
                rows[i][k] = Fraction(w.matrix[i][k])
        return LinMap.from_rows(rows)

    def rho(self, g: DAWElement) -> LinMap:
        self._same(g)
        sp = self.space
        return (
            self.finite_matrix(g.w)
            @ sp._translation("lambda", g.mu)
            @ sp._translation("tau", g.beta)
            @ sp.central_matrix(g.c)
        )

    def rho_word(self, word: Word | str) -> LinMap:
        """Product of generator matrices, computed without normal forms."""
        if isinstance(word, str):
            word = Word.parse(word)
        m = LinMap.identity(self.space.dim)
        for gen, e in word:
            x = self.space.generator_matrix(gen)
            m = m @ (x if e > 0 else _inverse_cached(x))
        return m

    def decode(self, m: LinMap) -> DAWElement:
        sp = self.space
        if m.dim != sp.dim:
            raise NotInGroup("matrix has the wrong size")
        n = self.n
        w = self.finite_from_matrix([[m.entry(i, k) for k in range(n)] for i in range(n)])
        col_l1 = m.column(sp.i_l1)
        col_l2 = m.column(sp.i_l2)
        mu = w.apply_inverse(LatticeVector(col_l1[:n]))
        beta = w.apply_inverse(LatticeVector(col_l2[:n]))
        c = -col_l1[sp.i_d2]
        if not (self.data.in_lattice(mu) and self.data.in_lattice(beta)):
            raise NotInGroup("translation parts are not in the lattice")
        if (c * self.data.a0).denominator != 1:
            raise NotInGroup("central part is not a multiple of the central step")
        g = self.element(w, mu, beta, c)
        if self.rho(g) != m:
            raise NotInGroup("matrix does not have the normal-form shape")
        return g

    # -- affine level actions -------------------------------------------------

    def pair_affine(self, x: AffineVector, y: AffineVector) -> Fraction:
        return self.data.bilinear(x.finite, y.finite) + x.delta * y.lam0 + x.lam0 * y.delta

    def level_action(self, g: DAWElement, x: AffineVector) -> AffineVector:
        """Action of w lambda_mu on h* = h*_fin + R delta + R Lambda_0."""
        if not g.is_affine():
            raise NotAffine("element has a nontrivial tau part")
        y = self.lambda_action(g.mu, x)
        return AffineVector(g.w.apply(y.finite), y.delta, y.lam0)

    def lambda_action(self, mu: LatticeVector, x: AffineVector) -> AffineVector:
        delta = AffineVector(self.data.zero(), 1)
        mu_v = AffineVector(mu)
        x_mu = self.pair_affine(x, mu_v)
        x_d = self.pair_affine(x, delta)
        return x - delta * x_mu + (mu_v - delta * (self.data.norm2(mu) / 2)) * x_d

    def s0_action(self, x: AffineVector) -> AffineVector:
        th = self.data.theta
        delta = AffineVector(self.data.zero(), 1)
        a0 = self.data.a0
        alpha0 = AffineVector(-self.data.theta_over_a0, Fraction(1, a0))
        x_th = self.pair_affine(x, AffineVector(th))
        x_d = self.pair_affine(x, delta)
        s_th = AffineVector(self.s_theta.apply(x.finite), x.delta, x.lam0)
        return s_th + delta * (x_th / a0) - alpha0 * x_d

    def s0_level_zero(self, x: AffineVector) -> AffineVector:
        delta = AffineVector(self.data.zero(), 1)
        x_th = self.pair_affine(x, AffineVector(self.data.theta))
        s_th = AffineVector(self.s_theta.apply(x.finite), x.delta, x.lam0)
        return s_th + delta * (x_th / self.data.a0)

    def lambda_level_zero(self, mu: LatticeVector, x: AffineVector) -> AffineVector:
        delta = AffineVector(self.data.zero(), 1)
        return x - delta * self.pair_affine(x, AffineVector(mu))

    def embed_affine(self, x: AffineVector) -> VectorV:
        """delta -> delta_1, Lambda_0 -> Lambda_1."""
        return VectorV(x.finite.coords, x.delta, 0, x.lam0, 0)

    # -- quotient, reflections, words -----------------------------------------

    @property
    def central_step(self) -> Fraction:
        return Fraction(1, self.data.a0)

    def elliptic_project(self, g: DAWElement) -> DAWElement:
        step = self.central_step
        c = g.c - math.floor(g.c / step) * step
        return DAWElement(g.w, g.mu, g.beta, c, g.type_id, self)

    def reflection_element(self, root: TildeRoot | VectorV) -> DAWElement:
        return self.decode(self.space.reflect(root))

    @cached_property
    def _orbit_words(self) -> dict[LatticeVector, tuple[int, ...]]:
        start = self.data.theta_over_a0
        words = {start: ()}
        frontier = [start]
        while frontier:
            nxt = []
            for v in frontier:
                for j in range(1, self.n + 1):
                    u = self.s(j).apply(v)
                    if u not in words:
                        words[u] = (j,) + words[v]
                        nxt.append(u)
            frontier = nxt
        return words

    @cached_property
    def _lattice_echelon(self) -> tuple[tuple, tuple[tuple[Fraction, ...], ...]]:
        """Integer echelon basis of the span of the orbit of a_0^{-1} theta.

        Rows are expressed in the coordinates of a lattice Z-basis; each row
        carries a recipe as integer coefficients on orbit vectors.
        """
        gens = self._lattice_generators()
        to_lattice = exact.inverse(exact.transpose([g.coords for g in gens]))
        rows: dict[int, tuple[list[int], dict]] = {}
        for v in sorted(self._orbit_words, key=lambda v: (len(self._orbit_words[v]), v.coords)):
            x = [int(c) for c in exact.mat_vec(to_lattice, v.coords)]
            rec = {v: 1}
            for c in range(self.n):
                if x[c] == 0:
                    continue
                if c not in rows:
                    rows[c] = (x, rec)
                    break
                y, ry = rows[c]
                g, p, q = _ext_gcd(y[c], x[c])
                a, b = y[c] // g, x[c] // g
                rows[c] = ([p * s + q * t for s, t in zip(y, x)], _combine(ry, p, rec, q))
                x, rec = [a * t - b * s for s, t in zip(y, x)], _combine(rec, a, ry, -b)
        if sorted(rows) != list(range(self.n)) or any(abs(rows[c][0][c]) != 1 for c in rows):
            raise RuntimeError(f"orbit translations do not generate the lattice of {self.data.type_id}")
        return tuple(rows[c] for c in range(self.n)), to_lattice

    def _orbit_coefficients(self, v: LatticeVector) -> dict[LatticeVector, int]:
        rows, to_lattice = self._lattice_echelon
        y = list(exact.mat_vec(to_lattice, v.coords))
        if any(Fraction(t).denominator != 1 for t in y):
            raise NotInGroup(f"{v} is not in the lattice")
        y = [int(t) for t in y]
        out: dict[LatticeVector, int] = {}
        for c, (row, rec) in enumerate(rows):
            k = y[c] * row[c]
            if k:
                y = [s - k * t for s, t in zip(y, row)]
                out = _combine(out, 1, rec, k)
        return out

    def _lattice_generators(self) -> list[LatticeVector]:
        if self.data.lattice_mode is LatticeMode.ROOT:
            return [self.data.simple(j) for j in range(1, self.n + 1)]
        # fundamental weights: (omega_j, alpha_k^vee) = delta_jk
        coroot_rows = [[self.data.d[k] * self.data.gram[k - 1][i] for i in range(self.n)] for k in range(1, self.n + 1)]
        inv = exact.inverse(coroot_rows)
        return [LatticeVector(tuple(inv[i][j] for i in range(self.n))) for j in range(self.n)]

    def _finite_letters(self, js: Sequence[int]) -> Word:
        return Word(tuple((f"s{j}", 1) for j in js))

    def translation_word(self, kind: str, v: LatticeVector) -> Word:
        theta = self._finite_letters(self.s_theta_word)
        # lambda_{a0^-1 theta} = s01 s_theta, tau_{a0^-1 theta} = s03 s_theta
        unit = Word.gen("s01" if kind == "lambda" else "s03") * theta
        out = Word()
        for b, k in sorted(self._orbit_coefficients(v).items(), key=lambda kv: kv[0].coords):
            conj = self._finite_letters(self._orbit_words[b])
            piece = conj * unit * conj.inverse()
            piece = piece if k > 0 else _weyl_inverse(piece)
            out = out * Word(piece.letters * abs(k))
        return out

    def element_to_word(self, g: DAWElement) -> Word:
        self._same(g)
        k = g.c / self.central_step
        if k.denominator != 1:
            raise NotInGroup("central part is not a multiple of the central step")
        word = (
            self._finite_letters(self.finite_word(g.w))
            * self.translation_word("lambda", g.mu)
            * self.translation_word("tau", g.beta)
            * Word.gen("tau", int(k))
        )
        return _cancel_involutions(word)

    def random_word(self, rng: random.Random, max_len: int = 20) -> Word:
        gens = self.generator_ids
        length = rng.randint(0, max_len)
        letters = []
        for _ in range(length):
            g = rng.choice(gens)
            letters.append((g, rng.choice((1, -1)) if g == "tau" else 1))
        return Word(tuple(letters))

    def random_element(self, rng: random.Random, max_len: int = 20) -> DAWElement:
        return self.word_eval(self.random_word(rng, max_len))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """g, p, q with p a + q b = g = gcd(a, b) > 0."""
    if b == 0:
        return (abs(a), 1 if a > 0 else -1, 0)
    g, p, q = _ext_gcd(b, a % b)
    return g, q, p - (a // b) * q


def _combine(r1: dict, k1: int, r2: dict, k2: int) -> dict:
    out = {}
    for key in r1.keys() | r2.keys():
        val = k1 * r1.get(key, 0) + k2 * r2.get(key, 0)
        if val:
            out[key] = val
    return out


def _weyl_inverse(word: Word) -> Word:
    # reflections are involutions; only tau needs inverting
    return Word(tuple((g, -e if g == "tau" else 1) for g, e in reversed(word.letters)))


def _cancel_involutions(word: Word) -> Word:
    out: list = []
    for g, e in word.letters:
        if out and out[-1][0] == g and (g != "tau" or out[-1][1] == -e):
            out.pop()
        else:
            out.append((g, e))
    return Word(tuple(out))


@lru_cache(maxsize=None)
def _inverse_cached(m: LinMap) -> LinMap:
    return m.inverse()


@lru_cache(maxsize=None)
def group_for(data: AffineCartanData) -> DoubleAffineWeyl:
    return DoubleAffineWeyl(data)


def longest_element(data: AffineCartanData) -> tuple[FiniteWeylElement, bool]:
    """The longest element of the finite Weyl group and whether it equals -1."""
    w = group_for(data).longest
    return w, w.is_minus_one()

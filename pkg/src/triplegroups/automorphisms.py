"""The braid group B3 acting on the triple group and its shadow on the Weyl level.

Word-level maps are ``EndoSpec`` substitutions.  On the double affine Weyl
group an automorphism is recorded by its table of generator images; the
SL(2, Z) action is conjugation by a matrix on V.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import UnknownGenerator
from .exact import LinMap
from .presentations import Assignment, Presentation
from .report import Report
from .rootsys import AffineCartanData
from .weyl import DAWElement, DoubleAffineWeyl, group_for
from .words import Word

# -- word-level maps --------------------------------------------------------------


@dataclass(frozen=True)
class EndoSpec:
    """Generator images; with ``anti`` set the map reverses products."""

    images: Mapping[str, Word]
    anti: bool = False
    name: str = ""

    def image(self, gen: str) -> Word:
        try:
            return self.images[gen]
        except KeyError:
            raise UnknownGenerator(f"{self.name or 'map'} has no image for {gen!r}") from None

    def apply(self, w: Word) -> Word:
        letters = reversed(w.letters) if self.anti else w.letters
        out: list = []
        for g, e in letters:
            img = self.image(g)
            out.extend(img.letters if e > 0 else img.inverse().letters)
        return Word(tuple(out)).free_reduce()

    def compose(self, other: "EndoSpec") -> "EndoSpec":
        """self after other."""
        images = {g: self.apply(w) for g, w in other.images.items()}
        return EndoSpec(images, self.anti != other.anti, f"{self.name}.{other.name}")

    @classmethod
    def identity(cls, gens: Iterable[str]) -> "EndoSpec":
        return cls({g: Word.gen(g) for g in gens}, False, "id")

    def to_json(self) -> dict:
        return {"name": self.name, "anti": self.anti, "images": {g: str(w) for g, w in self.images.items()}}


def _alphabet(data: AffineCartanData, prefix: str) -> list[str]:
    return [f"{prefix}{j}" for j in range(1, data.n + 1)] + [f"{prefix}0{i}" for i in (1, 2, 3)]


def b3_action(letter: str, data: AffineCartanData, prefix: str = "T") -> EndoSpec:
    """Images of the affine-node generators under a, b, their inverses, or e.

    Letters: ``a``, ``b``, ``A`` (a^-1), ``B`` (b^-1) and ``e`` (the
    anti-involution exchanging the first and third copies).
    """
    z1, z2, z3 = (Word.gen(f"{prefix}0{i}") for i in (1, 2, 3))
    images = {f"{prefix}{j}": Word.gen(f"{prefix}{j}") for j in range(1, data.n + 1)}
    table = {
        "a": (z2, z2.inverse() * z1 * z2, z3),
        "A": (z1 * z2 * z1.inverse(), z1, z3),
        "b": (z1, z3, z3.inverse() * z2 * z3),
        "B": (z1, z2 * z3 * z2.inverse(), z2),
        "e": (z3, z2, z1),
    }
    if letter not in table:
        raise ValueError(f"unknown B3 letter {letter!r}")
    for i, img in zip((1, 2, 3), table[letter]):
        images[f"{prefix}0{i}"] = img
    return EndoSpec(images, anti=letter == "e", name=letter)


def parse_b3(text: str) -> tuple[str, ...]:
    """``"a b a^-1 B"`` -> ('a', 'b', 'A', 'B')."""
    out = []
    for tok in Word.parse(text):
        g, e = tok
        if g not in ("a", "b", "A", "B"):
            raise ValueError(f"B3 words use a, b and inverses; got {g!r}")
        if g in ("A", "B"):
            g, e = g.lower(), -e
        out.append(g if e > 0 else g.upper())
    return tuple(out)


def b3_inverse(word: Sequence[str]) -> tuple[str, ...]:
    return tuple(l.swapcase() for l in reversed(word))


def upsilon(word: Sequence[str], data: AffineCartanData, prefix: str = "T") -> EndoSpec:
    """Word-level image of a B3 word (composition of substitutions)."""
    spec = EndoSpec.identity(_alphabet(data, prefix))
    for letter in word:
        spec = spec.compose(b3_action(letter, data, prefix))
    return EndoSpec(spec.images, False, " ".join(word) or "id")


# -- SL(2, Z) ---------------------------------------------------------------------

SL2 = tuple[tuple[int, int], tuple[int, int]]
U12: SL2 = ((1, 1), (0, 1))
U21: SL2 = ((1, 0), (-1, 1))
SWAP: SL2 = ((0, 1), (1, 0))
I2: SL2 = ((1, 0), (0, 1))


def mat2_mul(a: SL2, b: SL2) -> SL2:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def mat2_inv(a: SL2) -> SL2:
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if det not in (1, -1):
        raise ValueError("matrix is not invertible over Z")
    return ((a[1][1] * det, -a[0][1] * det), (-a[1][0] * det, a[0][0] * det))


def det2(a: SL2) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def pi(word: Sequence[str]) -> SL2:
    gens = {"a": U12, "b": U21, "A": mat2_inv(U12), "B": mat2_inv(U21)}
    m = I2
    for letter in word:
        m = mat2_mul(m, gens[letter])
    return m


def delta_matrix(u: SL2) -> SL2:
    """Action on (delta_1, delta_2) coordinates.

    u acts on column vectors written in the order (delta_2, delta_1); the
    descent diagram forces this reading.
    """
    return mat2_mul(mat2_mul(SWAP, u), SWAP)


def lift_to_v(G: DoubleAffineWeyl, u: SL2) -> LinMap:
    """Linear map on V: u on the deltas, its inverse transpose on the Lambdas."""
    sp = G.space
    m = delta_matrix(u)
    mi = mat2_inv(m)
    rows = [[Fraction(int(i == k)) for k in range(sp.dim)] for i in range(sp.dim)]
    d, l = (sp.i_d1, sp.i_d2), (sp.i_l1, sp.i_l2)
    for a in range(2):
        for b in range(2):
            rows[d[a]][d[b]] = Fraction(m[a][b])
            rows[l[a]][l[b]] = Fraction(mi[b][a])
    return LinMap.from_rows(rows)


# -- Weyl-level automorphisms ----------------------------------------------------


@dataclass
class WeylAuto:
    """An automorphism of the double affine Weyl group given on generators."""

    group: DoubleAffineWeyl
    table: dict[str, DAWElement]
    name: str = ""
    _assign: Assignment | None = field(default=None, init=False, repr=False)

    def apply(self, g: DAWElement) -> DAWElement:
        if self._assign is None:
            self._assign = Assignment(self.group, self.table)
        return self._assign.evaluate(self.group.element_to_word(g))

    def apply_word(self, w: Word) -> DAWElement:
        if self._assign is None:
            self._assign = Assignment(self.group, self.table)
        return self._assign.evaluate(w)

    def compose(self, other: "WeylAuto") -> "WeylAuto":
        """self after other."""
        return WeylAuto(self.group, {g: self.apply(x) for g, x in other.table.items()}, f"{self.name}.{other.name}")

    def differences(self, other: "WeylAuto") -> list[str]:
        return [g for g in self.table if self.table[g] != other.table[g]]

    def is_identity(self) -> bool:
        return all(x == self.group.from_generator(g) for g, x in self.table.items())

    def to_spec(self) -> EndoSpec:
        return EndoSpec({g: self.group.element_to_word(x) for g, x in self.table.items()}, False, self.name)


def weyl_generators(G: DoubleAffineWeyl) -> tuple[str, ...]:
    return G.generator_ids


def identity_auto(G: DoubleAffineWeyl) -> WeylAuto:
    return WeylAuto(G, {g: G.from_generator(g) for g in weyl_generators(G)}, "id")


def letter_auto(G: DoubleAffineWeyl, letter: str) -> WeylAuto:
    """Weyl image of a, b, A or B (homomorphisms only)."""
    spec = b3_action(letter, G.data, prefix="s")
    table = {g: G.word_eval(spec.image(g)) for g in spec.images}
    table["tau"] = G.from_generator("tau")
    return WeylAuto(G, table, letter)


def upsilon_weyl(G: DoubleAffineWeyl, word: Sequence[str]) -> WeylAuto:
    """Weyl-level Upsilon(word), built letter by letter through image tables."""
    auto = identity_auto(G)
    letters = {l: b3_action(l, G.data, prefix="s") for l in set(word)}
    for letter in word:
        spec = letters[letter]
        assign = Assignment(G, auto.table)
        table = {g: assign.evaluate(spec.image(g)) if g in spec.images else auto.table[g] for g in auto.table}
        auto = WeylAuto(G, table, f"{auto.name} {letter}".strip())
    return auto


def conjugation_auto(G: DoubleAffineWeyl, m: LinMap, name: str) -> WeylAuto:
    mi = m.inverse()
    return WeylAuto(G, {g: G.decode(m @ G.rho(G.from_generator(g)) @ mi) for g in weyl_generators(G)}, name)


def sl2z_auto(G: DoubleAffineWeyl, u: SL2) -> WeylAuto:
    if det2(u) not in (1, -1):
        raise ValueError("matrix must have determinant +-1")
    return conjugation_auto(G, lift_to_v(G, u), f"u{u}")


def sl2z_weyl_auto(data: AffineCartanData, u: SL2) -> EndoSpec:
    """The automorphism of u as word images (s_i and tau fixed)."""
    return sl2z_auto(group_for(data), u).to_spec()


def inner_auto(G: DoubleAffineWeyl, x: DAWElement, name: str = "inner") -> WeylAuto:
    xi = G.inverse(x)
    return WeylAuto(G, {g: G.multiply(G.multiply(x, G.from_generator(g)), xi) for g in weyl_generators(G)}, name)


# -- checks -------------------------------------------------------------------------


def _auto_witness(a: WeylAuto, b: WeylAuto) -> dict | None:
    diff = a.differences(b)
    if not diff:
        return None
    g = diff[0]
    return {"generator": g, "lhs": a.table[g].to_json(), "rhs": b.table[g].to_json(), "differing": diff}


def check_descent_diagram(data: AffineCartanData, word: Sequence[str], report: Report | None = None) -> Report:
    G = group_for(data)
    report = report or Report(f"descent:{data.type_id}")
    top = upsilon_weyl(G, word)
    bottom = sl2z_auto(G, pi(word))
    w = _auto_witness(top, bottom)
    report.add(f"descent:{' '.join(word) or 'id'}", "B3 action descends to the SL(2,Z) action", w is None, w)
    return report


def center_action_check(data: AffineCartanData) -> Report:
    """c = (aba)^2 against conjugation by w0; c^2 against the identity."""
    G = group_for(data)
    report = Report(f"center:{data.type_id}")
    c = ("a", "b", "a") * 2
    up_c = upsilon_weyl(G, c)
    w0 = G.finite(G.longest)
    conj = inner_auto(G, w0, "w0")
    affine = [g for g in weyl_generators(G) if g.startswith("s0")]
    finite = [g for g in weyl_generators(G) if not g.startswith("s0") and g != "tau"]
    for group_name, gens in (("affine", affine), ("finite", finite), ("tau", ["tau"])):
        bad = [g for g in gens if up_c.table[g] != conj.table[g]]
        wit = None
        if bad:
            g = bad[0]
            wit = {"generator": g, "upsilon": up_c.table[g].to_json(), "conjugate": conj.table[g].to_json(),
                   "differing": bad}
        report.add(f"center-is-w0-conjugation:{group_name}", "center acts as conjugation by the longest element",
                   not bad, wit)
    s_theta = inner_auto(G, G.finite(G.s_theta), "s_theta")
    bad = [g for g in affine if up_c.table[g] != s_theta.table[g]]
    report.add("center-is-s_theta-conjugation:affine", "center conjugates affine copies by s_theta", not bad,
               {"differing": bad} if bad else None)
    up_c2 = upsilon_weyl(G, c * 2)
    w = _auto_witness(up_c2, identity_auto(G))
    report.add("center-squared-trivial", "square of the center acts trivially on the Weyl group", w is None, w)
    return report


def duality_matrix(G: DoubleAffineWeyl) -> LinMap:
    return lift_to_v(G, SWAP)


def duality_involution_check(data: AffineCartanData) -> Report:
    G = group_for(data)
    sp = G.space
    report = Report(f"duality:{data.type_id}")
    E = duality_matrix(G)
    report.add("E-squared", "swap squared is the identity", (E @ E).is_identity())
    Ei = E.inverse()

    def conj(m: LinMap) -> LinMap:
        return E @ m @ Ei

    expected = {f"s{j}": f"s{j}" for j in range(1, data.n + 1)}
    expected.update({"s01": "s03", "s03": "s01", "s02": "s02"})
    for g, h in expected.items():
        lhs, rhs = conj(sp.generator_matrix(g)), sp.generator_matrix(h)
        report.add(f"E-conjugates:{g}->{h}", "duality swap on generators", lhs == rhs, lhs.first_difference(rhs))
    tau = sp.generator_matrix("tau")
    lhs, rhs = conj(tau), tau.inverse()
    report.add("E-conjugates:tau->tau^-1", "duality swap inverts the central element", lhs == rhs,
               lhs.first_difference(rhs))
    # the anti-involution e on words exchanges lambda_mu and tau_{-mu}
    e_spec = b3_action("e", data, prefix="s")
    e_spec = EndoSpec({**e_spec.images, "tau": Word.gen("tau", -1)}, True, "e")
    basis = [data.simple(j) for j in range(1, data.n + 1)] + [data.theta_over_a0]
    for k, mu in enumerate(basis):
        if not data.in_lattice(mu):
            continue
        for kind, other in (("lambda", "tau"), ("tau", "lambda")):
            word = G.translation_word(kind, mu)
            got = G.word_eval(e_spec.apply(word))
            want = G.tau_lattice(-mu) if other == "tau" else G.lam(-mu)
            report.add(f"e-exchanges:{kind}[{k}]", "anti-involution exchanges the two lattices", got == want,
                       None if got == want else {"got": got.to_json(), "want": want.to_json()})
    # the involution (inversion after e) is conjugation by E
    e_under = conjugation_auto(G, E, "e_under")
    for g in weyl_generators(G):
        if g == "tau":
            continue
        img = e_spec.apply(Word.gen(g)).inverse()
        got = G.word_eval(img)
        report.add(f"e-underline:{g}", "duality involution descends to the swap", got == e_under.table[g],
                   None if got == e_under.table[g] else {"got": got.to_json(), "want": e_under.table[g].to_json()})
    # e u12 e = u21^-1 as automorphisms
    lhs = e_under.compose(sl2z_auto(G, U12)).compose(e_under)
    rhs = sl2z_auto(G, mat2_inv(U21))
    w = _auto_witness(lhs, rhs)
    report.add("e-u12-e", "swap conjugates u12 to the inverse of u21", w is None, w)
    return report


def braid_relation_check(data: AffineCartanData) -> Report:
    G = group_for(data)
    report = Report(f"b3-braid:{data.type_id}")
    lhs, rhs = upsilon_weyl(G, "aba"), upsilon_weyl(G, "bab")
    w = _auto_witness(lhs, rhs)
    report.add("upsilon-braid", "a b a = b a b transported to the Weyl group", w is None, w)
    return report


def random_b3_word(rng: random.Random, max_len: int = 10) -> tuple[str, ...]:
    return tuple(rng.choice("abAB") for _ in range(rng.randint(0, max_len)))


def sl2z_suite(data: AffineCartanData, seed: int = 0xDA57, samples: int = 50, max_len: int = 10) -> Report:
    """Everything the modular-group story predicts at the Weyl level."""
    report = Report(f"b3-sl2z:{data.type_id}", seed=seed)
    report.add("pi(a)=u12", "pi(a) = u12", pi("a") == U12, {"got": pi("a")})
    six = I2
    for _ in range(6):
        six = mat2_mul(six, mat2_mul(U12, U21))
    report.add("(u12 u21)^6=I", "(u12 u21)^6 = I", six == I2, {"got": six})
    report.add("pi-braid", "u12, u21 satisfy the braid relation", pi("aba") == pi("bab"))
    report.add("pi(c)=-I", "c maps to -I", pi("abaaba") == ((-1, 0), (0, -1)))
    report.add("pi(c^2)=I", "c^2 lies in the kernel", pi("aba" * 4) == I2)
    report.extend(braid_relation_check(data))
    rng = random.Random(seed)
    for k in range(samples):
        check_descent_diagram(data, random_b3_word(rng, max_len), report)
        report.checks[-1].id = f"descent[{k}]:" + report.checks[-1].id.split(":", 1)[1]
    report.extend(center_action_check(data))
    report.extend(duality_involution_check(data))
    return report


def is_automorphism(
    spec: EndoSpec,
    P: Presentation,
    A: Assignment,
    inverses: Iterable[EndoSpec] = (),
) -> Report:
    """Relations map to identities under A; some candidate inverts spec on generators."""
    report = Report(f"automorphism:{spec.name}:{P.kind}")
    for rel in P.relations:
        lhs, rhs = spec.apply(rel.lhs), spec.apply(rel.rhs)
        g1, g2 = A.evaluate(lhs), A.evaluate(rhs)
        if P.elliptic:
            g1, g2 = A.group.elliptic_project(g1), A.group.elliptic_project(g2)
        report.add(f"relation:{rel.tag}", "image of a relation holds", g1 == g2,
                   None if g1 == g2 else {"lhs": g1.to_json(), "rhs": g2.to_json()})
    found = False
    for cand in inverses:
        both = all(
            A.evaluate(cand.apply(spec.image(g))) == A.images[g] and A.evaluate(spec.apply(cand.image(g))) == A.images[g]
            for g in P.generators
        )
        if both:
            found = True
            break
    report.add("inverse", "a supplied candidate inverts the map on generators", found if list(inverses) or found else None)
    return report


def injectivity_evidence(data: AffineCartanData, seed: int = 0xDA57, samples: int = 30) -> Report:
    """Sample-scale evidence that Upsilon and the SL(2,Z) action are injective."""
    G = group_for(data)
    report = Report(f"injectivity:{data.type_id}", seed=seed)
    rng = random.Random(seed)
    ident = identity_auto(G)
    seen: dict[SL2, WeylAuto] = {}
    for k in range(samples):
        w = random_b3_word(rng)
        u = pi(w)
        auto = upsilon_weyl(G, w)
        if u != I2:
            report.add(f"nontrivial[{k}]", "Upsilon(w) is not the identity when pi(w) is not", not auto.is_identity(),
                       {"word": " ".join(w)})
        seen.setdefault(u, auto)
    mats = list(seen)
    for i in range(len(mats)):
        for j in range(i + 1, min(len(mats), i + 4)):
            a, b = seen[mats[i]], seen[mats[j]]
            report.add(f"distinct:{mats[i]}:{mats[j]}", "different matrices give different automorphisms",
                       bool(a.differences(b)))
    # kernel of pi: c^2 is invisible at the Weyl level by construction
    report.add("kernel:c^2", "c^2 acts trivially on the Weyl group", _auto_witness(upsilon_weyl(G, "aba" * 4), ident) is None)
    return report


def psl_sl_data(data: AffineCartanData) -> dict:
    """Whether the image of c is the inner automorphism by w0 (PSL) or not."""
    G = group_for(data)
    minus_one = G.longest.is_minus_one()
    c_auto = sl2z_auto(G, ((-1, 0), (0, -1)))
    inner = inner_auto(G, G.finite(G.longest))
    return {
        "type": data.type_id,
        "w0_is_minus_one": minus_one,
        "c_is_conjugation_by_w0": not c_auto.differences(inner),
        "modular_group": "PSL(2,Z)" if minus_one else "SL(2,Z)",
    }

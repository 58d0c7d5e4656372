"""Presentations by generators and relations, and conformance checking.

A presentation lists relations ``lhs = rhs`` between words.  Conformance is
checked under an assignment of generators to double affine Weyl group
elements, either in normal-form arithmetic or through the reflection
representation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .errors import UnknownGenerator, UnsupportedKind
from .exact import LinMap
from .report import Report
from .rootsys import AffineCartanData, load_catalog
from .weyl import DAWElement, DoubleAffineWeyl, group_for
from .words import Word

KINDS = (
    "coxeter_finite",
    "artin_finite",
    "coxeter_affine",
    "artin_affine",
    "triple",
    "atilde",
    "daa",
    "daw",
    "elliptic_artin",
    "elliptic_weyl",
    "cherednik",
)
WEYL_KINDS = {"coxeter_finite", "coxeter_affine", "daw", "elliptic_weyl"}
ELLIPTIC_KINDS = {"elliptic_artin", "elliptic_weyl"}
DEFAULT_KBOUND = 3

# lace count -> braid order; 4 or more laces give no relation
BRAID_ORDER = {0: 2, 1: 3, 2: 4, 3: 6}


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word
    tag: str

    def relator(self) -> Word:
        return (self.lhs * self.rhs.inverse()).free_reduce()

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"


@dataclass(frozen=True)
class Presentation:
    kind: str
    type_id: str
    generators: tuple[str, ...]
    relations: tuple[Relation, ...]
    params: Mapping = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        known = set(self.generators)
        for rel in self.relations:
            bad = (rel.lhs.generators() | rel.rhs.generators()) - known
            if bad:
                raise UnknownGenerator(f"relation {rel.tag} uses undeclared {sorted(bad)}")

    @property
    def elliptic(self) -> bool:
        return self.kind in ELLIPTIC_KINDS

    def relation(self, tag: str) -> Relation:
        for rel in self.relations:
            if rel.tag == tag:
                return rel
        raise KeyError(tag)

    def tags(self) -> list[str]:
        return [rel.tag for rel in self.relations]

    def replace(self, relations: Iterable[Relation], kind: str | None = None) -> "Presentation":
        return Presentation(kind or self.kind, self.type_id, self.generators, tuple(relations), dict(self.params))

    # -- serialization ---------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"presentation {self.kind} {self.type_id}", "generators " + " ".join(self.generators)]
        for key, val in self.params.items():
            lines.append(f"param {key} {val if isinstance(val, (int, str)) else json.dumps(val)}")
        lines += [f"{rel}  # {rel.tag}" for rel in self.relations]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Presentation":
        kind = type_id = ""
        gens: tuple[str, ...] = ()
        params: dict = {}
        rels = []
        for n, raw in enumerate(text.splitlines(), 1):
            line, _, tag = raw.partition("#")
            line = line.strip()
            if not line:
                continue
            head, _, rest = line.partition(" ")
            if head == "presentation":
                kind, type_id = rest.split()
            elif head == "generators":
                gens = tuple(rest.split())
            elif head == "param":
                key, _, val = rest.partition(" ")
                try:
                    params[key] = json.loads(val)
                except json.JSONDecodeError:
                    params[key] = val
            elif "=" in line:
                lhs, rhs = line.split("=")
                rels.append(Relation(Word.parse(lhs), Word.parse(rhs), tag.strip() or f"r{n}"))
            else:
                raise ValueError(f"line {n}: cannot parse {raw!r}")
        if not gens:
            raise ValueError("presentation text has no generators line")
        return cls(kind or "custom", type_id, gens, tuple(rels), params)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "type": self.type_id,
            "generators": list(self.generators),
            "params": dict(self.params),
            "relations": [{"lhs": str(r.lhs), "rhs": str(r.rhs), "tag": r.tag} for r in self.relations],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Presentation":
        rels = tuple(Relation(Word.parse(r["lhs"]), Word.parse(r["rhs"]), r["tag"]) for r in data["relations"])
        return cls(data.get("kind", "custom"), data.get("type", ""), tuple(data["generators"]), rels, data.get("params", {}))


# -- building presentations ------------------------------------------------------


def braid_relation(x: str, y: str, m: int, tag: str) -> Relation:
    xs = [x, y] * m
    ys = [y, x] * m
    return Relation(Word.of(*xs[:m]), Word.of(*ys[:m]), tag)


def braid_word_relation(x: Word, y: Word, m: int, tag: str) -> Relation:
    """Braid relation of order m between two words."""
    lhs, rhs = Word(), Word()
    for k in range(m):
        lhs = lhs * (x if k % 2 == 0 else y)
        rhs = rhs * (y if k % 2 == 0 else x)
    return Relation(lhs, rhs, tag)


def commute(x: Word, y: Word, tag: str) -> Relation:
    return Relation(x * y, y * x, tag)


class _Builder:
    def __init__(self, data: AffineCartanData, k_bound: int):
        self.data = data
        self.n = data.n
        self.k_bound = k_bound
        self.group: DoubleAffineWeyl = group_for(data)
        self.alpha = data.alpha_index
        self.theta_word = self.group.s_theta_word

    def finite_gens(self, p: str) -> list[str]:
        return [f"{p}{j}" for j in range(1, self.n + 1)]

    def finite_braids(self, p: str) -> list[Relation]:
        out = []
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                m = BRAID_ORDER.get(self.data.laces(i, j))
                if m is not None:
                    out.append(braid_relation(f"{p}{i}", f"{p}{j}", m, f"braid:{p}{i},{p}{j}"))
        return out

    def node0_braids(self, gen: str, p: str) -> list[Relation]:
        out = []
        for j in range(1, self.n + 1):
            m = BRAID_ORDER.get(self.data.laces(0, j))
            if m is not None:
                out.append(braid_relation(gen, f"{p}{j}", m, f"braid:{gen},{p}{j}"))
        return out

    def order_two(self, gens: Iterable[str]) -> list[Relation]:
        return [Relation(Word.of(g, g), Word(), f"order:{g}") for g in gens]

    def theta(self, p: str) -> Word:
        return Word(tuple((f"{p}{j}", 1) for j in self.theta_word))

    def central(self, c: Word, gens: Iterable[str], name: str) -> list[Relation]:
        return [commute(c, Word.gen(g), f"central:{name},{g}") for g in gens]

    def params(self, **extra) -> dict:
        out = {
            "sTheta": " ".join(str(j) for j in self.theta_word),
            "alpha": self.alpha,
            "l0": self.data.l0,
        }
        out.update(extra)
        return out

    # -- kinds -----------------------------------------------------------------

    def coxeter_finite(self):
        gens = self.finite_gens("s")
        return gens, self.order_two(gens) + self.finite_braids("s"), self.params()

    def artin_finite(self):
        return self.finite_gens("T"), self.finite_braids("T"), self.params()

    def coxeter_affine(self):
        gens = ["s0"] + self.finite_gens("s")
        return gens, self.order_two(gens) + self.node0_braids("s0", "s") + self.finite_braids("s"), self.params()

    def artin_affine(self):
        gens = ["T0"] + self.finite_gens("T")
        return gens, self.node0_braids("T0", "T") + self.finite_braids("T"), self.params()

    def _triple_braids(self, p: str, z: str) -> list[Relation]:
        rels = []
        for i in (1, 2, 3):
            rels += self.node0_braids(f"{z}0{i}", p)
        return rels + self.finite_braids(p)

    def triple(self):
        gens = self.finite_gens("T") + ["T01", "T02", "T03"]
        rels = self._triple_braids("T", "T")
        ta = Word.gen(f"T{self.alpha}")
        t01, t02, t03 = Word.gen("T01"), Word.gen("T02"), Word.gen("T03")
        if self.data.l0 == 1:
            d = t01 * t02 * t03
            elems = {
                "T01": t01,
                "T02": t02,
                "T03": t03,
                "T01T02T01^-1": t01 * t02 * t01.inverse(),
                "T03^-1T02T03": t03.inverse() * t02 * t03,
            }
            for name, e in elems.items():
                for k in range(-self.k_bound, self.k_bound + 1):
                    x = d**k * ta * d**-k
                    rels.append(braid_word_relation(e, x, 3, f"family:{name},k={k}"))
        else:
            for i, j in ((1, 2), (1, 3), (2, 3)):
                ti, tj = Word.gen(f"T0{i}"), Word.gen(f"T0{j}")
                rels.append(Relation(ti * ta.inverse() * tj * ta, ta.inverse() * tj * ta * ti, f"ellbraid:{i}{j}"))
        return gens, rels, self.params(kBound=self.k_bound)

    def c_word(self) -> Word:
        return Word.of("T01", "T02", "T03") * self.theta("T")

    def atilde(self):
        gens, rels, params = self.triple()
        return gens, rels + self.central(self.c_word(), gens, "C"), params

    def _daa_core(self):
        gens = self.finite_gens("T") + ["T01", "T02", "T03"]
        rels = self._triple_braids("T", "T")
        if self.data.l0 == 2:
            ta = Word.gen(f"T{self.alpha}")
            t01, t03 = Word.gen("T01"), Word.gen("T03")
            rels.append(Relation(t01 * ta.inverse() * t03 * ta, ta.inverse() * t03 * ta * t01, "ellbraid:13"))
        return gens, rels

    def daa(self):
        gens, rels = self._daa_core()
        return gens, rels + self.central(self.c_word(), gens, "C"), self.params()

    def elliptic_artin(self):
        gens, rels = self._daa_core()
        return gens, rels + [Relation(self.c_word(), Word(), "trivial:C")], self.params()

    def _daw_core(self):
        gens = self.finite_gens("s") + ["s01", "s02", "s03"]
        rels = self._triple_braids("s", "s")
        if self.data.l0 == 2:
            sa = Word.gen(f"s{self.alpha}")
            s01, s03 = Word.gen("s01"), Word.gen("s03")
            rels.append(Relation(s01 * sa * s03 * sa, sa * s03 * sa * s01, "wellbraid"))
        return gens, rels + self.order_two(gens)

    def tau_word(self) -> Word:
        return Word.of("s01", "s02", "s03") * self.theta("s")

    def daw(self):
        gens, rels = self._daw_core()
        return gens, rels + self.central(self.tau_word(), gens, "tau"), self.params()

    def elliptic_weyl(self):
        gens, rels = self._daw_core()
        return gens, rels + [Relation(self.tau_word(), Word(), "trivial:tau")], self.params()

    def cherednik(self):
        gens = ["T0"] + self.finite_gens("T") + ["X", "Xd"]
        rels = self.node0_braids("T0", "T") + self.finite_braids("T")
        y = Word.gen("X") * self.theta("T").inverse()
        for j in range(1, self.n + 1):
            m = BRAID_ORDER.get(self.data.laces(0, j))
            if m is not None:
                rels.append(braid_word_relation(y, Word.gen(f"T{j}"), m, f"braid:XTtheta^-1,T{j}"))
        rels += self.central(Word.gen("Xd"), [g for g in gens if g != "Xd"], "Xd")
        t0, ta, x = Word.gen("T0"), Word.gen(f"T{self.alpha}"), Word.gen("X")
        if self.data.l0 == 1:
            x_alpha = self.lattice_word("alpha")
            x_shift = x_alpha * Word.gen("Xd") * x.inverse()
            rels.append(Relation(t0 * x_alpha * t0, x_shift, "shift:alpha"))
        else:
            x_w = ta * x.inverse() * ta
            rels.append(commute(t0, x_w, "commute:T0,X_{alpha-theta/a0}"))
        return gens, rels, self.params(latticeWords={k: str(self.lattice_word(k)) for k in ("alpha", "alpha0")})

    def lattice_word(self, which: str) -> Word:
        """Words for the lattice elements used by the Cherednik form."""
        ta, x = Word.gen(f"T{self.alpha}"), Word.gen("X")
        if which == "alpha0":
            return Word.gen("Xd") * x.inverse()
        if which == "alpha":
            if self.data.l0 == 1:
                return ta * x.inverse() * ta * x
            return ta * x.inverse() * ta * x
        raise KeyError(which)


def presentation_of(kind: str, data: AffineCartanData | str, k_bound: int = DEFAULT_KBOUND) -> Presentation:
    if isinstance(data, str):
        data = load_catalog(data)
    if kind not in KINDS:
        raise UnsupportedKind(f"unknown presentation kind {kind!r}; choose from {', '.join(KINDS)}")
    if k_bound < 0:
        raise UnsupportedKind("kBound must be nonnegative")
    builder = _Builder(data, k_bound)
    gens, rels, params = getattr(builder, kind)()
    return Presentation(kind, data.type_id, tuple(gens), tuple(rels), params)


def tau_word(data: AffineCartanData) -> Word:
    return _Builder(data, 0).tau_word()


def c_word(data: AffineCartanData) -> Word:
    return _Builder(data, 0).c_word()


def theta_word(data: AffineCartanData, prefix: str) -> Word:
    return _Builder(data, 0).theta(prefix)


# -- assignments and verification -------------------------------------------------


@dataclass
class Assignment:
    """Images of generators in the double affine Weyl group."""

    group: DoubleAffineWeyl
    images: dict[str, DAWElement]

    def __post_init__(self):
        self._inv = {g: self.group.inverse(x) for g, x in self.images.items()}

    def evaluate(self, word: Word) -> DAWElement:
        g = self.group.identity
        for gen, e in word:
            if gen not in self.images:
                raise UnknownGenerator(f"assignment has no image for {gen!r}")
            g = self.group.multiply(g, self.images[gen] if e > 0 else self._inv[gen])
        return g

    @cached_property
    def _matrices(self) -> dict[str, tuple[LinMap, LinMap]]:
        return {g: (self.group.rho(x), self.group.rho(self._inv[g])) for g, x in self.images.items()}

    def matrix(self, word: Word) -> LinMap:
        m = LinMap.identity(self.group.space.dim)
        for gen, e in word:
            if gen not in self.images:
                raise UnknownGenerator(f"assignment has no image for {gen!r}")
            m = m @ self._matrices[gen][0 if e > 0 else 1]
        return m

    def covers(self, gens: Iterable[str]) -> bool:
        return all(g in self.images for g in gens)


def canonical_assignment(data: AffineCartanData | str) -> Assignment:
    """Every generator name used by the presentations, sent to its Weyl image."""
    if isinstance(data, str):
        data = load_catalog(data)
    G = group_for(data)
    images: dict[str, DAWElement] = {}
    for j in range(1, data.n + 1):
        images[f"s{j}"] = images[f"T{j}"] = G.from_generator(f"s{j}")
    for z in ("s", "T"):
        images[f"{z}0"] = images[f"{z}01"] = G.from_generator("s01")
        images[f"{z}02"] = G.from_generator("s02")
        images[f"{z}03"] = G.from_generator("s03")
    images["tau"] = images["Xd"] = G.from_generator("tau")
    images["X"] = G.tau_lattice(data.theta_over_a0)
    return Assignment(G, images)


def _holds_normal(A: Assignment, rel: Relation, elliptic: bool):
    g1, g2 = A.evaluate(rel.lhs), A.evaluate(rel.rhs)
    if elliptic:
        g1, g2 = A.group.elliptic_project(g1), A.group.elliptic_project(g2)
    if g1 == g2:
        return True, None
    return False, {"lhs": g1.to_json(), "rhs": g2.to_json()}


def _holds_matrix(A: Assignment, rel: Relation, elliptic: bool):
    m1, m2 = A.matrix(rel.lhs), A.matrix(rel.rhs)
    if elliptic:
        sp = A.group.space
        m1, m2 = sp.restrict_v00(m1), sp.restrict_v00(m2)
    diff = m1.first_difference(m2)
    return diff is None, diff


def verify(P: Presentation, A: Assignment | None = None, mode: str = "both") -> Report:
    """Evaluate every relation of P under A.

    ``mode`` is ``normal`` (normal-form arithmetic), ``matrix`` (reflection
    representation) or ``both``.  For elliptic kinds equality is tested in
    the quotient by the central translation.
    """
    A = A or canonical_assignment(P.type_id)
    missing = [g for g in P.generators if g not in A.images]
    if missing:
        raise UnknownGenerator(f"assignment is not total: missing {missing}")
    modes = {"normal": ("normal",), "matrix": ("matrix",), "both": ("normal", "matrix")}[mode]
    report = Report(f"verify:{P.kind}:{P.type_id}")
    for rel in P.relations:
        for m in modes:
            check = _holds_normal if m == "normal" else _holds_matrix
            ok, witness = check(A, rel, P.elliptic)
            if witness is not None:
                witness = {"relation": str(rel), **witness}
            report.add(f"{rel.tag}[{m}]", _anchor(rel.tag), ok, witness)
    return report


def _anchor(tag: str) -> str:
    head = tag.split(":")[0]
    return {
        "braid": "braid relation from lace count",
        "order": "generators are involutions",
        "central": "central element commutes with generators",
        "wellbraid": "double-lace relation between s01 and s03",
        "ellbraid": "double-lace relation between affine copies",
        "family": "single-lace family with conjugates of T_alpha",
        "trivial": "central element is trivial in the elliptic quotient",
        "shift": "T0 X_alpha T0 = X_{alpha+alpha0}",
        "commute": "T0 commutes with X_{alpha - theta/a0}",
    }.get(head, head)


def corrupt(P: Presentation, how: str = "auto") -> tuple[Presentation, str]:
    """A copy of P with one relation deliberately falsified.

    ``drop_factor`` deletes the last letter of the right-hand side of the
    double-lace relation; ``wrong_order`` shortens a braid of order 3 or more
    to a commutation.  Returns the presentation and the tag changed.
    """
    rels = list(P.relations)
    if how == "auto":
        how = "drop_factor" if any(r.tag in ("wellbraid",) or r.tag.startswith("ellbraid") for r in rels) else "wrong_order"
    for i, rel in enumerate(rels):
        if how == "drop_factor" and (rel.tag == "wellbraid" or rel.tag.startswith("ellbraid")):
            rels[i] = Relation(rel.lhs, Word(rel.rhs.letters[:-1]), rel.tag + "(corrupted)")
            return P.replace(rels), rels[i].tag
        if how == "wrong_order" and rel.tag.startswith("braid:") and len(rel.lhs) >= 3:
            x, y = rel.lhs.letters[0][0], rel.lhs.letters[1][0]
            rels[i] = braid_relation(x, y, 2, rel.tag + "(corrupted)")
            return P.replace(rels), rels[i].tag
    raise UnsupportedKind(f"no relation to corrupt with {how!r}")


# -- homomorphisms between presentations -----------------------------------------


def check_iso_on_generators(
    phi: Mapping[str, Word],
    psi: Mapping[str, Word],
    P1: Presentation,
    P2: Presentation,
    A1: Assignment | None = None,
    A2: Assignment | None = None,
    free_checks: bool = True,
) -> Report:
    """phi: P1 -> P2 and psi: P2 -> P1 on generators.

    Checks that both maps send relations to identities at the Weyl level,
    that both composites fix every generator at the Weyl level, and that the
    composites are already the identity after free reduction where that is
    the case (recorded as unknown otherwise).
    """
    A1 = A1 or canonical_assignment(P1.type_id)
    A2 = A2 or canonical_assignment(P2.type_id)
    report = Report(f"iso:{P1.kind}<->{P2.kind}:{P1.type_id}")
    for f, src, dst, A in ((phi, P1, P2, A2), (psi, P2, P1, A1)):
        name = "phi" if f is phi else "psi"
        for rel in src.relations:
            lhs, rhs = rel.lhs.substitute(dict(f)), rel.rhs.substitute(dict(f))
            g1, g2 = A.evaluate(lhs), A.evaluate(rhs)
            if dst.elliptic:
                g1, g2 = A.group.elliptic_project(g1), A.group.elliptic_project(g2)
            report.add(f"{name}:relation:{rel.tag}", "image of a relation holds", g1 == g2,
                       None if g1 == g2 else {"lhs": g1.to_json(), "rhs": g2.to_json()})
    for f, g, P, A, name in ((phi, psi, P1, A1, "psi.phi"), (psi, phi, P2, A2, "phi.psi")):
        for gen in P.generators:
            img = f[gen].substitute(dict(g))
            x, y = A.evaluate(img), A.evaluate(Word.gen(gen))
            report.add(f"{name}:{gen}:weyl", "composite fixes generator", x == y,
                       None if x == y else {"image": str(img), "lhs": x.to_json(), "rhs": y.to_json()})
            if not free_checks:
                continue
            free = img.free_reduce() == Word.gen(gen)
            report.add(f"{name}:{gen}:free", "composite fixes generator after free reduction", True if free else None,
                       None if free else {"image": str(img.free_reduce())})
    return report


def phi_map(data: AffineCartanData) -> dict[str, Word]:
    """Ã (triple-group generators) -> Cherednik generators."""
    b = _Builder(data, 0)
    out = {f"T{j}": Word.gen(f"T{j}") for j in range(1, data.n + 1)}
    out["T01"] = Word.gen("T0")
    out["T03"] = Word.gen("X") * b.theta("T").inverse()
    out["T02"] = Word.gen("T0").inverse() * Word.gen("Xd") * Word.gen("X").inverse()
    return out


def psi_map(data: AffineCartanData) -> dict[str, Word]:
    """Cherednik generators -> Ã."""
    b = _Builder(data, 0)
    out = {f"T{j}": Word.gen(f"T{j}") for j in range(1, data.n + 1)}
    out["T0"] = Word.gen("T01")
    out["X"] = Word.gen("T03") * b.theta("T")
    out["Xd"] = b.c_word()
    return out

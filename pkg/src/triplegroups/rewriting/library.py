"""Shipped derivations: each is a chain of words joined by checked steps.

The chains are written out by hand; ``build`` fills any gap between
consecutive words by bounded search and records the raw steps.  Tests replay
the stored JSONL files and check that rebuilding reproduces them.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable

from ..presentations import (
    Assignment,
    Presentation,
    Relation,
    braid_relation,
    c_word,
    canonical_assignment,
    commute,
    presentation_of,
)
from ..rootsys import load_catalog
from ..weyl import group_for
from ..words import Word
from . import DerivationTrace, Lemma, RewriteSystem, check_acyclic, connect, verify_derivation

FIXTURE_DIR = "fixtures"
W = Word.parse


def _rel(lhs: str, rhs: str, tag: str) -> Relation:
    return Relation(W(lhs), W(rhs), tag)


@dataclass
class Derivation:
    name: str
    description: str
    presentation: Callable[[], Presentation]
    chain: Callable[[], list[Word]]
    uses: tuple[str, ...] = ()
    assignment: Callable[[], Assignment] | None = None

    @property
    def lhs(self) -> Word:
        return self.chain()[0].free_reduce()

    @property
    def rhs(self) -> Word:
        return self.chain()[-1].free_reduce()

    def lemma(self) -> Lemma:
        return Lemma(self.name, self.lhs, self.rhs, frozenset(self.uses))


# -- presentations ---------------------------------------------------------------


def _conjugation_presentation(hypothesis: str) -> Presentation:
    """p and q each braid (order 3) with x, plus one hypothesis."""
    rels = [braid_relation("p", "x", 3, "braid:p,x"), braid_relation("q", "x", 3, "braid:q,x")]
    if hypothesis == "double":
        rels.append(_rel("q p x q p x", "x q p x q p", "hyp:double"))
    else:
        rels.append(_rel("p^-1 q p x p^-1 q p", "x p^-1 q p x", "hyp:conj"))
    return Presentation("custom", f"conjugation-{hypothesis}", ("p", "q", "x"), tuple(rels), {"hypothesis": hypothesis})


def _shifted_presentation(order: int) -> Presentation:
    """Affine braid pair T0, Ta with commuting lattice elements A, B."""
    rels = [braid_relation("T0", "Ta", order, f"braid:T0,Ta"), commute(W("A"), W("B"), "commute:A,B")]
    rels.append(_rel("A Ta", "Ta^-1 A B", "shift:A"))
    if order == 3:
        rels.append(_rel("A B T0^-1", "T0 B", "shift:AB"))
    else:
        rels.append(_rel("A B T0^-1", "T0^-1 A B", "shift:AB"))
        rels.append(_rel("A A B Ta", "Ta A A B", "shift:AAB"))
    return Presentation("custom", f"shifted-{order}", ("T0", "Ta", "A", "B"), tuple(rels), {"order": order})


def _reduced_atilde() -> Presentation:
    """Ã over A4~2 keeping only one of the three elliptic braid relations."""
    P = presentation_of("atilde", "A4~2", 0)
    keep = [r for r in P.relations if r.tag not in ("ellbraid:13", "ellbraid:23")]
    return P.replace(keep)


# -- Weyl-level assignments --------------------------------------------------------


def _conjugation_assignment() -> Assignment:
    G = group_for(load_catalog("A2~1"))
    s01, s02, s1 = (G.from_generator(g) for g in ("s01", "s02", "s1"))
    q = G.multiply(G.multiply(s01, s02), G.inverse(s01))
    return Assignment(G, {"p": s01, "q": q, "x": s1})


def _shifted_assignment(type_id: str) -> Callable[[], Assignment]:
    def make() -> Assignment:
        data = load_catalog(type_id)
        G = group_for(data)
        a = data.alpha_index
        x_alpha0 = G.multiply(G.from_generator("tau"), G.tau_lattice(-data.theta_over_a0))
        return Assignment(G, {
            "T0": G.from_generator("s01"),
            "Ta": G.from_generator(f"s{a}"),
            "A": x_alpha0,
            "B": G.tau_lattice(data.simple(a)),
        })

    return make


# -- chains ------------------------------------------------------------------------


def _move_central(prefix: Word, central: Word, body: Word, suffix: Word, *, leftward: bool = False) -> list[Word]:
    """Words prefix·C·body·suffix -> prefix·body·C·suffix, one letter at a time."""
    out = []
    n = len(body)
    for k in range(n + 1):
        left, right = Word(body.letters[:k]), Word(body.letters[k:])
        out.append((prefix * left * central * right * suffix).free_reduce())
    return out[::-1] if leftward else out


def _chain_conjugate_from_double() -> list[Word]:
    return [W(s) for s in (
        "p^-1 q p x p^-1 q p",
        "p^-1 q x^-1 p x q p",
        "p^-1 x^-1 q^-1 x q p x q p",
        "p^-1 x^-1 p x q p x",
        "x p^-1 q p x",
    )]


def _chain_double_from_conjugate() -> list[Word]:
    return [W(s) for s in (
        "q p x q p x",
        "q x p x p^-1 q p x",
        "q x q p x p^-1 q p",
        "q x q x^-1 p x q p",
        "x q p x q p",
    )]


def _chain_twisted_single() -> list[Word]:
    # the first chain with p -> p^-1 q p and q -> p
    images = {"p": W("p^-1 q p"), "q": W("p"), "x": W("x")}
    return [w.substitute(images).free_reduce() for w in _chain_conjugate_from_double()]


def _chain_double_bond() -> list[Word]:
    return [W(s) for s in (
        "T1 T01 T02 T1 T02",
        "T1 T01 T1^-1 T02 T1 T02 T1",
        "T02 T1 T01 T02 T1",
    )]


def _chain_shifted_single() -> list[Word]:
    return [W(s) for s in (
        "T0^-1 A Ta T0^-1 A",
        "T0^-1 Ta^-1 A B T0^-1 A",
        "T0^-1 Ta^-1 T0 B A",
        "Ta T0^-1 Ta^-1 B A",
        "Ta T0^-1 Ta^-1 A B",
        "Ta T0^-1 A Ta",
    )]


def _chain_shifted_double() -> list[Word]:
    return [W(s) for s in (
        "T0^-1 A Ta T0^-1 A Ta",
        "T0^-1 Ta^-1 A B T0^-1 A Ta",
        "T0^-1 Ta^-1 T0^-1 A B A Ta",
        "T0^-1 Ta^-1 T0^-1 A A B Ta",
        "T0^-1 Ta^-1 T0^-1 Ta A A B",
        "Ta T0^-1 Ta^-1 T0^-1 A A B",
        "Ta T0^-1 Ta^-1 T0^-1 A B A",
        "Ta T0^-1 Ta^-1 A B T0^-1 A",
        "Ta T0^-1 A Ta T0^-1 A",
    )]


def _chain_conjugated_generator() -> list[Word]:
    return [W(s) for s in (
        "T0 Ta^-1 T0^-1 A Ta",
        "T0 Ta^-1 T0^-1 Ta^-1 A B",
        "Ta^-1 T0^-1 Ta^-1 T0 A B",
        "Ta^-1 T0^-1 Ta^-1 A B T0",
        "Ta^-1 T0^-1 A Ta T0",
    )]


def _chain_twisted_pair() -> list[Word]:
    return [W(s) for s in (
        "T02 T1^-1 T02^-1 T01 T02 T1",
        "T1^-1 T02^-1 T1^-1 T02 T1 T01 T02 T1",
        "T1^-1 T02^-1 T01 T02 T1 T02",
    )]


def _chain_twisted_generator() -> list[Word]:
    # T02^-1 T01 T02 and T1 satisfy the order 4 braid relation; the steps come from search
    x = "T02^-1 T01 T02 T1"
    return [W(f"{x} {x}"), W(f"T1 {x} T02^-1 T01 T02")]


def _chain_t02_elimination() -> list[Word]:
    data = load_catalog("A2~1")
    C = c_word(data)
    y = W("T1 T2 T1").inverse() * W("T03^-1 T1 T03") * W("T1 T2 T1")
    chain = [W("T02"), W("T1 T02 T1 T02^-1 T1^-1")]
    chain += _move_central(W("T1 T01^-1"), C, y, C.inverse() * W("T01 T1^-1"))
    chain.append(W("T01^-1 T1^-1 T01 T1") * y * W("T01 T1^-1"))
    return chain


def _chain_single_ellbraid() -> list[Word]:
    data = load_catalog("A4~2")
    C = c_word(data)
    s_inv = W("T1 T2 T1").inverse()
    f1, f2, f3 = W("T1^-1 T02^-1 T1"), W("T1^-1 T01^-1 T1^-1"), W("T1") * s_inv * W("T1")
    target = W("T1^-1 T03 T1")
    # target = f1 f2 f3 C once C has moved left through s_inv T1
    chain = [W("T01") * target]
    chain += _move_central(W("T01") * f1 * f2 * W("T1"), C, s_inv * W("T1"), Word())
    chain += [
        f1 * W("T01") * f2 * f3 * C,
        f1 * f2 * W("T01") * f3 * C,
        f1 * f2 * f3 * W("T01") * C,
        f1 * f2 * f3 * C * W("T01"),
    ]
    chain += _move_central(f1 * f2 * W("T1"), C, s_inv * W("T1"), W("T01"), leftward=True)
    chain.append(target * W("T01"))
    return chain


def _chain_psi_commutation() -> list[Word]:
    data = load_catalog("A4~2")
    Ci = c_word(data).inverse()
    chain = [W("T01 T1 T1^-1 T2^-1 T1^-1 T03^-1 T1")]
    chain += _move_central(Word(), Ci, W("T01 T1"), W("T01 T02 T1"), leftward=True)
    chain += [
        Ci * W("T1 T01 T1 T01 T1^-1 T02 T1"),
        Ci * W("T1 T01 T02 T1 T01"),
    ]
    chain += _move_central(Word(), Ci, W("T1"), W("T01 T02 T1 T01"))
    chain.append(W("T1 T1^-1 T2^-1 T1^-1 T03^-1 T1 T01"))
    return chain


DERIVATIONS: dict[str, Derivation] = {}


def _register(d: Derivation) -> None:
    DERIVATIONS[d.name] = d


_register(Derivation(
    "conjugate_from_double_lace",
    "p^-1 q p braids with x (order 3) when q p and x satisfy the order 4 braid relation",
    lambda: _conjugation_presentation("double"), _chain_conjugate_from_double,
    assignment=_conjugation_assignment,
))
_register(Derivation(
    "double_lace_from_conjugate",
    "q p and x satisfy the order 4 braid relation when p^-1 q p braids with x",
    lambda: _conjugation_presentation("conj"), _chain_double_from_conjugate,
    assignment=_conjugation_assignment,
))
_register(Derivation(
    "twisted_conjugate_single_lace",
    "(q p)^-1 p (q p) braids with x (order 3)",
    lambda: _conjugation_presentation("double"), _chain_twisted_single,
    uses=("conjugate_from_double_lace",), assignment=_conjugation_assignment,
))
_register(Derivation(
    "double_bond_commutation",
    "T02 commutes with T1 T01 T02 T1 in the triple group of A4~2",
    lambda: presentation_of("triple", "A4~2", 0), _chain_double_bond,
    assignment=lambda: canonical_assignment("A4~2"),
))
_register(Derivation(
    "ellbraid_for_twisted_pair",
    "T02 and T02^-1 T01 T02 satisfy the elliptic braid relation through T1",
    lambda: presentation_of("triple", "A4~2", 0), _chain_twisted_pair,
    uses=("double_bond_commutation",), assignment=lambda: canonical_assignment("A4~2"),
))
_register(Derivation(
    "twisted_generator_double_lace",
    "T02^-1 T01 T02 and T1 satisfy the order 4 braid relation",
    lambda: presentation_of("triple", "A4~2", 0), _chain_twisted_generator,
    uses=("double_bond_commutation", "ellbraid_for_twisted_pair"),
    assignment=lambda: canonical_assignment("A4~2"),
))
_register(Derivation(
    "shifted_affine_braid_single",
    "T0^-1 A and Ta satisfy the order 3 braid relation",
    lambda: _shifted_presentation(3), _chain_shifted_single,
    assignment=_shifted_assignment("A2~1"),
))
_register(Derivation(
    "shifted_affine_braid_double",
    "T0^-1 A and Ta satisfy the order 4 braid relation",
    lambda: _shifted_presentation(4), _chain_shifted_double,
    assignment=_shifted_assignment("A4~2"),
))
_register(Derivation(
    "conjugated_generator_double_lace",
    "T0 commutes with Ta^-1 T0^-1 A Ta",
    lambda: _shifted_presentation(4), _chain_conjugated_generator,
    assignment=_shifted_assignment("A4~2"),
))
_register(Derivation(
    "t02_elimination",
    "T02 rewritten through T01, T03 and the finite generators in Ã over A2~1",
    lambda: presentation_of("atilde", "A2~1", 0), _chain_t02_elimination,
    assignment=lambda: canonical_assignment("A2~1"),
))
_register(Derivation(
    "single_ellbraid_suffices",
    "with only one elliptic braid relation, T01 still commutes with T1^-1 T03 T1 in Ã over A4~2",
    _reduced_atilde, _chain_single_ellbraid,
    assignment=lambda: canonical_assignment("A4~2"),
))
_register(Derivation(
    "psi_preserves_commutation",
    "T01 commutes with T1 Tstheta^-1 T03^-1 T1 in Ã over A4~2",
    lambda: presentation_of("atilde", "A4~2", 0), _chain_psi_commutation,
    assignment=lambda: canonical_assignment("A4~2"),
))


# -- building and loading ------------------------------------------------------------


def library() -> dict[str, Lemma]:
    lemmas = {name: d.lemma() for name, d in DERIVATIONS.items()}
    check_acyclic(lemmas)
    return lemmas


def system_for(d: Derivation) -> RewriteSystem:
    lemmas = library()
    return RewriteSystem(d.presentation(), {u: lemmas[u].relator for u in d.uses})


def build(name: str, max_nodes: int = 200_000) -> DerivationTrace:
    d = DERIVATIONS[name]
    return connect(system_for(d), d.chain(), max_nodes=max_nodes)


def header(d: Derivation) -> dict:
    return {
        "name": d.name,
        "description": d.description,
        "uses": list(d.uses),
        "presentation": d.presentation().to_json(),
    }


def fixture_path(name: str) -> Path:
    return Path(str(resources.files(__package__).joinpath(FIXTURE_DIR, f"{name}.jsonl")))


def load(name: str) -> tuple[DerivationTrace, dict]:
    text = resources.files(__package__).joinpath(FIXTURE_DIR, f"{name}.jsonl").read_text()
    return DerivationTrace.from_jsonl(text)


def replay(name: str) -> bool:
    """Replay a stored fixture against the presentation recorded in its header."""
    trace, head = load(name)
    P = Presentation.from_json(head["presentation"])
    lemmas = library()
    return verify_derivation(P, trace, {k: lemmas[k] for k in head["uses"]} | _closure(head["uses"], lemmas), name)


def _closure(names, lemmas: dict[str, Lemma]) -> dict[str, Lemma]:
    out: dict[str, Lemma] = {}
    todo = list(names)
    while todo:
        n = todo.pop()
        if n not in out:
            out[n] = lemmas[n]
            todo.extend(lemmas[n].uses)
    return out


def weyl_check(name: str) -> tuple[bool, str]:
    """Both ends agree in the Weyl-level image, given relations hold there."""
    d = DERIVATIONS[name]
    if d.assignment is None:
        return True, "no Weyl image"
    A = d.assignment()
    G = A.group
    for rel in d.presentation().relations:
        if A.evaluate(rel.lhs) != A.evaluate(rel.rhs):
            return False, f"relation {rel.tag} fails in the image"
    for lem in d.uses:
        L = DERIVATIONS[lem]
        if A.evaluate(L.lhs) != A.evaluate(L.rhs):
            return False, f"lemma {lem} fails in the image"
    ok = A.evaluate(d.lhs) == A.evaluate(d.rhs)
    return ok, "ends agree" if ok else "ends differ"


def write_all(directory: Path | None = None) -> list[Path]:
    directory = directory or Path(__file__).parent / FIXTURE_DIR
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in DERIVATIONS:
        trace = build(name)
        path = directory / f"{name}.jsonl"
        path.write_text(trace.to_jsonl(header(DERIVATIONS[name])))
        paths.append(path)
    return paths


if __name__ == "__main__":
    for p in write_all():
        print(p)

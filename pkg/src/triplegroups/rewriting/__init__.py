"""Rewriting words modulo the relations of a presentation.

Words are freely reduced at every stage.  A step replaces a subword ``old``
by ``new`` where ``old new^-1`` is, after cyclic reduction, a cyclic
rotation of a relator or of its inverse.  Search is a bidirectional
best-first exploration that prefers short words; a found path is turned into
a replayable ``DerivationTrace``.
"""

from __future__ import annotations

import graphlib
import heapq
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..errors import BadStep, UnknownGenerator
from ..presentations import Presentation
from ..words import Word
from ._kernel_loader import BACKEND, expand, free_reduce as _free_reduce_bytes

DEFAULT_MAX_NODES = 10**6
DEFAULT_SLACK = 8


def free_reduce(w: Word) -> Word:
    return w.free_reduce()


def cyclic_reduce(w: Word) -> Word:
    letters = list(w.free_reduce().letters)
    while len(letters) >= 2 and letters[0] == (letters[-1][0], -letters[-1][1]):
        letters = letters[1:-1]
    return Word(tuple(letters))


def _cyclic_reduce_bytes(b: bytes) -> bytes:
    b = _free_reduce_bytes(b)
    i, j = 0, len(b)
    while j - i >= 2 and b[i] == b[j - 1] ^ 1:
        i += 1
        j -= 1
    return b[i:j]


def _inverse_bytes(b: bytes) -> bytes:
    return bytes(x ^ 1 for x in reversed(b))


def _is_rotation(s: bytes, r: bytes) -> bool:
    return len(s) == len(r) and (not r or s in r + r)


@dataclass(frozen=True)
class Rule:
    id: str
    relator: Word
    source: str  # "relation" or "lemma"


@dataclass(frozen=True)
class Step:
    rule_id: str
    position: int
    direction: int
    old: Word
    new: Word
    word: Word

    def to_json(self, index: int) -> dict:
        return {
            "step": index,
            "ruleId": self.rule_id,
            "position": self.position,
            "direction": self.direction,
            "old": str(self.old),
            "new": str(self.new),
            "word": str(self.word),
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "Step":
        return cls(d["ruleId"], int(d["position"]), int(d["direction"]), Word.parse(d["old"]),
                   Word.parse(d["new"]), Word.parse(d["word"]))


@dataclass
class DerivationTrace:
    start: Word
    steps: list[Step]
    end: Word

    def __len__(self) -> int:
        return len(self.steps)

    def lemmas_used(self) -> set[str]:
        return {s.rule_id[len("lemma:"):] for s in self.steps if s.rule_id.startswith("lemma:")}

    def to_jsonl(self, header: Mapping | None = None) -> str:
        head = {"header": True, "start": str(self.start), "end": str(self.end), **(header or {})}
        lines = [json.dumps(head, sort_keys=True)]
        lines += [json.dumps(s.to_json(i), sort_keys=True) for i, s in enumerate(self.steps)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> tuple["DerivationTrace", dict]:
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        if not rows or not rows[0].get("header"):
            raise ValueError("trace file must start with a header line")
        head = rows[0]
        steps = [Step.from_json(r) for r in sorted(rows[1:], key=lambda r: r["step"])]
        return cls(Word.parse(head["start"]), steps, Word.parse(head["end"])), head


@dataclass
class Proved:
    trace: DerivationTrace
    stats: dict = field(default_factory=dict)

    proved = True


@dataclass
class Unknown:
    stats: dict = field(default_factory=dict)

    proved = False


class RewriteSystem:
    """Relations of a presentation (plus optional lemmas) as two-way rules."""

    def __init__(self, presentation: Presentation, lemmas: Mapping[str, Word] | None = None):
        self.presentation = presentation
        self.alphabet = tuple(presentation.generators)
        if len(self.alphabet) > 127:
            raise ValueError("alphabet too large for the byte encoding")
        self._code = {g: i for i, g in enumerate(self.alphabet)}
        rules: list[Rule] = []
        seen: set[str] = set()
        for rel in presentation.relations:
            relator = cyclic_reduce(rel.lhs * rel.rhs.inverse())
            if relator and rel.tag not in seen:
                rules.append(Rule(rel.tag, relator, "relation"))
                seen.add(rel.tag)
        for name, relator in (lemmas or {}).items():
            relator = cyclic_reduce(relator)
            if relator:
                rules.append(Rule(f"lemma:{name}", relator, "lemma"))
        self.rules = tuple(rules)
        self._rule_index = {r.id: k for k, r in enumerate(self.rules)}
        self._encoded = [self.encode(r.relator) for r in self.rules]
        self._build_pieces()

    # -- encoding ----------------------------------------------------------------

    def encode(self, w: Word) -> bytes:
        try:
            return bytes(2 * self._code[g] + (e < 0) for g, e in w.letters)
        except KeyError as exc:
            raise UnknownGenerator(f"generator {exc.args[0]!r} is not in the alphabet") from None

    def decode(self, b: bytes) -> Word:
        return Word(tuple((self.alphabet[x >> 1], -1 if x & 1 else 1) for x in b))

    def _build_pieces(self) -> None:
        pieces: list[tuple[bytes, bytes, int, int]] = []  # (u, v, rule, direction)
        for k, r in enumerate(self._encoded):
            seen = set()
            for direction, rel in ((1, r), (-1, _inverse_bytes(r))):
                n = len(rel)
                for shift in range(n):
                    rot = rel[shift:] + rel[:shift]
                    for cut in range(1, n + 1):
                        u, v = rot[:cut], _inverse_bytes(rot[cut:])
                        if (u, v) not in seen:
                            seen.add((u, v))
                            pieces.append((u, v, k, direction))
        self.pieces = pieces
        index: dict[int, list] = {}
        for pid, (u, v, _, _) in enumerate(pieces):
            index.setdefault(u[0], []).append((u, v, pid))
        self._index = index

    # -- steps -------------------------------------------------------------------

    def classify(self, old: Word, new: Word, rule_id: str | None = None) -> tuple[str, int] | None:
        """(rule id, direction) making old -> new a legal step, or None."""
        s = _cyclic_reduce_bytes(self.encode(old) + _inverse_bytes(self.encode(new)))
        if not s:
            return None
        candidates = [self._rule_index[rule_id]] if rule_id in self._rule_index else range(len(self.rules))
        for k in candidates:
            r = self._encoded[k]
            if _is_rotation(s, r):
                return self.rules[k].id, 1
            if _is_rotation(s, _inverse_bytes(r)):
                return self.rules[k].id, -1
        return None

    def diff_step(self, a: Word, b: Word, rule_id: str | None = None) -> Step | None:
        """Describe the passage a -> b as a single step if it is one."""
        x, y = self.encode(a.free_reduce()), self.encode(b.free_reduce())
        p = 0
        while p < min(len(x), len(y)) and x[p] == y[p]:
            p += 1
        q = 0
        while q < min(len(x), len(y)) - p and x[-1 - q] == y[-1 - q]:
            q += 1
        old, new = self.decode(x[p:len(x) - q]), self.decode(y[p:len(y) - q])
        hit = self.classify(old, new, rule_id)
        if hit is None:
            return None
        return Step(hit[0], p, hit[1], old, new, self.decode(y))

    def apply(self, w: Word, step: Step) -> Word:
        x = self.encode(w)
        old, new = self.encode(step.old), self.encode(step.new)
        if x[step.position:step.position + len(old)] != old:
            raise ValueError("old subword not found at position")
        return self.decode(_free_reduce_bytes(x[:step.position] + new + x[step.position + len(old):]))

    # -- search ------------------------------------------------------------------

    def neighbors(self, w: Word, max_len: int | None = None) -> list[tuple[str, int, Word]]:
        b = self.encode(w.free_reduce())
        out = expand(b, self._index, max_len if max_len is not None else len(b) + DEFAULT_SLACK)
        return [(self.rules[self.pieces[pid][2]].id, pos, self.decode(new)) for pid, pos, new in out]

    def search(self, w1: Word, w2: Word, max_len: int | None = None, max_nodes: int = DEFAULT_MAX_NODES):
        a, b = self.encode(w1.free_reduce()), self.encode(w2.free_reduce())
        if max_len is None:
            max_len = max(len(a), len(b)) + DEFAULT_SLACK
        stats = {"maxLen": max_len, "maxNodes": max_nodes, "backend": BACKEND}
        if a == b:
            return Proved(DerivationTrace(self.decode(a), [], self.decode(b)), {**stats, "nodes": 1})
        parents = ({a: None}, {b: None})
        heaps = ([(len(a), 0, a)], [(len(b), 0, b)])
        counter = itertools.count(1)
        nodes = 2
        while heaps[0] or heaps[1]:
            # expand the side whose next word is shorter; ties go to the start side
            if not heaps[1] or (heaps[0] and heaps[0][0][:2] <= heaps[1][0][:2]):
                side = 0
            else:
                side = 1
            _, _, word = heapq.heappop(heaps[side])
            mine, other = parents[side], parents[1 - side]
            for pid, _, new in expand(word, self._index, max_len):
                if new in mine:
                    continue
                mine[new] = (word, pid)
                nodes += 1
                if new in other:
                    path = self._join(new, parents)
                    return Proved(self._trace_from_path(path), {**stats, "nodes": nodes})
                if nodes >= max_nodes:
                    return Unknown({**stats, "nodes": nodes, "reason": "budget exceeded"})
                heapq.heappush(heaps[side], (len(new), next(counter), new))
        return Unknown({**stats, "nodes": nodes, "reason": "search space exhausted"})

    def _join(self, meet: bytes, parents) -> list[tuple[bytes, int | None]]:
        """Path of (word, piece used to reach it) from the start to the goal."""
        left = []
        x = meet
        while parents[0][x] is not None:
            prev, pid = parents[0][x]
            left.append((x, pid))
            x = prev
        left.append((x, None))
        left.reverse()
        path = left
        x = meet
        while parents[1][x] is not None:
            prev, pid = parents[1][x]
            path.append((prev, pid))
            x = prev
        return path

    def _trace_from_path(self, path: list[tuple[bytes, int | None]]) -> DerivationTrace:
        steps = []
        for (x, _), (y, pid) in zip(path, path[1:]):
            rule = self.rules[self.pieces[pid][2]].id
            step = self.diff_step(self.decode(x), self.decode(y), rule)
            if step is None:
                raise AssertionError("search produced an illegal step")
            steps.append(step)
        return DerivationTrace(self.decode(path[0][0]), steps, self.decode(path[-1][0]))


def equal_modulo(
    P: Presentation | RewriteSystem,
    w1: Word | str,
    w2: Word | str,
    max_len: int | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
    lemmas: Mapping[str, Word] | None = None,
) -> Proved | Unknown:
    """Semi-decide w1 = w2 in P.  Unknown is never a disproof."""
    system = P if isinstance(P, RewriteSystem) else RewriteSystem(P, lemmas)
    if isinstance(w1, str):
        w1 = Word.parse(w1)
    if isinstance(w2, str):
        w2 = Word.parse(w2)
    return system.search(w1, w2, max_len, max_nodes)


@dataclass(frozen=True)
class Lemma:
    """A proven relation usable as a rule by later derivations."""

    name: str
    lhs: Word
    rhs: Word
    uses: frozenset[str] = frozenset()

    @property
    def relator(self) -> Word:
        return cyclic_reduce(self.lhs * self.rhs.inverse())


def check_acyclic(lemmas: Mapping[str, Lemma]) -> list[str]:
    """Topological order of the lemma library; raises CycleError on cycles."""
    sorter = graphlib.TopologicalSorter({name: set(lem.uses) for name, lem in lemmas.items()})
    return list(sorter.static_order())


def verify_derivation(
    P: Presentation | RewriteSystem,
    trace: DerivationTrace,
    library: Mapping[str, Lemma] | None = None,
    name: str | None = None,
) -> bool:
    """Replay every step; raise BadStep(index, reason) at the first illegal one."""
    library = dict(library or {})
    used = trace.lemmas_used()
    missing = used - set(library)
    if missing:
        raise BadStep(-1, f"unknown lemmas {sorted(missing)}")
    if name is not None:
        graph = dict(library)
        known = graph[name].uses if name in graph else frozenset()
        graph[name] = Lemma(name, trace.start, trace.end, frozenset(used) | known)
        try:
            check_acyclic(graph)
        except graphlib.CycleError as exc:
            raise BadStep(-1, f"lemma references are cyclic: {exc.args[1]}") from None
    if isinstance(P, RewriteSystem):
        system = P
    else:
        system = RewriteSystem(P, {k: library[k].relator for k in sorted(used)})
    current = trace.start.free_reduce()
    for i, step in enumerate(trace.steps):
        if step.rule_id not in system._rule_index:
            raise BadStep(i, f"rule {step.rule_id!r} is not available")
        hit = system.classify(step.old, step.new, step.rule_id)
        if hit is None:
            raise BadStep(i, f"{step.old} -> {step.new} is not an instance of {step.rule_id}")
        if hit[1] != step.direction:
            raise BadStep(i, f"direction {step.direction} does not match {hit[1]}")
        try:
            current = system.apply(current, step)
        except ValueError as exc:
            raise BadStep(i, str(exc)) from None
        if current != step.word.free_reduce():
            raise BadStep(i, f"replay gives {current}, trace records {step.word}")
    if current != trace.end.free_reduce():
        raise BadStep(len(trace.steps), f"replay ends at {current}, expected {trace.end}")
    return True


def connect(
    system: RewriteSystem,
    chain: Sequence[Word | str],
    rules: Sequence[str | None] | None = None,
    max_nodes: int = DEFAULT_MAX_NODES,
) -> DerivationTrace:
    """Join consecutive chain words by single steps or, failing that, by search."""
    words = [Word.parse(w) if isinstance(w, str) else w for w in chain]
    words = [w.free_reduce() for w in words]
    steps: list[Step] = []
    for k, (a, b) in enumerate(zip(words, words[1:])):
        if a == b:
            continue
        hint = rules[k] if rules else None
        step = system.diff_step(a, b, hint) or system.diff_step(a, b)
        if step is not None:
            steps.append(step)
            continue
        res = system.search(a, b, max_nodes=max_nodes)
        if not res.proved:
            raise ValueError(f"could not connect {a} -> {b}: {res.stats}")
        steps.extend(res.trace.steps)
    return DerivationTrace(words[0], steps, words[-1])


__all__ = [
    "BACKEND",
    "DerivationTrace",
    "Lemma",
    "Proved",
    "RewriteSystem",
    "Rule",
    "Step",
    "Unknown",
    "check_acyclic",
    "connect",
    "cyclic_reduce",
    "equal_modulo",
    "free_reduce",
    "verify_derivation",
]

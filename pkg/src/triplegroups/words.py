"""Words in a generator alphabet with inverses."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

Letter = tuple[str, int]

_TOKEN = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^\(?(-?\d+)\)?)?$")
IDENTITY_TOKENS = {"", "1", "e", "id"}


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"s01 s1^-1 s2"``; ``"1"`` or an empty string is the empty word."""
        text = text.strip()
        if text in IDENTITY_TOKENS:
            return cls()
        letters: list[Letter] = []
        for tok in text.replace("*", " ").replace("·", " ").split():
            if tok in IDENTITY_TOKENS:
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad token {tok!r} in word {text!r}")
            gen, exp = m.group(1), int(m.group(2) or 1)
            sign = 1 if exp > 0 else -1
            letters.extend([(gen, sign)] * abs(exp))
        return cls(tuple(letters))

    @classmethod
    def of(cls, *gens: str) -> "Word":
        return cls.parse(" ".join(gens))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        return cls(((name, 1 if exp > 0 else -1),) * abs(exp))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def free_reduce(self) -> "Word":
        out: list[Letter] = []
        for g, e in self.letters:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return Word(tuple(out))

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def substitute(self, images: dict[str, "Word"]) -> "Word":
        out: list[Letter] = []
        for g, e in self.letters:
            img = images[g]
            out.extend(img.letters if e > 0 else img.inverse().letters)
        return Word(tuple(out))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(g if e > 0 else f"{g}^-1" for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def concat(words: Iterable[Word]) -> Word:
    out: tuple[Letter, ...] = ()
    for w in words:
        out += w.letters
    return Word(out)

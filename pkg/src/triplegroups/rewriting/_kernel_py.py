"""Pure-Python hot loops for rewriting over byte-encoded words.

A letter is one byte: generator k is ``2k`` and its inverse ``2k + 1``.
"""

from __future__ import annotations


def free_reduce(word: bytes) -> bytes:
    out = bytearray()
    for x in word:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return bytes(out)


def expand(word: bytes, index: dict, max_len: int) -> list[tuple[int, int, bytes]]:
    """All single piece applications, as (piece_id, position, reduced result).

    ``index`` maps a first letter to a list of ``(u, v, piece_id)``.  Results
    longer than ``max_len`` are dropped; output is sorted by piece then position.
    """
    out = []
    n = len(word)
    for pos in range(n):
        for u, v, pid in index.get(word[pos], ()):
            if pos + len(u) <= n and word.startswith(u, pos):
                new = free_reduce(word[:pos] + v + word[pos + len(u):])
                if len(new) <= max_len:
                    out.append((pid, pos, new))
    out.sort(key=lambda t: (t[0], t[1]))
    return out

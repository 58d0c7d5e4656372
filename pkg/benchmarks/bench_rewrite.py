"""Compare the compiled and pure-Python rewriting kernels.

    python3 benchmarks/bench_rewrite.py [--repeat N]

Times raw neighbour expansion and complete searches with each kernel and
checks that both kernels return identical results.
"""

from __future__ import annotations

import argparse
import random
import time

import triplegroups.rewriting as rw
from triplegroups.presentations import presentation_of
from triplegroups.rewriting import RewriteSystem, _kernel_py
from triplegroups.words import Word

try:
    from triplegroups.rewriting import _kernel as _kernel_c
except ImportError:
    _kernel_c = None

# (label, kind, type, lhs, rhs, node budget); the last case runs out of budget
SEARCHES = [
    ("triple A4~2", "triple", "A4~2", "T1 T01 T02 T1 T02", "T02 T1 T01 T02 T1", 10**6),
    ("affine Artin A3~1", "artin_affine", "A3~1", "T1 T2 T1 T0 T3", "T2 T1 T2 T0 T3", 10**6),
    ("elliptic Weyl A2~1", "daw", "A2~1", "s01 s1 s01 s2 s1 s2", "s1 s01 s1 s1 s2 s1", 10**6),
    ("budget-bound triple A2~1", "triple", "A2~1", "T01 T02 T1", "T02 T01 T1", 20_000),
]


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench_expand(system: RewriteSystem, kernel, words, repeat):
    def run():
        return [kernel.expand(w, system._index, len(w) + 8) for w in words]

    return _time(run, repeat)


def bench_search(system: RewriteSystem, kernel, lhs, rhs, budget, repeat):
    saved = rw.expand, rw._free_reduce_bytes
    rw.expand, rw._free_reduce_bytes = kernel.expand, kernel.free_reduce
    try:
        return _time(lambda: system.search(Word.parse(lhs), Word.parse(rhs), max_nodes=budget), repeat)
    finally:
        rw.expand, rw._free_reduce_bytes = saved


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--words", type=int, default=300)
    args = ap.parse_args()
    kernels = [("python", _kernel_py)] + ([("cython", _kernel_c)] if _kernel_c else [])
    if _kernel_c is None:
        print("compiled kernel not built; timing the pure-Python kernel only")
    rng = random.Random(0xDA57)
    print(f"{'case':28} {'kernel':8} {'expand s':>10} {'search s':>10} {'nodes':>8}")
    for label, kind, type_id, lhs, rhs, budget in SEARCHES:
        system = RewriteSystem(presentation_of(kind, type_id, 0))
        letters = range(2 * len(system.alphabet))
        words = [_kernel_py.free_reduce(bytes(rng.choice(letters) for _ in range(12))) for _ in range(args.words)]
        results = {}
        for name, kernel in kernels:
            te, exp = bench_expand(system, kernel, words, args.repeat)
            ts, res = bench_search(system, kernel, lhs, rhs, budget, args.repeat)
            results[name] = (exp, res.proved, res.stats.get("nodes"))
            print(f"{label:28} {name:8} {te:10.4f} {ts:10.4f} {res.stats.get('nodes', 0):8d}")
        if len(results) == 2 and results["python"] != results["cython"]:
            raise SystemExit(f"kernels disagree on {label}")


if __name__ == "__main__":
    main()

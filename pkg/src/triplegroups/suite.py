"""Per-type verification sections assembled into one report."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .automorphisms import sl2z_suite
from .presentations import (
    KINDS,
    canonical_assignment,
    check_iso_on_generators,
    corrupt,
    c_word,
    phi_map,
    presentation_of,
    psi_map,
    verify,
)
from .report import Report
from .rewriting import equal_modulo
from .rewriting import library as fixtures
from .rootsys import load_catalog
from .weyl import group_for
from .words import Word

DEFAULT_SEED = 0xDA57


def section_catalog(type_id: str, seed: int) -> Report:
    report = Report(f"catalog:{type_id}")
    data = load_catalog(type_id)
    try:
        data.check()
        report.add("kernel-vectors", "marks and comarks span the kernels", True)
    except ValueError as exc:
        report.add("kernel-vectors", "marks and comarks span the kernels", False, str(exc))
    return report


def section_presentations(type_id: str, seed: int, k_bound: int = 3) -> Report:
    report = Report(f"presentations:{type_id}")
    A = canonical_assignment(type_id)
    for kind in KINDS:
        report.extend(verify(presentation_of(kind, type_id, k_bound), A), prefix=f"{kind}:")
    return report


def section_roundtrip(type_id: str, seed: int, samples: int = 200, max_len: int = 20) -> Report:
    report = Report(f"roundtrip:{type_id}", seed=seed)
    G = group_for(load_catalog(type_id))
    rng = random.Random(seed)
    identity_matrix = G.rho(G.identity)
    bad_decode = bad_word = bad_kernel = None
    for _ in range(samples):
        w = G.random_word(rng, max_len)
        g = G.word_eval(w)
        m = G.rho_word(w)
        if bad_decode is None and G.decode(m) != g:
            bad_decode = str(w)
        if bad_word is None and G.word_eval(G.element_to_word(g)) != g:
            bad_word = str(w)
        if bad_kernel is None and m == identity_matrix and not g.is_identity():
            bad_kernel = str(w)
    report.add("decode-rho", "reflection representation is faithful", bad_decode is None, bad_decode)
    report.add("element-to-word", "normal forms are realised by generator words", bad_word is None, bad_word)
    report.add("trivial-kernel", "no nonidentity element acts trivially", bad_kernel is None, bad_kernel)
    return report


def section_elliptic(type_id: str, seed: int, samples: int = 50) -> Report:
    report = Report(f"elliptic:{type_id}", seed=seed)
    G = group_for(load_catalog(type_id))
    sp = G.space
    tau = G.from_generator("tau")
    m = sp.restrict_v00(G.rho(tau))
    ok = m == sp.restrict_v00(G.rho(G.identity))
    report.add("central-trivial-on-v00", "central translation acts trivially on V00", ok, None if ok else "restriction is not the identity")
    rng = random.Random(seed)
    bad = None
    for _ in range(samples):
        x, y = G.random_element(rng), G.random_element(rng)
        lhs = G.elliptic_project(G.multiply(x, y))
        rhs = G.elliptic_project(G.multiply(G.elliptic_project(x), G.elliptic_project(y)))
        if lhs != rhs:
            bad = {"x": x.to_json(), "y": y.to_json()}
            break
    report.add("projection-homomorphism", "elliptic projection is a homomorphism", bad is None, bad)
    return report


def section_automorphisms(type_id: str, seed: int) -> Report:
    return sl2z_suite(load_catalog(type_id), seed=seed)


def section_isomorphism(type_id: str, seed: int) -> Report:
    data = load_catalog(type_id)
    P1, P2 = presentation_of("atilde", data, 0), presentation_of("cherednik", data, 0)
    report = check_iso_on_generators(phi_map(data), psi_map(data), P1, P2, free_checks=False)
    A2 = canonical_assignment(data)
    G = A2.group
    image = A2.evaluate(c_word(data).substitute(phi_map(data)))
    want = G.tau_delta(G.central_step)
    report.add("phi(C)-central", "C maps to the central translation", image == want,
               None if image == want else image.to_json())
    return report


def section_fixtures(type_id: str, seed: int) -> Report:
    report = Report("fixtures")
    for name in fixtures.DERIVATIONS:
        try:
            ok, why = fixtures.replay(name), None
        except ValueError as exc:
            ok, why = False, str(exc)
        report.add(f"replay:{name}", fixtures.DERIVATIONS[name].description, ok, why)
        ok, why = fixtures.weyl_check(name)
        report.add(f"weyl:{name}", "both ends agree in the Weyl image", ok, None if ok else why)
    for label, P, lhs, rhs in reprove_targets():
        res = equal_modulo(P, lhs, rhs)
        report.add(f"reprove:{label}", "search proves the identity from the relations", True if res.proved else None,
                   None if res.proved else res.stats)
    return report


def reprove_targets():
    return [
        ("double-bond-commutation", presentation_of("triple", "A4~2", 0),
         Word.parse("T1 T01 T02 T1 T02"), Word.parse("T02 T1 T01 T02 T1")),
        ("rank-two-braid", presentation_of("artin_affine", "A2~1"),
         Word.parse("T1 T0 T1"), Word.parse("T0 T1 T0")),
    ]


def section_refutation(type_id: str, seed: int) -> Report:
    report = Report(f"refutation:{type_id}")
    P = presentation_of("daw", type_id)
    bad, tag = corrupt(P)
    r = verify(bad, mode="matrix")
    hits = [c for c in r.checks if c.id.startswith(tag) and c.status == "fail" and c.witness]
    report.add("corrupted-relation-detected", "a false relation fails with a matrix witness", bool(hits),
               hits[0].witness if hits else {"tag": tag})
    return report


SECTIONS: dict[str, Callable[[str, int], Report]] = {
    "catalog": section_catalog,
    "presentations": section_presentations,
    "roundtrip": section_roundtrip,
    "elliptic": section_elliptic,
    "automorphisms": section_automorphisms,
    "isomorphism": section_isomorphism,
    "fixtures": section_fixtures,
    "refutation": section_refutation,
}


def _run(name: str, type_id: str, seed: int) -> tuple[str, Report, float]:
    t = time.perf_counter()
    r = SECTIONS[name](type_id, seed)
    return name, r, time.perf_counter() - t


def full_suite(type_id: str, seed: int = DEFAULT_SEED, jobs: int = 1) -> Report:
    """Every section for one type; sections may run in worker processes."""
    load_catalog(type_id)
    names = list(SECTIONS)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run, names, [type_id] * len(names), [seed] * len(names)))
    else:
        results = [_run(n, type_id, seed) for n in names]
    report = Report(f"suite:{type_id}", seed=seed)
    for name, r, elapsed in results:
        report.extend(r, prefix=f"{name}/")
        report.timing[name] = elapsed
    return report

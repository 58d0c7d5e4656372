import dataclasses
import graphlib
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from triplegroups.errors import BadStep
from triplegroups.presentations import presentation_of
from triplegroups.rewriting import (
    DerivationTrace,
    Lemma,
    RewriteSystem,
    check_acyclic,
    cyclic_reduce,
    equal_modulo,
    free_reduce,
    verify_derivation,
)
from triplegroups.rewriting import _kernel_py
from triplegroups.rewriting import library
from triplegroups.words import Word

try:
    from triplegroups.rewriting import _kernel as _kernel_c
except ImportError:  # pure install
    _kernel_c = None

W = Word.parse
ARTIN = presentation_of("artin_affine", "A2~1")
TRIPLE = presentation_of("triple", "A4~2", 0)


def test_free_reduction():
    assert free_reduce(W("a a^-1 b")) == W("b")
    assert free_reduce(Word()) == Word()
    assert free_reduce(W("a b c")) == W("a b c")
    assert cyclic_reduce(W("a b c a^-1")) == W("b c")


def test_identical_words_are_proved_trivially():
    res = equal_modulo(ARTIN, "T1 T0", "T1 T0")
    assert res.proved and len(res.trace) == 0


def test_braid_in_one_step():
    res = equal_modulo(ARTIN, "T1 T0 T1", "T0 T1 T0")
    assert res.proved and len(res.trace) == 1
    assert res.trace.steps[0].rule_id == "braid:T0,T1"
    assert verify_derivation(ARTIN, res.trace)


def test_double_bond_commutation_is_found():
    res = equal_modulo(TRIPLE, "T1 T01 T02 T1 T02", "T02 T1 T01 T02 T1")
    assert res.proved
    assert verify_derivation(TRIPLE, res.trace)


def test_budget_exhaustion_is_unknown():
    res = equal_modulo(ARTIN, "T1", "T2", max_nodes=500)
    assert not res.proved
    assert res.stats["nodes"] >= 1


def _tamper(trace, i, **changes):
    steps = list(trace.steps)
    steps[i] = dataclasses.replace(steps[i], **changes)
    return DerivationTrace(trace.start, steps, trace.end)


def test_tampered_traces_are_rejected():
    trace = equal_modulo(TRIPLE, "T1 T01 T02 T1 T02", "T02 T1 T01 T02 T1").trace
    with pytest.raises(BadStep) as err:
        verify_derivation(TRIPLE, _tamper(trace, 0, position=trace.steps[0].position + 1))
    assert err.value.index == 0
    with pytest.raises(BadStep):
        verify_derivation(TRIPLE, _tamper(trace, 0, rule_id="braid:T1,T2"))
    with pytest.raises(BadStep):
        verify_derivation(TRIPLE, _tamper(trace, 0, direction=-trace.steps[0].direction))
    with pytest.raises(BadStep):
        verify_derivation(TRIPLE, _tamper(trace, 1, new=W("T02")))
    with pytest.raises(BadStep):
        verify_derivation(TRIPLE, DerivationTrace(trace.start, trace.steps, W("T1")))


def test_unknown_and_cyclic_lemmas():
    trace = DerivationTrace(W("T1 T0 T1"), [], W("T1 T0 T1"))
    lem = Lemma("a", W("T1"), W("T1"), frozenset({"b"}))
    lem_b = Lemma("b", W("T1"), W("T1"), frozenset({"a"}))
    with pytest.raises(graphlib.CycleError):
        check_acyclic({"a": lem, "b": lem_b})
    step_trace = equal_modulo(ARTIN, "T1 T0 T1", "T0 T1 T0").trace
    fake = DerivationTrace(step_trace.start, [dataclasses.replace(step_trace.steps[0], rule_id="lemma:ghost")],
                           step_trace.end)
    with pytest.raises(BadStep):
        verify_derivation(ARTIN, fake)
    with pytest.raises(BadStep):
        verify_derivation(ARTIN, trace, {"a": lem, "b": lem_b}, name="a")


def test_jsonl_round_trip():
    trace = equal_modulo(TRIPLE, "T1 T01 T02 T1 T02", "T02 T1 T01 T02 T1").trace
    back, head = DerivationTrace.from_jsonl(trace.to_jsonl({"name": "x"}))
    assert back == trace and head["name"] == "x"


@pytest.mark.parametrize("name", list(library.DERIVATIONS))
def test_shipped_fixture_replays(name):
    assert library.replay(name)
    ok, why = library.weyl_check(name)
    assert ok, why


@pytest.mark.parametrize("name", list(library.DERIVATIONS))
def test_fixture_regenerates_identically(name):
    d = library.DERIVATIONS[name]
    assert library.build(name).to_jsonl(library.header(d)) == library.fixture_path(name).read_text()


def test_lemma_library_is_acyclic():
    order = check_acyclic(library.library())
    assert order.index("double_bond_commutation") < order.index("twisted_generator_double_lace")


words = st.lists(st.integers(0, 9), max_size=14).map(bytes)


@pytest.mark.skipif(_kernel_c is None, reason="compiled kernel not built")
@given(words)
def test_kernels_agree(word):
    system = RewriteSystem(TRIPLE)
    assert _kernel_c.free_reduce(word) == _kernel_py.free_reduce(word)
    w = _kernel_py.free_reduce(word)
    assert _kernel_c.expand(w, system._index, len(w) + 6) == _kernel_py.expand(w, system._index, len(w) + 6)


@given(words)
def test_expansions_are_legal_steps(word):
    system = RewriteSystem(TRIPLE)
    w = system.decode(_kernel_py.free_reduce(word))
    for rule, _, new in system.neighbors(w, len(w) + 4)[:30]:
        step = system.diff_step(w, new, rule)
        assert step is not None and step.word == new


def test_pure_flag_forces_python_backend():
    code = "from triplegroups.rewriting import BACKEND; print(BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env={**os.environ, "TRIPLEGROUPS_PURE": "1"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"

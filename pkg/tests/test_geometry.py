from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from triplegroups.errors import IsotropicRoot
from triplegroups.geometry import TildeRoot, VectorV, space_for
from triplegroups.rootsys import LatticeVector, load_catalog

A2 = load_catalog("A2~1")
SP = space_for(A2)


def apply(m, v: VectorV) -> VectorV:
    return VectorV.from_coords(m.apply(v.coords))


def test_pairings_of_the_extra_directions():
    assert SP.form(SP.lambda1, SP.delta1) == 1
    assert SP.form(SP.lambda2, SP.delta2) == 1
    assert SP.form(SP.lambda1, SP.delta2) == 0
    assert SP.form(SP.lambda1, SP.lambda2) == 0
    assert SP.form(SP.delta1, SP.delta2) == 0
    x = SP.delta1 + SP.alpha(1)
    y = SP.delta2 + SP.alpha(1)
    assert SP.form(x, y) == 2


def test_tilde_roots():
    a1 = A2.simple(1)
    assert SP.in_tilde_r(TildeRoot(a1, 3, -1))
    a4 = load_catalog("A4~2")
    sp4 = space_for(a4)
    long_root = next(r for r in a4.finite_roots if a4.is_long(r))
    assert not sp4.in_tilde_r(TildeRoot(long_root, 1, 0))
    assert sp4.in_tilde_r(TildeRoot(long_root, a4.r, 0))
    a22 = load_catalog("A2~2")
    sp22 = space_for(a22)
    long22 = next(r for r in a22.finite_roots if a22.is_long(r))
    half = Fraction(1, 2)
    assert sp22.in_tilde_r(TildeRoot(long22 * half, half, half))


def test_reflection_basics():
    s1 = SP.reflect(SP.alpha(1))
    assert apply(s1, SP.alpha(1)) == -SP.alpha(1)
    assert (s1 @ s1).is_identity()
    with pytest.raises(IsotropicRoot):
        SP.reflect(SP.delta1)


def test_affine_reflection_on_lambda1():
    root = SP.affine_root(1, 0)  # delta1 - theta
    m = SP.reflect(root)
    l1 = SP.lambda1
    # (L1, d1 - theta) = 1 and |d1 - theta|^2 = 2
    assert apply(m, l1) == l1 - root
    assert m == SP.generator_matrix("s01")


def test_generator_matrices():
    assert apply(SP.generator_matrix("tau"), SP.lambda1) == SP.lambda1 - SP.delta2
    assert apply(SP.generator_matrix("tau"), SP.delta1) == SP.delta1
    for g in SP.generator_ids:
        m = SP.generator_matrix(g)
        assert SP.preserves_form(m)
        if g != "tau":
            assert (m @ m).is_identity()


def test_translations():
    a1 = A2.simple(1)
    lam = SP.translation_matrix("lambda", a1)
    tau = SP.translation_matrix("tau", a1)
    assert apply(lam, SP.delta1) == SP.delta1
    assert apply(lam, SP.lambda1) == SP.lambda1 + SP.alpha(1) - SP.delta1
    assert apply(tau, SP.lambda1) == SP.lambda1
    assert SP.preserves_form(lam) and SP.preserves_form(tau)


coeff = st.integers(-3, 3)


@given(st.sampled_from(["A2~1", "A4~2", "D4~1", "A2~2"]), st.lists(coeff, min_size=8, max_size=8))
def test_reflections_preserve_the_form(type_id, cs):
    data = load_catalog(type_id)
    sp = space_for(data)
    root = sp.embed(data.simple(1), cs[0], cs[1])
    m = sp.reflect(root)
    assert sp.preserves_form(m)
    assert (m @ m).is_identity()
    x = VectorV.from_coords([Fraction(c) for c in cs[: sp.dim]] + [0] * (sp.dim - min(sp.dim, 8)))
    assert sp.form(apply(m, x), apply(m, x)) == sp.form(x, x)

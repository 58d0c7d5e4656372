from fractions import Fraction

import pytest

from triplegroups import root_system
from triplegroups.errors import ExcludedType, UnknownType
from triplegroups.exact import nullspace, primitive_integer
from triplegroups.rootsys import (
    DEFAULT_CATALOG,
    GATED_CATALOG,
    LatticeMode,
    LatticeVector,
    catalog_ids,
    load_catalog,
)


def kernel(rows):
    (v,) = nullspace(rows)
    v = primitive_integer(v)
    return v if v[0] > 0 else tuple(-x for x in v)


@pytest.mark.parametrize("type_id", catalog_ids(include_gated=True))
def test_marks_are_minimal_kernel_vectors(type_id):
    data = load_catalog(type_id)
    A = data.cartan
    At = [list(col) for col in zip(*A)]
    assert data.marks == kernel(A)
    assert data.comarks == kernel(At)
    assert all(sum(a * m for a, m in zip(row, data.marks)) == 0 for row in A)
    assert all(m > 0 for m in data.marks + data.comarks)


def test_a2_basics():
    data = load_catalog("A2~1")
    assert data.marks == (1, 1, 1)
    assert all(d == 1 for d in data.d)
    assert data.l0 == 1
    a1, a2 = data.simple(1), data.simple(2)
    assert data.bilinear(a1, a1) == 2
    assert data.bilinear(a1, a2) == -1
    assert data.theta == a1 + a2


def test_null_root_is_radical():
    for type_id in ("A2~1", "D4~1", "A4~2", "E6~1"):
        data = load_catalog(type_id)
        delta = LatticeVector.null_root(data.n)
        for j in range(1, data.n + 1):
            assert data.bilinear(delta, data.simple(j)) == 0


def test_twisted_even_uses_weight_lattice():
    data = load_catalog("A2~2")
    assert data.lattice_mode is LatticeMode.WEIGHT
    assert data.l0 == 2
    assert data.theta == data.simple(1) * data.marks[1]
    assert load_catalog("A4~2").l0 == 2
    assert load_catalog("A3~1").lattice_mode is LatticeMode.ROOT


def test_theta_has_marks_as_coefficients():
    data = load_catalog("D4~1")
    assert data.theta.coords == tuple(Fraction(m) for m in data.marks[1:])


@pytest.mark.parametrize("bad", ["B3~1", "C3~1", "F4~1", "G2~1", "A1~1"])
def test_excluded_types(bad):
    with pytest.raises(ExcludedType):
        load_catalog(bad)


@pytest.mark.parametrize("bad", ["Z2~1", "A2", "E9~1", "A2~4", ""])
def test_unknown_types(bad):
    with pytest.raises(UnknownType):
        load_catalog(bad)


def test_catalog_listing():
    ids = catalog_ids()
    assert ids == list(DEFAULT_CATALOG)
    assert not set(GATED_CATALOG) & set(ids)
    assert set(GATED_CATALOG) <= set(catalog_ids(include_gated=True))
    assert len(set(ids)) == len(ids)


def test_root_system_alias():
    assert root_system.load_catalog is load_catalog

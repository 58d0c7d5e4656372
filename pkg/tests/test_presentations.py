import pytest

from triplegroups.errors import UnknownGenerator, UnsupportedKind
from triplegroups.presentations import (
    KINDS,
    Assignment,
    Presentation,
    Relation,
    canonical_assignment,
    check_iso_on_generators,
    corrupt,
    phi_map,
    presentation_of,
    psi_map,
    verify,
)
from triplegroups.rootsys import load_catalog
from triplegroups.words import Word

GOOD_TYPES = ["A2~1", "A3~1", "D4~1", "A4~2", "B3~2", "E6~1"]


def test_finite_coxeter_a2():
    P = presentation_of("coxeter_finite", "A2~1")
    rels = {(str(r.lhs), str(r.rhs)) for r in P.relations}
    assert rels == {("s1 s1", "1"), ("s2 s2", "1"), ("s1 s2 s1", "s2 s1 s2")}


def test_triple_family_size():
    P = presentation_of("triple", "A2~1", 2)
    family = [t for t in P.tags() if t.startswith("family:")]
    # five conjugated elements, k from -2 to 2
    assert len(family) == 5 * 5
    assert presentation_of("triple", "A2~1", 2) == P


def test_wellbraid_present_for_double_lace():
    P = presentation_of("daw", "A4~2")
    rel = P.relation("wellbraid")
    assert str(rel) == "s01 s1 s03 s1 = s1 s03 s1 s01"
    assert "wellbraid" not in presentation_of("daw", "A2~1").tags()


@pytest.mark.parametrize("type_id", GOOD_TYPES)
@pytest.mark.parametrize("kind", KINDS)
def test_every_kind_holds_at_weyl_level(type_id, kind):
    report = verify(presentation_of(kind, type_id, 1))
    assert report.passed, [c.to_json() for c in report.failures()][:3]


def test_a2_twisted_double_lace_relations_fail():
    # four laces between the affine node and its neighbour: no double-lace relation holds
    report = verify(presentation_of("daw", "A2~2"))
    assert {c.id.split("[")[0] for c in report.failures()} == {"wellbraid"}


def test_wrong_assignment_gives_witness():
    P = presentation_of("coxeter_finite", "A2~1")
    A = canonical_assignment("A2~1")
    G = A.group
    images = dict(A.images, s1=G.lam(G.data.simple(1)))
    report = verify(P, Assignment(G, images))
    bad = [c for c in report.failures() if c.id.startswith("order:s1")]
    assert bad and all(c.witness for c in bad)


def test_assignment_must_be_total():
    P = Presentation("custom", "A2~1", ("q",), ())
    with pytest.raises(UnknownGenerator):
        verify(P)
    with pytest.raises(UnknownGenerator):
        Presentation("custom", "A2~1", ("a",), (Relation(Word.parse("b"), Word(), "r"),))


def test_unknown_kind():
    with pytest.raises(UnsupportedKind):
        presentation_of("nonsense", "A2~1")


@pytest.mark.parametrize("kind", ["daw", "triple", "cherednik"])
def test_text_and_json_round_trip(kind):
    P = presentation_of(kind, "A4~2", 1)
    assert Presentation.from_text(P.to_text()) == P
    assert Presentation.from_json(P.to_json()) == P


@pytest.mark.parametrize("type_id,how", [("A4~2", "drop_factor"), ("A2~1", "wrong_order"), ("D4~1", "auto")])
def test_corrupted_relation_fails_with_matrix_witness(type_id, how):
    P, tag = corrupt(presentation_of("daw", type_id), how)
    report = verify(P, mode="matrix")
    failed = [c for c in report.failures() if c.id.startswith(tag)]
    assert failed and failed[0].witness["row"] is not None


@pytest.mark.parametrize("type_id", GOOD_TYPES)
def test_isomorphism_on_generators(type_id):
    data = load_catalog(type_id)
    P1, P2 = presentation_of("atilde", data, 1), presentation_of("cherednik", data, 1)
    report = check_iso_on_generators(phi_map(data), psi_map(data), P1, P2, free_checks=False)
    assert report.passed, [c.id for c in report.failures()]


def test_identity_maps_are_isomorphisms():
    P = presentation_of("daw", "A2~1")
    ident = {g: Word.gen(g) for g in P.generators}
    assert check_iso_on_generators(ident, ident, P, P).passed

import pytest

from wgraphalg.coxeter import coxeter_from_document, parse_coxeter
from wgraphalg.decomp import (Certificate, a1_certificate, a2_certificate, builtin_certificate, corner_rank,
                              cover_relations, filtration_check, ht, search_certificate, transitive_closure,
                              trivial_certificate, verify_certificate)
from wgraphalg.errors import ValidationError
from wgraphalg.formats import certificate_from_document, certificate_to_document
from wgraphalg.omega import build_oracle, mult_table
from wgraphalg.paths import OmegaElement


def _reversed_a1():
    W = parse_coxeter("A1")
    c = a1_certificate(W)
    return W, Certificate(W, c.labels, c.degrees, c.elements, frozenset({("triv", "sign")}))


def _statuses(rep):
    return {c.name: c.status for c in rep.checks}


def test_a1_certificate_passes_everything():
    W = parse_coxeter("A1")
    c = a1_certificate(W)
    rep = verify_certificate(W, c)
    assert set(_statuses(rep).values()) == {"PASS"}
    assert c.verified and rep.exit_code() == 0


def test_reversed_order_fails_z3_with_a_module_witness():
    W, bad = _reversed_a1()
    rep = verify_certificate(W, bad)
    st = _statuses(rep)
    assert st["Z3"] == "FAIL"
    assert all(v == "PASS" for k, v in st.items() if k != "Z3")
    assert any("nonzero on regular" in d for d in rep.get("Z3").details)
    assert rep.exit_code() == 1


def test_a2_builtin_certificate():
    W = parse_coxeter("A2")
    c = a2_certificate(W)
    rep = verify_certificate(W, c)
    assert rep.status == "PASS"
    assert ht(c) == 3
    assert cover_relations(c) == [("refl", "triv"), ("sign", "refl")]


def test_trivial_certificate():
    W0 = coxeter_from_document({"generators": [], "matrix": []})
    c = trivial_certificate(W0)
    assert verify_certificate(W0, c).status == "PASS"
    assert ht(c) == 1


def test_degrees_must_cover_the_group():
    W = parse_coxeter("A1")
    with pytest.raises(ValidationError):
        search_certificate(W, mult_table(W), {"a": 2})


def test_wrong_degree_is_not_a_pass():
    W = parse_coxeter("A1")
    c = a1_certificate(W)
    wrong = Certificate(W, c.labels, {"sign": 2, "triv": 1}, c.elements, c.order)
    rep = verify_certificate(W, wrong)
    assert rep.get("Z4").status != "PASS"
    assert any("warning" in line for line in rep.body)


def test_incomplete_family_fails_z1():
    W = parse_coxeter("A1")
    Q = a1_certificate(W).elements["sign"].quiver
    c = Certificate(W, ("sign",), {"sign": 1}, {"sign": OmegaElement.vertex(Q, 1)})
    assert verify_certificate(W, c).get("Z1").status == "FAIL"


def test_certificate_validation():
    W = parse_coxeter("A1")
    c = a1_certificate(W)
    with pytest.raises(ValidationError):
        Certificate(W, c.labels, {"sign": 1}, c.elements)
    with pytest.raises(ValidationError):
        Certificate(W, c.labels, c.degrees, c.elements, frozenset({("sign", "nope")}))
    with pytest.raises(ValidationError):
        Certificate(W, c.labels, c.degrees, c.elements, frozenset({("sign", "triv"), ("triv", "sign")}))


def test_transitive_closure_and_covers():
    assert transitive_closure({(1, 2), (2, 3)}) == {(1, 2), (2, 3), (1, 3)}
    c = builtin_certificate(parse_coxeter("A1xA1"))
    assert len(cover_relations(c)) == 4 and len(c.order) == 5


def test_corner_rank_a2():
    W = parse_coxeter("A2")
    c = a2_certificate(W)
    o = build_oracle(W, 6)
    Q = o.quiver
    assert [corner_rank(Q, o, c.elements[a]) for a in ("sign", "refl", "triv")] == [1, 4, 1]


def test_search_a2_finds_the_builtin_order():
    W = parse_coxeter("A2")
    found = search_certificate(W, mult_table(W), {"triv": 1, "sign": 1, "refl": 2})
    assert isinstance(found, Certificate)
    builtin = a2_certificate(W)
    assert found.order == builtin.order
    assert all(found.elements[a] == builtin.elements[a] for a in found.labels)
    assert found.notes and "kept one with 3 order relations" in found.notes[0]
    assert verify_certificate(W, found).status == "PASS"


def test_search_can_fail():
    W = parse_coxeter("B2")
    out = search_certificate(W, mult_table(W, L=8), {"triv": 1, "sign": 1, "h1": 1, "h2": 1, "refl": 2})
    assert out == "no certificate built from vertex idempotents"


@pytest.mark.parametrize("name", ["A1", "A2", "A1xA1", "A2xA1"])
def test_filtration_holds_for_builtin_certificates(name):
    W = parse_coxeter(name)
    assert filtration_check(W, builtin_certificate(W)).status == "PASS"


def test_filtration_fails_for_reversed_order():
    W, bad = _reversed_a1()
    rep = filtration_check(W, bad)
    assert rep.status == "FAIL"
    assert any("regular" in d for d in rep.get("filtration").details)


@pytest.mark.parametrize("name", ["A1", "A2", "A1xA1"])
def test_document_round_trip(name):
    W = parse_coxeter(name)
    c = builtin_certificate(W)
    back = certificate_from_document(certificate_to_document(c))
    assert back.labels == c.labels and back.degrees == c.degrees and back.order == c.order
    assert all(back.elements[a].terms == c.elements[a].terms for a in c.labels)


def test_relabel_keeps_structure():
    W = parse_coxeter("A2")
    c = a2_certificate(W)
    r = c.relabel({"sign": "a", "refl": "b", "triv": "c"})
    assert r.order == frozenset({("a", "b"), ("b", "c"), ("a", "c")})
    assert verify_certificate(W, r).status == "PASS"


def test_no_builtin_for_b2():
    with pytest.raises(ValidationError):
        builtin_certificate(parse_coxeter("B2"))

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wgraphalg.coxeter import parse_coxeter
from wgraphalg.errors import ParseError
from wgraphalg.expr import format_expression, parse_expression, parse_field_element, parse_scalar, tokenize
from wgraphalg.freealg import FreeElement, iota_T
from wgraphalg.hecke import generator
from wgraphalg.paths import OmegaElement, format_element
from wgraphalg.quiver import build_compatibility_graph
from wgraphalg.scalar import LaurentPoly, make_field

W = parse_coxeter("A2")
Q = build_compatibility_graph(W)


def test_tokens_carry_positions():
    toks = tokenize("2*v^-1 + E{s1}")
    assert toks[0] == ("num", "2", 0)
    assert ("name", "E", 9) in toks
    assert toks[-1] == ("end", "", 14)


def test_scalars():
    assert parse_scalar("1/2 + 3/2") == 2
    assert parse_scalar("(v + v^-1)^2") == LaurentPoly.v(2) + 2 + LaurentPoly.v(-2)
    assert parse_scalar("v^-2 * v^2") == 1
    assert parse_scalar("-(2)") == -2


def test_theta_lives_in_the_field():
    F = make_field([5])
    phi = parse_scalar("theta", field=F)
    assert phi * phi == phi + 1
    assert parse_field_element("theta^2 - theta", F) == F.element((Fraction(1),))
    with pytest.raises(ParseError):
        parse_field_element("v", F)


def test_omega_generators():
    e = parse_expression("e_s1", W)
    assert e == OmegaElement.vertex(Q, 0b01) + OmegaElement.vertex(Q, 0b11)
    x = parse_expression("X{s1}->{s2}", W, quiver=Q)
    assert set(x.terms) == {(0b01, 0, 0b10)}
    lab = parse_expression("X{s1,s2}->{}^s2", W, quiver=Q)
    assert set(lab.terms) == {(0b11, 1, 0b00)}
    assert parse_expression("1", W, quiver=Q) == OmegaElement.unit(Q)


def test_free_and_hecke_domains():
    assert parse_expression("T_s1", W, domain="free") == iota_T(W, "s1")
    assert parse_expression("e_s1*x_s2", W, domain="free") == FreeElement.e(W, 0) * FreeElement.x(W, 1)
    h = parse_expression("T_s1 * T_s1", W, domain="hecke")
    T = generator(W, 0)
    assert h == T * (LaurentPoly.v(1) - LaurentPoly.v(-1)) + 1


def test_labels():
    F = {"a": OmegaElement.vertex(Q, 0)}
    assert parse_expression("F{a} * E{}", W, quiver=Q, labels=F) == F["a"]


@pytest.mark.parametrize("text, pos", [
    ("1 +", 3), ("E{s9}", 2), ("X{s1}->{s1}", 0), ("X{s1}->{}^s2", 10), ("v^x", 2),
    ("(1", 2), ("1 )", 2), ("#", 0), ("F{b}", 2), ("e_s1^-1", 6), ("q", 0),
])
def test_error_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_expression(text, W, quiver=Q, labels={})
    assert err.value.position == pos


def test_domain_restrictions():
    with pytest.raises(ParseError):
        parse_expression("E{s1}", W, domain="free")
    with pytest.raises(ParseError):
        parse_expression("e_s1", W, domain="hecke")
    with pytest.raises(ParseError):
        parse_scalar("T_s1")
    with pytest.raises(ValueError):
        parse_expression("1", W, domain="nope")


_path = st.sampled_from([p for p in Q.paths_between(0b11, 0b00, 3)] + [p for p in Q.paths_between(0b01, 0b01, 2)])
_coef = st.sampled_from([Fraction(1), Fraction(-2), Fraction(3, 4), LaurentPoly.v(1) - LaurentPoly.v(-3)])


@settings(max_examples=200, deadline=None)
@given(st.dictionaries(_path, _coef, max_size=5))
def test_format_parse_round_trip(terms):
    e = OmegaElement(Q, terms)
    text = format_element(e)
    assert parse_expression(text, W, quiver=Q) == e
    assert format_expression(e) == text


def test_format_expression_scalars():
    assert format_expression(Fraction(3, 2)) == "3/2"
    assert format_expression(5) == "5"

from pathlib import Path

import pytest
import sympy

from wgraphalg.coxeter import parse_coxeter
from wgraphalg.errors import BoundError
from wgraphalg.formats import dump_relations, parse_relation_dump
from wgraphalg.omega import (BRAID, ClosureFailure, build_oracle, cross_validate, mult_table, path_sum_P, relations, saturate,
                             tau_coeffs)
from wgraphalg.paths import OmegaElement
from wgraphalg.quiver import build_compatibility_graph

GOLDEN = Path(__file__).parent / "golden"


@pytest.mark.parametrize("r", range(0, 12))
def test_tau_matches_chebyshev_second_kind(r):
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.expand(sympy.chebyshevu(r, x / 2)), x)
    expected = [poly.coeff_monomial(x ** k) for k in range(r + 1)]
    assert tau_coeffs(r) == expected


def test_tau_edge_cases():
    assert tau_coeffs(-1) == []
    with pytest.raises(ValueError):
        tau_coeffs(-2)


@pytest.mark.parametrize("name, closed, braid", [
    ("A1", 0, 0), ("A2", 5, 5), ("B2", 6, 7), ("I2(5)", 7, 9), ("I2(6)", 8, 11), ("A1xA1", 2, 3), ("A3", 46, 13)])
def test_relation_counts(name, closed, braid):
    W = parse_coxeter(name)
    assert len(relations(W)) == closed
    assert len(relations(W, source=BRAID)) == braid


@pytest.mark.parametrize("name, file", [
    ("A1", "relations_A1.txt"), ("A2", "relations_A2.txt"),
    ("I2(5)", "relations_I25.txt"), ("A1xA1", "relations_A1xA1.txt")])
def test_relation_dump_golden(name, file):
    W = parse_coxeter(name)
    Q = build_compatibility_graph(W)
    rels = relations(W, Q)
    text = (GOLDEN / file).read_text()
    assert dump_relations(rels) == text
    parsed = parse_relation_dump(text, W, Q)
    assert [t for t, _ in parsed] == [r.label() for r in rels]
    assert all(e == r.element for (_, e), r in zip(parsed, rels))


def test_path_sum_counts_alternating_walks():
    W = parse_coxeter("A2")
    Q = build_compatibility_graph(W)
    assert path_sum_P(Q, 0b01, 0b01, 0, 0, 1) == OmegaElement.vertex(Q, 0b01)
    assert not path_sum_P(Q, 0b01, 0b10, 0, 0, 1)
    assert set(path_sum_P(Q, 0b01, 0b01, 2, 0, 1).terms) == {(0b01, 0, 0b10, 1, 0b01)}
    assert not path_sum_P(Q, 0b10, 0b01, 1, 0, 1)   # s1 not in the start


@pytest.mark.parametrize("name, L, dim", [
    ("A1", 6, 3), ("A1xA1", 6, 10), ("A2", 6, 17), ("B2", 8, 24), ("I2(5)", 10, 31), ("I2(6)", 12, 38)])
def test_table_dimensions(name, L, dim):
    ct = mult_table(parse_coxeter(name), L=L)
    assert not isinstance(ct, ClosureFailure)
    assert ct.dimension == dim
    assert ct.associative
    assert ct.is_representation(relations(parse_coxeter(name), ct.quiver))


def test_dihedral_dimensions_grow_linearly_in_m():
    dims = {m: mult_table(parse_coxeter(f"I2({m})"), L=2 * m).dimension for m in range(3, 7)}
    assert [dims[m] for m in range(3, 7)] == [7 * m - 4 for m in range(3, 7)]


def test_closure_failure_is_reported():
    out = mult_table(parse_coxeter("I2(6)"), L=6)
    assert isinstance(out, ClosureFailure)
    assert out.bound == 6 and out.escapes
    assert "closure failure at L=6" in str(out)


def test_bound_below_relation_length():
    W = parse_coxeter("I2(5)")
    with pytest.raises(BoundError):
        saturate(W, relations(W), L=2)


def test_reduce_rejects_long_elements():
    W = parse_coxeter("A2")
    o = saturate(W, relations(W), L=3)
    Q = o.quiver
    p = (0b01, 0, 0b10, 1, 0b01, 0, 0b10, 1, 0b01)
    with pytest.raises(BoundError):
        o.reduce(OmegaElement.from_path(Q, p))


@pytest.mark.parametrize("name", ["A2", "B2"])
def test_relations_and_their_multiples_reduce_to_zero(name):
    W = parse_coxeter(name)
    Q = build_compatibility_graph(W)
    rels = relations(W, Q)
    o = saturate(W, rels, L=8, quiver=Q)
    for r in rels:
        assert o.reduce(r.element) == (OmegaElement(Q), "zero")
        for s, I, J in list(Q.arrows())[:4]:
            a = OmegaElement.arrow(Q, I, J, s)
            assert o.is_zero(a * r.element) and o.is_zero(r.element * a)


def test_lazy_and_eager_saturation_agree():
    W = parse_coxeter("B2")
    Q = build_compatibility_graph(W)
    rels = relations(W, Q)
    lazy = saturate(W, rels, L=6, quiver=Q)
    eager = saturate(W, rels, L=6, quiver=Q, lazy=False)
    for I, s, J in Q.arrows():
        for K, t, M in Q.arrows():
            if J == K:
                e = OmegaElement.from_path(Q, (I, s, J, t, M))
                assert lazy.normal_form(e) == eager.normal_form(e)


def test_unit_is_nonzero_at_bound():
    W = parse_coxeter("A2")
    o = saturate(W, relations(W), L=4)
    nf, verdict = o.reduce(OmegaElement.unit(o.quiver))
    assert verdict == "nonzero-at-bound" and nf == OmegaElement.unit(o.quiver)


@pytest.mark.parametrize("name", ["A2", "B2", "I2(5)"])
def test_literal_alpha_parity_misses_braid_relations(name):
    W = parse_coxeter(name)
    Q = build_compatibility_graph(W)
    lit = relations(W, Q, alpha_parity="literal")
    o = saturate(W, lit, L=8, quiver=Q)
    assert not all(o.is_zero(r.element) for r in relations(W, Q, source=BRAID))
    assert all(c.status == "PASS" for c in cross_validate(W, L=8).checks)


def test_unknown_source_and_parity():
    W = parse_coxeter("A2")
    with pytest.raises(ValueError):
        relations(W, source="nope")
    with pytest.raises(ValueError):
        relations(W, alpha_parity="nope")


def test_table_evaluate_and_coords_agree():
    W = parse_coxeter("A2")
    ct = mult_table(W, L=6)
    Q = ct.quiver
    x = OmegaElement.arrow(Q, 0b01, 0b10, 0)
    y = OmegaElement.arrow(Q, 0b10, 0b01, 1)
    assert ct.evaluate(x * y) == ct.coords(x * y)
    assert ct.coords(x * y) == ct.coords(OmegaElement.vertex(Q, 0b01))
    assert ct.witnesses_nonzero(x) and not ct.witnesses_nonzero(OmegaElement(Q))
    assert ct.element(ct.coords(x)) == ct.oracle.normal_form(x)
    assert ct.multiply_coords(ct.identity_coords(), ct.coords(x)) == ct.coords(x)


@pytest.mark.parametrize("name, extra", [("A1xA1", 2), ("A2xA1", 17), ("A3", 10), ("B3", 10)])
def test_arrows_across_commuting_generators_vanish(name, extra):
    # on the complete quiver, the braid relations kill every arrow that Q_W leaves out
    W = parse_coxeter(name)
    o = build_oracle(W, 6, BRAID, complete=True)
    Q = build_compatibility_graph(W)
    missing = [(I, s, J) for I, s, J in o.quiver.arrows() if (I, J) not in Q.edges]
    assert len(missing) == extra
    assert all(o.is_zero(OmegaElement.arrow(o.quiver, I, J, s)) for I, s, J in missing)

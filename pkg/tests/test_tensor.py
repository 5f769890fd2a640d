import random
from fractions import Fraction

import pytest

from wgraphalg.coxeter import CoxeterSystem, coxeter_from_document, parse_coxeter
from wgraphalg.decomp import a1_certificate, builtin_certificate, ht, verify_certificate
from wgraphalg.errors import NotAProductError, UnverifiedCertificateError, WGraphAlgError
from wgraphalg.omega import build_oracle
from wgraphalg.paths import OmegaElement
from wgraphalg.tensor import (TensorElement, check_psi_commutation, check_tau_hecke, check_tau_psi_onto,
                              cross_commutator_check, kernel_generators, nilpotency_check, parabolic_embed, product_certificate,
                              product_context, reduce_tensor, factor_oracles, tau_map, tau_path, tensor_unit,
                              verify_kernel)


@pytest.fixture(scope="module")
def a1a1():
    return product_context(parse_coxeter("A1xA1"))


def test_parabolic_embed_vertex(a1a1):
    Q1, Q2 = a1a1.Qs
    Q = a1a1.Q
    img = parabolic_embed(a1a1, 0, OmegaElement.vertex(Q1, 1))
    assert img == OmegaElement.vertex(Q, 0b01) + OmegaElement.vertex(Q, 0b11)
    img = parabolic_embed(a1a1, 1, OmegaElement.vertex(Q2, 0))
    assert img == OmegaElement.vertex(Q, 0b00) + OmegaElement.vertex(Q, 0b01)


def test_parabolic_embed_arrow_is_pruned(a1a1):
    Q1 = a1a1.Qs[0]
    img = parabolic_embed(a1a1, 0, OmegaElement.arrow(Q1, 1, 0, 0))
    # {s1} -> {t1} is not an edge since s1 and t1 commute
    assert set(img.terms) == {(0b01, 0, 0b00), (0b11, 0, 0b00), (0b11, 0, 0b10)}


def test_parabolic_embed_of_unit_is_unit(a1a1):
    for which in (0, 1):
        assert parabolic_embed(a1a1, which, OmegaElement.unit(a1a1.Qs[which])) == OmegaElement.unit(a1a1.Q)


def test_parabolic_embed_rejects_foreign_elements(a1a1):
    with pytest.raises(WGraphAlgError):
        parabolic_embed(a1a1, 0, OmegaElement.unit(a1a1.Qs[1]))


def test_tau_examples(a1a1):
    Q = a1a1.Q
    assert tau_path(a1a1, (0b11, 0, 0b10)) == ((1, 0, 0), (1,))
    assert tau_path(a1a1, (0b11, 0, 0b00)) is None        # second factor changes along an s1 arrow
    assert tau_map(a1a1, OmegaElement.unit(Q)) == tensor_unit(a1a1)


@pytest.mark.parametrize("name", ["A1xA1", "A2xA1"])
def test_tau_is_multiplicative(name):
    ctx = product_context(parse_coxeter(name))
    Q = ctx.Q
    arrows = list(Q.arrows())
    rng = random.Random(7)

    def rand_elem():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            I, s, J = rng.choice(arrows)
            path = (I, s, J)
            if rng.random() < 0.5:
                nxt = [a for a in arrows if a[0] == J]
                if nxt:
                    _, t, K = rng.choice(nxt)
                    path += (t, K)
            terms[path] = Fraction(rng.randint(-3, 3))
        if rng.random() < 0.3:
            terms[(rng.choice(Q.vertices),)] = Fraction(1)
        return OmegaElement(Q, terms)

    for _ in range(100):
        a, b = rand_elem(), rand_elem()
        assert tau_map(ctx, a * b) == tau_map(ctx, a) * tau_map(ctx, b)
        assert tau_map(ctx, a + b) == tau_map(ctx, a) + tau_map(ctx, b)


@pytest.mark.parametrize("name", ["A1xA1", "A2xA1", "A2xA2"])
def test_tau_sanity_checks(name):
    W = parse_coxeter(name)
    assert check_tau_hecke(W)
    assert check_tau_psi_onto(W)


def test_kernel_generators():
    assert kernel_generators(parse_coxeter("A1xA1")) == [(0b11, 0b00)]
    assert kernel_generators(parse_coxeter("A2xA1")) == [(5, 0), (6, 0), (7, 0), (7, 1), (7, 2)]


@pytest.mark.parametrize("name", ["A1xA1", "A2xA1"])
def test_verify_kernel_passes(name):
    rep = verify_kernel(parse_coxeter(name))
    assert rep.status == "PASS"
    assert [c.name for c in rep.checks] == ["kernel-edges", "commutators-in-kernel-ideal", "commutator-cases"]


def test_reduce_tensor_of_a_relation(a1a1):
    oracles = factor_oracles(a1a1, 6)
    unit = tensor_unit(a1a1)
    assert reduce_tensor(unit, oracles)[1] == "nonzero-at-bound"
    assert reduce_tensor(unit - unit, oracles) == (TensorElement(a1a1), "zero")


def test_psi_commutation_small():
    rep = check_psi_commutation(parse_coxeter("A2xA1"))
    assert rep.status == "PASS"


def test_not_a_product():
    with pytest.raises(NotAProductError):
        product_context(parse_coxeter("A1"))
    with pytest.raises(NotAProductError):
        verify_kernel(parse_coxeter("A2"))


def test_trivial_factor_collapses():
    W0 = coxeter_from_document({"generators": [], "matrix": []})
    W = CoxeterSystem.direct_product(W0, parse_coxeter("A1"))
    assert W.rank == 1 and not W.is_product


def _verified(W):
    c = builtin_certificate(W)
    verify_certificate(W, c)
    return c


def test_product_certificate_requires_verification():
    W = parse_coxeter("A1")
    with pytest.raises(UnverifiedCertificateError):
        product_certificate(a1_certificate(W), a1_certificate(W))


def test_product_certificate_shape():
    W = parse_coxeter("A2xA1")
    c2, c1 = _verified(parse_coxeter("A2")), _verified(parse_coxeter("A1"))
    pc = product_certificate(c2, c1, W)
    assert len(pc.labels) == 6
    assert pc.degrees["refl.sign"] == 2
    assert sum(d * d for d in pc.degrees.values()) == 12
    assert pc.leq("sign.sign", "triv.triv") and not pc.leq("triv.sign", "sign.triv")
    assert ht(pc) == 4
    # with no ambient system the clashing names of the second factor are renamed
    auto = product_certificate(c1, c1)
    assert auto.system.rank == 2 and len(set(auto.system.generators)) == 2


def test_product_certificate_with_trivial_factor():
    W0 = coxeter_from_document({"generators": [], "matrix": []})
    c0 = _verified(W0)
    c1 = _verified(parse_coxeter("A1"))
    out = product_certificate(c0, c1)
    assert out.labels == ("triv.sign", "triv.triv")


@pytest.mark.parametrize("name, body", [
    ("A1xA1", "8 commutator sandwiches, 0 identity pairs"),
    ("A1xA2", "72 commutator sandwiches, 24 identity pairs"),
])
def test_cross_commutator_counts(name, body):
    W = parse_coxeter(name)
    c1, c2 = (_verified(Wi) for Wi in W.factor_systems())
    rep = cross_commutator_check(W, product_certificate(c1, c2, W))
    assert rep.status == "PASS"
    assert rep.body == [body]


def test_nilpotency_a1xa1():
    W = parse_coxeter("A1xA1")
    c = _verified(parse_coxeter("A1"))
    pc = product_certificate(c, c, W)
    rep = nilpotency_check(W, pc, oracle=build_oracle(W, 6))
    assert rep.status == "PASS"
    assert rep.smallest_k == 2
    assert any("degree 3" in line for line in rep.body)

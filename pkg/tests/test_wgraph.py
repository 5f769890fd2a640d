from fractions import Fraction

import pytest

from wgraphalg import matrix as mx
from wgraphalg.coxeter import coxeter_group, parse_coxeter
from wgraphalg.errors import InconsistencyError, ValidationError
from wgraphalg.formats import wgraph_from_document, wgraph_to_document
from wgraphalg.omega import relations
from wgraphalg.paths import OmegaElement
from wgraphalg.quiver import build_compatibility_graph
from wgraphalg.wgraph import (WGraph, apply_element, builtin_wgraphs, dihedral_graph, module_witness, omega_module,
                              regular_graph, sign_graph, tensor_graph, trivial_graph, validate_wgraph)


@pytest.mark.parametrize("name, names", [
    ("A1", ["triv", "sign", "regular"]),
    ("A2", ["triv", "sign", "refl1", "regular"]),
    ("B2", ["triv", "sign", "half_s1", "half_s2", "refl1", "regular"]),
    ("I2(5)", ["triv", "sign", "refl1", "refl2", "regular"]),
])
def test_builtin_corpus(name, names):
    W = parse_coxeter(name)
    graphs = builtin_wgraphs(W)
    assert [g.name for g in graphs] == names
    assert all(validate_wgraph(g).ok for g in graphs)


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "I2(5)", "I2(6)"])
def test_regular_graph_has_group_order_vertices(name):
    W = parse_coxeter(name)
    G = regular_graph(W)
    assert G.dimension == len(coxeter_group(W))
    assert sum(1 for lab in G.labels if lab == W.full_mask) == 1


def test_dimensions_add_up_for_regular_a2():
    # 1 + 1 + 2*2 = 6: the regular graph's trace matches the sum of squares
    W = parse_coxeter("A2")
    dims = {g.name: g.dimension for g in builtin_wgraphs(W)}
    assert dims["triv"] ** 2 + dims["sign"] ** 2 + dims["refl1"] ** 2 == dims["regular"]


def test_condition_a_violation():
    W = parse_coxeter("A2")
    G = dihedral_graph(W, 1).with_weight(0, 1, 0, Fraction(1))
    rep = validate_wgraph(G)
    assert rep.condition_a == [(0, 1, 0)]
    assert not rep.ok
    assert any("condition a" in line for line in rep.lines(W))


def test_wrong_weight_breaks_braid():
    W = parse_coxeter("A2")
    G = dihedral_graph(W, 1).with_weight(0, 0, 1, Fraction(2))
    rep = validate_wgraph(G)
    assert not rep.condition_a and all(rep.quadratic.values())
    assert rep.braid == {(0, 1): False}
    with pytest.raises(InconsistencyError):
        omega_module(G)


def test_coherence_mismatch_detected():
    W = parse_coxeter("A1xA1")
    G = WGraph(W, ("a", "b"), (0b11, 0b00),
               (((0, 1), (0, 0)), ((0, 2), (0, 0))))
    rep = validate_wgraph(G)
    assert rep.coherence == [(0, 1, 0, 1)]


def test_shape_errors():
    W = parse_coxeter("A2")
    with pytest.raises(ValidationError):
        WGraph(W, ("a",), (0, 1), trivial_graph(W).weights)
    with pytest.raises(ValidationError):
        WGraph(W, ("a",), (0,), trivial_graph(W).weights[:1])
    with pytest.raises(ValidationError):
        dihedral_graph(parse_coxeter("A3"), 1)
    with pytest.raises(ValidationError):
        regular_graph(parse_coxeter("A3"))


def test_golden_ratio_weights_in_i2_5():
    W = parse_coxeter("I2(5)")
    c1 = dihedral_graph(W, 1).weights[0][0][1]
    c2 = dihedral_graph(W, 2).weights[0][0][1]
    assert c1 * c1 == c1 + 1           # 2cos(pi/5) is the golden ratio
    assert c2 == c1 - 1 and c1 * c2 == 1


def test_tensor_graph():
    W = parse_coxeter("A2xA1")
    W1, W2 = W.factor_systems()
    G = tensor_graph(dihedral_graph(W1, 1), regular_graph(W2), W)
    assert G.dimension == 4
    assert validate_wgraph(G).ok
    assert sorted(G.labels) == sorted([0b001, 0b101, 0b010, 0b110])


def test_module_relations_and_witness():
    W = parse_coxeter("A2")
    Q = build_compatibility_graph(W)
    modules = [omega_module(g) for g in builtin_wgraphs(W)]
    for M in modules:
        for r in relations(W, Q):
            assert mx.is_zero(apply_element(M, r.element))
    E = OmegaElement.vertex(Q, W.full_mask)
    assert module_witness(E, modules).graph.name == "sign"
    assert module_witness(OmegaElement(Q), modules) is None
    M = modules[2]
    proj = apply_element(M, OmegaElement.vertex(Q, 0b01))
    assert proj == M.vertex_projector(0b01)


def test_document_round_trip():
    W = parse_coxeter("I2(5)")
    for G in builtin_wgraphs(W):
        doc = wgraph_to_document(G)
        H = wgraph_from_document(doc)
        assert H.vertices == G.vertices and H.labels == G.labels and H.weights == G.weights
        assert H.name == G.name


def test_document_errors():
    base = {"coxeter": "A2", "vertices": ["x", "y"], "labels": {"x": ["s1"], "y": ["s2"]},
            "weights": {"s1": [[0, 1], [0, 0]]}}
    assert validate_wgraph(wgraph_from_document(base)).condition_a == []
    for bad in ({**base, "vertices": ["x", "x"]},
                {**base, "labels": {"z": ["s1"]}},
                {**base, "weights": {"s9": [[0]]}},
                {**base, "weights": {"s1": [[0, 1]]}},
                {**base, "weights": {"s1": [[0, 0.5], [0, 0]]}}):
        with pytest.raises(ValidationError):
            wgraph_from_document(bad)


def test_sign_and_trivial_are_one_dimensional():
    W = parse_coxeter("B2")
    assert sign_graph(W).labels == (W.full_mask,)
    assert trivial_graph(W).labels == (0,)

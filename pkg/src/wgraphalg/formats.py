"""Reading and writing the exchange formats: Coxeter, W-graph and certificate JSON,
relation dumps (``TAG | expression`` per line)."""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .coxeter import CoxeterSystem, coxeter_from_document, coxeter_to_document, parse_coxeter
from .errors import ParseError, ValidationError
from .expr import format_expression, parse_expression, parse_field_element, simplify_scalar
from .paths import format_element
from .quiver import build_compatibility_graph


def load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc.msg}", exc.pos) from None


def load_coxeter(source: str) -> CoxeterSystem:
    """A builtin name, inline JSON, or the path of a JSON document (a W-graph or
    certificate file works too, through its ``coxeter`` entry)."""
    if os.path.isfile(source):
        doc = load_json(source)
        if "generators" not in doc and "coxeter" in doc:
            return _coxeter_field(doc["coxeter"])
        return coxeter_from_document(doc)
    return parse_coxeter(source)


def _coxeter_field(value) -> CoxeterSystem:
    if isinstance(value, dict):
        return coxeter_from_document(value)
    if isinstance(value, str):
        return parse_coxeter(value)
    raise ValidationError("'coxeter' must be a name or a Coxeter document")


def _names_to_mask(W: CoxeterSystem, names) -> int:
    mask = 0
    for n in names:
        mask |= 1 << W.index(n)
    return mask


# ---------- W-graphs ----------

def wgraph_from_document(doc: dict, W: CoxeterSystem | None = None):
    from .wgraph import WGraph

    if W is None:
        W = _coxeter_field(doc.get("coxeter"))
    vertices = tuple(doc.get("vertices", ()))
    if len(set(vertices)) != len(vertices):
        raise ValidationError("vertex names must be distinct")
    n = len(vertices)
    label_doc = doc.get("labels", {})
    unknown = set(label_doc) - set(vertices)
    if unknown:
        raise ValidationError(f"labels given for unknown vertices {sorted(unknown)}")
    labels = tuple(_names_to_mask(W, label_doc.get(x, ())) for x in vertices)
    weight_doc = doc.get("weights", {})
    for s in weight_doc:
        W.index(s)
    weights = []
    for s in W.generators:
        rows = weight_doc.get(s)
        if rows is None:
            weights.append(tuple((Fraction(0),) * n for _ in range(n)))
            continue
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValidationError(f"weight matrix for {s} is not {n}x{n}")
        weights.append(tuple(tuple(_weight(entry, W) for entry in r) for r in rows))
    return WGraph(W, vertices, labels, tuple(weights), doc.get("name", ""))


def _weight(entry, W):
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        if isinstance(entry, float) and not entry.is_integer():
            raise ValidationError(f"weight {entry!r}: use an exact expression string")
        return Fraction(int(entry))
    if not isinstance(entry, str):
        raise ValidationError(f"weight {entry!r} is not an expression string")
    return simplify_scalar(parse_field_element(entry, W.field))


def wgraph_to_document(G) -> dict:
    W = G.system
    doc = {"coxeter": coxeter_to_document(W), "vertices": list(G.vertices),
           "labels": {x: list(W.subset_names(m)) for x, m in zip(G.vertices, G.labels) if m},
           "weights": {W.generators[s]: [[format_expression(c) for c in row] for row in mat]
                       for s, mat in enumerate(G.weights)}}
    if G.name:
        doc["name"] = G.name
    return doc


# ---------- certificates ----------

def certificate_from_document(doc: dict, W: CoxeterSystem | None = None):
    from .decomp import Certificate

    if W is None:
        W = _coxeter_field(doc.get("coxeter"))
    Q = build_compatibility_graph(W)
    labels = [str(a) for a in doc.get("labels", ())]
    degrees = {str(a): int(d) for a, d in doc.get("degrees", {}).items()}
    elements = {}
    for a, text in doc.get("elements", {}).items():
        try:
            elements[str(a)] = parse_expression(text, W, "omega", quiver=Q)
        except ParseError as exc:
            raise ParseError(f"element {a!r}: {exc}") from None
    order = frozenset((str(a), str(b)) for a, b in doc.get("order", ()))
    return Certificate(W, tuple(labels), degrees, elements, order)


def certificate_to_document(cert) -> dict:
    from .decomp import cover_relations

    return {"coxeter": coxeter_to_document(cert.system), "labels": list(cert.labels),
            "degrees": {a: cert.degrees[a] for a in cert.labels},
            "order": [list(p) for p in cover_relations(cert)],
            "elements": {a: format_element(cert.elements[a]) for a in cert.labels}}


# ---------- relation dumps ----------

def dump_relations(rels) -> str:
    return "".join(f"{r.label()} | {format_element(r.element)}\n" for r in rels)


def parse_relation_dump(text: str, W: CoxeterSystem, quiver=None) -> list:
    """``[(tag_text, element)]`` from a dump; blank lines and ``#`` comments are skipped."""
    Q = quiver or build_compatibility_graph(W)
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tag, sep, body = line.partition(" | ")
        if not sep:
            raise ParseError(f"line {lineno}: expected 'TAG | expression'")
        try:
            out.append((tag, parse_expression(body, W, "omega", quiver=Q)))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return out


def write_output(text: str, path: str | None) -> None:
    if path is None:
        import sys
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)

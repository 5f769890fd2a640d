"""Command-line front end: ``wgraphalg <group> <command> [options]``.

Exit codes: 0 all checks pass, 1 some check fails, 2 inconclusive without
failures, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import decomp, tensor
from .coxeter import coxeter_group, components
from .errors import WGraphAlgError
from .expr import parse_expression
from .formats import (certificate_from_document, certificate_to_document, dump_relations,
                      load_coxeter, load_json, wgraph_from_document, write_output)
from .omega import BRAID, CLOSED_FORM, DEFAULT_BOUND, ClosureFailure, build_oracle, mult_table, relations
from .paths import format_element
from .quiver import build_compatibility_graph, to_dot
from .report import EXIT_OK, EXIT_USAGE, FAIL, INCONCLUSIVE, PASS, Report, status_of
from .wgraph import builtin_wgraphs, omega_module, validate_wgraph


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p, coxeter=True):
    if coxeter:
        p.add_argument("--coxeter", required=True, metavar="FILE|NAME",
                       help="builtin name such as A2, I2(5), A2xA1, or a JSON file")
    p.add_argument("--max-len", type=int, default=DEFAULT_BOUND, metavar="L",
                   help="path-length bound for the membership oracle")
    p.add_argument("--source", choices=(CLOSED_FORM, BRAID), default=CLOSED_FORM)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--format", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wgraphalg", description="Exact computations in W-graph algebras.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def sub(group, names):
        g = groups.add_parser(group)
        cmds = g.add_subparsers(dest="command", required=True, parser_class=_Parser)
        return {n: cmds.add_parser(n) for n in names}

    c = sub("coxeter", ["info"])
    _common(c["info"])
    q = sub("quiver", ["dot"])
    _common(q["dot"])
    o = sub("omega", ["relations", "table", "reduce"])
    for p in o.values():
        _common(p)
    o["reduce"].add_argument("--expr", required=True)
    w = sub("wgraph", ["validate"])
    _common(w["validate"], coxeter=False)
    w["validate"].add_argument("--coxeter", metavar="FILE|NAME",
                               help="validate the builtin W-graphs of this system")
    w["validate"].add_argument("--graph", metavar="FILE", help="W-graph JSON document")
    t = sub("tensor", ["verify-kernel", "verify-psi"])
    for p in t.values():
        _common(p)
    t["verify-kernel"].add_argument("--nilpotency", action="store_true",
                                    help="also check products of kernel generators")
    k = sub("cert", ["verify", "product", "search"])
    _common(k["verify"])
    k["verify"].add_argument("--cert", metavar="FILE", help="certificate JSON (default: builtin)")
    _common(k["product"], coxeter=False)
    k["product"].add_argument("--left", required=True, metavar="FILE|NAME")
    k["product"].add_argument("--right", required=True, metavar="FILE|NAME")
    _common(k["search"])
    k["search"].add_argument("--degrees", required=True, metavar="LABEL=D,...",
                             help="irreducible degrees, e.g. triv=1,sign=1,refl=2")
    return parser


# ---------- commands ----------

def _emit(args, text: str) -> None:
    write_output(text, args.out)


def _report(args, rep: Report) -> int:
    _emit(args, rep.render(args.format))
    return rep.exit_code()


def cmd_coxeter_info(args, W) -> int:
    G = coxeter_group(W)
    info = {"generators": list(W.generators), "matrix": [list(r) for r in W.matrix],
            "order": len(G), "components": [[W.generators[i] for i in c] for c in components(W)],
            "field": str(W.field), "product": W.is_product}
    if args.format == "json":
        _emit(args, json.dumps(info, indent=2) + "\n")
    else:
        lines = [W.describe(), f"generators: {' '.join(W.generators)}",
                 "matrix: " + "; ".join(" ".join(map(str, r)) for r in W.matrix),
                 f"|W| = {len(G)}", "components: " + " ".join("{" + ",".join(c) + "}" for c in info["components"]),
                 f"field: {W.field}"]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_quiver_dot(args, W) -> int:
    _emit(args, to_dot(build_compatibility_graph(W)))
    return EXIT_OK


def cmd_omega_relations(args, W) -> int:
    rels = relations(W, source=args.source)
    if args.format == "json":
        _emit(args, json.dumps([{"tag": r.label(), "element": format_element(r.element)} for r in rels],
                               indent=2) + "\n")
    else:
        _emit(args, dump_relations(rels))
    return EXIT_OK


def cmd_omega_table(args, W) -> int:
    oracle = build_oracle(W, args.max_len, args.source)
    ct = mult_table(W, oracle=oracle)
    rep = Report(f"multiplication table of the W-graph algebra of {W.describe()} (L={args.max_len})")
    if isinstance(ct, ClosureFailure):
        rep.body.append(str(ct))
        for p, q in ct.escapes[:10]:
            Q = oracle.quiver
            rep.body.append(f"  escapes: {Q.format_path(p)} * {Q.format_path(q)}")
        rep.add("closure", INCONCLUSIVE)
        return _report(args, rep)
    Q = ct.quiver
    rep.body.append(f"dimension {ct.dimension}")
    rep.body += [f"  b{i} = {Q.format_path(p)}" for i, p in enumerate(ct.basis)]
    for (i, j), out in sorted(ct.table.items()):
        prod = format_element(ct.element(out))
        rep.body.append(f"  b{i} * b{j} = {prod}")
    rep.add("closure", PASS)
    rep.add("associative", status_of(ct.associative))
    return _report(args, rep)


def cmd_omega_reduce(args, W) -> int:
    oracle = build_oracle(W, args.max_len, args.source)
    e = parse_expression(args.expr, W, "omega", quiver=oracle.quiver)
    nf, verdict = oracle.reduce(e)
    if args.format == "json":
        _emit(args, json.dumps({"input": format_element(e), "normal_form": format_element(nf),
                                "verdict": verdict}, indent=2) + "\n")
    else:
        _emit(args, format_element(nf) + "\n")
    return EXIT_OK


def cmd_wgraph_validate(args) -> int:
    if args.graph:
        W = load_coxeter(args.coxeter) if args.coxeter else None
        graphs = [wgraph_from_document(load_json(args.graph), W)]
    elif args.coxeter:
        graphs = builtin_wgraphs(load_coxeter(args.coxeter))
    else:
        raise UsageError("give --graph FILE or --coxeter NAME")
    rep = Report("W-graph validation")
    for G in graphs:
        name = G.name or "graph"
        vr = validate_wgraph(G)
        rep.body += [f"{name}: {line}" for line in vr.lines(G.system)]
        rep.add(f"{name}:W-graph", status_of(vr.ok))
        if vr.ok:
            try:
                omega_module(G, check_relations=True)
                rep.add(f"{name}:relations-annihilate", PASS)
            except WGraphAlgError as exc:
                rep.add(f"{name}:relations-annihilate", FAIL, [str(exc)])
    return _report(args, rep)


def cmd_tensor_verify_kernel(args, W) -> int:
    oracle = build_oracle(W, args.max_len, args.source)
    rep = tensor.verify_kernel(W, oracle)
    if args.nilpotency:
        cert = decomp.builtin_certificate(W)
        rep.extend(tensor.nilpotency_check(W, cert, oracle))
    return _report(args, rep)


def cmd_tensor_verify_psi(args, W) -> int:
    return _report(args, tensor.check_psi_commutation(W, build_oracle(W, args.max_len, args.source)))


def _load_certificate(source: str):
    """A certificate file, or a Coxeter name meaning its builtin certificate."""
    try:
        doc = load_json(source)
    except FileNotFoundError:
        W = load_coxeter(source)
        cert = decomp.builtin_certificate(W)
    else:
        cert = certificate_from_document(doc)
    return cert


def cmd_cert_verify(args, W) -> int:
    cert = certificate_from_document(load_json(args.cert), W) if args.cert else decomp.builtin_certificate(W)
    oracle = build_oracle(W, args.max_len, args.source)
    ct = mult_table(W, oracle=oracle)
    table = ct if not isinstance(ct, ClosureFailure) else None
    rep = decomp.verify_certificate(W, cert, oracle, table=table)
    return _report(args, rep)


def cmd_cert_product(args) -> int:
    factors = []
    rep = Report("product certificate")
    for side, source in (("left", args.left), ("right", args.right)):
        cert = _load_certificate(source)
        vr = decomp.verify_certificate(cert.system, cert, build_oracle(cert.system, args.max_len, args.source))
        rep.extend(vr, prefix=f"{side}:")
        factors.append(cert)
    if not all(c.verified for c in factors):
        rep.body.append("a factor certificate is not verified; no product was formed")
        _emit(args, rep.render(args.format))
        return rep.exit_code()
    prod = tensor.product_certificate(*factors)
    doc = json.dumps(certificate_to_document(prod), indent=2) + "\n"
    if args.out:
        write_output(doc, args.out)
        sys.stdout.write(rep.render(args.format))
    else:
        sys.stdout.write(doc)
        sys.stderr.write(rep.render(args.format))
    return rep.exit_code()


def _parse_degrees(text: str) -> dict:
    out = {}
    for item in text.split(","):
        label, sep, d = item.partition("=")
        if not sep or not label.strip() or not d.strip().isdigit():
            raise UsageError(f"bad degree entry {item!r}; expected LABEL=INT")
        out[label.strip()] = int(d)
    return out


def cmd_cert_search(args, W) -> int:
    degrees = _parse_degrees(args.degrees)
    oracle = build_oracle(W, args.max_len, args.source)
    ct = mult_table(W, oracle=oracle)
    rep = Report(f"certificate search for {W.describe()} (L={args.max_len})")
    if isinstance(ct, ClosureFailure):
        rep.body.append(str(ct))
        rep.add("search", INCONCLUSIVE)
        return _report(args, rep)
    found = decomp.search_certificate(W, ct, degrees)
    if isinstance(found, str):
        rep.body.append(found)
        rep.add("search", INCONCLUSIVE)
        return _report(args, rep)
    rep.body += found.notes
    rep.add("search", PASS)
    rep.extend(decomp.verify_certificate(W, found, oracle, table=ct))
    doc = json.dumps(certificate_to_document(found), indent=2) + "\n"
    if args.out:
        write_output(doc, args.out)
        sys.stdout.write(rep.render(args.format))
    else:
        sys.stdout.write(doc)
        sys.stderr.write(rep.render(args.format))
    return rep.exit_code()


_WITH_W = {
    ("coxeter", "info"): cmd_coxeter_info,
    ("quiver", "dot"): cmd_quiver_dot,
    ("omega", "relations"): cmd_omega_relations,
    ("omega", "table"): cmd_omega_table,
    ("omega", "reduce"): cmd_omega_reduce,
    ("tensor", "verify-kernel"): cmd_tensor_verify_kernel,
    ("tensor", "verify-psi"): cmd_tensor_verify_psi,
    ("cert", "verify"): cmd_cert_verify,
    ("cert", "search"): cmd_cert_search,
}
_WITHOUT_W = {
    ("wgraph", "validate"): cmd_wgraph_validate,
    ("cert", "product"): cmd_cert_product,
}


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.max_len < 1:
            raise UsageError("--max-len must be positive")
        key = (args.group, args.command)
        if key in _WITHOUT_W:
            return _WITHOUT_W[key](args)
        return _WITH_W[key](args, load_coxeter(args.coxeter))
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (WGraphAlgError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

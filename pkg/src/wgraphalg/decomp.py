"""Idempotent decomposition certificates and their verification (Z1-Z6).

A certificate is a family of elements F^lambda with degrees d_lambda and a
partial order.  Zero claims are proven with the membership oracle; a claim is
refuted only with a module on which the element acts nonzero.  Otherwise the
axiom is reported as inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product

from . import matrix as mx
from .coxeter import CoxeterSystem, coxeter_group
from .errors import BoundError, ValidationError
from .omega import DEFAULT_BOUND, CertifiedTable, build_oracle
from .paths import OmegaElement
from .quiver import TRANSVERSAL, build_compatibility_graph, path_key
from .report import FAIL, INCONCLUSIVE, PASS, Report, status_of
from .wgraph import apply_element, builtin_modules

AXIOMS = ("Z1", "Z2", "Z3", "Z4", "Z5", "Z6")


@dataclass
class Certificate:
    system: CoxeterSystem
    labels: tuple
    degrees: dict
    elements: dict
    order: frozenset = frozenset()   # strict relations (a, b) meaning a < b
    factors: tuple | None = None
    verified_axioms: set = field(default_factory=set)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        self.labels = tuple(self.labels)
        self.order = frozenset(transitive_closure(self.order))
        if set(self.degrees) != set(self.labels) or set(self.elements) != set(self.labels):
            raise ValidationError("degrees and elements must be given for every label")
        for a, b in self.order:
            if a not in self.labels or b not in self.labels:
                raise ValidationError(f"order mentions unknown label {a!r} or {b!r}")
            if a == b:
                raise ValidationError("order relation is not acyclic")

    def leq(self, a, b) -> bool:
        return a == b or (a, b) in self.order

    @property
    def verified(self) -> bool:
        return {"Z1", "Z2", "Z6"} <= self.verified_axioms

    def relabel(self, mapping: dict) -> "Certificate":
        return Certificate(
            self.system, tuple(mapping[a] for a in self.labels),
            {mapping[a]: d for a, d in self.degrees.items()},
            {mapping[a]: e for a, e in self.elements.items()},
            frozenset((mapping[a], mapping[b]) for a, b in self.order), self.factors)

    def check_degrees(self) -> bool:
        return sum(d * d for d in self.degrees.values()) == len(coxeter_group(self.system))


def transitive_closure(pairs) -> set:
    rel = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def cover_relations(cert: Certificate) -> list:
    """The strict relations not implied by transitivity, sorted."""
    return sorted((a, b) for a, b in cert.order
                  if not any((a, c) in cert.order and (c, b) in cert.order for c in cert.labels))


def ht(cert: Certificate) -> int:
    """Number of elements in a longest chain of the label poset."""
    best = {}

    def longest(a):
        if a not in best:
            best[a] = 1 + max((longest(b) for (x, b) in cert.order if x == a), default=0)
        return best[a]

    return max((longest(a) for a in cert.labels), default=0)


# ---------- helpers ----------

def _module_nonzero(e: OmegaElement, modules, table: CertifiedTable | None):
    for M in modules:
        if not mx.is_zero(apply_element(M, e)):
            return M.graph.name or "module"
    if table is not None and table.witnesses_nonzero(e):
        return "table"
    return None


class _Zero:
    """Zero tests with witness search, bound errors counted as inconclusive."""

    def __init__(self, oracle, modules, table):
        self.oracle, self.modules, self.table = oracle, modules, table

    def __call__(self, e: OmegaElement) -> tuple:
        """Return ``(status, witness)``."""
        try:
            if self.oracle.is_zero(e):
                return PASS, None
        except BoundError:
            pass
        w = _module_nonzero(e, self.modules, self.table)
        return (FAIL, w) if w else (INCONCLUSIVE, None)


def _combine(statuses) -> str:
    statuses = set(statuses)
    if FAIL in statuses:
        return FAIL
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return PASS


def psi_paths(Q, L: int) -> list:
    """Paths of length <= L using transversal arrows only."""
    out = []
    for I in Q.vertices:
        layer = [(I,)]
        out.append((I,))
        for _ in range(L):
            layer = [p + (s, J) for p in layer for s, J in Q.arrows_from.get(p[-1], ())
                     if Q.edges[(p[-1], J)] == TRANSVERSAL]
            out.extend(layer)
            if not layer:
                break
    return out


def _nf_vector(oracle, e) -> dict:
    nf = oracle.normal_form(e)
    return {path_key(p): c for p, c in nf.terms.items()}


def _vector(e: OmegaElement) -> dict:
    return {path_key(p): c for p, c in e.terms.items()}


def _is_table(obj) -> bool:
    return isinstance(obj, CertifiedTable)


# ---------- verification ----------

def verify_certificate(W: CoxeterSystem, cert: Certificate, oracle=None, L: int = DEFAULT_BOUND,
                       modules=None, table: CertifiedTable | None = None) -> Report:
    """Check Z1-Z6; ``oracle`` may also be a :class:`CertifiedTable`."""
    if _is_table(oracle):
        table, oracle = oracle, oracle.oracle
    oracle = oracle or build_oracle(W, L)
    L = oracle.bound
    Q = oracle.quiver
    if modules is None:
        modules = builtin_modules(W)
    if table is not None and not table.is_representation(oracle.relations):
        table = None
    zero = _Zero(oracle, modules, table)
    F = cert.elements
    labels = cert.labels
    rep = Report(f"certificate for {W.describe()} (L={L})")
    if not cert.check_degrees():
        rep.body.append("warning: sum of squared degrees differs from |W|")

    # Z1
    results, details = [], []
    one = OmegaElement.unit(Q)
    for a, b in product(labels, repeat=2):
        e = F[a] * F[b] - (F[a] if a == b else OmegaElement(Q))
        st, w = zero(e)
        results.append(st)
        if st != PASS:
            details.append(f"F{{{a}}}F{{{b}}} {'nonzero on ' + w if w else 'not reduced to zero'}")
    total = OmegaElement(Q)
    for a in labels:
        total = total + F[a]
    st, w = zero(one - total)
    results.append(st)
    if st != PASS:
        details.append("1 - sum F " + ("nonzero on " + w if w else "not reduced to zero"))
    rep.add("Z1", _combine(results), details)

    # Z2
    results, details = [], []
    for a in labels:
        for I in Q.vertices:
            E = OmegaElement.vertex(Q, I)
            st, w = zero(E * F[a] - F[a] * E)
            results.append(st)
            if st != PASS:
                details.append(f"[E{W.format_subset(I)}, F{{{a}}}]")
    rep.add("Z2", _combine(results), details)

    # Z3
    results, details = [], []
    for a, b in product(labels, repeat=2):
        if cert.leq(a, b):
            continue
        for I, s, J in Q.arrows():
            e = F[a] * OmegaElement.arrow(Q, I, J, s) * F[b]
            st, w = zero(e)
            results.append(st)
            if st != PASS:
                x = Q.format_path((I, s, J))
                details.append(f"F{{{a}}} {x} F{{{b}}} " + (f"nonzero on {w}" if w else "not reduced to zero"))
    rep.add("Z3", _combine(results), details)

    # Z4 (corner criterion)
    rep.body.append("Z4 (corner criterion): F Omega F must have dimension d^2, realized on a module")
    results, details = [], []
    for a in labels:
        st, msg = _check_corner(Q, oracle, F[a], cert.degrees[a], modules)
        results.append(st)
        details.append(f"{a}: {msg}")
    rep.add("Z4", _combine(results), details)

    # Z5 / Z6
    psi = mx.SparseEchelon()
    for p in psi_paths(Q, L):
        psi.insert(_nf_vector(oracle, OmegaElement(Q, {p: Fraction(1)})))

    def in_psi(e):
        try:
            return psi.contains(_nf_vector(oracle, e))
        except BoundError:
            return False

    results, details = [], []
    for a in labels:
        for I, s, J in Q.arrows():
            if not in_psi(F[a] * OmegaElement.arrow(Q, I, J, s) * F[a]):
                results.append(INCONCLUSIVE)
                details.append(f"F{{{a}}} {Q.format_path((I, s, J))} F{{{a}}} not shown in Psi")
    rep.add("Z5", _combine(results) if results else PASS, details)
    results, details = [], []
    for a in labels:
        if not in_psi(F[a]):
            results.append(INCONCLUSIVE)
            details.append(f"F{{{a}}} not shown in Psi")
    rep.add("Z6", _combine(results) if results else PASS, details)

    cert.verified_axioms = {c.name for c in rep.checks if c.status == PASS}
    return rep


def corner_rank(Q, oracle, Fa) -> int:
    """Dimension of the span of normal forms of F p F over paths p within the bound."""
    L = oracle.bound
    lf = Fa.max_length
    room = L - 2 * lf
    if room < 0:
        raise BoundError("F itself is too long for a corner computation")
    starts = {p[-1] for p in Fa.terms}
    ends = {p[0] for p in Fa.terms}
    ech = mx.SparseEchelon()
    for I in sorted(starts):
        for J, paths in Q.paths_from(I, room).items():
            if J not in ends:
                continue
            for p in paths:
                e = Fa * OmegaElement(Q, {p: Fraction(1)}) * Fa
                if e:
                    ech.insert(_nf_vector(oracle, e))
    return len(ech)


def module_corner_rank(Q, oracle, Fa, modules) -> tuple:
    """Largest rank of the corner's image over the given modules, and that module."""
    best, where = 0, None
    lf = Fa.max_length
    room = oracle.bound - 2 * lf
    starts = {p[-1] for p in Fa.terms}
    ends = {p[0] for p in Fa.terms}
    elems = []
    for I in sorted(starts):
        for J, paths in Q.paths_from(I, room).items():
            if J in ends:
                elems.extend(Fa * OmegaElement(Q, {p: Fraction(1)}) * Fa for p in paths)
    for M in modules:
        vecs = [mx.flatten(apply_element(M, e)) for e in elems if e]
        r = mx.rank(vecs) if vecs else 0
        if r > best:
            best, where = r, M.graph.name
    return best, where


def _check_corner(Q, oracle, Fa, d, modules) -> tuple:
    try:
        nf_rank = corner_rank(Q, oracle, Fa)
    except BoundError as exc:
        return INCONCLUSIVE, str(exc)
    mod_rank, where = module_corner_rank(Q, oracle, Fa, modules)
    msg = f"corner rank {nf_rank}, module image rank {mod_rank}" + (f" on {where}" if where else "") + f", d^2 = {d * d}"
    if mod_rank > d * d:
        return FAIL, msg
    if nf_rank == d * d and mod_rank == d * d:
        return PASS, msg
    return INCONCLUSIVE, msg


def _columns(mat) -> list:
    return [tuple(row[j] for row in mat) for j in range(len(mat[0]))] if mat else []


def filtration_check(W: CoxeterSystem, cert: Certificate, modules=None) -> Report:
    """On each module M, every down-set sum V_lambda = sum of F^mu M over mu below
    lambda must be a submodule, and V_mu must lie in V_lambda whenever mu is below lambda."""
    modules = builtin_modules(W) if modules is None else modules
    rep = Report(f"filtration spot-check for {W.describe()}")
    bad = []
    for M in modules:
        name = M.graph.name or "module"
        images = {a: _columns(apply_element(M, cert.elements[a])) for a in cert.labels}
        gens = [mat for s in range(W.rank) for mat in (M.e[s], M.x[s])]
        spans = {}
        for a in cert.labels:
            cols = [c for b in cert.labels if cert.leq(b, a) for c in images[b]]
            r = mx.rank(cols)
            spans[a] = (cols, r)
            moved = [c for g in gens for c in _columns(mx.mat_mul(g, tuple(zip(*cols))))] if cols else []
            if cols and mx.rank(cols + moved) != r:
                bad.append(f"{name}: the sum below {a} is not a submodule")
        for a, b in product(cert.labels, repeat=2):
            if a != b and cert.leq(a, b):
                ca, _ = spans[a]
                cb, rb = spans[b]
                if mx.rank(cb + ca) != rb:
                    bad.append(f"{name}: the sum below {a} is not inside the sum below {b}")
        top = mx.rank([c for a in cert.labels for c in images[a]])
        if top != M.dimension:
            bad.append(f"{name}: the pieces span dimension {top} of {M.dimension}")
    rep.add("filtration", status_of(not bad), bad)
    return rep


# ---------- search ----------

def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def search_certificate(W: CoxeterSystem, table: CertifiedTable, degrees):
    """Look for a certificate whose idempotents are sums of vertex idempotents.

    ``degrees`` maps labels to degrees (a plain list gets labels chi1, chi2, ...).
    Returns a :class:`Certificate` or a string describing the failure.
    """
    if not isinstance(degrees, dict):
        degrees = {f"chi{i + 1}": d for i, d in enumerate(degrees)}
    if sum(d * d for d in degrees.values()) != len(coxeter_group(W)):
        raise ValidationError("sum of squared degrees must equal |W|")
    if not table.closed or not table.is_representation(table.oracle.relations):
        return "table is not a certified quotient"
    Q = table.quiver
    labels = sorted(degrees)
    verts = list(Q.vertices)
    psi = mx.SparseEchelon()
    for p in psi_paths(Q, table.oracle.bound):
        psi.insert(table.evaluate(OmegaElement(Q, {p: Fraction(1)})))

    corner_cache = {}

    def corner_dim(block):
        key = frozenset(block)
        if key not in corner_cache:
            Fb = _block_element(Q, block)
            corner_cache[key] = _table_corner_dim(table, Fb)
        return corner_cache[key]

    named = {M.graph.name: M for M in builtin_modules(W)}

    def name_mismatches(F):
        return sum(1 for a, e in F.items()
                   if a in named and mx.is_zero(apply_element(named[a], e)))

    found = []
    for part in _set_partitions(verts):
        if len(part) != len(labels):
            continue
        part = sorted((sorted(b) for b in part))
        dims = [corner_dim(b) for b in part]
        valid = None
        for perm in sorted(set(permutations(labels))):
            if any(dims[i] != degrees[perm[i]] ** 2 for i in range(len(part))):
                continue
            F = {perm[i]: _block_element(Q, part[i]) for i in range(len(part))}
            if valid is None:
                order = _forced_order(Q, table, F)
                valid = order is not None and all(
                    psi.contains(table.evaluate(F[a] * OmegaElement.arrow(Q, I, J, s) * F[a]))
                    for a in F for I, s, J in Q.arrows())
                if not valid:
                    break
            else:
                order = _forced_order(Q, table, F)
            found.append((len(order), name_mismatches(F), len(found), F, order))
    if not found:
        return "no certificate built from vertex idempotents"
    found.sort(key=lambda c: c[:3])
    _, _, _, F, order = found[0]
    cert = Certificate(W, tuple(labels), dict(degrees), F, frozenset(order))
    partitions = {frozenset(frozenset(e.terms) for e in c[3].values()) for c in found}
    cert.notes = [f"{len(partitions)} vertex partition(s) pass; "
                  f"{len(found)} labelled candidate(s); kept one with {len(order)} order relations"]
    return cert


def _block_element(Q, block) -> OmegaElement:
    return OmegaElement(Q, {(I,): Fraction(1) for I in block})


def _table_corner_dim(table: CertifiedTable, Fb: OmegaElement) -> int:
    fb = table.evaluate(Fb)
    ech = mx.SparseEchelon()
    for i in range(table.dimension):
        ech.insert(table.multiply_coords(table.multiply_coords(fb, {i: 1}), fb))
    return len(ech)


def _forced_order(Q, table, F):
    """Smallest order allowing every nonzero F^a X F^b, or None when it has a cycle."""
    rel = set()
    for a, b in product(F, repeat=2):
        if a == b:
            continue
        for I, s, J in Q.arrows():
            if table.evaluate(F[a] * OmegaElement.arrow(Q, I, J, s) * F[b]):
                rel.add((a, b))
                break
    closure = transitive_closure(rel)
    if any(a == b for a, b in closure):
        return None
    return closure


# ---------- builtin certificates ----------

def trivial_certificate(W: CoxeterSystem) -> Certificate:
    Q = build_compatibility_graph(W)
    return Certificate(W, ("triv",), {"triv": 1}, {"triv": OmegaElement.unit(Q)})


def a1_certificate(W: CoxeterSystem) -> Certificate:
    """F^sign = E_{s}, F^triv = E_{} with sign below triv."""
    if W.rank != 1:
        raise ValidationError("the A1 certificate needs a rank-one system")
    Q = build_compatibility_graph(W)
    return Certificate(W, ("sign", "triv"), {"sign": 1, "triv": 1},
                       {"sign": OmegaElement.vertex(Q, 1), "triv": OmegaElement.vertex(Q, 0)},
                       frozenset({("sign", "triv")}))


def a2_certificate(W: CoxeterSystem) -> Certificate:
    """Frozen result of the vertex-idempotent search for A2: sign < refl < triv."""
    if W.rank != 2 or W.m(0, 1) != 3:
        raise ValidationError("the A2 certificate needs a system of type A2")
    Q = build_compatibility_graph(W)
    E = lambda I: OmegaElement.vertex(Q, I)
    return Certificate(W, ("refl", "sign", "triv"), {"refl": 2, "sign": 1, "triv": 1},
                       {"sign": E(3), "refl": E(1) + E(2), "triv": E(0)},
                       frozenset({("sign", "refl"), ("refl", "triv")}))


def builtin_certificate(W: CoxeterSystem) -> Certificate:
    if W.rank == 0:
        return trivial_certificate(W)
    if W.is_product:
        from .tensor import product_certificate
        W1, W2 = W.factor_systems()
        c1, c2 = builtin_certificate(W1), builtin_certificate(W2)
        for c in (c1, c2):
            verify_certificate(c.system, c)
        return product_certificate(c1, c2, W)
    if W.rank == 1:
        return a1_certificate(W)
    if W.rank == 2 and W.m(0, 1) == 3:
        return a2_certificate(W)
    raise ValidationError(f"no builtin certificate for {W.describe()}")

"""The W-graph algebra as a quotient of the path algebra of the compatibility graph.

Two presentations are generated: the closed form in terms of Chebyshev
coefficients and alternating path sums, and the braid form obtained by
expanding the coefficients y^gamma(s,t) of the braid commutator.  Equalities
are proven with a bounded-degree membership oracle: the span of all ``p*r*q``
(``r`` a relation, ``p, q`` paths) whose terms have length at most ``L``, kept
in row-echelon form under a fixed total order on paths.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .coxeter import CoxeterSystem
from .errors import BoundError, WGraphAlgError
from .freealg import expand_to_paths, extract_y, gyoja_residues
from .paths import OmegaElement
from .quiver import Quiver, build_compatibility_graph, path_key

DEFAULT_BOUND = 6

CLOSED_FORM = "closed-form"
BRAID = "braid"


# ---------- Chebyshev coefficients and path sums ----------

def tau_coeffs(r: int) -> list:
    """Coefficients ``[a_{r,0}, ..., a_{r,r}]`` of tau_r = T tau_{r-1} - tau_{r-2}."""
    if r < -1:
        raise ValueError("r must be >= -1")
    if r == -1:
        return []
    prev, cur = [], [1]
    for _ in range(r):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def path_sum_P(Q: Quiver, I: int, J: int, r: int, s: int, t: int) -> OmegaElement:
    """E_I x_s x_t x_s ... E_J (r factors) as a sum of paths of Q."""
    if r == 0:
        return OmegaElement.vertex(Q, I) if I == J else OmegaElement(Q)
    layer = [(I,)]
    arrows = Q.arrows_from
    for k in range(r):
        label = s if k % 2 == 0 else t
        layer = [p + (lab, K) for p in layer for lab, K in arrows.get(p[-1], ()) if lab == label]
    return OmegaElement(Q, {p: Fraction(1) for p in layer if p[-1] == J})


# ---------- relations ----------

@dataclass(frozen=True)
class Relation:
    element: OmegaElement = field(compare=False)
    tag: tuple

    def label(self) -> str:
        return format_tag(self.element.quiver.system, self.tag)

    def __str__(self):
        return f"{self.label()} | {self.element}"


def format_tag(W: CoxeterSystem, tag: tuple) -> str:
    kind = tag[0]
    g = W.generators
    if kind == "alpha":
        _, s, t, I, J = tag
        return f"alpha({g[s]},{g[t]},{W.format_subset(I)},{W.format_subset(J)})"
    if kind == "beta":
        _, s, t, I, J, r = tag
        return f"beta({g[s]},{g[t]},{W.format_subset(I)},{W.format_subset(J)},{r})"
    if kind == "ygamma":
        _, s, t, gamma = tag
        return f"ygamma({g[s]},{g[t]},{gamma})"
    if kind == "residue":
        return "residue(" + ",".join(g[i] for i in tag[1:]) + ")"
    return str(tag)


def _alpha_condition(m: int, J: int, s_bit: int, t_bit: int, parity: str) -> bool:
    s_in, t_in = bool(J & s_bit), bool(J & t_bit)
    odd = m % 2 == 1
    if parity == "literal":
        odd = not odd
    return (s_in and not t_in) if odd else (t_in and not s_in)


def closed_form_relations(W: CoxeterSystem, Q: Quiver, alpha_parity: str = "corrected") -> list:
    """Alternating-path-sum relations, trivially zero instances dropped.

    ``alpha_parity="corrected"`` pairs odd m with ``s in J, t not in J`` (the
    only reading under which the top term of the sum can be nonzero);
    ``"literal"`` swaps the two cases.
    """
    if alpha_parity not in ("corrected", "literal"):
        raise ValueError(f"unknown alpha parity {alpha_parity!r}")
    out = []
    n = W.rank
    for s, t in product(range(n), repeat=2):
        if s == t:
            continue
        m = W.m(s, t)
        coeffs = tau_coeffs(m - 1)
        sb, tb = 1 << s, 1 << t
        for I in Q.vertices:
            if not I & sb or I & tb:
                continue
            for J in Q.vertices:
                if not _alpha_condition(m, J, sb, tb, alpha_parity):
                    continue
                elem = OmegaElement(Q)
                for k, a in enumerate(coeffs):
                    if a:
                        elem = elem + path_sum_P(Q, I, J, k, s, t) * Fraction(a)
                if elem:
                    out.append(Relation(elem, ("alpha", s, t, I, J)))
    for s in range(n):
        for t in range(s + 1, n):
            m = W.m(s, t)
            st = (1 << s) | (1 << t)
            for I in Q.vertices:
                if I & st != st:
                    continue
                for J in Q.vertices:
                    if J & st:
                        continue
                    for r in range(1, m + 1):
                        elem = path_sum_P(Q, I, J, r, s, t) - path_sum_P(Q, I, J, r, t, s)
                        if elem:
                            out.append(Relation(elem, ("beta", s, t, I, J, r)))
    return out


def braid_relations(W: CoxeterSystem, Q: Quiver) -> list:
    """Expanded y^gamma(s,t) for s < t, plus the idempotent residues; zero rows dropped."""
    out = []
    n = W.rank
    for s in range(n):
        for t in range(s + 1, n):
            for gamma, y in extract_y(W, s, t).items():
                elem = expand_to_paths(y, Q)
                if elem:
                    out.append(Relation(elem, ("ygamma", s, t, gamma)))
    for s in range(n):
        for t in [None] + list(range(s + 1, n)):
            for f in gyoja_residues(W, s, t):
                elem = expand_to_paths(f, Q)
                if elem:
                    tag = ("residue", s) if t is None else ("residue", s, t)
                    out.append(Relation(elem, tag))
    return out


def relations(W: CoxeterSystem, Q: Quiver | None = None, source: str = CLOSED_FORM,
              alpha_parity: str = "corrected") -> list:
    if Q is None:
        Q = build_compatibility_graph(W)
    if source == CLOSED_FORM:
        return closed_form_relations(W, Q, alpha_parity)
    if source == BRAID:
        return braid_relations(W, Q)
    raise ValueError(f"unknown relation source {source!r}")


def multiply(a: OmegaElement, b: OmegaElement) -> OmegaElement:
    return a * b


# ---------- membership oracle ----------

class _Block:
    """Echelon form of the ideal span inside E_a (kQ) E_b, truncated at length L."""

    __slots__ = ("paths", "index", "pivots")

    def __init__(self, paths):
        self.paths = sorted(paths, key=path_key)
        self.index = {p: i for i, p in enumerate(self.paths)}
        self.pivots = {}

    @property
    def full(self) -> bool:
        return len(self.pivots) == len(self.paths)

    def insert(self, row: dict) -> bool:
        pivots = self.pivots
        while row:
            lead = max(row)
            piv = pivots.get(lead)
            if piv is None:
                c = row[lead]
                if c != 1:
                    row = {k: v / c for k, v in row.items()}
                pivots[lead] = row
                return True
            c = row[lead]
            for k, v in piv.items():
                nv = row.get(k, 0) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return False

    def reduce(self, vec: dict) -> dict:
        """Subtract the projection onto the span; what remains uses non-pivot columns only."""
        pivots = self.pivots
        heap = [-i for i in vec]
        heapq.heapify(heap)
        seen = set(vec)
        while heap:
            i = -heapq.heappop(heap)
            piv = pivots.get(i)
            if piv is None:
                continue
            c = vec.pop(i, None)
            if not c:
                continue
            for k, v in piv.items():
                if k == i:
                    continue
                nv = vec.get(k, 0) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
                if k not in seen:
                    seen.add(k)
                    heapq.heappush(heap, -k)
        return vec


class MembershipOracle:
    """Bounded two-sided ideal span; blocks are saturated lazily on first use."""

    def __init__(self, quiver: Quiver, rels, bound: int):
        self.quiver = quiver
        self.bound = bound
        self.relations = list(rels)
        components = {}
        for rel in self.relations:
            if rel.element.quiver is not quiver:
                raise WGraphAlgError(f"relation {rel.label()} lives over another quiver")
            if rel.element.max_length > bound:
                raise BoundError(
                    f"bound L={bound} is below the length {rel.element.max_length} "
                    f"of relation {rel.label()}")
            for key, comp in rel.element.blocks().items():
                terms = [(u[1:], c) for u, c in comp.terms.items()]
                components.setdefault(key, []).append((terms, comp.max_length))
        self._components = components
        self._blocks: dict = {}

    def block(self, a: int, b: int) -> _Block:
        blk = self._blocks.get((a, b))
        if blk is not None:
            return blk
        Q, L = self.quiver, self.bound
        blk = _Block(Q.paths_between(a, b, L))
        index = blk.index
        starts = Q.paths_from(a, L)
        for (c, d), comps in sorted(self._components.items()):
            if blk.full:
                break
            left_paths = starts.get(c)
            if not left_paths:
                continue
            right_all = Q.paths_between(d, b, L)
            if not right_all:
                continue
            for terms, ml in comps:
                for p in left_paths:
                    room = L - len(p) // 2 - ml
                    if room < 0:
                        break
                    for q in right_all:
                        if len(q) // 2 > room:
                            break
                        tail = q[1:]
                        row = {index[p + u + tail]: Fraction(coef) for u, coef in terms}
                        blk.insert(row)
                    if blk.full:
                        break
                if blk.full:
                    break
        self._blocks[(a, b)] = blk
        return blk

    def saturate_all(self) -> "MembershipOracle":
        for a in self.quiver.vertices:
            for b in sorted(self.quiver.paths_from(a, self.bound)):
                self.block(a, b)
        return self

    @property
    def size(self) -> int:
        """Dimension of the truncated ideal span (forces full saturation)."""
        self.saturate_all()
        return sum(len(b.pivots) for b in self._blocks.values())

    def reduce(self, e: OmegaElement) -> tuple:
        if e.quiver is not self.quiver:
            raise WGraphAlgError("element lives over another quiver")
        if e.max_length > self.bound:
            raise BoundError(f"element has a term of length {e.max_length} > bound {self.bound}")
        nf = {}
        for (a, b), comp in sorted(e.blocks().items()):
            blk = self.block(a, b)
            vec = {blk.index[p]: c for p, c in comp.terms.items()}
            for i, c in blk.reduce(vec).items():
                nf[blk.paths[i]] = c
        nf_elem = OmegaElement(self.quiver, nf)
        return nf_elem, ("zero" if not nf_elem else "nonzero-at-bound")

    def is_zero(self, e: OmegaElement) -> bool:
        return self.reduce(e)[1] == "zero"

    def normal_form(self, e: OmegaElement) -> OmegaElement:
        return self.reduce(e)[0]


def saturate(W: CoxeterSystem, rels, L: int = DEFAULT_BOUND, quiver: Quiver | None = None,
             lazy: bool = True) -> MembershipOracle:
    if quiver is None:
        quiver = rels[0].element.quiver if rels else build_compatibility_graph(W)
    oracle = MembershipOracle(quiver, rels, L)
    if not lazy:
        oracle.saturate_all()
    return oracle


def reduce(e: OmegaElement, oracle: MembershipOracle) -> tuple:
    return oracle.reduce(e)


def build_oracle(W: CoxeterSystem, L: int = DEFAULT_BOUND, source: str = CLOSED_FORM,
                 complete: bool = False) -> MembershipOracle:
    Q = build_compatibility_graph(W, complete=complete)
    return MembershipOracle(Q, relations(W, Q, source), L)


def cross_validate(W: CoxeterSystem, L: int = DEFAULT_BOUND):
    """Each presentation's relations must reduce to zero against the other's oracle."""
    from .report import Report, status_of

    Q = build_compatibility_graph(W)
    rep = Report(f"presentation cross-check for {W.describe()} (L={L})")
    for name, src, dst in (("braid-in-closed-form", BRAID, CLOSED_FORM),
                           ("closed-form-in-braid", CLOSED_FORM, BRAID)):
        oracle = MembershipOracle(Q, relations(W, Q, dst), L)
        rels = relations(W, Q, src)
        bad = [r.label() for r in rels if not oracle.is_zero(r.element)]
        rep.body.append(f"{name}: {len(rels) - len(bad)} of {len(rels)} relations reduce to zero")
        rep.add(name, status_of(not bad, conclusive=False), bad)
    return rep


# ---------- certified multiplication table ----------

@dataclass
class ClosureFailure:
    bound: int
    escapes: list

    def __str__(self):
        return f"closure failure at L={self.bound}: {len(self.escapes)} products exceed the bound"


@dataclass
class CertifiedTable:
    """Structure constants of the quotient on a normal-form path basis."""

    oracle: MembershipOracle
    basis: list
    table: dict
    closed: bool
    associative: bool

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def quiver(self) -> Quiver:
        return self.oracle.quiver

    def coords(self, e: OmegaElement) -> dict:
        nf, _ = self.oracle.reduce(e)
        pos = self._pos
        return {pos[p]: c for p, c in nf.terms.items()}

    def element(self, coords: dict) -> OmegaElement:
        return OmegaElement(self.quiver, {self.basis[i]: c for i, c in coords.items()})

    def multiply_coords(self, a: dict, b: dict) -> dict:
        out = {}
        for i, ca in a.items():
            for j, cb in b.items():
                for k, c in self.table.get((i, j), {}).items():
                    nv = out.get(k, 0) + ca * cb * c
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def identity_coords(self) -> dict:
        return self.coords(OmegaElement.unit(self.quiver))

    @property
    def _pos(self) -> dict:
        return {p: i for i, p in enumerate(self.basis)}

    def evaluate(self, e: OmegaElement) -> dict:
        """Image of ``e`` under the map sending each vertex and arrow to its
        normal form and multiplying inside the table (never reducing long paths)."""
        out = {}
        cache = {}

        def gen(piece):
            got = cache.get(piece)
            if got is None:
                got = self.coords(OmegaElement(self.quiver, {piece: Fraction(1)}))
                cache[piece] = got
            return got

        for path, coef in e.terms.items():
            acc = gen((path[0],))
            for k in range(0, len(path) - 1, 2):
                if not acc:
                    break
                acc = self.multiply_coords(acc, gen(path[k:k + 3]))
            for i, c in acc.items():
                nv = out.get(i, 0) + coef * c
                if nv:
                    out[i] = nv
                else:
                    out.pop(i, None)
        return out

    def is_representation(self, rels) -> bool:
        """True when the table algebra is unital, associative and kills every relation,
        so that it is a quotient of the W-graph algebra (a module via left multiplication)."""
        if not self.associative:
            return False
        unit = self.evaluate(OmegaElement.unit(self.quiver))
        for i in range(self.dimension):
            if self.multiply_coords(unit, {i: 1}) != {i: 1} or self.multiply_coords({i: 1}, unit) != {i: 1}:
                return False
        return all(not self.evaluate(r.element) for r in rels)

    def witnesses_nonzero(self, e: OmegaElement) -> bool:
        """Sound nonzero proof, valid once :meth:`is_representation` holds."""
        return bool(self.evaluate(e))


def mult_table(W: CoxeterSystem, rels=None, L: int = DEFAULT_BOUND, oracle: MembershipOracle | None = None):
    """Certified table, or :class:`ClosureFailure` when some product leaves the bound."""
    if oracle is None:
        if rels is None:
            rels = relations(W)
        oracle = saturate(W, rels, L)
    oracle.saturate_all()
    L = oracle.bound
    basis = []
    for blk in oracle._blocks.values():
        basis.extend(p for i, p in enumerate(blk.paths) if i not in blk.pivots)
    basis.sort(key=path_key)
    pos = {p: i for i, p in enumerate(basis)}
    by_start = {}
    for j, q in enumerate(basis):
        by_start.setdefault(q[0], []).append(j)

    table, escapes = {}, []
    Q = oracle.quiver
    for i, p in enumerate(basis):
        for j in by_start.get(p[-1], ()):
            q = basis[j]
            if (len(p) + len(q)) // 2 > L:
                escapes.append((p, q))
                continue
            nf, _ = oracle.reduce(OmegaElement(Q, {p + q[1:]: Fraction(1)}))
            if nf:
                table[(i, j)] = {pos[r]: c for r, c in nf.terms.items()}
    if escapes:
        return ClosureFailure(L, escapes)

    ct = CertifiedTable(oracle, basis, table, True, False)
    ct.associative = _check_associative(ct, by_start)
    return ct


def _check_associative(ct: CertifiedTable, by_start: dict) -> bool:
    basis = ct.basis
    for i, p in enumerate(basis):
        for j in by_start.get(p[-1], ()):
            for k in by_start.get(basis[j][-1], ()):
                left = ct.multiply_coords(ct.table.get((i, j), {}), {k: 1})
                right = ct.multiply_coords({i: 1}, ct.table.get((j, k), {}))
                if left != right:
                    return False
    return True

"""Products W = W1 x W2: parabolic embeddings, the tensor morphism tau, and the
checks built on them (kernel generators, commutation of the Psi-factors,
nilpotency of the kernel)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .coxeter import CoxeterSystem
from .errors import NotAProductError, UnverifiedCertificateError, WGraphAlgError
from .freealg import FreeElement, commutator as free_commutator, expand_to_paths, iota_T
from .omega import (DEFAULT_BOUND, MembershipOracle, Relation, build_oracle, mult_table,
                    path_sum_P)
from .paths import OmegaElement, commutator, is_scalar
from .quiver import TRANSVERSAL, build_compatibility_graph, path_key
from .report import INCONCLUSIVE, PASS, Report, status_of
from .scalar import format_scalar


def _subsets(mask: int):
    """All submasks of ``mask``, in increasing order."""
    out = [0]
    bit = 1
    while bit <= mask:
        if mask & bit:
            out += [m | bit for m in out]
        bit <<= 1
    return sorted(out)


class ProductContext:
    """Index bookkeeping for a declared product and its two factors."""

    def __init__(self, W: CoxeterSystem):
        if not W.is_product:
            raise NotAProductError("Coxeter system is not declared as a product")
        self.W = W
        self.S = W.binary_split()
        self.factors = W.factor_systems()
        self.Q = build_compatibility_graph(W)
        self.Qs = tuple(build_compatibility_graph(Wi) for Wi in self.factors)
        self.masks = tuple(sum(1 << g for g in idx) for idx in self.S)
        self.side = {}
        for which, idx in enumerate(self.S):
            for k, g in enumerate(idx):
                self.side[g] = (which, k)

    def lift(self, which: int, mask: int) -> int:
        return sum(1 << g for k, g in enumerate(self.S[which]) if mask >> k & 1)

    def restrict(self, which: int, mask: int) -> int:
        return sum(1 << k for k, g in enumerate(self.S[which]) if mask >> g & 1)

    def split(self, I: int) -> tuple:
        return self.restrict(0, I), self.restrict(1, I)

    def join(self, I1: int, I2: int) -> int:
        return self.lift(0, I1) | self.lift(1, I2)


@lru_cache(maxsize=None)
def product_context(W: CoxeterSystem) -> ProductContext:
    return ProductContext(W)


# ---------- parabolic embeddings ----------

def parabolic_embed(ctx: ProductContext, which: int, e: OmegaElement) -> OmegaElement:
    """Image of an element of a factor's algebra: E_A goes to the sum of E_A' with
    A' meeting S_i in A, and X^s_AB to the sum of all X^s_A'B' likewise, pruned by Q_W."""
    if e.quiver is not ctx.Qs[which]:
        raise WGraphAlgError("element does not live over the requested factor")
    Q = ctx.Q
    others = _subsets(ctx.masks[1 - which])
    idx = ctx.S[which]
    total = OmegaElement(Q)
    for path, coef in e.terms.items():
        A0 = ctx.lift(which, path[0])
        img = OmegaElement(Q, {(A0 | C,): Fraction(1) for C in others})
        for k in range(1, len(path), 2):
            s = idx[path[k]]
            A, B = ctx.lift(which, path[k - 1]), ctx.lift(which, path[k + 1])
            arrows = {(A | C, s, B | D): Fraction(1) for C in others for D in others
                      if Q.is_arrow(A | C, B | D, s)}
            img = img * OmegaElement(Q, arrows)
            if not img:
                break
        total = total + img * coef
    return total


# ---------- tensor elements and tau ----------

class TensorElement:
    """Sparse combination of pure tensors ``p1 (x) p2`` of factor paths."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: ProductContext, terms=None):
        self.ctx = ctx
        self.terms = {k: c for k, c in terms.items() if c} if terms else {}

    @classmethod
    def pure(cls, ctx, a: OmegaElement, b: OmegaElement):
        out = {}
        for p1, c1 in a.terms.items():
            for p2, c2 in b.terms.items():
                out[(p1, p2)] = c1 * c2
        return cls(ctx, out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorElement(self.ctx, out)

    def __neg__(self):
        return TensorElement(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if is_scalar(other):
            return TensorElement(self.ctx, {k: c * other for k, c in self.terms.items()})
        out = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                if a1[-1] != b1[0] or a2[-1] != b2[0]:
                    continue
                key = (a1 + b1[1:], a2 + b2[1:])
                prod = c * d
                out[key] = out[key] + prod if key in out else prod
        return TensorElement(self.ctx, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return set(self.terms) == set(other.terms) and all(
            self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        Q1, Q2 = self.ctx.Qs
        chunks = []
        items = sorted(self.terms.items(), key=lambda kv: (path_key(kv[0][0]), path_key(kv[0][1])))
        for idx, ((p1, p2), c) in enumerate(items):
            text, neg = format_scalar(c)
            body = f"{Q1.format_path(p1)} (x) {Q2.format_path(p2)}"
            if text != "1":
                body = f"{text}*{body}"
            sign = ("-" if neg else "") if idx == 0 else (" - " if neg else " + ")
            chunks.append(sign + body)
        return "".join(chunks)

    __repr__ = __str__


def tau_path(ctx: ProductContext, path):
    """tau of a single path as a pure tensor ``(p1, p2)``, or ``None`` when it vanishes."""
    I1, I2 = ctx.split(path[0])
    left, right = [I1], [I2]
    for k in range(1, len(path), 2):
        s, J = path[k], path[k + 1]
        J1, J2 = ctx.split(J)
        which, local = ctx.side[s]
        if which == 0:
            if J2 != right[-1]:
                return None
            left += [local, J1]
        else:
            if J1 != left[-1]:
                return None
            right += [local, J2]
    return tuple(left), tuple(right)


def tau_map(ctx: ProductContext, e: OmegaElement) -> TensorElement:
    out = {}
    for path, coef in e.terms.items():
        key = tau_path(ctx, path)
        if key is not None:
            out[key] = out[key] + coef if key in out else coef
    return TensorElement(ctx, out)


def reduce_tensor(t: TensorElement, oracles) -> tuple:
    """Normal form of a tensor: reduce left factors, regroup, reduce the right cofactors.

    A ``zero`` verdict is sound; anything else is ``nonzero-at-bound``.
    """
    o1, o2 = oracles
    ctx = t.ctx
    Q1, Q2 = ctx.Qs
    nf_left = {}
    cofactors = {}
    for (p1, p2), c in t.terms.items():
        nf = nf_left.get(p1)
        if nf is None:
            nf = o1.normal_form(OmegaElement(Q1, {p1: Fraction(1)}))
            nf_left[p1] = nf
        for b1, d in nf.terms.items():
            acc = cofactors.setdefault(b1, {})
            val = c * d
            acc[p2] = acc[p2] + val if p2 in acc else val
    out = {}
    for b1, right in cofactors.items():
        nf2 = o2.normal_form(OmegaElement(Q2, right))
        for b2, c in nf2.terms.items():
            out[(b1, b2)] = c
    res = TensorElement(ctx, out)
    return res, ("zero" if not res else "nonzero-at-bound")


def factor_oracles(ctx: ProductContext, L: int = DEFAULT_BOUND) -> tuple:
    return tuple(build_oracle(Wi, L) for Wi in ctx.factors)


def tensor_unit(ctx: ProductContext) -> TensorElement:
    Q1, Q2 = ctx.Qs
    return TensorElement.pure(ctx, OmegaElement.unit(Q1), OmegaElement.unit(Q2))


# ---------- kernel of tau ----------

def kernel_generators(W_or_ctx) -> list:
    """Inclusion edges (I, J) of Q_W that are proper in both factors."""
    ctx = W_or_ctx if isinstance(W_or_ctx, ProductContext) else product_context(W_or_ctx)
    out = []
    for (I, J) in sorted(ctx.Q.edges):
        if J & ~I:
            continue
        (I1, I2), (J1, J2) = ctx.split(I), ctx.split(J)
        if I1 != J1 and I2 != J2:
            out.append((I, J))
    return out


def kernel_elements(ctx: ProductContext) -> list:
    """One arrow element X^s_IJ per kernel edge and label."""
    Q = ctx.Q
    out = []
    for I, J in kernel_generators(ctx):
        for s, K in Q.arrows_from.get(I, ()):
            if K == J:
                out.append(OmegaElement.arrow(Q, I, J, s))
    return out


def _factor_tables(ctx: ProductContext, L: int):
    """Certified factor tables that are genuine quotients, used as nonzero witnesses."""
    tables = []
    for Wi in ctx.factors:
        tab = None
        for bound in range(max(L, 2), 2 * L + 3, 2):
            o = build_oracle(Wi, bound)
            cand = mult_table(Wi, oracle=o)
            if hasattr(cand, "basis"):
                tab = cand if cand.is_representation(o.relations) else None
                break
        tables.append(tab)
    return tables


def verify_kernel(W: CoxeterSystem, oracle: MembershipOracle | None = None,
                  L: int = DEFAULT_BOUND) -> Report:
    ctx = product_context(W)
    oracle = oracle or build_oracle(W, L)
    L = oracle.bound
    Q = ctx.Q
    rep = Report(f"kernel of tau for {W.describe()} (L={L})")
    kernel = set(kernel_generators(ctx))
    rep.body.append("kernel edges: " + ", ".join(
        f"{W.format_subset(I)}<-{W.format_subset(J)}" for I, J in sorted(kernel)))

    # (i) tau kills the kernel edges and no other edge
    bad, unproven = [], []
    tables = _factor_tables(ctx, L)
    for I, s, J in Q.arrows():
        t = tau_map(ctx, OmegaElement.arrow(Q, I, J, s))
        if (I, J) in kernel:
            if t:
                bad.append(f"tau(X^{W.generators[s]}_{W.format_subset(I)},{W.format_subset(J)}) = {t}")
        else:
            (p1, p2), = t.terms
            ok = all(tab is not None and tab.witnesses_nonzero(OmegaElement(Qi, {p: Fraction(1)}))
                     for tab, Qi, p in zip(tables, ctx.Qs, (p1, p2)))
            if not ok:
                unproven.append(f"{W.format_subset(I)}<-{W.format_subset(J)}")
    details = bad + [f"no nonzero witness for tau of edge {e}" for e in unproven]
    rep.add("kernel-edges", status_of(not bad and not unproven, conclusive=bool(bad)), details)

    # (ii) commutators [e_s, x_t] lie in the ideal of the kernel edges
    kel = kernel_elements(ctx)
    ideal = MembershipOracle(Q, oracle.relations + [Relation(k, ("kernel",)) for k in kel], L)
    S1, S2 = ctx.S
    failures = []
    for s, t in product(S1, S2):
        for a, b in ((s, t), (t, s)):
            comm = expand_to_paths(free_commutator(FreeElement.e(W, a), FreeElement.x(W, b)), Q)
            if not ideal.is_zero(comm):
                failures.append(f"[e_{W.generators[a]}, x_{W.generators[b]}] not in the kernel ideal at L={L}")
    rep.add("commutators-in-kernel-ideal", status_of(not failures, conclusive=False), failures)

    # (iii) E_I [e_s, x_t] E_J against the four-case formula
    mismatches = []
    for s, t in product(S1, S2):
        comm = expand_to_paths(free_commutator(FreeElement.e(W, s), FreeElement.x(W, t)), Q)
        for I, J in product(Q.vertices, repeat=2):
            lhs = OmegaElement.vertex(Q, I) * comm * OmegaElement.vertex(Q, J)
            x = OmegaElement.arrow(Q, I, J, t)
            s_in_I, s_in_J = bool(I >> s & 1), bool(J >> s & 1)
            if s_in_I and not s_in_J:
                rhs = x
            elif s_in_J and not s_in_I:
                rhs = -x
            else:
                rhs = OmegaElement(Q)
            if lhs != rhs:
                mismatches.append(f"E_{W.format_subset(I)}[e_{W.generators[s]},x_{W.generators[t]}]E_{W.format_subset(J)}")
    rep.add("commutator-cases", status_of(not mismatches), mismatches)
    return rep


# ---------- Psi commutation ----------

def psi_factor_generators(Qi) -> list:
    gens = [OmegaElement.vertex(Qi, I) for I in Qi.vertices]
    for I, s, J in Qi.arrows():
        if Qi.edges[(I, J)] == TRANSVERSAL:
            gens.append(OmegaElement.arrow(Qi, I, J, s))
    return gens


def check_psi_commutation(W: CoxeterSystem, oracle: MembershipOracle | None = None,
                          L: int = DEFAULT_BOUND) -> Report:
    ctx = product_context(W)
    oracle = oracle or build_oracle(W, L)
    L = oracle.bound
    Q = ctx.Q
    Q1, Q2 = ctx.Qs
    rep = Report(f"commutation of the Psi factors for {W.describe()} (L={L})")
    g1 = [parabolic_embed(ctx, 0, g) for g in psi_factor_generators(Q1)]
    g2 = [parabolic_embed(ctx, 1, g) for g in psi_factor_generators(Q2)]
    failures = []
    for a, b in product(g1, g2):
        c = commutator(a, b)
        if not oracle.is_zero(c):
            failures.append(f"[{a}, {b}] not reduced to zero")
    rep.add("psi-commutators", status_of(not failures, conclusive=False), failures)

    # two-term consequence of beta for every pair of transversal arrows
    fails, mism = [], []
    for (I, s, J), (K, t, Lm) in product(
            [a for a in Q1.arrows() if Q1.edges[(a[0], a[2])] == TRANSVERSAL],
            [a for a in Q2.arrows() if Q2.edges[(a[0], a[2])] == TRANSVERSAL]):
        i1, j1 = ctx.lift(0, I), ctx.lift(0, J)
        k2, l2 = ctx.lift(1, K), ctx.lift(1, Lm)
        gs, gt = ctx.S[0][s], ctx.S[1][t]
        lhs = OmegaElement.arrow(Q, i1 | k2, j1 | k2, gs) * OmegaElement.arrow(Q, j1 | k2, j1 | l2, gt)
        rhs = OmegaElement.arrow(Q, i1 | k2, i1 | l2, gt) * OmegaElement.arrow(Q, i1 | l2, j1 | l2, gs)
        two_term = lhs - rhs
        beta = path_sum_P(Q, i1 | k2, j1 | l2, 2, gs, gt) - path_sum_P(Q, i1 | k2, j1 | l2, 2, gt, gs)
        if beta != two_term:
            mism.append(f"beta sum at ({W.format_subset(i1 | k2)},{W.format_subset(j1 | l2)}) has extra terms")
        if not oracle.is_zero(two_term):
            fails.append(f"two-term identity at ({W.format_subset(i1 | k2)},{W.format_subset(j1 | l2)})")
    rep.add("beta-two-term", status_of(not fails and not mism, conclusive=bool(mism)), mism + fails)
    return rep


# ---------- tau sanity checks ----------

def check_tau_hecke(W: CoxeterSystem) -> bool:
    """tau(iota(T_s)) equals iota_i(T_s) (x) 1 or 1 (x) iota_i(T_s), exactly."""
    ctx = product_context(W)
    Q1, Q2 = ctx.Qs
    for s in range(W.rank):
        which, local = ctx.side[s]
        lhs = tau_map(ctx, expand_to_paths(iota_T(W, s), ctx.Q))
        Wi = ctx.factors[which]
        img = expand_to_paths(iota_T(Wi, local), ctx.Qs[which])
        if which == 0:
            rhs = TensorElement.pure(ctx, img, OmegaElement.unit(Q2))
        else:
            rhs = TensorElement.pure(ctx, OmegaElement.unit(Q1), img)
        if lhs != rhs:
            return False
    return True


def check_tau_psi_onto(W: CoxeterSystem) -> bool:
    """tau sends Psi generators to products of Psi-factor generators, and every
    pure generator ``g1 (x) g2`` is the image of iota_1(g1) iota_2(g2)."""
    ctx = product_context(W)
    Q = ctx.Q
    Q1, Q2 = ctx.Qs
    for I, s, J in Q.arrows():
        if Q.edges[(I, J)] != TRANSVERSAL:
            continue
        (p1, p2), = tau_map(ctx, OmegaElement.arrow(Q, I, J, s)).terms
        for Qi, p in ((Q1, p1), (Q2, p2)):
            if len(p) == 3 and Qi.edges[(p[0], p[2])] != TRANSVERSAL:
                return False
    for a, b in product(psi_factor_generators(Q1), psi_factor_generators(Q2)):
        pre = parabolic_embed(ctx, 0, a) * parabolic_embed(ctx, 1, b)
        if tau_map(ctx, pre) != TensorElement.pure(ctx, a, b):
            return False
    return True


# ---------- nilpotency of the kernel ----------

def nilpotency_check(W: CoxeterSystem, cert=None, oracle: MembershipOracle | None = None,
                     L: int = DEFAULT_BOUND, max_k: int | None = None) -> Report:
    """Show that products of k kernel generators vanish for k above min(ht1, ht2).

    Products are formed as g_1 p_1 g_2 p_2 ... g_k with connecting paths p_i,
    kept within the bound.  The smallest k for which every such product
    reduces to zero is reported alongside the bound from the certificate heights.
    """
    from .decomp import ht

    ctx = product_context(W)
    oracle = oracle or build_oracle(W, L)
    L = oracle.bound
    Q = ctx.Q
    rep = Report(f"nilpotency of ker(tau) for {W.describe()} (L={L})")
    gens = kernel_elements(ctx)
    bound_k = None
    if cert is not None:
        h1, h2 = ht(cert.factors[0]), ht(cert.factors[1])
        bound_k = min(h1, h2) + 1
        rep.body.append(f"heights {h1}, {h2}; the kernel is claimed nilpotent of degree {bound_k}")
    if not gens:
        rep.body.append("kernel is empty; nilpotency degree 1")
        rep.add("nilpotency", PASS)
        return rep

    max_k = max_k or max(bound_k or 0, 3)
    smallest = None
    blocked = False
    results = {}
    for k in range(1, max_k + 1):
        status, witness = _all_k_products_zero(Q, gens, k, oracle)
        results[k] = status
        rep.body.append(f"k={k}: {status}" + (f" (first survivor {witness})" if witness else ""))
        if status == "zero" and smallest is None:
            smallest = k
        if status == "exceeds-bound":
            blocked = True
    if smallest is not None:
        rep.body.append(f"smallest k with all products zero: {smallest}")
    target = bound_k if bound_k is not None else max_k
    st = results.get(target)
    if st == "zero":
        rep.add("nilpotency", PASS)
    else:
        rep.add("nilpotency", INCONCLUSIVE, [f"k={target}: {st}" + (" (bound too small)" if blocked else "")])
    rep.smallest_k = smallest
    return rep


def _all_k_products_zero(Q, gens, k, oracle) -> tuple:
    """Return ("zero" | "nonzero-at-bound" | "exceeds-bound", witness)."""
    L = oracle.bound
    # partial products: (element path, length) built left to right; each generator is a single arrow
    partial = [p for g in gens for p in g.terms]
    exceeded = False
    for _ in range(k - 1):
        nxt = set()
        for p in partial:
            room = L - len(p) // 2 - 1
            if room < 0:
                exceeded = True
                continue
            for conn_end, conns in Q.paths_from(p[-1], room).items():
                for c in conns:
                    for g in gens:
                        (gp,) = g.terms
                        if gp[0] == conn_end:
                            nxt.add(p + c[1:] + gp[1:])
        partial = nxt
        if not partial:
            break
    for p in sorted(partial, key=path_key):
        e = OmegaElement(Q, {p: Fraction(1)})
        if not oracle.is_zero(e):
            return "nonzero-at-bound", Q.format_path(p)
    if exceeded and k > 1:
        return "exceeds-bound", None
    return "zero", None


# ---------- product certificates ----------

def product_certificate(c1, c2, W: CoxeterSystem | None = None):
    """Certificate for W1 x W2 with F^{a.b} = iota_1(F^a) iota_2(F^b) and the product order."""
    from .decomp import Certificate

    for c in (c1, c2):
        if not c.verified:
            raise UnverifiedCertificateError(
                f"certificate for {c.system.describe()} has not passed Z1, Z2 and Z6")
    if c1.system.rank == 0 or c2.system.rank == 0:
        keep, other = (c2, c1) if c1.system.rank == 0 else (c1, c2)
        (t,) = other.labels
        name = (lambda a: f"{t}.{a}") if keep is c2 else (lambda a: f"{a}.{t}")
        out = keep.relabel({a: name(a) for a in keep.labels})
        out.verified_axioms = set(keep.verified_axioms)
        return out
    if W is None:
        if set(c1.system.generators) & set(c2.system.generators):
            c2 = _rename_certificate(c2, set(c1.system.generators))
        W = CoxeterSystem.direct_product(c1.system, c2.system)
    ctx = product_context(W)
    if any(c.system.matrix != Wi.matrix for c, Wi in zip((c1, c2), ctx.factors)):
        raise WGraphAlgError("certificate does not match the factor of the product")
    c1, c2 = (c if c.system.generators == Wi.generators else _rehome_certificate(c, Wi)
              for c, Wi in zip((c1, c2), ctx.factors))
    embed1 = {a: parabolic_embed(ctx, 0, _over(c1.elements[a], ctx.Qs[0])) for a in c1.labels}
    embed2 = {b: parabolic_embed(ctx, 1, _over(c2.elements[b], ctx.Qs[1])) for b in c2.labels}
    labels, degrees, elements = [], {}, {}
    for a, b in product(c1.labels, c2.labels):
        name = f"{a}.{b}"
        labels.append(name)
        degrees[name] = c1.degrees[a] * c2.degrees[b]
        elements[name] = embed1[a] * embed2[b]
    order = set()
    for (a, b), (a2, b2) in product(product(c1.labels, c2.labels), repeat=2):
        if (a, b) != (a2, b2) and c1.leq(a, a2) and c2.leq(b, b2):
            order.add((f"{a}.{b}", f"{a2}.{b2}"))
    return Certificate(W, tuple(labels), degrees, elements, frozenset(order), factors=(c1, c2))


def _rename_certificate(cert, taken: set):
    """The same certificate over a copy of its system whose generator names avoid ``taken``."""
    W = cert.system
    prefix = next(p for p in "tuwpqrxyzabcdefghijklmno"
                  if not any(f"{p}{i + 1}" in taken for i in range(W.rank)))
    return _rehome_certificate(cert, W.renamed(f"{prefix}{i + 1}" for i in range(W.rank)))


def _rehome_certificate(cert, W2: CoxeterSystem):
    """The same certificate over ``W2``, a system with the same matrix and other names."""
    from .decomp import Certificate

    Q2 = build_compatibility_graph(W2)
    out = Certificate(W2, cert.labels, dict(cert.degrees),
                      {a: OmegaElement(Q2, e.terms) for a, e in cert.elements.items()},
                      cert.order, cert.factors)
    out.verified_axioms = set(cert.verified_axioms)
    return out


def _over(e: OmegaElement, Q) -> OmegaElement:
    """The same element viewed over an equal quiver object."""
    return e if e.quiver is Q else OmegaElement(Q, e.terms)


def cross_commutator_check(W: CoxeterSystem, cert, oracle: MembershipOracle | None = None,
                  L: int = DEFAULT_BOUND) -> Report:
    """For mu not below mu', F^{l.mu} [iota_1(X_{I1 J1}), iota_2(g)] F^{l'.mu'} vanishes for
    every proper inclusion edge I1 > J1 and every Psi_2 generator g; also checks the
    two reductions of F iota_1(X) iota_2(X_KL) F and F iota_2(X_KL) iota_1(X) F."""
    ctx = product_context(W)
    oracle = oracle or build_oracle(W, L)
    Q = ctx.Q
    Q1, Q2 = ctx.Qs
    c1, c2 = cert.factors
    rep = Report(f"sandwiched cross commutators for {W.describe()} (L={oracle.bound})")
    incl = [(I, s, J) for I, s, J in Q1.arrows() if not J & ~I]
    psi2 = psi_factor_generators(Q2)
    trans2 = [(K, t, Lm) for K, t, Lm in Q2.arrows() if Q2.edges[(K, Lm)] == TRANSVERSAL]
    F = cert.elements
    fails, fails12 = [], []
    n_comm = n_ident = 0
    for (a, b), (a2, b2) in product(product(c1.labels, c2.labels), repeat=2):
        if c2.leq(b, b2):
            continue
        Fl, Fr = F[f"{a}.{b}"], F[f"{a2}.{b2}"]
        for I, s, J in incl:
            x = parabolic_embed(ctx, 0, OmegaElement.arrow(Q1, I, J, s))
            for g in psi2:
                n_comm += 1
                if not oracle.is_zero(Fl * commutator(x, parabolic_embed(ctx, 1, g)) * Fr):
                    fails.append(f"{a}.{b} / {a2}.{b2}: edge {Q1.format_path((I, s, J))}, generator {g}")
            i1, j1 = ctx.lift(0, I), ctx.lift(0, J)
            gs = ctx.S[0][s]
            for K, t, Lm in trans2:
                k2, l2 = ctx.lift(1, K), ctx.lift(1, Lm)
                gt = ctx.S[1][t]
                y = parabolic_embed(ctx, 1, OmegaElement.arrow(Q2, K, Lm, t))
                n_ident += 1
                one = OmegaElement.edge(Q, i1 | k2, j1 | k2, gs) * OmegaElement.edge(Q, j1 | k2, j1 | l2, gt)
                two = OmegaElement.edge(Q, i1 | k2, i1 | l2, gt) * OmegaElement.edge(Q, i1 | l2, j1 | l2, gs)
                if not oracle.is_zero(Fl * (x * y - one) * Fr):
                    fails12.append(f"(1) fails for {a}.{b} / {a2}.{b2} at {Q1.format_path((I, s, J))}, {Q2.format_path((K, t, Lm))}")
                if not oracle.is_zero(Fl * (y * x - two) * Fr):
                    fails12.append(f"(2) fails for {a}.{b} / {a2}.{b2} at {Q1.format_path((I, s, J))}, {Q2.format_path((K, t, Lm))}")
    rep.body.append(f"{n_comm} commutator sandwiches, {n_ident} identity pairs")
    rep.add("cross-commutators", status_of(not fails, conclusive=False), fails)
    rep.add("cross-identities", status_of(not fails12, conclusive=False), fails12)
    return rep

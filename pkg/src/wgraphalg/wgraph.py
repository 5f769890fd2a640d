"""W-graphs, their validation, and the induced modules over the W-graph algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from . import matrix as mx
from .coxeter import CoxeterSystem, coxeter_group
from .errors import InconsistencyError, ValidationError
from .freealg import FreeElement
from .hecke import HeckeElement
from .paths import OmegaElement
from .scalar import LaurentPoly

_V = LaurentPoly.v(1)
_VINV = LaurentPoly.v(-1)


@dataclass(frozen=True)
class WGraph:
    """Vertices, a label subset (bitmask) per vertex, and one weight matrix per generator.

    ``weights[s][x][y]`` is the weight m^s_xy, i.e. the coefficient of x in x_s * y.
    """

    system: CoxeterSystem
    vertices: tuple
    labels: tuple
    weights: tuple
    name: str = ""

    def __post_init__(self):
        n = len(self.vertices)
        if len(self.labels) != n:
            raise ValidationError("one label per vertex is required")
        if len(self.weights) != self.system.rank:
            raise ValidationError("one weight matrix per generator is required")
        for s, mat in enumerate(self.weights):
            if len(mat) != n or any(len(row) != n for row in mat):
                raise ValidationError(
                    f"weight matrix for {self.system.generators[s]} is not {n}x{n}")

    @property
    def dimension(self) -> int:
        return len(self.vertices)

    def omega_T(self, s: int):
        """omega(T_s) over Laurent polynomials: -v^-1 / v on the diagonal, m^s elsewhere."""
        n = self.dimension
        bit = 1 << s
        rows = []
        for x in range(n):
            row = []
            for y in range(n):
                if x == y:
                    row.append(-_VINV if self.labels[x] & bit else _V)
                else:
                    row.append(self.weights[s][x][y])
            rows.append(tuple(row))
        return tuple(rows)

    def with_weight(self, s: int, x: int, y: int, value) -> "WGraph":
        mats = [list(list(r) for r in m) for m in self.weights]
        mats[s][x][y] = value
        return WGraph(self.system, self.vertices, self.labels,
                      tuple(tuple(tuple(r) for r in m) for m in mats), self.name)


@dataclass
class WGraphReport:
    condition_a: list = field(default_factory=list)
    coherence: list = field(default_factory=list)
    quadratic: dict = field(default_factory=dict)
    braid: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (not self.condition_a and not self.coherence
                and all(self.quadratic.values()) and all(self.braid.values()))

    def lines(self, W: CoxeterSystem) -> list:
        g = W.generators
        out = [f"condition a violation: m^{g[s]}[{x}][{y}] with {g[s]} not in I(x)\\I(y)"
               for s, x, y in self.condition_a]
        out += [f"weight mismatch on edge {x}<-{y}: {g[s]} vs {g[t]}" for s, t, x, y in self.coherence]
        out += [f"quadratic {g[s]}: {'ok' if ok else 'FAILED'}" for s, ok in sorted(self.quadratic.items())]
        out += [f"braid {g[s]},{g[t]}: {'ok' if ok else 'FAILED'}" for (s, t), ok in sorted(self.braid.items())]
        return out


def _alternating(mats, s, t, m):
    out = None
    for k in range(m):
        nxt = mats[s] if k % 2 == 0 else mats[t]
        out = nxt if out is None else mx.mat_mul(out, nxt)
    return out


def validate_wgraph(G: WGraph, W: CoxeterSystem | None = None) -> WGraphReport:
    W = W or G.system
    if W.rank != G.system.rank:
        raise ValidationError("W-graph and Coxeter system have different ranks")
    rep = WGraphReport()
    n = G.dimension
    for s in range(W.rank):
        bit = 1 << s
        for x, y in product(range(n), repeat=2):
            if G.weights[s][x][y] and not (G.labels[x] & bit and not G.labels[y] & bit):
                rep.condition_a.append((s, x, y))
    for s, t in product(range(W.rank), repeat=2):
        if s < t:
            for x, y in product(range(n), repeat=2):
                a, b = G.weights[s][x][y], G.weights[t][x][y]
                if a and b and a != b:
                    rep.coherence.append((s, t, x, y))
    mats = [G.omega_T(s) for s in range(W.rank)]
    ident = mx.identity(n)
    q = _V - _VINV
    for s in range(W.rank):
        lhs = mx.mat_mul(mats[s], mats[s])
        rhs = mx.mat_add(ident, mx.mat_scale(mats[s], q))
        rep.quadratic[s] = mx.mat_eq(lhs, rhs)
    for s in range(W.rank):
        for t in range(s + 1, W.rank):
            m = W.m(s, t)
            rep.braid[(s, t)] = mx.mat_eq(_alternating(mats, s, t, m), _alternating(mats, t, s, m))
    return rep


# ---------- modules over the W-graph algebra ----------

@dataclass(frozen=True)
class OmegaModule:
    graph: WGraph
    e: tuple   # e[s]: 0/1 diagonal matrix
    x: tuple   # x[s]: weight matrix

    @property
    def dimension(self) -> int:
        return self.graph.dimension

    @property
    def system(self) -> CoxeterSystem:
        return self.graph.system

    def vertex_projector(self, I: int):
        return mx.diagonal([Fraction(1) if lab == I else Fraction(0) for lab in self.graph.labels])


def omega_module(G: WGraph, check_relations: bool = True) -> OmegaModule:
    """Module with e_s acting diagonally by labels and x_s by the weight matrix.

    With ``check_relations`` every closed-form relation is evaluated and must vanish.
    """
    W = G.system
    es = tuple(
        mx.diagonal([Fraction(1) if lab >> s & 1 else Fraction(0) for lab in G.labels])
        for s in range(W.rank))
    M = OmegaModule(G, es, tuple(G.weights))
    for s in range(W.rank):
        if not mx.mat_eq(mx.mat_mul(es[s], M.x[s]), M.x[s]) or not mx.is_zero(mx.mat_mul(M.x[s], es[s])):
            raise InconsistencyError(f"e_s/x_s relations fail for {W.generators[s]}")
    if check_relations:
        from .omega import relations
        from .quiver import build_compatibility_graph
        Q = build_compatibility_graph(W)
        for rel in relations(W, Q):
            if not mx.is_zero(apply_element(M, rel.element)):
                raise InconsistencyError(f"relation {rel.label()} does not annihilate {G.name or 'module'}")
    return M


def _apply_path(M: OmegaModule, path):
    labels = M.graph.labels
    n = M.dimension
    keep = [i for i in range(n) if labels[i] == path[0]]
    # rows restricted to vertices labelled path[0]; propagate right through the arrows
    cur = {i: {i: Fraction(1)} for i in keep}
    for k in range(1, len(path), 2):
        s, J = path[k], path[k + 1]
        w = M.x[s]
        nxt = {}
        for i, row in cur.items():
            acc = {}
            for mid, c in row.items():
                for j in range(n):
                    if labels[j] == J and w[mid][j]:
                        acc[j] = acc.get(j, 0) + c * w[mid][j]
            acc = {j: c for j, c in acc.items() if c}
            if acc:
                nxt[i] = acc
        cur = nxt
    return cur


def apply_element(M: OmegaModule, e):
    """Matrix of ``e`` (path element, free-algebra element or Hecke element) on ``M``."""
    n = M.dimension
    if isinstance(e, OmegaElement):
        acc = [[Fraction(0)] * n for _ in range(n)]
        for path, coef in e.terms.items():
            for i, row in _apply_path(M, path).items():
                for j, c in row.items():
                    acc[i][j] = acc[i][j] + coef * c
        return tuple(tuple(r) for r in acc)
    if isinstance(e, FreeElement):
        acc = mx.zeros(n)
        for word, coef in e.terms.items():
            mat = mx.identity(n)
            for c in word:
                mat = mx.mat_mul(mat, M.x[c >> 1] if c & 1 else M.e[c >> 1])
            acc = mx.mat_add(acc, mx.mat_scale(mat, coef))
        return acc
    if isinstance(e, HeckeElement):
        acc = mx.zeros(n)
        mats = [M.graph.omega_T(s) for s in range(M.system.rank)]
        for w, coef in e.terms.items():
            mat = mx.identity(n)
            for s in e.group.elements[w].word:
                mat = mx.mat_mul(mat, mats[s])
            acc = mx.mat_add(acc, mx.mat_scale(mat, coef))
        return acc
    raise TypeError(f"cannot evaluate {type(e).__name__} on a module")


def module_witness(e: OmegaElement, modules) -> OmegaModule | None:
    """First module on which ``e`` acts nonzero; such a module proves ``e != 0``."""
    for M in modules:
        if not mx.is_zero(apply_element(M, e)):
            return M
    return None


# ---------- builtin corpus ----------

def _weights(rank, n, entries):
    mats = [[[Fraction(0)] * n for _ in range(n)] for _ in range(rank)]
    for s, x, y, val in entries:
        mats[s][x][y] = val
    return tuple(tuple(tuple(r) for r in m) for m in mats)


def trivial_graph(W: CoxeterSystem) -> WGraph:
    return WGraph(W, ("triv",), (0,), _weights(W.rank, 1, []), "triv")


def sign_graph(W: CoxeterSystem) -> WGraph:
    return WGraph(W, ("sign",), (W.full_mask,), _weights(W.rank, 1, []), "sign")


def dihedral_graph(W: CoxeterSystem, j: int) -> WGraph:
    """Two vertices labelled {s}, {t} joined by weights 2cos(pi j / m) in both directions."""
    if W.rank != 2:
        raise ValidationError("dihedral graphs need rank 2")
    m = W.m(0, 1)
    c = W.field.two_cos(j, m)
    if c.is_rational():
        c = c.rational_value()
    entries = [(0, 0, 1, c), (1, 1, 0, c)]
    return WGraph(W, ("x", "y"), (1, 2), _weights(2, 2, entries), f"refl{j}")


def one_dimensional_graphs(W: CoxeterSystem) -> list:
    """For rank 2 with m even: the two one-dimensional graphs labelled {s} and {t}."""
    if W.rank != 2 or W.m(0, 1) % 2:
        return []
    return [WGraph(W, ("v",), (1 << s,), _weights(2, 1, []), f"half_{W.generators[s]}")
            for s in range(2)]


def regular_graph(W: CoxeterSystem) -> WGraph:
    """Kazhdan-Lusztig W-graph of the regular representation for rank <= 2.

    For dihedral groups all Kazhdan-Lusztig polynomials are 1, so mu(x,y) = 1
    exactly when the lengths differ by one.
    """
    if W.rank > 2:
        raise ValidationError("regular graph only built for rank <= 2")
    G = coxeter_group(W)
    n = len(G)
    labels = []
    for w in range(n):
        lab = 0
        for s in range(W.rank):
            if G.length(G.left_mult(s, w)) < G.length(w):
                lab |= 1 << s
        labels.append(lab)
    entries = []
    for x, y in product(range(n), repeat=2):
        if abs(G.length(x) - G.length(y)) != 1:
            continue
        for s in range(W.rank):
            if labels[x] >> s & 1 and not labels[y] >> s & 1:
                entries.append((s, x, y, Fraction(1)))
    names = tuple("".join(W.generators[s] for s in el.word) or "e" for el in G.elements)
    return WGraph(W, names, tuple(labels), _weights(W.rank, n, entries), "regular")


def lift_mask(mask: int, indices) -> int:
    """Re-index a subset of a parabolic subsystem into the ambient generator set."""
    return sum(1 << g for k, g in enumerate(indices) if mask >> k & 1)


def tensor_graph(G1: WGraph, G2: WGraph, W: CoxeterSystem) -> WGraph:
    """Outer tensor product for a product W whose binary split gives the factors of G1, G2."""
    S1, S2 = W.binary_split()
    n1, n2 = G1.dimension, G2.dimension
    verts, labels = [], []
    for a, b in product(range(n1), range(n2)):
        verts.append(f"{G1.vertices[a]}|{G2.vertices[b]}")
        labels.append(lift_mask(G1.labels[a], S1) | lift_mask(G2.labels[b], S2))
    entries = []
    for side, (G, idx) in enumerate(((G1, S1), (G2, S2))):
        for k, s in enumerate(idx):
            w = G.weights[k]
            for (a, b), (c, d) in product(product(range(n1), range(n2)), repeat=2):
                if side == 0:
                    val = w[a][c] if b == d else 0
                else:
                    val = w[b][d] if a == c else 0
                if val:
                    entries.append((s, a * n2 + b, c * n2 + d, val))
    return WGraph(W, tuple(verts), tuple(labels), _weights(W.rank, n1 * n2, entries),
                  f"{G1.name}*{G2.name}")


def _factor_graphs(W: CoxeterSystem) -> list:
    out = [trivial_graph(W)]
    if W.rank == 0:
        return out
    out.append(sign_graph(W))
    if W.rank == 2:
        m = W.m(0, 1)
        out += one_dimensional_graphs(W)
        out += [dihedral_graph(W, j) for j in range(1, (m - 1) // 2 + 1)]
    if W.rank <= 2:
        out.append(regular_graph(W))
    return out


@lru_cache(maxsize=None)
def _builtin(W: CoxeterSystem) -> tuple:
    if W.is_product:
        W1, W2 = W.factor_systems()
        return tuple(tensor_graph(a, b, W) for a in builtin_wgraphs(W1) for b in builtin_wgraphs(W2))
    return tuple(_factor_graphs(W))


def builtin_wgraphs(W: CoxeterSystem) -> list:
    """Validated corpus; for products, all tensor products of the factors' graphs."""
    out = []
    for G in _builtin(W):
        if not validate_wgraph(G).ok:
            raise InconsistencyError(f"builtin W-graph {G.name} fails validation")
        out.append(G)
    return out


@lru_cache(maxsize=None)
def builtin_modules(W: CoxeterSystem) -> tuple:
    return tuple(omega_module(G, check_relations=False) for G in builtin_wgraphs(W))

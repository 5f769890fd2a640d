"""Stembridge's compatibility graph on subsets of S, with labelled arrows.

Vertices are bitmasks over the ordered generator list.  An edge ``I <- J``
carries one arrow ``X^s_IJ`` for every ``s`` in ``I \\ J``.  Paths are stored
as flat tuples ``(I0, s1, I1, s2, I2, ...)`` and read as the product
``X^{s1}_{I0 I1} X^{s2}_{I1 I2} ...``.
"""

from __future__ import annotations

from collections import defaultdict
from functools import cached_property

from .coxeter import CoxeterSystem
from .errors import SizeError

MAX_RANK = 20

INCLUSION = "inclusion"
TRANSVERSAL = "transversal"
NONE = "none"


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def path_length(path) -> int:
    return len(path) // 2


def path_vertices(path) -> tuple:
    return path[0::2]


def path_labels(path) -> tuple:
    return path[1::2]


def path_key(path) -> tuple:
    """Total order on paths: longer is larger, then vertex sequence, then labels."""
    return (len(path) // 2, path[0::2], path[1::2])


def concat(p, q):
    """Concatenate composable paths; ``None`` when the endpoints differ."""
    if p[-1] != q[0]:
        return None
    return p + q[1:]


class Quiver:
    """Compatibility graph of a Coxeter system.

    With ``complete=True`` the commutation condition is dropped, so every pair
    with ``I \\ J`` nonempty is an edge; used to test that the extra arrows
    vanish in the algebra.
    """

    def __init__(self, system: CoxeterSystem, complete: bool = False):
        if system.rank > MAX_RANK:
            raise SizeError(f"rank {system.rank} exceeds the bitmask bound {MAX_RANK}")
        self.system = system
        self.complete = complete
        self.vertices = tuple(range(1 << system.rank))
        self._paths_from: dict = {}

    def classify(self, I: int, J: int) -> str:
        d1, d2 = I & ~J, J & ~I
        if not d1:
            return NONE
        if not self.complete:
            cm = self.system.commute_mask
            for s in _bits(d1):
                if cm[s] & d2:
                    return NONE
        return TRANSVERSAL if d2 else INCLUSION

    @cached_property
    def edges(self) -> dict:
        out = {}
        for I in self.vertices:
            for J in self.vertices:
                tag = self.classify(I, J)
                if tag != NONE:
                    out[(I, J)] = tag
        return out

    @cached_property
    def arrows_from(self) -> dict:
        """``I -> [(s, J), ...]`` for all arrows X^s_IJ, sorted."""
        out = defaultdict(list)
        for (I, J) in sorted(self.edges):
            for s in _bits(I & ~J):
                out[I].append((s, J))
        return {I: sorted(v) for I, v in out.items()}

    def is_arrow(self, I: int, J: int, s: int) -> bool:
        return (I, J) in self.edges and bool((I & ~J) >> s & 1)

    def arrows(self):
        for I in self.vertices:
            for s, J in self.arrows_from.get(I, ()):
                yield (I, s, J)

    def transversal_pairs(self):
        return sorted((I, J) for (I, J), tag in self.edges.items() if tag == TRANSVERSAL)

    def paths_from(self, I: int, max_len: int) -> dict:
        """All paths starting at ``I`` of length <= ``max_len``, grouped by end vertex."""
        cached = self._paths_from.get((I, max_len))
        if cached is not None:
            return cached
        grouped = defaultdict(list)
        layer = [(I,)]
        grouped[I].append((I,))
        arrows = self.arrows_from
        for _ in range(max_len):
            nxt = []
            for p in layer:
                for s, J in arrows.get(p[-1], ()):
                    q = p + (s, J)
                    nxt.append(q)
                    grouped[J].append(q)
            if not nxt:
                break
            layer = nxt
        grouped = dict(grouped)
        self._paths_from[(I, max_len)] = grouped
        return grouped

    def paths_between(self, I: int, J: int, max_len: int) -> list:
        return self.paths_from(I, max_len).get(J, [])

    def format_path(self, path) -> str:
        W = self.system
        if len(path) == 1:
            return "E" + W.format_subset(path[0])
        parts = []
        for k in range(0, len(path) - 1, 2):
            I, s, J = path[k], path[k + 1], path[k + 2]
            parts.append(f"X{W.format_subset(I)}->{W.format_subset(J)}^{W.generators[s]}")
        return "*".join(parts)


_QUIVER_CACHE: dict = {}


def build_compatibility_graph(W: CoxeterSystem, complete: bool = False) -> Quiver:
    key = (W, complete)
    Q = _QUIVER_CACHE.get(key)
    if Q is None:
        Q = Quiver(W, complete)
        _QUIVER_CACHE[key] = Q
    return Q


def classify_edge(Q: Quiver, I: int, J: int) -> str:
    return Q.classify(I, J)


def psi_generators(Q: Quiver) -> dict:
    """Generators of the subalgebra Psi: every vertex and every transversal edge."""
    return {"vertices": list(Q.vertices), "edges": Q.transversal_pairs()}


def to_dot(Q: Quiver) -> str:
    """DOT rendering; an edge ``I <- J`` is drawn ``J -> I``."""
    W = Q.system
    lines = ["digraph Q {"]
    for I in Q.vertices:
        lines.append(f'  "{W.format_subset(I)}";')
    for (I, J) in sorted(Q.edges, key=lambda e: (e[1], e[0])):
        style = "solid" if Q.edges[(I, J)] == INCLUSION else "dashed"
        lines.append(f'  "{W.format_subset(J)}" -> "{W.format_subset(I)}" [style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"

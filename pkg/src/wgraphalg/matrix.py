"""Dense matrices over the exact scalar types (tuples of tuples)."""

from __future__ import annotations

import bisect
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(n: int, m: int | None = None):
    m = n if m is None else m
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def identity(n: int):
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def diagonal(values):
    n = len(values)
    return tuple(tuple(values[i] if i == j else ZERO for j in range(n)) for i in range(n))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_mul(a, b):
    if not a:
        return ()
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * cols
        for k, x in enumerate(row):
            if not x:
                continue
            for j, y in enumerate(b[k]):
                if y:
                    acc[j] = acc[j] + x * y
        out.append(tuple(acc))
    return tuple(out)


def is_zero(a) -> bool:
    return not any(x for row in a for x in row)


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def rank(vectors) -> int:
    """Rank of a list of equal-length vectors over a field (Fractions or FieldElements)."""
    rows = [list(v) for v in vectors if any(v)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def flatten(a) -> tuple:
    return tuple(x for row in a for x in row)


class _Neg:
    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k


def _neg(k):
    return _Neg(k)


class SparseEchelon:
    """Incremental row echelon form of sparse vectors ``{key: value}`` with sortable keys."""

    def __init__(self):
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` after eliminating every pivot key, largest first."""
        vec = {k: v for k, v in vec.items() if v}
        todo = sorted(vec, reverse=True)
        seen = set(todo)
        while todo:
            lead = todo.pop(0)
            piv = self.pivots.get(lead)
            c = vec.get(lead)
            if piv is None or not c:
                continue
            for k, v in piv.items():
                nv = vec.get(k, 0) - c * v
                if nv:
                    vec[k] = nv
                else:
                    vec.pop(k, None)
                if k not in seen:
                    seen.add(k)
                    bisect.insort(todo, k, key=_neg)
        return vec

    def insert(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        lead = max(vec)
        c = vec[lead]
        self.pivots[lead] = {k: v / c for k, v in vec.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

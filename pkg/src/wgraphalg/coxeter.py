"""Coxeter systems, products, and finite group enumeration via the reflection representation."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    GroupTooLargeError,
    InconsistentProductError,
    NotAProductError,
    ParseError,
    ValidationError,
)
from .scalar import make_field

DEFAULT_CAP = 5000

# generator prefixes for the factors of a product name such as "A2xA1"
_FACTOR_PREFIXES = "stuwpq"


@dataclass(frozen=True)
class CoxeterSystem:
    generators: tuple
    matrix: tuple  # tuple of tuples, m[i][j]
    product: tuple | None = None  # tuple of tuples of generator indices

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise ValidationError("duplicate generator names")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValidationError("Coxeter matrix has the wrong shape")
        for i in range(n):
            for j in range(n):
                m = self.matrix[i][j]
                if not isinstance(m, int) or isinstance(m, bool):
                    raise ValidationError(f"entry m({self.generators[i]},{self.generators[j]}) = {m!r} is not a finite integer")
                if i == j and m != 1:
                    raise ValidationError(f"m({self.generators[i]},{self.generators[i]}) must be 1")
                if i != j and m < 2:
                    raise ValidationError(f"m({self.generators[i]},{self.generators[j]}) must be >= 2")
                if m != self.matrix[j][i]:
                    raise ValidationError("Coxeter matrix is not symmetric")
        if self.product is not None:
            seen = sorted(i for part in self.product for i in part)
            if seen != list(range(n)):
                raise InconsistentProductError("declared product does not partition the generators")

    # ----- basic data -----
    @property
    def rank(self) -> int:
        return len(self.generators)

    def m(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise ValidationError(f"unknown generator {name!r}") from None

    @cached_property
    def commute_mask(self) -> tuple:
        """Bitmask of generators commuting with generator i (excluding i)."""
        n = self.rank
        return tuple(
            sum(1 << j for j in range(n) if j != i and self.matrix[i][j] == 2) for i in range(n)
        )

    @cached_property
    def field(self):
        return make_field({self.matrix[i][j] for i in range(self.rank) for j in range(self.rank) if i != j})

    def orders(self) -> set:
        return {self.matrix[i][j] for i in range(self.rank) for j in range(i + 1, self.rank)}

    def subset_mask(self, names) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def subset_names(self, mask: int) -> list:
        return [g for i, g in enumerate(self.generators) if mask >> i & 1]

    def format_subset(self, mask: int) -> str:
        return "{" + ",".join(self.subset_names(mask)) + "}"

    @property
    def full_mask(self) -> int:
        return (1 << self.rank) - 1

    # ----- products -----
    @property
    def is_product(self) -> bool:
        return self.product is not None and len(self.product) >= 2

    def binary_split(self) -> tuple:
        """Index sets (S1, S2): all but the last declared factor, and the last factor."""
        if not self.is_product:
            raise NotAProductError("Coxeter system is not declared as a product")
        components(self)
        first = tuple(sorted(i for part in self.product[:-1] for i in part))
        return first, tuple(sorted(self.product[-1]))

    def restrict(self, indices) -> "CoxeterSystem":
        """Parabolic subsystem on the given generator indices (order preserved)."""
        indices = list(indices)
        pos = {g: k for k, g in enumerate(indices)}
        product = None
        if self.product is not None:
            parts = []
            for part in self.product:
                sub = tuple(pos[i] for i in part if i in pos)
                if sub:
                    parts.append(sub)
            product = tuple(parts) if len(parts) >= 2 else None
        return CoxeterSystem(
            tuple(self.generators[i] for i in indices),
            tuple(tuple(self.matrix[i][j] for j in indices) for i in indices),
            product,
        )

    def factor_systems(self) -> tuple:
        s1, s2 = self.binary_split()
        return self.restrict(s1), self.restrict(s2)

    @staticmethod
    def direct_product(w1: "CoxeterSystem", w2: "CoxeterSystem") -> "CoxeterSystem":
        gens = w1.generators + w2.generators
        if len(set(gens)) != len(gens):
            raise ValidationError("factor generator names clash")
        n1, n = w1.rank, w1.rank + w2.rank
        matrix = tuple(
            tuple(
                (w1.matrix[i][j] if i < n1 and j < n1 else
                 w2.matrix[i - n1][j - n1] if i >= n1 and j >= n1 else 2)
                if i != j else 1
                for j in range(n)
            )
            for i in range(n)
        )
        p1 = w1.product if w1.is_product else (tuple(range(n1)),)
        p2 = w2.product if w2.is_product else (tuple(range(w2.rank)),)
        parts = [p for p in p1 if p] + [tuple(i + n1 for i in p) for p in p2 if p]
        return CoxeterSystem(gens, matrix, tuple(parts) if len(parts) >= 2 else None)

    def renamed(self, names) -> "CoxeterSystem":
        names = tuple(names)
        if len(names) != self.rank or len(set(names)) != len(names):
            raise ValidationError("renaming needs one distinct name per generator")
        return CoxeterSystem(names, self.matrix, self.product)

    def describe(self) -> str:
        return ", ".join(self.generators) or "(trivial)"


# ---------- parsing ----------

_TYPE_RE = re.compile(r"(A|B|G|I2\((\d+)\))(\d*)")


def _builtin_matrix(kind: str, rank: int, m: int | None, pos: int):
    if kind == "A":
        mat = [[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(rank)] for i in range(rank)]
    elif kind == "B":
        if rank < 2:
            raise ParseError("type B needs rank >= 2", pos)
        mat = [[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(rank)] for i in range(rank)]
        mat[0][1] = mat[1][0] = 4
    elif kind == "I2":
        if m is None or m < 2:
            raise ParseError("I2(m) needs m >= 2", pos)
        mat = [[1, m], [m, 1]]
    elif kind == "G":
        if rank != 2:
            raise ParseError("only G2 exists", pos)
        mat = [[1, 6], [6, 1]]
    else:  # pragma: no cover - guarded by the regex
        raise ParseError(f"unknown type {kind!r}", pos)
    return mat


def _parse_name(text: str) -> CoxeterSystem:
    pieces = text.split("x")
    blocks = []
    pos = 0
    for k, piece in enumerate(pieces):
        mt = _TYPE_RE.fullmatch(piece)
        if not mt:
            raise ParseError(f"unknown Coxeter type {piece!r}", pos)
        head, m_text, rank_text = mt.group(1), mt.group(2), mt.group(3)
        if head.startswith("I2"):
            if rank_text:
                raise ParseError("I2(m) takes no rank suffix", pos + len(head))
            kind, rank, m = "I2", 2, int(m_text)
        else:
            if not rank_text:
                raise ParseError(f"type {head} needs a rank", pos + len(head))
            kind, rank, m = head, int(rank_text), None
        blocks.append(_builtin_matrix(kind, rank, m, pos))
        pos += len(piece) + 1
    gens, parts = [], []
    for k, mat in enumerate(blocks):
        prefix = _FACTOR_PREFIXES[k] if k < len(_FACTOR_PREFIXES) else f"g{k}_"
        start = len(gens)
        gens += [f"{prefix}{i + 1}" for i in range(len(mat))]
        parts.append(tuple(range(start, len(gens))))
    n = len(gens)
    matrix = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for part, mat in zip(parts, blocks):
        for a, i in enumerate(part):
            for b, j in enumerate(part):
                matrix[i][j] = mat[a][b]
    parts = [p for p in parts if p]
    product = tuple(parts) if len(blocks) >= 2 else None
    return CoxeterSystem(tuple(gens), tuple(tuple(r) for r in matrix), product)


def coxeter_from_document(doc: dict) -> CoxeterSystem:
    try:
        gens = tuple(doc["generators"])
        raw = doc["matrix"]
    except (KeyError, TypeError):
        raise ParseError("Coxeter document needs 'generators' and 'matrix'") from None
    matrix = []
    for i, row in enumerate(raw):
        out = []
        for j, m in enumerate(row):
            if m is None or m in ("inf", "infinity") or (isinstance(m, float) and m == float("inf")) or m == 0:
                raise ParseError(f"infinite or zero entry at row {i}, column {j}")
            out.append(m)
        matrix.append(tuple(out))
    product = None
    if doc.get("product") is not None:
        index = {g: k for k, g in enumerate(gens)}
        parts = []
        for part in doc["product"]:
            try:
                parts.append(tuple(sorted(index[g] for g in part)))
            except KeyError as exc:
                raise ParseError(f"unknown generator {exc.args[0]!r} in product") from None
        product = tuple(parts)
    W = CoxeterSystem(gens, tuple(matrix), product)
    if W.product is not None:
        components(W)
    return W


def parse_coxeter(text: str) -> CoxeterSystem:
    """Builtin name (``A2``, ``B3``, ``I2(5)``, ``G2``, ``A2xA1``, ``A0``) or a JSON document."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
        return coxeter_from_document(doc)
    if stripped in ("trivial", "1"):
        return CoxeterSystem((), (), None)
    return _parse_name(stripped)


def coxeter_to_document(W: CoxeterSystem) -> dict:
    doc = {"generators": list(W.generators), "matrix": [list(r) for r in W.matrix]}
    if W.product is not None:
        doc["product"] = [[W.generators[i] for i in part] for part in W.product]
    return doc


# ---------- diagram components ----------

def components(W: CoxeterSystem) -> list:
    """Connected components of the Coxeter diagram as sorted index tuples."""
    n = W.rank
    seen, comps = set(), []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and W.matrix[i][j] >= 3:
                    seen.add(j)
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    if W.product is not None:
        owner = {}
        for k, part in enumerate(W.product):
            for i in part:
                owner[i] = k
        for comp in comps:
            if len({owner[i] for i in comp}) > 1:
                names = [W.generators[i] for i in comp]
                raise InconsistentProductError(f"component {names} straddles declared factors")
    return comps


# ---------- the finite group ----------

@dataclass(frozen=True)
class GroupElement:
    index: int
    word: tuple  # ShortLex-minimal word as generator indices
    length: int


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n) if a[i][k] and b[k][j]), start=a[0][0] * 0)
              for j in range(n))
        for i in range(n)
    )


def _key(mat):
    return tuple(c.coords for row in mat for c in row)


class FiniteCoxeterGroup:
    """Elements of W with left/right multiplication tables.

    Elements are enumerated in ShortLex order of their normal-form words;
    index 0 is the identity.
    """

    def __init__(self, W: CoxeterSystem, cap: int = DEFAULT_CAP):
        if cap < 1:
            raise ValueError("cap must be >= 1")
        self.system = W
        k = W.field
        n = W.rank
        self.generator_matrices = []
        for s in range(n):
            rows = []
            for i in range(n):
                row = []
                for j in range(n):
                    val = k.element([1 if i == j else 0])
                    if i == s:
                        # rho(s) alpha_j = alpha_j - 2B(s,j) alpha_s, 2B(s,j) = -2cos(pi/m)
                        two_b = k.element([2]) if j == s else -k.two_cos(1, W.m(s, j))
                        val = val - two_b
                    row.append(val)
                rows.append(tuple(row))
            self.generator_matrices.append(tuple(rows))
        ident = tuple(tuple(k.element([1 if i == j else 0]) for j in range(n)) for i in range(n))
        self.matrices = [ident]
        self.elements = [GroupElement(0, (), 0)]
        lookup = {_key(ident): 0}
        self._right = [[None] * n]
        frontier = [0]
        while frontier:
            nxt = []
            for idx in frontier:
                for s in range(n):
                    if self._right[idx][s] is not None:
                        continue
                    mat = _matmul(self.matrices[idx], self.generator_matrices[s])
                    key = _key(mat)
                    j = lookup.get(key)
                    if j is None:
                        if len(self.elements) >= cap:
                            raise GroupTooLargeError(cap, len(self.elements))
                        j = len(self.elements)
                        lookup[key] = j
                        el = self.elements[idx]
                        self.elements.append(GroupElement(j, el.word + (s,), el.length + 1))
                        self.matrices.append(mat)
                        self._right.append([None] * n)
                        nxt.append(j)
                    self._right[idx][s] = j
                    self._right[j][s] = idx
            frontier = nxt
        self._lookup = lookup
        self._left = [[None] * n for _ in self.elements]

    def __len__(self):
        return len(self.elements)

    def right_mult(self, idx: int, s: int) -> int:
        return self._right[idx][s]

    def left_mult(self, s: int, idx: int) -> int:
        j = self._left[idx][s]
        if j is None:
            j = self._lookup[_key(_matmul(self.generator_matrices[s], self.matrices[idx]))]
            self._left[idx][s] = j
        return j

    def from_word(self, word) -> int:
        idx = 0
        for s in word:
            idx = self.right_mult(idx, s)
        return idx

    def length(self, idx: int) -> int:
        return self.elements[idx].length

    def root_length(self, idx: int) -> int:
        """Coxeter length as the number of positive roots sent to negative roots."""
        mat = self.matrices[idx]
        n = self.system.rank
        count = 0
        for root in self.positive_roots:
            image = [sum((mat[i][j] * root[j] for j in range(n)), start=mat[0][0] * 0) for i in range(n)]
            if _is_negative(image):
                count += 1
        return count

    @cached_property
    def positive_roots(self) -> list:
        n = self.system.rank
        k = self.system.field
        simple = [tuple(k.element([1 if i == j else 0]) for i in range(n)) for j in range(n)]
        roots = {tuple(c.coords for c in r): r for r in simple}
        frontier = list(simple)
        while frontier:
            nxt = []
            for r in frontier:
                for g in self.generator_matrices:
                    img = tuple(sum((g[i][j] * r[j] for j in range(n)), start=k.zero()) for i in range(n))
                    key = tuple(c.coords for c in img)
                    if key not in roots:
                        roots[key] = img
                        nxt.append(img)
            frontier = nxt
        return [r for r in roots.values() if not _is_negative(r)]


def _is_negative(vec) -> bool:
    for c in vec:
        if c:
            return float(c) < 0
    return False


def enumerate_elements(W: CoxeterSystem, cap: int = DEFAULT_CAP) -> list:
    return FiniteCoxeterGroup(W, cap).elements


_GROUP_CACHE: dict = {}


def coxeter_group(W: CoxeterSystem, cap: int = DEFAULT_CAP) -> FiniteCoxeterGroup:
    key = (W.generators, W.matrix)
    group = _GROUP_CACHE.get(key)
    if group is None:
        group = FiniteCoxeterGroup(W, cap)
        _GROUP_CACHE[key] = group
    return group

"""Free algebra on the symbols e_s, x_s with Laurent-polynomial coefficients.

A word is a tuple of symbol codes: ``2*i`` stands for e_{s_i} and
``2*i + 1`` for x_{s_i}.  No rewriting happens here; relations live in the path algebra.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .coxeter import CoxeterSystem
from .errors import WGraphAlgError
from .paths import OmegaElement, is_scalar
from .quiver import Quiver
from .scalar import FieldElement, LaurentPoly, format_scalar


def e_code(i: int) -> int:
    return 2 * i


def x_code(i: int) -> int:
    return 2 * i + 1


class FreeElement:
    """Sparse map ``word -> coefficient``; the empty word is the unit."""

    __slots__ = ("system", "terms")

    def __init__(self, system: CoxeterSystem, terms=None):
        self.system = system
        self.terms = {w: c for w, c in terms.items() if c} if terms else {}

    @classmethod
    def one(cls, W):
        return cls(W, {(): Fraction(1)})

    @classmethod
    def e(cls, W, s):
        return cls(W, {(e_code(_gen(W, s)),): Fraction(1)})

    @classmethod
    def x(cls, W, s):
        return cls(W, {(x_code(_gen(W, s)),): Fraction(1)})

    def _coerce(self, other):
        if isinstance(other, FreeElement):
            return other
        if is_scalar(other):
            return FreeElement.one(self.system) * other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return FreeElement(self.system, out)

    __radd__ = __add__

    def __neg__(self):
        return FreeElement(self.system, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            return FreeElement(self.system, {w: c * other for w, c in self.terms.items()})
        if not isinstance(other, FreeElement):
            return NotImplemented
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                prod = c1 * c2
                out[w] = out[w] + prod if w in out else prod
        return FreeElement(self.system, out)

    def __rmul__(self, other):
        if is_scalar(other):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        out = FreeElement.one(self.system)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, word) -> object:
        return self.terms.get(tuple(word), 0)

    def format_word(self, word) -> str:
        if not word:
            return "1"
        names = self.system.generators
        return "*".join(("x_" if c & 1 else "e_") + names[c >> 1] for c in word)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for idx, w in enumerate(sorted(self.terms, key=lambda w: (len(w), w))):
            text, neg = format_scalar(self.terms[w])
            body = self.format_word(w)
            if text != "1":
                body = text if body == "1" else f"{text}*{body}"
            sign = ("-" if neg else "") if idx == 0 else (" - " if neg else " + ")
            chunks.append(sign + body)
        return "".join(chunks)

    __repr__ = __str__


def _gen(W: CoxeterSystem, s) -> int:
    if isinstance(s, int):
        if not 0 <= s < W.rank:
            raise WGraphAlgError(f"generator index {s} out of range")
        return s
    return W.index(s)


def iota_T(W: CoxeterSystem, s) -> FreeElement:
    """Image of T_s: ``-v^-1 e_s + v (1 - e_s) + x_s``."""
    i = _gen(W, s)
    v = LaurentPoly.v(1)
    return FreeElement(W, {
        (e_code(i),): -LaurentPoly.v(-1) - v,
        (): v,
        (x_code(i),): LaurentPoly.const(1),
    })


def commutator(a, b):
    return a * b - b * a


def braid_commutator(W: CoxeterSystem, s, t) -> FreeElement:
    """Alternating product of m factors starting at s minus the one starting at t."""
    i, j = _gen(W, s), _gen(W, t)
    if i == j:
        raise WGraphAlgError("braid commutator needs two distinct generators")
    m = W.m(i, j)
    Ts, Tt = iota_T(W, i), iota_T(W, j)
    left = FreeElement.one(W)
    right = FreeElement.one(W)
    for k in range(m):
        left = left * (Ts if k % 2 == 0 else Tt)
        right = right * (Tt if k % 2 == 0 else Ts)
    return left - right


def extract_y(W: CoxeterSystem, s, t) -> dict:
    """``{gamma: y^gamma(s,t)}`` with integer coefficients (as Fractions)."""
    delta = braid_commutator(W, s, t)
    out = defaultdict(dict)
    for word, coef in delta.terms.items():
        poly = coef if isinstance(coef, LaurentPoly) else LaurentPoly.const(coef)
        for k, c in poly.terms.items():
            if isinstance(c, FieldElement):
                if not c.is_rational():
                    raise WGraphAlgError("braid commutator has a non-rational coefficient")
                c = c.rational_value()
            out[k][word] = Fraction(c)
    return {k: FreeElement(W, v) for k, v in sorted(out.items()) if v}


def symbol_images(Q: Quiver) -> dict:
    """Path-algebra image of every symbol, pruned by Q."""
    W = Q.system
    images = {}
    for i in range(W.rank):
        bit = 1 << i
        images[e_code(i)] = {(I,): Fraction(1) for I in Q.vertices if I & bit}
        images[x_code(i)] = {(I, i, J): Fraction(1) for I, s, J in Q.arrows() if s == i}
    return images


def expand_to_paths(f: FreeElement, Q: Quiver) -> OmegaElement:
    """Substitute e_s -> sum of E_I over I containing s, x_s -> sum of arrows labelled s."""
    images = symbol_images(Q)
    unit = {(I,): Fraction(1) for I in Q.vertices}
    cache = {(): unit}

    def word_image(word):
        got = cache.get(word)
        if got is not None:
            return got
        prefix = word_image(word[:-1])
        last = images[word[-1]]
        by_start = defaultdict(list)
        for q in last:
            by_start[q[0]].append(q)
        out = {}
        for p in prefix:
            for q in by_start.get(p[-1], ()):
                out[p + q[1:]] = Fraction(1)
        cache[word] = out
        return out

    total = {}
    for word, coef in f.terms.items():
        for p in word_image(word):
            total[p] = total[p] + coef if p in total else coef
    return OmegaElement(Q, total)


def sort_idempotent_runs(f: FreeElement) -> FreeElement:
    """Rewrite using only ``e_s e_t = e_t e_s``: sort every maximal run of e-symbols."""
    out = {}
    for word, coef in f.terms.items():
        new = []
        run = []
        for c in word:
            if c & 1:
                new.extend(sorted(run))
                run = []
                new.append(c)
            else:
                run.append(c)
        new.extend(sorted(run))
        w = tuple(new)
        out[w] = out[w] + coef if w in out else coef
    return FreeElement(f.system, out)


def gyoja_residues(W: CoxeterSystem, s, t=None) -> list:
    """The idempotent/commutation relations on e_s, x_s (and e_t when given)."""
    es, xs = FreeElement.e(W, s), FreeElement.x(W, s)
    out = [es * es - es, es * xs - xs, xs * es]
    if t is not None:
        out.append(commutator(es, FreeElement.e(W, t)))
    return out

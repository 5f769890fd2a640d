"""Iwahori-Hecke algebra of a finite Coxeter group in the standard basis T_w."""

from __future__ import annotations

from fractions import Fraction

from .coxeter import CoxeterSystem, FiniteCoxeterGroup, coxeter_group
from .paths import is_scalar
from .scalar import LaurentPoly, format_scalar

_Q = LaurentPoly.v(1) - LaurentPoly.v(-1)


class HeckeElement:
    """Sparse map ``group element index -> Laurent coefficient``."""

    __slots__ = ("group", "terms")

    def __init__(self, group: FiniteCoxeterGroup, terms=None):
        self.group = group
        self.terms = {w: c for w, c in terms.items() if c} if terms else {}

    @classmethod
    def one(cls, group):
        return cls(group, {0: Fraction(1)})

    @classmethod
    def T(cls, group, word):
        """T_w for the element represented by ``word`` (generator indices)."""
        return cls(group, {group.from_word(word): Fraction(1)})

    def _coerce(self, other):
        if isinstance(other, HeckeElement):
            return other
        if is_scalar(other):
            return HeckeElement.one(self.group) * other
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement(self.group, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            return HeckeElement(self.group, {w: c * other for w, c in self.terms.items()})
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return hecke_mult(self, other)

    def __rmul__(self, other):
        if is_scalar(other):
            return self * other
        return NotImplemented

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

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.group.system.generators
        chunks = []
        for idx, w in enumerate(sorted(self.terms)):
            word = self.group.elements[w].word
            body = "1" if not word else "*".join("T_" + names[s] for s in word)
            text, neg = format_scalar(self.terms[w])
            if text != "1":
                body = text if body == "1" else f"{text}*{body}"
            sign = ("-" if neg else "") if idx == 0 else (" - " if neg else " + ")
            chunks.append(sign + body)
        return "".join(chunks)

    __repr__ = __str__


def _left_T(group: FiniteCoxeterGroup, s: int, terms: dict) -> dict:
    """T_s * sum c_x T_x."""
    out = {}

    def add(k, c):
        nv = out[k] + c if k in out else c
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)

    for x, c in terms.items():
        sx = group.left_mult(s, x)
        add(sx, c)
        if group.length(sx) < group.length(x):
            add(x, c * _Q)
    return out


def hecke_mult(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    group = a.group
    out = {}
    for w, c in a.terms.items():
        acc = dict(b.terms)
        for s in reversed(group.elements[w].word):
            acc = _left_T(group, s, acc)
        for k, v in acc.items():
            nv = out[k] + c * v if k in out else c * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return HeckeElement(group, out)


def hecke_algebra(W: CoxeterSystem) -> FiniteCoxeterGroup:
    return coxeter_group(W)


def generator(W_or_group, s) -> HeckeElement:
    group = W_or_group if isinstance(W_or_group, FiniteCoxeterGroup) else coxeter_group(W_or_group)
    i = s if isinstance(s, int) else group.system.index(s)
    return HeckeElement.T(group, (i,))

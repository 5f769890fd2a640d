"""Elements of the path algebra kQ_W: finite linear combinations of paths."""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from numbers import Rational

from .quiver import Quiver, path_key
from .scalar import FieldElement, LaurentPoly, format_scalar

SCALARS = (int, Rational, FieldElement, LaurentPoly)


def is_scalar(x) -> bool:
    return isinstance(x, SCALARS)


class OmegaElement:
    """Sparse combination ``{path: coefficient}`` over a fixed quiver.

    Coefficients may be rationals, field elements or Laurent polynomials in v;
    paths that do not compose multiply to zero.
    """

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms=None):
        self.quiver = quiver
        self.terms = {p: c for p, c in terms.items() if c} if terms else {}

    # ----- constructors -----
    @classmethod
    def zero(cls, Q):
        return cls(Q)

    @classmethod
    def vertex(cls, Q, I: int):
        return cls(Q, {(I,): Fraction(1)})

    @classmethod
    def unit(cls, Q):
        return cls(Q, {(I,): Fraction(1) for I in Q.vertices})

    @classmethod
    def arrow(cls, Q, I: int, J: int, s: int):
        """X^s_IJ, or zero when it is not an arrow of Q."""
        if not Q.is_arrow(I, J, s):
            return cls(Q)
        return cls(Q, {(I, s, J): Fraction(1)})

    @classmethod
    def edge(cls, Q, I: int, J: int, s: int | None = None):
        """X_IJ with the smallest label in I \\ J unless ``s`` is given."""
        if s is None:
            diff = I & ~J
            if not diff:
                return cls(Q)
            s = (diff & -diff).bit_length() - 1
        return cls.arrow(Q, I, J, s)

    @classmethod
    def from_path(cls, Q, path, coef=Fraction(1)):
        return cls(Q, {tuple(path): coef})

    # ----- arithmetic -----
    def _check(self, other):
        if other.quiver is not self.quiver:
            raise ValueError("elements live over different quivers")

    def __add__(self, other):
        if is_scalar(other):
            other = OmegaElement.unit(self.quiver) * other
        elif not isinstance(other, OmegaElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out[p] + c if p in out else c
        return OmegaElement(self.quiver, out)

    __radd__ = __add__

    def __neg__(self):
        return OmegaElement(self.quiver, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        if is_scalar(other):
            other = OmegaElement.unit(self.quiver) * other
        elif not isinstance(other, OmegaElement):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            if not other:
                return OmegaElement(self.quiver)
            return OmegaElement(self.quiver, {p: c * other for p, c in self.terms.items()})
        if not isinstance(other, OmegaElement):
            return NotImplemented
        self._check(other)
        by_start = defaultdict(list)
        for q, b in other.terms.items():
            by_start[q[0]].append((q, b))
        out = {}
        for p, a in self.terms.items():
            for q, b in by_start.get(p[-1], ()):
                r = p + q[1:]
                prod = a * b
                out[r] = out[r] + prod if r in out else prod
        return OmegaElement(self.quiver, out)

    def __rmul__(self, other):
        if is_scalar(other):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n: int):
        out = OmegaElement.unit(self.quiver)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if is_scalar(other):
            if not other:
                return not self.terms
            other = OmegaElement.unit(self.quiver) * other
        if not isinstance(other, OmegaElement):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[p] == other.terms[p] for p in self.terms)

    __hash__ = None

    # ----- structure -----
    @property
    def max_length(self) -> int:
        return max((len(p) // 2 for p in self.terms), default=0)

    def blocks(self) -> dict:
        """Split into components ``E_a (.) E_b`` keyed by ``(a, b)``."""
        out = defaultdict(dict)
        for p, c in self.terms.items():
            out[(p[0], p[-1])][p] = c
        return {k: OmegaElement(self.quiver, v) for k, v in out.items()}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda pc: path_key(pc[0]))

    def map_coefficients(self, fn):
        return OmegaElement(self.quiver, {p: fn(c) for p, c in self.terms.items()})

    def __repr__(self):
        return f"OmegaElement({self})"

    def __str__(self):
        return format_element(self)


def format_element(e: OmegaElement) -> str:
    """Render in the expression syntax; re-parses to an equal element."""
    if not e.terms:
        return "0"
    chunks = []
    for idx, (p, c) in enumerate(e.sorted_terms()):
        text, neg = format_scalar(c)
        body = e.quiver.format_path(p)
        if text != "1":
            body = f"{text}*{body}"
        if idx == 0:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


def commutator(a: OmegaElement, b: OmegaElement) -> OmegaElement:
    return a * b - b * a

"""Exact scalars: the real cyclotomic field Q(2cos(pi/L)) and Laurent polynomials in v.

Coefficient types used across the package are ``Fraction`` (the prime field),
:class:`FieldElement` and :class:`LaurentPoly`.  Mixed arithmetic coerces
upwards in that order, so any of them can sit in the coefficient slot of a
path-algebra or free-algebra element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import IncompatibleFieldError, UnsupportedOrderError

__all__ = [
    "FieldSpec",
    "FieldElement",
    "LaurentPoly",
    "make_field",
    "laurent_arith",
    "cyclotomic_polynomial",
    "chebyshev_c",
    "format_scalar",
    "to_float",
]


# ---------- integer polynomial helpers (coefficients low -> high) ----------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdiv_exact(num, den):
    """Exact division of integer polynomials, ``den`` monic."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        raise ValueError("degree too small")
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        q[k - dn] = c
        if c:
            for j, d in enumerate(den):
                num[k - dn + j] -= c * d
    if any(num[:dn]):
        raise ValueError("division not exact")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _pdiv_exact(p, cyclotomic_polynomial(d))
    return tuple(p)


@lru_cache(maxsize=None)
def chebyshev_c(k: int) -> tuple:
    """C_k with 2cos(k*phi) = C_k(2cos(phi)): C_0 = 2, C_1 = y, C_k = y C_{k-1} - C_{k-2}."""
    if k == 0:
        return (2,)
    if k == 1:
        return (0, 1)
    a, b = list(chebyshev_c(k - 1)), list(chebyshev_c(k - 2))
    out = [0] + a
    for i, c in enumerate(b):
        out[i] -= c
    return tuple(_trim(out))


def _min_poly_two_cos(L: int) -> tuple:
    # Phi_{2L}(x) = x^d * psi(x + 1/x) for the palindromic cyclotomic polynomial.
    phi = cyclotomic_polynomial(2 * L)
    d = (len(phi) - 1) // 2
    psi = [phi[d]]
    for k in range(1, d + 1):
        ck = chebyshev_c(k)
        psi += [0] * (len(ck) - len(psi))
        for i, c in enumerate(ck):
            psi[i] += phi[d + k] * c
    return tuple(_trim(psi))


# ---------- the field ----------

@dataclass(frozen=True)
class FieldSpec:
    """Q(theta) with theta = 2cos(pi/conductor)."""

    conductor: int
    minpoly: tuple
    _reduce_table: tuple = field(default=(), compare=False, repr=False)

    @property
    def degree(self) -> int:
        return len(self.minpoly) - 1

    @property
    def theta_float(self) -> float:
        return 2.0 * math.cos(math.pi / self.conductor)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def element(self, coords) -> "FieldElement":
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            return self.from_poly(coords)
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords))

    def from_poly(self, poly) -> "FieldElement":
        """Reduce an arbitrary rational polynomial in theta modulo the minimal polynomial."""
        d = self.degree
        out = [Fraction(0)] * d
        table = self._reduce_table
        for k, c in enumerate(poly):
            if not c:
                continue
            if k < d:
                out[k] += c
            else:
                row = table[k] if k < len(table) else self._power(k)
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return FieldElement(self, tuple(out))

    def _power(self, k):
        # coordinates of theta^k
        d = self.degree
        cur = [Fraction(0)] * d
        if d == 1:
            cur[0] = Fraction(-self.minpoly[0]) ** k
            return tuple(cur)
        cur[0] = Fraction(1)
        for _ in range(k):
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * self.minpoly[i]
        return tuple(cur)

    def zero(self) -> "FieldElement":
        return FieldElement(self, (Fraction(0),) * self.degree)

    def one(self) -> "FieldElement":
        return self.element([1])

    def theta(self) -> "FieldElement":
        return self.from_poly([0, 1])

    def contains_order(self, m: int) -> bool:
        return self.conductor % m == 0

    def two_cos(self, j: int, m: int) -> "FieldElement":
        """2cos(pi*j/m) in the theta basis; requires m | conductor."""
        if m < 1 or self.conductor % m:
            raise IncompatibleFieldError(
                f"2cos(pi*{j}/{m}) is not expressible in Q(2cos(pi/{self.conductor}))"
            )
        k = abs(j) * (self.conductor // m)
        return self.from_poly(chebyshev_c(k))

    def __str__(self):
        return f"Q(2cos(pi/{self.conductor}))"


@lru_cache(maxsize=None)
def _field_for_conductor(L: int) -> FieldSpec:
    poly = _min_poly_two_cos(L)
    fs = FieldSpec(L, poly)
    d = len(poly) - 1
    table = tuple(fs._power(k) for k in range(2 * d + 1))
    object.__setattr__(fs, "_reduce_table", table)
    return fs


def make_field(orders) -> FieldSpec:
    """Smallest Q(2cos(pi/L)) containing 2cos(pi*j/m) for every m in ``orders``."""
    orders = list(orders)
    for m in orders:
        if m is None or (isinstance(m, float) and math.isinf(m)):
            raise UnsupportedOrderError("infinite order is not supported")
        if not isinstance(m, int) or m < 2:
            raise UnsupportedOrderError(f"unsupported order {m!r}")
    return _field_for_conductor(math.lcm(*orders) if orders else 2)


# ---------- field elements ----------

class FieldElement:
    """Element of a :class:`FieldSpec`, stored in the basis 1, theta, ..., theta^(d-1)."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FieldSpec, coords: tuple):
        self.field = field
        self.coords = coords

    # coercion
    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self, other
            if other.field.is_rational:
                return self, self.field.element([other.coords[0]])
            if self.field.is_rational:
                return other.field.element([self.coords[0]]), other
            raise IncompatibleFieldError(f"cannot combine elements of {self.field} and {other.field}")
        if isinstance(other, (int, Rational)):
            return self, self.field.element([other])
        return None

    def __add__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-x for x in self.coords))

    def __sub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, tuple(x - y for x, y in zip(a.coords, b.coords)))

    def __rsub__(self, other):
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return FieldElement(a.field, tuple(y - x for x, y in zip(a.coords, b.coords)))

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return FieldElement(self.field, tuple(x * other for x in self.coords))
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.field.degree == 1:
            return FieldElement(a.field, (a.coords[0] * b.coords[0],))
        prod = [Fraction(0)] * (2 * a.field.degree - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] += x * y
        return a.field.from_poly(prod)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        if self.field.degree == 1:
            return FieldElement(self.field, (1 / self.coords[0],))
        # extended Euclid in Q[x] against the minimal polynomial
        a = _qtrim(list(self.coords))
        b = [Fraction(c) for c in self.field.minpoly]
        s0, s1 = [Fraction(1)], []
        while len(b) > 0:
            q, r = _qdivmod(a, b)
            a, b = b, r
            s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        # now a is a nonzero constant, s0 * self == a
        c = a[0]
        return self.field.from_poly([x / c for x in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return FieldElement(self.field, tuple(x / Fraction(other) for x in self.coords))
        pair = self._lift(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self.coords == other.coords
            if self.field.is_rational or other.field.is_rational:
                return self.is_rational() and other.is_rational() and self.coords[0] == other.coords[0]
            return False
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field.conductor, self.coords))

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self):
        return self.coords[0] if self.is_rational() else None

    def __float__(self):
        t = self.field.theta_float
        return float(sum(float(c) * t**i for i, c in enumerate(self.coords)))

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if k == 0 else ("theta" if k == 1 else f"theta^{k}")
            parts.append((c, mono))
        if not parts:
            return "0"
        return _join_terms(parts)


def _qtrim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _qtrim(out)


def _qsub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _qtrim([Fraction(x) for x in out])


def _qdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[k + i] -= c * y
        a.pop()
        _qtrim(a)
    return _qtrim(q), a


def _join_terms(parts):
    """Render [(rational coefficient, monomial string)] as a signed sum."""
    out = []
    for idx, (c, mono) in enumerate(parts):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono == "":
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------- Laurent polynomials ----------

class LaurentPoly:
    """Finite sum of c_k v^k with coefficients in Q or in a :class:`FieldSpec`."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[k] = c
        self.terms = clean

    @classmethod
    def v(cls, k: int = 1) -> "LaurentPoly":
        return cls({k: Fraction(1)})

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    def _as_laurent(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Rational, FieldElement)):
            return LaurentPoly({0: other})
        return None

    def __add__(self, other):
        o = self._as_laurent(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            out[k] = out[k] + c if k in out else c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = self._as_laurent(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._as_laurent(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, FieldElement)):
            if not other:
                return LaurentPoly()
            return LaurentPoly({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                p = a * b
                out[k] = out[k] + p if k in out else p
        return LaurentPoly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ZeroDivisionError("only monomials are invertible")
            (k, c), = self.terms.items()
            inv = Fraction(1) / c
            return LaurentPoly({-k: inv}) ** (-n)
        out = LaurentPoly({0: Fraction(1)})
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._as_laurent(other)
        if o is None:
            return NotImplemented
        if set(self.terms) != set(o.terms):
            return False
        return all(self.terms[k] == o.terms[k] for k in self.terms)

    def __hash__(self):
        if not self.terms:
            return hash(0)
        if set(self.terms) == {0}:
            return hash(self.terms[0])
        return hash(frozenset(self.terms.items()))

    def coefficient(self, k: int):
        return self.terms.get(k, Fraction(0))

    def degree_range(self):
        if not self.terms:
            return None
        return min(self.terms), max(self.terms)

    def normalize(self) -> "LaurentPoly":
        return LaurentPoly(self.terms)

    @property
    def field(self):
        for c in self.terms.values():
            if isinstance(c, FieldElement) and not c.field.is_rational:
                return c.field
        return None

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for idx, k in enumerate(sorted(self.terms, reverse=True)):
            text, neg = format_scalar(self.terms[k])
            mono = "" if k == 0 else ("v" if k == 1 else f"v^{k}")
            if not mono:
                body = text
            elif text == "1":
                body = mono
            else:
                body = f"{text}*{mono}"
            if idx == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)


def laurent_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    fa, fb = a.field, b.field
    if fa is not None and fb is not None and fa != fb:
        raise IncompatibleFieldError(f"cannot combine Laurent polynomials over {fa} and {fb}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# ---------- shared formatting ----------

def format_scalar(c):
    """Return ``(text, negative)``; ``text`` is the absolute value, parenthesised if compound."""
    if isinstance(c, int) or isinstance(c, Rational):
        c = Fraction(c)
        return str(abs(c)), c < 0
    if isinstance(c, FieldElement):
        if c.is_rational():
            r = c.coords[0]
            return str(abs(r)), r < 0
        return f"({c})", False
    if isinstance(c, LaurentPoly):
        if set(c.terms) <= {0}:
            return format_scalar(c.terms.get(0, Fraction(0)))
        if len(c.terms) == 1:
            (k, coef), = c.terms.items()
            if isinstance(coef, Fraction) or (isinstance(coef, FieldElement) and coef.is_rational()):
                r = coef if isinstance(coef, Fraction) else coef.coords[0]
                mono = "v" if k == 1 else f"v^{k}"
                body = mono if abs(r) == 1 else f"{abs(r)}*{mono}"
                return body, r < 0
        return f"({c})", False
    return str(c), False


def to_float(c) -> float:
    if isinstance(c, LaurentPoly):
        raise TypeError("Laurent polynomial has no real value")
    return float(c)

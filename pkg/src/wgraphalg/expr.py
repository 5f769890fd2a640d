"""Expression mini-language for scalars and algebra elements.

Grammar (``^`` accepts any integer exponent on a factor)::

    EXPR   ::= ['-'] TERM (('+'|'-') TERM)*
    TERM   ::= POWER ('*' POWER)*
    POWER  ::= FACTOR ('^' ['-'] int)?
    FACTOR ::= rational | 'v' | 'theta' | GEN | '(' EXPR ')' | '-' FACTOR
    GEN    ::= 'e_'name | 'x_'name | 'T_'name | 'E{' names '}'
             | 'X{' names '}->{' names '}' ['^' name] | 'F{' label '}'

The domain decides which generators are legal: ``omega`` takes everything
(e_s, x_s and T_s are expanded to paths), ``free`` takes e_s, x_s, T_s,
``hecke`` takes T_s, ``scalar`` takes none.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .coxeter import CoxeterSystem
from .errors import ParseError, ValidationError
from .scalar import FieldElement, FieldSpec, LaurentPoly

DOMAINS = ("omega", "free", "hecke", "scalar")

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<arrow>->)
  | (?P<name>[A-Za-z_][A-Za-z0-9_.]*)
  | (?P<op>[-+*^(){},])
""", re.VERBOSE)


def tokenize(text: str) -> list:
    """List of ``(kind, value, position)`` with a trailing ``("end", "", len)``."""
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def simplify_scalar(c):
    """Collapse constant Laurent polynomials and rational field elements to plain values."""
    if isinstance(c, LaurentPoly):
        if not c.terms:
            return Fraction(0)
        if set(c.terms) == {0}:
            c = c.terms[0]
        else:
            return c
    if isinstance(c, FieldElement) and c.is_rational():
        return c.coords[0]
    if isinstance(c, int):
        return Fraction(c)
    return c


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, FieldElement, LaurentPoly))


class _Parser:
    def __init__(self, text, W, domain, field, quiver, labels):
        if domain not in DOMAINS:
            raise ValueError(f"unknown domain {domain!r}")
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.W = W
        self.domain = domain
        self.field = field
        self.quiver = quiver
        self.labels = labels or {}
        self._group = None
        self._images = None

    # token helpers
    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def fail(self, msg, pos=None):
        raise ParseError(msg, self.peek()[2] if pos is None else pos)

    # arithmetic on mixed scalar/element values
    def lift(self, x):
        if not _is_scalar(x):
            return x
        c = simplify_scalar(x)
        if self.domain == "omega":
            from .paths import OmegaElement
            return OmegaElement.unit(self.quiver) * c
        if self.domain == "free":
            from .freealg import FreeElement
            return FreeElement.one(self.W) * c
        if self.domain == "hecke":
            from .hecke import HeckeElement
            return HeckeElement.one(self.group) * c
        return c

    def add(self, a, b, sign=1):
        if _is_scalar(a) and _is_scalar(b):
            return simplify_scalar(a + b if sign > 0 else a - b)
        a, b = self.lift(a), self.lift(b)
        return a + b if sign > 0 else a - b

    def mul(self, a, b):
        if _is_scalar(a) and _is_scalar(b):
            return simplify_scalar(a * b)
        if _is_scalar(a):
            return b * simplify_scalar(a)
        if _is_scalar(b):
            return a * simplify_scalar(b)
        return a * b

    @property
    def group(self):
        if self._group is None:
            from .coxeter import coxeter_group
            self._group = coxeter_group(self.W)
        return self._group

    # grammar
    def parse(self):
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            self.fail(f"unexpected {val!r}", pos)
        return value

    def expr(self):
        if self.peek()[1] == "-":
            self.take()
            value = self.mul(Fraction(-1), self.term())
        else:
            value = self.term()
        while self.peek()[1] in "+-" and self.peek()[0] == "op":
            op = self.take()[1]
            value = self.add(value, self.term(), 1 if op == "+" else -1)
        return value

    def term(self):
        value = self.power()
        while self.peek()[1] == "*":
            self.take()
            value = self.mul(value, self.power())
        return value

    def power(self):
        base = self.factor()
        if self.peek()[1] != "^":
            return base
        self.take()
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        kind, val, pos = self.take()
        if kind != "num" or "/" in val:
            self.fail("exponent must be an integer", pos)
        n = int(val)
        if not neg:
            out = Fraction(1)
            for _ in range(n):
                out = self.mul(out, base)
            return out
        if isinstance(base, LaurentPoly) and len(base.terms) == 1:
            (k, c), = base.terms.items()
            return simplify_scalar(LaurentPoly({-k * n: (1 / c) ** n}))
        if isinstance(base, (Fraction, FieldElement)) and base:
            return simplify_scalar((1 / base) ** n)
        self.fail("negative exponent needs an invertible scalar or monomial", pos)

    def factor(self):
        kind, val, pos = self.peek()
        if val == "(" and kind == "op":
            self.take()
            inner = self.expr()
            self.expect(")")
            return inner
        if val == "-" and kind == "op":
            self.take()
            return self.mul(Fraction(-1), self.factor())
        if kind == "num":
            self.take()
            return Fraction(val)
        if kind == "name":
            return self.name()
        self.fail(f"unexpected {val or 'end of input'!r}")

    def _field(self):
        if self.field is None:
            if self.W is None:
                from .scalar import make_field
                return make_field([])
            self.field = self.W.field
        return self.field

    def name(self):
        kind, val, pos = self.take()
        if val == "v":
            return LaurentPoly.v(1)
        if val == "theta":
            return simplify_scalar(self._field().theta())
        if val in ("E", "X", "F") and self.peek()[1] == "{":
            return {"E": self.vertex, "X": self.edge, "F": self.label}[val](pos)
        for prefix in ("e_", "x_", "T_"):
            if val.startswith(prefix) and len(val) > 2:
                return self.symbol(prefix[0], val[2:], pos)
        self.fail(f"unknown name {val!r}", pos)

    def _need(self, domains, what, pos):
        if self.W is None:
            self.fail(f"{what} needs a Coxeter system", pos)
        if self.domain not in domains:
            self.fail(f"{what} is not allowed in the {self.domain} domain", pos)

    def _generator(self, name, pos):
        try:
            return self.W.index(name)
        except (KeyError, ValueError, ValidationError) as exc:
            raise ParseError(f"unknown generator {name!r}", pos) from exc

    def subset(self):
        self.expect("{")
        names = []
        if self.peek()[1] != "}":
            while True:
                kind, val, pos = self.take()
                if kind != "name":
                    self.fail(f"expected a generator name, found {val!r}", pos)
                names.append((val, pos))
                if self.peek()[1] != ",":
                    break
                self.take()
        self.expect("}")
        mask = 0
        for n, p in names:
            mask |= 1 << self._generator(n, p)
        return mask

    def vertex(self, pos):
        self._need(("omega",), "E{...}", pos)
        from .paths import OmegaElement
        return OmegaElement.vertex(self.quiver, self.subset())

    def edge(self, pos):
        self._need(("omega",), "X{...}->{...}", pos)
        from .paths import OmegaElement
        I = self.subset()
        self.expect("->")
        J = self.subset()
        s = None
        if self.peek()[1] == "^" and self.peek(1)[0] == "name":
            self.take()
            kind, val, spos = self.take()
            s = self._generator(val, spos)
            if not (I & ~J) >> s & 1:
                self.fail(f"label {val} is not in I minus J", spos)
        if not I & ~J:
            self.fail("X{I}->{J} needs I minus J nonempty", pos)
        return OmegaElement.edge(self.quiver, I, J, s)

    def label(self, pos):
        self.expect("{")
        kind, val, lpos = self.take()
        if kind not in ("name", "num"):
            self.fail("expected a label", lpos)
        self.expect("}")
        if val not in self.labels:
            self.fail(f"unknown label {val!r}", lpos)
        return self.labels[val]

    def symbol(self, kind, name, pos):
        if kind == "T":
            self._need(("omega", "free", "hecke"), "T_s", pos)
        else:
            self._need(("omega", "free"), f"{kind}_s", pos)
        s = self._generator(name, pos)
        if self.domain == "hecke":
            from .hecke import generator
            return generator(self.group, s)
        from .freealg import FreeElement, expand_to_paths, iota_T
        f = iota_T(self.W, s) if kind == "T" else (
            FreeElement.e(self.W, s) if kind == "e" else FreeElement.x(self.W, s))
        if self.domain == "free":
            return f
        if self._images is None:
            self._images = {}
        key = (kind, s)
        if key not in self._images:
            self._images[key] = expand_to_paths(f, self.quiver)
        return self._images[key]


def parse_expression(text: str, W: CoxeterSystem | None = None, domain: str = "omega",
                     quiver=None, field: FieldSpec | None = None, labels: dict | None = None):
    """Evaluate ``text`` in ``domain``; raises :class:`ParseError` with a position."""
    if domain == "omega" and quiver is None:
        if W is None:
            raise ParseError("omega expressions need a Coxeter system", 0)
        from .quiver import build_compatibility_graph
        quiver = build_compatibility_graph(W)
    if quiver is not None and W is None:
        W = quiver.system
    p = _Parser(text, W, domain, field, quiver, labels)
    value = p.parse()
    if domain != "scalar":
        value = p.lift(value)
    return value


def parse_scalar(text: str, field: FieldSpec | None = None, W: CoxeterSystem | None = None):
    return parse_expression(text, W=W, domain="scalar", field=field)


def parse_field_element(text: str, field: FieldSpec):
    """A scalar that must not involve ``v``, returned as an element of ``field``."""
    c = parse_scalar(text, field=field)
    if isinstance(c, LaurentPoly):
        raise ParseError(f"{text!r} depends on v; a field element is required", 0)
    return c if isinstance(c, FieldElement) else field.element((c,))


def format_expression(x) -> str:
    """Expression syntax for any supported value."""
    from .paths import OmegaElement, format_element
    if isinstance(x, OmegaElement):
        return format_element(x)
    if isinstance(x, (Fraction, int)):
        return str(Fraction(x))
    return str(x)

import math
from fractions import Fraction

import pytest
import sympy

from wgraphalg.errors import IncompatibleFieldError, UnsupportedOrderError
from wgraphalg.scalar import LaurentPoly, format_scalar, laurent_arith, make_field, to_float


@pytest.mark.parametrize("L", [2, 3, 4, 5, 6, 7, 8, 10, 12, 15, 20, 30])
def test_minimal_polynomial_matches_sympy(L):
    F = make_field([L])
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / L), x), x)
    got = sympy.Poly(list(reversed(F.minpoly)), x)
    assert got.monic() == expected.monic()
    assert F.degree == expected.degree()


@pytest.mark.parametrize("orders, conductor", [([2], 2), ([3], 3), ([5], 5), ([2, 3], 6), ([4, 6], 12), ([], 2)])
def test_field_conductor_is_the_lcm(orders, conductor):
    assert make_field(orders).conductor == conductor


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8, 12])
def test_two_cos_values_are_numerically_right(m):
    F = make_field([m])
    for j in range(0, 2 * m + 1):
        assert math.isclose(float(F.two_cos(j, m)), 2 * math.cos(math.pi * j / m), abs_tol=1e-9)


def test_rational_cosines_collapse():
    F = make_field([3])
    assert F.is_rational
    assert F.two_cos(1, 3) == 1
    assert F.two_cos(2, 3) == -1


def test_golden_ratio_identity():
    F = make_field([5])
    t = F.theta()
    assert t * t == t + 1          # 2cos(pi/5) is the golden ratio
    assert (t - 1) * t == 1
    assert t.inverse() == t - 1


def test_field_mismatch_is_rejected():
    a = make_field([5]).theta()
    b = make_field([7]).theta()
    with pytest.raises(IncompatibleFieldError):
        a + b
    with pytest.raises(IncompatibleFieldError):
        laurent_arith(LaurentPoly.const(a), LaurentPoly.const(b), "mul")


@pytest.mark.parametrize("bad", [1, 0, -3, float("inf"), None, 2.5])
def test_unsupported_orders(bad):
    with pytest.raises(UnsupportedOrderError):
        make_field([bad])


def test_laurent_basics():
    v, vi = LaurentPoly.v(1), LaurentPoly.v(-1)
    q = v - vi
    assert (v + vi) * (v + vi) == LaurentPoly({2: Fraction(1), 0: Fraction(2), -2: Fraction(1)})
    assert v * vi == LaurentPoly.const(Fraction(1))
    assert q.degree_range() == (-1, 1)
    assert laurent_arith(v, vi, "sub") == q
    assert str(q) == "v - v^-1"
    assert format_scalar(-v) == ("v", True)
    with pytest.raises(TypeError):
        to_float(v)

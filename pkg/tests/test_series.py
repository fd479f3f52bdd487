from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from airytau.airy import slope_series, wave_series
from airytau.errors import WindowError
from airytau.rational import Rat
from airytau.series import (Laurent2, Series1, geometric_inv_diff,
                            geometric_inv_diff_squares)

from oracles import convolve


def s(coeffs, order=None, var="z"):
    return Series1(var, {e: Rat(c) for e, c in coeffs.items()}, order)


def test_difference_of_squares():
    left = s({0: 1, -1: 1})
    right = s({0: 1, -1: -1})
    assert left * right == s({0: 1, -2: -1})


def test_identity_element():
    a = wave_series(12)
    assert a * Series1.const("z", 1) == a


def test_schoolbook_convolution_oracle():
    a = wave_series(6)
    b = slope_series(6)
    product = a * b
    expected = convolve({e: Fraction(c) for e, c in a.coeffs.items()},
                        {e: Fraction(c) for e, c in b.coeffs.items()})
    # the product window: unknowns of a (below -6) meet b's top exponent 1
    assert product.order == 5
    for e, c in expected.items():
        if e >= -5:
            assert product.coeff(e) == c


small_series = st.builds(
    lambda coeffs, order: s(coeffs, order),
    st.dictionaries(st.integers(-4, 3),
                    st.fractions(min_value=-4, max_value=4,
                                 max_denominator=6), max_size=4),
    st.integers(2, 8))


@settings(max_examples=60, deadline=None)
@given(small_series, small_series, small_series)
def test_ring_axioms_within_windows(a, b, c):
    assert (a * b).agrees_with(b * a)
    assert ((a * b) * c).agrees_with(a * (b * c))
    assert (a * (b + c)).agrees_with(a * b + a * c)


@settings(max_examples=60, deadline=None)
@given(small_series)
def test_negate_var_involution(a):
    assert a.negate_var().negate_var() == a


@settings(max_examples=60, deadline=None)
@given(small_series, small_series)
def test_leibniz_rule(a, b):
    left = (a * b).derivative()
    right = a.derivative() * b + a * b.derivative()
    assert left.agrees_with(right)


def test_derivative_examples():
    assert s({-3: 1}).derivative() == s({-4: -3})
    assert Series1.const("z", 1).derivative().is_zero()
    a = wave_series(9)
    assert a.derivative().coeff(-4) == Rat(-3) * Rat(5, 24) == Rat(-5, 8)


def test_derivative_window_deepens():
    a = wave_series(9)
    assert a.derivative().order == 10


def test_negate_var_examples():
    assert s({0: 1, -1: 1}).negate_var() == s({0: 1, -1: -1})
    c = wave_series(9, alternating=True)
    assert wave_series(9).negate_var() == c


def test_mul_reliability_bookkeeping():
    # unknowns below z^-4 of `a` hit the top exponent +1 of `b`
    a = s({0: 1}, order=4)
    b = s({1: 1, -2: 1}, order=7)
    assert (a * b).order == 3
    # exact zero annihilates regardless of the partner's window
    zero = Series1.zero("z")
    assert (zero * b).order is None


def test_coeff_outside_window_raises():
    a = wave_series(6)
    assert a.coeff(-6) == Rat(385, 1152)
    with pytest.raises(WindowError):
        a.coeff(-7)


def test_shift_and_scale():
    a = s({0: 1, -3: 2}, order=5)
    shifted = a.shift(2)
    assert shifted.coeffs == {2: Rat(1), -1: Rat(2)}
    assert shifted.order == 3
    assert a.scale(Rat(1, 2)).coeffs[-3] == Rat(1)


def test_dump_parse_roundtrip():
    a = slope_series(9, var="q")
    text = a.dump()
    assert text.splitlines()[0] == "# var=q reliable=9"
    assert Series1.parse(text) == a
    exact = s({2: 1, -1: -3})
    assert Series1.parse(exact.dump()) == exact


def test_empty_series_sentinel():
    zero = Series1.zero("z")
    assert zero.is_zero() and zero.order is None
    assert zero.coeff(-999) == 0


def test_laurent2_outer_and_mul():
    fx = s({0: 1, -1: 2}, var="x")
    gy = s({1: 1, -2: -1}, var="y")
    both = Laurent2.outer(fx, gy)
    assert both.coeff(0, 1) == 1
    assert both.coeff(-1, -2) == -2
    swapped = both.swap()
    assert swapped.coeff(1, 0) == 1
    delta = Laurent2(("x", "y"), {(1, 0): Rat(1), (0, 1): Rat(-1)})
    assert delta.mul(delta).coeff(1, 1) == -2


def test_geometric_expansions():
    g = geometric_inv_diff(("x", "y"), 3)
    assert g.coeff(-1, 0) == 1 and g.coeff(-4, 3) == 1
    g2 = geometric_inv_diff_squares(("x", "y"), 3)
    # (x^2 - y^2) * expansion == 1 within the window
    squares = Laurent2(("x", "y"), {(2, 0): Rat(1), (0, 2): Rat(-1)})
    product = squares.mul(g2)
    for (ex, ey), c in product.coeffs.items():
        if ey <= 4:
            assert ((ex, ey) == (0, 0)) == (c == 1)

# Copyright 2020 Google LLC
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from fractions import Fraction
from permstat.series import (
    ONE,
    Monomial,
    Series,
    Window,
    compare,
    diagonal,
    diagonal_product,
    invert_unit,
    multiply,
    set_value,
    sqrt_unit,
    substitute,
)
import pytest


def var(name):
    return Series.variable(name)


def t_poly(*coefficients, order=None):
    terms = {Monomial.of(t=k): c for k, c in enumerate(coefficients)}
    window = Window.of(t=len(coefficients) - 1 if order is None else order)
    return Series(terms, window)


class TestMonomial:
    def test_of_and_degree(self):
        m = Monomial.of(x=1, v=-2)
        assert m.degree("x") == 1
        assert m.degree("v") == -2
        assert m.degree("t") == 0

    def test_arithmetic(self):
        m = Monomial.of(x=1, t=2)
        assert m.times(Monomial.of(t=1, v=-1)) == Monomial.of(x=1, t=3, v=-1)
        assert m.power(3) == Monomial.of(x=3, t=6)
        assert m.times(m.inverse()) == Monomial()

    def test_text(self):
        m = Monomial.of(x=1, t=2)
        assert m.tostring() == "x^1 q^0 t^2 v^0 y^0 z^0 p^0"
        assert Monomial.fromstring("t^2 x^1") == m

    def test_unknown_variable(self):
        with pytest.raises(ValueError, match="Unknown variable"):
            Monomial.of(w=1)


class TestWindow:
    def test_defaults(self):
        w = Window.of(t=5, v=(-8, 14))
        assert w.bound("t") == 5
        assert w.bound("x") is None
        assert w.lower("v") == -8
        assert w.lower("x") == 0
        assert w.lower("q") is None
        assert w.finite_variables() == ("t", "v")

    def test_contains(self):
        w = Window.of(t=5, v=(-8, 14))
        assert w.contains(Monomial.of(t=5, v=-8, q=-3))
        assert not w.contains(Monomial.of(t=6))
        assert not w.contains(Monomial.of(v=-9))

    def test_negative_lower_bound_on_nonnegative_variable(self):
        with pytest.raises(ValueError, match="negative exponents"):
            Window.of(t=(-1, 3))

    def test_text(self):
        w = Window.of(t=5, v=(-8, 14))
        assert w.tostring() == "window x=0: q=: t=0:5 v=-8:14 y=: z=0: p=0:"
        assert Window.fromstring(w.tostring()) == w

    def test_meet_and_widen(self):
        w = Window.of(t=5, v=(-8, 14)).meet(Window.of(t=3, v=20))
        assert (w.bound("t"), w.bound("v"), w.lower("v")) == (3, 14, -8)
        wider = w.widen(2)
        assert (wider.bound("v"), wider.lower("v"), wider.bound("t")) == (16, -10, 3)


class TestSeries:
    def test_terms_above_window_dropped(self):
        s = t_poly(1, 2, 3, 4, order=2)
        assert len(s) == 3
        assert s.coefficient(Monomial.of(t=2)) == 3

    def test_coefficient_outside_window(self):
        with pytest.raises(ValueError, match="outside"):
            t_poly(1, 2).coefficient(Monomial.of(t=3))

    def test_below_lower_bound_rejected(self):
        with pytest.raises(ValueError, match="below"):
            Series({Monomial.of(v=-3): 1}, Window.of(v=(-2, 2)))

    def test_add_and_subtract(self):
        s = t_poly(1, 1) + t_poly(0, 1, 5)
        # the sum is only as exact as its least exact operand
        assert s.window.bound("t") == 1
        assert s == t_poly(1, 2)
        assert (s - s).terms == {}

    def test_integer_coercion(self):
        s = 1 - var("t")
        assert s.coefficient(ONE) == 1
        assert s.coefficient(Monomial.of(t=1)) == -1
        assert (2 * s).coefficient(ONE) == 2
        with pytest.raises(TypeError):
            s + 0.5

    def test_fractions_normalise(self):
        s = var("q").scale(Fraction(4, 2))
        c = s.coefficient(Monomial.of(q=1))
        assert c == 2 and isinstance(c, int)

    def test_shift(self):
        s = t_poly(1, 1).shift(Monomial.of(t=1, v=-1))
        assert s.window.bound("t") == 2
        assert s.coefficient(Monomial.of(t=2, v=-1)) == 1

    def test_within(self):
        s = t_poly(1, 2, 3)
        assert s.within(Window.of(t=1)) == t_poly(1, 2)
        with pytest.raises(ValueError, match="exact only through"):
            s.within(Window.of(t=4))
        with pytest.raises(ValueError, match="need all of"):
            s.within(Window())

    def test_text(self):
        s = Series({Monomial.of(q=-1, t=1): Fraction(1, 3), ONE: 1}, Window.of(t=2))
        text = s.tostring()
        assert text.splitlines() == [
            "window x=0: q=: t=0:2 v=: y=: z=0: p=0:",
            "1/3 * x^0 q^-1 t^1 v^0 y^0 z^0 p^0",
            "1 * x^0 q^0 t^0 v^0 y^0 z^0 p^0",
        ]
        assert Series.fromstring(text) == s

    def test_nonnegative_integer_coefficients(self):
        assert t_poly(1, 2).has_nonnegative_integer_coefficients()
        assert not t_poly(1, -2).has_nonnegative_integer_coefficients()
        assert not var("t").scale(Fraction(1, 2)).has_nonnegative_integer_coefficients()


class TestMultiply:
    def test_product_window(self):
        # (1 + t + O(t^3)) * t is exact through t^3
        a = t_poly(1, 1, 0, order=2)
        product = multiply(a, var("t"))
        assert product.window.bound("t") == 3
        assert product == Series(
            {Monomial.of(t=1): 1, Monomial.of(t=2): 1}, Window.of(t=3)
        )

    def test_product_of_truncations(self):
        product = t_poly(1, 1) * t_poly(1, 1)
        assert product.window.bound("t") == 1
        assert product == t_poly(1, 2)

    def test_cap(self):
        product = multiply(t_poly(1, 1, 1), t_poly(1, 1, 1), cap=Window.of(t=1))
        assert product.window.bound("t") == 1

    def test_unbounded_laurent_factor(self):
        # v mixed into a q-truncated series can reach arbitrarily low v
        a = Series({Monomial.of(v=-1): 1}, Window.of(q=2, v=3))
        b = Series({ONE: 1}, Window.of(v=3))
        with pytest.raises(ValueError, match="Cannot certify"):
            multiply(a, b)


class TestInverseAndRoot:
    def test_geometric(self):
        inv = invert_unit((1 - var("t")).truncate(Window.of(t=5)))
        assert inv.window.bound("t") == 5
        assert inv == t_poly(1, 1, 1, 1, 1, 1)

    def test_scaled_unit(self):
        inv = invert_unit((2 - 2 * var("t")).truncate(Window.of(t=3)))
        assert inv == t_poly(*([Fraction(1, 2)] * 4))

    def test_not_a_unit(self):
        with pytest.raises(ValueError, match="not a unit"):
            invert_unit(var("t").truncate(Window.of(t=3)))

    def test_needs_truncation(self):
        with pytest.raises(ValueError, match="supply a cap"):
            invert_unit(1 - var("v"))

    def test_cap(self):
        inv = invert_unit(1 - var("v"), Window.of(v=4))
        assert inv.window.bound("v") == 4
        assert all(inv.coefficient(Monomial.of(v=k)) == 1 for k in range(5))

    def test_negative_power_rejected(self):
        s = (1 - Series.monomial(Monomial.of(t=1, v=-1))).truncate(Window.of(t=3, v=3))
        with pytest.raises(ValueError, match="negative in a truncated variable"):
            invert_unit(s)

    def test_sqrt(self):
        root = sqrt_unit((1 - 4 * var("t")).truncate(Window.of(t=4)))
        assert root == t_poly(1, -2, -2, -4, -10)

    def test_sqrt_squares_back(self):
        radicand = (1 - 2 * var("t") - 3 * var("t") * var("q")).truncate(
            Window.of(t=5)
        )
        root = sqrt_unit(radicand)
        assert root * root == radicand

    def test_sqrt_needs_constant_one(self):
        with pytest.raises(ValueError, match="constant term 1"):
            sqrt_unit((4 - var("t")).truncate(Window.of(t=3)))


class TestSubstitute:
    def test_grading_tracked(self):
        s = t_poly(1, 2, 3)
        image = substitute(s, {"t": Monomial.of(q=1, t=1)})
        assert image.window.bound("t") == 2
        assert image.coefficient(Monomial.of(q=2, t=2)) == 3

    def test_involution(self):
        dual = {
            "x": Monomial.of(x=1, q=-1),
            "q": Monomial.of(q=-1),
            "t": Monomial.of(q=1, t=1),
        }
        s = Series(
            {Monomial.of(x=2, q=1, t=2): 3, Monomial.of(q=2, t=1): 1}, Window.of(t=2)
        )
        assert substitute(substitute(s, dual), dual) == s

    def test_loses_grading(self):
        with pytest.raises(ValueError, match="size grading"):
            substitute(t_poly(1, 1), {"t": Monomial.of(q=1)})

    def test_no_tracker(self):
        s = Series({Monomial.of(t=1, v=1): 1}, Window.of(t=2, v=2))
        with pytest.raises(ValueError, match="no variable of its own"):
            substitute(s, {"v": Monomial.of(t=1)})


def test_set_value():
    s = Series(
        {Monomial.of(x=1, t=1): 2, Monomial.of(t=1): 1, ONE: 1}, Window.of(t=1)
    )
    assert set_value(s, "x", 1) == t_poly(1, 3)
    assert set_value(s, "x", 0) == t_poly(1, 1)
    with pytest.raises(ValueError, match="Cannot set t=1"):
        set_value(s, "t", 1)
    with pytest.raises(ValueError, match="negative power"):
        set_value(Series({Monomial.of(v=-1): 1}), "v", 0)
    with pytest.raises(ValueError, match="0 or 1"):
        set_value(s, "x", 2)


def test_diagonal():
    s = Series(
        {
            Monomial.of(v=1, t=1, x=1): 2,
            Monomial.of(v=2, t=1): 5,
            Monomial.of(v=2, t=2): 7,
        },
        Window.of(t=3, v=3),
    )
    diag = diagonal(s)
    assert diag.window.bound("z") == 3
    assert diag.terms == {Monomial.of(z=1, x=1): 2, Monomial.of(z=2): 7}


def test_diagonal_product_matches_diagonal():
    a = Series(
        {Monomial.of(v=k, t=j): k + j + 1 for k in range(4) for j in range(4)},
        Window.of(t=3, v=3),
    )
    b = Series(
        {Monomial.of(v=j, t=k, q=1): k - j for k in range(4) for j in range(4)},
        Window.of(t=3, v=3),
    )
    assert diagonal_product(a, b) == diagonal(a * b)


def test_diagonal_output_in_use():
    with pytest.raises(ValueError, match="already in use"):
        diagonal(Series.variable("z"))


def test_compare():
    a = t_poly(1, 2, 3)
    b = t_poly(1, 2, 4)
    mismatch = compare(a, b)
    assert mismatch.monomial == Monomial.of(t=2)
    assert (mismatch.left, mismatch.right) == (3, 4)
    assert compare(a, b, Window.of(t=1)) is None
    assert mismatch.tostring() == "x^0 q^0 t^2 v^0 y^0 z^0 p^0: 3 != 4"

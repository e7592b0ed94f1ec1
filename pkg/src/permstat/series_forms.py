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

"""Truncated expansions of the closed-form generating functions.

Every builder takes the truncation order in t and, where v occurs, the
largest v-exponent wanted. Pieces evaluated at 1/v are rewritten with v
cleared from numerator and denominator and expanded around v = 0; the
intermediate caps on v are widened by the depth of the Laurent factors
they multiply, and the final within() call insists the requested window
came out exact.
"""
import functools
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, NamedTuple, Optional
from absl import logging
from permstat.series import (
    Monomial,
    Series,
    Window,
    invert_unit,
    set_value,
    sqrt_unit,
    substitute,
)


# Largest grading order closed_form will expand to unless told otherwise
MAX_SERIES_ORDER = 12

# Expansions kept per builder; one check touches a handful of windows
CACHE_SIZE = 32

T = Monomial.of(t=1)
V = Monomial.of(v=1)

# G(x, q, t, v) -> G(x/q, 1/q, qt, v)
DUAL = MappingProxyType(
    {
        "x": Monomial.of(x=1, q=-1),
        "q": Monomial.of(q=-1),
        "t": Monomial.of(q=1, t=1),
    }
)

# (t, v) -> (z, y)
RENAME_ZY = MappingProxyType({"t": Monomial.of(z=1), "v": Monomial.of(y=1)})


def _var(name: str) -> Series:
    return Series.variable(name)


def _radicand(order: int, with_des: bool = False) -> Series:
    t, q = _var("t"), _var("q")
    if with_des:
        tail = (1 + q) * (1 + q) - 4 * q * _var("p")
    else:
        tail = (1 - q) * (1 - q)
    return (1 - 2 * t * (1 + q) + t * t * tail).truncate(Window.of(t=order))


@functools.lru_cache(maxsize=CACHE_SIZE)
def catalan(order: int) -> Series:
    """C(t) = (1 - sqrt(1 - 4t)) / 2t."""
    root = sqrt_unit((1 - 4 * _var("t")).truncate(Window.of(t=order + 1)))
    return (1 - root).divide_monomial(T).scale(Fraction(1, 2))


@functools.lru_cache(maxsize=CACHE_SIZE)
def f321_q(order: int) -> Series:
    """F321(1, q, t)."""
    t, q = _var("t"), _var("q")
    root = sqrt_unit(_radicand(order + 1))
    numerator = (1 + t * (q - 1) - root).truncate(Window.of(t=order + 1))
    return numerator.divide_monomial(Monomial.of(q=1, t=1)).scale(Fraction(1, 2))


def _f321_family(order: int, with_des: bool) -> Series:
    t, q, x = _var("t"), _var("q"), _var("x")
    root = sqrt_unit(_radicand(order, with_des))
    denominator = 1 + t * (1 + q - 2 * x) + root
    return 2 * invert_unit(denominator.truncate(Window.of(t=order)))


@functools.lru_cache(maxsize=CACHE_SIZE)
def f321(order: int) -> Series:
    return _f321_family(order, with_des=False)


@functools.lru_cache(maxsize=CACHE_SIZE)
def f321_des(order: int) -> Series:
    return _f321_family(order, with_des=True)


@functools.lru_cache(maxsize=CACHE_SIZE)
def f132_x(order: int) -> Series:
    """F132(x, 1, t) = 2 / (1 + 2t(1 - x) + sqrt(1 - 4t))."""
    t, x = _var("t"), _var("x")
    root = sqrt_unit((1 - 4 * t).truncate(Window.of(t=order)))
    return 2 * invert_unit((1 + 2 * t * (1 - x) + root).truncate(Window.of(t=order)))


@functools.lru_cache(maxsize=CACHE_SIZE)
def _geometric_v(order: int, v_cap: int) -> Series:
    """1 / (1 - v)."""
    return invert_unit(1 - _var("v"), Window.of(t=order, v=v_cap))


@functools.lru_cache(maxsize=CACHE_SIZE)
def _k_inverse(order: int) -> Series:
    """1 / (1 - qt(F321(1,q,t) - 1) - xt)."""
    q, x = _var("q"), _var("x")
    k = 1 - (q * (f321_q(order) - 1)).shift(T) - x.shift(T)
    return invert_unit(k.truncate(Window.of(t=order)))


def _catalan_at(order: int, image: Monomial) -> Series:
    return substitute(catalan(order), {"t": image})


@functools.lru_cache(maxsize=CACHE_SIZE)
def g_conj(order: int, v_max: int) -> Series:
    cap = Window.of(t=order, v=v_max)
    tv = Monomial.of(t=1, v=1)
    c_tv = _catalan_at(order, tv)
    q1, x1 = _var("q") - 1, _var("x") - 1
    one_minus_v = 1 - _var("v")
    numerator = one_minus_v + (q1 * c_tv).shift(tv)
    denominator = one_minus_v + (q1 * f321_q(order)).shift(tv)
    ratio = numerator * invert_unit(denominator, cap)
    g = (ratio - (x1 * c_tv).shift(tv)) * _k_inverse(order) * _geometric_v(order, v_max)
    return g.within(cap)


@functools.lru_cache(maxsize=CACHE_SIZE)
def g_tail(order: int, v_max: int) -> Series:
    """v / (1 - v) C(tv), the part of G with r > n."""
    c_tv = _catalan_at(order, Monomial.of(t=1, v=1))
    tail = (_geometric_v(order, v_max) * c_tv).shift(V)
    return tail.within(Window.of(t=order, v=v_max))


@functools.lru_cache(maxsize=CACHE_SIZE)
def g_dual(order: int, v_max: int) -> Series:
    """G(x/q, 1/q, qt, v)."""
    return substitute(g_conj(order, v_max), DUAL)


@functools.lru_cache(maxsize=CACHE_SIZE)
def g_inv_v(order: int, v_max: int) -> Series:
    """G(x, q, t, 1/v) expanded around v = 0."""
    # C(t/v) reaches down to v^-order
    v_cap = v_max + order + 2
    cap = Window.of(t=order, v=v_cap)
    t_over_v = Monomial.of(t=1, v=-1)
    c_inv = _catalan_at(order, t_over_v)
    q1, x1 = _var("q") - 1, _var("x") - 1
    v_minus_1 = _var("v") - 1
    va = v_minus_1 + (q1 * c_inv).shift(T)
    vb = v_minus_1 + (q1 * f321_q(order)).shift(T)
    bracket = va * invert_unit(vb, cap) - (x1 * c_inv).shift(t_over_v)
    # 1 / (1 - 1/v) = -v / (1 - v)
    g = -(bracket * _k_inverse(order)).shift(V) * _geometric_v(order, v_cap)
    return g.within(Window.of(t=order, v=v_max))


@functools.lru_cache(maxsize=CACHE_SIZE)
def h1(order: int, v_max: int) -> Series:
    target = Window.of(t=order, v=v_max)
    if order == 0:
        return Series({}, target)
    n = order - 1
    q, x = _var("q"), _var("x")
    g0 = set_value(g_conj(n, v_max), "v", 0)
    tail = (
        _geometric_v(n, v_max + n + 1) * _catalan_at(n, Monomial.of(t=1, v=-1))
    ).divide_monomial(V)
    bracket = q * g_dual(n, v_max) + (x - q - 1) * g0 + g_inv_v(n, v_max) + tail
    return bracket.shift(T).within(target)


@functools.lru_cache(maxsize=CACHE_SIZE)
def h2(order: int, v_max: int) -> Series:
    g = g_conj(order, v_max)
    tail = _geometric_v(order, v_max + order + 1) * _catalan_at(
        order, Monomial.of(q=1, t=1, v=-1)
    )
    h = (
        g
        - set_value(g, "v", 0)
        + substitute(g_inv_v(order, v_max), DUAL)
        + tail
    )
    return h.within(Window.of(t=order, v=v_max))


@functools.lru_cache(maxsize=CACHE_SIZE)
def h3(order: int, y_max: int) -> Series:
    """Built in (t, v) like h2, then renamed to (z, y)."""
    g = g_conj(order, y_max)
    geometric = _geometric_v(order, y_max + order + 1)
    h = (
        g
        + substitute(g_inv_v(order, y_max), DUAL)
        - set_value(g, "v", 0)
        - (geometric * _catalan_at(order, Monomial.of(t=1, v=1))).shift(V)
        + geometric * _catalan_at(order, Monomial.of(q=1, t=1, v=-1))
        - 1
    )
    h = h.within(Window.of(t=order, v=y_max))
    return substitute(h, RENAME_ZY)


class _Form(NamedTuple):
    build: Callable[..., Series]
    grading: str = "t"
    offset: Optional[str] = None


# makes dict read-only
CLOSED_FORMS = MappingProxyType(
    {
        "catalan": _Form(catalan),
        "f321_q": _Form(f321_q),
        "f321": _Form(f321),
        "f321_des": _Form(f321_des),
        "f132_x": _Form(f132_x),
        "g_conj": _Form(g_conj, offset="v"),
        "g_tail": _Form(g_tail, offset="v"),
        "g_dual": _Form(g_dual, offset="v"),
        "g_inv_v": _Form(g_inv_v, offset="v"),
        "h1": _Form(h1, offset="v"),
        "h2": _Form(h2, offset="v"),
        "h3": _Form(h3, grading="z", offset="y"),
    }
)


def closed_form(name: str, window: Window, max_order: int = MAX_SERIES_ORDER) -> Series:
    """Expand the named generating function inside window.

    The grading variable (t, or z for h3) must have a finite bound no larger
    than max_order; forms in v (or y) also need a finite bound there.
    """
    try:
        form = CLOSED_FORMS[name]
    except KeyError:
        raise ValueError(f"Unknown closed form {name!r}")
    order = window.bound(form.grading)
    if order is None:
        raise ValueError(f"{name} needs a finite {form.grading} bound")
    if not 0 <= order <= max_order:
        raise ValueError(f"{name}: order {order} outside 0..{max_order}")
    args = [order]
    if form.offset is not None:
        offset_max = window.bound(form.offset)
        if offset_max is None:
            raise ValueError(f"{name} needs a finite {form.offset} bound")
        args.append(offset_max)
    logging.debug("closed_form %s%s", name, tuple(args))
    return form.build(*args).within(Window(window.hi))

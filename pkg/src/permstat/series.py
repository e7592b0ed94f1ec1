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

"""Exact sparse truncated Laurent series in x, q, t, v, y, z, p.

A Series stores finitely many terms and a Window. For every variable the
window holds an upper bound hi, or None when the series is complete in that
variable. Every monomial whose exponents are all <= hi is exact: a term
absent from the mapping has coefficient zero. Anything above some hi is
unknown.

Operations certify the window of their result. For a product that is

  hi[w] = min(hi_a[w] + low_b[w], hi_b[w] + low_a[w])

where low is the smallest exponent of w the operand can have: the minimum
over its stored terms and hi + 1. This assumes a term missing from a series
is missing because of its own oversized exponent and does not reach below
the stored minimum elsewhere. It holds for everything built here except
when one Laurent variable is truncated and another is mixed into it by
substitution, which is then treated as unbounded below.
"""
import dataclasses
from fractions import Fraction
import math
import re
from types import MappingProxyType
from typing import (
    Callable,
    Dict,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Tuple,
    Union,
)
from absl import logging
from permstat.stat_meta import (
    GRADING_VARIABLES,
    NONNEGATIVE_VARIABLES,
    VARIABLES,
    ntos,
    parse_window_spec,
)


Coefficient = Union[int, Fraction]

# Iteration ceiling for inverses and square roots
MAX_ITERATIONS = 10000

_INF = math.inf
_INDEX = MappingProxyType({v: i for i, v in enumerate(VARIABLES)})
_LAURENT = tuple(v for v in VARIABLES if v not in NONNEGATIVE_VARIABLES)


def _norm(c: Coefficient) -> Coefficient:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _index(var: str) -> int:
    try:
        return _INDEX[var]
    except KeyError:
        raise ValueError(f"Unknown variable {var!r}")


class Monomial(NamedTuple):
    x: int = 0
    q: int = 0
    t: int = 0
    v: int = 0
    y: int = 0
    z: int = 0
    p: int = 0

    @classmethod
    def of(cls, **exponents: int) -> "Monomial":
        values = [0] * len(VARIABLES)
        for var, e in exponents.items():
            values[_index(var)] = e
        return cls._make(values)

    def times(self, other: "Monomial") -> "Monomial":
        return self._make(a + b for a, b in zip(self, other))

    def power(self, k: int) -> "Monomial":
        return self._make(k * e for e in self)

    def inverse(self) -> "Monomial":
        return self.power(-1)

    def degree(self, var: str) -> int:
        return self[_index(var)]

    def tostring(self) -> str:
        return " ".join(f"{var}^{e}" for var, e in zip(VARIABLES, self))

    @classmethod
    def fromstring(cls, s: str) -> "Monomial":
        exponents = {}
        for token in s.split():
            var, sep, e = token.partition("^")
            if not sep:
                raise ValueError(f"Unable to parse monomial {s!r}")
            exponents[var] = int(e)
        return cls.of(**exponents)


ONE = Monomial()


def _default_lo() -> Tuple[Optional[int], ...]:
    return tuple(0 if v in NONNEGATIVE_VARIABLES else None for v in VARIABLES)


_COMPLETE = (None,) * len(VARIABLES)


def _min_bound(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _fmt_bound(lo: Optional[int], hi: Optional[int]) -> str:
    return f"{'' if lo is None else lo}:{'' if hi is None else hi}"


@dataclasses.dataclass(frozen=True)
class Window:
    hi: Tuple[Optional[int], ...] = _COMPLETE
    lo: Tuple[Optional[int], ...] = dataclasses.field(default_factory=_default_lo)

    def __post_init__(self):
        if len(self.hi) != len(VARIABLES) or len(self.lo) != len(VARIABLES):
            raise ValueError(f"Window needs one bound per variable {VARIABLES}")
        lo = list(self.lo)
        for i, var in enumerate(VARIABLES):
            if var not in NONNEGATIVE_VARIABLES:
                continue
            if lo[i] is None:
                lo[i] = 0
            elif lo[i] < 0:
                raise ValueError(f"{var} may not have negative exponents, lo={lo[i]}")
        object.__setattr__(self, "hi", tuple(self.hi))
        object.__setattr__(self, "lo", tuple(lo))

    @classmethod
    def of(cls, **bounds: Union[int, Tuple[Optional[int], Optional[int]]]) -> "Window":
        """Window.of(t=5, v=(-8, 14)); an int is an upper bound."""
        hi = list(_COMPLETE)
        lo = list(_default_lo())
        for var, bound in bounds.items():
            i = _index(var)
            if isinstance(bound, tuple):
                lo_b, hi_b = bound
                if lo_b is not None:
                    lo[i] = lo_b
                hi[i] = hi_b
            else:
                hi[i] = bound
        return cls(tuple(hi), tuple(lo))

    @classmethod
    def parse(cls, specs: Iterable[str]) -> "Window":
        """Window.parse(["t=0:5", "v=-8:14"])."""
        return cls.of(**dict(parse_window_spec(s) for s in specs))

    def bound(self, var: str) -> Optional[int]:
        return self.hi[_index(var)]

    def lower(self, var: str) -> Optional[int]:
        return self.lo[_index(var)]

    def finite_variables(self) -> Tuple[str, ...]:
        return tuple(v for v, h in zip(VARIABLES, self.hi) if h is not None)

    def contains(self, m: Monomial) -> bool:
        for e, lo, hi in zip(m, self.lo, self.hi):
            if lo is not None and e < lo:
                return False
            if hi is not None and e > hi:
                return False
        return True

    def below_hi(self, m: Monomial) -> bool:
        return all(h is None or e <= h for e, h in zip(m, self.hi))

    def meet(self, other: "Window") -> "Window":
        hi = tuple(_min_bound(a, b) for a, b in zip(self.hi, other.hi))
        lo = tuple(
            b if a is None else a if b is None else max(a, b)
            for a, b in zip(self.lo, other.lo)
        )
        return Window(hi, lo)

    def replace(self, **bounds: Optional[int]) -> "Window":
        hi = list(self.hi)
        for var, bound in bounds.items():
            hi[_index(var)] = bound
        return Window(tuple(hi), self.lo)

    def widen(self, k: int, variables: Iterable[str] = ("v", "y")) -> "Window":
        hi = list(self.hi)
        lo = list(self.lo)
        for var in variables:
            i = _index(var)
            if hi[i] is not None:
                hi[i] += k
            if lo[i] is not None and var not in NONNEGATIVE_VARIABLES:
                lo[i] -= k
        return Window(tuple(hi), tuple(lo))

    def tostring(self) -> str:
        return "window " + " ".join(
            f"{var}={_fmt_bound(lo, hi)}"
            for var, lo, hi in zip(VARIABLES, self.lo, self.hi)
        )

    @classmethod
    def fromstring(cls, s: str) -> "Window":
        head, _, rest = s.strip().partition(" ")
        if head != "window":
            raise ValueError(f"Unable to parse window header {s!r}")
        return cls.parse(rest.split())


class Mismatch(NamedTuple):
    monomial: Monomial
    left: Coefficient
    right: Coefficient

    def tostring(self) -> str:
        return f"{self.monomial.tostring()}: {ntos(self.left)} != {ntos(self.right)}"


_TERM_RE = re.compile(r"^\s*(\S+)\s*\*\s*(.*)$")


@dataclasses.dataclass(frozen=True, eq=False)
class Series:
    terms: Mapping[Monomial, Coefficient] = dataclasses.field(default_factory=dict)
    window: Window = Window()

    def __post_init__(self):
        terms = {}
        for m, c in self.terms.items():
            m = Monomial._make(m)
            if not c:
                continue
            for var, e, lo in zip(VARIABLES, m, self.window.lo):
                if lo is not None and e < lo:
                    raise ValueError(f"Exponent {var}^{e} below {lo} in {m.tostring()}")
            if self.window.below_hi(m):
                terms[m] = _norm(c)
        # makes dict read-only
        object.__setattr__(self, "terms", MappingProxyType(terms))

    __hash__ = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return compare(self, other) is None

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other) -> "Series":
        return combine(self, _coerce(other), "add")

    __radd__ = __add__

    def __sub__(self, other) -> "Series":
        return combine(self, _coerce(other), "sub")

    def __rsub__(self, other) -> "Series":
        return combine(_coerce(other), self, "sub")

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return combine(self, other, "mul")

    __rmul__ = __mul__

    def __neg__(self) -> "Series":
        return self.scale(-1)

    @classmethod
    def constant(cls, c: Coefficient, window: Optional[Window] = None) -> "Series":
        return cls({ONE: c}, window or Window())

    @classmethod
    def monomial(
        cls, m: Monomial, c: Coefficient = 1, window: Optional[Window] = None
    ) -> "Series":
        return cls({m: c}, window or Window())

    @classmethod
    def variable(cls, var: str, window: Optional[Window] = None) -> "Series":
        return cls.monomial(Monomial.of(**{var: 1}), 1, window)

    def scale(self, c: Coefficient) -> "Series":
        c = Fraction(c)
        return Series({m: a * c for m, a in self.terms.items()}, self.window)

    def shift(self, m: Monomial) -> "Series":
        """Multiply by a monomial. Exact; finite bounds move with it."""
        hi = tuple(None if h is None else h + e for h, e in zip(self.window.hi, m))
        return Series(
            {k.times(m): c for k, c in self.terms.items()}, Window(hi, _default_lo())
        )

    def divide_monomial(self, m: Monomial) -> "Series":
        return self.shift(m.inverse())

    def truncate(self, window: Window) -> "Series":
        return Series(self.terms, self.window.meet(Window(window.hi)))

    def within(self, target: Window) -> "Series":
        """Truncate to target, insisting that the series is exact there."""
        for var, have, want in zip(VARIABLES, self.window.hi, target.hi):
            if want is not None and have is not None and have < want:
                raise ValueError(
                    f"Series is exact only through {var}^{have}, need {var}^{want}"
                )
            if want is None and have is not None:
                raise ValueError(
                    f"Series is truncated at {var}^{have}, need all of {var}"
                )
        return self.truncate(target)

    def coefficient(self, m: Monomial) -> Coefficient:
        return coefficient(self, m)

    def min_exponent(self, var: str) -> Optional[int]:
        i = _index(var)
        return min((m[i] for m in self.terms), default=None)

    def present_variables(self) -> Tuple[str, ...]:
        used = [False] * len(VARIABLES)
        for m in self.terms:
            for i, e in enumerate(m):
                used[i] = used[i] or e != 0
        return tuple(
            var
            for i, var in enumerate(VARIABLES)
            if used[i] or self.window.hi[i] is not None
        )

    def has_nonnegative_integer_coefficients(self) -> bool:
        return all(isinstance(c, int) and c >= 0 for c in self.terms.values())

    def tostring(self) -> str:
        lines = [self.window.tostring()]
        for m in sorted(self.terms):
            lines.append(f"{ntos(self.terms[m])} * {m.tostring()}")
        return "\n".join(lines) + "\n"

    @classmethod
    def fromstring(cls, s: str) -> "Series":
        lines = [l for l in s.splitlines() if l.strip()]
        if not lines:
            raise ValueError("Empty series text")
        window = Window.fromstring(lines[0])
        terms: Dict[Monomial, Coefficient] = {}
        for line in lines[1:]:
            match = _TERM_RE.match(line)
            if not match:
                raise ValueError(f"Unable to parse term {line!r}")
            m = Monomial.fromstring(match.group(2))
            terms[m] = terms.get(m, 0) + Fraction(match.group(1))
        return cls(terms, window)


def _coerce(value) -> Series:
    if isinstance(value, Series):
        return value
    if isinstance(value, (int, Fraction)):
        return Series.constant(value)
    raise TypeError(f"Cannot combine a Series with {value!r}")


def _lows(s: Series) -> List[float]:
    hi = s.window.hi
    truncated_laurent = [v for v in _LAURENT if hi[_INDEX[v]] is not None]
    lows: List[float] = []
    for i, var in enumerate(VARIABLES):
        if var in _LAURENT and any(u != var for u in truncated_laurent):
            lows.append(-_INF)
            continue
        low = min((m[i] for m in s.terms), default=_INF)
        if hi[i] is not None:
            low = min(low, hi[i] + 1)
        lows.append(low)
    return lows


def _product_window(a: Series, b: Series) -> Window:
    low_a, low_b = _lows(a), _lows(b)
    hi: List[Optional[int]] = []
    for var, ha, hb, la, lb in zip(VARIABLES, a.window.hi, b.window.hi, low_a, low_b):
        bound = _INF
        if ha is not None:
            bound = min(bound, ha + lb)
        if hb is not None:
            bound = min(bound, hb + la)
        if bound == -_INF:
            raise ValueError(
                f"Cannot certify any {var}-exponent of a product; "
                f"a factor is unbounded below in {var}"
            )
        hi.append(None if bound == _INF else int(bound))
    return Window(tuple(hi))


def multiply(a: Series, b: Series, cap: Optional[Window] = None) -> Series:
    window = _product_window(a, b)
    if cap is not None:
        window = window.meet(Window(cap.hi))
    result: Dict[Monomial, Coefficient] = {}
    his = window.hi
    b_terms = list(b.terms.items())
    for ma, ca in a.terms.items():
        for mb, cb in b_terms:
            m = tuple(x + y for x, y in zip(ma, mb))
            if any(h is not None and e > h for e, h in zip(m, his)):
                continue
            result[m] = result.get(m, 0) + ca * cb
    return Series(result, window)


def _add(a: Series, b: Series, sign: int) -> Series:
    window = Window(a.window.meet(b.window).hi)
    terms: Dict[Monomial, Coefficient] = dict(a.terms)
    for m, c in b.terms.items():
        terms[m] = terms.get(m, 0) + sign * c
    return Series(terms, window)


_COMBINE: Mapping[str, Callable[[Series, Series], Series]] = MappingProxyType(
    {
        "add": lambda a, b: _add(a, b, 1),
        "sub": lambda a, b: _add(a, b, -1),
        "mul": multiply,
    }
)


def combine(a: Series, b: Series, op: str) -> Series:
    try:
        fn = _COMBINE[op]
    except KeyError:
        raise ValueError(f"Unknown series operation {op!r}")
    return fn(a, b)


def _unit_remainder(a: Series, cap: Optional[Window]) -> Tuple[Coefficient, Series]:
    """Split a into c0 and R with a = c0 (1 - R), checking R is summable."""
    if cap is not None:
        a = a.truncate(cap)
    if not a.window.below_hi(ONE):
        raise ValueError("Series window excludes its constant term")
    c0 = a.terms.get(ONE, 0)
    if not c0:
        raise ValueError("Series has no constant term, it is not a unit")
    r = (Series.constant(1, a.window) - a.scale(Fraction(1) / c0)).truncate(a.window)
    finite = [_INDEX[v] for v in r.window.finite_variables()]
    for m in r.terms:
        if any(m[i] < 0 for i in finite):
            raise ValueError(f"Term {m.tostring()} is negative in a truncated variable")
        if not any(m[i] > 0 for i in finite):
            raise ValueError(
                f"Term {m.tostring()} does not grow in any truncated variable; "
                "supply a cap"
            )
    return c0, r


def invert_unit(a: Series, cap: Optional[Window] = None) -> Series:
    c0, r = _unit_remainder(a, cap)
    total = Series.constant(1, r.window)
    term = total
    for k in range(1, MAX_ITERATIONS + 1):
        term = multiply(term, r, cap=r.window)
        if not term.terms:
            logging.debug("invert_unit converged after %d powers", k)
            return (total + term).scale(Fraction(1) / c0)
        total = total + term
    raise RuntimeError(f"invert_unit did not converge in {MAX_ITERATIONS} steps")


def sqrt_unit(a: Series, cap: Optional[Window] = None) -> Series:
    if cap is not None:
        a = a.truncate(cap)
    if a.window.below_hi(ONE) and a.terms.get(ONE, 0) != 1:
        raise ValueError(f"sqrt_unit needs constant term 1, got {a.terms.get(ONE, 0)}")
    _, r = _unit_remainder(a, None)
    # a = 1 - r, so 1 + s with s = (-r - s^2) / 2
    s = Series({}, r.window)
    for k in range(1, MAX_ITERATIONS + 1):
        nxt = ((-r) - multiply(s, s, cap=r.window)).scale(Fraction(1, 2))
        nxt = nxt.truncate(r.window)
        if dict(nxt.terms) == dict(s.terms):
            logging.debug("sqrt_unit converged after %d steps", k)
            return Series.constant(1, nxt.window) + nxt
        s = nxt
    raise RuntimeError(f"sqrt_unit did not converge in {MAX_ITERATIONS} steps")


def substitute(a: Series, mapping: Mapping[str, Monomial]) -> Series:
    """Simultaneously replace each variable by a Laurent monomial."""
    for var in mapping:
        _index(var)
    images = [
        Monomial._make(mapping[var]) if var in mapping else Monomial.of(**{var: 1})
        for var in VARIABLES
    ]
    for var in GRADING_VARIABLES:
        if var in mapping:
            image = images[_index(var)]
            if image.t + image.z <= 0:
                raise ValueError(
                    f"{var} -> {image.tostring()} loses the size grading"
                )

    present = [_index(v) for v in a.present_variables()]
    hi: List[Optional[int]] = [None] * len(VARIABLES)
    for var in a.window.finite_variables():
        w = _index(var)
        trackers = [
            u
            for u in range(len(VARIABLES))
            if images[w][u] == 1 and all(images[o][u] == 0 for o in present if o != w)
        ]
        if not trackers:
            raise ValueError(
                f"{var} is truncated but its image {images[w].tostring()} "
                "has no variable of its own to carry the bound"
            )
        u = w if w in trackers else trackers[0]
        if hi[u] is not None:
            raise ValueError(f"Two truncated variables map onto {VARIABLES[u]}")
        hi[u] = a.window.hi[w]

    terms: Dict[Monomial, Coefficient] = {}
    for m, c in a.terms.items():
        out = ONE
        for e, image in zip(m, images):
            if e:
                out = out.times(image.power(e))
        terms[out] = terms.get(out, 0) + c
    return Series(terms, Window(tuple(hi)))


def set_value(a: Series, var: str, value: int) -> Series:
    i = _index(var)
    bound = a.window.hi[i]
    if value == 1:
        if bound is not None:
            raise ValueError(
                f"Cannot set {var}=1 in a series truncated at {var}^{bound}"
            )
        terms: Dict[Monomial, Coefficient] = {}
        for m, c in a.terms.items():
            k = m._replace(**{var: 0})
            terms[k] = terms.get(k, 0) + c
        return Series(terms, a.window.replace(**{var: None}))
    if value == 0:
        if bound is not None and bound < 0:
            raise ValueError(f"Series knows nothing about {var}^0")
        negative = [m for m in a.terms if m[i] < 0]
        if negative:
            raise ValueError(
                f"Cannot set {var}=0, {negative[0].tostring()} has a negative power"
            )
        return Series(
            {m: c for m, c in a.terms.items() if m[i] == 0},
            a.window.replace(**{var: None}),
        )
    raise ValueError(f"Can only set a variable to 0 or 1, not {value!r}")


def coefficient(a: Series, m: Monomial) -> Coefficient:
    m = Monomial._make(m)
    if not a.window.contains(m):
        raise ValueError(f"{m.tostring()} is outside {a.window.tostring()}")
    return a.terms.get(m, 0)


def _diagonal_window(window: Window, pair: Tuple[str, str], out: str) -> Window:
    first, second = pair
    z = _min_bound(window.bound(first), window.bound(second))
    return window.replace(**{first: None, second: None, out: z})


def _check_diagonal_args(pair: Tuple[str, str], out: str, *series: Series):
    first, second = pair
    if first == second or out in pair:
        raise ValueError(f"Bad diagonal {pair} -> {out}")
    for var in (first, second, out):
        _index(var)
    for s in series:
        if out in s.present_variables():
            raise ValueError(f"Diagonal output variable {out} already in use")


def diagonal(a: Series, pair: Tuple[str, str] = ("v", "t"), out: str = "z") -> Series:
    """z^n collects the coefficients of first^n second^n."""
    _check_diagonal_args(pair, out, a)
    i, j, k = _index(pair[0]), _index(pair[1]), _index(out)
    terms: Dict[Monomial, Coefficient] = {}
    for m, c in a.terms.items():
        if m[i] != m[j]:
            continue
        e = list(m)
        e[k] = m[i]
        e[i] = e[j] = 0
        key = Monomial._make(e)
        terms[key] = terms.get(key, 0) + c
    return Series(terms, _diagonal_window(a.window, pair, out))


def diagonal_product(
    a: Series, b: Series, pair: Tuple[str, str] = ("v", "t"), out: str = "z"
) -> Series:
    """diagonal(a * b) without forming the off-diagonal products."""
    _check_diagonal_args(pair, out, a, b)
    window = _product_window(a, b)
    i, j, k = _index(pair[0]), _index(pair[1]), _index(out)
    buckets: Dict[int, List[Tuple[Monomial, Coefficient]]] = {}
    for m, c in b.terms.items():
        buckets.setdefault(m[i] - m[j], []).append((m, c))
    his = window.hi
    terms: Dict[Monomial, Coefficient] = {}
    for ma, ca in a.terms.items():
        for mb, cb in buckets.get(ma[j] - ma[i], ()):
            e = [x + y for x, y in zip(ma, mb)]
            if any(h is not None and x > h for x, h in zip(e, his)):
                continue
            e[k] = e[i]
            e[i] = e[j] = 0
            key = Monomial._make(e)
            terms[key] = terms.get(key, 0) + ca * cb
    logging.debug("diagonal_product: %d x %d terms -> %d", len(a), len(b), len(terms))
    return Series(terms, _diagonal_window(window, pair, out))


def compare(
    a: Series, b: Series, region: Optional[Window] = None
) -> Optional[Mismatch]:
    """The smallest monomial where a and b differ, on their common window."""
    window = a.window.meet(b.window)
    if region is not None:
        window = window.meet(region)
    candidates = sorted(m for m in set(a.terms) | set(b.terms) if window.contains(m))
    for m in candidates:
        left, right = a.terms.get(m, 0), b.terms.get(m, 0)
        if left != right:
            return Mismatch(m, left, right)
    return None

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

"""Brute-force enumeration and definitional generating functions.

Nothing here looks at a closed form; the checks compare the two.
"""
import collections
import csv
import dataclasses
import io
import itertools
import json
from types import MappingProxyType
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple
from absl import logging
from permstat import dyck
from permstat.dyck import DyckPath
from permstat.permutations import Pattern, Permutation, contains_values, perm_stats
from permstat.series import Coefficient, Monomial, Series, Window
from permstat.stat_meta import (
    check_statistics,
    class_name,
    marking_variables,
)


# Enumeration ceilings
MAX_PERM_N = 10
MAX_DYCK_N = 14

_CLASS_PATTERNS = MappingProxyType(
    {
        "avoid_321": Pattern((3, 2, 1)),
        "avoid_132": Pattern((1, 3, 2)),
        "all_perms": None,
    }
)


def _check_size(n: int, ceiling: int, what: str):
    if n < 0:
        raise ValueError(f"Size must be nonnegative, got {n}")
    if n > ceiling:
        raise ValueError(f"{what} of size {n} exceeds the ceiling {ceiling}")


def avoiders(
    pattern: Optional[Pattern], n: int, max_n: int = MAX_PERM_N
) -> Iterator[Permutation]:
    """Permutations of size n avoiding pattern, in lexicographic order.

    Prefixes that already contain the pattern are pruned.
    """
    _check_size(n, max_n, "Permutation")
    if pattern is None:
        for values in itertools.permutations(range(1, n + 1)):
            yield Permutation(values)
        return
    sigma = pattern.values
    prefix: List[int] = []
    used = [False] * (n + 1)

    def _extend() -> Iterator[Tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            prefix.append(v)
            if len(prefix) < len(sigma) or not contains_values(prefix, sigma):
                used[v] = True
                yield from _extend()
                used[v] = False
            prefix.pop()

    for values in _extend():
        yield Permutation(values)


def enumerate_class(cls: str, n: int, max_n: int = MAX_PERM_N) -> Iterator[Permutation]:
    cls = class_name(cls)
    if cls not in _CLASS_PATTERNS:
        raise ValueError(f"{cls!r} is not a permutation class")
    return avoiders(_CLASS_PATTERNS[cls], n, max_n)


def enumerate_paths(n: int, max_n: int = MAX_DYCK_N) -> Iterator[DyckPath]:
    _check_size(n, max_n, "Dyck path")
    return dyck.all_paths(n)


def _path_statistic(name: str) -> Callable[[DyckPath], int]:
    if name in ("ct", "lt"):
        return lambda d: getattr(dyck.tunnel_stats(d, 0), f"{name}_r")
    if name == "uud":
        return lambda d: dyck.count_factor(d, "uud")
    field = {
        "h": "hills",
        "dr": "double_rises",
        "va": "valleys",
        "p2": "peaks_ge2",
    }[name]
    return lambda d: getattr(dyck.path_stats(d), field)


def path_statistics(path: DyckPath, stats: Sequence[str]) -> Tuple[int, ...]:
    return tuple(_path_statistic(s)(path) for s in stats)


def perm_statistics(pi: Permutation, stats: Sequence[str]) -> Tuple[int, ...]:
    values = perm_stats(pi)
    return tuple(getattr(values, s) for s in stats)


@dataclasses.dataclass(frozen=True)
class DistributionTable:
    n: int
    cls: str
    stats: Tuple[str, ...]
    entries: Mapping[Tuple[int, ...], int]

    def __post_init__(self):
        # makes dict read-only
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def total(self) -> int:
        return sum(self.entries.values())

    def rows(self) -> List[Tuple[int, ...]]:
        """Statistic values then count, sorted by statistic tuple."""
        return [key + (self.entries[key],) for key in sorted(self.entries)]

    def to_series(self, with_size: bool = True) -> Series:
        """The polynomial sum of count * marks, times t^n when with_size."""
        variables = marking_variables(self.stats)
        size = Monomial.of(t=self.n) if with_size else Monomial()
        terms: Dict[Monomial, Coefficient] = {}
        for key, count in self.entries.items():
            m = size.times(Monomial.of(**dict(zip(variables, key))))
            terms[m] = terms.get(m, 0) + count
        return Series(terms)

    def tocsv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.stats + ("count",))
        writer.writerows(self.rows())
        return buf.getvalue()

    def tojson(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "class": self.cls,
                "stats": list(self.stats),
                "entries": [
                    dict(zip(self.stats + ("count",), row)) for row in self.rows()
                ],
            },
            indent=2,
        )


def distribution(
    cls: str, n: int, stats: Sequence[str], max_n: Optional[int] = None
) -> DistributionTable:
    cls = class_name(cls)
    stats = check_statistics(cls, stats)
    counts: collections.Counter = collections.Counter()
    if cls == "dyck":
        for path in enumerate_paths(n, MAX_DYCK_N if max_n is None else max_n):
            counts[path_statistics(path, stats)] += 1
    else:
        for pi in enumerate_class(cls, n, MAX_PERM_N if max_n is None else max_n):
            counts[perm_statistics(pi, stats)] += 1
    logging.debug(
        "distribution %s n=%d %s: %d objects", cls, n, stats, sum(counts.values())
    )
    return DistributionTable(n, cls, stats, counts)


def distribution_series(
    cls: str, order: int, stats: Sequence[str], max_n: Optional[int] = None
) -> Series:
    """Sum of the distributions for n = 0..order, exact through t^order."""
    total = Series({}, Window.of(t=order))
    for n in range(order + 1):
        total = total + distribution(cls, n, stats, max_n).to_series()
    return total


class _ShiftedTunnels:
    """ct_r and lt_r of one path for any r, from a single tunnel scan."""

    def __init__(self, path: DyckPath):
        self.n = path.semilength
        self.midpoints = collections.Counter(t.midpoint() for t in dyck.tunnels(path))

    def stats(self, r: int) -> Tuple[int, int]:
        line = self.n - r
        ct = self.midpoints.get(line, 0)
        lt = sum(c for m, c in self.midpoints.items() if m < line)
        return ct, lt


def _grading_bounds(window: Window, grading: str, offset: str, max_n: int):
    order = window.bound(grading)
    offset_max = window.bound(offset)
    if order is None or offset_max is None:
        raise ValueError(
            f"Need finite {grading} and {offset} bounds, got {window.tostring()}"
        )
    _check_size(order, max_n, "Dyck path")
    return order, offset_max


def _add_term(terms: Dict[Monomial, Coefficient], m: Monomial):
    terms[m] = terms.get(m, 0) + 1


def _sum_g(order: int, v_max: int, sign: int, r_min: Callable[[int], int], max_n: int):
    terms: Dict[Monomial, Coefficient] = {}
    for n in range(order + 1):
        for path in enumerate_paths(n, max_n):
            shifted = _ShiftedTunnels(path)
            for r in range(r_min(n), v_max + 1):
                ct, lt = shifted.stats(sign * r)
                _add_term(terms, Monomial.of(x=ct, q=lt, v=r, t=n))
    return terms


def _oracle_g(window: Window, max_n: int) -> Series:
    order, v_max = _grading_bounds(window, "t", "v", max_n)
    terms = _sum_g(order, v_max, 1, lambda n: 0, max_n)
    return Series(terms, Window.of(t=order, v=v_max))


def _oracle_g_dual(window: Window, max_n: int) -> Series:
    """Sum of x^ct_{-r} q^lt_{-r} v^r t^n over r >= 0."""
    order, v_max = _grading_bounds(window, "t", "v", max_n)
    terms = _sum_g(order, v_max, -1, lambda n: 0, max_n)
    return Series(terms, Window.of(t=order, v=v_max))


def _oracle_g_tail(window: Window, max_n: int) -> Series:
    """The part of G with r > n."""
    order, v_max = _grading_bounds(window, "t", "v", max_n)
    terms = _sum_g(order, v_max, 1, lambda n: n + 1, max_n)
    return Series(terms, Window.of(t=order, v=v_max))


def _oracle_h1(window: Window, max_n: int) -> Series:
    order, v_max = _grading_bounds(window, "t", "v", max_n)
    terms: Dict[Monomial, Coefficient] = {}
    for n in range(1, order + 1):
        for inner in enumerate_paths(n - 1, max_n):
            shifted = _ShiftedTunnels(inner.lift())
            for k in range(-n, v_max + 1):
                # the q-exponent is lt_{-k}, the left tunnels
                ct, lt = shifted.stats(-k)
                _add_term(terms, Monomial.of(x=ct, q=lt, v=k, t=n))
    return Series(terms, Window.of(t=order, v=v_max))


def _oracle_h2(window: Window, max_n: int) -> Series:
    order, v_max = _grading_bounds(window, "t", "v", max_n)
    terms = _sum_g(order, v_max, 1, lambda n: -n, max_n)
    return Series(terms, Window.of(t=order, v=v_max))


def _oracle_h3(window: Window, max_n: int) -> Series:
    order, y_max = _grading_bounds(window, "z", "y", max_n)
    terms: Dict[Monomial, Coefficient] = {}
    for n in range(1, order + 1):
        for path in enumerate_paths(n, max_n):
            shifted = _ShiftedTunnels(path)
            for r in range(-n, min(n, y_max) + 1):
                ct, lt = shifted.stats(r)
                _add_term(terms, Monomial.of(x=ct, q=lt, y=r, z=n))
    return Series(terms, Window.of(z=order, y=y_max))


# makes dict read-only
GF_ORACLES = MappingProxyType(
    {
        "G": _oracle_g,
        "G_dual": _oracle_g_dual,
        "G_tail": _oracle_g_tail,
        "H1": _oracle_h1,
        "H2": _oracle_h2,
        "H3": _oracle_h3,
    }
)


def gf_oracle(name: str, window: Window, max_n: int = MAX_DYCK_N) -> Series:
    """The definitional sum for name, term by term over enumerated paths."""
    try:
        build = GF_ORACLES[name]
    except KeyError:
        raise ValueError(f"Unknown generating function {name!r}")
    result = build(window, max_n)
    logging.debug("gf_oracle %s: %d terms", name, len(result))
    return result

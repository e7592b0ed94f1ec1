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

"""Permutations in one-line notation, pattern containment and statistics.

Positions and values are 1-based throughout: pi_i is values[i - 1].
"""
import dataclasses
from types import MappingProxyType
from typing import Iterable, Iterator, NamedTuple, Sequence, Tuple


@dataclasses.dataclass(frozen=True)
class Permutation:
    values: Tuple[int, ...] = ()

    def __post_init__(self):
        values = tuple(self.values)
        n = len(values)
        seen = set()
        for v in values:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"Permutation entries must be ints, got {v!r}")
            if not 1 <= v <= n:
                raise ValueError(f"Value {v} out of range 1..{n} in {values}")
            if v in seen:
                raise ValueError(f"Duplicate value {v} in {values}")
            seen.add(v)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __str__(self) -> str:
        return self.tostring()

    def at(self, i: int) -> int:
        """Return pi_i for a 1-based position i."""
        if not 1 <= i <= len(self.values):
            raise ValueError(f"Position {i} out of range for {self}")
        return self.values[i - 1]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def fromstring(cls, s: str) -> "Permutation":
        s = s.strip()
        if not s:
            return cls(())
        if "," in s:
            parts = [p.strip() for p in s.split(",")]
        else:
            parts = list(s)
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as e:
            raise ValueError(f"Unable to parse permutation {s!r}: {e}")

    def tostring(self) -> str:
        # digit strings are unambiguous only while every value is one digit
        if len(self.values) <= 9:
            return "".join(str(v) for v in self.values)
        return ",".join(str(v) for v in self.values)


# Same representation; the alias documents intent at call sites
Pattern = Permutation


class PermStats(NamedTuple):
    fp: int
    exc: int
    des: int
    wexc: int


def make_permutation(values: Iterable[int]) -> Permutation:
    return Permutation(tuple(values))


def _order_matches(values: Sequence[int], chosen: Sequence[int], pattern) -> bool:
    # chosen holds positions; compare the newest against all earlier picks
    k = len(chosen) - 1
    last = values[chosen[k]]
    for j in range(k):
        if (values[chosen[j]] < last) != (pattern[j] < pattern[k]):
            return False
    return True


def _contains_backtrack(values: Sequence[int], pattern: Sequence[int]) -> bool:
    m = len(pattern)
    n = len(values)
    chosen = []

    def _extend(start: int) -> bool:
        if len(chosen) == m:
            return True
        # leave room for the rest of the pattern
        for i in range(start, n - (m - len(chosen)) + 1):
            chosen.append(i)
            if _order_matches(values, chosen, pattern) and _extend(i + 1):
                return True
            chosen.pop()
        return False

    return _extend(0)


def _contains_len3(values: Sequence[int], pattern: Sequence[int]) -> bool:
    """O(n^2) test for a length-3 pattern by scanning the middle element."""
    s1, s2, s3 = pattern
    n = len(values)
    for j in range(1, n - 1):
        mid = values[j]
        left = [a for a in values[:j] if (a < mid) == (s1 < s2)]
        right = [c for c in values[j + 1 :] if (c < mid) == (s3 < s2)]
        if not left or not right:
            continue
        if s1 < s3:
            if min(left) < max(right):
                return True
        elif max(left) > min(right):
            return True
    return False


def contains_values(values: Sequence[int], pattern: Sequence[int]) -> bool:
    """Pattern containment on any sequence of distinct integers."""
    if not pattern:
        raise ValueError("Pattern must be nonempty")
    if len(pattern) > len(values):
        return False
    if len(pattern) == 3:
        return _contains_len3(values, pattern)
    return _contains_backtrack(values, pattern)


def contains(pi: Permutation, sigma: Pattern) -> bool:
    return contains_values(pi.values, sigma.values)


def contains_backtrack(pi: Permutation, sigma: Pattern) -> bool:
    """The general routine, without the length-3 shortcut."""
    if not len(sigma):
        raise ValueError("Pattern must be nonempty")
    return _contains_backtrack(pi.values, sigma.values)


def avoids(pi: Permutation, sigma: Pattern) -> bool:
    return not contains(pi, sigma)


def fixed_points(pi: Permutation) -> Tuple[int, ...]:
    return tuple(i for i, v in enumerate(pi.values, 1) if v == i)


def excedances(pi: Permutation) -> Tuple[int, ...]:
    return tuple(i for i, v in enumerate(pi.values, 1) if v > i)


def descents(pi: Permutation) -> Tuple[int, ...]:
    vals = pi.values
    return tuple(i for i in range(1, len(vals)) if vals[i - 1] > vals[i])


def perm_stats(pi: Permutation) -> PermStats:
    fp = len(fixed_points(pi))
    exc = len(excedances(pi))
    return PermStats(fp=fp, exc=exc, des=len(descents(pi)), wexc=fp + exc)


def inverse(pi: Permutation) -> Permutation:
    rho = [0] * len(pi)
    for i, v in enumerate(pi.values, 1):
        rho[v - 1] = i
    return Permutation(tuple(rho))


def reverse(pi: Permutation) -> Permutation:
    return Permutation(tuple(reversed(pi.values)))


# makes dict read-only
_TRANSFORMS = MappingProxyType(
    {
        "inverse": inverse,
        "reverse": reverse,
    }
)


def transform(pi: Permutation, kind: str) -> Permutation:
    try:
        fn = _TRANSFORMS[kind]
    except KeyError:
        raise ValueError(f"Unknown transform {kind!r}")
    return fn(pi)


def _increasing(seq: Sequence[int]) -> bool:
    return all(a < b for a, b in zip(seq, seq[1:]))


def excedance_structure_holds(pi: Permutation) -> bool:
    """Excedance values increase, and so do the remaining values.

    Holds exactly for the 321-avoiding permutations.
    """
    exc = [v for i, v in enumerate(pi.values, 1) if v > i]
    rest = [v for i, v in enumerate(pi.values, 1) if v <= i]
    return _increasing(exc) and _increasing(rest)


def right_to_left_minima(pi: Permutation) -> Tuple[int, ...]:
    """Positions i with pi_i smaller than everything to its right."""
    positions = []
    smallest = len(pi) + 1
    for i in range(len(pi), 0, -1):
        v = pi.values[i - 1]
        if v < smallest:
            positions.append(i)
            smallest = v
    return tuple(reversed(positions))


def fill_increasing(n: int, placed: dict) -> Permutation:
    """Complete {position: value} by putting the unused values, increasing,
    into the unused positions."""
    free_values = iter(sorted(set(range(1, n + 1)) - set(placed.values())))
    values = []
    for i in range(1, n + 1):
        values.append(placed[i] if i in placed else next(free_values))
    return Permutation(tuple(values))

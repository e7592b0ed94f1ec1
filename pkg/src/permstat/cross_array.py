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

"""Permutation arrays and monotone staircase paths through them.

A staircase runs along cell edges between two opposite corners of the n x n
array. It is described by s_1 <= s_2 <= ... <= s_n where s_i is the number
of horizontal steps taken before the vertical step that crosses row i.
Starting at the upper-left corner the vertical step of row i lies on column
boundary s_i; starting at the upper-right corner it lies on n - s_i.

Reading the path as a Dyck word either maps vertical steps to u (the path
stays weakly below the diagonal, s_i <= i - 1) or horizontal steps to u (the
path stays weakly above it, s_i >= i).
"""
import dataclasses
from types import MappingProxyType
from typing import FrozenSet, List, NamedTuple, Sequence, Tuple
from permstat.dyck import DOWN, UP, DyckPath
from permstat.lattice_types import Cell
from permstat.permutations import Permutation


@dataclasses.dataclass(frozen=True)
class CrossArray:
    n: int
    crosses: FrozenSet[Cell]

    def __post_init__(self):
        rows = sorted(c.row for c in self.crosses)
        cols = sorted(c.col for c in self.crosses)
        expected = list(range(1, self.n + 1))
        if rows != expected or cols != expected:
            raise ValueError(f"Need exactly one cross per row and column: {self}")

    @classmethod
    def from_permutation(cls, pi: Permutation) -> "CrossArray":
        return cls(len(pi), frozenset(Cell(i, v) for i, v in enumerate(pi.values, 1)))

    def to_permutation(self) -> Permutation:
        return Permutation(tuple(c.col for c in sorted(self.crosses)))

    def excedance_crosses(self) -> FrozenSet[Cell]:
        return frozenset(c for c in self.crosses if c.right_of_diagonal())


class StaircaseSpec(NamedTuple):
    constraint_crosses: str  # "all" or "excedances"
    side: str  # crosses lie "left" or "right" of the path
    proximity: str  # "hug" or "avoid" the main diagonal
    corner_orientation: str  # "upper_left" or "upper_right" start
    reading: str  # "vertical_up" or "horizontal_up"


# makes dict read-only
STAIRCASES = MappingProxyType(
    {
        "rs": StaircaseSpec("all", "right", "hug", "upper_left", "vertical_up"),
        "bjs": StaircaseSpec(
            "excedances", "right", "avoid", "upper_left", "horizontal_up"
        ),
        "kra": StaircaseSpec("all", "left", "hug", "upper_left", "horizontal_up"),
        "krat": StaircaseSpec("all", "right", "hug", "upper_right", "horizontal_up"),
    }
)


def _check_spec(spec: StaircaseSpec):
    if spec.constraint_crosses not in ("all", "excedances"):
        raise ValueError(f"Invalid constraint_crosses {spec.constraint_crosses!r}")
    if spec.side not in ("left", "right"):
        raise ValueError(f"Invalid side {spec.side!r}")
    if spec.proximity not in ("hug", "avoid"):
        raise ValueError(f"Invalid proximity {spec.proximity!r}")
    if spec.corner_orientation not in ("upper_left", "upper_right"):
        raise ValueError(f"Invalid corner_orientation {spec.corner_orientation!r}")
    if spec.reading not in ("vertical_up", "horizontal_up"):
        raise ValueError(f"Invalid reading {spec.reading!r}")


def _bounds(array: CrossArray, spec: StaircaseSpec) -> Tuple[List[int], List[int]]:
    n = array.n
    if spec.reading == "vertical_up":
        lo = [0] * n
        hi = [i - 1 for i in range(1, n + 1)]
    else:
        lo = list(range(1, n + 1))
        hi = [n] * n

    constrained = (
        array.crosses
        if spec.constraint_crosses == "all"
        else array.excedance_crosses()
    )
    for cell in constrained:
        k = cell.row - 1
        # a cross in column c is right of a vertical step on boundary b iff c > b
        if spec.corner_orientation == "upper_left":
            if spec.side == "right":
                hi[k] = min(hi[k], cell.col - 1)
            else:
                lo[k] = max(lo[k], cell.col)
        else:
            if spec.side == "right":
                lo[k] = max(lo[k], n - cell.col + 1)
            else:
                hi[k] = min(hi[k], n - cell.col)
    return lo, hi


def _maximize(direction: str, spec: StaircaseSpec) -> bool:
    # below the diagonal hugging means pushing right; above it, pulling left
    below = spec.reading == "vertical_up"
    return (direction == "hug") == below


def staircase(array: CrossArray, spec: StaircaseSpec) -> Tuple[int, ...]:
    """The extremal staircase satisfying spec, as (s_1, ..., s_n)."""
    _check_spec(spec)
    n = array.n
    lo, hi = _bounds(array, spec)
    s = [0] * n
    if _maximize(spec.proximity, spec):
        bound = n
        for k in range(n - 1, -1, -1):
            bound = min(bound, hi[k])
            s[k] = bound
    else:
        bound = 0
        for k in range(n):
            bound = max(bound, lo[k])
            s[k] = bound
    for k in range(n):
        if not lo[k] <= s[k] <= hi[k]:
            raise RuntimeError(
                f"No staircase for {spec} through {array.to_permutation()} "
                f"at row {k + 1}"
            )
    return tuple(s)


def read_staircase(s: Sequence[int], n: int, reading: str) -> DyckPath:
    horizontal, vertical = (DOWN, UP) if reading == "vertical_up" else (UP, DOWN)
    word = []
    prev = 0
    for b in s:
        word.append(horizontal * (b - prev))
        word.append(vertical)
        prev = b
    word.append(horizontal * (n - prev))
    try:
        return DyckPath("".join(word))
    except ValueError as e:
        raise RuntimeError(f"Staircase {tuple(s)} does not read as a Dyck path: {e}")


def staircase_path(pi: Permutation, spec: StaircaseSpec) -> DyckPath:
    array = CrossArray.from_permutation(pi)
    return read_staircase(staircase(array, spec), array.n, spec.reading)


def horizontal_counts(path: DyckPath, reading: str) -> Tuple[int, ...]:
    """Recover (s_1, ..., s_n) from a word read with the given rule."""
    horizontal = DOWN if reading == "vertical_up" else UP
    s = []
    count = 0
    for step in path.steps:
        if step == horizontal:
            count += 1
        else:
            s.append(count)
    return tuple(s)

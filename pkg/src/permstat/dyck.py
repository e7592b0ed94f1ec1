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

"""Dyck paths, their classical statistics and tunnel statistics."""
import dataclasses
from typing import Iterable, List, NamedTuple, Tuple
from permstat.lattice_types import LatticePoint, Tunnel


UP = "u"
DOWN = "d"


@dataclasses.dataclass(frozen=True)
class DyckPath:
    steps: str = ""

    def __post_init__(self):
        steps = self.steps.lower()
        height = 0
        for i, s in enumerate(steps):
            if s == UP:
                height += 1
            elif s == DOWN:
                height -= 1
            else:
                raise ValueError(f"Invalid step {s!r} at {i} in {self.steps!r}")
            if height < 0:
                raise ValueError(f"Prefix of {self.steps!r} goes below the axis at {i}")
        if height != 0:
            raise ValueError(f"Unbalanced Dyck word {self.steps!r}")
        object.__setattr__(self, "steps", steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return self.steps

    @property
    def semilength(self) -> int:
        return len(self.steps) // 2

    @classmethod
    def fromstring(cls, s: str) -> "DyckPath":
        return cls(s.strip())

    def tostring(self) -> str:
        return self.steps

    def heights(self) -> Tuple[int, ...]:
        """Heights of the lattice points, starting with 0."""
        return tuple(p.y for p in self.points())

    def points(self) -> Tuple[LatticePoint, ...]:
        pts = [LatticePoint()]
        for s in self.steps:
            pts.append(pts[-1].step(s == UP))
        return tuple(pts)

    def lift(self) -> "DyckPath":
        """Return uDd."""
        return DyckPath(UP + self.steps + DOWN)


class PathStats(NamedTuple):
    hills: int
    double_rises: int
    valleys: int
    peaks: int
    peaks_ge2: int


class TunnelStats(NamedTuple):
    r: int
    ct_r: int
    lt_r: int


def make_path(word: Iterable[str]) -> DyckPath:
    return DyckPath("".join(word))


def count_factor(path: DyckPath, factor: str) -> int:
    """Occurrences of factor in the Dyck word, overlaps included."""
    factor = factor.lower()
    w = path.steps
    return sum(1 for i in range(len(w) - len(factor) + 1) if w.startswith(factor, i))


def path_stats(path: DyckPath) -> PathStats:
    w = path.steps
    heights = path.heights()
    peaks = hills = double_rises = valleys = 0
    for i, s in enumerate(w):
        nxt = w[i + 1] if i + 1 < len(w) else ""
        if s == UP:
            if nxt == DOWN:
                peaks += 1
                if heights[i] == 0:
                    hills += 1
            elif nxt == UP:
                double_rises += 1
        elif nxt == UP:
            valleys += 1
    return PathStats(
        hills=hills,
        double_rises=double_rises,
        valleys=valleys,
        peaks=peaks,
        peaks_ge2=peaks - hills,
    )


def tunnels(path: DyckPath) -> Tuple[Tunnel, ...]:
    """One tunnel per up-step, in up-step order."""
    result: List[Tunnel] = []
    stack = []
    for x, s in enumerate(path.steps):
        if s == UP:
            stack.append(len(result))
            result.append(Tunnel(start_x=x, end_x=-1, height=len(stack) - 1))
        else:
            idx = stack.pop()
            result[idx] = result[idx]._replace(end_x=x + 1)
    return tuple(result)


def tunnel_stats(path: DyckPath, r: int = 0) -> TunnelStats:
    n = path.semilength
    ct = lt = 0
    for tunnel in tunnels(path):
        if tunnel.is_centered(n, r):
            ct += 1
        elif tunnel.is_left(n, r):
            lt += 1
    return TunnelStats(r=r, ct_r=ct, lt_r=lt)


def reflect(path: DyckPath) -> DyckPath:
    swap = {UP: DOWN, DOWN: UP}
    return DyckPath("".join(swap[s] for s in reversed(path.steps)))


def all_paths(n: int) -> Iterable[DyckPath]:
    """Every path of semilength n, in lexicographic order of the word."""

    def _words(prefix: str, ups: int, downs: int):
        if ups == n and downs == n:
            yield prefix
            return
        # "d" < "u"
        if downs < ups:
            yield from _words(prefix + DOWN, ups, downs + 1)
        if ups < n:
            yield from _words(prefix + UP, ups + 1, downs)

    for word in _words("", 0, 0):
        yield DyckPath(word)

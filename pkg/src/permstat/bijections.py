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

"""Bijections from 321- and 132-avoiding permutations to Dyck paths.

rs and krat are computed from their defining recurrences; bjs and kra (and
the derived bij4) are extremal staircases through the permutation array, see
cross_array. Every map has an explicit inverse.
"""
from types import MappingProxyType
from typing import Callable, NamedTuple
from permstat import cross_array
from permstat.cross_array import STAIRCASES
from permstat.dyck import DOWN, UP, DyckPath
from permstat.permutations import (
    Pattern,
    Permutation,
    avoids,
    fill_increasing,
    inverse,
    right_to_left_minima,
)


P321 = Pattern((3, 2, 1))
P132 = Pattern((1, 3, 2))


def _require_avoids(pi: Permutation, pattern: Pattern, name: str):
    if not avoids(pi, pattern):
        raise ValueError(f"{name} needs a {pattern}-avoiding permutation, got {pi}")


def _down_counts(path: DyckPath):
    """Number of consecutive d's following each u, in u order."""
    counts = []
    for step in path.steps:
        if step == UP:
            counts.append(0)
        else:
            counts[-1] += 1
    return counts


def rs(pi: Permutation) -> DyckPath:
    _require_avoids(pi, P321, "rs")
    seen = set()
    a = 0
    word = []
    for v in pi:
        seen.add(v)
        # a is the largest j with {1..j} among the values read so far
        while a + 1 in seen:
            a += 1
        word.append(UP + DOWN * max(a - v + 1, 0))
    return DyckPath("".join(word))


def rs_via_minima(pi: Permutation) -> DyckPath:
    """rs computed from the right-to-left minima."""
    _require_avoids(pi, P321, "rs_via_minima")
    n = len(pi)
    if n == 0:
        return DyckPath("")
    positions = right_to_left_minima(pi)
    word = [UP * positions[0]]
    for prev, cur in zip(positions, positions[1:]):
        word.append(DOWN * (pi.at(cur) - pi.at(prev)))
        word.append(UP * (cur - prev))
    word.append(DOWN * (n + 1 - pi.at(positions[-1])))
    return DyckPath("".join(word))


def rs_inverse(path: DyckPath) -> Permutation:
    # a u directly followed by a d marks a right-to-left minimum whose
    # value is one more than the number of d's before it
    placed = {}
    downs = 0
    for i, count in enumerate(_down_counts(path), 1):
        if count:
            placed[i] = downs + 1
        downs += count
    return fill_increasing(path.semilength, placed)


def _krat_heights(pi: Permutation):
    vals = pi.values
    return [sum(1 for w in vals[j + 1 :] if w > v) for j, v in enumerate(vals)]


def krat(pi: Permutation) -> DyckPath:
    _require_avoids(pi, P132, "krat")
    word = []
    height = 0
    for h in _krat_heights(pi):
        if height > h + 1:
            raise RuntimeError(f"krat({pi}) would need a down run at height {height}")
        word.append(UP * (h + 1 - height) + DOWN)
        height = h
    return DyckPath("".join(word))


def krat_inverse(path: DyckPath) -> Permutation:
    remaining = list(range(path.semilength, 0, -1))
    values = []
    height = 0
    for step in path.steps:
        if step == UP:
            height += 1
            continue
        height -= 1
        # the height after the j-th down-step counts larger values to come
        values.append(remaining.pop(height))
    return Permutation(tuple(values))


def bjs(pi: Permutation) -> DyckPath:
    _require_avoids(pi, P321, "bjs")
    return cross_array.staircase_path(pi, STAIRCASES["bjs"])


def bjs_inverse(path: DyckPath) -> Permutation:
    n = path.semilength
    # b_i = number of u's before the i-th d
    b = cross_array.horizontal_counts(path, "horizontal_up")
    placed = {e: b[e - 1] + 1 for e in range(1, n) if b[e] > b[e - 1]}
    return fill_increasing(n, placed)


def kra(pi: Permutation) -> DyckPath:
    _require_avoids(pi, P321, "kra")
    return cross_array.staircase_path(pi, STAIRCASES["kra"])


def kra_inverse(path: DyckPath) -> Permutation:
    b = cross_array.horizontal_counts(path, "horizontal_up")
    placed = {}
    prev = 0
    for i, bi in enumerate(b, 1):
        if bi > max(i, prev):
            placed[i] = bi
        prev = bi
    return fill_increasing(path.semilength, placed)


def bij4(pi: Permutation) -> DyckPath:
    _require_avoids(pi, P321, "bij4")
    return bjs(inverse(pi))


def bij4_inverse(path: DyckPath) -> Permutation:
    return inverse(bjs_inverse(path))


class Bijection(NamedTuple):
    forward: Callable[[Permutation], DyckPath]
    backward: Callable[[DyckPath], Permutation]
    domain: str


# makes dict read-only
BIJECTIONS = MappingProxyType(
    {
        "rs": Bijection(rs, rs_inverse, "avoid_321"),
        "krat": Bijection(krat, krat_inverse, "avoid_132"),
        "bjs": Bijection(bjs, bjs_inverse, "avoid_321"),
        "kra": Bijection(kra, kra_inverse, "avoid_321"),
        "bij4": Bijection(bij4, bij4_inverse, "avoid_321"),
    }
)


def bijection(name: str) -> Bijection:
    try:
        return BIJECTIONS[name]
    except KeyError:
        raise ValueError(f"Unknown bijection {name!r}")


def staircase_bijection(pi: Permutation, variant: str) -> DyckPath:
    """The staircase construction for variant.

    rs and krat are accepted too so their recurrences can be cross-checked
    against the array picture.
    """
    if variant == "bij4":
        _require_avoids(pi, P321, "bij4")
        return staircase_bijection(inverse(pi), "bjs")
    if variant not in STAIRCASES:
        raise ValueError(f"Unknown staircase variant {variant!r}")
    _require_avoids(pi, P132 if variant == "krat" else P321, variant)
    return cross_array.staircase_path(pi, STAIRCASES[variant])


INVOLUTIONS = ("va_dr", "dr_p2")


def involution(path: DyckPath, kind: str) -> DyckPath:
    """va_dr swaps valleys and double rises; dr_p2 swaps double rises and
    peaks at height >= 2 while keeping hills."""
    if kind == "va_dr":
        return rs(bjs_inverse(path))
    if kind == "dr_p2":
        return rs(kra_inverse(path))
    raise ValueError(f"Unknown involution {kind!r}")


def weak_excedance_map(pi: Permutation) -> Permutation:
    """Sends a 321-avoider with k excedances to one with k + 1 weak
    excedances (n >= 1)."""
    return inverse(bjs_inverse(rs(pi)))

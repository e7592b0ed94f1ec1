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

from permstat.cross_array import (
    STAIRCASES,
    CrossArray,
    StaircaseSpec,
    horizontal_counts,
    read_staircase,
    staircase,
    staircase_path,
)
from permstat.lattice_types import Cell
import pytest
from permstat_test_helpers import *


def test_from_permutation():
    array = CrossArray.from_permutation(perm("231"))
    assert array.crosses == {Cell(1, 2), Cell(2, 3), Cell(3, 1)}
    assert array.excedance_crosses() == {Cell(1, 2), Cell(2, 3)}
    assert array.to_permutation() == perm("231")


def test_rejects_two_crosses_in_a_column():
    with pytest.raises(ValueError, match="one cross per row and column"):
        CrossArray(2, frozenset({Cell(1, 1), Cell(2, 1)}))


@pytest.mark.parametrize(
    "variant, pi, expected",
    [
        ("rs", "123", (0, 1, 2)),
        ("bjs", "123", (3, 3, 3)),
        ("kra", "123", (1, 2, 3)),
    ],
)
def test_staircase(variant, pi, expected):
    array = CrossArray.from_permutation(perm(pi))
    assert staircase(array, STAIRCASES[variant]) == expected


@pytest.mark.parametrize(
    "variant, pi, expected",
    [
        ("rs", "123", "ududud"),
        ("bjs", "123", "uuuddd"),
        ("kra", "123", "ududud"),
        ("rs", "23147586", "uuuddduduuduuddd"),
    ],
)
def test_staircase_path(variant, pi, expected):
    actual = staircase_path(perm(pi), STAIRCASES[variant])
    print(f"A: {actual}")
    print(f"E: {expected}")
    assert actual == path(expected)


def test_invalid_spec():
    spec = StaircaseSpec("all", "above", "hug", "upper_left", "vertical_up")
    with pytest.raises(ValueError, match="Invalid side"):
        staircase(CrossArray.from_permutation(perm("1")), spec)


def test_infeasible_staircase():
    # above the diagonal there is no room right of a diagonal cross
    spec = StaircaseSpec("all", "right", "hug", "upper_left", "horizontal_up")
    with pytest.raises(RuntimeError, match="No staircase"):
        staircase(CrossArray.from_permutation(perm("12")), spec)


def test_read_staircase_rejects_non_dyck():
    with pytest.raises(RuntimeError, match="does not read as a Dyck path"):
        read_staircase((1,), 1, "vertical_up")


@pytest.mark.parametrize("reading", ["vertical_up", "horizontal_up"])
def test_horizontal_counts_recovers_staircase(reading):
    for pi in avoiding("321", 6):
        for variant, spec in STAIRCASES.items():
            if variant == "krat" or spec.reading != reading:
                continue
            s = staircase(CrossArray.from_permutation(pi), spec)
            assert horizontal_counts(read_staircase(s, len(pi), reading), reading) == s


def test_staircases_are_read_only():
    with pytest.raises(TypeError):
        STAIRCASES["rs"] = STAIRCASES["kra"]
    assert STAIRCASES["rs"].proximity == "hug"

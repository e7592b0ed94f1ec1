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

import itertools
from hypothesis import given
from hypothesis import strategies as st
from permstat import permutations
from permstat.permutations import (
    Pattern,
    Permutation,
    contains,
    contains_backtrack,
    excedance_structure_holds,
    excedances,
    fixed_points,
    inverse,
    make_permutation,
    perm_stats,
    reverse,
    right_to_left_minima,
    transform,
)
import pytest
from permstat_test_helpers import *


permutation_values = st.integers(min_value=0, max_value=8).flatmap(
    lambda n: st.permutations(list(range(1, n + 1)))
)


def test_make_permutation():
    pi = make_permutation([2, 3, 1, 4, 7, 5, 8, 6])
    assert len(pi) == 8
    assert pi.at(5) == 7
    assert len(make_permutation([])) == 0


@pytest.mark.parametrize(
    "values, message",
    [
        ([1, 1, 2], "Duplicate"),
        ([0, 1], "out of range"),
        ([1, 3], "out of range"),
    ],
)
def test_make_permutation_rejects(values, message):
    with pytest.raises(ValueError, match=message):
        make_permutation(values)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("23147586", (2, 3, 1, 4, 7, 5, 8, 6)),
        ("10,9,1,2,3,4,5,6,7,8", (10, 9, 1, 2, 3, 4, 5, 6, 7, 8)),
        ("", ()),
    ],
)
def test_fromstring_tostring(text, expected):
    pi = Permutation.fromstring(text)
    assert pi.values == expected
    assert pi.tostring() == text


@pytest.mark.parametrize(
    "pi, sigma, expected",
    [
        ("24531", "132", True),
        ("42351", "132", False),
        ("132", "132", True),
        ("23147586", "321", False),
        ("321", "321", True),
        ("12", "321", False),
    ],
)
def test_contains(pi, sigma, expected):
    assert contains(perm(pi), perm(sigma)) == expected


def test_len3_shortcut_agrees_with_backtracking():
    for n in range(7):
        for pi in all_perms(n):
            for sigma in itertools.permutations((1, 2, 3)):
                pattern = Pattern(sigma)
                assert contains(pi, pattern) == contains_backtrack(pi, pattern)


def test_containment_respects_inverse():
    for n in range(6):
        for pi in all_perms(n):
            for sigma in itertools.permutations((1, 2, 3)):
                pattern = Pattern(sigma)
                assert contains(pi, pattern) == contains(
                    inverse(pi), inverse(pattern)
                )


def test_longer_pattern():
    assert contains(perm("2413"), perm("2413"))
    assert not contains(perm("1234"), perm("2413"))
    assert contains(perm("325164"), perm("2413"))


def test_empty_pattern_rejected():
    with pytest.raises(ValueError):
        contains(perm("12"), Permutation(()))


@pytest.mark.parametrize(
    "pi, fp, exc, des",
    [
        ("23147586", 1, 4, 3),
        ("67435281", 1, 4, 4),
        ("12345", 5, 0, 0),
        ("", 0, 0, 0),
    ],
)
def test_perm_stats(pi, fp, exc, des):
    stats = perm_stats(perm(pi))
    print(f"A: {stats}")
    assert (stats.fp, stats.exc, stats.des) == (fp, exc, des)
    assert stats.wexc == fp + exc


def test_positions():
    pi = perm("23147586")
    assert fixed_points(pi) == (4,)
    assert excedances(pi) == (1, 2, 5, 7)
    assert right_to_left_minima(pi) == (3, 4, 6, 8)


def test_transforms():
    assert inverse(perm("231")) == perm("312")
    assert reverse(perm("23147586")) == perm("68574132")
    assert transform(perm("1234"), "inverse") == perm("1234")
    with pytest.raises(ValueError, match="Unknown transform"):
        transform(perm("1"), "complement")
    with pytest.raises(TypeError):
        permutations._TRANSFORMS["complement"] = reverse


@given(permutation_values)
def test_inverse_is_an_involution(values):
    pi = Permutation(tuple(values))
    assert inverse(inverse(pi)) == pi
    assert reverse(reverse(pi)) == pi


@pytest.mark.parametrize(
    "pi, expected",
    [
        ("23147586", True),
        ("321", False),
        ("", True),
    ],
)
def test_excedance_structure(pi, expected):
    assert excedance_structure_holds(perm(pi)) == expected


def test_excedance_structure_characterizes_321_avoiders():
    p321 = perm("321")
    for n in range(9):
        for values in itertools.permutations(range(1, n + 1)):
            pi = Permutation(values)
            assert excedance_structure_holds(pi) == (not contains(pi, p321)), pi

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
from types import MappingProxyType
from typing import Iterable, Optional, Tuple


# Formal variables, in the order used for exponent vectors
VARIABLES = ("x", "q", "t", "v", "y", "z", "p")

# Variables that may never carry a negative exponent
NONNEGATIVE_VARIABLES = frozenset({"x", "t", "z", "p"})

# Size-marking variables; every truncation is finite in these
GRADING_VARIABLES = ("t", "z")


PERM_STATISTICS = ("fp", "exc", "des", "wexc")
PATH_STATISTICS = ("h", "dr", "va", "p2", "ct", "lt", "uud")

PERM_CLASSES = ("avoid_321", "avoid_132", "all_perms")
CLASSES = PERM_CLASSES + ("dyck",)

# CLI spelling => class name
_CLASS_ALIASES = {
    "321": "avoid_321",
    "132": "avoid_132",
    "all": "all_perms",
    "dyck": "dyck",
}

# makes dict read-only
MARKING_VARIABLES = MappingProxyType(
    {
        "fp": "x",
        "h": "x",
        "ct": "x",
        "exc": "q",
        "dr": "q",
        "lt": "q",
        "va": "q",
        "p2": "q",
        "wexc": "q",
        "des": "p",
        "uud": "p",
    }
)


def class_name(spelling: str) -> str:
    if spelling in CLASSES:
        return spelling
    try:
        return _CLASS_ALIASES[spelling]
    except KeyError:
        raise ValueError(f"Unknown class {spelling!r}")


def statistics_for(cls: str) -> Tuple[str, ...]:
    if cls == "dyck":
        return PATH_STATISTICS
    if cls in PERM_CLASSES:
        return PERM_STATISTICS
    raise ValueError(f"Unknown class {cls!r}")


def check_statistics(cls: str, stats: Iterable[str]) -> Tuple[str, ...]:
    stats = tuple(stats)
    if not stats:
        raise ValueError("Need at least one statistic")
    allowed = statistics_for(cls)
    for stat in stats:
        if stat not in allowed:
            raise ValueError(f"Statistic {stat!r} is not defined on class {cls!r}")
    if len(set(stats)) != len(stats):
        raise ValueError(f"Repeated statistic in {stats}")
    return stats


def marking_variables(stats: Iterable[str]) -> Tuple[str, ...]:
    variables = []
    for stat in stats:
        if stat not in MARKING_VARIABLES:
            raise ValueError(f"No marking variable for statistic {stat!r}")
        variables.append(MARKING_VARIABLES[stat])
    if len(set(variables)) != len(variables):
        raise ValueError(f"Statistics {tuple(stats)} share a marking variable")
    return tuple(variables)


def ntos(c) -> str:
    # exact rationals print as a/b, integers without the /1
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def parse_bound(s: str) -> Tuple[Optional[int], Optional[int]]:
    """Parse "lo:hi", ":hi", "lo:" or "hi" into an inclusive exponent range."""
    if ":" not in s:
        return (None, int(s))
    lo, _, hi = s.partition(":")
    return (int(lo) if lo.strip() else None, int(hi) if hi.strip() else None)


def parse_window_spec(s: str) -> Tuple[str, Tuple[Optional[int], Optional[int]]]:
    """Parse "v=-8:14" into ("v", (-8, 14))."""
    var, sep, bound = s.partition("=")
    var = var.strip()
    if not sep or var not in VARIABLES:
        raise ValueError(f"Unable to parse window {s!r}")
    try:
        return var, parse_bound(bound)
    except ValueError:
        raise ValueError(f"Unable to parse window {s!r}")

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

"""Small lattice value types shared by Dyck paths and permutation arrays.

Conventions, fixed once for the whole package:

* A Dyck path starts at x=0; step k (1-based) occupies [k-1, k] on the x-axis.
* A permutation array has row i counted from the top and column pi_i counted
  from the left, so the cross of position i sits in Cell(i, pi_i). The main
  diagonal is {Cell(i, i)}.
"""
from typing import NamedTuple


class LatticePoint(NamedTuple):
    x: int = 0
    y: int = 0

    def step(self, up: bool) -> "LatticePoint":
        """Return the point reached by an up (1,1) or down (1,-1) step."""
        return self.__class__(self.x + 1, self.y + 1 if up else self.y - 1)


class Tunnel(NamedTuple):
    start_x: int
    end_x: int
    height: int

    def midpoint(self) -> int:
        # the enclosed word is balanced so the width is even
        return (self.start_x + self.end_x) // 2

    def is_centered(self, n: int, r: int = 0) -> bool:
        return self.midpoint() == n - r

    def is_left(self, n: int, r: int = 0) -> bool:
        return self.midpoint() < n - r


class Cell(NamedTuple):
    row: int
    col: int

    def right_of_diagonal(self) -> bool:
        """True for the cross of an excedance."""
        return self.col > self.row

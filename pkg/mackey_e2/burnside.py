"""
Burnside rings and tables of marks.

The Burnside ring of H has the H-sets [H/L] as a basis, one per
H-conjugacy class of subgroups L. Products can be computed in two
independent ways: pointwise on marks, or with the double-coset formula
H/K x H/L = sum over x in [K\\H/L] of H/(K n xLx^-1).
"""

from __future__ import annotations

import logging
from functools import cached_property
from typing import Sequence

from .groups import FiniteGroup, Subgroup, double_cosets
from .zlinalg import IntMatrix, solve_linear

logger = logging.getLogger(__name__)


class BurnsideRing:
    def __init__(self, ambient: Subgroup):
        self.ambient = ambient
        self.group = ambient.group
        self.local = self.group.lattice.local_classes(ambient)
        self.classes = self.local.representatives

    def __len__(self):
        return len(self.classes)

    @property
    def labels(self) -> list[str]:
        return [f"[H/{subgroup.label}]" for subgroup in self.classes]

    def locate(self, subgroup: Subgroup) -> int:
        return self.local.locate(subgroup)[0]

    @cached_property
    def marks(self) -> IntMatrix:
        """
        marks[K][L] = |(H/L)^K|, rows and columns over the classes.
        """
        group = self.group
        rows = []
        for K in self.classes:
            row = []
            for L in self.classes:
                count = sum(1 for h in self.ambient.elements if K.conjugate(group.inv(h)).is_subgroup_of(L))
                row.append(count // L.order)
            rows.append(row)
        return IntMatrix.from_rows(rows, len(self.classes))

    @property
    def unit(self) -> tuple[int, ...]:
        index = self.locate(self.ambient)
        return tuple(int(i == index) for i in range(len(self)))

    def basis_product(self, i: int, j: int) -> tuple[int, ...]:
        """
        [H/K_i] . [H/K_j] by the double-coset formula.
        """
        group = self.group
        K, L = self.classes[i], self.classes[j]
        result = [0] * len(self)
        for x in double_cosets(group, K, L, self.ambient):
            result[self.locate(K.intersection(L.conjugate(x)))] += 1
        return tuple(result)

    @cached_property
    def structure_constants(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        n = len(self)
        return tuple(tuple(self.basis_product(i, j) for j in range(n)) for i in range(n))

    def multiply(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        result = [0] * len(self)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    for k, c in enumerate(self.structure_constants[i][j]):
                        result[k] += x * y * c
        return tuple(result)

    def to_marks(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.marks.apply(a)

    def from_marks(self, marks: Sequence[int]) -> tuple[int, ...]:
        solution = solve_linear(self.marks, marks)
        if solution is None:
            raise ArithmeticError("Mark vector does not come from a virtual H-set.")
        return solution

    def multiply_by_marks(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return self.from_marks([x * y for x, y in zip(self.to_marks(a), self.to_marks(b))])

    def cross_check(self) -> list[str]:
        """
        Compare both product formulas on all basis pairs.
        """
        failures = []
        n = len(self)
        for i in range(n):
            for j in range(n):
                e_i = tuple(int(k == i) for k in range(n))
                e_j = tuple(int(k == j) for k in range(n))
                if self.multiply(e_i, e_j) != self.multiply_by_marks(e_i, e_j):
                    failures.append(f"[H/{self.classes[i].label}] * [H/{self.classes[j].label}]")
        return failures


def burnside_ring(target: "FiniteGroup | Subgroup") -> BurnsideRing:
    ambient = target.whole if isinstance(target, FiniteGroup) else target
    cache = ambient.group.cache("burnside_rings")
    if ambient.elements not in cache:
        cache[ambient.elements] = BurnsideRing(ambient)
    return cache[ambient.elements]


def table_of_marks(group: FiniteGroup) -> IntMatrix:
    return burnside_ring(group).marks

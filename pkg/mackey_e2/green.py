"""
Green functors in the G-set picture.

A Green functor R assigns to a G-set X the group R(X) = sum over the orbits
of X of R(C_i), where C_i is the stabilizer of the orbit's base point.
Maps of G-sets act contravariantly (restriction after conjugation) and
covariantly (conjugation after induction), orbit by orbit. Two functors are
provided: the representation functor R^G (H -> R(H)) and the Burnside
functor (H -> Burnside ring of H).
"""

from __future__ import annotations

import logging
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Sequence

from .burnside import burnside_ring
from .characters import character_table, induced_values
from .errors import InputError
from .groups import FiniteGroup, Subgroup, double_cosets
from .gsets import GMap, GSet, pullback
from .zlinalg import IntMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GreenValue:
    """
    An element of R(X): one coordinate block per orbit of X.
    """

    functor: "GreenFunctor"
    gset: GSet
    vector: tuple[int, ...]

    def components(self) -> list[tuple[int, ...]]:
        offsets = self.functor.offsets(self.gset)
        return [self.vector[offsets[i]:offsets[i + 1]] for i in range(len(self.gset.orbits))]

    def __add__(self, other: "GreenValue") -> "GreenValue":
        return GreenValue(self.functor, self.gset, tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __mul__(self, other: "GreenValue") -> "GreenValue":
        return self.functor.multiply(self.gset, self, other)

    def __eq__(self, other):
        if not isinstance(other, GreenValue):
            return NotImplemented
        return self.gset is other.gset and self.vector == other.vector

    def __hash__(self):
        return hash((id(self.gset), self.vector))


class GreenFunctor(ABC):
    """
    Common G-set machinery on top of the orbit-level structure maps.

    Subclasses describe R at a subgroup H (rank, unit, structure constants)
    and the two maps attached to an orbit map G/A -> G/B, eA -> gB, which
    requires A <= g B g^-1.
    """

    kind = "green"

    def __init__(self, group: FiniteGroup):
        self.group = group
        self._orbit_cache: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"{type(self).__name__}({self.group.name})"

    @abstractmethod
    def rank(self, subgroup: Subgroup) -> int: ...

    @abstractmethod
    def labels(self, subgroup: Subgroup) -> list[str]: ...

    @abstractmethod
    def unit(self, subgroup: Subgroup) -> tuple[int, ...]: ...

    @abstractmethod
    def structure_constants(self, subgroup: Subgroup) -> Sequence[Sequence[Sequence[int]]]: ...

    @abstractmethod
    def _contravariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix: ...

    @abstractmethod
    def _covariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix: ...

    def _cached(self, key, build):
        with self._lock:
            if key in self._orbit_cache:
                return self._orbit_cache[key]
        value = build()
        with self._lock:
            return self._orbit_cache.setdefault(key, value)

    def contravariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix:
        """
        R(G/target) -> R(G/source) for eA -> gB: res to ``source`` after conj by g.
        """
        if not source.is_subgroup_of(target.conjugate(g)):
            raise InputError(f"{source.label} is not contained in {target.label} conjugated by {g}.")
        key = ("contra", source.elements, target.elements, g)
        return self._cached(key, lambda: self._contravariant_orbit(source, target, g))

    def covariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix:
        """
        R(G/source) -> R(G/target) for eA -> gB: conj by g^-1 after ind.
        """
        if not source.is_subgroup_of(target.conjugate(g)):
            raise InputError(f"{source.label} is not contained in {target.label} conjugated by {g}.")
        key = ("co", source.elements, target.elements, g)
        return self._cached(key, lambda: self._covariant_orbit(source, target, g))

    def product(self, subgroup: Subgroup, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        constants = self.structure_constants(subgroup)
        result = [0] * self.rank(subgroup)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    for k, c in enumerate(constants[i][j]):
                        if c:
                            result[k] += x * y * c
        return tuple(result)

    def multiplication_matrix(self, subgroup: Subgroup, a: Sequence[int]) -> IntMatrix:
        """
        Matrix of b -> a * b on R(H).
        """
        n = self.rank(subgroup)
        columns = [self.product(subgroup, a, tuple(int(i == j) for i in range(n))) for j in range(n)]
        return IntMatrix.from_columns(columns, n)

    # -- G-set picture -----------------------------------------------------

    def offsets(self, gset: GSet) -> list[int]:
        offsets = [0]
        for orbit in gset.orbits:
            offsets.append(offsets[-1] + self.rank(orbit.stabilizer))
        return offsets

    def dimension(self, gset: GSet) -> int:
        return self.offsets(gset)[-1]

    def evaluate(self, gset: GSet) -> list[tuple[int, str]]:
        """
        Basis of R(X) as (orbit index, label) pairs.
        """
        return [(orbit.index, label) for orbit in gset.orbits for label in self.labels(orbit.stabilizer)]

    def value(self, gset: GSet, vector: Sequence[int]) -> GreenValue:
        if len(vector) != self.dimension(gset):
            raise InputError(f"Value of length {len(vector)} for R({gset.label}) of rank {self.dimension(gset)}.")
        return GreenValue(self, gset, tuple(vector))

    def unit_value(self, gset: GSet) -> GreenValue:
        vector: list[int] = []
        for orbit in gset.orbits:
            vector.extend(self.unit(orbit.stabilizer))
        return GreenValue(self, gset, tuple(vector))

    def basis_value(self, gset: GSet, index: int) -> GreenValue:
        n = self.dimension(gset)
        return GreenValue(self, gset, tuple(int(i == index) for i in range(n)))

    def contravariant(self, f: GMap) -> IntMatrix:
        source, target = f.source, f.target
        src_offsets, tgt_offsets = self.offsets(source), self.offsets(target)
        rows = [[0] * tgt_offsets[-1] for _ in range(src_offsets[-1])]
        for i, orbit in enumerate(source.orbits):
            j, g = f.orbit_data(i)
            block = self.contravariant_orbit(orbit.stabilizer, target.orbits[j].stabilizer, g)
            for r in range(block.rows):
                for c in range(block.cols):
                    rows[src_offsets[i] + r][tgt_offsets[j] + c] += block[r, c]
        return IntMatrix.from_rows(rows, tgt_offsets[-1])

    def covariant(self, f: GMap) -> IntMatrix:
        source, target = f.source, f.target
        src_offsets, tgt_offsets = self.offsets(source), self.offsets(target)
        rows = [[0] * src_offsets[-1] for _ in range(tgt_offsets[-1])]
        for i, orbit in enumerate(source.orbits):
            j, g = f.orbit_data(i)
            block = self.covariant_orbit(orbit.stabilizer, target.orbits[j].stabilizer, g)
            for r in range(block.rows):
                for c in range(block.cols):
                    rows[tgt_offsets[j] + r][src_offsets[i] + c] += block[r, c]
        return IntMatrix.from_rows(rows, src_offsets[-1])

    def multiply(self, gset: GSet, a: GreenValue, b: GreenValue) -> GreenValue:
        if a.gset is not gset or b.gset is not gset:
            raise InputError("Green values live over different G-sets.")
        return GreenValue(self, gset, self.multiply_vectors(gset, a.vector, b.vector))

    def multiply_vectors(self, gset: GSet, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        offsets = self.offsets(gset)
        result: list[int] = []
        for i, orbit in enumerate(gset.orbits):
            lo, hi = offsets[i], offsets[i + 1]
            result.extend(self.product(orbit.stabilizer, a[lo:hi], b[lo:hi]))
        return tuple(result)

    def value_multiplication(self, gset: GSet, a: Sequence[int]) -> IntMatrix:
        """
        Matrix of b -> a * b on R(X).
        """
        offsets = self.offsets(gset)
        blocks = [
            self.multiplication_matrix(orbit.stabilizer, a[offsets[i]:offsets[i + 1]])
            for i, orbit in enumerate(gset.orbits)
        ]
        return IntMatrix.block_diagonal(blocks)

    def check_pullback_axiom(self, f: GMap, g: GMap) -> bool:
        """
        R^*(g) R_*(f) = R_*(g') R^*(f') for the pullback of f and g.
        """
        _, to_left, to_right = pullback(f, g)
        lhs = self.contravariant(g) @ self.covariant(f)
        rhs = self.covariant(to_right) @ self.contravariant(to_left)
        return lhs == rhs

    def check_projection_formula(self, f: GMap) -> bool:
        """
        R_*(f)(R^*(f)(y) x) = y R_*(f)(x) on all basis pairs.
        """
        pull, push = self.contravariant(f), self.covariant(f)
        for j in range(self.dimension(f.target)):
            y = tuple(int(k == j) for k in range(self.dimension(f.target)))
            pulled = pull.apply(y)
            for i in range(self.dimension(f.source)):
                x = tuple(int(k == i) for k in range(self.dimension(f.source)))
                lhs = push.apply(self.multiply_vectors(f.source, pulled, x))
                rhs = self.multiply_vectors(f.target, y, push.apply(x))
                if lhs != rhs:
                    return False
        return True

    def check_ring_homomorphism(self, f: GMap) -> bool:
        pull = self.contravariant(f)
        n = self.dimension(f.target)
        basis = [tuple(int(k == j) for k in range(n)) for j in range(n)]
        if pull.apply(self.unit_value(f.target).vector) != self.unit_value(f.source).vector:
            return False
        for a in basis:
            for b in basis:
                lhs = pull.apply(self.multiply_vectors(f.target, a, b))
                rhs = self.multiply_vectors(f.source, pull.apply(a), pull.apply(b))
                if lhs != rhs:
                    return False
        return True


class RepresentationFunctor(GreenFunctor):
    """
    H -> R(H), the complex representation rings with character-theoretic maps.
    """

    kind = "representation"

    def rank(self, subgroup: Subgroup) -> int:
        return len(character_table(subgroup))

    def labels(self, subgroup: Subgroup) -> list[str]:
        return [f"chi{k}" for k in range(self.rank(subgroup))]

    def unit(self, subgroup: Subgroup) -> tuple[int, ...]:
        n = self.rank(subgroup)
        return (1,) + (0,) * (n - 1)

    def structure_constants(self, subgroup: Subgroup):
        return character_table(subgroup).product_table

    def _contravariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix:
        group = self.group
        source_table = character_table(source)
        target_table = character_table(target)
        g_inv = group.inv(g)
        columns = []
        for k in range(len(target_table)):
            values = source_table.class_function(lambda z: target_table.value(k, group.conj(g_inv, z)))
            columns.append(source_table.decompose(values))
        return IntMatrix.from_columns(columns, len(source_table))

    def _covariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix:
        group = self.group
        source_table = character_table(source)
        target_table = character_table(target)
        middle = target.conjugate(g)
        middle_table = character_table(middle)
        columns = []
        for chi in source_table.characters:
            induced = induced_values(source_table, chi, middle)
            values = target_table.class_function(lambda z: induced[middle_table.class_of[group.conj(g, z)]])
            columns.append(target_table.decompose(values))
        return IntMatrix.from_columns(columns, len(target_table))

    def permutation_character_map(self, gset: GSet) -> IntMatrix:
        """
        Bur(X) -> R(X), [H/L] -> ind_L^H(1) on every orbit.
        """
        blocks = []
        for orbit in gset.orbits:
            ring = burnside_ring(orbit.stabilizer)
            table = character_table(orbit.stabilizer)
            columns = []
            for L in ring.classes:
                trivial = character_table(L).characters[0]
                columns.append(table.decompose(induced_values(character_table(L), trivial, orbit.stabilizer)))
            blocks.append(IntMatrix.from_columns(columns, len(table)))
        return IntMatrix.block_diagonal(blocks)


class BurnsideFunctor(GreenFunctor):
    """
    H -> Burnside ring of H, with the classical double-coset restriction.
    """

    kind = "burnside"

    def rank(self, subgroup: Subgroup) -> int:
        return len(burnside_ring(subgroup))

    def labels(self, subgroup: Subgroup) -> list[str]:
        return burnside_ring(subgroup).labels

    def unit(self, subgroup: Subgroup) -> tuple[int, ...]:
        return burnside_ring(subgroup).unit

    def structure_constants(self, subgroup: Subgroup):
        return burnside_ring(subgroup).structure_constants

    def _contravariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix:
        group = self.group
        middle = target.conjugate(g)
        source_ring = burnside_ring(source)
        columns = []
        for L in burnside_ring(target).classes:
            moved = L.conjugate(g)
            column = [0] * len(source_ring)
            for x in double_cosets(group, source, moved, middle):
                column[source_ring.locate(source.intersection(moved.conjugate(x)))] += 1
            columns.append(column)
        return IntMatrix.from_columns(columns, len(source_ring))

    def _covariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix:
        target_ring = burnside_ring(target)
        g_inv = self.group.inv(g)
        columns = []
        for L in burnside_ring(source).classes:
            column = [0] * len(target_ring)
            column[target_ring.locate(L.conjugate(g_inv))] += 1
            columns.append(column)
        return IntMatrix.from_columns(columns, len(target_ring))


def representation_functor(group: FiniteGroup) -> RepresentationFunctor:
    cache = group.cache("green")
    if "representation" not in cache:
        cache["representation"] = RepresentationFunctor(group)
    return cache["representation"]


def burnside_functor(group: FiniteGroup) -> BurnsideFunctor:
    cache = group.cache("green")
    if "burnside" not in cache:
        cache["burnside"] = BurnsideFunctor(group)
    return cache["burnside"]


def green_functor(group: FiniteGroup, kind: str) -> GreenFunctor:
    if kind == "representation":
        return representation_functor(group)
    if kind == "burnside":
        return burnside_functor(group)
    raise InputError(f"Unknown Green functor {kind!r}; expected 'representation' or 'burnside'.")

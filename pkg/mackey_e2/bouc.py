"""
The Burnside-Bouc category of the representation Green functor.

Objects are finite G-sets; morphisms X -> Y are elements of R(X x Y).
Composition is project-multiply-transfer over X x Y x Z and the identity
of X is the pushforward of 1 along the diagonal.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError
from .green import GreenFunctor, representation_functor
from .groups import double_coset_partition
from .gsets import GMap, GSet, diagonal, product
from .zlinalg import IntMatrix

logger = logging.getLogger(__name__)

_lock = threading.Lock()


@dataclass(frozen=True)
class HomBasisElement:
    """
    One basis element of R(X x Y): an orbit pair, the least element of the
    double coset H_i x L_j joining them, and an irreducible of the stabilizer.
    """

    index: int
    source_orbit: int
    target_orbit: int
    double_coset: int
    stabilizer: str
    character: int

    def describe(self) -> str:
        return (
            f"[{self.index}] X-orbit {self.source_orbit}, Y-orbit {self.target_orbit}, "
            f"x={self.double_coset}, chi{self.character} of {self.stabilizer}"
        )


@dataclass(frozen=True, eq=False)
class BoucMorphism:
    source: GSet
    target: GSet
    vector: tuple[int, ...]

    @property
    def functor(self) -> GreenFunctor:
        return representation_functor(self.source.group)

    @property
    def gset(self) -> GSet:
        return product(self.source, self.target)

    def __add__(self, other: "BoucMorphism") -> "BoucMorphism":
        _check_parallel(self, other)
        return BoucMorphism(self.source, self.target, tuple(a + b for a, b in zip(self.vector, other.vector)))

    def scale(self, factor: int) -> "BoucMorphism":
        return BoucMorphism(self.source, self.target, tuple(factor * a for a in self.vector))

    def __eq__(self, other):
        if not isinstance(other, BoucMorphism):
            return NotImplemented
        return self.source is other.source and self.target is other.target and self.vector == other.vector

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.vector))

    def is_zero(self) -> bool:
        return not any(self.vector)

    def __matmul__(self, other: "BoucMorphism") -> "BoucMorphism":
        return compose(self, other)


def _check_parallel(a: BoucMorphism, b: BoucMorphism):
    if a.source is not b.source or a.target is not b.target:
        raise InputError("Morphisms have different source or target.")


def _check_group(first: GSet, second: GSet):
    if first.group.table != second.group.table:
        raise InputError(f"{first.label} and {second.label} are G-sets over different groups.")


def morphism(source: GSet, target: GSet, vector: Sequence[int]) -> BoucMorphism:
    _check_group(source, target)
    dimension = representation_functor(source.group).dimension(product(source, target))
    if len(vector) != dimension:
        raise InputError(f"Morphism vector of length {len(vector)}; R({source.label} x {target.label}) has rank {dimension}.")
    return BoucMorphism(source, target, tuple(vector))


def zero(source: GSet, target: GSet) -> BoucMorphism:
    dimension = representation_functor(source.group).dimension(product(source, target))
    return BoucMorphism(source, target, (0,) * dimension)


def basis_morphism(source: GSet, target: GSet, index: int) -> BoucMorphism:
    dimension = representation_functor(source.group).dimension(product(source, target))
    return BoucMorphism(source, target, tuple(int(i == index) for i in range(dimension)))


def hom_basis(source: GSet, target: GSet) -> list[HomBasisElement]:
    """
    Labelled basis of R(X x Y), in the coordinate order of R(X x Y).
    """
    _check_group(source, target)
    group = source.group
    cache = group.cache("bouc_bases")
    key = (id(source), id(target))
    with _lock:
        if key in cache:
            return cache[key][2]
    functor = representation_functor(group)
    both = product(source, target)
    n = target.size
    labels = []
    for orbit in both.orbits:
        u, v = divmod(orbit.base, n)
        i = source.orbit_of(u)
        j = target.orbit_of(v)
        g = source.orbits[i].transversal[u]
        w = target.act(group.inv(g), v)
        y = target.orbits[j].transversal[w]
        coset = next(
            c
            for c in double_coset_partition(group, source.orbits[i].stabilizer, target.orbits[j].stabilizer)
            if y in c
        )
        for k in range(functor.rank(orbit.stabilizer)):
            labels.append(
                HomBasisElement(len(labels), i, j, coset[0], orbit.stabilizer.label, k)
            )
    with _lock:
        cache.setdefault(key, (source, target, labels))
        return cache[key][2]


def rank_formula(source: GSet, target: GSet) -> int:
    """
    Sum over orbit pairs (H, L) and x in [H\\G/L] of rank R(H n xLx^-1).
    """
    group = source.group
    functor = representation_functor(group)
    total = 0
    for left in source.orbits:
        for right in target.orbits:
            H, L = left.stabilizer, right.stabilizer
            for coset in double_coset_partition(group, H, L):
                x = coset[0]
                total += functor.rank(H.intersection(L.conjugate(x)))
    return total


def identity(gset: GSet) -> BoucMorphism:
    functor = representation_functor(gset.group)
    vector = functor.covariant(diagonal(gset)).apply(functor.unit_value(gset).vector)
    return BoucMorphism(gset, gset, tuple(vector))


@dataclass(frozen=True, eq=False)
class _Triple:
    gset: GSet
    pull_first: IntMatrix
    pull_second: IntMatrix
    push: IntMatrix


def _triple(X: GSet, Y: GSet, Z: GSet) -> _Triple:
    group = X.group
    cache = group.cache("bouc_triples")
    key = (id(X), id(Y), id(Z))
    with _lock:
        if key in cache:
            return cache[key][3]
    functor = representation_functor(group)
    XY = product(X, Y)
    T = product(XY, Z)
    ny, nz = Y.size, Z.size
    first = GMap(T, XY, tuple(t // nz for t in range(T.size)))
    second = GMap(T, product(Y, Z), tuple(((t // nz) % ny) * nz + t % nz for t in range(T.size)))
    outer = GMap(T, product(X, Z), tuple((t // nz // ny) * nz + t % nz for t in range(T.size)))
    triple = _Triple(T, functor.contravariant(first), functor.contravariant(second), functor.covariant(outer))
    logger.debug("composition data for %s, %s, %s: %d orbits", X.label, Y.label, Z.label, len(T.orbits))
    with _lock:
        cache.setdefault(key, (X, Y, Z, triple))
        return cache[key][3]


def compose(second: BoucMorphism, first: BoucMorphism) -> BoucMorphism:
    """
    second after first, for first: X -> Y and second: Y -> Z.
    """
    if first.target is not second.source:
        raise InputError(
            f"Cannot compose {first.source.label} -> {first.target.label} with "
            f"{second.source.label} -> {second.target.label}."
        )
    X, Y, Z = first.source, first.target, second.target
    functor = representation_functor(X.group)
    data = _triple(X, Y, Z)
    product_vector = functor.multiply_vectors(
        data.gset, data.pull_first.apply(first.vector), data.pull_second.apply(second.vector)
    )
    return BoucMorphism(X, Z, data.push.apply(product_vector))


def tensor(first: BoucMorphism, second: BoucMorphism) -> BoucMorphism:
    """
    first x second: X x X' -> Y x Y'.
    """
    X, Y, X2, Y2 = first.source, first.target, second.source, second.target
    functor = representation_functor(X.group)
    source = product(X, X2)
    target = product(Y, Y2)
    both = product(source, target)
    n_y, n_x2, n_y2 = Y.size, X2.size, Y2.size
    width = target.size
    to_first, to_second = [], []
    for t in range(both.size):
        s, u = divmod(t, width)
        x, x2 = divmod(s, n_x2)
        y, y2 = divmod(u, n_y2)
        to_first.append(x * n_y + y)
        to_second.append(x2 * n_y2 + y2)
    pull_first = functor.contravariant(GMap(both, product(X, Y), tuple(to_first)))
    pull_second = functor.contravariant(GMap(both, product(X2, Y2), tuple(to_second)))
    vector = functor.multiply_vectors(both, pull_first.apply(first.vector), pull_second.apply(second.vector))
    return BoucMorphism(source, target, vector)


def check_category_axioms(objects: Sequence[GSet]) -> list[str]:
    """
    Unit laws and associativity on all basis triples of the given objects.
    """
    failures = []
    for X in objects:
        for Y in objects:
            for k in range(len(hom_basis(X, Y))):
                f = basis_morphism(X, Y, k)
                if compose(identity(Y), f) != f:
                    failures.append(f"id o f != f for basis element {k} of B({X.label}, {Y.label})")
                if compose(f, identity(X)) != f:
                    failures.append(f"f o id != f for basis element {k} of B({X.label}, {Y.label})")
    for X in objects:
        for Y in objects:
            for Z in objects:
                for W in objects:
                    for a in range(len(hom_basis(X, Y))):
                        f = basis_morphism(X, Y, a)
                        for b in range(len(hom_basis(Y, Z))):
                            g = basis_morphism(Y, Z, b)
                            gf = compose(g, f)
                            for c in range(len(hom_basis(Z, W))):
                                h = basis_morphism(Z, W, c)
                                if compose(h, gf) != compose(compose(h, g), f):
                                    failures.append(
                                        f"associativity fails on {X.label}->{Y.label}->{Z.label}->{W.label} ({a},{b},{c})"
                                    )
    return failures

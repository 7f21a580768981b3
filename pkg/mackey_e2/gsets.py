"""
Finite G-sets, equivariant maps, and their orbit decompositions.

Every orbit carries a base point whose stabilizer is the representative of
its subgroup class, plus a transversal t with t . base = point. A G-map
restricted to an orbit is then described by (target orbit j, element g)
with f(base_i) = g . base_j.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError, VerificationError
from .groups import FiniteGroup, Subgroup

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Orbit:
    index: int
    class_index: int
    stabilizer: Subgroup
    base: int
    points: tuple[int, ...]
    transversal: dict = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.points)


class GSet:
    """
    A finite G-set given by its action table ``action[g][x]``.
    """

    def __init__(
        self,
        group: FiniteGroup,
        action: Sequence[Sequence[int]],
        label: str = "X",
        preferred_bases: Iterable[int] = (),
    ):
        if len(action) != group.order:
            raise InputError(f"Action table has {len(action)} rows for a group of order {group.order}.")
        self.group = group
        self.action = tuple(tuple(row) for row in action)
        self.size = len(self.action[0]) if self.action else 0
        if any(len(row) != self.size for row in self.action):
            raise InputError("Action table rows have different lengths.")
        self.label = label
        self.orbits, self._orbit_of = self._decompose(set(preferred_bases))

    def __repr__(self):
        return f"GSet({self.label}, {self.size} points, {len(self.orbits)} orbits)"

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(tuple(g for g in range(self.group.order) if self.action[g][x] == x), self.group)

    def orbit_of(self, x: int) -> int:
        return self._orbit_of[x]

    def fixed_points(self, subgroup: Subgroup) -> list[int]:
        return [x for x in range(self.size) if all(self.action[h][x] == x for h in subgroup.elements)]

    def _decompose(self, preferred: set[int]):
        group = self.group
        lattice = group.lattice
        policy = group.policy
        orbit_of = [-1] * self.size
        orbits = []
        for start in range(self.size):
            if orbit_of[start] >= 0:
                continue
            points = sorted({self.action[g][start] for g in range(group.order)})
            index = len(orbits)
            for p in points:
                orbit_of[p] = index
            stab = self.stabilizer(start)
            cls = lattice.class_index(stab)
            rep = lattice.classes[cls].representative
            candidates = [p for p in points if self.stabilizer(p) == rep]
            chosen = [p for p in candidates if p in preferred]
            if chosen:
                base = chosen[0]
            else:
                base = policy.pick(candidates, f"base:{self.label}:{points[0]}")
            transversal: dict[int, int] = {}
            if policy.randomized:
                options: dict[int, list[int]] = {}
                for g in range(group.order):
                    options.setdefault(self.action[g][base], []).append(g)
                for p, elements in options.items():
                    transversal[p] = 0 if p == base else policy.pick(elements, f"tv:{self.label}:{base}:{p}")
            else:
                for g in range(group.order):
                    transversal.setdefault(self.action[g][base], g)
            orbits.append(Orbit(index, cls, rep, base, tuple(points), transversal))
        return tuple(orbits), tuple(orbit_of)

    def verify(self):
        """
        Check that the table is a group action.
        """
        group = self.group
        failures = []
        if any(self.action[0][x] != x for x in range(self.size)):
            failures.append("identity does not fix every point")
        for a in group.generators:
            for b in range(group.order):
                ab = group.mul(a, b)
                for x in range(self.size):
                    if self.action[ab][x] != self.action[a][self.action[b][x]]:
                        failures.append(f"(g h) . x != g . (h . x) for g={a}, h={b}, x={x}")
                        break
        if failures:
            raise VerificationError(f"{self.label} is not a G-set.", failures)


@dataclass(frozen=True, eq=False)
class GMap:
    """
    An equivariant map given pointwise.
    """

    source: GSet
    target: GSet
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_equivariant(self) -> bool:
        group = self.source.group
        return all(
            self.images[self.source.action[g][x]] == self.target.action[g][self.images[x]]
            for g in group.generators
            for x in range(self.source.size)
        )

    def orbit_data(self, i: int) -> tuple[int, int]:
        """
        (j, g) with f(base_i) = g . base_j.
        """
        image = self.images[self.source.orbits[i].base]
        j = self.target.orbit_of(image)
        return j, self.target.orbits[j].transversal[image]

    def compose(self, first: "GMap") -> "GMap":
        """
        self after first.
        """
        if first.target is not self.source:
            raise InputError("Maps are not composable.")
        return GMap(first.source, self.target, tuple(self.images[y] for y in first.images))

    @classmethod
    def identity(cls, gset: GSet) -> "GMap":
        return cls(gset, gset, tuple(range(gset.size)))


def orbit_decompose(gset: GSet) -> list[tuple[Subgroup, dict]]:
    return [(orbit.stabilizer, orbit.transversal) for orbit in gset.orbits]


def coset_space(group: FiniteGroup, subgroup: Subgroup) -> GSet:
    """
    G/H with points the left cosets ordered by least element; point 0 is H.
    """
    cache = group.cache("coset_spaces")
    if subgroup.elements not in cache:
        index: dict[int, int] = {}
        representatives = []
        for g in range(group.order):
            if g in index:
                continue
            for h in subgroup.elements:
                index[group.mul(g, h)] = len(representatives)
            representatives.append(g)
        action = [[index[group.mul(g, r)] for r in representatives] for g in range(group.order)]
        space = GSet(group, action, label=f"G/{subgroup.label}", preferred_bases=[0])
        space.coset_representatives = tuple(representatives)
        cache[subgroup.elements] = space
    return cache[subgroup.elements]


def point(group: FiniteGroup) -> GSet:
    return coset_space(group, group.whole)


def empty(group: FiniteGroup) -> GSet:
    return GSet(group, [[] for _ in range(group.order)], label="0")


def product(left: GSet, right: GSet) -> GSet:
    """
    left x right with diagonal action; point (x, y) has index x * |right| + y.
    """
    group = left.group
    if right.group.table != group.table:
        raise InputError("G-sets over different groups.")
    cache = group.cache("products")
    key = (id(left), id(right))
    if key not in cache:
        n = right.size
        action = [
            [left.action[g][x] * n + right.action[g][y] for x in range(left.size) for y in range(n)]
            for g in range(group.order)
        ]
        cache[key] = (left, right, GSet(group, action, label=f"{left.label}*{right.label}"))
    return cache[key][2]


def product_projections(left: GSet, right: GSet) -> tuple[GMap, GMap]:
    both = product(left, right)
    n = right.size
    return (
        GMap(both, left, tuple(p // n for p in range(both.size))),
        GMap(both, right, tuple(p % n for p in range(both.size))),
    )


def product_map(first: GMap, second: GMap) -> GMap:
    """
    first x second between the product G-sets.
    """
    source = product(first.source, second.source)
    target = product(first.target, second.target)
    n, m = second.source.size, second.target.size
    return GMap(
        source,
        target,
        tuple(first.images[p // n] * m + second.images[p % n] for p in range(source.size)),
    )


def disjoint_union(left: GSet, right: GSet) -> GSet:
    group = left.group
    offset = left.size
    action = [list(left.action[g]) + [offset + y for y in right.action[g]] for g in range(group.order)]
    return GSet(group, action, label=f"{left.label}+{right.label}")


def diagonal(gset: GSet) -> GMap:
    square = product(gset, gset)
    return GMap(gset, square, tuple(x * gset.size + x for x in range(gset.size)))


def pullback(f: GMap, g: GMap) -> tuple[GSet, GMap, GMap]:
    """
    X x_Z Y for f: X -> Z and g: Y -> Z, with projections to X and Y.
    """
    if f.target is not g.target and f.target.action != g.target.action:
        raise InputError("Pullback needs maps into the same G-set.")
    left, right = f.source, g.source
    group = left.group
    pairs = [(x, y) for x in range(left.size) for y in range(right.size) if f.images[x] == g.images[y]]
    position = {pair: i for i, pair in enumerate(pairs)}
    action = [
        [position[(left.action[h][x], right.action[h][y])] for x, y in pairs]
        for h in range(group.order)
    ]
    square = GSet(group, action, label=f"{left.label}x_{f.target.label}{right.label}")
    return (
        square,
        GMap(square, left, tuple(x for x, _ in pairs)),
        GMap(square, right, tuple(y for _, y in pairs)),
    )


def maps_between(source: GSet, target: GSet) -> list[GMap]:
    """
    All equivariant maps; the image of each base point ranges over the
    points of the target fixed by that orbit's stabilizer.
    """
    group = source.group
    choices = [target.fixed_points(orbit.stabilizer) for orbit in source.orbits]
    maps = []
    for selection in itertools.product(*choices):
        images = [0] * source.size
        for orbit, y in zip(source.orbits, selection):
            for p, t in orbit.transversal.items():
                images[p] = target.action[t][y]
        maps.append(GMap(source, target, tuple(images)))
    logger.debug("maps_between %s -> %s: %d maps", source.label, target.label, len(maps))
    return maps


def orbit_map(group: FiniteGroup, source: Subgroup, target: Subgroup, g: int) -> GMap:
    """
    G/source -> G/target, eS -> g T; requires S <= g T g^-1.
    """
    if not source.is_subgroup_of(target.conjugate(g)):
        raise InputError(f"{source.label} is not contained in the conjugate of {target.label} by {g}.")
    X = coset_space(group, source)
    Y = coset_space(group, target)
    images = tuple(Y.action[group.mul(r, g)][0] for r in X.coset_representatives)
    return GMap(X, Y, images)


def restrict(gset: GSet, subgroup_group: FiniteGroup, embedding: Sequence[int]) -> GSet:
    """
    The same points viewed as a set with an action of a subgroup.
    """
    action = [gset.action[g] for g in embedding]
    return GSet(subgroup_group, action, label=f"Res({gset.label})")

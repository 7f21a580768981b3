"""
Finite groups as multiplication tables, with subgroup classes and double cosets.

Elements are indexed 0..order-1 with 0 the identity. Groups built from
permutations order their elements by array form, so construction from the
same spec string always yields the same indexing.
"""

from __future__ import annotations

import hashlib
import logging
import math
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from sympy import factorint
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import (
    AbelianGroup,
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from .errors import InputError, OrderCapExceededError, VerificationError

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 64


class ChoicePolicy:
    """
    Chooses among equally valid candidates (representatives, base points).

    Without a seed the least candidate is taken. With a seed the choice is
    pseudo-random but reproducible, keyed on a context string.
    """

    def __init__(self, seed: int | None = None):
        self.seed = seed

    @property
    def randomized(self) -> bool:
        return self.seed is not None

    def pick(self, candidates: Iterable, context: str):
        ordered = sorted(candidates)
        if not ordered:
            raise ValueError(f"No candidates to choose from ({context}).")
        if self.seed is None:
            return ordered[0]
        rng = random.Random(f"{self.seed}|{context}")
        return ordered[rng.randrange(len(ordered))]


class FiniteGroup:
    """
    A finite group given by its full multiplication table.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        name: str = "G",
        spec: str | None = None,
        permutations: Sequence[Sequence[int]] | None = None,
        conductor: int | None = None,
        policy: ChoicePolicy | None = None,
        max_order: int = DEFAULT_MAX_ORDER,
    ):
        order = len(table)
        if order > max_order:
            raise OrderCapExceededError(order, max_order)
        self.order = order
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.name = name
        self.spec = spec or name
        self.permutations = tuple(tuple(p) for p in permutations) if permutations else None
        self.policy = policy or ChoicePolicy()
        self.max_order = max_order
        inverses = [0] * order
        for a in range(order):
            for b in range(order):
                if self.table[a][b] == 0:
                    inverses[a] = b
                    break
        self.inverses = tuple(inverses)
        self.exponent = math.lcm(*(self.element_order(a) for a in range(order))) if order else 1
        if conductor is not None and conductor % self.exponent:
            raise ValueError(f"Conductor {conductor} is not a multiple of the exponent {self.exponent}.")
        self.conductor = conductor or self.exponent
        self._caches: dict[str, dict] = {}
        self.table_cache_dir: str | None = None

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    def cache(self, name: str) -> dict:
        """
        Per-group memo dictionary for derived data.
        """
        return self._caches.setdefault(name, {})

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, h: int) -> int:
        """
        g h g^-1.
        """
        return self.table[self.table[g][h]][self.inverses[g]]

    def product(self, *elements: int) -> int:
        result = 0
        for element in elements:
            result = self.table[result][element]
        return result

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        result = 0
        for _ in range(k):
            result = self.table[result][a]
        return result

    def element_order(self, a: int) -> int:
        k, current = 1, a
        while current != 0:
            current = self.table[current][a]
            k += 1
        return k

    @cached_property
    def fingerprint(self) -> str:
        digest = hashlib.sha256(repr(self.table).encode("utf-8")).hexdigest()
        return digest[:16]

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """
        A small generating set, chosen greedily by element index.
        """
        gens: list[int] = []
        span = {0}
        for a in range(self.order):
            if a not in span:
                gens.append(a)
                span = set(self.closure(gens))
        return tuple(gens)

    def closure(self, generators: Iterable[int]) -> tuple[int, ...]:
        gens = [g for g in set(generators) if g != 0]
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[s][x]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def verify(self):
        """
        Check the group axioms on the full table.
        """
        n = self.order
        failures = []
        if any(self.table[0][a] != a or self.table[a][0] != a for a in range(n)):
            failures.append("element 0 is not a two-sided identity")
        for a in range(n):
            if sorted(self.table[a]) != list(range(n)):
                failures.append(f"row {a} is not a permutation")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        failures.append(f"associativity fails at ({a}, {b}, {c})")
                        break
        if failures:
            raise VerificationError("Group table violates the group axioms.", failures)

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        members = tuple(sorted(set(elements)))
        if any(not 0 <= x < self.order for x in members):
            raise InputError(f"Subgroup elements out of range for a group of order {self.order}.")
        member_set = set(members)
        if 0 not in member_set or any(self.table[a][b] not in member_set for a in members for b in members):
            raise InputError(f"Elements {list(members)} do not form a subgroup.")
        return Subgroup(members, self)

    def generated_subgroup(self, generators: Iterable[int]) -> "Subgroup":
        generators = list(generators)
        if any(not 0 <= g < self.order for g in generators):
            raise InputError(f"Generator out of range for a group of order {self.order}.")
        return Subgroup(self.closure(generators), self)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(tuple(range(self.order)), self)

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup((0,), self)

    @cached_property
    def lattice(self) -> "SubgroupLattice":
        return SubgroupLattice(self)

    def with_choices(self, seed: int | None) -> "FiniteGroup":
        """
        The same group with pseudo-random (seeded) convention choices.
        """
        other = FiniteGroup(
            self.table,
            name=self.name,
            spec=self.spec,
            permutations=self.permutations,
            conductor=self.conductor,
            policy=ChoicePolicy(seed),
            max_order=self.max_order,
        )
        other.table_cache_dir = self.table_cache_dir
        return other

    def subgroup_as_group(self, subgroup: "Subgroup") -> tuple["FiniteGroup", tuple[int, ...]]:
        """
        The subgroup as a group in its own right, with its embedding.

        The new group keeps this group's character conductor so that
        character values of both live in the same ring.
        """
        cache = self.cache("subgroup_groups")
        if subgroup.elements not in cache:
            embedding = subgroup.elements
            position = {g: i for i, g in enumerate(embedding)}
            table = [[position[self.table[a][b]] for b in embedding] for a in embedding]
            label = ",".join(str(x) for x in embedding)
            sub = FiniteGroup(
                table,
                name=f"{self.name}@[{label}]",
                spec=f"{self.spec}@{label}",
                conductor=self.conductor,
                policy=ChoicePolicy(self.policy.seed),
                max_order=self.max_order,
            )
            sub.table_cache_dir = self.table_cache_dir
            cache[subgroup.elements] = (sub, embedding)
        return cache[subgroup.elements]


@dataclass(frozen=True)
class Subgroup:
    """
    A subgroup, stored as its sorted element indices.
    """

    elements: tuple[int, ...]
    group: FiniteGroup = field(compare=False, repr=False, hash=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.element_set

    def __len__(self):
        return len(self.elements)

    def __lt__(self, other: "Subgroup") -> bool:
        return (len(self.elements), self.elements) < (len(other.elements), other.elements)

    @property
    def label(self) -> str:
        return "<" + ",".join(str(x) for x in self.elements) + ">"

    def conjugate(self, g: int) -> "Subgroup":
        """
        The subgroup g S g^-1.
        """
        group = self.group
        return Subgroup(tuple(sorted(group.conj(g, h) for h in self.elements)), group)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.element_set <= other.element_set

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(tuple(sorted(self.element_set & other.element_set)), self.group)

    @cached_property
    def is_cyclic(self) -> bool:
        return any(self.group.element_order(g) == self.order for g in self.elements)

    @cached_property
    def is_elementary(self) -> bool:
        """
        True when the subgroup is a p-group times a cyclic group of coprime order.

        The subgroup must be nilpotent (one Sylow subgroup per prime) and all
        of its Sylow subgroups but at most one must be cyclic.
        """
        group = self.group
        noncyclic = 0
        for p, k in factorint(self.order).items():
            size = p**k
            p_elements = [g for g in self.elements if size % group.element_order(g) == 0]
            if len(p_elements) != size:
                return False
            if not any(group.element_order(g) == size for g in p_elements):
                noncyclic += 1
        return noncyclic <= 1


@dataclass(frozen=True)
class SubgroupClass:
    """
    A conjugacy class of subgroups with its chosen representative.
    """

    index: int
    members: tuple[Subgroup, ...]
    representative: Subgroup

    @property
    def canonical(self) -> Subgroup:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class LocalClasses:
    """
    Conjugacy classes of subgroups of H under conjugation by H itself.

    ``representatives`` are sorted by (order, canonical element set);
    ``locate`` maps each subgroup S of H to (class index, h in H) with
    S = h L h^-1 for the class representative L.
    """

    ambient: Subgroup
    representatives: tuple[Subgroup, ...]
    locations: dict

    def locate(self, subgroup: Subgroup) -> tuple[int, int]:
        return self.locations[subgroup]


def _enumerate_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """
    All subgroups, by closing cyclic subgroups under pairwise joins.
    """
    cyclic: dict[tuple[int, ...], int] = {}
    for g in range(group.order):
        cyclic.setdefault(group.closure([g]), g)
    found: dict[tuple[int, ...], tuple[int, ...]] = {elements: (g,) for elements, g in cyclic.items()}
    queue = list(found)
    while queue:
        elements = queue.pop()
        gens = found[elements]
        member_set = set(elements)
        for cyclic_elements, g in cyclic.items():
            if g in member_set:
                continue
            joined = group.closure(gens + (g,))
            if joined not in found:
                found[joined] = gens + (g,)
                queue.append(joined)
    subgroups = [Subgroup(elements, group) for elements in found]
    subgroups.sort()
    return subgroups


class SubgroupLattice:
    """
    Subgroups of a group, their conjugacy classes and transport data.

    Every subgroup S comes with a transporter t_S such that
    S = t_S C t_S^-1 for the representative C of its class, and t_C is the
    identity for representatives.
    """

    def __init__(self, group: FiniteGroup):
        self.group = group
        policy = group.policy
        self.subgroups = _enumerate_subgroups(group)
        logger.debug("%s: %d subgroups", group.name, len(self.subgroups))
        class_of: dict[Subgroup, int] = {}
        classes = []
        for subgroup in self.subgroups:
            if subgroup in class_of:
                continue
            members = sorted({subgroup.conjugate(g) for g in range(group.order)})
            index = len(classes)
            for member in members:
                class_of[member] = index
            representative = policy.pick(members, f"class-rep:{members[0].label}")
            classes.append(SubgroupClass(index, tuple(members), representative))
        self.classes = tuple(classes)
        self._class_of = class_of
        transporters: dict[Subgroup, int] = {}
        normalizers: dict[int, tuple[int, ...]] = {}
        for cls in self.classes:
            candidates: dict[Subgroup, list[int]] = {}
            for g in range(group.order):
                candidates.setdefault(cls.representative.conjugate(g), []).append(g)
            for member, elements in candidates.items():
                if member == cls.representative:
                    transporters[member] = 0
                else:
                    transporters[member] = policy.pick(elements, f"transporter:{member.label}")
            normalizers[cls.index] = tuple(candidates[cls.representative])
        self._transporters = transporters
        self._normalizers = normalizers
        self._local: dict[Subgroup, LocalClasses] = {}

    @property
    def representatives(self) -> list[Subgroup]:
        return [cls.representative for cls in self.classes]

    def class_index(self, subgroup: Subgroup) -> int:
        try:
            return self._class_of[subgroup]
        except KeyError:
            raise InputError(f"{subgroup.label} is not a subgroup of {self.group.name}.") from None

    def representative(self, subgroup: Subgroup) -> Subgroup:
        return self.classes[self.class_index(subgroup)].representative

    def transporter(self, subgroup: Subgroup) -> int:
        return self._transporters[subgroup]

    def normalizer(self, index: int) -> tuple[int, ...]:
        return self._normalizers[index]

    def weyl_generators(self, index: int) -> tuple[int, ...]:
        """
        Elements of N_G(C) that together with C generate N_G(C).
        """
        cache = self.group.cache("weyl_generators")
        if index not in cache:
            group = self.group
            rep = self.classes[index].representative
            gens: list[int] = []
            span = set(rep.elements)
            for n in self._normalizers[index]:
                if n not in span:
                    gens.append(n)
                    span = set(group.closure(list(rep.elements) + gens))
            cache[index] = tuple(gens)
        return cache[index]

    def subgroups_of(self, ambient: Subgroup) -> list[Subgroup]:
        return [s for s in self.subgroups if s.element_set <= ambient.element_set]

    def local_classes(self, ambient: Subgroup) -> LocalClasses:
        """
        Subgroups of ``ambient`` up to conjugation by ``ambient``.
        """
        if ambient not in self._local:
            group = self.group
            policy = group.policy
            representatives = []
            locations = {}
            for subgroup in self.subgroups_of(ambient):
                if subgroup in locations:
                    continue
                members = sorted({subgroup.conjugate(h) for h in ambient.elements})
                rep = policy.pick(members, f"local:{ambient.label}:{members[0].label}")
                index = len(representatives)
                representatives.append(rep)
                candidates: dict[Subgroup, list[int]] = {}
                for h in ambient.elements:
                    candidates.setdefault(rep.conjugate(h), []).append(h)
                for member, elements in candidates.items():
                    h = 0 if member == rep else policy.pick(elements, f"local-t:{ambient.label}:{member.label}")
                    locations[member] = (index, h)
            self._local[ambient] = LocalClasses(ambient, tuple(representatives), locations)
        return self._local[ambient]


def subgroup_classes(group: FiniteGroup) -> tuple[SubgroupClass, ...]:
    return group.lattice.classes


def cyclic_subgroup_classes(group: FiniteGroup) -> list[SubgroupClass]:
    return [cls for cls in group.lattice.classes if cls.representative.is_cyclic]


def elementary_subgroup_classes(group: FiniteGroup) -> list[SubgroupClass]:
    return [cls for cls in group.lattice.classes if cls.representative.is_elementary]


def _check_member(group: FiniteGroup, subgroup: Subgroup):
    if subgroup.group is not group and subgroup.group.table != group.table:
        raise InputError(f"{subgroup.label} is not a subgroup of {group.name}.")


def double_coset_partition(
    group: FiniteGroup,
    left: Subgroup,
    right: Subgroup,
    ambient: Subgroup | None = None,
) -> list[tuple[int, ...]]:
    """
    The double cosets left\\ambient/right as sorted element tuples, ordered by least element.
    """
    _check_member(group, left)
    _check_member(group, right)
    elements = ambient.elements if ambient is not None else range(group.order)
    covered: set[int] = set()
    cosets = []
    for g in elements:
        if g in covered:
            continue
        coset = {group.table[group.table[h][g]][l] for h in left.elements for l in right.elements}
        covered |= coset
        cosets.append(tuple(sorted(coset)))
    return cosets


def double_cosets(
    group: FiniteGroup,
    left: Subgroup,
    right: Subgroup,
    ambient: Subgroup | None = None,
) -> list[int]:
    """
    Representatives of left\\G/right (or left\\ambient/right), one per double coset.
    """
    cosets = double_coset_partition(group, left, right, ambient)
    policy = group.policy
    return [policy.pick(coset, f"dc:{left.label}:{right.label}:{coset[0]}") for coset in cosets]


# -- presets ---------------------------------------------------------------


def _quaternion_permutations() -> list[list[int]]:
    units = "1ijk"
    unit_table = {
        ("1", u): (1, u) for u in units
    }
    unit_table.update({(u, "1"): (1, u) for u in units})
    unit_table.update(
        {
            ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
            ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
            ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
        }
    )
    elements = [(s, u) for s in (1, -1) for u in units]
    index = {element: i for i, element in enumerate(elements)}

    def times(a, b):
        sign, unit = unit_table[(a[1], b[1])]
        return (a[0] * b[0] * sign, unit)

    return [[index[times((1, g), x)] for x in elements] for g in "ij"]


def _from_permutation_group(perm_group: PermutationGroup, name: str, spec: str, max_order: int, seed) -> FiniteGroup:
    order = int(perm_group.order())
    if order > max_order:
        raise OrderCapExceededError(order, max_order)
    elements = sorted(tuple(p.array_form) for p in perm_group.generate())
    position = {element: i for i, element in enumerate(elements)}
    table = [[position[tuple(a[b[x]] for x in range(len(b)))] for b in elements] for a in elements]
    group = FiniteGroup(
        table,
        name=name,
        spec=spec,
        permutations=elements,
        policy=ChoicePolicy(seed),
        max_order=max_order,
    )
    logger.debug("built %s of order %d", name, order)
    return group


def from_permutations(
    generators: Sequence[Sequence[int]],
    degree: int,
    name: str = "G",
    spec: str | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
    seed: int | None = None,
) -> FiniteGroup:
    """
    The group generated by permutations of 0..degree-1 in array form.
    """
    perms = []
    for gen in generators:
        gen = list(gen)
        if sorted(gen) != list(range(degree)):
            raise InputError(f"{gen} is not a permutation of {degree} points.")
        perms.append(Permutation(gen, size=degree))
    if not perms:
        perms = [Permutation(list(range(degree)), size=degree)]
    return _from_permutation_group(PermutationGroup(perms), name, spec or name, max_order, seed)


def _parse_cycles(text: str, degree: int) -> list[int]:
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles and text.strip():
        raise InputError(f"Could not read cycles from {text!r}.")
    image = list(range(degree))
    for cycle in cycles:
        points = [int(p) for p in re.split(r"[,\s]+", cycle.strip()) if p]
        if any(not 0 <= p < degree for p in points) or len(set(points)) != len(points):
            raise InputError(f"Cycle ({cycle}) is not valid on {degree} points.")
        for a, b in zip(points, points[1:] + points[:1]):
            image[a] = b
    return image


_CYCLIC = re.compile(r"^(?:z/?|c|cyclic:?)(\d+)$")
_DIHEDRAL = re.compile(r"^(?:d|dihedral:?)(\d+)$")
_SYMMETRIC = re.compile(r"^(?:s|symmetric:?)(\d+)$")
_ALTERNATING = re.compile(r"^(?:a|alternating:?)(\d+)$")
_ELEMENTARY = re.compile(r"^(?:e|elementary:?)(\d+)\^(\d+)$")


def preset(spec: str, max_order: int = DEFAULT_MAX_ORDER, seed: int | None = None) -> FiniteGroup:
    """
    Build a group from a preset name or a permutation spec.

    Accepted forms: ``Z/n`` (also ``Zn``, ``Cn``, ``cyclic n``), ``Dn``
    (dihedral of order 2n), ``Sn`` (n <= 4), ``An``, ``Q8``, ``E p^k``
    (elementary abelian), products such as ``Z/2xZ/2``, ``trivial``,
    ``perm:<degree>:<cycles>;<cycles>`` with cycles like ``(0 1 2)(3 4)``,
    and ``<spec>@<i,j,...>`` for a subgroup of another spec viewed as a group.
    """
    text = spec.strip()
    if not text:
        raise InputError("Empty group spec.")
    if "@" in text:
        parent_spec, _, elements = text.rpartition("@")
        parent = preset(parent_spec, max_order=max_order, seed=seed)
        try:
            members = [int(x) for x in elements.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"Bad subgroup element list in {spec!r}.") from None
        return parent.subgroup_as_group(parent.subgroup(members))[0]
    key = text.lower().replace(" ", "")
    if key.startswith("perm:"):
        parts = text.split(":", 2)
        if len(parts) != 3:
            raise InputError(f"Permutation spec {spec!r} must look like perm:<degree>:<cycles>;<cycles>.")
        try:
            degree = int(parts[1])
        except ValueError:
            raise InputError(f"Bad degree in permutation spec {spec!r}.") from None
        gens = [_parse_cycles(chunk, degree) for chunk in parts[2].split(";") if chunk.strip()]
        return from_permutations(gens, degree, name=text, spec=text, max_order=max_order, seed=seed)
    if key in ("1", "trivial", "z/1", "z1", "c1"):
        return FiniteGroup([[0]], name="1", spec="1", policy=ChoicePolicy(seed), max_order=max_order)
    if key in ("q8", "quaternion8"):
        gens = [Permutation(p) for p in _quaternion_permutations()]
        return _from_permutation_group(PermutationGroup(gens), "Q8", "Q8", max_order, seed)
    if key in ("v4", "klein"):
        return preset("Z/2xZ/2", max_order, seed)
    if "x" in key:
        factors = []
        for part in key.split("x"):
            match = _CYCLIC.match(part)
            if not match:
                raise InputError(f"Unknown factor {part!r} in group spec {spec!r}.")
            factors.append(int(match.group(1)))
        if any(n < 1 for n in factors):
            raise InputError(f"Bad cyclic factor in {spec!r}.")
        factors = [n for n in factors if n > 1]
        if not factors:
            return preset("1", max_order, seed)
        name = "x".join(f"Z/{n}" for n in factors)
        return _from_permutation_group(AbelianGroup(*factors), name, name, max_order, seed)
    match = _ELEMENTARY.match(key)
    if match:
        p, k = int(match.group(1)), int(match.group(2))
        if len(factorint(p)) != 1 or factorint(p).get(p) != 1:
            raise InputError(f"{p} is not a prime in {spec!r}.")
        if k == 0:
            return preset("1", max_order, seed)
        return preset("x".join([f"Z/{p}"] * k), max_order, seed)
    for pattern, build in (
        (_CYCLIC, "cyclic"),
        (_DIHEDRAL, "dihedral"),
        (_SYMMETRIC, "symmetric"),
        (_ALTERNATING, "alternating"),
    ):
        match = pattern.match(key)
        if not match:
            continue
        n = int(match.group(1))
        if n < 1:
            raise InputError(f"Bad parameter in group spec {spec!r}.")
        if build == "cyclic":
            if n == 1:
                return preset("1", max_order, seed)
            return _from_permutation_group(CyclicGroup(n), f"Z/{n}", f"Z/{n}", max_order, seed)
        if build == "dihedral":
            if n < 2:
                raise InputError("Dihedral groups need n >= 2.")
            return _from_permutation_group(DihedralGroup(n), f"D{n}", f"D{n}", max_order, seed)
        if build == "symmetric":
            if n > 4:
                raise InputError("Symmetric presets are limited to n <= 4.")
            if n == 1:
                return preset("1", max_order, seed)
            return _from_permutation_group(SymmetricGroup(n), f"S{n}", f"S{n}", max_order, seed)
        if n < 3:
            return preset("1", max_order, seed)
        return _from_permutation_group(AlternatingGroup(n), f"A{n}", f"A{n}", max_order, seed)
    raise InputError(f"Unknown group spec {spec!r}.")

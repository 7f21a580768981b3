"""
Exact character tables and the representation rings R(H).

Tables are computed with the Dixon-Schneider method: the class-sum structure
constants are diagonalized simultaneously over GF(p), where p is the least
prime with p = 1 mod e (e the character conductor of the group) and
p > 2 sqrt(|H|). Values are lifted to Z[zeta_e] from eigenvalue
multiplicities of each element.
"""

from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from sympy import FiniteField, isprime, primitive_root, sqrt_mod
from sympy.polys.matrices import DomainMatrix

from .cyclotomic import CycInt
from .errors import OrderCapExceededError, VerificationError
from .groups import FiniteGroup, Subgroup
from .zlinalg import IntMatrix

logger = logging.getLogger(__name__)


def _conjugacy_classes(subgroup: Subgroup) -> list[tuple[int, ...]]:
    group = subgroup.group
    seen: set[int] = set()
    classes = []
    for x in subgroup.elements:
        if x in seen:
            continue
        members = tuple(sorted({group.conj(h, x) for h in subgroup.elements}))
        seen.update(members)
        classes.append(members)
    classes.sort(key=lambda members: (group.element_order(members[0]), members[0]))
    return classes


def dixon_prime(order: int, conductor: int) -> int:
    """
    Least prime p with p = 1 mod conductor and p > 2 sqrt(order).
    """
    p = conductor + 1
    while not (isprime(p) and p * p > 4 * order):
        p += conductor
    return p


def _eigen_split(rows: list[list[int]], matrix: list[list[int]], p: int, field) -> list[list[list[int]]]:
    """
    Split the span of ``rows`` (an invariant subspace) into eigenspaces of ``matrix``.
    """
    echelon, pivots = DomainMatrix.from_list(rows, field).rref()
    basis = [[int(x) % p for x in row] for row in echelon.to_list() if any(int(y) % p for y in row)]
    d = len(basis)
    n = len(matrix)
    images = [[sum(matrix[j][k] * b[k] for k in range(n)) % p for j in range(n)] for b in basis]
    restricted = [[images[t][pivots[s]] for t in range(d)] for s in range(d)]
    coefficients = [int(c) % p for c in DomainMatrix.from_list(restricted, field).charpoly()]
    pieces = []
    for lam in range(p):
        value = 0
        for c in coefficients:
            value = (value * lam + c) % p
        if value:
            continue
        shifted = [[(restricted[s][t] - (lam if s == t else 0)) % p for t in range(d)] for s in range(d)]
        null = DomainMatrix.from_list(shifted, field).nullspace().to_list()
        piece = []
        for combo in null:
            combo = [int(c) % p for c in combo]
            piece.append([sum(combo[t] * basis[t][k] for t in range(d)) % p for k in range(n)])
        if piece:
            pieces.append(piece)
    if sum(len(piece) for piece in pieces) != d:
        raise VerificationError("Class matrix is not diagonalizable over the chosen prime field.")
    return pieces


def _dixon_schneider(subgroup: Subgroup, classes: list[tuple[int, ...]], conductor: int) -> list[tuple[CycInt, ...]]:
    group = subgroup.group
    order = subgroup.order
    r = len(classes)
    if r == 1:
        return [(CycInt.from_int(conductor, 1),)]
    class_of = {x: k for k, members in enumerate(classes) for x in members}
    sizes = [len(members) for members in classes]
    representatives = [members[0] for members in classes]
    inverse_class = [class_of[group.inv(z)] for z in representatives]
    p = dixon_prime(order, conductor)
    field = FiniteField(p)
    logger.debug("character table of order %d: %d classes, prime %d", order, r, p)

    # structure[i][j][k] = #{x in C_i : x^-1 z_k in C_j}
    structure = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k, z in enumerate(representatives):
        for i, members in enumerate(classes):
            for x in members:
                structure[i][class_of[group.mul(group.inv(x), z)]][k] += 1

    spaces = [[[int(i == j) for j in range(r)] for i in range(r)]]
    for i in range(1, r):
        if all(len(space) == 1 for space in spaces):
            break
        refined = []
        for space in spaces:
            if len(space) == 1:
                refined.append(space)
            else:
                refined.extend(_eigen_split(space, structure[i], p, field))
        spaces = refined
    if len(spaces) != r or any(len(space) != 1 for space in spaces):
        raise VerificationError(f"Could not separate the {r} irreducible characters modulo {p}.")

    root = pow(int(primitive_root(p)), (p - 1) // conductor, p)
    characters = []
    for (vector,) in spaces:
        scale = pow(vector[0], -1, p)
        omega = [x * scale % p for x in vector]
        total = sum(omega[k] * omega[inverse_class[k]] * pow(sizes[k], -1, p) for k in range(r)) % p
        degree_squared = order * pow(total, -1, p) % p
        s = int(sqrt_mod(degree_squared, p))
        degree = min(s, p - s)
        values_mod_p = [degree * omega[k] * pow(sizes[k], -1, p) % p for k in range(r)]
        lifted = []
        for k, z in enumerate(representatives):
            o = group.element_order(z)
            w = pow(root, conductor // o, p)
            powers = []
            current = 0
            for _ in range(o):
                powers.append(values_mod_p[class_of[current]])
                current = group.mul(current, z)
            value = CycInt.zero(conductor)
            multiplicity_total = 0
            inverse_o = pow(o, -1, p)
            for s_index in range(o):
                m = sum(powers[j] * pow(w, (-j * s_index) % o, p) for j in range(o)) * inverse_o % p
                if m > degree:
                    raise VerificationError("Eigenvalue multiplicity out of range while lifting a character.")
                multiplicity_total += m
                if m:
                    value = value + CycInt.root_power(conductor, s_index * (conductor // o)) * m
            if multiplicity_total != degree:
                raise VerificationError("Eigenvalue multiplicities do not add up to the degree.")
            lifted.append(value)
        characters.append(tuple(lifted))
    return characters


class CharacterTable:
    """
    The irreducible characters of a subgroup H, with values in Z[zeta_e].

    Classes are ordered by (element order, least element); characters by
    degree, then by their values, with the trivial character first.
    """

    def __init__(
        self,
        subgroup: Subgroup,
        classes: Sequence[tuple[int, ...]],
        characters: Sequence[Sequence[CycInt]],
        conductor: int,
    ):
        self.subgroup = subgroup
        self.group = subgroup.group
        self.conductor = conductor
        self.classes = tuple(tuple(members) for members in classes)
        self.representatives = tuple(members[0] for members in self.classes)
        self.sizes = tuple(len(members) for members in self.classes)
        self.class_of = {x: k for k, members in enumerate(self.classes) for x in members}
        self.inverse_class = tuple(self.class_of[self.group.inv(z)] for z in self.representatives)

        def sort_key(values):
            trivial = all(v == CycInt.from_int(conductor, 1) for v in values)
            return (values[0].to_int(), 0 if trivial else 1, tuple(v.coeffs for v in values))

        self.characters = tuple(sorted((tuple(values) for values in characters), key=sort_key))

    @property
    def order(self) -> int:
        return self.subgroup.order

    def __len__(self):
        return len(self.characters)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(values[0].to_int() for values in self.characters)

    def value(self, index: int, element: int) -> CycInt:
        return self.characters[index][self.class_of[element]]

    def class_function(self, function: Callable[[int], CycInt]) -> tuple[CycInt, ...]:
        return tuple(function(z) for z in self.representatives)

    def pairing(self, first: Sequence[CycInt], second: Sequence[CycInt]) -> int:
        """
        (1/|H|) sum_g first(g) second(g^-1) for class functions given per class.
        """
        total = CycInt.zero(self.conductor)
        for k, size in enumerate(self.sizes):
            total = total + first[k] * second[self.inverse_class[k]] * size
        value = total.to_int()
        if value % self.order:
            raise ArithmeticError("Class function pairing is not integral.")
        return value // self.order

    def decompose(self, values: Sequence[CycInt]) -> tuple[int, ...]:
        """
        Coordinates over the irreducibles of a virtual character given per class.
        """
        return tuple(self.pairing(values, chi) for chi in self.characters)

    def evaluate(self, coords: Sequence[int]) -> tuple[CycInt, ...]:
        values = [CycInt.zero(self.conductor)] * len(self.classes)
        for c, chi in zip(coords, self.characters):
            if c:
                values = [v + x * c for v, x in zip(values, chi)]
        return tuple(values)

    @cached_property
    def product_table(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """
        Coordinates of chi_i chi_j for all pairs.
        """
        n = len(self.characters)
        result = []
        for i in range(n):
            row = []
            for j in range(n):
                values = [a * b for a, b in zip(self.characters[i], self.characters[j])]
                row.append(self.decompose(values))
            result.append(tuple(row))
        return tuple(result)

    def verify(self):
        """
        Both orthogonality relations, the degree sum and degree divisibility.
        """
        failures = []
        n = len(self.characters)
        if n != len(self.classes):
            failures.append(f"{n} characters for {len(self.classes)} classes")
        for i in range(n):
            for j in range(n):
                try:
                    value = self.pairing(self.characters[i], self.characters[j])
                except ArithmeticError:
                    value = None
                if value != int(i == j):
                    failures.append(f"<chi_{i}, chi_{j}> = {value}")
        for k in range(len(self.classes)):
            for l in range(len(self.classes)):
                total = CycInt.zero(self.conductor)
                for chi in self.characters:
                    total = total + chi[k] * chi[self.inverse_class[l]]
                expected = self.order // self.sizes[k] if k == l else 0
                if total != CycInt.from_int(self.conductor, expected):
                    failures.append(f"column orthogonality fails for classes {k}, {l}")
        if sum(d * d for d in self.degrees) != self.order:
            failures.append("sum of squared degrees differs from the group order")
        if any(self.order % d for d in self.degrees):
            failures.append("a degree does not divide the group order")
        if failures:
            raise VerificationError(f"Character table of {self.subgroup.label} is invalid.", failures)


def _compute_table(subgroup: Subgroup) -> CharacterTable:
    group = subgroup.group
    classes = _conjugacy_classes(subgroup)
    characters = _dixon_schneider(subgroup, classes, group.conductor)
    table = CharacterTable(subgroup, classes, characters, group.conductor)
    table.verify()
    return table


def _as_subgroup(target) -> Subgroup:
    if isinstance(target, FiniteGroup):
        return target.whole
    return target


def character_table(target: "FiniteGroup | Subgroup") -> CharacterTable:
    """
    The character table of a group or subgroup, cached on the group.

    If the group has a ``table_cache_dir`` the table is also stored on disk
    and re-verified whenever it is loaded from there.
    """
    subgroup = _as_subgroup(target)
    group = subgroup.group
    if subgroup.order > group.max_order:
        raise OrderCapExceededError(subgroup.order, group.max_order)
    cache = group.cache("character_tables")
    if subgroup.elements in cache:
        return cache[subgroup.elements]
    table = None
    cache_dir = group.table_cache_dir
    path = None
    if cache_dir:
        from .formats import load_character_table, save_character_table

        name = f"{group.fingerprint}-{group.conductor}-{'_'.join(map(str, subgroup.elements))}.json"
        path = os.path.join(cache_dir, name)
        if os.path.exists(path):
            table = load_character_table(path, group)
            logger.debug("loaded character table from %s", path)
    if table is None:
        table = _compute_table(subgroup)
        if path:
            os.makedirs(cache_dir, exist_ok=True)
            save_character_table(table, path)
    cache[subgroup.elements] = table
    return table


@dataclass(frozen=True)
class VirtualCharacter:
    """
    An element of R(H): integer coordinates over the irreducibles of H.
    """

    subgroup: Subgroup
    coords: tuple[int, ...]

    @classmethod
    def trivial(cls, subgroup: Subgroup) -> "VirtualCharacter":
        n = len(character_table(subgroup))
        return cls(subgroup, (1,) + (0,) * (n - 1))

    @classmethod
    def zero(cls, subgroup: Subgroup) -> "VirtualCharacter":
        return cls(subgroup, (0,) * len(character_table(subgroup)))

    @classmethod
    def irreducible(cls, subgroup: Subgroup, index: int) -> "VirtualCharacter":
        n = len(character_table(subgroup))
        return cls(subgroup, tuple(int(i == index) for i in range(n)))

    @property
    def table(self) -> CharacterTable:
        return character_table(self.subgroup)

    def values(self) -> tuple[CycInt, ...]:
        return self.table.evaluate(self.coords)

    def degree(self) -> int:
        return self.values()[0].to_int()

    def __call__(self, element: int) -> CycInt:
        return self.values()[self.table.class_of[element]]

    def __add__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        _same_subgroup(self, other)
        return VirtualCharacter(self.subgroup, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        _same_subgroup(self, other)
        return VirtualCharacter(self.subgroup, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, factor: int) -> "VirtualCharacter":
        return VirtualCharacter(self.subgroup, tuple(factor * a for a in self.coords))

    def __mul__(self, other: "VirtualCharacter") -> "VirtualCharacter":
        return mult(self, other)


def _same_subgroup(a: VirtualCharacter, b: VirtualCharacter):
    if a.subgroup != b.subgroup:
        raise ValueError(f"Characters of {a.subgroup.label} and {b.subgroup.label} cannot be combined.")


def mult(a: VirtualCharacter, b: VirtualCharacter) -> VirtualCharacter:
    _same_subgroup(a, b)
    products = a.table.product_table
    result = [0] * len(a.coords)
    for i, x in enumerate(a.coords):
        if not x:
            continue
        for j, y in enumerate(b.coords):
            if y:
                for k, c in enumerate(products[i][j]):
                    result[k] += x * y * c
    return VirtualCharacter(a.subgroup, tuple(result))


def res(chi: VirtualCharacter, subgroup: Subgroup) -> VirtualCharacter:
    if not subgroup.is_subgroup_of(chi.subgroup):
        raise ValueError(f"{subgroup.label} is not contained in {chi.subgroup.label}.")
    source = chi.table
    values = chi.values()
    target = character_table(subgroup)
    restricted = target.class_function(lambda z: values[source.class_of[z]])
    return VirtualCharacter(subgroup, target.decompose(restricted))


def induced_values(table: CharacterTable, values: Sequence[CycInt], ambient: Subgroup) -> tuple[CycInt, ...]:
    """
    Values on the classes of ``ambient`` of the character induced from ``table``.
    """
    group = ambient.group
    target = character_table(ambient)
    inner = table.subgroup.element_set
    result = []
    for z in target.representatives:
        total = CycInt.zero(table.conductor)
        for x in ambient.elements:
            y = group.conj(group.inv(x), z)
            if y in inner:
                total = total + values[table.class_of[y]]
        result.append(total.exact_div(table.order))
    return tuple(result)


def ind(chi: VirtualCharacter, ambient: Subgroup) -> VirtualCharacter:
    if not chi.subgroup.is_subgroup_of(ambient):
        raise ValueError(f"{chi.subgroup.label} is not contained in {ambient.label}.")
    values = induced_values(chi.table, chi.values(), ambient)
    return VirtualCharacter(ambient, character_table(ambient).decompose(values))


def conj(chi: VirtualCharacter, g: int) -> VirtualCharacter:
    """
    The character h -> chi(g^-1 h g) of g H g^-1.
    """
    group = chi.subgroup.group
    source = chi.table
    values = chi.values()
    image = chi.subgroup.conjugate(g)
    target = character_table(image)
    g_inv = group.inv(g)
    moved = target.class_function(lambda z: values[source.class_of[group.conj(g_inv, z)]])
    return VirtualCharacter(image, target.decompose(moved))


def permutation_character(subgroup: Subgroup, ambient: Subgroup) -> VirtualCharacter:
    """
    ind_L^H(1): the character of the H-set H/L.
    """
    return ind(VirtualCharacter.trivial(subgroup), ambient)


def gcd_degrees(table: CharacterTable) -> int:
    return math.gcd(*table.degrees)


def transport_matrix(source: CharacterTable, target: CharacterTable, mapping: Sequence[int] | dict) -> IntMatrix:
    """
    R(source) -> R(target) along the isomorphism x -> mapping[x].
    """
    inverse = {mapping[x]: x for x in source.subgroup.elements}
    columns = []
    for k in range(len(source)):
        values = target.class_function(lambda z: source.value(k, inverse[z]))
        columns.append(target.decompose(values))
    return IntMatrix.from_columns(columns, len(target))

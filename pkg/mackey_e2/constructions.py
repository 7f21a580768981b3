"""
Modules built from G-set functors: R^G itself, representables R_X, the shift
M -> M_X, restriction and induction along a subgroup, and the Yoneda maps
between hom(R_X, M) and M(X).
"""

from __future__ import annotations

import logging
from typing import Callable, Sequence

from .characters import character_table, transport_matrix
from .errors import InputError
from .green import GreenFunctor, green_functor, representation_functor
from .groups import FiniteGroup, Subgroup, double_cosets
from .gsets import (
    GMap,
    GSet,
    coset_space,
    diagonal,
    orbit_map,
    product,
    product_map,
    product_projections,
    restrict,
)
from .mackey import MackeyModule, ModuleHom
from .zlinalg import IntMatrix, PresentedAbGroup

logger = logging.getLogger(__name__)

OrbitMaps = Callable[[Subgroup, Subgroup, int], IntMatrix]


def module_from_orbits(
    group: FiniteGroup,
    value: Callable[[Subgroup], PresentedAbGroup],
    contravariant: OrbitMaps,
    covariant: OrbitMaps,
    action: Callable[[Subgroup, int], IntMatrix],
    name: str,
    functor: GreenFunctor | None = None,
) -> MackeyModule:
    """
    Assemble a module from its values on orbits G/C and its orbit maps.

    ``contravariant(A, B, g)`` is M(G/B) -> M(G/A) and ``covariant(A, B, g)``
    is M(G/A) -> M(G/B), both along eA -> gB.
    """
    functor = functor or representation_functor(group)
    lattice = group.lattice
    representatives = lattice.representatives
    levels = [value(C) for C in representatives]
    restrictions, inductions, conjugations, actions = {}, {}, {}, {}
    for c, C in enumerate(representatives):
        for l, L in enumerate(lattice.local_classes(C).representatives):
            D = lattice.representative(L)
            moved = group.inv(lattice.transporter(L))
            restrictions[(c, l)] = contravariant(D, C, moved)
            inductions[(c, l)] = covariant(D, C, moved)
        conjugations[c] = {n: contravariant(C, C, n) for n in lattice.weyl_generators(c)}
        actions[c] = [action(C, k) for k in range(functor.rank(C))]
    logger.debug("built module %s over %s", name, group.name)
    return MackeyModule(group, levels, restrictions, inductions, conjugations, actions, name, functor)


def representation_module(group: FiniteGroup, kind: str = "representation") -> MackeyModule:
    """
    The Green functor as a module over itself.
    """
    functor = green_functor(group, kind)
    cache = group.cache("modules")
    key = ("unit", kind)
    if key not in cache:

        def action(C: Subgroup, k: int) -> IntMatrix:
            n = functor.rank(C)
            return functor.multiplication_matrix(C, tuple(int(i == k) for i in range(n)))

        cache[key] = module_from_orbits(
            group,
            lambda C: PresentedAbGroup.free(functor.rank(C)),
            functor.contravariant_orbit,
            functor.covariant_orbit,
            action,
            "R" if kind == "representation" else "Bur",
            functor,
        )
    return cache[key]


def shift_module(module: MackeyModule, gset: GSet, name: str | None = None) -> MackeyModule:
    """
    M_X: Y -> M(Y x X).
    """
    group = module.group
    if gset.group.table != group.table:
        raise InputError(f"{gset.label} is a G-set over a different group.")
    identity = GMap.identity(gset)

    def lifted(A: Subgroup, B: Subgroup, g: int) -> GMap:
        return product_map(orbit_map(group, A, B, g), identity)

    def value(C: Subgroup) -> PresentedAbGroup:
        return module.evaluate(product(coset_space(group, C), gset))

    def action(C: Subgroup, k: int) -> IntMatrix:
        orbit = coset_space(group, C)
        to_orbit, _ = product_projections(orbit, gset)
        n = module.functor.rank(C)
        pulled = module.functor.contravariant(to_orbit).apply(tuple(int(i == k) for i in range(n)))
        return module.value_action(product(orbit, gset), pulled)

    return module_from_orbits(
        group,
        value,
        lambda A, B, g: module.contravariant(lifted(A, B, g)),
        lambda A, B, g: module.covariant(lifted(A, B, g)),
        action,
        name or f"{module.name}_{gset.label}",
        module.functor,
    )


def representable(group: FiniteGroup, gset: GSet) -> MackeyModule:
    """
    R_X: Y -> R(Y x X), the projective generator attached to X.
    """
    cache = group.cache("modules")
    key = ("representable", id(gset))
    if key not in cache:
        cache[key] = (gset, shift_module(representation_module(group), gset, f"R[{gset.label}]"))
    return cache[key][1]


# -- change of group -----------------------------------------------------------


def embed_subgroup(subgroup: Subgroup, embedding: Sequence[int], ambient: FiniteGroup) -> Subgroup:
    return Subgroup(tuple(sorted(embedding[x] for x in subgroup.elements)), ambient)


def pull_subgroup(subgroup: Subgroup, embedding: Sequence[int], small: FiniteGroup) -> Subgroup:
    position = {g: i for i, g in enumerate(embedding)}
    return Subgroup(tuple(sorted(position[x] for x in subgroup.elements)), small)


def restrict_module(module: MackeyModule, subgroup: Subgroup) -> MackeyModule:
    """
    The module over the subgroup (as a group in its own right) that forgets
    everything outside it.
    """
    group = module.group
    if module.functor.kind != "representation":
        raise InputError("Restriction is implemented for modules over the representation functor.")
    small, embedding = group.subgroup_as_group(subgroup)
    small_functor = representation_functor(small)

    def big(A: Subgroup) -> Subgroup:
        return embed_subgroup(A, embedding, group)

    def action(C: Subgroup, k: int) -> IntMatrix:
        image = big(C)
        move = transport_matrix(character_table(C), character_table(image), embedding)
        n = small_functor.rank(C)
        return module.act(image, move.apply(tuple(int(i == k) for i in range(n))))

    return module_from_orbits(
        small,
        lambda C: module.level_at(big(C)),
        lambda A, B, g: module.contravariant_orbit(big(A), big(B), embedding[g]),
        lambda A, B, g: module.covariant_orbit(big(A), big(B), embedding[g]),
        action,
        f"Res({module.name})",
        small_functor,
    )


def induce_module(module: MackeyModule, group: FiniteGroup, subgroup: Subgroup) -> MackeyModule:
    """
    Ind(M)(X) = M(Res X) for a module M over ``subgroup`` viewed as a group.
    """
    small, embedding = group.subgroup_as_group(subgroup)
    if module.group.table != small.table:
        raise InputError(f"{module.name} is not a module over {subgroup.label}.")
    if module.functor.kind != "representation":
        raise InputError("Induction is implemented for modules over the representation functor.")
    position = {g: i for i, g in enumerate(embedding)}
    restricted: dict[tuple[int, ...], GSet] = {}

    def res_orbit(C: Subgroup) -> GSet:
        if C.elements not in restricted:
            restricted[C.elements] = restrict(coset_space(group, C), module.group, embedding)
        return restricted[C.elements]

    def res_map(A: Subgroup, B: Subgroup, g: int) -> GMap:
        f = orbit_map(group, A, B, g)
        return GMap(res_orbit(A), res_orbit(B), f.images)

    functor = representation_functor(group)

    def action(C: Subgroup, k: int) -> IntMatrix:
        space = coset_space(group, C)
        small_set = res_orbit(C)
        n = functor.rank(C)
        basis = tuple(int(i == k) for i in range(n))
        vector: list[int] = []
        for orbit in small_set.orbits:
            a = space.coset_representatives[orbit.base]
            stabilizer = embed_subgroup(orbit.stabilizer, embedding, group)
            moved = functor.contravariant_orbit(stabilizer, C, a).apply(basis)
            back = transport_matrix(character_table(stabilizer), character_table(orbit.stabilizer), position)
            vector.extend(back.apply(moved))
        return module.value_action(small_set, vector)

    return module_from_orbits(
        group,
        lambda C: module.evaluate(res_orbit(C)),
        lambda A, B, g: module.contravariant(res_map(A, B, g)),
        lambda A, B, g: module.covariant(res_map(A, B, g)),
        action,
        f"Ind({module.name})",
        functor,
    )


def induced_level_ranks(module: MackeyModule, group: FiniteGroup, subgroup: Subgroup) -> list[tuple[int, tuple[int, ...]]]:
    """
    Invariants of the sum over a in [G'\\G/H] of M[G' n aHa^-1], per class H of G.
    """
    small, embedding = group.subgroup_as_group(subgroup)
    result = []
    for H in group.lattice.representatives:
        summands = []
        for a in double_cosets(group, subgroup, H):
            meet = subgroup.intersection(H.conjugate(a))
            summands.append(module.level_at(pull_subgroup(meet, embedding, module.group)))
        result.append(PresentedAbGroup.direct_sum(summands).invariants)
    return result


# -- Yoneda ------------------------------------------------------------------


def orbit_inclusion(gset: GSet, index: int) -> GMap:
    """
    G/C_i -> X, eC_i -> base point of orbit i.
    """
    group = gset.group
    orbit = gset.orbits[index]
    space = coset_space(group, orbit.stabilizer)
    images = tuple(gset.act(r, orbit.base) for r in space.coset_representatives)
    return GMap(space, gset, images)


def representable_coordinates(source: GSet, target: GSet, vector: Sequence[int]) -> tuple[int, ...]:
    """
    An element of R(X x Y) in the coordinates of R_Y(X) = sum_i R(G/C_i x Y).
    """
    functor = representation_functor(source.group)
    result: list[int] = []
    for i in range(len(source.orbits)):
        pull = functor.contravariant(product_map(orbit_inclusion(source, i), GMap.identity(target)))
        result.extend(pull.apply(vector))
    return tuple(result)


def yoneda_hom(module: MackeyModule, gset: GSet, element: Sequence[int]) -> ModuleHom:
    """
    The map R_X -> M sending a in R_X[C] = R(G/C x X) to a . m.
    """
    group = module.group
    source = representable(group, gset)
    components = []
    for c, C in enumerate(group.lattice.representatives):
        operators = module.bouc_operators(coset_space(group, C), gset)
        columns = [op.apply(element) for op in operators]
        components.append(module.levels[c].reduce_matrix(IntMatrix.from_columns(columns, module.ngens(c))))
    return ModuleHom(source, module, tuple(components))


def yoneda_element(phi: ModuleHom, gset: GSet) -> tuple[int, ...]:
    """
    The image of the identity of X under phi: R_X -> M, as an element of M(X).
    """
    group = gset.group
    functor = representation_functor(group)
    unit = functor.covariant(diagonal(gset)).apply(functor.unit_value(gset).vector)
    result: list[int] = []
    for i, orbit in enumerate(gset.orbits):
        pull = functor.contravariant(product_map(orbit_inclusion(gset, i), GMap.identity(gset)))
        result.extend(phi.components[orbit.class_index].apply(pull.apply(unit)))
    return phi.target.evaluate(gset).reduce(result)
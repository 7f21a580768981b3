"""
Homological algebra of modules over R^G.

Projective resolutions are built from representables R_{G/H}; differentials
between representables are recorded as Burnside-Bouc morphisms. Ext is the
cohomology of hom(P_*, N) = sum of N[H_i] (Yoneda), Tor the homology of
box(P_*, N) = sum of the shifts N_{G/H_i}.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .bouc import BoucMorphism, compose
from .constructions import (
    induce_module,
    module_from_orbits,
    representable,
    restrict_module,
    shift_module,
    yoneda_hom,
)
from .errors import InputError, VerificationError
from .groups import FiniteGroup, Subgroup
from .gsets import GMap, GSet, coset_space, orbit_map, product, product_map, product_projections
from .mackey import (
    GradedMackeyModule,
    MackeyModule,
    ModuleHom,
    check_compatible,
    cokernel,
    direct_sum_maps,
    generated_lattices,
    hom,
    kernel,
    module_sum,
    zero_module,
)
from .green import representation_functor
from .zlinalg import ColumnEchelon, IntMatrix, PresentedAbGroup, Subquotient, solve_lattice

logger = logging.getLogger(__name__)


# -- resolutions ----------------------------------------------------------------


@dataclass(frozen=True)
class ResolutionGenerator:
    class_index: int
    subgroup: Subgroup
    element: tuple[int, ...]


@dataclass(eq=False)
class Resolution:
    """
    P_m -> ... -> P_0 -> M -> 0 with P_k a sum of representables R_{G/H_i}.

    ``entries[k - 1][j][i]`` is the morphism G/H_i -> G/H'_j of the
    differential d_k from summand i of P_k to summand j of P_{k-1}.
    """

    target: MackeyModule
    modules: list[MackeyModule]
    generators: list[list[ResolutionGenerator]]
    augmentation: ModuleHom | None
    differentials: list[ModuleHom]
    entries: list[list[list[BoucMorphism]]]
    complete: bool
    failures: list[str] = field(default_factory=list)

    @property
    def length(self) -> int:
        return max(len(self.modules) - 1, 0)

    @property
    def projective_dimension(self) -> int | None:
        return self.length if self.complete else None

    @property
    def certified(self) -> bool:
        return not self.failures

    def objects(self, k: int) -> list[GSet]:
        group = self.target.group
        return [coset_space(group, generator.subgroup) for generator in self.generators[k]]

    def summary(self) -> list[str]:
        lines = []
        for k, gens in enumerate(self.generators):
            labels = ", ".join(f"R[G/{g.subgroup.label}]" for g in gens) or "0"
            lines.append(f"P{k} = {labels}")
        state = f"complete, length {self.length}" if self.complete else f"truncated after P{self.length}"
        lines.append(state)
        lines.append("certificates: " + ("d o d = 0, levelwise exact" if self.certified else "; ".join(self.failures)))
        return lines


def _require_representation(module: MackeyModule):
    if module.functor.kind != "representation":
        raise InputError(
            f"{module.name} is a module over the {module.functor.kind} functor; "
            "resolutions by representables need modules over the representation functor."
        )


def _unit(n: int, j: int) -> tuple[int, ...]:
    return tuple(int(i == j) for i in range(n))


def _generates(module: MackeyModule, chosen: Sequence[tuple[int, tuple[int, ...]]]) -> bool:
    elements: dict[int, list[tuple[int, ...]]] = {}
    for c, vector in chosen:
        elements.setdefault(c, []).append(vector)
    lattices = generated_lattices(module, elements)
    for c, lattice in enumerate(lattices):
        n = module.ngens(c)
        echelon = ColumnEchelon(lattice, n, track=False)
        if not all(echelon.contains(_unit(n, j)) for j in range(n)):
            return False
    return True


def _choose_generators(module: MackeyModule, seed: int | None) -> list[tuple[int, tuple[int, ...]]]:
    """
    Coordinate generators, largest subgroups first, then pruned.
    """
    representatives = module.lattice.representatives
    candidates = sorted(
        ((c, j) for c in range(len(representatives)) for j in range(module.ngens(c))),
        key=lambda cj: (-representatives[cj[0]].order, cj[0], cj[1]),
    )
    if seed is not None:
        random.Random(seed).shuffle(candidates)
    chosen: list[tuple[int, tuple[int, ...]]] = []
    elements: dict[int, list[tuple[int, ...]]] = {}
    lattices = generated_lattices(module, elements)
    for c, j in candidates:
        vector = _unit(module.ngens(c), j)
        if ColumnEchelon(lattices[c], module.ngens(c), track=False).contains(vector):
            continue
        chosen.append((c, vector))
        elements.setdefault(c, []).append(vector)
        lattices = generated_lattices(module, elements)
    for index in reversed(range(len(chosen))):
        rest = chosen[:index] + chosen[index + 1:]
        if _generates(module, rest):
            chosen = rest
    return chosen


def _same_lattice(first: Sequence[Sequence[int]], second: Sequence[Sequence[int]], dim: int) -> bool:
    a = ColumnEchelon(first, dim, track=False)
    b = ColumnEchelon(second, dim, track=False)
    return all(b.contains(v) for v in a.basis) and all(a.contains(v) for v in b.basis)


def _kernel_lattice(matrix: IntMatrix, target: PresentedAbGroup) -> list[tuple[int, ...]]:
    return solve_lattice([list(row) for row in matrix.entries], matrix.cols, target.moduli)


def resolve(module: MackeyModule, n_max: int, seed: int | None = None) -> Resolution:
    """
    A resolution by representables up to P_{n_max}, with certificates.
    """
    if n_max < 0:
        raise InputError("n_max must be non-negative.")
    _require_representation(module)
    cache = module.group.cache("resolutions")
    key = (id(module), n_max, seed)
    if key in cache:
        return cache[key][1]
    group = module.group
    representatives = group.lattice.representatives
    modules: list[MackeyModule] = []
    generators: list[list[ResolutionGenerator]] = []
    differentials: list[ModuleHom] = []
    entries: list[list[list[BoucMorphism]]] = []
    augmentation = None
    current, inclusion = module, None
    previous_objects: list[GSet] = []
    previous_summands: list[MackeyModule] = []
    complete = False
    for k in range(n_max + 1):
        if current.is_zero():
            complete = True
            break
        chosen = _choose_generators(current, seed)
        objects = [coset_space(group, representatives[c]) for c, _ in chosen]
        summands = [representable(group, X) for X in objects]
        P = module_sum(summands, group, name=f"P{k}")
        epi = direct_sum_maps(
            summands,
            [current],
            lambda j, i: yoneda_hom(current, objects[i], chosen[i][1]),
            P,
            current,
        )
        generators.append([ResolutionGenerator(c, representatives[c], vector) for c, vector in chosen])
        if k == 0:
            augmentation = epi
        else:
            differentials.append(inclusion.compose(epi))
            row = [[None] * len(objects) for _ in previous_objects]
            for i, (c, vector) in enumerate(chosen):
                image = inclusion.components[c].apply(vector)
                offset = 0
                for j, (Y, summand) in enumerate(zip(previous_objects, previous_summands)):
                    width = summand.ngens(c)
                    row[j][i] = BoucMorphism(objects[i], Y, tuple(image[offset:offset + width]))
                    offset += width
            entries.append(row)
        modules.append(P)
        logger.info("resolution of %s: P%d has %d summands", module.name, k, len(objects))
        sub = kernel(epi)
        current, inclusion = sub.module, sub.inclusion
        previous_objects, previous_summands = objects, summands
    else:
        complete = current.is_zero()
    resolution = Resolution(module, modules, generators, augmentation, differentials, entries, complete)
    resolution.failures.extend(_certify(resolution))
    if resolution.failures:
        logger.warning("resolution of %s failed certification: %s", module.name, resolution.failures)
    cache[key] = (module, resolution)
    return resolution


def _certify(resolution: Resolution) -> list[str]:
    failures = []
    target = resolution.target
    for k in range(2, len(resolution.modules)):
        upper, lower = resolution.entries[k - 1], resolution.entries[k - 2]
        for i in range(len(resolution.generators[k])):
            for l in range(len(resolution.generators[k - 2])):
                total = None
                for j in range(len(resolution.generators[k - 1])):
                    term = compose(lower[l][j], upper[j][i])
                    total = term if total is None else total + term
                if total is not None and not total.is_zero():
                    failures.append(f"d{k - 1} o d{k} != 0 on summands {i} -> {l}")
    if resolution.augmentation is not None and resolution.differentials:
        if not resolution.augmentation.compose(resolution.differentials[0]).is_zero():
            failures.append("augmentation o d1 != 0")
    if resolution.augmentation is None:
        return failures
    maps = [resolution.augmentation] + resolution.differentials
    for c in range(len(target.levels)):
        epi = resolution.augmentation.components[c]
        level = target.levels[c]
        image = ColumnEchelon(list(epi.columns()) + _relations(level), level.ngens, track=False)
        if not all(image.contains(_unit(level.ngens, j)) for j in range(level.ngens)):
            failures.append(f"P0 -> M is not onto at class {c}")
        for k, d in enumerate(maps):
            target_level = target.levels[c] if k == 0 else resolution.modules[k - 1].levels[c]
            kernel_basis = _kernel_lattice(d.components[c], target_level)
            dim = d.components[c].cols
            if k + 1 < len(maps):
                incoming = list(maps[k + 1].components[c].columns())
            elif resolution.complete:
                incoming = []
            else:
                continue
            if not _same_lattice(kernel_basis, incoming, dim):
                failures.append(f"not exact at P{k} on class {c}")
    return failures


def _relations(level: PresentedAbGroup) -> list[tuple[int, ...]]:
    n = level.ngens
    return [tuple(d if i == k else 0 for i in range(n)) for k, d in enumerate(level.moduli) if d]


# -- Ext ---------------------------------------------------------------------------


def _cochain(resolution: Resolution, module: MackeyModule, k: int) -> PresentedAbGroup:
    return PresentedAbGroup.direct_sum([module.levels[g.class_index] for g in resolution.generators[k]])


def _coboundary(resolution: Resolution, module: MackeyModule, k: int) -> IntMatrix:
    """
    hom(P_k, N) -> hom(P_{k+1}, N) in the Yoneda coordinates sum N[H_i].
    """
    sources, targets = resolution.objects(k), resolution.objects(k + 1)
    entries = resolution.entries[k]
    grid = []
    for i, X in enumerate(targets):
        row = []
        for j, Y in enumerate(sources):
            row.append(module.presheaf_action(X, Y, entries[j][i].vector))
        grid.append(row)
    return _assemble(grid, [module.levels[g.class_index].ngens for g in resolution.generators[k + 1]],
                     [module.levels[g.class_index].ngens for g in resolution.generators[k]])


def _assemble(grid: list[list[IntMatrix]], heights: list[int], widths: list[int]) -> IntMatrix:
    rows = [[0] * sum(widths) for _ in range(sum(heights))]
    r0 = 0
    for i, height in enumerate(heights):
        c0 = 0
        for j, width in enumerate(widths):
            block = grid[i][j]
            for r in range(height):
                for c in range(width):
                    rows[r0 + r][c0 + c] = block[r, c]
            c0 += width
        r0 += height
    return IntMatrix.from_rows(rows, sum(widths))


def ext_groups(
    source: MackeyModule,
    target: MackeyModule,
    n_max: int,
    seed: int | None = None,
    resolution: Resolution | None = None,
) -> list[PresentedAbGroup]:
    """
    Ext^n(source, target) for n = 0..n_max.
    """
    check_compatible(source, target)
    resolution = resolution or resolve(source, n_max + 1, seed)
    groups = []
    count = len(resolution.modules)
    for n in range(n_max + 1):
        if n >= count:
            groups.append(PresentedAbGroup.trivial())
            continue
        cochains = _cochain(resolution, target, n)
        dim = cochains.ngens
        if n + 1 < count:
            outgoing = _coboundary(resolution, target, n)
            cycles = _kernel_lattice(outgoing, _cochain(resolution, target, n + 1))
        else:
            cycles = [_unit(dim, j) for j in range(dim)]
        boundaries = _relations(cochains)
        if n >= 1:
            boundaries += list(_coboundary(resolution, target, n - 1).columns())
        try:
            groups.append(Subquotient(cycles, boundaries, dim).group)
        except ValueError:
            raise VerificationError(f"Cochain complex for Ext^{n}({source.name}, {target.name}) is not a complex.", [
                f"delta{n} o delta{n - 1} != 0"
            ]) from None
    return groups


# -- box product and Tor ---------------------------------------------------------


def shifted(module: MackeyModule, gset: GSet) -> MackeyModule:
    cache = module.group.cache("shifts")
    key = (id(module), id(gset))
    if key not in cache:
        cache[key] = (module, gset, shift_module(module, gset))
    return cache[key][2]


def _triple_maps(Z: GSet, X: GSet, Y: GSet) -> tuple[GSet, GMap, GMap, GMap]:
    ZX = product(Z, X)
    T = product(ZX, Y)
    nx, ny = X.size, Y.size
    to_zx = GMap(T, ZX, tuple(t // ny for t in range(T.size)))
    to_xy = GMap(T, product(X, Y), tuple(((t // ny) % nx) * ny + t % ny for t in range(T.size)))
    to_zy = GMap(T, product(Z, Y), tuple((t // ny // nx) * ny + t % ny for t in range(T.size)))
    return T, to_zx, to_xy, to_zy


def shift_map(module: MackeyModule, source: GSet, target: GSet, element: Sequence[int]) -> ModuleHom:
    """
    N_X -> N_Y induced by a in R(X x Y): at Z, n -> N_*(p_ZY)(R^*(p_XY)(a) . N^*(p_ZX)(n)).
    """
    group = module.group
    functor = module.functor
    components = []
    for C in group.lattice.representatives:
        Z = coset_space(group, C)
        T, to_zx, to_xy, to_zy = _triple_maps(Z, source, target)
        weight = functor.contravariant(to_xy).apply(element)
        matrix = module.covariant(to_zy) @ module.value_action(T, weight) @ module.contravariant(to_zx)
        components.append(module.evaluate(product(Z, target)).reduce_matrix(matrix))
    return ModuleHom(shifted(module, source), shifted(module, target), tuple(components))


def _box_complex(resolution: Resolution, module: MackeyModule) -> tuple[list[MackeyModule], list[ModuleHom]]:
    group = module.group
    chain: list[MackeyModule] = []
    boundaries: list[ModuleHom] = []
    summands_by_degree = []
    for k in range(len(resolution.modules)):
        objects = resolution.objects(k)
        summands = [shifted(module, X) for X in objects]
        summands_by_degree.append(summands)
        chain.append(module_sum(summands, group, name=f"P{k}[]{module.name}"))
        if k >= 1:
            entries = resolution.entries[k - 1]
            previous = resolution.objects(k - 1)
            boundaries.append(
                direct_sum_maps(
                    summands,
                    summands_by_degree[k - 1],
                    lambda j, i: shift_map(module, objects[i], previous[j], entries[j][i].vector),
                    chain[k],
                    chain[k - 1],
                )
            )
    return chain, boundaries


def homology(module: MackeyModule, outgoing: ModuleHom | None, incoming: ModuleHom | None, name: str) -> MackeyModule:
    """
    ker(outgoing) / im(incoming) for maps out of and into ``module``.
    """
    if outgoing is None:
        if incoming is None:
            return module
        result = cokernel(incoming).module
    else:
        sub = kernel(outgoing)
        result = sub.module if incoming is None else cokernel(sub.lift_hom(incoming)).module
    result.name = name
    return result


def tor_modules(
    first: MackeyModule,
    second: MackeyModule,
    n_max: int,
    seed: int | None = None,
    resolution: Resolution | None = None,
) -> list[MackeyModule]:
    """
    Tor_n(first, second) for n = 0..n_max, resolving the first argument.
    """
    check_compatible(first, second)
    resolution = resolution or resolve(first, n_max + 1, seed)
    chain, boundaries = _box_complex(resolution, second)
    result = []
    for n in range(n_max + 1):
        name = f"Tor{n}({first.name},{second.name})"
        if n >= len(chain):
            result.append(zero_module(first.group, name))
            continue
        outgoing = boundaries[n - 1] if n >= 1 else None
        incoming = boundaries[n] if n < len(boundaries) else None
        result.append(homology(chain[n], outgoing, incoming, name))
    return result


def box_modules(first: MackeyModule, second: MackeyModule) -> MackeyModule:
    """
    first [] second = coker(box(P_1, N) -> box(P_0, N)).
    """
    module = tor_modules(first, second, 0, resolution=resolve(first, 1))[0]
    module.name = f"{first.name}[]{second.name}"
    return module


def _as_graded(module: MackeyModule | GradedMackeyModule) -> GradedMackeyModule:
    if isinstance(module, GradedMackeyModule):
        return module
    return GradedMackeyModule.concentrated(module, 0)


def box(first: MackeyModule | GradedMackeyModule, second: MackeyModule | GradedMackeyModule) -> GradedMackeyModule:
    """
    (M [] N)_l = sum over i + j = l (mod 2) of M_i [] N_j.
    """
    first, second = _as_graded(first), _as_graded(second)
    group = first.group
    parts: dict[int, list[MackeyModule]] = {0: [], 1: []}
    for i in (0, 1):
        for j in (0, 1):
            if first.degree(i).is_zero() or second.degree(j).is_zero():
                continue
            parts[(i + j) % 2].append(box_modules(first.degree(i), second.degree(j)))
    name = f"{first.name}[]{second.name}"
    return GradedMackeyModule(
        module_sum(parts[0], group, f"({name})0"),
        module_sum(parts[1], group, f"({name})1"),
        name,
    )


def box_direct_oracle(first: MackeyModule, second: MackeyModule, gset: GSet) -> PresentedAbGroup:
    """
    (M [] N)(X) presented directly: generators M[K] (x) N[K] for every orbit
    object G/K -> X, relations from maps of orbits over X and the balancing
    relations m r (x) n = m (x) r n.
    """
    check_compatible(first, second)
    _require_representation(first)
    group = first.group
    representatives = group.lattice.representatives
    offsets: dict[tuple[int, int], int] = {}
    total = 0
    for c, K in enumerate(representatives):
        for x in gset.fixed_points(K):
            offsets[(c, x)] = total
            total += first.ngens(c) * second.ngens(c)
    relations: list[tuple[int, ...]] = []

    def tensor(c: int, x: int, u: Sequence[int], v: Sequence[int], sign: int, into: list[int]):
        base = offsets[(c, x)]
        width = second.ngens(c)
        for a, ua in enumerate(u):
            if ua:
                for b, vb in enumerate(v):
                    if vb:
                        into[base + a * width + b] += sign * ua * vb

    def emit(vector: list[int]):
        if any(vector):
            relations.append(tuple(vector))

    for (c, x), base in offsets.items():
        m_moduli, n_moduli = first.levels[c].moduli, second.levels[c].moduli
        for a, m in enumerate(m_moduli):
            for b, n in enumerate(n_moduli):
                d = math.gcd(m, n)
                if d:
                    vector = [0] * total
                    vector[base + a * second.ngens(c) + b] = d
                    relations.append(tuple(vector))
        for k in range(first.functor.rank(representatives[c])):
            act_m, act_n = first.actions[c][k], second.actions[c][k]
            for a in range(first.ngens(c)):
                for b in range(second.ngens(c)):
                    vector = [0] * total
                    tensor(c, x, act_m.column(a), _unit(second.ngens(c), b), 1, vector)
                    tensor(c, x, _unit(first.ngens(c), a), act_n.column(b), -1, vector)
                    emit(vector)
    for c, K in enumerate(representatives):
        for c2, K2 in enumerate(representatives):
            for g in range(group.order):
                if not K.is_subgroup_of(K2.conjugate(g)):
                    continue
                pull_m = first.contravariant_orbit(K, K2, g)
                push_m = first.covariant_orbit(K, K2, g)
                pull_n = second.contravariant_orbit(K, K2, g)
                push_n = second.covariant_orbit(K, K2, g)
                for x2 in gset.fixed_points(K2):
                    x = gset.act(g, x2)
                    for a2 in range(first.ngens(c2)):
                        for b in range(second.ngens(c)):
                            vector = [0] * total
                            tensor(c, x, pull_m.column(a2), _unit(second.ngens(c), b), 1, vector)
                            tensor(c2, x2, _unit(first.ngens(c2), a2), push_n.column(b), -1, vector)
                            emit(vector)
                    for a in range(first.ngens(c)):
                        for b2 in range(second.ngens(c2)):
                            vector = [0] * total
                            tensor(c2, x2, push_m.column(a), _unit(second.ngens(c2), b2), 1, vector)
                            tensor(c, x, _unit(first.ngens(c), a), pull_n.column(b2), -1, vector)
                            emit(vector)
    logger.debug("box oracle at %s: %d generators, %d relations", gset.label, total, len(relations))
    return PresentedAbGroup(total, IntMatrix.from_columns(relations, total))


# -- graded tables -------------------------------------------------------------


@dataclass(eq=False)
class GradedTable:
    """
    Ext or Tor as (n, l) -> group, with the value at every subgroup class for Tor.
    """

    kind: str
    group: str
    cells: dict[tuple[int, int], PresentedAbGroup]
    levels: dict[tuple[int, int], list[PresentedAbGroup]]
    n_max: int
    complete: bool
    length: int

    def invariants(self, n: int, degree: int) -> tuple[int, tuple[int, ...]]:
        return self.cells[(n, degree % 2)].invariants

    def vanishes_above(self, bound: int) -> bool:
        return all(group.is_trivial() for (n, _), group in self.cells.items() if n > bound)


def _top_class(group: FiniteGroup) -> int:
    return group.lattice.class_index(group.whole)


def ext(
    first: MackeyModule | GradedMackeyModule,
    second: MackeyModule | GradedMackeyModule,
    n_max: int,
    seed: int | None = None,
) -> GradedTable:
    """
    Ext^n(M, N)_l = sum over i + j = l (mod 2) of Ext^n(M_i, N_j).
    """
    first, second = _as_graded(first), _as_graded(second)
    check_compatible(first.even, second.even)
    if n_max < 0:
        raise InputError("n_max must be non-negative.")
    resolutions = {i: resolve(first.degree(i), n_max + 1, seed) for i in (0, 1)}
    parts: dict[tuple[int, int], list[PresentedAbGroup]] = {(n, l): [] for n in range(n_max + 1) for l in (0, 1)}
    for i in (0, 1):
        for j in (0, 1):
            groups = ext_groups(first.degree(i), second.degree(j), n_max, resolution=resolutions[i])
            for n, group in enumerate(groups):
                parts[(n, (i + j) % 2)].append(group)
    cells = {key: PresentedAbGroup.direct_sum(value) for key, value in parts.items()}
    return GradedTable(
        "ext",
        first.group.name,
        cells,
        {},
        n_max,
        all(r.complete for r in resolutions.values()),
        max(r.length for r in resolutions.values()),
    )


def tor(
    first: MackeyModule | GradedMackeyModule,
    second: MackeyModule | GradedMackeyModule,
    n_max: int,
    seed: int | None = None,
) -> GradedTable:
    """
    Tor_n(M, N)_l; cells hold the value at G/G, levels the value at every class.
    """
    first, second = _as_graded(first), _as_graded(second)
    check_compatible(first.even, second.even)
    if n_max < 0:
        raise InputError("n_max must be non-negative.")
    group = first.group
    resolutions = {i: resolve(first.degree(i), n_max + 1, seed) for i in (0, 1)}
    count = len(group.lattice.classes)
    parts: dict[tuple[int, int], list[MackeyModule]] = {(n, l): [] for n in range(n_max + 1) for l in (0, 1)}
    for i in (0, 1):
        for j in (0, 1):
            modules = tor_modules(first.degree(i), second.degree(j), n_max, resolution=resolutions[i])
            for n, module in enumerate(modules):
                parts[(n, (i + j) % 2)].append(module)
    top = _top_class(group)
    cells, levels = {}, {}
    for key, modules in parts.items():
        per_class = [PresentedAbGroup.direct_sum([m.levels[c] for m in modules]) for c in range(count)]
        levels[key] = per_class
        cells[key] = per_class[top]
    return GradedTable(
        "tor",
        group.name,
        cells,
        levels,
        n_max,
        all(r.complete for r in resolutions.values()),
        max(r.length for r in resolutions.values()),
    )


# -- internal hom and adjunctions ---------------------------------------------------


def internal_hom(first: MackeyModule, second: MackeyModule, name: str | None = None) -> MackeyModule:
    """
    X -> hom(M, N_X), with maps induced by X -> N_X.
    """
    check_compatible(first, second)
    _require_representation(first)
    group = first.group
    functor = representation_functor(group)
    representatives = group.lattice.representatives
    results = {}

    def hom_at(C: Subgroup):
        if C.elements not in results:
            results[C.elements] = hom(first, shifted(second, coset_space(group, C)))
        return results[C.elements]

    def transfer(source: Subgroup, target: Subgroup, post) -> IntMatrix:
        src, tgt = hom_at(source), hom_at(target)
        columns = []
        for phi in src.generators:
            components = tuple(
                tgt.target.levels[c].reduce_matrix(post(c) @ phi.components[c]) for c in range(len(representatives))
            )
            columns.append(tgt.coordinates(ModuleHom(first, tgt.target, components)))
        return IntMatrix.from_columns(columns, tgt.group.ngens)

    def along(A: Subgroup, B: Subgroup, g: int, covariant: bool):
        f = orbit_map(group, A, B, g)

        def post(c: int) -> IntMatrix:
            Y = coset_space(group, representatives[c])
            lifted = product_map(GMap.identity(Y), f)
            return second.covariant(lifted) if covariant else second.contravariant(lifted)

        return post

    def action(C: Subgroup, k: int) -> IntMatrix:
        X = coset_space(group, C)
        basis = _unit(functor.rank(C), k)

        def post(c: int) -> IntMatrix:
            Y = coset_space(group, representatives[c])
            _, to_x = product_projections(Y, X)
            return second.value_action(product(Y, X), functor.contravariant(to_x).apply(basis))

        return transfer(C, C, post)

    return module_from_orbits(
        group,
        lambda C: hom_at(C).group,
        lambda A, B, g: transfer(B, A, along(A, B, g, False)),
        lambda A, B, g: transfer(A, B, along(A, B, g, True)),
        action,
        name or f"Hom({first.name},{second.name})",
        functor,
    )


def frobenius_check(small_module: MackeyModule, module: MackeyModule, subgroup: Subgroup) -> bool:
    """
    Ind(M) [] N and Ind(M [] Res N) have the same invariants at every class.
    """
    group = module.group
    left = box_modules(induce_module(small_module, group, subgroup), module)
    right = induce_module(box_modules(small_module, restrict_module(module, subgroup)), group, subgroup)
    same = left.level_invariants() == right.level_invariants()
    logger.debug("frobenius check over %s: %s", subgroup.label, same)
    return same


def induction_adjunction_check(small_module: MackeyModule, module: MackeyModule, subgroup: Subgroup) -> list[str]:
    """
    Ind is left and right adjoint to Res, compared on hom-group invariants.
    """
    group = module.group
    induced = induce_module(small_module, group, subgroup)
    restricted = restrict_module(module, subgroup)
    failures = []
    if hom(induced, module).invariants != hom(small_module, restricted).invariants:
        failures.append("hom(Ind M, N) differs from hom(M, Res N)")
    if hom(module, induced).invariants != hom(restricted, small_module).invariants:
        failures.append("hom(N, Ind M) differs from hom(Res N, M)")
    return failures


def shift_adjunction_check(first: MackeyModule, second: MackeyModule, gset: GSet) -> list[str]:
    """
    M -> M_X is self-adjoint, and R_X [] N = N_X.
    """
    failures = []
    if hom(shifted(first, gset), second).invariants != hom(first, shifted(second, gset)).invariants:
        failures.append(f"hom(M_X, N) differs from hom(M, N_X) for X = {gset.label}")
    boxed = box_modules(representable(first.group, gset), second)
    if boxed.level_invariants() != shifted(second, gset).level_invariants():
        failures.append(f"R_X [] N differs from N_X for X = {gset.label}")
    return failures


def internal_hom_adjunction_check(first: MackeyModule, second: MackeyModule, third: MackeyModule) -> bool:
    """
    hom(M [] N, L) and hom(M, Hom(N, L)) have the same invariants.
    """
    left = hom(box_modules(first, second), third).invariants
    right = hom(first, internal_hom(second, third)).invariants
    logger.debug("internal hom adjunction: %s vs %s", left, right)
    return left == right

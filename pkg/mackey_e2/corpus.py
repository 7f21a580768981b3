"""
The acceptance corpus: exact property checks over the preset groups.

Each group is handled by one worker; ``--threads`` sets how many groups run
at once. A progress bar is shown when tqdm is installed.
"""

from __future__ import annotations

import logging
import random
from math import gcd
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

try:
    from tqdm import tqdm
except ImportError:  # optional
    tqdm = None

from .bouc import basis_morphism, check_category_axioms, compose, hom_basis, identity, rank_formula
from .characters import VirtualCharacter, character_table, conj, ind, res
from .constructions import (
    induce_module,
    induced_level_ranks,
    representable,
    representable_coordinates,
    representation_module,
    yoneda_element,
    yoneda_hom,
)
from .errors import InputError
from .groups import FiniteGroup, Subgroup, double_cosets, preset
from .gsets import GSet, coset_space, product
from .homalg import (
    box_direct_oracle,
    box_modules,
    ext,
    ext_groups,
    frobenius_check,
    induction_adjunction_check,
    resolve,
    shift_adjunction_check,
    tor,
    tor_modules,
)
from .mackey import MackeyModule, ModuleHom, check_axioms, cokernel, hom, kernel, zero_module
from .specseq import artin_rank, brauer_surjectivity, kunneth_e2, uct_e2, vanishing_check

logger = logging.getLogger(__name__)

PRESETS = ("Z/2", "Z/3", "Z/4", "Z/6", "Z/2xZ/2", "S3", "D4", "Q8", "A4")
RANDOM_TRIPLES = 200
ADJUNCTION_PAIRS = 50


@dataclass
class CaseResult:
    check: str
    group: str
    failures: list[str] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class CorpusReport:
    seed: int
    results: list[CaseResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        lines = []
        for r in self.results:
            status = "ok  " if r.passed else "FAIL"
            note = f" ({r.note})" if r.note else ""
            lines.append(f"{status} {r.group:<8} {r.check}{note}")
            lines.extend(f"       {failure}" for failure in r.failures[:5])
        failed = sum(not r.passed for r in self.results)
        lines.append(f"{len(self.results) - failed} of {len(self.results)} checks passed")
        return lines


# -- corpus modules ---------------------------------------------------------------


def counit(group: FiniteGroup, gset: GSet) -> ModuleHom:
    """
    R_X -> R, the map whose Yoneda element is 1 in R(X).
    """
    R = representation_module(group)
    return yoneda_hom(R, gset, R.functor.unit_value(gset).vector)


def torsion_quotient(module: MackeyModule, n: int) -> MackeyModule:
    quotient = cokernel(ModuleHom.identity(module).scale(n)).module
    quotient.name = f"{module.name}/{n}"
    return quotient


def module_pool(group: FiniteGroup) -> list[MackeyModule]:
    """
    Representables, kernels, cokernels, torsion quotients and induced modules.
    """
    cache = group.cache("corpus_pool")
    if "pool" in cache:
        return cache["pool"]
    R = representation_module(group)
    free_orbit = coset_space(group, group.trivial)
    pool = [R, zero_module(group)]
    for H in group.lattice.representatives:
        pool.append(representable(group, coset_space(group, H)))
    augmentation = counit(group, free_orbit)
    quotient = cokernel(augmentation).module
    quotient.name = "C"
    pool.append(quotient)
    sub = kernel(augmentation).module
    sub.name = "K"
    pool.append(sub)
    pool.append(torsion_quotient(R, 2))
    pool.append(torsion_quotient(quotient, 3))
    for H in group.lattice.representatives:
        if 1 < H.order < group.order:
            small, _ = group.subgroup_as_group(H)
            pool.append(induce_module(representation_module(small), group, H))
            break
    cache["pool"] = pool
    return pool


def _small_pool(group: FiniteGroup) -> list[MackeyModule]:
    pool = module_pool(group)
    by_name = {m.name: m for m in pool}
    return [m for m in (pool[0], pool[2], by_name["C"], by_name["R/2"]) if m is not None]


def _orbits(group: FiniteGroup) -> list[GSet]:
    return [coset_space(group, H) for H in group.lattice.representatives]


# -- checks -------------------------------------------------------------------------


def check_characters(group: FiniteGroup, rng: random.Random) -> list[str]:
    failures = []
    subgroups = group.lattice.subgroups
    for H in subgroups:
        try:
            character_table(H).verify()
        except Exception as exc:
            failures.append(f"table of {H.label}: {exc}")
    for H in subgroups:
        table_h = character_table(H)
        for L in group.lattice.subgroups_of(H):
            table_l = character_table(L)
            for i in range(len(table_l)):
                chi = VirtualCharacter.irreducible(L, i)
                induced = ind(chi, H)
                for j in range(len(table_h)):
                    psi = VirtualCharacter.irreducible(H, j)
                    lhs = induced.coords[j]
                    rhs = res(psi, L).coords[i]
                    if lhs != rhs:
                        failures.append(f"Frobenius reciprocity fails for {L.label} <= {H.label}, ({i}, {j})")
    for H in subgroups:
        inside = group.lattice.subgroups_of(H)
        for K in inside:
            for L in inside:
                for i in range(len(character_table(L))):
                    chi = VirtualCharacter.irreducible(L, i)
                    lhs = res(ind(chi, H), K)
                    total = VirtualCharacter.zero(K)
                    for x in double_cosets(group, K, L, H):
                        meet = L.intersection(K.conjugate(group.inv(x)))
                        total = total + ind(conj(res(chi, meet), x), K)
                    if lhs.coords != total.coords:
                        failures.append(f"Mackey formula fails for K={K.label}, L={L.label} in H={H.label}, chi{i}")
    return failures


def check_induction_theorems(group: FiniteGroup, rng: random.Random) -> list[str]:
    failures = []
    brauer = brauer_surjectivity(group)
    if not brauer.surjective:
        failures.append(f"elementary induction has cokernel {brauer.cokernel}")
    artin = artin_rank(group)
    if not artin.full_rank:
        failures.append(f"cyclic induction has rank {artin.rank} of {artin.target_rank}")
    return failures


def check_bouc_category(group: FiniteGroup, rng: random.Random) -> list[str]:
    failures = []
    orbits = _orbits(group)
    for X in orbits:
        for Y in orbits:
            if len(hom_basis(X, Y)) != rank_formula(X, Y):
                failures.append(f"rank of B({X.label}, {Y.label}) differs from the double coset formula")
    if group.order <= 6:
        failures.extend(check_category_axioms(orbits))
        return failures
    for _ in range(RANDOM_TRIPLES):
        X, Y, Z, W = (rng.choice(orbits) for _ in range(4))
        f = basis_morphism(X, Y, rng.randrange(len(hom_basis(X, Y))))
        g = basis_morphism(Y, Z, rng.randrange(len(hom_basis(Y, Z))))
        h = basis_morphism(Z, W, rng.randrange(len(hom_basis(Z, W))))
        if compose(h, compose(g, f)) != compose(compose(h, g), f):
            failures.append(f"associativity fails on {X.label}->{Y.label}->{Z.label}->{W.label}")
        if compose(identity(Y), f) != f or compose(f, identity(X)) != f:
            failures.append(f"unit law fails on B({X.label}, {Y.label})")
    return failures


def two_path_failures(X: GSet, Y: GSet, Z: GSet) -> list[str]:
    """
    compose(b, a) against the composite of the Yoneda maps R_X -> R_Y -> R_Z.
    """
    group = X.group
    failures = []
    R_Y, R_Z = representable(group, Y), representable(group, Z)
    for i in range(len(hom_basis(X, Y))):
        a = basis_morphism(X, Y, i)
        first = yoneda_hom(R_Y, X, representable_coordinates(X, Y, a.vector))
        for j in range(len(hom_basis(Y, Z))):
            b = basis_morphism(Y, Z, j)
            second = yoneda_hom(R_Z, Y, representable_coordinates(Y, Z, b.vector))
            transported = yoneda_element(second.compose(first), X)
            direct = representable_coordinates(X, Z, compose(b, a).vector)
            if tuple(transported) != tuple(direct):
                failures.append(f"two-path composition differs on {X.label}->{Y.label}->{Z.label} ({i}, {j})")
    return failures


def check_two_path(group: FiniteGroup, rng: random.Random) -> list[str]:
    orbits = _orbits(group)
    failures = []
    for X in orbits:
        for Y in orbits:
            for Z in orbits:
                failures.extend(two_path_failures(X, Y, Z))
    return failures


def yoneda_failures(module: MackeyModule, X: GSet) -> list[str]:
    failures = []
    group = module.group
    result = hom(representable(group, X), module)
    value = module.evaluate(X)
    if result.invariants != value.invariants:
        failures.append(f"hom(R_{X.label}, {module.name}) is {result.invariants}, {module.name}({X.label}) is {value.invariants}")
    for phi in result.generators:
        back = yoneda_hom(module, X, yoneda_element(phi, X))
        if not back.equals(phi):
            failures.append(f"Yoneda round trip fails on a generator of hom(R_{X.label}, {module.name})")
    for k in range(value.ngens):
        element = tuple(int(i == k) for i in range(value.ngens))
        if not value.is_zero_element(tuple(a - b for a, b in zip(yoneda_element(yoneda_hom(module, X, element), X), element))):
            failures.append(f"element {k} of {module.name}({X.label}) does not survive the Yoneda round trip")
    return failures


def check_yoneda(group: FiniteGroup, rng: random.Random) -> list[str]:
    failures = []
    for module in module_pool(group):
        for X in _orbits(group):
            failures.extend(yoneda_failures(module, X))
    return failures


def mutation_failures(module: MackeyModule) -> tuple[int, int]:
    """
    Perturb each stored matrix by one unit in one entry; count (tried, detected).

    Perturbations that vanish in the target level are not mutations and are skipped.
    """
    tried = detected = 0
    for kind, key, source, target, matrix in module.structure_maps():
        if not matrix.rows or not matrix.cols:
            continue
        perturbed = matrix.with_entry(0, 0, matrix[0, 0] + 1)
        if module.levels[target].maps_equal(perturbed, matrix):
            continue
        tried += 1
        mutated = module.replaced(kind, key, perturbed)
        if not check_axioms(mutated).passed:
            detected += 1
    return tried, detected


def check_axiom_closure(group: FiniteGroup, rng: random.Random) -> list[str]:
    failures = []
    for module in module_pool(group):
        report = check_axioms(module)
        failures.extend(f"{module.name}: {f}" for f in report.failures)
    for module in module_pool(group):
        tried, detected = mutation_failures(module)
        if tried != detected:
            failures.append(f"{module.name}: {tried - detected} of {tried} mutations went undetected")
    return failures


def check_homological_engine(group: FiniteGroup, rng: random.Random) -> list[str]:
    failures = []
    pool = _small_pool(group)
    orbits = _orbits(group)
    R = pool[0]
    for M in pool:
        resolution = resolve(M, 3)
        failures.extend(f"resolution of {M.name}: {f}" for f in resolution.failures)
        for N in pool:
            groups = ext_groups(M, N, 1, resolution=resolve(M, 2))
            other = ext_groups(M, N, 1, seed=rng.randrange(1 << 30))
            if [g.invariants for g in groups] != [g.invariants for g in other]:
                failures.append(f"Ext({M.name}, {N.name}) depends on the resolution")
            if groups[0].invariants != hom(M, N).invariants:
                failures.append(f"Ext^0({M.name}, {N.name}) differs from hom")
            boxed = box_modules(M, N)
            tor0 = tor_modules(M, N, 0, resolution=resolve(M, 1))[0]
            if tor0.level_invariants() != boxed.level_invariants():
                failures.append(f"Tor_0({M.name}, {N.name}) differs from the box product")
            for X in orbits:
                if box_direct_oracle(M, N, X).invariants != boxed.evaluate(X).invariants:
                    failures.append(f"box({M.name}, {N.name}) differs from the coequalizer at {X.label}")
            if boxed.level_invariants() != box_modules(N, M).level_invariants():
                failures.append(f"box({M.name}, {N.name}) is not symmetric")
        if box_modules(R, M).level_invariants() != M.level_invariants():
            failures.append(f"R is not a unit for {M.name}")
    A, B, C = pool[1], pool[2], pool[3]
    left = box_modules(box_modules(A, B), C).level_invariants()
    right = box_modules(A, box_modules(B, C)).level_invariants()
    if left != right:
        failures.append(f"box is not associative on {A.name}, {B.name}, {C.name}")
    for X in orbits:
        for Y in orbits:
            boxed = box_modules(representable(group, X), representable(group, Y))
            if boxed.level_invariants() != representable(group, product(X, Y)).level_invariants():
                failures.append(f"R_X [] R_Y differs from R_(X*Y) for {X.label}, {Y.label}")
    for X in orbits[:2]:
        failures.extend(shift_adjunction_check(pool[2], pool[3], X))
    return failures


def _index_three_subgroups(group: FiniteGroup):
    return [H for H in group.lattice.representatives if H.order < group.order and group.order // H.order <= 3]


def draw_pairs(rng: random.Random, left: int, right: int, count: int) -> list[tuple[int, int]]:
    """
    ``count`` distinct index pairs from left x right, or all of them when there are fewer.
    """
    total = left * right
    if total <= count:
        return [(i, j) for i in range(left) for j in range(right)]
    return sorted(divmod(k, right) for k in rng.sample(range(total), count))


def adjunction_pairs(group: FiniteGroup, subgroup: Subgroup, rng: random.Random) -> list[tuple[MackeyModule, MackeyModule]]:
    """
    Seeded (M over the subgroup, N over the group) pairs for the change-of-group checks.
    """
    small, _ = group.subgroup_as_group(subgroup)
    small_pool, big_pool = module_pool(small), module_pool(group)
    return [(small_pool[i], big_pool[j]) for i, j in draw_pairs(rng, len(small_pool), len(big_pool), ADJUNCTION_PAIRS)]


def check_change_of_group(group: FiniteGroup, rng: random.Random) -> list[str]:
    failures = []
    for H in _index_three_subgroups(group):
        small, _ = group.subgroup_as_group(H)
        for M in module_pool(small):
            expected = induced_level_ranks(M, group, H)
            if induce_module(M, group, H).level_invariants() != expected:
                failures.append(f"Ind({M.name}) from {H.label} has the wrong levels")
        pairs = adjunction_pairs(group, H, rng)
        logger.debug("change of group over %s: %d pairs", H.label, len(pairs))
        for M, N in pairs:
            failures.extend(f"{H.label}: {f}" for f in induction_adjunction_check(M, N, H))
            if not frobenius_check(M, N, H):
                failures.append(f"Frobenius isomorphism fails for {M.name}, {N.name} over {H.label}")
    return failures


def check_degeneration(group: FiniteGroup, rng: random.Random) -> list[str]:
    failures = []
    pool = _small_pool(group)
    for X in _orbits(group):
        P = representable(group, X)
        for N in pool:
            page = uct_e2(P, N, 2)
            if not page.concentrated_in_zero() or page.invariants(0, 0) != hom(P, N).invariants:
                failures.append(f"UCT page for R_{X.label}, {N.name} is not hom in column 0")
        for Y in _orbits(group):
            page = kunneth_e2(P, representable(group, Y), 1)
            top = representable(group, product(X, Y)).level_at(group.whole).invariants
            if page.invariants(0, 0) != top or not page.concentrated_in_zero():
                failures.append(f"Kunneth page for R_{X.label}, R_{Y.label} differs from R_(X*Y)")
    for module in module_pool(group):
        if not vanishing_check(module).consistent:
            failures.append(f"vanishing check inconsistent for {module.name}")
    trivial = preset("1")
    R1 = representation_module(trivial)
    for n in (2, 3, 4):
        Zn = torsion_quotient(R1, n)
        groups = ext_groups(Zn, R1, 3)
        if groups[1].invariants != (0, (n,)) or any(not g.is_trivial() for g in groups[2:]):
            failures.append(f"Ext(Z/{n}, Z) over the trivial group is not classical")
        for m in (2, 3, 6):
            Zm = torsion_quotient(R1, m)
            tors = tor_modules(Zn, Zm, 2)
            d = gcd(n, m)
            expected = (0, (d,)) if d > 1 else (0, ())
            if tors[1].levels[0].invariants != expected or not tors[2].is_zero():
                failures.append(f"Tor(Z/{n}, Z/{m}) over the trivial group is not classical")
    return failures


def invariant_summary(group: FiniteGroup) -> dict:
    """
    Isomorphism-invariant outputs keyed by canonical subgroup element sets.
    """
    lattice = group.lattice
    canonical = [cls.canonical.elements for cls in lattice.classes]
    summary: dict = {}
    R = representation_module(group)
    free_orbit = coset_space(group, group.trivial)
    modules = [R, representable(group, free_orbit), cokernel(counit(group, free_orbit)).module, torsion_quotient(R, 2)]
    for k, module in enumerate(modules):
        summary[f"levels{k}"] = sorted(zip(canonical, module.level_invariants()))
    summary["ext"] = sorted((key, g.invariants) for key, g in ext(modules[3], modules[2], 2).cells.items())
    summary["tor"] = sorted((key, g.invariants) for key, g in tor(modules[2], modules[3], 1).cells.items())
    summary["uct"] = sorted(uct_e2(modules[2], R, 2).cells.items())
    summary["kunneth"] = sorted(kunneth_e2(modules[2], modules[2], 1).cells.items())
    summary["bouc"] = sorted(
        (canonical[X.orbits[0].class_index], canonical[Y.orbits[0].class_index], len(hom_basis(X, Y)))
        for X in _orbits(group)
        for Y in _orbits(group)
    )
    return summary


def check_convention_independence(group: FiniteGroup, rng: random.Random) -> list[str]:
    moved = group.with_choices(rng.randrange(1 << 30))
    before, after = invariant_summary(group), invariant_summary(moved)
    return [f"{key} changes under randomized choices" for key in before if before[key] != after.get(key)]


CHECKS: dict[str, Callable[[FiniteGroup, random.Random], list[str]]] = {
    "characters": check_characters,
    "induction theorems": check_induction_theorems,
    "bouc category": check_bouc_category,
    "two-path composition": check_two_path,
    "yoneda": check_yoneda,
    "axiom closure": check_axiom_closure,
    "homological engine": check_homological_engine,
    "change of group": check_change_of_group,
    "degeneration": check_degeneration,
    "convention independence": check_convention_independence,
}


def _run_group(spec: str, seed: int, checks: list[str], max_order: int) -> list[CaseResult]:
    group = preset(spec, max_order=max_order)
    results = []
    for name in checks:
        rng = random.Random(f"{seed}|{spec}|{name}")
        result = CaseResult(name, group.name)
        try:
            result.failures = CHECKS[name](group, rng)
        except Exception as exc:
            logger.exception("check %s on %s raised", name, spec)
            result.failures = [f"raised {type(exc).__name__}: {exc}"]
        logger.info("%s on %s: %s", name, spec, "ok" if result.passed else "failed")
        results.append(result)
    return results


def run_corpus(
    groups: tuple[str, ...] | list[str] = PRESETS,
    seed: int = 0,
    threads: int = 1,
    checks: list[str] | None = None,
    max_order: int = 64,
    progress: bool = True,
) -> CorpusReport:
    """
    Run every check on every group, ``threads`` groups at a time.
    """
    checks = list(checks or CHECKS)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise InputError(f"Unknown corpus checks: {', '.join(unknown)}.")
    results: dict[str, list[CaseResult]] = {}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {spec: pool.submit(_run_group, spec, seed, checks, max_order) for spec in groups}
        iterator = futures.items()
        if progress and tqdm is not None:
            iterator = tqdm(iterator, total=len(futures), desc="corpus", unit="group")
        for spec, future in iterator:
            results[spec] = future.result()
    ordered = [r for spec in groups for r in results[spec]]
    return CorpusReport(seed, ordered)

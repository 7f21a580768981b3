"""
Finitely presented Mackey modules over a Green functor, in the subgroup picture.

A module stores one presented abelian group per subgroup class, in diagonal
form, together with:

- ``restrictions[(c, l)]``: M[C] -> M[D], where C is the representative of
  class c, L is the l-th representative of the C-classes of subgroups of C,
  D is the representative of L's class and L = t_L D t_L^-1. The stored map
  is con(t_L^-1) res^C_L.
- ``inductions[(c, l)]``: M[D] -> M[C], the map ind^C_L con(t_L).
- ``conjugations[c][n]``: con_n on M[C] for the Weyl generators n of C.
- ``actions[c][k]``: the action of the k-th basis element of R(C) on M[C].

Values at an arbitrary subgroup S are expressed in the coordinates of the
class representative through the transporter t_S. All other structure maps
are derived from the stored ones.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InputError, VerificationError
from .green import GreenFunctor, representation_functor
from .groups import FiniteGroup, Subgroup, double_cosets
from .gsets import GMap, GSet, product, product_projections, pullback
from .zlinalg import (
    ColumnEchelon,
    IntMatrix,
    PresentedAbGroup,
    Subquotient,
    lattice_basis,
    solve_lattice,
)

logger = logging.getLogger(__name__)


def _relation_vectors(level: PresentedAbGroup) -> list[tuple[int, ...]]:
    n = level.ngens
    return [tuple(d if i == k else 0 for i in range(n)) for k, d in enumerate(level.moduli) if d]


def _accumulate(terms: Iterable[IntMatrix], rows: int, cols: int) -> IntMatrix:
    total = IntMatrix.zeros(rows, cols)
    for term in terms:
        total = total + term
    return total


@dataclass
class AxiomReport:
    """
    Outcome of check_axioms: the failed identities, if any.
    """

    module: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, description: str):
        self.checked += 1
        if not ok:
            self.failures.append(description)

    def raise_on_failure(self):
        if self.failures:
            raise VerificationError(f"Module {self.module} violates the Mackey module axioms.", self.failures)


class MackeyModule:
    def __init__(
        self,
        group: FiniteGroup,
        levels: Sequence[PresentedAbGroup],
        restrictions: Mapping[tuple[int, int], IntMatrix],
        inductions: Mapping[tuple[int, int], IntMatrix],
        conjugations: Mapping[int, Mapping[int, IntMatrix]],
        actions: Mapping[int, Sequence[IntMatrix]],
        name: str = "M",
        functor: GreenFunctor | None = None,
    ):
        self.group = group
        self.functor = functor or representation_functor(group)
        self.lattice = group.lattice
        self.name = name
        if len(levels) != len(self.lattice.classes):
            raise InputError(f"{name}: {len(levels)} levels for {len(self.lattice.classes)} subgroup classes.")
        to_new, from_new, normalized = [], [], []
        for level in levels:
            moduli = level.moduli
            if moduli is not None and 1 not in moduli:
                identity = IntMatrix.identity(level.ngens)
                normalized.append(PresentedAbGroup.from_moduli(moduli))
                to_new.append(identity)
                from_new.append(identity)
            else:
                diagonal = level.diagonalized()
                normalized.append(diagonal.group)
                to_new.append(diagonal.to_new)
                from_new.append(diagonal.from_new)
        self.levels = tuple(normalized)

        def transport(matrix: IntMatrix, source: int, target: int) -> IntMatrix:
            moved = to_new[target] @ matrix @ from_new[source]
            return self.levels[target].reduce_matrix(moved)

        self.restrictions: dict[tuple[int, int], IntMatrix] = {}
        self.inductions: dict[tuple[int, int], IntMatrix] = {}
        for c, cls in enumerate(self.lattice.classes):
            local = self.lattice.local_classes(cls.representative)
            for l, L in enumerate(local.representatives):
                d = self.lattice.class_index(L)
                self.restrictions[(c, l)] = transport(self._lookup(restrictions, (c, l), "restriction"), c, d)
                self.inductions[(c, l)] = transport(self._lookup(inductions, (c, l), "induction"), d, c)
        self.conjugations: dict[int, dict[int, IntMatrix]] = {}
        self.actions: dict[int, tuple[IntMatrix, ...]] = {}
        for c, cls in enumerate(self.lattice.classes):
            given = conjugations.get(c, {})
            self.conjugations[c] = {
                n: transport(self._lookup(given, n, f"conjugation at class {c}"), c, c)
                for n in self.lattice.weyl_generators(c)
            }
            rank = self.functor.rank(cls.representative)
            matrices = actions.get(c, ())
            if len(matrices) != rank:
                raise InputError(f"{name}: {len(matrices)} action matrices at class {c}, expected {rank}.")
            self.actions[c] = tuple(transport(m, c, c) for m in matrices)
        self._weyl_tables: dict[int, dict[int, IntMatrix]] = {}
        self._operator_cache: dict[tuple[int, int], tuple[GSet, GSet, list[IntMatrix]]] = {}

    def _lookup(self, mapping, key, what):
        try:
            return mapping[key]
        except KeyError:
            raise InputError(f"{self.name}: missing {what} matrix {key}.") from None

    def __repr__(self):
        return f"MackeyModule({self.name}, {self.describe()})"

    # -- levels ------------------------------------------------------------

    def ngens(self, c: int) -> int:
        return self.levels[c].ngens

    def class_of(self, subgroup: Subgroup) -> int:
        return self.lattice.class_index(subgroup)

    def level_at(self, subgroup: Subgroup) -> PresentedAbGroup:
        return self.levels[self.class_of(subgroup)]

    def is_zero(self) -> bool:
        return all(level.ngens == 0 for level in self.levels)

    def describe(self) -> str:
        parts = []
        for cls, level in zip(self.lattice.classes, self.levels):
            parts.append(f"{cls.representative.label}: {level.describe()}")
        return "; ".join(parts)

    def level_invariants(self) -> list[tuple[int, tuple[int, ...]]]:
        return [level.invariants for level in self.levels]

    # -- derived structure maps ----------------------------------------------

    def weyl_table(self, c: int) -> dict[int, IntMatrix]:
        """
        con_n on M[C] for every n in the normalizer of C, built from the
        stored generators by breadth-first search.
        """
        if c not in self._weyl_tables:
            rep = self.lattice.classes[c].representative
            level = self.levels[c]
            identity = IntMatrix.identity(level.ngens)
            table = {x: identity for x in rep.elements}
            frontier = list(rep.elements)
            while frontier:
                nxt = []
                for x in frontier:
                    for s, matrix in self.conjugations[c].items():
                        y = self.group.mul(s, x)
                        if y not in table:
                            table[y] = level.reduce_matrix(matrix @ table[x])
                            nxt.append(y)
                frontier = nxt
            self._weyl_tables[c] = table
        return self._weyl_tables[c]

    def weyl(self, c: int, n: int) -> IntMatrix:
        try:
            return self.weyl_table(c)[n]
        except KeyError:
            raise ValueError(f"Element {n} does not normalize class {c}.") from None

    def con(self, g: int, subgroup: Subgroup) -> IntMatrix:
        """
        con_g: M[S] -> M[g S g^-1].
        """
        group = self.group
        c = self.class_of(subgroup)
        image = subgroup.conjugate(g)
        n = group.product(group.inv(self.lattice.transporter(image)), g, self.lattice.transporter(subgroup))
        return self.weyl(c, n)

    def _locate(self, ambient: Subgroup, subgroup: Subgroup):
        group = self.group
        c = self.class_of(ambient)
        rep = self.lattice.classes[c].representative
        t = self.lattice.transporter(ambient)
        inner = subgroup.conjugate(group.inv(t))
        if not inner.is_subgroup_of(rep):
            raise InputError(f"{subgroup.label} is not contained in {ambient.label}.")
        l, h = self.lattice.local_classes(rep).locate(inner)
        L = self.lattice.local_classes(rep).representatives[l]
        d = self.lattice.class_index(L)
        n = group.product(group.inv(self.lattice.transporter(subgroup)), t, h, self.lattice.transporter(L))
        return c, l, d, n

    def res(self, ambient: Subgroup, subgroup: Subgroup) -> IntMatrix:
        """
        res^ambient_subgroup: M[ambient] -> M[subgroup].
        """
        c, l, d, n = self._locate(ambient, subgroup)
        return self.levels[d].reduce_matrix(self.weyl(d, n) @ self.restrictions[(c, l)])

    def ind(self, subgroup: Subgroup, ambient: Subgroup) -> IntMatrix:
        """
        ind_subgroup^ambient: M[subgroup] -> M[ambient].
        """
        c, l, d, n = self._locate(ambient, subgroup)
        return self.levels[c].reduce_matrix(self.inductions[(c, l)] @ self.weyl(d, self.group.inv(n)))

    def act(self, subgroup: Subgroup, element: Sequence[int]) -> IntMatrix:
        """
        The action of an element of R(subgroup) on M[subgroup].
        """
        c = self.class_of(subgroup)
        rep = self.lattice.classes[c].representative
        t = self.lattice.transporter(subgroup)
        if t:
            element = self.functor.contravariant_orbit(rep, subgroup, self.group.inv(t)).apply(element)
        n = self.ngens(c)
        terms = [matrix.scale(x) for x, matrix in zip(element, self.actions[c]) if x]
        return self.levels[c].reduce_matrix(_accumulate(terms, n, n))

    def contravariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix:
        """
        M(G/target) -> M(G/source) along eA -> gB.
        """
        return self.level_at(source).reduce_matrix(self.res(target.conjugate(g), source) @ self.con(g, target))

    def covariant_orbit(self, source: Subgroup, target: Subgroup, g: int) -> IntMatrix:
        """
        M(G/source) -> M(G/target) along eA -> gB.
        """
        moved = target.conjugate(g)
        return self.level_at(target).reduce_matrix(self.con(self.group.inv(g), moved) @ self.ind(source, moved))

    # -- G-set picture -------------------------------------------------------

    def offsets(self, gset: GSet) -> list[int]:
        offsets = [0]
        for orbit in gset.orbits:
            offsets.append(offsets[-1] + self.ngens(orbit.class_index))
        return offsets

    def evaluate(self, gset: GSet) -> PresentedAbGroup:
        return PresentedAbGroup.direct_sum([self.levels[orbit.class_index] for orbit in gset.orbits])

    def contravariant(self, f: GMap) -> IntMatrix:
        source, target = f.source, f.target
        src, tgt = self.offsets(source), self.offsets(target)
        rows = [[0] * tgt[-1] for _ in range(src[-1])]
        for i, orbit in enumerate(source.orbits):
            j, g = f.orbit_data(i)
            block = self.contravariant_orbit(orbit.stabilizer, target.orbits[j].stabilizer, g)
            for r in range(block.rows):
                for k in range(block.cols):
                    rows[src[i] + r][tgt[j] + k] += block[r, k]
        return IntMatrix.from_rows(rows, tgt[-1])

    def covariant(self, f: GMap) -> IntMatrix:
        source, target = f.source, f.target
        src, tgt = self.offsets(source), self.offsets(target)
        rows = [[0] * src[-1] for _ in range(tgt[-1])]
        for i, orbit in enumerate(source.orbits):
            j, g = f.orbit_data(i)
            block = self.covariant_orbit(orbit.stabilizer, target.orbits[j].stabilizer, g)
            for r in range(block.rows):
                for k in range(block.cols):
                    rows[tgt[j] + r][src[i] + k] += block[r, k]
        return self.evaluate(target).reduce_matrix(IntMatrix.from_rows(rows, src[-1]))

    def value_action(self, gset: GSet, element: Sequence[int]) -> IntMatrix:
        """
        The action of an element of R(X) on M(X), orbit by orbit.
        """
        offsets = self.functor.offsets(gset)
        blocks = [
            self.act(orbit.stabilizer, element[offsets[i]:offsets[i + 1]])
            for i, orbit in enumerate(gset.orbits)
        ]
        return IntMatrix.block_diagonal(blocks)

    def bouc_operators(self, target: GSet, source: GSet) -> list[IntMatrix]:
        """
        For each basis element a of R(target x source), the map M(source) -> M(target)
        of the module viewed as a presheaf: m -> M_*(p_target)(a M^*(p_source)(m)).
        """
        key = (id(target), id(source))
        cache = self._operator_cache
        if key not in cache:
            pair = product(target, source)
            to_target, to_source = product_projections(target, source)
            push = self.covariant(to_target)
            pull = self.contravariant(to_source)
            dim = self.functor.dimension(pair)
            reducer = self.evaluate(target)
            operators = [
                reducer.reduce_matrix(push @ self.value_action(pair, tuple(int(i == k) for i in range(dim))) @ pull)
                for k in range(dim)
            ]
            # the G-sets are kept so their ids stay valid
            cache[key] = (target, source, operators)
        return cache[key][2]

    def presheaf_action(self, target: GSet, source: GSet, element: Sequence[int]) -> IntMatrix:
        operators = self.bouc_operators(target, source)
        rows = self.offsets(target)[-1]
        cols = self.offsets(source)[-1]
        terms = [op.scale(x) for x, op in zip(element, operators) if x]
        return self.evaluate(target).reduce_matrix(_accumulate(terms, rows, cols))

    # -- editing -------------------------------------------------------------

    def replaced(self, kind: str, key, matrix: IntMatrix) -> "MackeyModule":
        """
        A copy with one stored structure matrix replaced.
        """
        restrictions = dict(self.restrictions)
        inductions = dict(self.inductions)
        conjugations = {c: dict(maps) for c, maps in self.conjugations.items()}
        actions = {c: list(maps) for c, maps in self.actions.items()}
        if kind == "res":
            restrictions[key] = matrix
        elif kind == "ind":
            inductions[key] = matrix
        elif kind == "con":
            c, n = key
            conjugations[c][n] = matrix
        elif kind == "act":
            c, k = key
            actions[c][k] = matrix
        else:
            raise ValueError(f"Unknown structure map kind {kind!r}.")
        return MackeyModule(
            self.group, self.levels, restrictions, inductions, conjugations, actions, self.name, self.functor
        )

    def structure_maps(self) -> list[tuple[str, object, int, int, IntMatrix]]:
        """
        Every stored matrix as (kind, key, source class, target class, matrix).
        """
        result = []
        for (c, l), matrix in self.restrictions.items():
            d = self.lattice.class_index(self.lattice.local_classes(self.lattice.classes[c].representative).representatives[l])
            result.append(("res", (c, l), c, d, matrix))
        for (c, l), matrix in self.inductions.items():
            d = self.lattice.class_index(self.lattice.local_classes(self.lattice.classes[c].representative).representatives[l])
            result.append(("ind", (c, l), d, c, matrix))
        for c, maps in self.conjugations.items():
            for n, matrix in maps.items():
                result.append(("con", (c, n), c, c, matrix))
        for c, maps in self.actions.items():
            for k, matrix in enumerate(maps):
                result.append(("act", (c, k), c, c, matrix))
        return result


def check_axioms(module: MackeyModule) -> AxiomReport:
    """
    Check every Mackey module identity on all class representatives.
    """
    report = AxiomReport(module.name)
    group = module.group
    lattice = module.lattice
    functor = module.functor

    def equal(first: IntMatrix, second: IntMatrix, subgroup: Subgroup) -> bool:
        return module.level_at(subgroup).maps_equal(first, second)

    for kind, key, source, target, matrix in module.structure_maps():
        relations = _relation_vectors(module.levels[source])
        ok = all(module.levels[target].is_zero_element(matrix.apply(r)) for r in relations)
        report.record(ok, f"{kind}{key} does not respect the relations of its source")

    for c, cls in enumerate(lattice.classes):
        H = cls.representative
        level = module.levels[c]
        table = module.weyl_table(c)
        for x, matrix in table.items():
            for s, gen in module.conjugations[c].items():
                y = group.mul(s, x)
                report.record(
                    level.maps_equal(table[y], gen @ matrix),
                    f"conjugation: con_{s} con_{x} != con_{y} on M[{H.label}]",
                )
    if report.failures:
        return report

    for c, cls in enumerate(lattice.classes):
        H = cls.representative
        n = module.ngens(c)
        identity = IntMatrix.identity(n)
        report.record(equal(module.res(H, H), identity, H), f"identity: res^{H.label}_{H.label} != id")
        report.record(equal(module.ind(H, H), identity, H), f"identity: ind^{H.label}_{H.label} != id")
        local = lattice.local_classes(H).representatives
        for K in local:
            for L in lattice.local_classes(K).representatives:
                report.record(
                    equal(module.res(K, L) @ module.res(H, K), module.res(H, L), L),
                    f"transitivity: res^{K.label}_{L.label} res^{H.label}_{K.label} != res^{H.label}_{L.label}",
                )
                report.record(
                    equal(module.ind(K, H) @ module.ind(L, K), module.ind(L, H), H),
                    f"transitivity: ind^{H.label}_{K.label} ind^{K.label}_{L.label} != ind^{H.label}_{L.label}",
                )
            for g in group.generators:
                gH, gK = H.conjugate(g), K.conjugate(g)
                report.record(
                    equal(module.con(g, K) @ module.res(H, K), module.res(gH, gK) @ module.con(g, H), gK),
                    f"conjugation: con_{g} res^{H.label}_{K.label} != res con_{g}",
                )
                report.record(
                    equal(module.con(g, H) @ module.ind(K, H), module.ind(gK, gH) @ module.con(g, K), gH),
                    f"conjugation: con_{g} ind_{K.label}^{H.label} != ind con_{g}",
                )
        for K in local:
            for L in local:
                lhs = module.res(H, L) @ module.ind(K, H)
                terms = []
                for x in double_cosets(group, L, K, H):
                    inner_K = K.intersection(L.conjugate(group.inv(x)))
                    inner_L = L.intersection(K.conjugate(x))
                    terms.append(module.ind(inner_L, L) @ module.con(x, inner_K) @ module.res(K, inner_K))
                rhs = _accumulate(terms, lhs.rows, lhs.cols)
                report.record(
                    equal(lhs, rhs, L),
                    f"Mackey formula: res^{H.label}_{L.label} ind_{K.label}^{H.label} in {module.name}",
                )

        rank = functor.rank(H)
        basis = [tuple(int(i == k) for i in range(rank)) for k in range(rank)]
        report.record(equal(module.act(H, functor.unit(H)), identity, H), f"action: unit of R({H.label}) is not the identity")
        for a in basis:
            for b in basis:
                report.record(
                    equal(module.act(H, functor.product(H, a, b)), module.act(H, a) @ module.act(H, b), H),
                    f"action: R({H.label}) does not act associatively",
                )
        for K in local:
            restrict = functor.contravariant_orbit(K, H, 0)
            induce = functor.covariant_orbit(K, H, 0)
            for a in basis:
                ra = restrict.apply(a)
                report.record(
                    equal(module.res(H, K) @ module.act(H, a), module.act(K, ra) @ module.res(H, K), K),
                    f"module: res^{H.label}_{K.label}(r m) != res(r) res(m)",
                )
                report.record(
                    equal(module.ind(K, H) @ module.act(K, ra), module.act(H, a) @ module.ind(K, H), H),
                    f"Frobenius: ind_{K.label}^{H.label}(res(r) m) != r ind(m)",
                )
            for k in range(functor.rank(K)):
                b = tuple(int(i == k) for i in range(functor.rank(K)))
                report.record(
                    equal(module.ind(K, H) @ module.act(K, b) @ module.res(H, K), module.act(H, induce.apply(b)), H),
                    f"Frobenius: ind_{K.label}^{H.label}(r res(m)) != ind(r) m",
                )
        for g in group.generators:
            gH = H.conjugate(g)
            move = functor.contravariant_orbit(gH, H, g)
            for a in basis:
                report.record(
                    equal(module.con(g, H) @ module.act(H, a), module.act(gH, move.apply(a)) @ module.con(g, H), gH),
                    f"module: con_{g}(r m) != con(r) con(m) at {H.label}",
                )
    logger.debug("check_axioms %s: %d identities, %d failures", module.name, report.checked, len(report.failures))
    return report


# -- homomorphisms -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModuleHom:
    """
    A module homomorphism given by one matrix per subgroup class.
    """

    source: MackeyModule
    target: MackeyModule
    components: tuple[IntMatrix, ...]

    @classmethod
    def identity(cls, module: MackeyModule) -> "ModuleHom":
        return cls(module, module, tuple(IntMatrix.identity(level.ngens) for level in module.levels))

    @classmethod
    def zero(cls, source: MackeyModule, target: MackeyModule) -> "ModuleHom":
        return cls(
            source,
            target,
            tuple(IntMatrix.zeros(t.ngens, s.ngens) for s, t in zip(source.levels, target.levels)),
        )

    def compose(self, first: "ModuleHom") -> "ModuleHom":
        """
        self after first.
        """
        return ModuleHom(
            first.source,
            self.target,
            tuple(
                level.reduce_matrix(a @ b)
                for level, a, b in zip(self.target.levels, self.components, first.components)
            ),
        )

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        return ModuleHom(self.source, self.target, tuple(a + b for a, b in zip(self.components, other.components)))

    def scale(self, factor: int) -> "ModuleHom":
        return ModuleHom(self.source, self.target, tuple(a.scale(factor) for a in self.components))

    def equals(self, other: "ModuleHom") -> bool:
        return all(
            level.maps_equal(a, b) for level, a, b in zip(self.target.levels, self.components, other.components)
        )

    def is_zero(self) -> bool:
        return self.equals(ModuleHom.zero(self.source, self.target))

    def at(self, gset: GSet) -> IntMatrix:
        """
        The map M(X) -> N(X).
        """
        return IntMatrix.block_diagonal([self.components[orbit.class_index] for orbit in gset.orbits])

    def naturality_failures(self) -> list[str]:
        failures = []
        source, target = self.source, self.target
        for (kind, key, c1, c2, f_m), (_, _, _, _, f_n) in zip(source.structure_maps(), target.structure_maps()):
            lhs = self.components[c2] @ f_m
            rhs = f_n @ self.components[c1]
            if not target.levels[c2].maps_equal(lhs, rhs):
                failures.append(f"{kind}{key} does not commute with the map")
        return failures


def check_compatible(first: MackeyModule, second: MackeyModule):
    """
    Raise InputError unless both modules live over the same group and Green functor.
    """
    same = first.group is second.group or (
        first.group.table == second.group.table and first.group.policy.seed == second.group.policy.seed
    )
    if not same:
        raise InputError(f"{first.name} and {second.name} are modules over different groups.")
    if first.functor.kind != second.functor.kind:
        raise InputError(
            f"{first.name} is a module over the {first.functor.kind} functor but "
            f"{second.name} is a module over the {second.functor.kind} functor."
        )


class HomResult:
    """
    The group of module homomorphisms M -> N with explicit generators.
    """

    def __init__(self, source: MackeyModule, target: MackeyModule, subquotient: Subquotient, offsets: list[int]):
        self.source = source
        self.target = target
        self.group = subquotient.group
        self._subquotient = subquotient
        self._offsets = offsets
        self.generators = [self._unflatten(vector) for vector in subquotient.generators]

    def _unflatten(self, vector: Sequence[int]) -> ModuleHom:
        components = []
        for c, (s, t) in enumerate(zip(self.source.levels, self.target.levels)):
            start = self._offsets[c]
            a = s.ngens
            rows = [vector[start + j * a:start + (j + 1) * a] for j in range(t.ngens)]
            components.append(IntMatrix.from_rows(rows, a))
        return ModuleHom(self.source, self.target, tuple(components))

    def coordinates(self, phi: ModuleHom) -> tuple[int, ...]:
        flat = [x for component in phi.components for row in component.entries for x in row]
        return self._subquotient.coordinates(flat)

    def combination(self, coordinates: Sequence[int]) -> ModuleHom:
        result = ModuleHom.zero(self.source, self.target)
        for x, generator in zip(coordinates, self.generators):
            if x:
                result = result + generator.scale(x)
        return result

    @property
    def invariants(self):
        return self.group.invariants


def hom(source: MackeyModule, target: MackeyModule) -> HomResult:
    """
    All module homomorphisms source -> target, solved on all levels at once.
    """
    check_compatible(source, target)
    offsets = [0]
    for s, t in zip(source.levels, target.levels):
        offsets.append(offsets[-1] + s.ngens * t.ngens)
    nvars = offsets[-1]

    def var(c: int, j: int, i: int) -> int:
        return offsets[c] + j * source.ngens(c) + i

    rows: list[list[int]] = []
    moduli: list[int] = []
    for c, (s, t) in enumerate(zip(source.levels, target.levels)):
        for relation in _relation_vectors(s):
            for j in range(t.ngens):
                row = [0] * nvars
                for i, r in enumerate(relation):
                    if r:
                        row[var(c, j, i)] += r
                rows.append(row)
                moduli.append(t.moduli[j])
    for (kind, key, c1, c2, f_m), (_, _, _, _, f_n) in zip(source.structure_maps(), target.structure_maps()):
        a1, a2 = source.ngens(c1), source.ngens(c2)
        b1, b2 = target.ngens(c1), target.ngens(c2)
        for i in range(a1):
            for j in range(b2):
                row = [0] * nvars
                for l in range(a2):
                    if f_m[l, i]:
                        row[var(c2, j, l)] += f_m[l, i]
                for k in range(b1):
                    if f_n[j, k]:
                        row[var(c1, k, i)] -= f_n[j, k]
                if any(row):
                    rows.append(row)
                    moduli.append(target.levels[c2].moduli[j])
    basis = solve_lattice(rows, nvars, moduli)
    zero_generators = []
    for c, (s, t) in enumerate(zip(source.levels, target.levels)):
        for j, d in enumerate(t.moduli):
            if d:
                for i in range(s.ngens):
                    vector = [0] * nvars
                    vector[var(c, j, i)] = d
                    zero_generators.append(vector)
    logger.debug("hom(%s, %s): %d variables, %d conditions", source.name, target.name, nvars, len(rows))
    return HomResult(source, target, Subquotient(basis, zero_generators, nvars), offsets)


# -- submodules and quotients --------------------------------------------------


@dataclass(frozen=True, eq=False)
class Submodule:
    """
    A submodule with its inclusion and a way to express ambient elements in it.
    """

    module: MackeyModule
    inclusion: ModuleHom
    subquotients: tuple[Subquotient, ...]

    def lift(self, c: int, vector: Sequence[int]) -> tuple[int, ...]:
        return self.subquotients[c].coordinates(vector)

    def lift_hom(self, phi: ModuleHom) -> ModuleHom:
        """
        Factor phi: X -> ambient through the inclusion.
        """
        components = []
        for c, matrix in enumerate(phi.components):
            try:
                columns = [self.lift(c, column) for column in matrix.columns()]
            except ValueError:
                raise VerificationError(f"Map does not land in the submodule {self.module.name}.") from None
            components.append(IntMatrix.from_columns(columns, self.module.ngens(c)))
        return ModuleHom(phi.source, self.module, tuple(components))


def submodule_from_lattices(ambient: MackeyModule, lattices: Sequence[Sequence[Sequence[int]]], name: str) -> Submodule:
    """
    The submodule whose level c is the lattice ``lattices[c]`` modulo the relations.

    Every lattice must contain the relations of its level and be closed under
    all structure maps.
    """
    subquotients = []
    for c, level in enumerate(ambient.levels):
        subquotients.append(Subquotient(lattices[c], _relation_vectors(level), level.ngens))

    def restricted(matrix: IntMatrix, source: int, target: int, what: str) -> IntMatrix:
        columns = []
        for vector in subquotients[source].generators:
            try:
                columns.append(subquotients[target].coordinates(matrix.apply(vector)))
            except ValueError:
                raise VerificationError(f"{name}: lattice at class {target} is not closed under {what}.") from None
        return IntMatrix.from_columns(columns, subquotients[target].group.ngens)

    restrictions, inductions, conjugations, actions = {}, {}, {}, {}
    for kind, key, c1, c2, matrix in ambient.structure_maps():
        moved = restricted(matrix, c1, c2, f"{kind}{key}")
        if kind == "res":
            restrictions[key] = moved
        elif kind == "ind":
            inductions[key] = moved
        elif kind == "con":
            conjugations.setdefault(key[0], {})[key[1]] = moved
        else:
            actions.setdefault(key[0], []).append(moved)
    for c in range(len(ambient.levels)):
        actions.setdefault(c, [])
    levels = [sq.group for sq in subquotients]
    module = MackeyModule(
        ambient.group, levels, restrictions, inductions, conjugations, actions, name, ambient.functor
    )
    inclusion = ModuleHom(
        module,
        ambient,
        tuple(
            IntMatrix.from_columns(sq.generators, level.ngens)
            for sq, level in zip(subquotients, ambient.levels)
        ),
    )
    return Submodule(module, inclusion, tuple(subquotients))


def kernel(phi: ModuleHom) -> Submodule:
    source, target = phi.source, phi.target
    lattices = []
    for c, matrix in enumerate(phi.components):
        lattices.append(solve_lattice([list(row) for row in matrix.entries], source.ngens(c), target.levels[c].moduli))
    logger.debug("kernel of a map %s -> %s", source.name, target.name)
    return submodule_from_lattices(source, lattices, f"ker({source.name}->{target.name})")


def image(phi: ModuleHom) -> Submodule:
    target = phi.target
    lattices = []
    for c, matrix in enumerate(phi.components):
        vectors = list(matrix.columns()) + _relation_vectors(target.levels[c])
        lattices.append(lattice_basis(vectors, target.ngens(c)))
    return submodule_from_lattices(target, lattices, f"im({phi.source.name}->{target.name})")


@dataclass(frozen=True, eq=False)
class Quotient:
    module: MackeyModule
    projection: ModuleHom


def quotient_module(ambient: MackeyModule, extra: Sequence[Sequence[Sequence[int]]], name: str) -> Quotient:
    """
    ambient modulo the submodule generated levelwise by ``extra``, which must
    already be closed under all structure maps.
    """
    diagonals = []
    for c, level in enumerate(ambient.levels):
        columns = _relation_vectors(level) + [tuple(v) for v in extra[c]]
        diagonals.append(PresentedAbGroup(level.ngens, IntMatrix.from_columns(columns, level.ngens)).diagonalized())

    def moved(matrix: IntMatrix, source: int, target: int) -> IntMatrix:
        return diagonals[target].to_new @ matrix @ diagonals[source].from_new

    restrictions, inductions, conjugations, actions = {}, {}, {}, {}
    for kind, key, c1, c2, matrix in ambient.structure_maps():
        new = moved(matrix, c1, c2)
        if kind == "res":
            restrictions[key] = new
        elif kind == "ind":
            inductions[key] = new
        elif kind == "con":
            conjugations.setdefault(key[0], {})[key[1]] = new
        else:
            actions.setdefault(key[0], []).append(new)
    for c in range(len(ambient.levels)):
        actions.setdefault(c, [])
    module = MackeyModule(
        ambient.group,
        [d.group for d in diagonals],
        restrictions,
        inductions,
        conjugations,
        actions,
        name,
        ambient.functor,
    )
    projection = ModuleHom(
        ambient, module, tuple(d.group.reduce_matrix(d.to_new) for d in diagonals)
    )
    return Quotient(module, projection)


def cokernel(phi: ModuleHom) -> Quotient:
    extra = [list(matrix.columns()) for matrix in phi.components]
    return quotient_module(phi.target, extra, f"coker({phi.source.name}->{phi.target.name})")


def generated_lattices(module: MackeyModule, elements: Mapping[int, Iterable[Sequence[int]]]) -> list[list[tuple[int, ...]]]:
    """
    Per class, a lattice basis of the submodule generated by ``elements``
    together with the relations.
    """
    lattices = []
    for c, level in enumerate(module.levels):
        vectors = [tuple(v) for v in elements.get(c, ())] + _relation_vectors(level)
        lattices.append(lattice_basis(vectors, level.ngens))
    maps = module.structure_maps()
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        echelons = [ColumnEchelon(lattice, module.ngens(c), track=False) for c, lattice in enumerate(lattices)]
        additions: list[list[tuple[int, ...]]] = [[] for _ in lattices]
        for kind, key, c1, c2, matrix in maps:
            for vector in lattices[c1]:
                image_vector = matrix.apply(vector)
                if not echelons[c2].contains(image_vector):
                    additions[c2].append(image_vector)
        for c, extra in enumerate(additions):
            if extra:
                changed = True
                lattices[c] = lattice_basis(list(lattices[c]) + extra, module.ngens(c))
    logger.debug("submodule closure of %s: %d rounds", module.name, rounds)
    return lattices


def submodule_generated(module: MackeyModule, elements: Mapping[int, Iterable[Sequence[int]]], name: str | None = None) -> Submodule:
    """
    The smallest submodule containing the given elements (class index -> vectors).

    The closure runs over restrictions as well as inductions, conjugations and
    the R-action.
    """
    lattices = generated_lattices(module, elements)
    return submodule_from_lattices(module, lattices, name or f"<gens in {module.name}>")


def direct_sum(modules: Sequence[MackeyModule], name: str | None = None) -> MackeyModule:
    if not modules:
        raise InputError("direct_sum needs at least one module; use zero_module for the empty sum.")
    first = modules[0]
    for other in modules[1:]:
        check_compatible(first, other)
    levels = [PresentedAbGroup.direct_sum([m.levels[c] for m in modules]) for c in range(len(first.levels))]
    restrictions, inductions, conjugations, actions = {}, {}, {}, {}
    per_module = [m.structure_maps() for m in modules]
    for entries in zip(*per_module):
        kind, key = entries[0][0], entries[0][1]
        block = IntMatrix.block_diagonal([entry[4] for entry in entries])
        if kind == "res":
            restrictions[key] = block
        elif kind == "ind":
            inductions[key] = block
        elif kind == "con":
            conjugations.setdefault(key[0], {})[key[1]] = block
        else:
            actions.setdefault(key[0], []).append(block)
    for c in range(len(levels)):
        actions.setdefault(c, [])
    return MackeyModule(
        first.group,
        levels,
        restrictions,
        inductions,
        conjugations,
        actions,
        name or " + ".join(m.name for m in modules),
        first.functor,
    )


def module_sum(modules: Sequence[MackeyModule], group: FiniteGroup, name: str | None = None) -> MackeyModule:
    """
    direct_sum, with the zero module for an empty list.
    """
    if not modules:
        return zero_module(group, name or "0")
    if len(modules) == 1 and name is None:
        return modules[0]
    return direct_sum(modules, name)


def direct_sum_maps(
    sources: Sequence[MackeyModule],
    targets: Sequence[MackeyModule],
    blocks: Callable[[int, int], ModuleHom | None],
    source: MackeyModule,
    target: MackeyModule,
) -> ModuleHom:
    """
    The map source -> target between direct sums of ``sources`` and
    ``targets`` whose (j, i) block is blocks(j, i) (None for zero).
    """
    components = []
    for c in range(len(source.levels)):
        rows = [[0] * source.ngens(c) for _ in range(target.ngens(c))]
        row_offset = 0
        for j, t in enumerate(targets):
            col_offset = 0
            for i, s in enumerate(sources):
                block = blocks(j, i)
                if block is not None:
                    matrix = block.components[c]
                    for r in range(matrix.rows):
                        for k in range(matrix.cols):
                            rows[row_offset + r][col_offset + k] = matrix[r, k]
                col_offset += s.ngens(c)
            row_offset += t.ngens(c)
        components.append(target.levels[c].reduce_matrix(IntMatrix.from_rows(rows, source.ngens(c))))
    return ModuleHom(source, target, tuple(components))


def zero_module(group: FiniteGroup, name: str = "0", functor: GreenFunctor | None = None) -> MackeyModule:
    functor = functor or representation_functor(group)
    lattice = group.lattice
    empty = IntMatrix.zeros(0, 0)
    restrictions, inductions, conjugations, actions = {}, {}, {}, {}
    for c, cls in enumerate(lattice.classes):
        for l in range(len(lattice.local_classes(cls.representative).representatives)):
            restrictions[(c, l)] = empty
            inductions[(c, l)] = empty
        conjugations[c] = {n: empty for n in lattice.weyl_generators(c)}
        actions[c] = [empty] * functor.rank(cls.representative)
    levels = [PresentedAbGroup.trivial() for _ in lattice.classes]
    return MackeyModule(group, levels, restrictions, inductions, conjugations, actions, name, functor)


# -- graded modules ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GradedMackeyModule:
    """
    A Z/2-graded module (M_0, M_1).
    """

    even: MackeyModule
    odd: MackeyModule
    name: str = "M"

    def __post_init__(self):
        check_compatible(self.even, self.odd)

    @property
    def group(self) -> FiniteGroup:
        return self.even.group

    def degree(self, i: int) -> MackeyModule:
        return self.even if i % 2 == 0 else self.odd

    def shift(self) -> "GradedMackeyModule":
        return GradedMackeyModule(self.odd, self.even, f"{self.name}[1]")

    @classmethod
    def concentrated(cls, module: MackeyModule, degree: int = 0) -> "GradedMackeyModule":
        zero = zero_module(module.group, functor=module.functor)
        if degree % 2 == 0:
            return cls(module, zero, module.name)
        return cls(zero, module, f"{module.name}[1]")

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()


def evaluate_map(module: MackeyModule, f: GMap) -> tuple[IntMatrix, IntMatrix]:
    """
    (M_*(f), M^*(f)) for a G-map f.
    """
    return module.covariant(f), module.contravariant(f)


def check_pullback_axiom(module: MackeyModule, f: GMap, g: GMap) -> bool:
    """
    M^*(g) M_*(f) = M_*(g') M^*(f') for the pullback of f and g.
    """
    _, to_left, to_right = pullback(f, g)
    lhs = module.contravariant(g) @ module.covariant(f)
    rhs = module.covariant(to_right) @ module.contravariant(to_left)
    return module.evaluate(g.source).maps_equal(lhs, rhs)

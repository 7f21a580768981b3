"""
Second pages of the universal-coefficient and Kunneth spectral sequences,
their collapse annotations, and the Brauer/Artin induction checks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .green import representation_functor
from .groups import FiniteGroup, cyclic_subgroup_classes, elementary_subgroup_classes
from .homalg import ext, tor
from .mackey import GradedMackeyModule, MackeyModule
from .zlinalg import IntMatrix, PresentedAbGroup

logger = logging.getLogger(__name__)

UCT = "uct"
KUNNETH = "kunneth"

CONVERGENCE_NOTES = {
    UCT: "Converges conditionally for A in the localizing subcategory generated by the C(G/H); "
    "projectivity hypotheses are not decided here.",
    KUNNETH: "Converges strongly for A in the localizing subcategory generated by the C(G/H); "
    "projectivity hypotheses are not decided here.",
}

Invariants = tuple[int, tuple[int, ...]]


@dataclass(eq=False)
class E2Page:
    """
    An E2 page as (p, q) -> invariants, q taken mod 2.

    UCT pages are indexed cohomologically (E2^{p,q} = Ext^p_{-q}), Kunneth
    pages homologically (E^2_{p,q} = Tor_p, degree q).
    """

    kind: str
    group: str
    cells: dict[tuple[int, int], Invariants]
    p_max: int
    collapse: str | None
    truncated: bool
    notes: list[str] = field(default_factory=list)

    def invariants(self, p: int, q: int) -> Invariants:
        return self.cells.get((p, q % 2), (0, ()))

    def is_zero(self, p: int, q: int) -> bool:
        return self.invariants(p, q) == (0, ())

    def nonzero_columns(self) -> list[int]:
        return sorted({p for (p, q), value in self.cells.items() if value != (0, ())})

    def concentrated_in_zero(self) -> bool:
        return all(p == 0 for p in self.nonzero_columns())

    def __eq__(self, other):
        if not isinstance(other, E2Page):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.group == other.group
            and self.cells == other.cells
            and self.p_max == other.p_max
            and self.collapse == other.collapse
            and self.truncated == other.truncated
        )

    def table(self) -> list[str]:
        header = "E2^{p,q}" if self.kind == UCT else "E^2_{p,q}"
        lines = [f"{header} over {self.group} ({self.kind})"]
        width = max(len(show_invariants(v)) for v in self.cells.values()) if self.cells else 1
        lines.append("q\\p " + " ".join(f"{p:>{width}}" for p in range(self.p_max + 1)))
        for q in (0, 1):
            row = " ".join(f"{show_invariants(self.invariants(p, q)):>{width}}" for p in range(self.p_max + 1))
            lines.append(f"{q:>3} {row}")
        if self.collapse:
            lines.append(self.collapse)
        if self.truncated:
            lines.append(f"truncated: resolution not complete within p <= {self.p_max + 1}")
        lines.extend(self.notes)
        return lines


def show_invariants(value: Invariants) -> str:
    rank, torsion = value
    parts = (["Z"] if rank == 1 else [f"Z^{rank}"] if rank else []) + [f"Z/{d}" for d in torsion]
    return " + ".join(parts) or "0"


def _graded(module: MackeyModule | GradedMackeyModule) -> GradedMackeyModule:
    if isinstance(module, GradedMackeyModule):
        return module
    return GradedMackeyModule.concentrated(module, 0)


def _collapse_note(kind: str, complete: bool, length: int) -> str | None:
    if not complete:
        return None
    if kind == UCT:
        return (
            f"confined, pd = {length}: E2 vanishes for p > {length}; "
            f"the weaker stated region is 0 <= p <= {length + 1}"
        )
    return f"confined, pd = {length}: E2 vanishes outside 0 <= p <= {length}"


def uct_e2(first: MackeyModule | GradedMackeyModule, second: MackeyModule | GradedMackeyModule, p_max: int, seed: int | None = None) -> E2Page:
    """
    E2^{p,q} = Ext^p(kA, kB)_{-q} for p <= p_max.
    """
    first, second = _graded(first), _graded(second)
    table = ext(first, second, p_max, seed)
    cells = {(p, q): table.cells[(p, (-q) % 2)].invariants for p in range(p_max + 1) for q in (0, 1)}
    logger.info("UCT page for %s, %s: complete=%s length=%d", first.name, second.name, table.complete, table.length)
    return E2Page(
        UCT,
        first.group.name,
        cells,
        p_max,
        _collapse_note(UCT, table.complete, table.length),
        not table.complete,
        [CONVERGENCE_NOTES[UCT]],
    )


def kunneth_e2(first: MackeyModule | GradedMackeyModule, second: MackeyModule | GradedMackeyModule, p_max: int, seed: int | None = None) -> E2Page:
    """
    E^2_{p,q} = Tor_p(kA, kB)_q for p <= p_max, valued at G/G.
    """
    first, second = _graded(first), _graded(second)
    table = tor(first, second, p_max, seed)
    cells = {(p, q): table.cells[(p, q)].invariants for p in range(p_max + 1) for q in (0, 1)}
    logger.info("Kunneth page for %s, %s: complete=%s length=%d", first.name, second.name, table.complete, table.length)
    return E2Page(
        KUNNETH,
        first.group.name,
        cells,
        p_max,
        _collapse_note(KUNNETH, table.complete, table.length),
        not table.complete,
        [CONVERGENCE_NOTES[KUNNETH]],
    )


# -- vanishing ----------------------------------------------------------------


@dataclass
class VanishingReport:
    module: str
    elementary_levels_zero: bool
    module_zero: bool
    cyclic_levels_torsion: bool
    module_torsion: bool

    @property
    def consistent(self) -> bool:
        integral = not self.elementary_levels_zero or self.module_zero
        rational = not self.cyclic_levels_torsion or self.module_torsion
        return integral and rational

    def lines(self) -> list[str]:
        return [
            f"module {self.module}",
            f"zero at every elementary subgroup: {self.elementary_levels_zero}",
            f"zero: {self.module_zero}",
            f"torsion at every cyclic subgroup: {self.cyclic_levels_torsion}",
            f"torsion: {self.module_torsion}",
            f"consistent with induction theorems: {self.consistent}",
        ]


def vanishing_check(module: MackeyModule | GradedMackeyModule) -> VanishingReport:
    """
    Zero on elementary subgroups forces zero; torsion on cyclic subgroups forces torsion.
    """
    graded = _graded(module)
    group = graded.group
    lattice = group.lattice
    components = [graded.degree(0), graded.degree(1)]
    elementary = [lattice.class_index(c.representative) for c in elementary_subgroup_classes(group)]
    cyclic = [lattice.class_index(c.representative) for c in cyclic_subgroup_classes(group)]

    def zero(c: int) -> bool:
        return all(m.levels[c].is_trivial() for m in components)

    def torsion(c: int) -> bool:
        return all(m.levels[c].free_rank == 0 for m in components)

    everything = range(len(lattice.classes))
    report = VanishingReport(
        graded.name,
        all(zero(c) for c in elementary),
        all(zero(c) for c in everything),
        all(torsion(c) for c in cyclic),
        all(torsion(c) for c in everything),
    )
    if not report.consistent:
        logger.warning("vanishing check inconsistent for %s", graded.name)
    return report


# -- induction theorems ----------------------------------------------------------


@dataclass
class InductionReport:
    group: str
    family: str
    subgroups: list[str]
    matrix: IntMatrix
    cokernel: Invariants
    rank: int
    target_rank: int

    @property
    def surjective(self) -> bool:
        return self.cokernel == (0, ())

    @property
    def full_rank(self) -> bool:
        return self.rank == self.target_rank

    def lines(self) -> list[str]:
        rank, torsion = self.cokernel
        return [
            f"group {self.group}: induction from {self.family} subgroups {', '.join(self.subgroups)}",
            f"induction matrix {self.matrix.rows} x {self.matrix.cols}",
            f"cokernel: rank {rank}, torsion {list(torsion)}",
            f"rational rank {self.rank} of {self.target_rank}",
        ]


def _induction_report(group: FiniteGroup, family: str, classes) -> InductionReport:
    functor = representation_functor(group)
    whole = group.whole
    columns: list[tuple[int, ...]] = []
    for cls in classes:
        E = cls.representative
        induction = functor.covariant_orbit(E, whole, 0)
        columns.extend(induction.columns())
    target_rank = functor.rank(whole)
    matrix = IntMatrix.from_columns(columns, target_rank)
    cokernel = PresentedAbGroup(target_rank, matrix)
    report = InductionReport(
        group.name,
        family,
        [cls.representative.label for cls in classes],
        matrix,
        cokernel.invariants,
        cokernel.smith.rank,
        target_rank,
    )
    logger.info("%s induction over %s: cokernel %s", family, group.name, report.cokernel)
    return report


def brauer_surjectivity(group: FiniteGroup) -> InductionReport:
    """
    Induction from all elementary subgroup classes onto R(G).
    """
    return _induction_report(group, "elementary", elementary_subgroup_classes(group))


def artin_rank(group: FiniteGroup) -> InductionReport:
    """
    Induction from all cyclic subgroup classes; full rank over Q is expected.
    """
    return _induction_report(group, "cyclic", cyclic_subgroup_classes(group))

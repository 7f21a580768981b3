import pytest

from mackey_e2.constructions import representable, representation_module
from mackey_e2.corpus import torsion_quotient
from mackey_e2.groups import preset
from mackey_e2.gsets import coset_space
from mackey_e2.mackey import GradedMackeyModule, hom, zero_module
from mackey_e2.specseq import (
    CONVERGENCE_NOTES,
    KUNNETH,
    UCT,
    E2Page,
    artin_rank,
    brauer_surjectivity,
    kunneth_e2,
    show_invariants,
    uct_e2,
    vanishing_check,
)


def _orbits(group):
    return [coset_space(group, cls.representative) for cls in group.lattice.classes]


def test_uct_on_representables_is_concentrated(s3):
    X, Y = _orbits(s3)[1], _orbits(s3)[2]
    first, second = representable(s3, X), representable(s3, Y)

    page = uct_e2(first, second, 2)

    assert page.concentrated_in_zero()
    assert page.invariants(0, 0) == hom(first, second).invariants
    assert page.is_zero(0, 1)
    assert page.collapse.startswith("confined")
    assert uct_e2(representation_module(s3), second, 1).collapse.startswith("confined, pd = 0")
    assert not page.truncated
    assert page.notes == [CONVERGENCE_NOTES[UCT]]


def test_kunneth_on_representables_is_the_product(s3):
    X, Y = _orbits(s3)[1], _orbits(s3)[2]

    page = kunneth_e2(representable(s3, X), representable(s3, Y), 2)

    # G/C2 x G/C3 is a single free orbit
    assert page.invariants(0, 0) == (1, ())
    assert page.nonzero_columns() == [0]
    assert page.collapse.startswith("confined")
    assert not page.truncated


@pytest.mark.parametrize("n", [2, 5])
def test_uct_over_the_trivial_group(trivial_group, n):
    integers = representation_module(trivial_group)

    page = uct_e2(torsion_quotient(integers, n), integers, 3)

    assert page.nonzero_columns() == [1]
    assert page.invariants(1, 0) == (0, (n,))
    assert page.collapse.startswith("confined, pd = 1")
    assert "0 <= p <= 2" in page.collapse


def test_kunneth_over_the_trivial_group(trivial_group):
    integers = representation_module(trivial_group)

    page = kunneth_e2(torsion_quotient(integers, 4), torsion_quotient(integers, 6), 2)

    assert page.invariants(0, 0) == (0, (2,))
    assert page.invariants(1, 0) == (0, (2,))
    assert page.invariants(2, 0) == (0, ())
    assert page.notes == [CONVERGENCE_NOTES[KUNNETH]]


def test_odd_degrees_are_tracked(z2):
    R = representation_module(z2)

    uct = uct_e2(R, GradedMackeyModule.concentrated(R, 1), 1)
    kunneth = kunneth_e2(R, GradedMackeyModule.concentrated(R, 1), 1)

    assert uct.invariants(0, 1) == (2, ())
    assert uct.is_zero(0, 0)
    assert kunneth.invariants(0, 1) == (2, ())
    assert kunneth.invariants(0, 3) == kunneth.invariants(0, 1)


def test_page_table_and_equality():
    page = E2Page(UCT, "Z/2", {(0, 0): (1, ()), (1, 1): (0, (2,))}, 1, None, True)
    same = E2Page(UCT, "Z/2", {(0, 0): (1, ()), (1, 1): (0, (2,))}, 1, None, True)

    lines = page.table()

    assert page == same
    assert page != E2Page(KUNNETH, "Z/2", dict(page.cells), 1, None, True)
    assert lines[0] == "E2^{p,q} over Z/2 (uct)"
    assert any(line.startswith("truncated") for line in lines)
    assert page.invariants(5, 0) == (0, ())


@pytest.mark.parametrize(
    "value, text",
    [
        ((0, ()), "0"),
        ((1, ()), "Z"),
        ((3, ()), "Z^3"),
        ((0, (2, 4)), "Z/2 + Z/4"),
        ((2, (6,)), "Z^2 + Z/6"),
    ],
)
def test_show_invariants(value, text):
    assert show_invariants(value) == text


@pytest.mark.parametrize("spec, target_rank", [("S3", 3), ("A4", 4), ("D4", 5), ("Q8", 5)])
def test_induction_theorems(spec, target_rank):
    group = preset(spec)

    brauer = brauer_surjectivity(group)
    artin = artin_rank(group)

    assert brauer.surjective
    assert brauer.target_rank == target_rank
    assert artin.full_rank
    assert artin.rank == target_rank
    assert brauer.lines()[0].startswith(f"group {group.name}: induction from elementary")


def test_vanishing(s3):
    R = representation_module(s3)

    unit = vanishing_check(R)
    torsion = vanishing_check(torsion_quotient(R, 2))
    zero = vanishing_check(zero_module(s3))

    assert not unit.elementary_levels_zero and not unit.module_zero
    assert unit.consistent
    assert torsion.cyclic_levels_torsion and torsion.module_torsion
    assert zero.elementary_levels_zero and zero.module_zero
    assert all(report.consistent for report in (unit, torsion, zero))
    assert unit.lines()[-1] == "consistent with induction theorems: True"

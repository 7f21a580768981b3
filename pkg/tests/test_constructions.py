import pytest

from mackey_e2.constructions import (
    induce_module,
    induced_level_ranks,
    orbit_inclusion,
    representable,
    representable_coordinates,
    representation_module,
    restrict_module,
    shift_module,
    yoneda_element,
    yoneda_hom,
)
from mackey_e2.errors import InputError
from mackey_e2.gsets import coset_space, disjoint_union, point
from mackey_e2.mackey import check_axioms, hom


def _c2(group):
    return group.lattice.representatives[1]


def test_representable_levels_over_s3(s3):
    X = coset_space(s3, _c2(s3))

    R_X = representable(s3, X)

    assert R_X.level_invariants() == [(3, ()), (3, ()), (1, ()), (2, ())]
    assert check_axioms(R_X).passed
    assert representable(s3, X) is R_X


def test_shift_by_a_point_changes_nothing(small_group):
    R = representation_module(small_group)

    shifted = shift_module(R, point(small_group))

    assert shifted.level_invariants() == R.level_invariants()
    assert check_axioms(shifted).passed


def test_shift_rejects_a_foreign_gset(s3, z2):
    with pytest.raises(InputError):
        shift_module(representation_module(s3), point(z2))


@pytest.mark.parametrize("element", [(1, 0), (0, 1), (1, 2), (-3, 5)])
def test_yoneda_round_trip(s3, element):
    R = representation_module(s3)
    X = coset_space(s3, _c2(s3))

    phi = yoneda_hom(R, X, element)

    assert phi.naturality_failures() == []
    assert yoneda_element(phi, X) == element


def test_yoneda_on_a_disjoint_union(z2):
    R = representation_module(z2)
    X = disjoint_union(coset_space(z2, z2.trivial), point(z2))
    element = (2, 1, -1)

    phi = yoneda_hom(R, X, element)

    assert yoneda_element(phi, X) == element


def test_hom_out_of_a_representable_is_the_value(s3):
    R = representation_module(s3)
    for cls in s3.lattice.classes:
        X = coset_space(s3, cls.representative)
        assert hom(representable(s3, X), R).invariants == R.evaluate(X).invariants


def test_orbit_inclusion_hits_the_base_point(z2):
    X = disjoint_union(point(z2), coset_space(z2, z2.trivial))

    for index, orbit in enumerate(X.orbits):
        f = orbit_inclusion(X, index)
        assert f.target is X
        assert f.images[0] == orbit.base


def test_representable_coordinates_of_the_point(z3):
    pt = point(z3)
    vector = (1, 0, 2)

    assert representable_coordinates(pt, pt, vector) == vector


def test_restriction_to_c3(s3):
    C3 = s3.lattice.representatives[2]

    restricted = restrict_module(representation_module(s3), C3)

    assert restricted.group.order == 3
    assert restricted.level_invariants() == [(1, ()), (3, ())]
    assert check_axioms(restricted).passed


def test_induction_from_c2_is_the_representable(s3):
    C2 = _c2(s3)
    small, _ = s3.subgroup_as_group(C2)
    R_small = representation_module(small)

    induced = induce_module(R_small, s3, C2)

    expected = representable(s3, coset_space(s3, C2)).level_invariants()
    assert induced.level_invariants() == expected
    assert induced_level_ranks(R_small, s3, C2) == expected
    assert check_axioms(induced).passed


def test_change_of_group_errors(s3, z3):
    C2 = _c2(s3)
    with pytest.raises(InputError):
        induce_module(representation_module(z3), s3, C2)
    with pytest.raises(InputError):
        restrict_module(representation_module(s3, "burnside"), C2)

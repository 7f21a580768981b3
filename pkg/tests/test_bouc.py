import itertools

import pytest

from mackey_e2.bouc import (
    basis_morphism,
    check_category_axioms,
    compose,
    hom_basis,
    identity,
    morphism,
    rank_formula,
    tensor,
    zero,
)
from mackey_e2.errors import InputError
from mackey_e2.gsets import coset_space, disjoint_union, point, product


def _orbits(group):
    return [coset_space(group, cls.representative) for cls in group.lattice.classes]


def test_hom_ranks_in_s3(s3):
    free, X2, X3, pt = _orbits(s3)

    assert len(hom_basis(free, free)) == 6
    assert len(hom_basis(pt, pt)) == 3
    assert len(hom_basis(X2, X2)) == 3
    assert len(hom_basis(X2, X3)) == 1


def test_hom_ranks_match_double_coset_formula(small_group):
    orbits = _orbits(small_group)
    orbits.append(disjoint_union(orbits[0], orbits[-1]))
    for X, Y in itertools.product(orbits, repeat=2):
        assert len(hom_basis(X, Y)) == rank_formula(X, Y)


def test_basis_labels_follow_coordinates(s3):
    free, X2, _, _ = _orbits(s3)
    basis = hom_basis(X2, X2)

    assert [e.index for e in basis] == [0, 1, 2]
    assert all(e.source_orbit == 0 and e.target_orbit == 0 for e in basis)
    assert len({e.double_coset for e in basis}) == 2


@pytest.mark.parametrize("spec_fixture", ["trivial_group", "z2", "z3"])
def test_category_axioms_exhaustive(request, spec_fixture):
    group = request.getfixturevalue(spec_fixture)

    assert check_category_axioms(_orbits(group)) == []


def test_category_axioms_on_s3_orbits(s3):
    _, X2, X3, pt = _orbits(s3)

    assert check_category_axioms([X2, pt]) == []
    assert check_category_axioms([X3]) == []


def test_identity_and_zero(s3):
    _, X2, _, pt = _orbits(s3)
    f = basis_morphism(X2, pt, 1)

    assert compose(identity(pt), f) == f
    assert compose(f, identity(X2)) == f
    assert compose(zero(pt, pt), f).is_zero()
    assert (f + f) == f.scale(2)


def test_tensor_of_identities_is_identity(z2):
    free, pt = _orbits(z2)

    assert tensor(identity(free), identity(pt)) == identity(product(free, pt))
    assert tensor(identity(free), identity(free)) == identity(product(free, free))


def test_composition_errors(s3):
    free, X2, X3, pt = _orbits(s3)

    with pytest.raises(InputError):
        compose(basis_morphism(X2, pt, 0), basis_morphism(free, X3, 0))
    with pytest.raises(InputError):
        morphism(X2, pt, (1,))
    with pytest.raises(InputError):
        basis_morphism(X2, pt, 0) + basis_morphism(X3, pt, 0)

import itertools

import pytest

from mackey_e2.errors import InputError
from mackey_e2.green import burnside_functor, green_functor, representation_functor
from mackey_e2.gsets import coset_space, disjoint_union, maps_between, point


def _orbit_maps(group):
    orbits = [coset_space(group, cls.representative) for cls in group.lattice.classes]
    for X, Y in itertools.product(orbits, repeat=2):
        yield from maps_between(X, Y)


def test_ranks_over_s3(s3):
    R = representation_functor(s3)
    B = burnside_functor(s3)

    assert [R.rank(cls.representative) for cls in s3.lattice.classes] == [1, 2, 3, 3]
    assert [B.rank(cls.representative) for cls in s3.lattice.classes] == [1, 2, 2, 4]
    X = disjoint_union(coset_space(s3, s3.trivial), point(s3))
    assert R.dimension(X) == 4
    assert R.offsets(X) == [0, 1, 4]


def test_induction_to_a_point_is_the_regular_character(s3):
    R = representation_functor(s3)
    f = maps_between(coset_space(s3, s3.trivial), point(s3))[0]

    assert R.covariant(f).to_lists() == [[1], [1], [2]]
    assert R.contravariant(f).to_lists() == [[1, 1, 2]]


@pytest.mark.parametrize("kind", ["representation", "burnside"])
def test_green_functor_axioms(small_group, kind):
    functor = green_functor(small_group, kind)
    maps = list(_orbit_maps(small_group))

    for f in maps:
        assert functor.check_projection_formula(f)
        assert functor.check_ring_homomorphism(f)
    for f, g in itertools.product(maps, repeat=2):
        if f.target is g.target:
            assert functor.check_pullback_axiom(f, g)


def test_functoriality_of_composites(s3):
    R = representation_functor(s3)
    trivial, C2, _, whole = (cls.representative for cls in s3.lattice.classes)
    for f in maps_between(coset_space(s3, trivial), coset_space(s3, C2)):
        for g in maps_between(coset_space(s3, C2), coset_space(s3, whole)):
            h = g.compose(f)
            assert R.covariant(h) == R.covariant(g) @ R.covariant(f)
            assert R.contravariant(h) == R.contravariant(f) @ R.contravariant(g)


def test_burnside_acts_through_permutation_characters(s3):
    R = representation_functor(s3)
    B = burnside_functor(s3)
    for f in _orbit_maps(s3):
        source, target = R.permutation_character_map(f.source), R.permutation_character_map(f.target)
        assert R.contravariant(f) @ target == source @ B.contravariant(f)
        assert R.covariant(f) @ source == target @ B.covariant(f)


def test_unit_and_products(z3):
    R = representation_functor(z3)
    X = coset_space(z3, z3.whole)
    unit = R.unit_value(X)

    assert unit.vector == (1, 0, 0)
    a = R.basis_value(X, 1)
    assert R.multiply(X, unit, a) == a
    assert R.multiply_vectors(X, (0, 1, 0), (0, 1, 0)) == (0, 0, 1)


def test_bad_inputs(s3):
    R = representation_functor(s3)
    _, C2, C3, _ = (cls.representative for cls in s3.lattice.classes)

    with pytest.raises(InputError):
        green_functor(s3, "bogus")
    with pytest.raises(InputError):
        R.value(point(s3), (1, 2))
    with pytest.raises(InputError):
        R.covariant_orbit(C2, C3, 0)

import pytest

from mackey_e2.errors import InputError
from mackey_e2.gsets import (
    GMap,
    coset_space,
    diagonal,
    disjoint_union,
    empty,
    maps_between,
    orbit_map,
    point,
    product,
    product_map,
    product_projections,
    pullback,
)


def _classes(group):
    return [cls.representative for cls in group.lattice.classes]


def test_coset_spaces(s3):
    trivial, C2, C3, whole = _classes(s3)

    for H in (trivial, C2, C3, whole):
        X = coset_space(s3, H)
        X.verify()
        assert X.size == 6 // H.order
        assert len(X.orbits) == 1
        assert X.orbits[0].stabilizer == H
    assert point(s3).size == 1
    assert empty(s3).size == 0


def test_product_orbits_count_double_cosets(s3):
    _, C2, C3, _ = _classes(s3)
    X = coset_space(s3, C2)
    square = product(X, X)

    square.verify()
    assert square.size == 9
    assert sorted(o.stabilizer.order for o in square.orbits) == [1, 2]
    assert len(product(X, coset_space(s3, C3)).orbits) == 1


def test_product_projections_are_equivariant(s3):
    _, C2, C3, _ = _classes(s3)
    left, right = product_projections(coset_space(s3, C2), coset_space(s3, C3))

    assert left.is_equivariant()
    assert right.is_equivariant()
    assert diagonal(coset_space(s3, C2)).is_equivariant()


def test_maps_between_counts_fixed_points(s3):
    trivial, C2, C3, whole = _classes(s3)

    assert len(maps_between(coset_space(s3, trivial), coset_space(s3, C2))) == 3
    assert maps_between(coset_space(s3, C2), coset_space(s3, C3)) == []
    assert len(maps_between(coset_space(s3, C3), point(s3))) == 1
    for f in maps_between(coset_space(s3, trivial), coset_space(s3, C3)):
        assert f.is_equivariant()


def test_orbit_map_requires_containment(s3):
    trivial, C2, C3, whole = _classes(s3)

    f = orbit_map(s3, trivial, C2, 0)
    assert f.is_equivariant()
    assert f(0) == 0
    with pytest.raises(InputError):
        orbit_map(s3, C2, C3, 0)


def test_composition_and_identity(s3):
    trivial, C2, _, whole = _classes(s3)
    f = orbit_map(s3, trivial, C2, 0)
    g = orbit_map(s3, C2, whole, 0)

    h = g.compose(f)
    assert h.source is f.source and h.target is g.target
    assert f.compose(GMap.identity(f.source)).images == f.images
    with pytest.raises(InputError):
        f.compose(g)


def test_pullback_and_union(z2):
    free = coset_space(z2, z2.trivial)
    to_point = maps_between(free, point(z2))[0]
    square, left, right = pullback(to_point, to_point)

    assert square.size == 4
    assert left.is_equivariant() and right.is_equivariant()
    both = disjoint_union(free, point(z2))
    both.verify()
    assert both.size == 3
    assert len(both.orbits) == 2


def test_product_map_of_identities(z3):
    X = coset_space(z3, z3.trivial)
    identity = GMap.identity(X)

    assert product_map(identity, identity).images == tuple(range(9))

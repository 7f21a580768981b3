import math

import pytest

from mackey_e2.constructions import representable, representation_module
from mackey_e2.corpus import module_pool, torsion_quotient
from mackey_e2.errors import InputError
from mackey_e2.gsets import coset_space, point
from mackey_e2.homalg import (
    box,
    box_direct_oracle,
    box_modules,
    ext,
    ext_groups,
    frobenius_check,
    induction_adjunction_check,
    internal_hom_adjunction_check,
    resolve,
    shift_adjunction_check,
    tor,
    tor_modules,
)
from mackey_e2.mackey import GradedMackeyModule, check_axioms, hom


@pytest.fixture
def integers(trivial_group):
    return representation_module(trivial_group)


def test_resolution_of_a_projective(s3):
    R = representation_module(s3)

    resolution = resolve(R, 3)

    assert resolution.complete
    assert resolution.length == 0
    assert resolution.projective_dimension == 0
    assert resolution.certified
    assert resolution.summary()[-1].startswith("certificates: d o d = 0")


def test_resolution_of_a_cyclic_group(integers):
    resolution = resolve(torsion_quotient(integers, 4), 3)

    assert resolution.complete
    assert resolution.projective_dimension == 1
    assert resolution.certified
    assert len(resolution.differentials) == 1


@pytest.mark.parametrize("seed", [None, 1, 7])
def test_resolutions_over_s3_are_certified(s3, seed):
    module = torsion_quotient(representation_module(s3), 2)

    resolution = resolve(module, 2, seed)

    assert resolution.certified, resolution.failures
    assert len(resolution.modules) >= 1
    assert all(check_axioms(P).passed for P in resolution.modules[:2])


def test_negative_lengths_are_rejected(integers):
    with pytest.raises(InputError):
        resolve(integers, -1)
    with pytest.raises(InputError):
        ext(integers, integers, -1)
    with pytest.raises(InputError):
        tor(integers, integers, -1)


@pytest.mark.parametrize("n", [2, 3, 6])
def test_classical_ext(integers, n):
    cyclic = torsion_quotient(integers, n)

    table = ext(cyclic, integers, 2)

    assert table.invariants(0, 0) == (0, ())
    assert table.invariants(1, 0) == (0, (n,))
    assert table.vanishes_above(1)
    assert table.complete
    assert ext(integers, cyclic, 1).invariants(0, 0) == (0, (n,))


@pytest.mark.parametrize("n, m", [(2, 4), (4, 6), (3, 5), (6, 6)])
def test_classical_tor(integers, n, m):
    d = math.gcd(n, m)
    expected = (0, (d,)) if d > 1 else (0, ())

    table = tor(torsion_quotient(integers, n), torsion_quotient(integers, m), 2)

    assert table.invariants(0, 0) == expected
    assert table.invariants(1, 0) == expected
    assert table.invariants(2, 0) == (0, ())


def test_ext_zero_is_hom(s3):
    R = representation_module(s3)
    module = torsion_quotient(R, 3)
    X = coset_space(s3, s3.trivial)
    source = representable(s3, X)

    groups = ext_groups(source, module, 1)

    assert groups[0].invariants == hom(source, module).invariants
    assert groups[1].is_trivial()


def test_ext_does_not_depend_on_the_seed(z2):
    module = torsion_quotient(representation_module(z2), 2)
    target = representation_module(z2)

    first = [g.invariants for g in ext_groups(module, target, 2, seed=1)]
    second = [g.invariants for g in ext_groups(module, target, 2, seed=5)]

    assert first == second


def test_box_with_the_unit(small_group):
    R = representation_module(small_group)
    module = torsion_quotient(R, 2)

    assert box_modules(R, module).level_invariants() == module.level_invariants()
    assert tor_modules(R, module, 1)[1].is_zero()


def test_box_of_representables_matches_the_oracle(s3):
    X = coset_space(s3, s3.lattice.representatives[1])
    Y = coset_space(s3, s3.lattice.representatives[2])
    boxed = box_modules(representable(s3, X), representable(s3, Y))

    for cls in s3.lattice.classes:
        orbit = coset_space(s3, cls.representative)
        direct = box_direct_oracle(representable(s3, X), representable(s3, Y), orbit)
        assert boxed.evaluate(orbit).invariants == direct.invariants


def test_graded_box_adds_degrees(z2):
    R = representation_module(z2)
    odd = GradedMackeyModule.concentrated(R, 1)

    result = box(odd, odd)

    assert result.odd.is_zero()
    assert result.even.level_invariants() == R.level_invariants()


def test_graded_ext_places_odd_targets(z2):
    R = representation_module(z2)

    table = ext(R, GradedMackeyModule.concentrated(R, 1), 0)

    assert table.invariants(0, 0) == (0, ())
    assert table.invariants(0, 1) == (2, ())


def test_shift_adjunction(z2):
    R = representation_module(z2)
    module = torsion_quotient(R, 2)

    assert shift_adjunction_check(R, module, coset_space(z2, z2.trivial)) == []
    assert shift_adjunction_check(module, R, point(z2)) == []


def test_induction_adjunction_and_frobenius(s3):
    C2 = s3.lattice.representatives[1]
    small, _ = s3.subgroup_as_group(C2)
    R_small = representation_module(small)
    R = representation_module(s3)

    assert induction_adjunction_check(R_small, R, C2) == []
    assert frobenius_check(R_small, R, C2)


def test_internal_hom_adjunction(z2):
    R = representation_module(z2)

    assert internal_hom_adjunction_check(R, torsion_quotient(R, 2), R)


# pool indices: 0 R, 3 R[G/C2], 4 R[G/C3], 6 C, 7 K, 8 R/2
@pytest.mark.parametrize("triple", [(0, 3, 8), (4, 0, 0), (6, 0, 3), (3, 4, 0), (8, 7, 0)])
def test_internal_hom_adjunction_over_s3(s3, triple):
    pool = module_pool(s3)
    first, second, third = (pool[i] for i in triple)

    assert internal_hom_adjunction_check(first, second, third)


def test_homological_algebra_needs_the_representation_functor(s3):
    R = representation_module(s3)
    Bur = representation_module(s3, "burnside")

    with pytest.raises(InputError, match="burnside functor"):
        ext(Bur, R, 1)
    with pytest.raises(InputError, match="burnside functor"):
        tor(R, Bur, 0)
    with pytest.raises(InputError, match="representation functor"):
        resolve(Bur, 1)
    with pytest.raises(InputError, match="representation functor"):
        ext(Bur, Bur, 1)

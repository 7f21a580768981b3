import pytest

from mackey_e2.bouc import identity
from mackey_e2.constructions import representation_module
from mackey_e2.errors import InputError, VerificationError
from mackey_e2.gsets import coset_space, disjoint_union, maps_between, point
from mackey_e2.mackey import (
    GradedMackeyModule,
    ModuleHom,
    check_axioms,
    check_pullback_axiom,
    cokernel,
    direct_sum,
    hom,
    image,
    kernel,
    module_sum,
    submodule_generated,
    zero_module,
)
from mackey_e2.zlinalg import IntMatrix


def _negate_first_induction(module):
    for kind, key, source, target, matrix in module.structure_maps():
        if kind == "ind" and source != target:
            return module.replaced("ind", key, -matrix)
    raise AssertionError("no proper induction")


@pytest.mark.parametrize("kind", ["representation", "burnside"])
def test_unit_modules_satisfy_the_axioms(small_group, kind):
    report = check_axioms(representation_module(small_group, kind))

    assert report.passed, report.failures
    assert report.checked > 0


def test_negated_induction_breaks_the_mackey_formula(z2):
    broken = _negate_first_induction(representation_module(z2))

    report = check_axioms(broken)

    assert not report.passed
    assert any(failure.startswith("Mackey formula") for failure in report.failures)
    with pytest.raises(VerificationError):
        report.raise_on_failure()


def test_levels_of_r_over_s3(s3):
    R = representation_module(s3)

    assert R.level_invariants() == [(1, ()), (2, ()), (3, ()), (3, ())]
    assert R.evaluate(coset_space(s3, s3.trivial)).invariants == (1, ())
    assert len(R.describe().split("; ")) == 4


def test_hom_from_r_is_the_top_level(small_group):
    R = representation_module(small_group)
    top = R.level_at(small_group.whole).free_rank

    result = hom(R, R)

    assert result.invariants == (top, ())
    assert len(result.generators) == top
    for phi in result.generators:
        assert phi.naturality_failures() == []


def test_hom_coordinates_recover_a_map(s3):
    R = representation_module(s3)
    result = hom(R, R)
    identity = ModuleHom.identity(R)

    coordinates = result.coordinates(identity)

    assert result.combination(coordinates).equals(identity)


def test_cokernel_of_multiplication_by_two(s3):
    R = representation_module(s3)
    doubling = ModuleHom.identity(R).scale(2)

    quotient = cokernel(doubling)

    assert quotient.module.level_invariants() == [(0, (2,) * n) for n in (1, 2, 3, 3)]
    assert check_axioms(quotient.module).passed
    assert quotient.projection.compose(doubling).is_zero()
    assert kernel(doubling).module.is_zero()
    assert image(doubling).module.level_invariants() == R.level_invariants()


def test_submodule_generated_by_the_unit_is_everything(z2):
    R = representation_module(z2)
    top = R.class_of(z2.whole)
    unit = R.functor.unit(z2.whole)

    generated = submodule_generated(R, {top: [unit]})

    assert check_axioms(generated.module).passed
    assert generated.inclusion.naturality_failures() == []
    # ind of the trivial character lands at the top as the regular character
    assert generated.module.level_invariants() == R.level_invariants()


def test_direct_sum(s3):
    R = representation_module(s3)

    doubled = direct_sum([R, R])

    assert [level.free_rank for level in doubled.levels] == [2, 4, 6, 6]
    assert check_axioms(doubled).passed
    assert hom(doubled, R).invariants == (6, ())


def test_direct_sum_errors(z2, z3):
    with pytest.raises(InputError):
        direct_sum([])
    with pytest.raises(InputError):
        direct_sum([representation_module(z2), representation_module(z3)])


def test_modules_over_different_functors_do_not_mix(s3):
    R = representation_module(s3)
    Bur = representation_module(s3, "burnside")

    with pytest.raises(InputError, match="burnside functor"):
        hom(Bur, R)
    with pytest.raises(InputError, match="representation functor"):
        hom(R, Bur)
    with pytest.raises(InputError):
        direct_sum([R, Bur])
    with pytest.raises(InputError):
        GradedMackeyModule(R, Bur)
    assert hom(Bur, Bur).invariants[0] == 4


def test_zero_module(s3):
    zero = zero_module(s3)

    assert zero.is_zero()
    assert check_axioms(zero).passed
    assert module_sum([], s3).is_zero()
    assert hom(representation_module(s3), zero).invariants == (0, ())


def test_pullback_axiom_on_orbit_maps(s3):
    R = representation_module(s3)
    free = coset_space(s3, s3.trivial)
    f = maps_between(free, point(s3))[0]

    assert check_pullback_axiom(R, f, f)


def test_graded_modules(z2):
    R = representation_module(z2)

    graded = GradedMackeyModule.concentrated(R, 1)

    assert graded.even.is_zero()
    assert graded.odd is R
    assert graded.shift().even is R
    assert graded.degree(3) is R
    assert not graded.is_zero()


def test_identity_morphism_acts_as_the_identity(s3):
    R = representation_module(s3)
    X = disjoint_union(coset_space(s3, s3.lattice.representatives[1]), point(s3))

    action = R.presheaf_action(X, X, identity(X).vector)

    assert R.evaluate(X).maps_equal(action, IntMatrix.identity(R.evaluate(X).ngens))

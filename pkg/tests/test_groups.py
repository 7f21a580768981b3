import pytest

from mackey_e2.errors import InputError, OrderCapExceededError
from mackey_e2.groups import (
    cyclic_subgroup_classes,
    double_coset_partition,
    double_cosets,
    elementary_subgroup_classes,
    preset,
)


@pytest.mark.parametrize(
    "spec, order, subgroups, classes",
    [
        ("1", 1, 1, 1),
        ("Z/2", 2, 2, 2),
        ("Z/6", 6, 4, 4),
        ("Z/2xZ/2", 4, 5, 5),
        ("E2^2", 4, 5, 5),
        ("S3", 6, 6, 4),
        ("D4", 8, 10, 8),
        ("Q8", 8, 6, 6),
        ("A4", 12, 10, 5),
        ("S4", 24, 30, 11),
        ("perm:3:(0 1 2);(0 1)", 6, 6, 4),
    ],
)
def test_presets_and_subgroup_lattices(spec, order, subgroups, classes):
    group = preset(spec)
    group.verify()

    assert group.order == order
    assert len(group.lattice.subgroups) == subgroups
    assert len(group.lattice.classes) == classes


def test_group_basics(s3):
    assert s3.exponent == 6
    for g in range(s3.order):
        assert s3.mul(g, s3.inv(g)) == 0
        assert s3.power(g, s3.element_order(g)) == 0
    assert s3.closure(s3.generators) == tuple(range(6))


def test_classes_are_ordered_by_size(s3):
    orders = [cls.representative.order for cls in s3.lattice.classes]

    assert orders == [1, 2, 3, 6]
    assert [cls.size for cls in s3.lattice.classes] == [1, 3, 1, 1]


def test_transporters_move_representatives(s3):
    lattice = s3.lattice
    for cls in lattice.classes:
        for member in cls.members:
            t = lattice.transporter(member)
            assert cls.representative.conjugate(t) == member


def test_elementary_and_cyclic_classes():
    s3 = preset("S3")
    a4 = preset("A4")

    assert [c.representative.order for c in elementary_subgroup_classes(s3)] == [1, 2, 3]
    assert [c.representative.order for c in cyclic_subgroup_classes(a4)] == [1, 2, 3]
    assert [c.representative.order for c in elementary_subgroup_classes(a4)] == [1, 2, 3, 4]
    assert preset("Q8").whole.is_elementary
    assert preset("Z/6").whole.is_cyclic


def test_double_cosets_partition_the_group(s3):
    K = s3.lattice.classes[1].representative
    cosets = double_coset_partition(s3, K, K)

    assert len(cosets) == 2
    assert sorted(x for coset in cosets for x in coset) == list(range(6))
    assert len(double_cosets(s3, K, s3.trivial)) == 3
    assert len(double_cosets(s3, s3.whole, K)) == 1


def test_double_cosets_within_an_ambient_subgroup(s3):
    C3 = s3.lattice.classes[2].representative

    assert double_cosets(s3, s3.trivial, s3.trivial, C3) == list(C3.elements)


def test_subgroup_validation(s3):
    with pytest.raises(InputError):
        s3.subgroup([1])
    with pytest.raises(InputError):
        s3.subgroup([0, 99])
    generated = s3.generated_subgroup([s3.generators[0]])
    assert s3.subgroup(generated.elements) == generated


def test_subgroup_as_group_keeps_conductor(s3):
    C3 = s3.lattice.classes[2].representative
    small, embedding = s3.subgroup_as_group(C3)

    assert small.order == 3
    assert embedding == C3.elements
    assert small.conductor == s3.conductor


def test_randomized_choices_keep_the_lattice():
    group = preset("S4")
    moved = group.with_choices(7)

    assert moved.policy.randomized
    assert len(moved.lattice.classes) == len(group.lattice.classes)
    for before, after in zip(group.lattice.classes, moved.lattice.classes):
        assert before.members == after.members
        assert after.representative in after.members


@pytest.mark.parametrize("spec", ["", "bogus", "S5", "perm:3:(0 3)", "Z/2xD4", "Z/2@1"])
def test_bad_specs(spec):
    with pytest.raises(InputError):
        preset(spec)


def test_order_cap():
    with pytest.raises(OrderCapExceededError) as info:
        preset("S4", max_order=12)

    assert info.value.order == 24
    assert info.value.cap == 12

import pytest

from mackey_e2.zlinalg import (
    ColumnEchelon,
    IntMatrix,
    PresentedAbGroup,
    Subquotient,
    hom_group,
    kernel_basis,
    smith_normal_form,
    solve_lattice,
    solve_linear,
)


def test_smith_form_is_diagonal_and_invertible():
    A = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    form = smith_normal_form(A)

    assert form.diag == (2, 6, 12)
    product = form.left @ A @ form.right
    assert product == IntMatrix.diagonal([2, 6, 12])
    assert form.left_inverse @ form.left == IntMatrix.identity(3)
    assert form.rank == 3


def test_smith_form_of_singular_matrix():
    A = IntMatrix.from_rows([[2, 4], [1, 2]])
    form = smith_normal_form(A)

    assert form.rank == 1
    assert [d for d in form.diag if d] == [1]


@pytest.mark.parametrize(
    "moduli, invariants, text",
    [
        ([2, 3], (0, (6,)), "Z/6"),
        ([0, 4], (1, (4,)), "Z/4 + Z"),
        ([1, 1], (0, ()), "0"),
        ([2, 2, 0, 0], (2, (2, 2)), "Z/2 + Z/2 + Z^2"),
    ],
)
def test_presented_group_invariants(moduli, invariants, text):
    group = PresentedAbGroup.from_moduli(moduli)

    assert group.invariants == invariants
    assert group.describe() == text


def test_presented_group_with_nondiagonal_relations():
    # Z^2 / <(2, 2), (0, 4)> = Z/2 + Z/4
    group = PresentedAbGroup(2, IntMatrix.from_columns([(2, 2), (0, 4)], 2))

    assert group.moduli is None
    assert group.invariants == (0, (2, 4))
    assert group.is_zero_element((2, 6))
    assert not group.is_zero_element((1, 1))
    diagonal = group.diagonalized()
    assert diagonal.group.invariants == (0, (2, 4))


def test_maps_equal_modulo_relations():
    target = PresentedAbGroup.from_moduli([3])
    first = IntMatrix.from_rows([[1, 2]])
    second = IntMatrix.from_rows([[4, -1]])

    assert target.maps_equal(first, second)
    assert not target.maps_equal(first, IntMatrix.from_rows([[2, 2]]))


def test_kernel_basis_spans_kernel():
    A = IntMatrix.from_rows([[2, 2, 2], [3, 3, 3]])
    kernel = kernel_basis(A)

    assert kernel.cols == 2
    assert (A @ kernel).is_zero()
    echelon = ColumnEchelon(kernel.columns(), 3)
    assert echelon.contains((1, -1, 0))
    assert echelon.contains((0, 1, -1))


def test_solve_linear():
    A = IntMatrix.from_rows([[2, 0], [0, 3]])

    assert solve_linear(A, (4, 9)) == (2, 3)
    assert solve_linear(A, (1, 0)) is None
    with pytest.raises(ValueError):
        solve_linear(A, (1, 2, 3))


def test_solve_lattice_with_moduli():
    # x = 0 mod 2 and x + y = 0 exactly
    basis = solve_lattice([[1, 0], [1, 1]], 2, [2, 0])
    echelon = ColumnEchelon(basis, 2)

    assert echelon.rank == 1
    assert echelon.contains((2, -2))
    assert not echelon.contains((1, -1))


def test_column_echelon_fullness():
    assert ColumnEchelon([(1, 0), (1, 1)], 2).is_full()
    assert not ColumnEchelon([(2, 0), (0, 1)], 2).is_full()


def test_subquotient_coordinates():
    # 2Z / 6Z = Z/3
    quotient = Subquotient([(2,)], [(6,)], 1)

    assert quotient.group.invariants == (0, (3,))
    assert quotient.coordinates((6,)) == (0,)
    assert quotient.coordinates((2,)) != (0,)
    with pytest.raises(ValueError):
        quotient.coordinates((1,))


def test_hom_group_between_cyclic_groups():
    Z4 = PresentedAbGroup.from_moduli([4])
    Z6 = PresentedAbGroup.from_moduli([6])

    assert hom_group(Z4, Z6).group.invariants == (0, (2,))
    assert hom_group(PresentedAbGroup.free(1), Z6).group.invariants == (0, (6,))
    assert hom_group(Z6, PresentedAbGroup.free(1)).group.is_trivial()


def test_matrix_shape_errors():
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2]]) @ IntMatrix.from_rows([[1, 2]])
    with pytest.raises(ValueError):
        IntMatrix.identity(2) + IntMatrix.identity(3)
    with pytest.raises(ValueError):
        PresentedAbGroup(2, IntMatrix.zeros(3, 0))

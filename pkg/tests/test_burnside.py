import pytest

from mackey_e2.burnside import burnside_ring, table_of_marks
from mackey_e2.groups import preset


def test_table_of_marks_s3(s3):
    assert table_of_marks(s3).to_lists() == [
        [6, 3, 2, 1],
        [0, 1, 0, 1],
        [0, 0, 2, 1],
        [0, 0, 0, 1],
    ]


def test_products_in_burnside_ring_of_s3(s3):
    ring = burnside_ring(s3)
    e = [tuple(int(k == i) for k in range(4)) for i in range(4)]

    assert ring.unit == e[3]
    assert ring.multiply(e[1], e[1]) == (1, 1, 0, 0)
    assert ring.multiply(e[2], e[2]) == (0, 0, 2, 0)
    assert ring.multiply(e[1], e[2]) == (1, 0, 0, 0)
    assert ring.multiply(e[3], e[2]) == e[2]


@pytest.mark.parametrize("spec", ["Z/4", "Z/2xZ/2", "S3", "D4", "Q8", "A4"])
def test_double_coset_products_agree_with_marks(spec):
    ring = burnside_ring(preset(spec))

    assert ring.cross_check() == []


def test_from_marks_rejects_non_virtual_sets(z2):
    ring = burnside_ring(z2)

    assert ring.from_marks((2, 0)) == (1, 0)
    with pytest.raises(ArithmeticError):
        ring.from_marks((1, 0))

import pytest

from mackey_e2 import characters
from mackey_e2.characters import (
    VirtualCharacter,
    character_table,
    conj,
    gcd_degrees,
    ind,
    mult,
    permutation_character,
    res,
)
from mackey_e2.cyclotomic import CycInt
from mackey_e2.errors import VerificationError
from mackey_e2.groups import preset


@pytest.mark.parametrize(
    "spec, degrees",
    [
        ("1", (1,)),
        ("Z/3", (1, 1, 1)),
        ("Z/2xZ/2", (1, 1, 1, 1)),
        ("S3", (1, 1, 2)),
        ("D4", (1, 1, 1, 1, 2)),
        ("Q8", (1, 1, 1, 1, 2)),
        ("A4", (1, 1, 1, 3)),
        ("S4", (1, 1, 2, 3, 3)),
    ],
)
def test_character_degrees_and_orthogonality(spec, degrees):
    table = character_table(preset(spec))
    table.verify()

    assert table.degrees == degrees
    assert all(v == CycInt.from_int(table.conductor, 1) for v in table.characters[0])


def test_cyclic_table_uses_roots_of_unity(z3):
    table = character_table(z3)
    generator = table.representatives[1]
    values = sorted(table.value(k, generator).coeffs for k in range(3))

    assert values == sorted(CycInt.root_power(3, k).coeffs for k in range(3))


def test_induction_and_restriction_in_s3(s3):
    trivial, C2, C3, whole = (cls.representative for cls in s3.lattice.classes)

    assert permutation_character(trivial, whole).coords == (1, 1, 2)
    assert permutation_character(C3, whole).coords == (1, 1, 0)
    assert permutation_character(C2, whole).coords == (1, 0, 1)
    standard = VirtualCharacter.irreducible(whole, 2)
    assert res(standard, C3).coords == (0, 1, 1)
    assert res(standard, trivial).coords == (2,)


def test_products_in_s3(s3):
    whole = s3.whole
    sign = VirtualCharacter.irreducible(whole, 1)
    standard = VirtualCharacter.irreducible(whole, 2)

    assert mult(sign, sign) == VirtualCharacter.trivial(whole)
    assert (standard * standard).coords == (1, 1, 1)
    assert (sign * standard) == standard
    assert gcd_degrees(character_table(s3)) == 1


def test_frobenius_reciprocity(s3):
    C2 = s3.lattice.classes[1].representative
    whole = s3.whole
    for i in range(len(character_table(C2))):
        induced = ind(VirtualCharacter.irreducible(C2, i), whole)
        for j in range(len(character_table(whole))):
            restricted = res(VirtualCharacter.irreducible(whole, j), C2)
            assert induced.coords[j] == restricted.coords[i]


def test_conjugation_moves_to_conjugate_subgroup(s3):
    cls = s3.lattice.classes[1]
    C2 = cls.representative
    sign = VirtualCharacter.irreducible(C2, 1)
    for g in range(s3.order):
        moved = conj(sign, g)
        assert moved.subgroup == C2.conjugate(g)
        assert moved.coords == (0, 1)


def test_restriction_needs_a_subgroup(s3):
    C2 = s3.lattice.classes[1].representative
    C3 = s3.lattice.classes[2].representative

    with pytest.raises(ValueError):
        res(VirtualCharacter.trivial(C3), C2)
    with pytest.raises(ValueError):
        VirtualCharacter.trivial(C2) + VirtualCharacter.trivial(C3)


def test_table_cache_on_disk(tmp_path):
    group = preset("S3")
    group.table_cache_dir = str(tmp_path)
    first = character_table(group)

    assert len(list(tmp_path.iterdir())) == 1
    again = preset("S3")
    again.table_cache_dir = str(tmp_path)
    second = character_table(again)
    assert second.characters == first.characters
    assert second.classes == first.classes


def test_computed_tables_are_verified(monkeypatch, s3):
    solve = characters._dixon_schneider

    def repeated_row(subgroup, classes, conductor):
        rows = solve(subgroup, classes, conductor)
        return rows[:-1] + [rows[0]]

    monkeypatch.setattr(characters, "_dixon_schneider", repeated_row)

    with pytest.raises(VerificationError, match="is invalid"):
        characters._compute_table(s3.whole)

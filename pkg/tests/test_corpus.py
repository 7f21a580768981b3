import itertools
import random

import pytest

from mackey_e2.corpus import (
    CHECKS,
    CaseResult,
    CorpusReport,
    adjunction_pairs,
    check_bouc_category,
    check_characters,
    draw_pairs,
    module_pool,
    mutation_failures,
    run_corpus,
    two_path_failures,
    yoneda_failures,
)
from mackey_e2.errors import InputError
from mackey_e2.groups import preset
from mackey_e2.gsets import coset_space


def _orbits(group):
    return [coset_space(group, cls.representative) for cls in group.lattice.classes]


def test_every_check_passes_on_z2():
    report = run_corpus(["Z/2"], seed=3, progress=False)

    assert report.passed, report.lines()
    assert [r.check for r in report.results] == list(CHECKS)


def test_selected_checks_over_several_groups():
    checks = ["characters", "yoneda", "axiom closure"]

    report = run_corpus(["Z/3", "S3"], threads=2, checks=checks, progress=False)

    assert report.passed, report.lines()
    assert [r.group for r in report.results] == [preset("Z/3").name] * 3 + [preset("S3").name] * 3
    assert report.lines()[-1] == "6 of 6 checks passed"


def test_unknown_checks_are_rejected():
    with pytest.raises(InputError, match="Unknown corpus checks"):
        run_corpus(["Z/2"], checks=["characters", "astrology"], progress=False)


def test_two_path_composition_over_s3(s3):
    for X, Y, Z in itertools.product(_orbits(s3), repeat=3):
        assert two_path_failures(X, Y, Z) == []


def test_yoneda_over_the_pool(z3):
    for module in module_pool(z3)[:4]:
        for X in _orbits(z3):
            assert yoneda_failures(module, X) == []


@pytest.mark.parametrize("spec", ["Z/2", "Z/4", "S3"])
def test_mutations_are_always_detected(spec):
    for module in module_pool(preset(spec)):
        tried, detected = mutation_failures(module)
        assert tried > 0 or module.is_zero()
        assert detected == tried


def test_draw_pairs_is_distinct_and_exhausts_small_products():
    pairs = draw_pairs(random.Random(3), 8, 11, 50)

    assert len(set(pairs)) == 50
    assert all(0 <= i < 8 and 0 <= j < 11 for i, j in pairs)
    assert draw_pairs(random.Random(3), 3, 4, 50) == list(itertools.product(range(3), range(4)))


@pytest.mark.parametrize("spec", ["Z/2", "S3"])
def test_change_of_group_checks_fifty_pairs(spec):
    group = preset(spec)
    H = group.lattice.representatives[1] if spec == "S3" else group.trivial

    pairs = adjunction_pairs(group, H, random.Random(0))

    assert len(pairs) == 50
    assert len({(id(M), id(N)) for M, N in pairs}) == 50
    assert all(N.group is group for _, N in pairs)


def test_pool_contents(z2):
    names = [module.name for module in module_pool(z2)]

    assert names[:2] == ["R", "0"]
    assert "C" in names and "K" in names and "R/2" in names


@pytest.mark.parametrize("check", [check_characters, check_bouc_category])
def test_checks_are_seeded(s3, check):
    assert check(s3, random.Random(1)) == []


def test_report_lines_show_failures():
    report = CorpusReport(
        0,
        [CaseResult("yoneda", "Z/2"), CaseResult("characters", "S3", ["orthogonality fails"], "exhaustive")],
    )

    lines = report.lines()

    assert not report.passed
    assert lines[0].startswith("ok   Z/2")
    assert lines[1] == f"FAIL {'S3':<8} characters (exhaustive)"
    assert lines[2].strip() == "orthogonality fails"
    assert lines[-1] == "1 of 2 checks passed"

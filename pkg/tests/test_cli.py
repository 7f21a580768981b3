import json

import pytest

from mackey_e2.cli import build_parser, main
from mackey_e2.constructions import representation_module
from mackey_e2.corpus import torsion_quotient
from mackey_e2.formats import module_to_dict, read_document, save_module, write_document
from mackey_e2.groups import preset


@pytest.fixture
def cyclic_module_file(tmp_path):
    integers = representation_module(preset("1"))
    path = str(tmp_path / "z3.json")
    save_module(torsion_quotient(integers, 3), path)
    return path


@pytest.fixture
def corrupted_module_file(tmp_path):
    document = module_to_dict(representation_module(preset("Z/2")))
    for entry in document["degrees"][0]["maps"]:
        if entry["kind"] == "ind" and entry["source"] != entry["target"]:
            entry["matrix"] = [[-x for x in row] for row in entry["matrix"]]
            break
    path = str(tmp_path / "broken.json")
    write_document(document, path)
    return path


def test_parser_requires_a_command():
    with pytest.raises(SystemExit) as caught:
        build_parser().parse_args([])

    assert caught.value.code == 2


def test_group_info(capsys):
    assert main(["group", "info", "S3"]) == 0

    out = capsys.readouterr().out
    assert "group S3: order 6" in out
    assert "4 subgroup classes" in out


def test_group_info_as_json(capsys):
    assert main(["--json", "-g", "D4", "group", "info"]) == 0

    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "report"
    assert document["report"] == "group_info"
    assert document["order"] == 8
    assert len(document["classes"]) == 8


@pytest.mark.parametrize(
    "argv, message",
    [
        (["group", "info"], "group is required"),
        (["group", "info", "S7"], ""),
        (["--max-order", "4", "group", "info", "S3"], "exceeds the configured cap"),
        (["-g", "S3", "bouc", "hom", "G/H<9>", "pt"], "H<9>"),
        (["-g", "S3", "hom", "R", "nonsense"], "Unknown module"),
        (["-g", "S3", "hom", "Bur", "R"], "burnside functor"),
        (["-g", "S3", "ext", "Bur", "R", "--max-p", "1"], "burnside functor"),
    ],
)
def test_input_errors_exit_with_two(capsys, argv, message):
    assert main(argv) == 2

    err = capsys.readouterr().err
    assert err.startswith("error: ")
    assert message in err


def test_negative_degrees_are_usage_errors():
    with pytest.raises(SystemExit) as caught:
        main(["-g", "S3", "ext", "R", "R", "--max-p", "-1"])

    assert caught.value.code == 2


def test_corrupted_module_fails_the_check(capsys, corrupted_module_file):
    assert main(["-g", "Z/2", "module", "check", corrupted_module_file]) == 1

    err = capsys.readouterr().err
    assert err.startswith("verification failed")
    assert "Mackey formula" in err


def test_module_check_and_show(capsys, tmp_path):
    export = str(tmp_path / "r.json")

    assert main(["-g", "Z/2", "module", "check", "R"]) == 0
    assert "degree 0:" in capsys.readouterr().out
    assert main(["-g", "Z/2", "module", "show", "R", "--export", export]) == 0
    assert read_document(export, "mackey_module")["name"] == "R"


def test_tom_and_output_dir(capsys, tmp_path):
    assert main(["--output-dir", str(tmp_path), "-g", "S3", "tom"]) == 0

    assert "table of marks of S3" in capsys.readouterr().out
    document = read_document(str(tmp_path / "table_of_marks.json"), "report")
    assert document["marks"][0] == [6, 3, 2, 1]


def test_chartable_export(capsys, tmp_path):
    path = str(tmp_path / "chars.json")

    assert main(["-g", "S3", "chartable", "--export", path]) == 0

    assert read_document(path, "character_table")["conductor"] >= 1
    assert "character table of" in capsys.readouterr().out


def test_bouc_hom(capsys):
    assert main(["-g", "S3", "bouc", "hom", "G/H<1>", "pt"]) == 0

    assert "has rank 2 (double coset formula: 2)" in capsys.readouterr().out


def test_ext_and_tor_over_the_trivial_group(capsys, cyclic_module_file):
    assert main(["-g", "1", "ext", cyclic_module_file, "R", "--max-p", "2"]) == 0
    assert "n=1: degree 0 Z/3, degree 1 0" in capsys.readouterr().out

    assert main(["-g", "1", "tor", cyclic_module_file, cyclic_module_file, "--max-p", "1"]) == 0
    out = capsys.readouterr().out
    assert "n=0: degree 0 Z/3" in out
    assert "n=1: degree 0 Z/3" in out


def test_resolve(capsys, cyclic_module_file):
    assert main(["-g", "1", "resolve", cyclic_module_file]) == 0

    out = capsys.readouterr().out
    assert "complete, length 1" in out
    assert "certificates: d o d = 0, levelwise exact" in out


def test_e2_page_as_json(capsys):
    assert main(["--json", "-g", "S3", "e2", "kunneth", "R[G/H<1>]", "R[G/H<2>]", "--max-p", "1"]) == 0

    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "e2_page"
    assert document["page"] == "kunneth"
    assert {"p": 0, "q": 0, "rank": 1, "torsion": []} in document["cells"]


def test_hom_and_vanishing(capsys):
    assert main(["-g", "S3", "hom", "R", "R"]) == 0
    assert "hom(R, R) = Z^3" in capsys.readouterr().out
    assert main(["-g", "S3", "vanishing", "R"]) == 0
    assert "consistent with induction theorems: True" in capsys.readouterr().out


@pytest.mark.parametrize("command", ["brauer-check", "artin-check"])
def test_induction_commands(capsys, command):
    assert main([command, "A4"]) == 0

    assert "group A4" in capsys.readouterr().out


def test_corpus_run(capsys, tmp_path):
    argv = ["--output-dir", str(tmp_path), "corpus", "run", "--groups", "Z/2", "--checks", "characters", "--no-progress"]

    assert main(argv) == 0

    assert "1 of 1 checks passed" in capsys.readouterr().out
    assert read_document(str(tmp_path / "corpus_report.json"), "report")["passed"] is True

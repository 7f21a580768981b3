import json

import pytest

from mackey_e2.characters import character_table
from mackey_e2.constructions import representable, representation_module
from mackey_e2.corpus import torsion_quotient
from mackey_e2.errors import InputError, VerificationError
from mackey_e2.formats import (
    FORMAT_VERSION,
    character_table_from_dict,
    character_table_to_dict,
    dumps_document,
    e2_page_from_dict,
    e2_page_to_dict,
    load_character_table,
    load_module,
    module_from_dict,
    module_to_dict,
    read_document,
    report_to_dict,
    save_character_table,
    save_module,
    write_document,
)
from mackey_e2.gsets import coset_space
from mackey_e2.mackey import GradedMackeyModule
from mackey_e2.specseq import uct_e2


def _through_json(document):
    return json.loads(dumps_document(document))


def _same_maps(first, second):
    return [(kind, key, matrix) for kind, key, _, _, matrix in first.structure_maps()] == [
        (kind, key, matrix) for kind, key, _, _, matrix in second.structure_maps()
    ]


def test_documents_are_sorted_and_indented(z2):
    text = dumps_document(module_to_dict(representation_module(z2)))

    assert text.startswith('{\n  "classes"')
    assert text.endswith("}\n")
    document = json.loads(text)
    assert document["format_version"] == FORMAT_VERSION
    assert document["kind"] == "mackey_module"


def test_module_round_trip(s3, tmp_path):
    module = torsion_quotient(representation_module(s3), 3)
    path = str(tmp_path / "modules" / "r3.json")

    save_module(module, path)
    loaded = load_module(path, s3)

    assert loaded.name == module.name
    assert loaded.odd.is_zero()
    assert loaded.even.level_invariants() == module.level_invariants()
    assert _same_maps(loaded.even, module)


def test_graded_module_round_trip(z2):
    R = representation_module(z2)
    graded = GradedMackeyModule(R, representable(z2, coset_space(z2, z2.trivial)), "M")

    document = _through_json(module_to_dict(graded))
    loaded = module_from_dict(document, z2)

    assert len(document["degrees"]) == 2
    assert loaded.odd.level_invariants() == graded.odd.level_invariants()
    assert loaded.name == "M"


def test_corrupted_module_fails_verification(z2):
    document = _through_json(module_to_dict(representation_module(z2)))
    for entry in document["degrees"][0]["maps"]:
        if entry["kind"] == "ind" and entry["source"] != entry["target"]:
            entry["matrix"] = [[-x for x in row] for row in entry["matrix"]]
            break

    with pytest.raises(VerificationError) as caught:
        module_from_dict(document, z2)

    assert any(failure.startswith("Mackey formula") for failure in caught.value.failures)


@pytest.mark.parametrize(
    "edit, location",
    [
        (lambda d: d.update(format_version=2), "$.format_version"),
        (lambda d: d.update(kind="e2_page"), "$.kind"),
        (lambda d: d.update(kind="nonsense"), "$.kind"),
        (lambda d: d.pop("name"), "$: missing field 'name'"),
        (lambda d: d["degrees"][0].pop("levels"), "$.degrees[0]: missing field 'levels'"),
        (lambda d: d["degrees"][0]["levels"].pop(), "$.degrees[0].levels"),
        (lambda d: d["degrees"][0]["maps"][0].update(matrix=[[1, 2, 3]]), "$.degrees[0].maps[0].matrix"),
        (lambda d: d["degrees"][0]["maps"][0].update(kind="twist"), "$.degrees[0].maps[0].kind"),
        (lambda d: d["degrees"][0]["maps"][0].update(source=True), "$.degrees[0].maps[0].source"),
        (lambda d: d["classes"].reverse(), "$.classes[0]"),
        (lambda d: d.update(degrees=[]), "$.degrees"),
    ],
)
def test_module_errors_name_the_field(z2, edit, location):
    document = _through_json(module_to_dict(representation_module(z2)))
    edit(document)

    with pytest.raises(InputError, match=location.replace("[", r"\[").replace("]", r"\]").replace("$", r"\$")):
        module_from_dict(document, z2)


def test_module_for_another_group_is_rejected(z2, z3):
    document = module_to_dict(representation_module(z2))

    with pytest.raises(InputError, match="fingerprint"):
        module_from_dict(document, z3)


def test_character_table_round_trip(s3, tmp_path):
    table = character_table(s3)
    path = str(tmp_path / "s3.json")

    save_character_table(table, path)
    loaded = load_character_table(path, s3)

    assert loaded.characters == table.characters
    assert loaded.classes == table.classes
    assert loaded.degrees == (1, 1, 2)


def test_character_table_errors(z3):
    document = _through_json(character_table_to_dict(character_table(z3)))
    width = len(document["characters"][1][1])
    document["characters"][1][1] = [5] + [0] * (width - 1)

    with pytest.raises(VerificationError):
        character_table_from_dict(document, z3)

    document = _through_json(character_table_to_dict(character_table(z3)))
    document["characters"][0] = document["characters"][0][:1]
    with pytest.raises(InputError, match=r"\$\.characters\[0\]"):
        character_table_from_dict(document, z3)


def test_e2_page_round_trip(trivial_group):
    integers = representation_module(trivial_group)
    page = uct_e2(torsion_quotient(integers, 2), integers, 2)

    loaded = e2_page_from_dict(_through_json(e2_page_to_dict(page)))

    assert loaded == page
    assert loaded.notes == page.notes


def test_e2_page_errors():
    document = {"format_version": 1, "kind": "e2_page", "page": "uct", "group": "1", "p_max": 0, "truncated": "no", "cells": []}

    with pytest.raises(InputError, match=r"\$\.truncated"):
        e2_page_from_dict(document)
    document["truncated"] = False
    document["cells"] = [{"p": 0, "q": 0, "rank": 1}]
    with pytest.raises(InputError, match=r"\$\.cells\[0\]: missing field 'torsion'"):
        e2_page_from_dict(document)


def test_read_and_write(tmp_path, z2):
    path = str(tmp_path / "report.json")
    write_document(report_to_dict("group info", z2, True, {"order": 2}), path)

    document = read_document(path, "report")

    assert document["group"]["order"] == 2
    assert document["passed"] is True
    with pytest.raises(InputError, match="expected a mackey_module document"):
        read_document(path, "mackey_module")
    (tmp_path / "list.json").write_text("[]", encoding="utf-8")
    with pytest.raises(InputError, match="expected a JSON object"):
        read_document(str(tmp_path / "list.json"))

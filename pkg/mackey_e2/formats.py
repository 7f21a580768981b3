"""
JSON documents: character tables, Mackey modules, E2 pages and reports.

Every document carries ``format_version`` and ``kind`` and is written with
sorted keys and two-space indentation. Loaders name the offending field by its
JSON path and re-verify what they load.
"""

from __future__ import annotations

import json
import logging
import os
from typing import Any

from .characters import CharacterTable
from .cyclotomic import CycInt, degree
from .errors import InputError
from .groups import FiniteGroup
from .mackey import GradedMackeyModule, MackeyModule, check_axioms, zero_module
from .green import green_functor
from .specseq import E2Page
from .zlinalg import IntMatrix, PresentedAbGroup

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
KINDS = ("character_table", "mackey_module", "e2_page", "report")


# -- plumbing ------------------------------------------------------------------


def dumps_document(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_document(document: dict, path: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps_document(document))
    logger.debug("wrote %s document to %s", document.get("kind"), path)
    return path


def read_document(path: str, kind: str | None = None) -> dict:
    """
    Load a JSON document and check its version and kind.
    """
    with open(path, "r", encoding="utf-8") as handle:
        document = json.load(handle)
    check_header(document, kind)
    return document


def check_header(document: Any, kind: str | None = None):
    if not isinstance(document, dict):
        raise InputError("$: expected a JSON object.")
    version = _field(document, "format_version", "$", int)
    if version != FORMAT_VERSION:
        raise InputError(f"$.format_version: unsupported version {version}, expected {FORMAT_VERSION}.")
    found = _field(document, "kind", "$", str)
    if found not in KINDS:
        raise InputError(f"$.kind: unknown document kind {found!r}.")
    if kind is not None and found != kind:
        raise InputError(f"$.kind: expected a {kind} document, found {found}.")


def _header(kind: str) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": kind}


def _field(document: Any, key: str, location: str, types=None):
    if not isinstance(document, dict):
        raise InputError(f"{location}: expected a JSON object.")
    if key not in document:
        raise InputError(f"{location}: missing field '{key}'.")
    value = document[key]
    if types is not None:
        wanted = types if isinstance(types, tuple) else (types,)
        if isinstance(value, bool) and bool not in wanted:
            raise InputError(f"{location}.{key}: expected {_type_names(wanted)}, found a boolean.")
        if not isinstance(value, wanted):
            raise InputError(f"{location}.{key}: expected {_type_names(wanted)}.")
    return value


def _type_names(types) -> str:
    names = {int: "an integer", str: "a string", list: "a list", dict: "an object", bool: "a boolean"}
    return " or ".join(names.get(t, t.__name__) for t in types)


def _int_list(value: Any, location: str) -> list[int]:
    if not isinstance(value, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in value):
        raise InputError(f"{location}: expected a list of integers.")
    return value


def _matrix(value: Any, rows: int, cols: int, location: str) -> IntMatrix:
    if not isinstance(value, list) or len(value) != rows:
        raise InputError(f"{location}: expected {rows} rows.")
    parsed = []
    for r, row in enumerate(value):
        row = _int_list(row, f"{location}[{r}]")
        if len(row) != cols:
            raise InputError(f"{location}[{r}]: expected {cols} entries, found {len(row)}.")
        parsed.append(row)
    return IntMatrix.from_rows(parsed, cols)


def _group_reference(group: FiniteGroup) -> dict:
    return {"fingerprint": group.fingerprint, "order": group.order, "spec": group.spec}


def _check_group(document: dict, group: FiniteGroup, location: str):
    reference = _field(document, "group", location, dict)
    fingerprint = _field(reference, "fingerprint", f"{location}.group", str)
    if fingerprint != group.fingerprint:
        spec = reference.get("spec", "?")
        raise InputError(
            f"{location}.group.fingerprint: document was written for {spec}, not for {group.spec}."
        )


# -- character tables ------------------------------------------------------------


def character_table_to_dict(table: CharacterTable) -> dict:
    document = _header("character_table")
    document.update(
        {
            "group": _group_reference(table.group),
            "subgroup": list(table.subgroup.elements),
            "conductor": table.conductor,
            "classes": [list(members) for members in table.classes],
            "characters": [[list(value.coeffs) for value in chi] for chi in table.characters],
        }
    )
    return document


def character_table_from_dict(document: dict, group: FiniteGroup) -> CharacterTable:
    check_header(document, "character_table")
    _check_group(document, group, "$")
    elements = _int_list(_field(document, "subgroup", "$", list), "$.subgroup")
    subgroup = group.subgroup(elements)
    conductor = _field(document, "conductor", "$", int)
    if conductor != group.conductor:
        raise InputError(f"$.conductor: expected {group.conductor}, found {conductor}.")
    classes = _field(document, "classes", "$", list)
    members = [_int_list(c, f"$.classes[{k}]") for k, c in enumerate(classes)]
    width = degree(conductor)
    characters = []
    for i, chi in enumerate(_field(document, "characters", "$", list)):
        location = f"$.characters[{i}]"
        if not isinstance(chi, list) or len(chi) != len(members):
            raise InputError(f"{location}: expected one value per class ({len(members)}).")
        values = []
        for k, coeffs in enumerate(chi):
            coeffs = _int_list(coeffs, f"{location}[{k}]")
            if len(coeffs) != width:
                raise InputError(f"{location}[{k}]: expected {width} cyclotomic coefficients.")
            values.append(CycInt(conductor, tuple(coeffs)))
        characters.append(values)
    table = CharacterTable(subgroup, members, characters, conductor)
    table.verify()
    return table


def save_character_table(table: CharacterTable, path: str) -> str:
    return write_document(character_table_to_dict(table), path)


def load_character_table(path: str, group: FiniteGroup) -> CharacterTable:
    return character_table_from_dict(read_document(path, "character_table"), group)


# -- modules --------------------------------------------------------------------


def _component_to_dict(module: MackeyModule) -> dict:
    maps = []
    for kind, key, source, target, matrix in module.structure_maps():
        maps.append(
            {
                "kind": kind,
                "key": list(key),
                "source": source,
                "target": target,
                "matrix": matrix.to_lists(),
            }
        )
    return {"levels": [list(level.moduli) for level in module.levels], "maps": maps}


def module_to_dict(module: MackeyModule | GradedMackeyModule) -> dict:
    graded = module if isinstance(module, GradedMackeyModule) else GradedMackeyModule.concentrated(module, 0)
    group = graded.group
    document = _header("mackey_module")
    degrees = [_component_to_dict(graded.even)]
    if not graded.odd.is_zero():
        degrees.append(_component_to_dict(graded.odd))
    document.update(
        {
            "name": graded.name,
            "functor": graded.even.functor.kind,
            "group": _group_reference(group),
            "classes": [list(cls.representative.elements) for cls in group.lattice.classes],
            "degrees": degrees,
        }
    )
    return document


def _level(value: Any, location: str) -> PresentedAbGroup:
    if isinstance(value, list):
        moduli = _int_list(value, location)
        if any(d < 0 for d in moduli):
            raise InputError(f"{location}: moduli must be non-negative.")
        return PresentedAbGroup.from_moduli(moduli)
    ngens = _field(value, "ngens", location, int)
    relations = _field(value, "relations", location, list)
    columns = []
    for k, column in enumerate(relations):
        column = _int_list(column, f"{location}.relations[{k}]")
        if len(column) != ngens:
            raise InputError(f"{location}.relations[{k}]: expected {ngens} entries.")
        columns.append(column)
    return PresentedAbGroup(ngens, IntMatrix.from_columns(columns, ngens))


def _component_from_dict(
    document: Any, group: FiniteGroup, functor_kind: str, name: str, location: str
) -> MackeyModule:
    lattice = group.lattice
    count = len(lattice.classes)
    raw_levels = _field(document, "levels", location, list)
    if len(raw_levels) != count:
        raise InputError(f"{location}.levels: expected {count} levels, found {len(raw_levels)}.")
    levels = [_level(value, f"{location}.levels[{c}]") for c, value in enumerate(raw_levels)]
    restrictions, inductions, conjugations, actions = {}, {}, {}, {}
    for k, entry in enumerate(_field(document, "maps", location, list)):
        where = f"{location}.maps[{k}]"
        kind = _field(entry, "kind", where, str)
        key = tuple(_int_list(_field(entry, "key", where, list), f"{where}.key"))
        source = _field(entry, "source", where, int)
        target = _field(entry, "target", where, int)
        if len(key) != 2 or not (0 <= source < count and 0 <= target < count):
            raise InputError(f"{where}: key must have two entries and classes must lie in 0..{count - 1}.")
        matrix = _matrix(_field(entry, "matrix", where, list), levels[target].ngens, levels[source].ngens, f"{where}.matrix")
        if kind == "res":
            restrictions[key] = matrix
        elif kind == "ind":
            inductions[key] = matrix
        elif kind == "con":
            conjugations.setdefault(key[0], {})[key[1]] = matrix
        elif kind == "act":
            actions.setdefault(key[0], {})[key[1]] = matrix
        else:
            raise InputError(f"{where}.kind: unknown structure map kind {kind!r}.")
    ordered_actions = {}
    for c, by_index in actions.items():
        if sorted(by_index) != list(range(len(by_index))):
            raise InputError(f"{location}.maps: action matrices at class {c} must be numbered 0..{len(by_index) - 1}.")
        ordered_actions[c] = [by_index[i] for i in range(len(by_index))]
    module = MackeyModule(
        group,
        levels,
        restrictions,
        inductions,
        conjugations,
        ordered_actions,
        name,
        green_functor(group, functor_kind),
    )
    check_axioms(module).raise_on_failure()
    return module


def module_from_dict(document: dict, group: FiniteGroup) -> GradedMackeyModule:
    """
    Rebuild a graded module; every component must pass check_axioms.
    """
    check_header(document, "mackey_module")
    _check_group(document, group, "$")
    name = _field(document, "name", "$", str)
    functor_kind = document.get("functor", "representation")
    classes = _field(document, "classes", "$", list)
    representatives = group.lattice.representatives
    if len(classes) != len(representatives):
        raise InputError(f"$.classes: expected {len(representatives)} subgroup classes, found {len(classes)}.")
    for c, (elements, rep) in enumerate(zip(classes, representatives)):
        if tuple(_int_list(elements, f"$.classes[{c}]")) != rep.elements:
            raise InputError(
                f"$.classes[{c}]: representative {elements} differs from {rep.label}; "
                "the module was written under different subgroup representatives."
            )
    degrees = _field(document, "degrees", "$", list)
    if not 1 <= len(degrees) <= 2:
        raise InputError("$.degrees: expected one or two graded components.")
    components = [
        _component_from_dict(block, group, functor_kind, name if i == 0 else f"{name}_1", f"$.degrees[{i}]")
        for i, block in enumerate(degrees)
    ]
    if len(components) == 1:
        components.append(zero_module(group, functor=components[0].functor))
    logger.info("loaded module %s over %s", name, group.name)
    return GradedMackeyModule(components[0], components[1], name)


def save_module(module: MackeyModule | GradedMackeyModule, path: str) -> str:
    return write_document(module_to_dict(module), path)


def load_module(path: str, group: FiniteGroup) -> GradedMackeyModule:
    return module_from_dict(read_document(path, "mackey_module"), group)


# -- E2 pages -----------------------------------------------------------------------


def e2_page_to_dict(page: E2Page) -> dict:
    document = _header("e2_page")
    document.update(
        {
            "page": page.kind,
            "group": page.group,
            "p_max": page.p_max,
            "collapse": page.collapse,
            "truncated": page.truncated,
            "notes": list(page.notes),
            "cells": [
                {"p": p, "q": q, "rank": rank, "torsion": list(torsion)}
                for (p, q), (rank, torsion) in sorted(page.cells.items())
            ],
        }
    )
    return document


def e2_page_from_dict(document: dict) -> E2Page:
    check_header(document, "e2_page")
    cells = {}
    for k, cell in enumerate(_field(document, "cells", "$", list)):
        where = f"$.cells[{k}]"
        p = _field(cell, "p", where, int)
        q = _field(cell, "q", where, int)
        rank = _field(cell, "rank", where, int)
        torsion = tuple(_int_list(_field(cell, "torsion", where, list), f"{where}.torsion"))
        cells[(p, q)] = (rank, torsion)
    collapse = document.get("collapse")
    if collapse is not None and not isinstance(collapse, str):
        raise InputError("$.collapse: expected a string or null.")
    return E2Page(
        _field(document, "page", "$", str),
        _field(document, "group", "$", str),
        cells,
        _field(document, "p_max", "$", int),
        collapse,
        _field(document, "truncated", "$", bool),
        [str(note) for note in document.get("notes", [])],
    )


# -- reports ----------------------------------------------------------------------------


def report_to_dict(report: str, group: FiniteGroup | None, passed: bool, body: dict) -> dict:
    document = _header("report")
    document.update({"report": report, "passed": passed, **body})
    if group is not None:
        document["group"] = _group_reference(group)
    return document


def invariants_to_dict(invariants: tuple[int, tuple[int, ...]]) -> dict:
    rank, torsion = invariants
    return {"rank": rank, "torsion": list(torsion)}

"""
Command-line interface for the mackey_e2 project.
"""

import argparse
import json
import logging
import sys

from .bouc import hom_basis, rank_formula
from .burnside import burnside_ring
from .characters import character_table
from .config import DEFAULT_MAX_P, WorkspaceConfig
from .corpus import CHECKS, PRESETS, run_corpus
from .errors import InputError, VerificationError
from .formats import (
    character_table_to_dict,
    dumps_document,
    e2_page_to_dict,
    invariants_to_dict,
    module_to_dict,
    report_to_dict,
    write_document,
)
from .groups import DEFAULT_MAX_ORDER, cyclic_subgroup_classes, elementary_subgroup_classes
from .homalg import ext, resolve, tor
from .mackey import check_axioms, hom
from .specseq import artin_rank, brauer_surjectivity, kunneth_e2, show_invariants, uct_e2, vanishing_check
from .workspace import Workspace

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser() -> argparse.ArgumentParser:
    """
    Create and configure the argument parser for the CLI.
    """
    parser = argparse.ArgumentParser(
        prog="mackey_e2",
        description="Exact Mackey-module algebra over the representation Green functor: "
        "character tables, Burnside-Bouc hom groups, Ext/Tor and E2 pages.",
    )
    parser.add_argument(
        "--group",
        "-g",
        help="Group spec: Z/n, Dn, Sn, An, Q8, Ep^k, products with x, or perm:<degree>:<cycles>.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="Determinism seed for randomized checks and choices (default: 0).",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="Worker threads for the corpus driver (default: 1).",
    )
    parser.add_argument(
        "--max-order",
        type=int,
        default=DEFAULT_MAX_ORDER,
        help=f"Refuse groups larger than this order (default: {DEFAULT_MAX_ORDER}).",
    )
    parser.add_argument(
        "--randomize-choices",
        action="store_true",
        help="Pick subgroup representatives, transporters and base points pseudo-randomly from --seed.",
    )
    parser.add_argument(
        "--json",
        action="store_true",
        help="Print machine-readable JSON instead of tables.",
    )
    parser.add_argument(
        "--output-dir",
        help="Also write every emitted JSON document into this directory.",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Increase log verbosity (-v for INFO, -vv for DEBUG).",
    )

    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    group = commands.add_parser("group", help="Group facts.").add_subparsers(dest="action", metavar="action")
    group.required = True
    info = group.add_parser("info", help="Order, exponent and subgroup classes.")
    info.add_argument("spec", nargs="?", help="Group spec (defaults to --group).")

    chartable = commands.add_parser("chartable", help="Exact character table.")
    chartable.add_argument("spec", nargs="?", help="Group spec (defaults to --group).")
    chartable.add_argument("--subgroup", help="Table of a subgroup: 1, G, H<k> or <i,j,...>.")
    chartable.add_argument("--export", help="Write the table as JSON to this path.")

    tom = commands.add_parser("tom", help="Table of marks.")
    tom.add_argument("spec", nargs="?", help="Group spec (defaults to --group).")

    bouc = commands.add_parser("bouc", help="Burnside-Bouc category.").add_subparsers(dest="action", metavar="action")
    bouc.required = True
    bouc_hom = bouc.add_parser("hom", help="Basis of the hom group B(X, Y) = R(X x Y).")
    bouc_hom.add_argument("source", help="G-set literal X, for example G/1+G/G.")
    bouc_hom.add_argument("target", help="G-set literal Y.")

    module = commands.add_parser("module", help="Inspect a Mackey module.").add_subparsers(dest="action", metavar="action")
    module.required = True
    for name, text in (("check", "Run the Mackey module axioms."), ("show", "Print levels and structure maps.")):
        sub = module.add_parser(name, help=text)
        sub.add_argument("module", help="R, Bur, 0, R[<gset>] or a module JSON file.")
        if name == "show":
            sub.add_argument("--export", help="Write the module as JSON to this path.")

    for name, text in (("hom", "Hom group."), ("ext", "Graded Ext table."), ("tor", "Graded Tor table.")):
        sub = commands.add_parser(name, help=text)
        sub.add_argument("first", help="Module M.")
        sub.add_argument("second", help="Module N.")
        if name != "hom":
            sub.add_argument("--max-p", type=int, default=DEFAULT_MAX_P, help=f"Largest degree (default: {DEFAULT_MAX_P}).")

    e2 = commands.add_parser("e2", help="Second pages of the spectral sequences.")
    e2.add_argument("page", choices=("uct", "kunneth"), help="Which spectral sequence.")
    e2.add_argument("first", help="Module A.")
    e2.add_argument("second", help="Module B.")
    e2.add_argument("--max-p", type=int, default=DEFAULT_MAX_P, help=f"Largest column (default: {DEFAULT_MAX_P}).")

    res = commands.add_parser("resolve", help="Projective resolution by representables.")
    res.add_argument("module", help="Module M.")
    res.add_argument("--max-len", type=int, default=DEFAULT_MAX_P, help=f"Largest resolution degree (default: {DEFAULT_MAX_P}).")

    vanishing = commands.add_parser("vanishing", help="Vanishing and torsion checks against the induction theorems.")
    vanishing.add_argument("module", help="Module M.")

    for name, text in (("brauer-check", "Induction from elementary subgroups onto R(G)."), ("artin-check", "Rational rank of induction from cyclic subgroups.")):
        sub = commands.add_parser(name, help=text)
        sub.add_argument("spec", nargs="?", help="Group spec (defaults to --group).")

    corpus = commands.add_parser("corpus", help="Acceptance corpus.").add_subparsers(dest="action", metavar="action")
    corpus.required = True
    run = corpus.add_parser("run", help="Run every check on the preset groups.")
    run.add_argument("--groups", nargs="+", default=list(PRESETS), help="Group specs (default: all presets).")
    run.add_argument("--checks", nargs="+", choices=sorted(CHECKS), help="Only these checks.")
    run.add_argument("--no-progress", action="store_true", help="Hide the progress bar.")
    return parser


# -- commands ------------------------------------------------------------------------


def _group_info(workspace, args):
    group = workspace.group
    lattice = group.lattice
    cyclic = {cls.index for cls in cyclic_subgroup_classes(group)}
    elementary = {cls.index for cls in elementary_subgroup_classes(group)}
    lines = [
        f"group {group.name}: order {group.order}, exponent {group.exponent}",
        f"{len(lattice.classes)} subgroup classes",
    ]
    classes = []
    for cls in lattice.classes:
        H = cls.representative
        flags = [flag for flag, on in (("cyclic", cls.index in cyclic), ("elementary", cls.index in elementary)) if on]
        lines.append(f"  H<{cls.index}> order {H.order:>3}, {cls.size} conjugates, rep {H.label} {' '.join(flags)}")
        classes.append(
            {
                "index": cls.index,
                "order": H.order,
                "conjugates": cls.size,
                "representative": list(H.elements),
                "cyclic": cls.index in cyclic,
                "elementary": cls.index in elementary,
            }
        )
    body = {"order": group.order, "exponent": group.exponent, "classes": classes}
    return lines, report_to_dict("group_info", group, True, body), True


def _chartable(workspace, args):
    target = workspace.subgroup(args.subgroup) if args.subgroup else workspace.group.whole
    table = character_table(target)
    table.verify()
    lines = [f"character table of {target.label} (conductor {table.conductor}, z = exp(2 pi i / {table.conductor}))"]
    lines.append("class reps  " + "  ".join(str(r) for r in table.representatives))
    lines.append("class sizes " + "  ".join(str(s) for s in table.sizes))
    for k, chi in enumerate(table.characters):
        lines.append(f"chi{k:<2} " + "  ".join(repr(v) for v in chi))
    document = character_table_to_dict(table)
    if args.export:
        write_document(document, args.export)
        lines.append(f"written to {args.export}")
    return lines, document, True


def _tom(workspace, args):
    ring = burnside_ring(workspace.group)
    marks = ring.marks
    lines = [f"table of marks of {workspace.group.name}", "        " + " ".join(f"{label:>10}" for label in ring.labels)]
    for label, row in zip(ring.labels, marks.to_lists()):
        lines.append(f"{label:>8}" + " ".join(f"{x:>10}" for x in row))
    body = {"labels": ring.labels, "marks": marks.to_lists()}
    return lines, report_to_dict("table_of_marks", workspace.group, True, body), True


def _bouc_hom(workspace, args):
    X, Y = workspace.gset(args.source), workspace.gset(args.target)
    basis = hom_basis(X, Y)
    expected = rank_formula(X, Y)
    lines = [f"B({args.source}, {args.target}) = R(X x Y) has rank {len(basis)} (double coset formula: {expected})"]
    lines.extend(element.describe() for element in basis)
    body = {
        "source": args.source,
        "target": args.target,
        "rank": len(basis),
        "formula_rank": expected,
        "basis": [
            {
                "source_orbit": e.source_orbit,
                "target_orbit": e.target_orbit,
                "double_coset": e.double_coset,
                "stabilizer": e.stabilizer,
                "character": e.character,
            }
            for e in basis
        ],
    }
    return lines, report_to_dict("bouc_hom", workspace.group, len(basis) == expected, body), len(basis) == expected


def _module_check(workspace, args):
    graded = workspace.module(args.module)
    lines, failures = [], []
    for degree in (0, 1):
        report = check_axioms(graded.degree(degree))
        failures.extend(f"degree {degree}: {f}" for f in report.failures)
        lines.append(f"degree {degree}: {report.checked} identities checked, {len(report.failures)} failed")
    lines.extend(failures)
    body = {"module": graded.name, "failures": failures}
    return lines, report_to_dict("module_check", workspace.group, not failures, body), not failures


def _module_show(workspace, args):
    graded = workspace.module(args.module)
    lattice = workspace.group.lattice
    lines = [f"module {graded.name} over {workspace.group.name}"]
    for degree in (0, 1):
        component = graded.degree(degree)
        if component.is_zero() and degree:
            continue
        lines.append(f"degree {degree}:")
        for cls, level in zip(lattice.classes, component.levels):
            lines.append(f"  M[{cls.representative.label}] = {level.describe()}")
        for kind, key, source, target, matrix in component.structure_maps():
            lines.append(f"  {kind}{key}: class {source} -> class {target} {matrix.to_lists()}")
    document = module_to_dict(graded)
    if args.export:
        write_document(document, args.export)
        lines.append(f"written to {args.export}")
    return lines, document, True


def _hom(workspace, args):
    first, second = workspace.ungraded(args.first), workspace.ungraded(args.second)
    result = hom(first, second)
    lines = [f"hom({first.name}, {second.name}) = {show_invariants(result.invariants)} ({len(result.generators)} generators)"]
    body = {"first": first.name, "second": second.name, "hom": invariants_to_dict(result.invariants)}
    return lines, report_to_dict("hom", workspace.group, True, body), True


def _graded_table(workspace, args, kind):
    first, second = workspace.module(args.first), workspace.module(args.second)
    compute = ext if kind == "ext" else tor
    table = compute(first, second, args.max_p, workspace.config.seed)
    name = "Ext^n" if kind == "ext" else "Tor_n"
    lines = [f"{name}({first.name}, {second.name}) over {workspace.group.name}"]
    cells = []
    for n in range(args.max_p + 1):
        even, odd = table.invariants(n, 0), table.invariants(n, 1)
        lines.append(f"  n={n}: degree 0 {show_invariants(even)}, degree 1 {show_invariants(odd)}")
        for degree, value in ((0, even), (1, odd)):
            cells.append({"n": n, "degree": degree, **invariants_to_dict(value)})
    status = f"complete, projective dimension {table.length}" if table.complete else f"truncated at n={args.max_p + 1}"
    lines.append(status)
    body = {"first": first.name, "second": second.name, "cells": cells, "complete": table.complete, "length": table.length}
    return lines, report_to_dict(kind, workspace.group, True, body), True


def _e2(workspace, args):
    first, second = workspace.module(args.first), workspace.module(args.second)
    build = uct_e2 if args.page == "uct" else kunneth_e2
    page = build(first, second, args.max_p, workspace.config.seed)
    return page.table(), e2_page_to_dict(page), True


def _resolve(workspace, args):
    module = workspace.ungraded(args.module)
    resolution = resolve(module, args.max_len, workspace.config.seed)
    lines = [f"resolution of {module.name}"] + resolution.summary()
    body = {
        "module": module.name,
        "complete": resolution.complete,
        "length": resolution.length,
        "terms": [[list(g.subgroup.elements) for g in gens] for gens in resolution.generators],
        "failures": list(resolution.failures),
    }
    return lines, report_to_dict("resolution", workspace.group, resolution.certified, body), resolution.certified


def _vanishing(workspace, args):
    report = vanishing_check(workspace.module(args.module))
    body = {
        "module": report.module,
        "elementary_levels_zero": report.elementary_levels_zero,
        "module_zero": report.module_zero,
        "cyclic_levels_torsion": report.cyclic_levels_torsion,
        "module_torsion": report.module_torsion,
    }
    return report.lines(), report_to_dict("vanishing", workspace.group, report.consistent, body), report.consistent


def _induction(workspace, args, artin):
    report = artin_rank(workspace.group) if artin else brauer_surjectivity(workspace.group)
    passed = report.full_rank if artin else report.surjective
    body = {
        "family": report.family,
        "subgroups": report.subgroups,
        "matrix": report.matrix.to_lists(),
        "cokernel": invariants_to_dict(report.cokernel),
        "rank": report.rank,
        "target_rank": report.target_rank,
    }
    return report.lines(), report_to_dict(f"{report.family}_induction", workspace.group, passed, body), passed


HANDLERS = {
    ("group", "info"): _group_info,
    ("chartable", None): _chartable,
    ("tom", None): _tom,
    ("bouc", "hom"): _bouc_hom,
    ("module", "check"): _module_check,
    ("module", "show"): _module_show,
    ("hom", None): _hom,
    ("ext", None): lambda workspace, args: _graded_table(workspace, args, "ext"),
    ("tor", None): lambda workspace, args: _graded_table(workspace, args, "tor"),
    ("e2", None): _e2,
    ("resolve", None): _resolve,
    ("vanishing", None): _vanishing,
    ("brauer-check", None): lambda workspace, args: _induction(workspace, args, False),
    ("artin-check", None): lambda workspace, args: _induction(workspace, args, True),
}

FILENAMES = {
    "group": "group_info.json",
    "chartable": "character_table.json",
    "tom": "table_of_marks.json",
    "bouc": "bouc_hom.json",
    "module": "module.json",
    "hom": "hom.json",
    "ext": "ext.json",
    "tor": "tor.json",
    "e2": "e2_page.json",
    "resolve": "resolution.json",
    "vanishing": "vanishing.json",
    "brauer-check": "brauer_check.json",
    "artin-check": "artin_check.json",
    "corpus": "corpus_report.json",
}


def _emit(lines, document, args, output_path):
    if args.json:
        sys.stdout.write(dumps_document(document))
    else:
        for line in lines:
            print(line)
    if output_path:
        write_document(document, output_path)
        logger.info("wrote %s", output_path)


def _run_corpus(args) -> int:
    config = WorkspaceConfig(
        ",".join(args.groups),
        max_order=args.max_order,
        seed=args.seed,
        output_dir=args.output_dir,
        threads=args.threads,
    )
    config.validate()
    report = run_corpus(
        args.groups,
        seed=args.seed,
        threads=args.threads,
        checks=args.checks,
        max_order=args.max_order,
        progress=not args.no_progress and not args.json,
    )
    body = {
        "seed": report.seed,
        "results": [
            {"check": r.check, "group": r.group, "passed": r.passed, "failures": r.failures} for r in report.results
        ],
    }
    document = report_to_dict("corpus", None, report.passed, body)
    output_path = f"{args.output_dir}/{FILENAMES['corpus']}" if args.output_dir else None
    _emit(report.lines(), document, args, output_path)
    return 0 if report.passed else 1


def _dispatch(args) -> int:
    if args.command == "corpus":
        return _run_corpus(args)
    spec = getattr(args, "spec", None) or args.group
    if not spec:
        raise InputError("A group is required: pass --group or a spec argument.")
    config = WorkspaceConfig(
        spec,
        max_order=args.max_order,
        seed=args.seed,
        randomize_choices=args.randomize_choices,
        output_dir=args.output_dir,
        threads=args.threads,
        max_p=getattr(args, "max_p", DEFAULT_MAX_P),
        as_json=args.json,
    )
    workspace = Workspace(config)
    handler = HANDLERS[(args.command, getattr(args, "action", None))]
    lines, document, passed = handler(workspace, args)
    _emit(lines, document, args, workspace.output_path(FILENAMES[args.command]))
    return 0 if passed else 1


def main(argv: list[str] | None = None) -> int:
    """
    Entry point for the CLI.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format=LOG_FORMAT)

    if getattr(args, "max_p", 0) < 0 or getattr(args, "max_len", 0) < 0:
        parser.error("--max-p and --max-len must be non-negative.")

    try:
        return _dispatch(args)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

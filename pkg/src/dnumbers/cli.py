"""Command line front end.

Subcommands: combine, bel, pl, qvalue, conflict, matrix, validate.  Each reads
one scenario file (or standard input with ``-``) and prints either a human
report or, with ``--output machine``, deterministic JSON.

Exit codes: 0 success; 1 the scenario or table file is malformed (syntax,
unknown labels, out-of-range values, duplicate pairs); 2 the file is
well-formed but the mathematics rejects it (mass overflow, incomplete inputs
where completeness is required, total conflict, ...) or the invocation itself
is unusable.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys

from .classical import (
    conjunctive,
    dempster,
    disjunctive,
    dubois_prade,
    global_conflict,
    yager,
)
from .errors import FusionError
from .evidence import Frame
from .fusion import (
    aggregator,
    combine_many,
    dcr1,
    dcr2,
    residual_conflict,
    validate_f_points,
)
from .report import ReportDocument, fmt4, fmt_subset
from .scenario import ScenarioDocument, parse_f_table, parse_scenario

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DOMAIN = 2

CLASSICAL_RULES = {
    "dempster": dempster,
    "yager": yager,
    "dubois-prade": dubois_prade,
    "disjunctive": disjunctive,
}


class _Abort(Exception):
    """Unusable invocation against a well-formed scenario."""


def _kind(exc: Exception) -> str:
    name = type(exc).__name__
    return re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower()


def _diag(exc: Exception) -> str:
    return f"error[{_kind(exc)}]: {exc}"


def _emit(args, human: str, machine: dict) -> int:
    if args.output == "machine":
        sys.stdout.write(json.dumps(machine, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(human)
    return EXIT_OK


def _read_scenario(args) -> bytes:
    if args.scenario == "-":
        return sys.stdin.buffer.read()
    with open(args.scenario, "rb") as fh:
        return fh.read()


def _digest(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


def _pick_sources(doc: ScenarioDocument, needed: int) -> list[str]:
    names = [named.name for named in doc.dnumbers]
    if len(names) < needed:
        raise _Abort(f"the scenario declares {len(names)} dnumbers; {needed} are needed")
    return names


def _parse_subset_flag(frame: Frame, text: str) -> int:
    labels = [part.strip() for part in text.split(",") if part.strip()]
    if not labels:
        raise _Abort(f"--subset {text!r} names no labels")
    return frame.mask(*labels)


# --- combine --------------------------------------------------------------------


def _weights_of(frame: Frame, masses) -> tuple:
    return tuple((frame.labels_of(mask), weight) for mask, weight in masses.items())


def _cmd_combine(args, doc: ScenarioDocument, raw: bytes) -> int:
    if args.f is not None and args.rule != "dcr2":
        raise _Abort("--f applies to --rule dcr2 only")
    if args.strategy is not None and args.rule != "dcr2":
        raise _Abort("--strategy applies to --rule dcr2 only")
    names = _pick_sources(doc, 2)
    scenario = doc.build()
    ds = [scenario.dnumbers[name] for name in names]
    frame, model = scenario.frame, scenario.model
    diag: dict = {
        "q_values": [d.q_value for d in ds],
        "k": None,
        "k_d": None,
        "d_t_total": None,
        "f": None,
        "f_value": None,
        "strategy": None,
    }

    if args.rule == "conjunctive":
        if len(ds) != 2:
            raise _Abort("the conjunctive rule combines exactly two sources")
        conj = conjunctive(ds[0], ds[1])
        diag["k"] = conj.k
        weights = _weights_of(frame, conj.masses)
    elif args.rule in CLASSICAL_RULES:
        rule_fn = CLASSICAL_RULES[args.rule]
        acc = ds[0]
        last_k = None
        for nxt in ds[1:]:
            if args.rule != "disjunctive":
                last_k = global_conflict(acc, nxt)
            acc = rule_fn(acc, nxt)
        diag["k"] = last_k
        weights = _weights_of(frame, acc.masses)
    elif args.rule == "dcr1":
        acc_report = None
        acc = ds[0]
        for nxt in ds[1:]:
            acc_report = dcr1(acc, nxt, model)
            acc = acc_report.result
        diag["k_d"] = acc_report.k_d
        weights = _weights_of(frame, acc.masses)
    else:  # dcr2
        f = aggregator(args.f or "product")
        diag["f"] = f.name
        if len(ds) == 2:
            report = dcr2(ds[0], ds[1], model, f)
        else:
            strategy = args.strategy or "fold"
            diag["strategy"] = strategy
            report = combine_many(ds, model, f, strategy)
        diag["d_t_total"] = report.d_t_total
        diag["f_value"] = report.f_value
        weights = _weights_of(frame, report.result.masses)

    report_doc = ReportDocument(
        rule=args.rule,
        weights=weights,
        diagnostics=diag,
        inputs={"scenario_sha256": _digest(raw), "dnumbers": names},
    )
    if args.output == "machine":
        sys.stdout.write(report_doc.to_machine())
    else:
        sys.stdout.write(report_doc.to_human())
    return EXIT_OK


# --- bel / pl -------------------------------------------------------------------


def _cmd_measure(args, doc: ScenarioDocument, raw: bytes) -> int:
    names = _pick_sources(doc, 1)
    scenario = doc.build()
    source = args.source or names[0]
    if source not in scenario.dnumbers:
        raise _Abort(f"no dnumber named {source!r} (have: {', '.join(names)})")
    d = scenario.dnumbers[source]
    frame = scenario.frame
    if args.subset:
        masks = [_parse_subset_flag(frame, text) for text in args.subset]
    else:
        masks = list(d.focal_sets())
    measure = args.measure
    rows = []
    for mask in masks:
        value = d.belief(mask) if measure == "bel" else d.plausibility(mask)
        rows.append((frame.labels_of(mask), value))
    label = "Bel" if measure == "bel" else "Pl"
    note = "" if d.is_complete() else "; incomplete source: raw sums, not classical bounds"
    lines = [f"source: {source} (Q = {fmt4(d.q_value)}{note})"]
    for labels, value in rows:
        lines.append(f"  {label}({fmt_subset(labels)}) = {fmt4(value)}")
    machine = {
        "measure": measure,
        "source": source,
        "q_value": d.q_value,
        "complete": d.is_complete(),
        "values": [
            {"subset": list(labels), "value": value} for labels, value in rows
        ],
    }
    return _emit(args, "\n".join(lines) + "\n", machine)


# --- qvalue ---------------------------------------------------------------------


def _cmd_qvalue(args, doc: ScenarioDocument, raw: bytes) -> int:
    names = _pick_sources(doc, 1)
    scenario = doc.build()
    lines = []
    entries = []
    for name in names:
        d = scenario.dnumbers[name]
        status = "complete" if d.is_complete() else "incomplete"
        lines.append(f"{name}: Q = {fmt4(d.q_value)} ({status})")
        entries.append(
            {"name": name, "q_value": d.q_value, "complete": d.is_complete()}
        )
    return _emit(args, "\n".join(lines) + "\n", {"dnumbers": entries})


# --- conflict -------------------------------------------------------------------


def _cmd_conflict(args, doc: ScenarioDocument, raw: bytes) -> int:
    names = _pick_sources(doc, 2)[:2]
    scenario = doc.build()
    d1, d2 = (scenario.dnumbers[name] for name in names)
    k = global_conflict(d1, d2)
    k_d = residual_conflict(d1, d2, scenario.model)
    human = (
        f"sources: {names[0]}, {names[1]}\n"
        f"K   = {fmt4(k)} (classical global conflict)\n"
        f"K_D = {fmt4(k_d)} (residual conflict under the model)\n"
    )
    machine = {"dnumbers": names, "k": k, "k_d": k_d}
    return _emit(args, human, machine)


# --- matrix ---------------------------------------------------------------------


def _cmd_matrix(args, doc: ScenarioDocument, raw: bytes) -> int:
    frame = doc.build_frame()
    model = doc.build_model(frame)
    matrix = model.matrix()
    if args.kind == "exclusive":
        matrix = matrix.exclusive()
    headers = [fmt_subset(frame.labels_of(mask)) for mask in matrix.subsets]
    cells = [[f"{v:g}" for v in row] for row in matrix.rows]
    width = max(len(h) for h in headers)
    width = max(width, max(len(c) for row in cells for c in row))
    lines = [" ".join([" " * width] + [h.rjust(width) for h in headers])]
    for header, row in zip(headers, cells):
        lines.append(" ".join([header.rjust(width)] + [c.rjust(width) for c in row]))
    machine = {
        "kind": "exclusive" if args.kind == "exclusive" else "nonexclusive",
        "subsets": [list(frame.labels_of(mask)) for mask in matrix.subsets],
        "rows": [list(row) for row in matrix.rows],
    }
    return _emit(args, "\n".join(lines) + "\n", machine)


# --- validate -------------------------------------------------------------------


def _cmd_validate(args, doc: ScenarioDocument, raw: bytes) -> int:
    scenario = doc.build()
    lines = [
        "scenario: OK",
        f"frame: {scenario.frame.size} elements ({', '.join(scenario.frame.labels)})",
    ]
    entries = []
    for name, d in scenario.dnumbers.items():
        status = "complete" if d.is_complete() else "incomplete"
        lines.append(f"dnumber {name}: Q = {fmt4(d.q_value)} ({status})")
        entries.append({"name": name, "q_value": d.q_value, "complete": d.is_complete()})
    lines.append(
        f"model: {len(scenario.model.element_degrees)} element pairs, "
        f"{len(scenario.model.subset_overrides)} overrides"
    )
    machine = {
        "valid": True,
        "frame": list(scenario.frame.labels),
        "dnumbers": entries,
        "element_pairs": len(scenario.model.element_degrees),
        "overrides": len(scenario.model.subset_overrides),
        "f_table": None,
    }
    if args.f_table:
        try:
            with open(args.f_table, "rb") as fh:
                points = parse_f_table(fh.read())
            count = validate_f_points(points)
        except (OSError, FusionError) as exc:
            print(_diag(exc), file=sys.stderr)
            return EXIT_PARSE
        lines.append(f"f-table: OK ({count} points)")
        machine["f_table"] = {"valid": True, "points": count}
    return _emit(args, "\n".join(lines) + "\n", machine)


# --- argument parsing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dnumbers",
        description="Combine D numbers and classical mass assignments from scenario files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p):
        p.add_argument(
            "scenario",
            nargs="?",
            default="-",
            help="scenario file path, or - for standard input (default)",
        )
        p.add_argument(
            "--output",
            choices=("human", "machine"),
            default="human",
            help="report format (machine = deterministic JSON)",
        )
        return p

    def add(name, help_text, **kwargs):
        return add_io(sub.add_parser(name, help=help_text, **kwargs))

    p = add("combine", "combine the scenario's D numbers under a rule")
    p.add_argument(
        "--rule",
        required=True,
        choices=(
            "conjunctive",
            "disjunctive",
            "dempster",
            "yager",
            "dubois-prade",
            "dcr1",
            "dcr2",
        ),
    )
    p.add_argument(
        "--f",
        choices=("product", "min", "max", "avg", "one"),
        default=None,
        help="completeness aggregator for dcr2 (default: product)",
    )
    p.add_argument(
        "--strategy",
        choices=("fold", "average-iterate"),
        default=None,
        help="multi-source strategy for dcr2 with 3+ inputs (default: fold)",
    )
    p.set_defaults(handler=_cmd_combine)

    for measure, help_text in (
        ("bel", "belief of subsets under one source"),
        ("pl", "plausibility of subsets under one source"),
    ):
        p = add(measure, help_text)
        p.add_argument("--source", default=None, help="dnumber name (default: first)")
        p.add_argument(
            "--subset",
            action="append",
            default=None,
            metavar="LABELS",
            help="comma-separated labels; repeatable (default: every focal set)",
        )
        p.set_defaults(handler=_cmd_measure, measure=measure)

    p = add("qvalue", "degree of information completeness of each source")
    p.set_defaults(handler=_cmd_qvalue)

    p = add("conflict", "classical K and residual K_D of the first two sources")
    p.set_defaults(handler=_cmd_conflict)

    p = sub.add_parser("matrix", help="print the subset-pair degree matrix")
    p.add_argument(
        "kind",
        choices=("expand", "exclusive"),
        help="expand: non-exclusive degrees; exclusive: their complement",
    )
    add_io(p)
    p.set_defaults(handler=_cmd_matrix)

    p = add("validate", "check a scenario (and optionally an aggregator table)")
    p.add_argument("--f-table", default=None, help="path to a 'q1 q2 value' sample table")
    p.set_defaults(handler=_cmd_validate)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        raw = _read_scenario(args)
        doc = parse_scenario(raw)
    except (OSError, FusionError) as exc:
        print(_diag(exc), file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.handler(args, doc, raw)
    except (_Abort, FusionError) as exc:
        print(_diag(exc), file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run_cli())

"""Command line interface.

Subcommands:
  roots    positive roots, symmetrizer, and (optionally) marked-set data
  datum    associated datum of a weight: generic scan vs closed form
  check    decide whether a weight is Ulrich for the minimal ample class
  bott     cohomology scan of one twist of a weight
  search   exhaust the coefficient box for one marked set
  verify   bounded search over all B/C/D marked sets of size >= 2

Structured output is deterministic byte for byte; wall-clock times appear
only under --timing.  Rational values are emitted as integers when whole
and as {"num": p, "den": q} objects otherwise (strings like "3/2" in CSV);
floats are never used for exact quantities.

Exit status: 0 for a positive or neutral outcome, 1 for a negative one
(not Ulrich, datum mismatch, incomplete or failed search), 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .bott import bott_cohomology
from .datum import (
    ClosedFormCase,
    HighestWeight,
    classify_case,
    datum_closed_form,
    datum_equivalent,
    datum_generic,
)
from .rootsys import (
    FAMILIES,
    LieType,
    ParabolicSet,
    build_root_system,
    check_nodes,
    phi_J_plus,
)
from .search import SearchReport, search_weights, verify_theorem
from .ulrich import bundle_rank, is_ulrich, necessary_filters

SCHEMA = "ulrich-lab/1"
_RANDOM_COEFF_MAX = 12


class CliError(ValueError):
    """Bad command-line input (reported on stderr, exit status 2)."""


def _rat(value: Fraction | int):
    frac = Fraction(value)
    if frac.denominator == 1:
        return int(frac)
    return {"num": frac.numerator, "den": frac.denominator}


def _rat_text(value: Fraction | int) -> str:
    return str(Fraction(value))


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise CliError(f"could not parse {what} {text!r}: expected comma-separated integers")


def _lie_type(args: argparse.Namespace) -> LieType:
    try:
        return LieType(args.family, args.rank)
    except ValueError as exc:
        raise CliError(str(exc))


def _nodes(args: argparse.Namespace, rank: int) -> ParabolicSet:
    values = _parse_ints(args.nodes, "--nodes")
    try:
        nodes = ParabolicSet(values)
    except ValueError as exc:
        raise CliError(str(exc))
    if nodes.nodes[-1] > rank:
        raise CliError(f"marked node {nodes.nodes[-1]} exceeds rank {rank}")
    return nodes


def _weight(args: argparse.Namespace, rank: int, nodes: ParabolicSet) -> HighestWeight:
    if args.weight is None:
        coeffs = (0,) * rank
    else:
        coeffs = _parse_ints(args.weight, "--weight")
        if len(coeffs) != rank:
            raise CliError(f"--weight needs {rank} coefficients, got {len(coeffs)}")
    try:
        return HighestWeight(coeffs, nodes)
    except ValueError as exc:
        raise CliError(str(exc))


def _emit(args: argparse.Namespace, text: str) -> None:
    print(text)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")


def _json(obj) -> str:
    return json.dumps(obj, indent=2)


def _time_value(args: argparse.Namespace, elapsed: float):
    return round(elapsed, 3) if args.timing else None


def _time_text(args: argparse.Namespace, elapsed: float) -> str:
    return f"{elapsed:.3f}" if args.timing else "-"


# ---------------------------------------------------------------- roots


def _cmd_roots(args: argparse.Namespace) -> int:
    lie_type = _lie_type(args)
    system = build_root_system(lie_type)
    obj = {
        "schema": SCHEMA,
        "family": lie_type.family,
        "group_rank": lie_type.rank,
        "count": len(system.positive_roots),
        "positive_roots": [list(root) for root in system.positive_roots],
        "symmetrizer": [_rat(d) for d in system.symmetrizer],
    }
    if args.nodes is not None:
        nodes = _nodes(args, lie_type.rank)
        check_nodes(system, nodes)
        outside = phi_J_plus(system, nodes)
        obj["nodes"] = list(nodes.nodes)
        obj["dim"] = len(outside)
        obj["roots_outside_levi"] = [list(root) for root in outside]
    _emit(args, _json(obj))
    return 0


# ---------------------------------------------------------------- datum


def _datum_entries(datum) -> list[dict]:
    return [{"value": _rat(e.value), "source": e.source} for e in datum.entries]


def _cmd_datum(args: argparse.Namespace) -> int:
    lie_type = _lie_type(args)
    system = build_root_system(lie_type)
    nodes = _nodes(args, lie_type.rank)
    classification = classify_case(lie_type, nodes)
    has_closed_form = classification.case is not ClosedFormCase.GENERIC_ONLY

    if args.random_trials is not None:
        if not has_closed_form:
            raise CliError(f"type {lie_type.family} has no closed form to compare against")
        rng = random.Random(args.seed)
        mismatches = []
        for _ in range(args.random_trials):
            coeffs = tuple(
                rng.randint(0, _RANDOM_COEFF_MAX) for _ in range(lie_type.rank)
            )
            trial = HighestWeight(coeffs, nodes)
            outcome = datum_equivalent(trial, system)
            if not outcome.equal:
                mismatches.append({"weight": list(coeffs), "detail": outcome.detail})
        obj = {
            "schema": SCHEMA,
            "family": lie_type.family,
            "group_rank": lie_type.rank,
            "nodes": list(nodes.nodes),
            "case": classification.case.value,
            "trials": args.random_trials,
            "seed": args.seed,
            "coefficient_max": _RANDOM_COEFF_MAX,
            "all_equal": not mismatches,
            "mismatches": mismatches,
        }
        _emit(args, _json(obj))
        return 0 if not mismatches else 1

    weight = _weight(args, lie_type.rank, nodes)
    generic = datum_generic(weight, system)
    closed = datum_closed_form(weight, system).flatten() if has_closed_form else None
    comparison = datum_equivalent(weight, system) if has_closed_form else None

    if args.format == "csv":
        source = closed if closed is not None else generic
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["value", "source"])
        for entry in source.entries:
            writer.writerow([_rat_text(entry.value), entry.source])
        _emit(args, buffer.getvalue().rstrip("\n"))
    else:
        obj = {
            "schema": SCHEMA,
            "family": lie_type.family,
            "group_rank": lie_type.rank,
            "nodes": list(nodes.nodes),
            "weight": list(weight.a),
            "case": classification.case.value,
            "normalized_nodes": list(classification.nodes.nodes),
            "dim": len(generic),
            "generic": _datum_entries(generic),
            "closed_form": _datum_entries(closed) if closed is not None else None,
            "equal": comparison.equal if comparison is not None else None,
        }
        if comparison is not None and not comparison.equal:
            obj["detail"] = comparison.detail
        _emit(args, _json(obj))
    if comparison is not None and not comparison.equal:
        return 1
    return 0


# ---------------------------------------------------------------- check


def _cmd_check(args: argparse.Namespace) -> int:
    lie_type = _lie_type(args)
    system = build_root_system(lie_type)
    nodes = _nodes(args, lie_type.rank)
    weight = _weight(args, lie_type.rank, nodes)
    classification = classify_case(lie_type, nodes)
    verdict = is_ulrich(weight, system)
    rank = bundle_rank(weight, system)
    obj = {
        "schema": SCHEMA,
        "family": lie_type.family,
        "group_rank": lie_type.rank,
        "nodes": list(nodes.nodes),
        "weight": list(weight.a),
        "case": classification.case.value,
        "normalized_nodes": list(classification.nodes.nodes),
        "dim": verdict.dim,
        "rank": rank,
        "datum": [_rat(v) for v in verdict.datum.values()],
        "ulrich": verdict.is_ulrich,
        "witness": (
            None
            if verdict.witness is None
            else {"kind": verdict.witness.kind, "value": _rat(verdict.witness.value)}
        ),
    }
    if classification.case is not ClosedFormCase.GENERIC_ONLY:
        report = necessary_filters(weight, system)
        obj["filters"] = {
            "passed": report.passed,
            "violations": [
                {
                    "rule": violation.rule.label,
                    "kind": violation.rule.kind,
                    "index": violation.rule.index,
                    "modulus": violation.rule.modulus,
                    "requirement": violation.requirement,
                    "actual": violation.actual,
                }
                for violation in report.violations
            ],
        }
    _emit(args, _json(obj))
    return 0 if verdict.is_ulrich else 1


# ---------------------------------------------------------------- bott


def _cmd_bott(args: argparse.Namespace) -> int:
    lie_type = _lie_type(args)
    system = build_root_system(lie_type)
    nodes = _nodes(args, lie_type.rank)
    weight = _weight(args, lie_type.rank, nodes)
    outcome = bott_cohomology(weight, args.twist, system)
    obj = {
        "schema": SCHEMA,
        "family": lie_type.family,
        "group_rank": lie_type.rank,
        "nodes": list(nodes.nodes),
        "weight": list(weight.a),
        "twist": args.twist,
        "vanishes": outcome.all_vanish,
        "degree": outcome.degree,
        "dominant": list(outcome.dominant) if outcome.dominant is not None else None,
    }
    _emit(args, _json(obj))
    return 0


# ---------------------------------------------------------------- search


def _report_dict(args: argparse.Namespace, report: SearchReport) -> dict:
    return {
        "family": report.family,
        "rank": report.rank,
        "nodes": list(report.nodes),
        "normalized_nodes": list(report.normalized_nodes),
        "dim": report.dim,
        "bounds": list(report.bounds.bounds),
        "bound_trace": [
            {"index": w.index, "root": list(w.root), "bound": w.bound}
            for w in report.bounds.trace
        ],
        "volume": report.volume,
        "examined": report.examined,
        "pruned_filters": report.pruned_filters,
        "skipped_invariant": report.skipped_invariant,
        "found": [list(w) for w in report.found],
        "found_on_boundary": [list(w) for w in report.found_on_boundary],
        "used_filters": report.used_filters,
        "complete": report.complete,
        "time": _time_value(args, report.elapsed),
    }


_CSV_COLUMNS = [
    "family",
    "rank",
    "nodes",
    "dim",
    "candidates",
    "pruned",
    "found",
    "time",
    "status",
]


def _csv_row(args: argparse.Namespace, report: SearchReport) -> list:
    return [
        report.family,
        report.rank,
        ",".join(str(d) for d in report.nodes),
        report.dim,
        report.volume,
        report.pruned_filters + report.skipped_invariant,
        len(report.found),
        _time_text(args, report.elapsed),
        "complete" if report.complete else "incomplete",
    ]


def _csv_text(args: argparse.Namespace, reports: list[SearchReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for report in reports:
        writer.writerow(_csv_row(args, report))
    return buffer.getvalue().rstrip("\n")


def _pretty_search(args: argparse.Namespace, report: SearchReport) -> str:
    nodes = ",".join(str(d) for d in report.nodes)
    lines = [
        f"search {report.family}{report.rank} {{{nodes}}}  dim={report.dim}",
        f"  bounds   : {list(report.bounds.bounds)}",
        f"  volume   : {report.volume}",
        f"  examined : {report.examined}",
        f"  pruned   : {report.pruned_filters} by filters, "
        f"{report.skipped_invariant} by invariants",
    ]
    if report.found:
        for w in report.found:
            flag = "  [on box boundary]" if w in report.found_on_boundary else ""
            lines.append(f"  found    : a={list(w)}{flag}")
    else:
        lines.append("  found    : none")
    lines.append(f"  status   : {'complete' if report.complete else 'INCOMPLETE'}")
    lines.append(f"  time     : {_time_text(args, report.elapsed)}")
    return "\n".join(lines)


def _cmd_search(args: argparse.Namespace) -> int:
    lie_type = _lie_type(args)
    nodes = _nodes(args, lie_type.rank)
    report = search_weights(
        lie_type,
        nodes,
        use_filters=not args.no_prune,
        jobs=args.jobs,
        budget=args.budget,
    )
    if args.format == "json":
        obj = {"schema": SCHEMA, **_report_dict(args, report)}
        _emit(args, _json(obj))
    elif args.format == "csv":
        _emit(args, _csv_text(args, [report]))
    else:
        _emit(args, _pretty_search(args, report))
    return 0 if report.complete else 1


# ---------------------------------------------------------------- verify


def _cmd_verify(args: argparse.Namespace) -> int:
    families = tuple(args.families.split(","))
    for family in families:
        if family not in FAMILIES:
            raise CliError(f"unknown family {family!r}")
        if family == "A":
            raise CliError("the verification sweep covers families B, C, and D")
    outcome = verify_theorem(
        max_rank=args.max_rank,
        families=families,
        use_filters=not args.no_prune,
        jobs=args.jobs,
        budget=args.budget,
    )
    if args.format == "json":
        obj = {
            "schema": SCHEMA,
            "families": list(families),
            "max_rank": args.max_rank,
            "passed": outcome.passed,
            "complete": outcome.complete,
            "searches": [_report_dict(args, r) for r in outcome.reports],
            "time": _time_value(args, outcome.elapsed),
        }
        _emit(args, _json(obj))
    elif args.format == "csv":
        _emit(args, _csv_text(args, list(outcome.reports)))
    else:
        lines = [
            f"verify: families={','.join(families)} max_rank={args.max_rank} "
            f"filters={'off' if args.no_prune else 'on'}"
        ]
        for report in outcome.reports:
            nodes = ",".join(str(d) for d in report.nodes)
            status = "complete" if report.complete else "INCOMPLETE"
            hits = len(report.found)
            lines.append(
                f"  {report.family}{report.rank} {{{nodes}}}: dim={report.dim} "
                f"volume={report.volume} found={hits} {status}"
            )
        lines.append(
            f"result: {'PASSED' if outcome.passed else 'FAILED'} "
            f"({len(outcome.reports)} searches, time={_time_text(args, outcome.elapsed)})"
        )
        _emit(args, "\n".join(lines))
    return 0 if outcome.passed else 1


# ---------------------------------------------------------------- parser


def _add_type_arguments(sub: argparse.ArgumentParser, nodes_required: bool) -> None:
    sub.add_argument(
        "--type",
        dest="family",
        required=True,
        choices=list(FAMILIES),
        help="Dynkin family",
    )
    sub.add_argument("--rank", type=int, required=True, help="rank of the group")
    sub.add_argument(
        "--nodes",
        required=nodes_required,
        default=None,
        help="marked nodes, comma separated (e.g. 1,3)",
    )


def _add_output_arguments(sub: argparse.ArgumentParser, default_format: str, formats) -> None:
    sub.add_argument("--format", choices=formats, default=default_format)
    sub.add_argument("--out", default=None, help="also write the output to this file")
    sub.add_argument(
        "--timing",
        action="store_true",
        help="include wall-clock times (output is no longer reproducible)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ulrich-lab",
        description="Ulrich bundles on isotropic flag varieties: exact datum "
        "computations, divisibility filters, cohomology scans, and bounded "
        "exhaustive searches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_roots = sub.add_parser("roots", help="positive roots and symmetrizer")
    _add_type_arguments(p_roots, nodes_required=False)
    _add_output_arguments(p_roots, "json", ["json"])
    p_roots.set_defaults(handler=_cmd_roots)

    p_datum = sub.add_parser("datum", help="associated datum, generic vs closed form")
    _add_type_arguments(p_datum, nodes_required=True)
    p_datum.add_argument("--weight", default=None, help="coefficients a_i, comma separated")
    p_datum.add_argument(
        "--random-trials",
        type=int,
        default=None,
        metavar="N",
        help="compare generic and closed form on N random weights instead",
    )
    p_datum.add_argument("--seed", type=int, default=0, help="seed for --random-trials")
    _add_output_arguments(p_datum, "json", ["json", "csv"])
    p_datum.set_defaults(handler=_cmd_datum)

    p_check = sub.add_parser("check", help="decide the Ulrich property")
    _add_type_arguments(p_check, nodes_required=True)
    p_check.add_argument("--weight", default=None, help="coefficients a_i, comma separated")
    _add_output_arguments(p_check, "json", ["json"])
    p_check.set_defaults(handler=_cmd_check)

    p_bott = sub.add_parser("bott", help="cohomology scan of one twist")
    _add_type_arguments(p_bott, nodes_required=True)
    p_bott.add_argument("--weight", default=None, help="coefficients a_i, comma separated")
    p_bott.add_argument("--twist", type=int, default=1, help="twist t (default 1)")
    _add_output_arguments(p_bott, "json", ["json"])
    p_bott.set_defaults(handler=_cmd_bott)

    p_search = sub.add_parser("search", help="exhaust the coefficient box")
    _add_type_arguments(p_search, nodes_required=True)
    p_search.add_argument(
        "--no-prune",
        action="store_true",
        help="disable the divisibility filters (invariant pruning stays on)",
    )
    p_search.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p_search.add_argument(
        "--budget",
        type=float,
        default=None,
        metavar="SECONDS",
        help="wall-clock budget; an exhausted budget marks the search incomplete",
    )
    _add_output_arguments(p_search, "pretty", ["pretty", "json", "csv"])
    p_search.set_defaults(handler=_cmd_search)

    p_verify = sub.add_parser("verify", help="run the full bounded sweep")
    p_verify.add_argument(
        "--type",
        dest="families",
        default="B,C,D",
        help="families to sweep, comma separated (default B,C,D)",
    )
    p_verify.add_argument("--max-rank", type=int, default=6, help="largest rank to sweep")
    p_verify.add_argument(
        "--no-prune",
        action="store_true",
        help="disable the divisibility filters (invariant pruning stays on)",
    )
    p_verify.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p_verify.add_argument(
        "--budget",
        type=float,
        default=None,
        metavar="SECONDS",
        help="total wall-clock budget for the sweep",
    )
    _add_output_arguments(p_verify, "pretty", ["pretty", "json", "csv"])
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())

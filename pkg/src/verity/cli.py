"""Command-line front end.

Subcommands: classify, check, report, bdi.  Exit codes: 0 success, 2 parse
or validation error (including unreadable files), 3 resource limit, 4
unknown report format, 5 oracle divergence.  Identical invocations on
identical files produce byte-identical standard output.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .bdi import load_scenario, scan_misleading
from .entail import (
    DEFAULT_ASSIGNMENT_LIMIT,
    ResourceLimit,
    entails,
    is_contradiction,
    is_tautology,
    satisfiable,
)
from .mr import (
    Formula,
    MrError,
    Not,
    ParseError,
    Schema,
    format_model,
    parse_formula,
    parse_schema,
)
from .oracle import (
    OracleDivergence,
    checked_classify,
    checked_entails,
    checked_is_contradiction,
    checked_is_tautology,
    checked_satisfiable,
)
from .report import (
    REPORT_FORMATS,
    UnknownFormat,
    ingest_corpus,
    render_report,
    tally,
)
from .taxonomy import (
    LegacyLabels,
    UnmappableVerdict,
    classify,
    legacy_labels,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_FORMAT = 4
EXIT_DIVERGENCE = 5

ENV_LIMIT = "VERITY_LIMIT"


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-s", "--schema", metavar="PATH", help="schema file")
    common.add_argument(
        "--limit",
        type=int,
        metavar="N",
        help=f"assignment-space cap (default ${ENV_LIMIT} or {DEFAULT_ASSIGNMENT_LIMIT})",
    )
    common.add_argument(
        "--format",
        default="text",
        metavar="FMT",
        help="report format: " + ", ".join(REPORT_FORMATS),
    )
    common.add_argument(
        "--legacy", action="store_true", help="also print legacy labels"
    )
    common.add_argument(
        "--oracle",
        action="store_true",
        help="cross-check every decision against the brute-force oracle",
    )
    common.add_argument(
        "-v", "--verbose", action="store_true", help="print supporting facts"
    )

    parser = argparse.ArgumentParser(
        prog="verity",
        description="Classify data-to-text outputs against their inputs, "
        "report category frequencies, and scan communication scenarios "
        "for misleading.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser(
        "classify", parents=[common], help="classify an (input, output) MR pair"
    )
    p.add_argument("input", metavar="INPUT", help="input formula")
    p.add_argument("output", metavar="OUTPUT", help="output formula")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser(
        "check", parents=[common], help="decide one entailment question"
    )
    p.add_argument(
        "kind", choices=("entails", "sat", "taut", "contra"), metavar="KIND",
        help="entails, sat, taut, or contra",
    )
    p.add_argument("formulas", nargs="+", metavar="FORMULA")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser(
        "report", parents=[common], help="tally a corpus of MR pairs"
    )
    p.add_argument("corpus", metavar="CORPUS", help="JSON-lines corpus file")
    p.add_argument(
        "--jobs", type=int, metavar="N", help="classify records in N threads"
    )
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser(
        "bdi", parents=[common], help="scan a scenario for misleading"
    )
    p.add_argument("scenario", metavar="SCENARIO", help="scenario file")
    p.set_defaults(func=_cmd_bdi)
    return parser


def _resolve_limit(args: argparse.Namespace) -> int:
    if args.limit is not None:
        return args.limit
    env = os.environ.get(ENV_LIMIT)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ParseError(
                f"{ENV_LIMIT} must be an integer, got {env!r}"
            ) from None
    return DEFAULT_ASSIGNMENT_LIMIT


def _load_schema(args: argparse.Namespace) -> Schema:
    if args.schema is None:
        raise ParseError(f"{args.command}: --schema is required")
    with open(args.schema, "r", encoding="utf-8") as fh:
        return parse_schema(fh.read())


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _dusek(labels: LegacyLabels) -> str:
    if labels.dusek_hallucination and labels.dusek_omission:
        return "hallucination+omission"
    if labels.dusek_hallucination:
        return "hallucination"
    if labels.dusek_omission:
        return "omission"
    return "none"


def _cmd_classify(args: argparse.Namespace) -> int:
    schema = _load_schema(args)
    limit = _resolve_limit(args)
    input_mr = parse_formula(args.input, schema)
    output_mr = parse_formula(args.output, schema)
    if args.oracle:
        verdict = checked_classify(schema, input_mr, output_mr, limit=limit)
    else:
        verdict = classify(schema, input_mr, output_mr, limit=limit)
    lines = [verdict.value]
    if args.verbose:
        facts = (
            ("input satisfiable", bool(satisfiable(schema, input_mr, limit=limit))),
            ("input |= output", bool(entails(schema, input_mr, output_mr, limit=limit))),
            ("output |= input", bool(entails(schema, output_mr, input_mr, limit=limit))),
            ("input |= !output", bool(entails(schema, input_mr, Not(output_mr), limit=limit))),
        )
        lines.extend(f"{name}: {_yn(value)}" for name, value in facts)
    if args.verbose or args.legacy:
        try:
            labels = legacy_labels(verdict)
            lines.append(f"dusek: {_dusek(labels)}")
            lines.append(f"ji: {labels.ji.value if labels.ji else 'n/a'}")
        except UnmappableVerdict:
            lines.append("dusek: n/a")
            lines.append("ji: n/a")
    print("\n".join(lines))
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    arity = 2 if args.kind == "entails" else 1
    if len(args.formulas) != arity:
        raise ParseError(
            f"check {args.kind} takes exactly {arity} formula(s), "
            f"got {len(args.formulas)}"
        )
    schema = _load_schema(args)
    limit = _resolve_limit(args)
    parsed = [parse_formula(text, schema) for text in args.formulas]
    witness = None
    if args.kind == "entails":
        a, b = parsed
        answer = (
            checked_entails(schema, a, b, limit=limit)
            if args.oracle
            else bool(entails(schema, a, b, limit=limit))
        )
        label = "countermodel"
        if not answer:
            witness = entails(schema, a, b, limit=limit).witness
    elif args.kind == "sat":
        (f,) = parsed
        answer = (
            checked_satisfiable(schema, f, limit=limit)
            if args.oracle
            else bool(satisfiable(schema, f, limit=limit))
        )
        label = "witness"
        if answer:
            witness = satisfiable(schema, f, limit=limit).witness
    elif args.kind == "taut":
        (f,) = parsed
        answer = (
            checked_is_tautology(schema, f, limit=limit)
            if args.oracle
            else is_tautology(schema, f, limit=limit)
        )
        label = "countermodel"
        if not answer:
            witness = satisfiable(schema, Not(f), limit=limit).witness
    else:
        (f,) = parsed
        answer = (
            checked_is_contradiction(schema, f, limit=limit)
            if args.oracle
            else is_contradiction(schema, f, limit=limit)
        )
        label = "witness"
        if not answer:
            witness = satisfiable(schema, f, limit=limit).witness
    print(_yn(answer))
    if args.verbose and witness is not None:
        print(f"{label}: {format_model(witness)}")
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    if args.format not in REPORT_FORMATS:
        raise UnknownFormat(args.format)
    schema = _load_schema(args)
    limit = _resolve_limit(args)
    with open(args.corpus, "r", encoding="utf-8") as fh:
        records, errors = ingest_corpus(fh, schema)
    for error in errors:
        print(f"line {error.line_no}: {error.message}", file=sys.stderr)
    if args.oracle:
        for record in records:
            try:
                checked_classify(schema, record.input, record.output, limit=limit)
            except ResourceLimit:
                pass
    counts = tally(
        schema,
        records,
        parse_failures=len(errors),
        limit=limit,
        jobs=args.jobs,
    )
    sys.stdout.write(render_report(counts, args.format))
    return EXIT_OK


def _cmd_bdi(args: argparse.Namespace) -> int:
    scenario, candidates = load_scenario(args.scenario)
    limit = _resolve_limit(args)
    entails_fn = None
    if args.oracle:
        def entails_fn(a: Formula, b: Formula) -> bool:
            return checked_entails(scenario.schema, a, b, limit=limit)
    findings = scan_misleading(
        scenario, candidates, limit=limit, entails_fn=entails_fn
    )
    if findings:
        for finding in findings:
            print(finding.render())
    else:
        print("no findings")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UnknownFormat as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except ResourceLimit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OracleDivergence as exc:
        print(f"oracle divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except (MrError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Batch command line: ``hstverify verify|assemble|report``.

Exit codes: 0 when every selected task passes, 1 when any fails, 2 on usage
errors (unknown command, odd ``n``, unreadable context file).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Sequence

from .assembly import ArithmeticContext, AssemblyError
from .config import default_precision
from .report import VerificationReport, from_json, sort_reports, text_table, to_csv, to_json, tolerance_table
from .tasks import TaskSpec, build_tasks, run_tasks

VERIFY_COMMANDS = ("in", "pluriharmonic", "comb", "hypgeom", "pairb0", "bessel-period", "appendix-i0",
                   "mellin", "printed-forms", "assembly")
NEEDS_N = ("in", "pluriharmonic", "pairb0", "bessel-period")
# `report` without --from runs these quick suites
REPORT_SUITE = (("in", 0), ("pluriharmonic", 2), ("hypgeom", None), ("pairb0", 0), ("appendix-i0", None),
                ("assembly", None))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 as well; keep the message on stderr
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--prec", type=int, default=None, help="working precision in bits")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hstverify", description="Verify archimedean constants of HST lifts to GSp(4).")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=VERIFY_COMMANDS)
    verify.add_argument("--n", type=int)
    verify.add_argument("--max", type=int, default=30, dest="max_ab", help="comb: largest A and B")
    _output_args(verify)

    assemble = sub.add_parser("assemble", help="assemble a global constant for an arithmetic context")
    assemble.add_argument("kind", choices=("inner-product", "bessel"))
    assemble.add_argument("--ctx", type=Path, required=True, help="flat JSON context file")
    _output_args(assemble)

    report = sub.add_parser("report", help="write a machine-readable report")
    report.add_argument("--from", dest="source", type=Path, help="convert an existing JSON report")
    _output_args(report)
    report.set_defaults(format="json")
    return parser


def _emit(reports: Sequence[VerificationReport], fmt: str, out: Path | None) -> None:
    if fmt == "json":
        text = to_json(reports)
    elif fmt == "csv":
        text = to_csv(reports)
    else:
        text = text_table(reports) + "\n\n" + tolerance_table() + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
        print(f"wrote {len(reports)} records to {out}", file=sys.stderr)


def _specs(args: argparse.Namespace) -> List[TaskSpec]:
    prec = args.prec or default_precision()
    if args.command == "verify":
        if args.suite in NEEDS_N and args.n is None:
            raise UsageError(f"verify {args.suite} requires --n")
        return build_tasks(args.suite, n=args.n, prec=prec, max_ab=args.max_ab)
    if args.command == "assemble":
        try:
            ctx = json.loads(args.ctx.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read context file: {exc}") from exc
        ArithmeticContext.from_mapping(ctx)  # reject a bad context before scheduling
        return build_tasks(f"assemble-{args.kind}", ctx=ctx, prec=prec)
    specs: List[TaskSpec] = []
    for name, n in REPORT_SUITE:
        specs += build_tasks(name, n=n, prec=prec)
    return specs


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_usage(sys.stderr)
            raise UsageError("a command is required")
        if args.command == "report" and args.source is not None:
            reports = sort_reports(from_json(args.source.read_text()))
            specs: List[TaskSpec] = []
        else:
            specs = _specs(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if specs:
        try:
            reports = run_tasks(specs, workers=args.workers)
        except AssemblyError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    _emit(reports, args.format, args.out)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())

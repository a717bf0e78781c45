"""Command line: ``ivif-edas run | sweep | validate``.

Failures exit nonzero and print one JSON error record on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .errors import DomainError, IvifError
from .edas import CPT_PARAMS
from .pipeline import run, sweep, sweep_to_csv, sweep_to_structured_text
from .problem import METHODS, LinguisticScale, load_problem

EXIT_INPUT = 2
EXIT_COMPUTE = 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ivif-edas", description="IVIF group decision analysis")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("problem", help="problem file (YAML); '-' reads stdin")
        sp.add_argument("--scale", help="linguistic scale file overriding the default ten-grade scale")

    r = sub.add_parser("run", help="rank the alternatives of a problem")
    common(r)
    r.add_argument("--method", choices=METHODS, help="override the method named in the file")
    r.add_argument("--emit-intermediates", action="store_true",
                   help="include every intermediate table, not just weights and results")
    r.add_argument("--format", choices=("structured-text", "csv"), default="structured-text")
    r.add_argument("--out", help="output file (structured-text) or directory (csv); default stdout")

    s = sub.add_parser("sweep", help="re-run EDAS over a grid of one CPT parameter")
    common(s)
    s.add_argument("--param", required=True, choices=CPT_PARAMS)
    s.add_argument("--values", required=True, help="comma-separated grid, e.g. 0.05,0.15,0.25")
    s.add_argument("--format", choices=("csv", "structured-text"), default="csv")
    s.add_argument("--out", help="output file; default stdout")
    s.add_argument("--workers", type=int, default=1, help="evaluate grid points on this many threads")

    v = sub.add_parser("validate", help="check a problem file without running it")
    common(v)
    return p


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fail(exc: IvifError, code: int) -> int:
    print(json.dumps({"error": exc.to_record()}, sort_keys=True, default=str), file=sys.stderr)
    return code


def _parse_values(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise DomainError(f"--values must be comma-separated numbers, got {text!r}") from None


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        scale = LinguisticScale.from_file(args.scale) if args.scale else None
        source = sys.stdin if args.problem == "-" else args.problem
        problem = load_problem(source, scale)
    except IvifError as exc:
        return _fail(exc, EXIT_INPUT)

    try:
        if args.command == "validate":
            n, k, e = problem.shape
            print(json.dumps({"valid": True, "alternatives": n, "attributes": k, "experts": e,
                              "method": problem.method}, sort_keys=True))
            return 0
        if args.command == "run":
            report = run(problem, args.method, emit_intermediates=args.emit_intermediates)
            if args.format == "structured-text":
                _emit(report.to_structured_text(), args.out)
            elif args.out:
                report.write_csv(args.out)
            else:
                for name, text in report.to_csv_texts().items():
                    sys.stdout.write(f"# {name}\n{text}\n")
            return 0
        values = _parse_values(args.values)
        points = sweep(problem, args.param, values, max_workers=args.workers)
        fmt = sweep_to_csv if args.format == "csv" else sweep_to_structured_text
        _emit(fmt(points, args.param, problem.alternatives), args.out)
        return 0
    except DomainError as exc:
        return _fail(exc, EXIT_INPUT)
    except IvifError as exc:
        return _fail(exc, EXIT_COMPUTE)


if __name__ == "__main__":
    raise SystemExit(main())

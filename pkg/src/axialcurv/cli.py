"""Command line: ``axialcurv analyze|locus|verify``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from .errors import CorankError, NotGermError, SchemaError, UnsupportedError
from .jetcore import load_germ, monge_from_germ
from .locus import GridSpec, sample_locus, write_csv
from .report import analyze, format_table
from .verify import FAIL, run_checks

EXIT_SCHEMA, EXIT_CORANK, EXIT_UNSUPPORTED, EXIT_CHECK_FAILED = 1, 2, 3, 4


def corpus_paths() -> list[Path]:
    root = resources.files("axialcurv") / "fixtures"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".json") and ".expected" not in p.name)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_analyze(args) -> int:
    f = load_germ(args.path)
    report = analyze(f, args.tol)
    _emit(format_table(report) if args.pretty else report.to_json(), args.out)
    return 0


def cmd_locus(args) -> int:
    f = load_germ(args.path)
    m, _ = monge_from_germ(f, args.tol)
    grid = GridSpec.parse(args.grid, args.gamma_range) if args.grid else GridSpec()
    if args.gamma_range and not args.grid:
        lo, hi = (float(s) for s in args.gamma_range.split(","))
        grid = GridSpec(gamma_min=lo, gamma_max=hi)
    text = write_csv(sample_locus(m, grid))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _verify_one(path: Path) -> list[dict]:
    f = load_germ(path)
    m, _ = monge_from_germ(f)
    return [dict(c.to_dict(), fixture=path.stem) for c in run_checks(m, f)]


def cmd_verify(args) -> int:
    paths = corpus_paths() if args.corpus else [Path(args.path)] if args.path else []
    if not paths:
        print("verify needs a germ file or --corpus", file=sys.stderr)
        return EXIT_SCHEMA
    results = []
    for p in paths:
        results.extend(_verify_one(p))
    summary = ["fixture                          check                     status"]
    for r in results:
        summary.append(f"{r['fixture']:<32} {r['name']:<25} {r['status']}")
    failed = [r for r in results if r["status"] == FAIL]
    summary.append(f"{len(results)} checks, {len(failed)} failed")
    if args.pretty:
        _emit("\n".join(summary), args.out)
    else:
        _emit(json.dumps(results, indent=2), args.out)
        print("\n".join(summary), file=sys.stderr)
    return EXIT_CHECK_FAILED if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="axialcurv", description="Axial curvatures of corank-1 singular manifolds")
    p.add_argument("--tol", type=float, default=None, help="rank tolerance (default 1e-8 or $AXIALCURV_TOL)")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="run the full pipeline on a germ file")
    a.add_argument("path")
    a.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    a.add_argument("--out")
    a.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    a.set_defaults(func=cmd_analyze)

    lo = sub.add_parser("locus", help="sample the curvature locus to CSV")
    lo.add_argument("path")
    lo.add_argument("--grid", help="T,G,N: theta count, gamma half-range, gamma count")
    lo.add_argument("--gamma-range", help="lo,hi (overrides the half-range of --grid)")
    lo.add_argument("--out")
    lo.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    lo.set_defaults(func=cmd_locus)

    v = sub.add_parser("verify", help="run the identity checks")
    v.add_argument("path", nargs="?")
    v.add_argument("--corpus", action="store_true", help="run every bundled fixture")
    v.add_argument("--pretty", action="store_true")
    v.add_argument("--out")
    v.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol is not None:
        os.environ["AXIALCURV_TOL"] = repr(args.tol)
    try:
        return args.func(args)
    except (SchemaError, NotGermError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except CorankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CORANK
    except UnsupportedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())

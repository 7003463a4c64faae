"""
affine-moduli command-line entry point.

    python affine_moduli.py catalog model3d --out model3d.json
    python affine_moduli.py analyze --input model3d.json
    python affine_moduli.py verify all --seed 7

Reports go to stdout; structured logs go to stderr.
"""
import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Optional

import numpy as np
import structlog

from catalog.structures import (
    ALIASES,
    PARAMETERS,
    FamilyId,
    build,
    describe,
    family_from_name,
    frame_support_pattern,
)
from config.cli import (
    DEFAULT_SEED,
    EXIT_BAD_PARAMS,
    EXIT_DEGENERATE,
    EXIT_NON_FINITE,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_SINGULAR,
    EXIT_UNKNOWN_NAME,
    EXIT_VERIFY_FAILED,
)
from config.tolerances import DEFAULT_TOLERANCES, MAX_ORDER, SCAN_RESTARTS, Tolerances
from geometry.errors import (
    BadParamsError,
    DegenerateRicciError,
    DimensionMismatchError,
    DocumentError,
    NonFiniteError,
    SingularMapError,
    UnknownFamilyError,
    UnknownScopeError,
    ZeroParameterError,
)
from geometry.tensors import LinearMap, act
from pipeline.documents import TensorDocument, read_document, write_document
from pipeline.report import analyze, render_dict, render_text
from pipeline.verify import SCOPES, run_checks
from symmetry.elements import order_of
from symmetry.lattice import relation_lattice, support_pattern, torsion_order_bound
from symmetry.scan import finite_symmetry_scan
from symmetry.stabilizer import stabilizer_lie_algebra

logger = structlog.get_logger()

# Exception → exit code, first match wins
EXIT_CODES = (
    (DocumentError, EXIT_PARSE_ERROR),
    (DimensionMismatchError, EXIT_PARSE_ERROR),
    (NonFiniteError, EXIT_NON_FINITE),
    (UnknownFamilyError, EXIT_UNKNOWN_NAME),
    (UnknownScopeError, EXIT_UNKNOWN_NAME),
    (BadParamsError, EXIT_BAD_PARAMS),
    (ZeroParameterError, EXIT_BAD_PARAMS),
    (SingularMapError, EXIT_SINGULAR),
    (DegenerateRicciError, EXIT_DEGENERATE),
)


def _stderr_logger(*args) -> structlog.PrintLogger:
    # Resolved per logger so a replaced sys.stderr is honoured.
    return structlog.PrintLogger(file=sys.stderr)


def _configure_logging(verbose: bool) -> None:
    structlog.configure(
        processors=[
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            structlog.processors.JSONRenderer(),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(logging.INFO if verbose else logging.WARNING),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------

def _parse_params(text: Optional[str]) -> list[float]:
    if not text:
        return []
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise BadParamsError(f"--params must be comma-separated numbers, got {text!r}") from None


def _parse_matrix(text: str) -> LinearMap:
    """Inline rows "a,b;c,d" or a path to a JSON list of rows."""
    path = Path(text)
    try:
        if path.is_file():
            rows = json.loads(path.read_text(encoding="utf-8"))
        else:
            rows = [[float(v) for v in row.split(",")] for row in text.split(";")]
        return LinearMap(np.array(rows, dtype=float))
    except (json.JSONDecodeError, ValueError, TypeError) as e:
        raise DocumentError(f"--matrix: cannot read a square matrix from {text!r}: {e}") from None


def _tolerances(value: Optional[float]) -> Tolerances:
    if value is None:
        return DEFAULT_TOLERANCES
    if value <= 0:
        raise BadParamsError("--tol must be positive")
    return dataclasses.replace(DEFAULT_TOLERANCES, generic=value)


def _write_text(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _number(value: float) -> str:
    return format(float(value) + 0.0, ".6g")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_analyze(args: argparse.Namespace) -> int:
    gamma = read_document(args.input).to_christoffel()
    report = analyze(gamma, _tolerances(args.tol))
    if args.json:
        text = json.dumps(render_dict(report), indent=2, ensure_ascii=False) + "\n"
    else:
        text = render_text(report)
    _write_text(text, args.out)
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    family = family_from_name(args.name)
    params = _parse_params(args.params)
    gamma = build(family, params)
    write_document(TensorDocument.from_christoffel(gamma, describe(family, params)), args.out)
    logger.info("catalog_written", family=family.value, out=args.out)
    return EXIT_OK


def cmd_act(args: argparse.Namespace) -> int:
    doc = read_document(args.input)
    a = _parse_matrix(args.matrix)
    moved = act(a, doc.to_christoffel())
    metadata = dict(doc.metadata)
    metadata["transformations"] = [*metadata.get("transformations", []), a.entries.tolist()]
    write_document(TensorDocument.from_christoffel(moved, metadata), args.out)
    return EXIT_OK


def cmd_stabilizer(args: argparse.Namespace) -> int:
    gamma = read_document(args.input).to_christoffel()
    tol = DEFAULT_TOLERANCES.rank if args.tol is None else args.tol
    report = stabilizer_lie_algebra(gamma, tol)
    lines = [
        f"stabilizer dim {report.lie_dimension}",
        "singular values: " + ", ".join(_number(s) for s in report.singular_values),
    ]
    for index, generator in enumerate(report.lie_basis, start=1):
        rows = "; ".join(", ".join(_number(v) for v in row) for row in generator)
        lines.append(f"generator {index}: [{rows}]")
    if args.scan:
        found = finite_symmetry_scan(gamma, restarts=args.restarts, seed=args.seed)
        lines.append(f"finite symmetries found: {len(found)}")
        for element in found:
            order = order_of(element)
            label = str(order) if order is not None else f">{MAX_ORDER}"
            rows = "; ".join(", ".join(_number(v) for v in row) for row in element.entries)
            lines.append(f"  order {label}: [{rows}]")
    print("\n".join(lines))
    return EXIT_OK


def cmd_torsion_bound(args: argparse.Namespace) -> int:
    if args.family:
        family = family_from_name(args.family)
        params = _parse_params(args.params)
        if family in (FamilyId.SPIRAL3D, FamilyId.CHAINED):
            pattern = frame_support_pattern(family, params)
        else:
            pattern = support_pattern(build(family, params))
    else:
        pattern = support_pattern(read_document(args.input).to_christoffel())
    factors = relation_lattice(pattern).invariant_factors()
    print(f"invariant factors: {', '.join(str(f) for f in factors) or 'none'}")
    print(f"torsion bound: {torsion_order_bound(pattern)}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    result = run_checks(args.scope, args.seed)
    for line in result.ledger():
        print(line)
    total = len(result.results)
    failed = [r for r in result.results if not r.passed]
    if failed:
        print(f"\n❌ {len(failed)} of {total} checks failed")
        for r in failed:
            print(f"   - [{r.scope}] {r.label} ({r.citation})")
        return EXIT_VERIFY_FAILED
    print(f"\n✅ all {total} checks passed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affine-moduli",
        description="Constant Christoffel structures: curvature, genericity and symmetries.",
    )
    parser.add_argument("--verbose", action="store_true", help="log progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze_cmd = commands.add_parser("analyze", help="report curvature, genericity and symmetry data")
    analyze_cmd.add_argument("--input", default="-", help="tensor document, '-' for stdin")
    analyze_cmd.add_argument("--out", default="-", help="report destination, '-' for stdout")
    analyze_cmd.add_argument("--tol", type=float, help="relative genericity tolerance")
    analyze_cmd.add_argument("--json", action="store_true", help="structured report")
    analyze_cmd.set_defaults(handler=cmd_analyze)

    families = "\n".join(f"  {f.value:<12} {PARAMETERS[f]}" for f in FamilyId)
    aliases = ", ".join(f"{alias} = {family.value}" for alias, family in ALIASES.items())
    catalog_cmd = commands.add_parser(
        "catalog",
        help="write a named structure as a tensor document",
        epilog="families:\n" + families + "\naliases: " + aliases,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    catalog_cmd.add_argument("name")
    catalog_cmd.add_argument("--params", help="comma-separated parameters")
    catalog_cmd.add_argument("--out", default="-")
    catalog_cmd.set_defaults(handler=cmd_catalog)

    act_cmd = commands.add_parser("act", help="apply a change of basis")
    act_cmd.add_argument("--input", default="-")
    act_cmd.add_argument("--matrix", required=True, help="rows 'a,b;c,d' or a JSON file")
    act_cmd.add_argument("--out", default="-")
    act_cmd.set_defaults(handler=cmd_act)

    stabilizer_cmd = commands.add_parser("stabilizer", help="stabilizer Lie algebra and finite symmetries")
    stabilizer_cmd.add_argument("--input", default="-")
    stabilizer_cmd.add_argument("--tol", type=float, help="relative singular value cutoff")
    stabilizer_cmd.add_argument("--scan", action="store_true", help="search for finite symmetries")
    stabilizer_cmd.add_argument("--restarts", type=int, default=SCAN_RESTARTS)
    stabilizer_cmd.add_argument("--seed", type=int, default=DEFAULT_SEED)
    stabilizer_cmd.set_defaults(handler=cmd_stabilizer)

    torsion_cmd = commands.add_parser("torsion-bound", help="order bound for diagonalizable symmetries")
    source = torsion_cmd.add_mutually_exclusive_group()
    source.add_argument("--input", default="-")
    source.add_argument("--family", help="catalog family; complex families use their frame")
    torsion_cmd.add_argument("--params")
    torsion_cmd.set_defaults(handler=cmd_torsion_bound)

    verify_cmd = commands.add_parser("verify", help="run the acceptance checks")
    verify_cmd.add_argument("scope", nargs="?", default="all", help=f"all or one of {', '.join(SCOPES)}")
    verify_cmd.add_argument("--seed", type=int, default=DEFAULT_SEED)
    verify_cmd.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE_ERROR if e.code else EXIT_OK

    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except tuple(error for error, _ in EXIT_CODES) as e:
        code = next(code for error, code in EXIT_CODES if isinstance(e, error))
        logger.error("command_failed", command=args.command, error=type(e).__name__, code=code)
        print(f"error: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())

"""Main CLI entry point."""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from cadist import __version__
from cadist.cli.commands import run
from cadist.cli.config import ConfigManager, load_settings
from cadist.cli.formatters import OutputFormatter
from cadist.exceptions import BudgetExceededError, CadistError
from cadist.logging_config import configure_from_env


def _add_common(parser: argparse.ArgumentParser) -> None:
    """Flags shared by every subcommand; None means 'not given' so file values survive."""
    parser.add_argument("--config", type=Path, help="JSON run config; flags override it")
    parser.add_argument("--out-dir", type=Path, help="Artifact directory (default: cadist-out)")
    parser.add_argument("--seed", type=int, help="Seed for sampled loops (default: 0)")
    parser.add_argument("--workers", type=int, help="Worker threads (default: 1)")
    parser.add_argument("--max-words", type=int, help="Word enumeration budget")
    parser.add_argument("--ball-bound", type=int, help="Largest BFS ball")
    parser.add_argument("--max-area", type=int, help="Deepest area search")
    parser.add_argument("--radius-cap", type=int, help="Distance search cap")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cadist",
        description="cadist - Cayley automatic structures, distance profiles and fillings",
    )
    parser.add_argument("--version", action="version", version=f"cadist {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    # List command
    list_parser = subparsers.add_parser("list", help="List catalog structures")
    list_parser.add_argument("--include-raw", action="store_true", default=None)

    # Verify command
    verify_parser = subparsers.add_parser("verify", help="Check a structure on L<=depth")
    verify_parser.add_argument("--structure", help="Catalog name or bundle JSON")
    verify_parser.add_argument("--depth", type=int, help="Word length bound (default: 8)")

    # Distance profile
    hfun_parser = subparsers.add_parser("hfun", help="Compute h(n) for n <= N")
    hfun_parser.add_argument("--structure", help="Catalog name or bundle JSON")
    hfun_parser.add_argument("--n", type=int, help="Largest length (default: 12)")
    hfun_parser.add_argument("--out", help="CSV path (default: <out-dir>/h-<structure>.csv)")
    hfun_parser.add_argument(
        "--check-length", action="store_true", default=None, help="Also check |u| <= m|psi(u)| + e"
    )

    # Fill command
    fill_parser = subparsers.add_parser("fill", help="Corridor filling certificate of a loop")
    fill_parser.add_argument("--structure", help="Catalog name or bundle JSON")
    loop_group = fill_parser.add_mutually_exclusive_group()
    loop_group.add_argument("--loop", help="Loop over the generators, e.g. 'xyXY'")
    loop_group.add_argument("--loop-file", help="File holding the loop")
    loop_group.add_argument("--dense-n", type=int, help="Lamplighter witness loop of index n")
    fill_parser.add_argument("--profile-n", type=int, help="Compute h to this length first")
    fill_parser.add_argument("--out", help="Certificate file name inside the out dir")

    # Area command
    area_parser = subparsers.add_parser("area", help="Exact area of a word")
    area_parser.add_argument("--presentation", help="Shipped name or JSON file (default: Z2)")
    area_parser.add_argument("--word", help="Word over the presentation alphabet")

    # Dehn inequality
    dehn_parser = subparsers.add_parser("dehn-check", help="Check Area <= D n^2 max cell area")
    dehn_parser.add_argument("--structure", help="Catalog name (default: Z2-zigzag-binary)")
    dehn_parser.add_argument("--presentation", help="Shipped name or JSON file (default: Z2)")
    dehn_parser.add_argument("--sizes", help="Loop lengths, e.g. '4,6,8'")
    dehn_parser.add_argument("--samples", type=int, help="Loops per size (default: 8)")

    # Dense loops
    dense_parser = subparsers.add_parser("dense-loops", help="Lamplighter witness loops")
    dense_parser.add_argument("--structure", help="Catalog name (default: LL2)")
    dense_parser.add_argument("--n", type=int, help="Largest index (default: 2)")

    # Step function
    phi_parser = subparsers.add_parser("phi", help="Step function through loop lengths")
    phi_parser.add_argument("--lengths", help="Increasing lengths, e.g. '16,24,32'")
    phi_parser.add_argument("--n", type=int, help="Use dense loop lengths for n <= N")
    phi_parser.add_argument("--upto", type=int, help="Tabulate phi on [0, upto]")

    # Compare command
    compare_parser = subparsers.add_parser("compare", help="Refute g <= K f(M n) on a grid")
    compare_parser.add_argument("--g", help="Function spec (default: step:incomparable)")
    compare_parser.add_argument("--f", help="Function spec (default: identity)")
    compare_parser.add_argument("--grid", help="KxM grid (default: 16x8)")
    compare_parser.add_argument("--range", type=int, help="Range end")
    compare_parser.add_argument("--breakpoints-only", action="store_true", default=None)
    compare_parser.add_argument("--witness", help="Check one witness K,M,N instead of a grid")

    # Classify command
    classify_parser = subparsers.add_parser("classify", help="Growth evidence for a function")
    classify_parser.add_argument("--f", help="Function spec (default: exp:2)")

    for sub in subparsers.choices.values():
        _add_common(sub)
    return parser


def _failure_record(error: CadistError) -> str:
    record = {
        "status": "error",
        "error": type(error).__name__,
        "message": error.message,
        "details": error.details,
    }
    return json.dumps(record, sort_keys=True)


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point for the cadist CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return 0

    values = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    values["subcommand"] = args.command

    try:
        configure_from_env()
        manager = ConfigManager(args.config)
        config = manager.merge(values)
        return run(config, load_settings())
    except BudgetExceededError as e:
        print(_failure_record(e))
        print(OutputFormatter.format_error(e.message), file=sys.stderr)
        return 2
    except CadistError as e:
        print(_failure_record(e))
        print(OutputFormatter.format_error(e.message), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

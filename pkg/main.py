#!/usr/bin/env uv run python
# -*- coding: utf-8 -*-

import argparse
import os
import sys

from src.commands import COMMANDS, list_commands
from src.runner import BUDGET_ENV, OutputFormat, run_namespace


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="Worker processes for parallel-capable steps (default: available cores)",
    )
    common.add_argument(
        "--max-states",
        type=int,
        default=5_000_000,
        help="DP state budget (default: 5000000)",
    )
    common.add_argument(
        "--seconds",
        type=float,
        default=None,
        help=f"Time budget in seconds (default: ${BUDGET_ENV} or 600)",
    )
    common.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    common.add_argument(
        "--format",
        choices=[fmt.value for fmt in OutputFormat],
        default=OutputFormat.JSON.value,
        help="Output format (default: json)",
    )
    common.add_argument("-o", "--output", help="Write the result to this path instead of stdout")
    common.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Progress and timing on stderr",
    )

    parser = argparse.ArgumentParser(
        description="Exact and asymptotic enumeration of semiregular factorisations of K_{m,n}",
        prog="semifactor",
    )
    subparsers = parser.add_subparsers(
        dest="command",
        required=True,
        metavar="COMMAND",
        help=f"One of: {', '.join(list_commands())}",
    )
    for name, command in COMMANDS.items():
        subparser = subparsers.add_parser(name, parents=[common], help=command.help)
        command.add_arguments(subparser)
    return parser


def main() -> None:
    parser = build_parser()
    args = parser.parse_args()

    if getattr(args, "json", False):
        args.format = OutputFormat.JSON.value
    if args.max_states <= 0:
        parser.error("--max-states must be positive")
    if args.seconds is not None and args.seconds <= 0:
        parser.error("--seconds must be positive")

    result = run_namespace(args)
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()

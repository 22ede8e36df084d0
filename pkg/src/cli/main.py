"""
CLI Main

Parses the command line, configures logging, runs one subcommand and turns
its result or error into a JSON report and a stable exit code.
"""

import argparse
import json
import logging
import sys
import time
from typing import Any, Dict, List, Optional

from config.settings import APP_TITLE, VERSION, settings
from src.cli.commands import COMMANDS
from src.cli.reporting import build_envelope, derive_seed, write_banner, write_envelope, write_table
from src.exceptions import error_response_for, exit_code_for


logger = logging.getLogger(__name__)

# Flags that never change a result, left out of the derived seed
_NOT_SEEDED = ('verbose', 'jobs', 'progress', 'seed', 'handler')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='ramsey_lab',
        description=f"{APP_TITLE} {VERSION}: Ramsey goodness toolkit for K_(2,n) versus wheels"
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    """Console logging on stderr; -v and -vv lower the threshold below the configured level."""
    level = getattr(logging, settings.log_level.upper(), logging.WARNING)
    if verbosity == 1:
        level = min(level, logging.INFO)
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Returns:
        Exit code: 0 success, 1 counterexample or failed check, 2 usage or
        parse error, 3 capacity or bounded result
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    arguments: Dict[str, Any] = {
        key: value for key, value in vars(args).items() if key not in _NOT_SEEDED
    }
    if args.seed is None:
        args.seed = derive_seed(args.command, arguments)
    write_banner(args.command, args.seed)

    started = time.perf_counter()
    try:
        result = args.handler(args)
    except Exception as exc:
        sys.stderr.write(json.dumps(error_response_for(exc), indent=2) + '\n')
        return int(exit_code_for(exc))
    elapsed = time.perf_counter() - started

    write_table(result.headers, result.table)
    if result.raw_output is not None:
        sys.stdout.write(result.raw_output + '\n')
    else:
        envelope = build_envelope(args.command, arguments, args.seed, elapsed, result.payload)
        write_envelope(envelope)
    logger.info(f"{args.command} finished in {elapsed:.2f}s with exit code {int(result.exit_code)}")
    return int(result.exit_code)

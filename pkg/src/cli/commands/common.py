"""
Argument helpers shared by the subcommands.
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from src.domain.graph import Graph
from src.exceptions import ArgumentError
from src.repositories.graph_corpus_repository import GraphCorpusRepository, parse_corpus
from src.utils.graph6 import parse_graph6


def common_parser() -> argparse.ArgumentParser:
    """Flags every subcommand accepts, after the subcommand name."""
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="-v for INFO, -vv for DEBUG logging on stderr")
    parser.add_argument('--seed', type=int, default=None,
                        help="Random seed (default: derived from the other flags)")
    parser.add_argument('--jobs', type=int, default=None,
                        help="Worker processes (default: RAMSEY_LAB_JOBS or 1)")
    parser.add_argument('--progress', action='store_true', help="Progress bars on stderr")
    return parser


def add_graph_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('graph6', nargs='?', default=None, help="A graph6 string")
    parser.add_argument('--input', default=None,
                        help="graph6 corpus file, one graph per line ('-' for stdin)")


def read_graphs(graph6: Optional[str], input_path: Optional[str]) -> List[Graph]:
    """
    Graphs named on the command line: a single graph6 argument, or a corpus.

    Raises:
        ArgumentError: With neither or both sources, a missing file, or no graphs
        GraphParseError: For malformed graph6, with line and byte offset
    """
    if (graph6 is None) == (input_path is None):
        raise ArgumentError("Give exactly one of a graph6 argument or --input FILE")
    if graph6 is not None:
        return [parse_graph6(graph6)]
    if input_path == '-':
        graphs = parse_corpus(sys.stdin)
    else:
        if not Path(input_path).is_file():
            raise ArgumentError(f"Input file {input_path} does not exist")
        graphs = GraphCorpusRepository(input_path).load()
    if not graphs:
        raise ArgumentError(f"No graphs in {input_path}")
    return graphs


def parse_fraction(text: str) -> Fraction:
    """
    Raises:
        ArgumentError: When text is not a rational like 1/10
    """
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ArgumentError(f"'{text}' is not a fraction") from e


def require(args: argparse.Namespace, *names: str) -> None:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        flags = ', '.join('--' + name.replace('_', '-') for name in missing)
        raise ArgumentError(f"'{args.command}' needs {flags}")

"""
detect - look for a pattern in each input graph (or its complement).
"""

import argparse

from src.cli.commands.common import add_graph_input, common_parser, read_graphs
from src.cli.reporting import CommandResult
from src.domain.patterns import PatternSpec
from src.exceptions import VerificationError
from src.services.detection_service import DetectionService


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        'detect',
        parents=[common_parser()],
        help="Find a copy of a pattern and report its vertices"
    )
    parser.add_argument('--pattern', required=True, help="Pattern such as k2n:2 or wheel:5")
    parser.add_argument('--complement', action='store_true', help="Search the complement instead")
    add_graph_input(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    pattern = PatternSpec.parse(args.pattern)
    reports = []
    table = []
    for g in read_graphs(args.graph6, args.input):
        host = g.complement() if args.complement else g
        report = DetectionService.find(host, pattern)
        if not report.verify(host):
            raise VerificationError(f"Witness for {pattern} failed verification")
        reports.append(report)
        table.append((str(pattern), report.found, report.vertices() if report.found else None))
    return CommandResult(
        payload=[r.to_dict() for r in reports],
        headers=('pattern', 'found', 'vertices'),
        table=table
    )

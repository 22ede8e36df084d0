"""
analyze - structural summary of each input graph.
"""

import argparse

from src.cli.commands.common import add_graph_input, common_parser, read_graphs
from src.cli.reporting import CommandResult
from src.services.analysis_service import AnalysisService


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        'analyze',
        parents=[common_parser()],
        help="Degrees, connectivity, bipartiteness, cycle spectrum and dense/null splits"
    )
    add_graph_input(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    summaries = [AnalysisService.analyze(g) for g in read_graphs(args.graph6, args.input)]
    table = []
    for s in summaries:
        spectrum = s.cycle_spectrum.lengths if s.cycle_spectrum is not None else 'skipped'
        table.append((s.graph6, s.order, s.edge_count, s.min_degree, s.max_degree, s.connectivity,
                      s.bipartiteness.verdict, spectrum))
    return CommandResult(
        payload=[s.to_dict() for s in summaries],
        headers=('graph6', 'order', 'edges', 'min deg', 'max deg', 'kappa', 'bipartite', 'cycle lengths'),
        table=table
    )

"""
construct - named constructions, written as graph6.
"""

import argparse
import logging

from src.cli.commands.common import common_parser, require
from src.cli.reporting import CommandResult
from src.domain.graph import Graph
from src.domain.patterns import PatternSpec
from src.exceptions import ArgumentError, VerificationError
from src.services.arrowing_service import verify_lower_bound_witness
from src.services.construction_service import ConstructionService
from src.utils.graph6 import write_graph6


logger = logging.getLogger(__name__)

CONSTRUCTIONS = ['lower-bound-witness', 'pattern', 'tripartite', 'burr-witness', 'reference-table']


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        'construct',
        parents=[common_parser()],
        help="Write a construction as graph6",
        description="lower-bound-witness --n N --m M | pattern SPEC | tripartite (--n N | --sizes A B C) | "
                    "burr-witness --g SPEC --h SPEC | reference-table --n N --m M"
    )
    parser.add_argument('construction', choices=CONSTRUCTIONS)
    parser.add_argument('spec', nargs='?', default=None, help="Pattern for 'pattern', e.g. wheel:5")
    parser.add_argument('--n', type=int, default=None)
    parser.add_argument('--m', type=int, default=None)
    parser.add_argument('--sizes', type=int, nargs='+', default=None, help="Part sizes for 'tripartite'")
    parser.add_argument('--g', default=None, help="First pattern for 'burr-witness'")
    parser.add_argument('--h', default=None, help="Second pattern for 'burr-witness'")
    parser.add_argument('--json', action='store_true', help="Write the JSON report instead of graph6")
    parser.set_defaults(handler=run)


def _graph_payload(name: str, g: Graph, **extra) -> dict:
    return {'construction': name, 'graph6': write_graph6(g), 'order': g.order, 'edge_count': g.edge_count(), **extra}


def run(args: argparse.Namespace) -> CommandResult:
    name = args.construction

    if name == 'reference-table':
        require(args, 'n', 'm')
        rows = ConstructionService.reference_table(args.n, args.m)
        return CommandResult(
            payload={'construction': name, 'n': args.n, 'm': args.m, 'rows': rows},
            headers=('g', 'h', 'formula', 'value', 'burr', 'hypotheses'),
            table=[(r['g'], r['h'], r['formula'], r['value'], r['burr_bound'], r['hypotheses']) for r in rows]
        )

    if name == 'lower-bound-witness':
        require(args, 'n', 'm')
        verdict = verify_lower_bound_witness(args.n, args.m)
        if not verdict.conclusion_holds:
            raise VerificationError(f"3K_{args.n + 1} failed verification against W_{args.m}")
        g = ConstructionService.lower_bound_witness(args.n)
        payload = _graph_payload(name, g, verification=verdict.to_dict())
    elif name == 'pattern':
        if args.spec is None:
            raise ArgumentError("'construct pattern' needs a pattern such as wheel:5")
        pattern = PatternSpec.parse(args.spec)
        g = ConstructionService.realize(pattern)
        payload = _graph_payload(name, g, pattern=str(pattern))
    elif name == 'tripartite':
        if args.sizes is None:
            require(args, 'n')
        sizes = args.sizes if args.sizes is not None else [args.n + 1] * 3
        g = ConstructionService.complete_multipartite(sizes)
        payload = _graph_payload(name, g, sizes=sizes)
    else:
        require(args, 'g', 'h')
        g_spec, h_spec = PatternSpec.parse(args.g), PatternSpec.parse(args.h)
        g = ConstructionService.burr_witness(g_spec, h_spec)
        payload = _graph_payload(
            name, g, g=str(g_spec), h=str(h_spec), burr_bound=ConstructionService.burr_lower_bound(g_spec, h_spec)
        )

    logger.info(f"Built {name} of order {g.order}")
    return CommandResult(payload=payload, raw_output=None if args.json else payload['graph6'])

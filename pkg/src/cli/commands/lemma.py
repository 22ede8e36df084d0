"""
lemma - check a lemma over a corpus, a generator or a parameter grid.

Exits 1 when any input meets the hypotheses but breaks the conclusion.
"""

import argparse

from config.settings import settings
from src.cli.commands.common import common_parser, parse_fraction, read_graphs
from src.cli.reporting import CommandResult
from src.domain.reports import LemmaParameters
from src.exceptions import ArgumentError, ExitCode
from src.services.generation_service import GenerationService
from src.services.lemma_service import LEMMA_IDS, LemmaService


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        'lemma',
        parents=[common_parser()],
        help="Check a lemma and count counterexamples",
        description=f"Lemma ids: {', '.join(LEMMA_IDS)}"
    )
    parser.add_argument('lemma_id', help="Lemma identifier")
    source = parser.add_mutually_exclusive_group()
    source.add_argument('--corpus', default=None, help="graph6 corpus file ('-' for stdin)")
    source.add_argument('--graph', default=None, help="A single graph6 string")
    source.add_argument('--exhaustive', type=int, default=None, metavar='N',
                        help="Every graph up to order N (order 3n+4 for lemmas pinned to it)")
    source.add_argument('--exhaustive-bipartite', type=int, nargs=2, default=None, metavar=('A', 'B'),
                        help="Every bipartite intersection-lemma instance with |A|, |B| as given")
    source.add_argument('--random', type=int, default=None, metavar='COUNT', help="COUNT seeded random graphs")
    parser.add_argument('--order', type=int, default=None, help="Order of random graphs")
    parser.add_argument('--n', type=int, default=None)
    parser.add_argument('--m', type=int, default=None)
    parser.add_argument('--r', type=int, default=3)
    parser.add_argument('--k', type=int, default=2)
    parser.add_argument('--d', type=int, default=None)
    parser.add_argument('--fraction', default='1/10')
    parser.add_argument('--max-eps', type=int, default=20)
    parser.add_argument('--allow-large', action='store_true', help="Generate past the order guard")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    definition = LemmaService.definition(args.lemma_id)
    params = LemmaParameters(
        n=args.n, m=args.m, r=args.r, k=args.k, d=args.d,
        fraction=parse_fraction(args.fraction), max_eps=args.max_eps
    )
    generation_service = GenerationService(
        jobs=args.jobs if args.jobs is not None else settings.jobs,
        allow_large=args.allow_large,
        progress=args.progress or None
    )
    service = LemmaService(generation_service, progress=args.progress or None)

    if args.exhaustive_bipartite is not None:
        if args.lemma_id != 'intersection-lemma':
            raise ArgumentError("--exhaustive-bipartite only applies to intersection-lemma")
        size_a, size_b = args.exhaustive_bipartite
        summary = service.scan_intersection_bipartite(size_a, size_b, args.d)
    elif definition.standalone is not None:
        summary = service.run_standalone(args.lemma_id, params)
    elif args.exhaustive is not None:
        summary = service.scan_exhaustive(args.lemma_id, params, args.exhaustive)
    elif args.random is not None:
        summary = service.scan_random(args.lemma_id, params, args.random, args.seed, args.order)
    elif args.graph is not None or args.corpus is not None:
        summary = service.scan_graphs(args.lemma_id, read_graphs(args.graph, args.corpus), params)
    else:
        raise ArgumentError(
            f"'{args.lemma_id}' needs an input: --graph, --corpus, --exhaustive N or --random COUNT"
        )

    return CommandResult(
        payload=summary.to_dict(),
        exit_code=ExitCode.COUNTEREXAMPLE if summary.counterexamples else ExitCode.OK,
        headers=('lemma', 'examined', 'hypotheses met', 'held', 'counterexamples'),
        table=[(summary.lemma_id, summary.examined, summary.hypotheses_met,
                summary.conclusion_held, summary.counterexamples)]
    )

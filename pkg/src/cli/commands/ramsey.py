"""
ramsey - least N with N -> (g, h), or the best interval within the limits.
"""

import argparse
import logging

from config.settings import settings
from src.cli.commands.common import common_parser
from src.cli.reporting import CommandResult
from src.domain.patterns import PatternSpec
from src.domain.reports import SearchConfig, SearchMode
from src.exceptions import ExitCode
from src.repositories.search_journal_repository import SearchJournalRepository
from src.services.arrowing_service import ArrowingService
from src.services.generation_service import GenerationService
from src.services.stochastic_service import StochasticSearchService


logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        'ramsey',
        parents=[common_parser()],
        help="Compute R(g, h) by exhaustive arrowing checks"
    )
    parser.add_argument('--g', required=True, help="First pattern, e.g. k2n:2")
    parser.add_argument('--h', required=True, help="Second pattern, e.g. wheel:3")
    parser.add_argument('--max-order', type=int, default=None,
                        help="Largest order tried (default: the exhaustive guard)")
    parser.add_argument('--mode', choices=[mode.value for mode in SearchMode], default=SearchMode.EXHAUSTIVE.value)
    parser.add_argument('--allow-large', action='store_true', help="Search exhaustively past the order guard")
    parser.add_argument('--flips', type=int, default=None, help="Stochastic flips per restart")
    parser.add_argument('--restarts', type=int, default=None, help="Stochastic restarts")
    parser.add_argument('--split-order', type=int, default=None, help="Subtree root order for workers")
    parser.add_argument('--journal', default=None, help="Checkpoint file; an interrupted run resumes from it")
    parser.add_argument('--expect', type=int, default=None, help="Exit 1 unless the value equals this")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> CommandResult:
    g = PatternSpec.parse(args.g)
    h = PatternSpec.parse(args.h)
    jobs = args.jobs if args.jobs is not None else settings.jobs
    config = SearchConfig(
        max_order=args.max_order if args.max_order is not None else settings.exhaustive_order_guard,
        jobs=jobs,
        mode=args.mode,
        order_guard=settings.exhaustive_order_guard,
        allow_large=args.allow_large,
        flips=args.flips if args.flips is not None else settings.stochastic_flips,
        restarts=args.restarts if args.restarts is not None else settings.stochastic_restarts,
        seed=args.seed,
        split_order=args.split_order if args.split_order is not None else settings.split_order
    )
    generation_service = GenerationService(
        jobs=jobs,
        split_order=config.split_order,
        order_guard=config.order_guard,
        allow_large=config.allow_large,
        progress=args.progress or None
    )
    journal = SearchJournalRepository(args.journal) if args.journal else None
    service = ArrowingService(generation_service, StochasticSearchService(jobs=jobs), journal)
    result = service.ramsey_number(g, h, config)

    exit_code = ExitCode.OK
    if result.bounded:
        exit_code = ExitCode.CAPACITY
    elif args.expect is not None and result.value != args.expect:
        logger.error(f"R({g}, {h}) = {result.value}, expected {args.expect}")
        exit_code = ExitCode.COUNTEREXAMPLE

    table = [
        (r.order, r.arrows, r.source, r.graphs_examined, r.witness, f"{r.wall_time:.2f}")
        for r in result.per_order
    ]
    return CommandResult(
        payload=result.to_dict(),
        exit_code=exit_code,
        headers=('order', 'arrows', 'source', 'examined', 'witness', 'seconds'),
        table=table
    )

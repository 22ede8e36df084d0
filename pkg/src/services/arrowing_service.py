"""
Arrowing service - decides N -> (g, h) by pruned exhaustive generation and
computes small Ramsey numbers.

A graph on N vertices is a witness against arrowing when it avoids g and its
complement avoids h. Both properties survive vertex deletion, so generation
only ever extends witnesses; N arrows exactly when nothing survives.
"""

import logging
import time
from typing import List, Optional, Tuple

from src.domain.graph import Graph
from src.domain.patterns import PatternKind, PatternSpec
from src.domain.reports import LemmaVerdict, OrderResult, RamseyRun, SearchConfig, SearchMode
from src.exceptions import ArgumentError, HypothesisNotMetError, VerificationError
from src.repositories.search_journal_repository import JournalEntry, SearchJournalRepository
from src.services.construction_service import ConstructionService
from src.services.detection_service import DetectionService
from src.services.generation_service import GenerationService, HereditaryFilter, count_and_least_task
from src.services.stochastic_service import StochasticSearchService
from src.utils.bitsets import full_mask
from src.utils.graph6 import parse_graph6, write_graph6


logger = logging.getLogger(__name__)


def is_witness(candidate: Graph, g: PatternSpec, h: PatternSpec) -> bool:
    """g-free with an h-free complement."""
    return not DetectionService.contains(candidate, g) and not DetectionService.contains(candidate.complement(), h)


class ArrowingService:
    """Exhaustive arrowing checks and Ramsey number runs."""

    def __init__(
        self,
        generation_service: Optional[GenerationService] = None,
        stochastic_service: Optional[StochasticSearchService] = None,
        journal_repository: Optional[SearchJournalRepository] = None
    ):
        """
        Initialize service with optional collaborators.

        Args:
            generation_service: Generator and worker pool (default settings)
            stochastic_service: Local search used beyond the exhaustive limit
            journal_repository: Checkpoint journal for resumable runs
        """
        self.generation_service = generation_service or GenerationService()
        self.stochastic_service = stochastic_service or StochasticSearchService(
            jobs=self.generation_service.jobs
        )
        self.journal_repository = journal_repository

    def arrows_detail(self, order: int, g: PatternSpec, h: PatternSpec) -> OrderResult:
        """
        Exhaustive arrowing check at one order.

        Finished subtrees are read back from the journal when one is
        attached, and new ones are appended as they complete.

        Returns:
            OrderResult whose witness is the least surviving graph6, and whose
            graphs_examined counts the graphs at `order` that survived pruning
        """
        started = time.perf_counter()
        graph_filter = HereditaryFilter(forbidden=g, complement_forbidden=h)
        roots = self.generation_service.subtree_roots(order, graph_filter)

        root_codes = [write_graph6(root) for root in roots]
        done = {}
        if self.journal_repository is not None:
            self.journal_repository.open_run(g, h)
            # entries from another split order have roots outside this set
            completed = self.journal_repository.completed(order)
            done = {code: completed[code] for code in root_codes if code in completed}
        pending = [root for root, code in zip(roots, root_codes) if code not in done]
        if done:
            logger.info(f"Order {order}: {len(done)} of {len(roots)} subtrees from journal")

        results: List[Tuple[int, Optional[str]]] = [(entry.examined, entry.witness) for entry in done.values()]
        chunk = max(1, 4 * self.generation_service.jobs)
        for start in range(0, len(pending), chunk):
            batch = pending[start:start + chunk]
            batch_results = self.generation_service.map_subtrees(
                order, count_and_least_task, graph_filter, roots=batch
            )
            results.extend(batch_results)
            if self.journal_repository is not None:
                self.journal_repository.append(
                    JournalEntry(order=order, root=write_graph6(root), examined=count, witness=least)
                    for root, (count, least) in zip(batch, batch_results)
                )

        examined = sum(count for count, _ in results)
        witnesses = [least for _, least in results if least is not None]
        witness = min(witnesses) if witnesses else None
        elapsed = time.perf_counter() - started
        logger.info(
            f"Order {order} for ({g}, {h}): {'no witness, arrows' if witness is None else 'witness ' + witness}"
            f" after {examined} surviving graphs in {elapsed:.2f}s"
        )
        return OrderResult(
            order=order,
            arrows=witness is None,
            source='exhaustive',
            witness=witness,
            graphs_examined=examined,
            wall_time=elapsed
        )

    def arrows(self, order: int, g: PatternSpec, h: PatternSpec) -> Tuple[bool, Optional[Graph]]:
        """
        Whether every graph on `order` vertices contains g or has h in its
        complement.

        Returns:
            (arrows, witness): the witness is None exactly when arrows holds
        """
        result = self.arrows_detail(order, g, h)
        witness = parse_graph6(result.witness) if result.witness is not None else None
        if witness is not None and not is_witness(witness, g, h):
            raise VerificationError(f"Witness {result.witness} failed independent verification")
        return bool(result.arrows), witness

    def _construction_orders(
        self, g: PatternSpec, h: PatternSpec, burr: int, max_order: int
    ) -> List[OrderResult]:
        """Orders below the Burr bound, settled by prefixes of the Burr witness."""
        limit = min(burr - 1, max_order)
        if limit < 1:
            return []
        witness = ConstructionService.burr_witness(g, h)
        if not is_witness(witness, g, h):
            raise VerificationError(f"Burr construction for ({g}, {h}) failed verification")
        logger.info(f"Orders 1..{limit} settled by the Burr construction of order {witness.order}")
        return [
            OrderResult(
                order=order,
                arrows=False,
                source='construction',
                witness=write_graph6(witness.induced(full_mask(order))),
            )
            for order in range(1, limit + 1)
        ]

    def ramsey_number(self, g: PatternSpec, h: PatternSpec, config: SearchConfig) -> RamseyRun:
        """
        Least N with N -> (g, h), scanning upward from the Burr bound.

        Orders past the exhaustive limit are attempted by local search in
        stochastic mode; otherwise the run stops there with the best known
        interval (bounded=True).
        """
        try:
            burr: Optional[int] = ConstructionService.burr_lower_bound(g, h)
        except HypothesisNotMetError as e:
            logger.info(f"Burr bound not applicable: {e.detail}")
            burr = None

        per_order = self._construction_orders(g, h, burr, config.max_order) if burr else []
        start = burr if burr else 1
        limit = config.exhaustive_limit
        value: Optional[int] = None

        for order in range(start, config.max_order + 1):
            if order <= limit:
                result = self.arrows_detail(order, g, h)
                if result.witness is not None and not is_witness(parse_graph6(result.witness), g, h):
                    raise VerificationError(f"Witness {result.witness} failed independent verification")
                per_order.append(result)
                if result.arrows:
                    value = order
                    break
                continue

            if config.mode != SearchMode.STOCHASTIC.value:
                logger.warning(f"Order {order} is past the exhaustive limit of {limit}; result is bounded")
                break
            started = time.perf_counter()
            found = self.stochastic_service.search(order, g, h, config)
            per_order.append(OrderResult(
                order=order,
                arrows=False if found is not None else None,
                source='stochastic',
                witness=write_graph6(found) if found is not None else None,
                wall_time=time.perf_counter() - started
            ))
            if found is None:
                logger.warning(f"No witness found by local search at order {order}; result is bounded")
                break

        non_arrowing = [r.order for r in per_order if r.arrows is False]
        lower = max(non_arrowing, default=0) + 1
        if burr is not None:
            lower = max(lower, burr)
        run = RamseyRun(
            g=g,
            h=h,
            value=value,
            lower_bound=lower,
            upper_bound=value,
            burr_bound=burr,
            bounded=value is None,
            per_order=per_order,
            config=config
        )
        if value is not None:
            logger.info(f"R({g}, {h}) = {value}")
        else:
            logger.info(f"R({g}, {h}) >= {lower}, not settled within order {config.max_order}")
        return run


def verify_lower_bound_witness(n: int, m: int) -> LemmaVerdict:
    """
    Check that three disjoint copies of K_{n+1} avoid K_{2,n} while their
    complement, the complete tripartite graph, avoids W_m. A pass certifies
    R(K_{2,n}, W_m) >= 3n+4.

    Raises:
        ArgumentError: For n < 1, m < 3 or even m
    """
    if n < 1:
        raise ArgumentError(f"n must be >= 1, got {n}")
    if m < 3 or m % 2 == 0:
        raise ArgumentError(f"The construction needs an odd wheel with m >= 3, got m = {m}")

    witness = ConstructionService.lower_bound_witness(n)
    k2n = DetectionService.find_k2n(witness, n)
    wheel = DetectionService.find_wheel(witness.complement(), m)
    holds = not k2n.found and not wheel.found
    if not holds:
        logger.error(f"Lower-bound construction failed at n={n}, m={m}")
    return LemmaVerdict(
        lemma_id='lower-bound-witness',
        hypotheses_met=True,
        conclusion_holds=holds,
        graph6=write_graph6(witness),
        diagnostics={
            'n': n,
            'm': m,
            'order': witness.order,
            'k2n_free': not k2n.found,
            'complement_wheel_free': not wheel.found,
            'certified_lower_bound': 3 * n + 4 if holds else None,
            'pattern_g': str(PatternSpec(kind=PatternKind.K2N, parameter=n)),
            'pattern_h': str(PatternSpec(kind=PatternKind.WHEEL, parameter=m)),
        }
    )

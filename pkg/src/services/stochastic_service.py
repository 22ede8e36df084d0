"""
Stochastic witness search - edge-flip local search for graphs that avoid g
while their complement avoids h, at orders too large to enumerate.

Energy is violation_count(G, g) + violation_count(complement, h). One step
toggles a random vertex pair; only the part of the energy a toggle of uv can
change is recomputed. Acceptance follows a Metropolis rule under a
geometric inverse-temperature schedule. Restarts draw independent streams
spawned from one master seed.
"""

import logging
from typing import List, Optional

import numpy as np
from joblib import Parallel, delayed

from config.settings import settings
from src.domain.graph import Graph
from src.domain.patterns import PatternKind, PatternSpec
from src.domain.reports import SearchConfig
from src.exceptions import VerificationError
from src.services.detection_service import DetectionService
from src.utils.bitsets import iter_bits, popcount
from src.utils.graph6 import parse_graph6, write_graph6


logger = logging.getLogger(__name__)

BETA_START = 0.5
BETA_END = 30.0


def local_violations(g: Graph, pattern: PatternSpec, u: int, v: int) -> int:
    """
    Violations that toggling uv can affect: the part of
    violation_count(g, pattern) that depends on the pair uv.
    """
    p = pattern.parameter
    kind = pattern.pattern_kind
    rows = g.rows
    if kind in (PatternKind.K2N, PatternKind.BOOK):
        book = kind == PatternKind.BOOK
        count = 0
        for a in (u, v):
            for x in range(g.order):
                if x == a or (a == v and x == u):
                    continue
                if book and not (rows[a] >> x) & 1:
                    continue
                if popcount(rows[a] & rows[x]) >= p:
                    count += 1
        return count
    if kind == PatternKind.STAR:
        return int(popcount(rows[u]) >= p) + int(popcount(rows[v]) >= p)
    if kind == PatternKind.WHEEL:
        affected = (1 << u) | (1 << v) | (rows[u] & rows[v])
        return sum(1 for w in iter_bits(affected) if DetectionService.is_hub(g, w, p))
    return DetectionService.violation_count(g, pattern)


def energy(g: Graph, forbidden: PatternSpec, complement_forbidden: PatternSpec) -> int:
    return (
        DetectionService.violation_count(g, forbidden)
        + DetectionService.violation_count(g.complement(), complement_forbidden)
    )


def _restart(
    order: int,
    forbidden: PatternSpec,
    complement_forbidden: PatternSpec,
    flips: int,
    seed_sequence: np.random.SeedSequence
) -> Optional[str]:
    """One annealing run; graph6 of an energy-0 graph, or None."""
    rng = np.random.default_rng(seed_sequence)
    pairs = [(a, b) for a in range(order) for b in range(a + 1, order)]
    if not pairs:
        g = Graph.empty(order)
        return write_graph6(g) if energy(g, forbidden, complement_forbidden) == 0 else None

    density = rng.uniform(0.2, 0.8)
    edges = [pair for pair, keep in zip(pairs, rng.random(len(pairs)) < density) if keep]
    g = Graph.from_edges(order, edges)
    current = energy(g, forbidden, complement_forbidden)
    betas = np.geomspace(BETA_START, BETA_END, num=flips)

    for step in range(flips):
        if current == 0:
            break
        u, v = pairs[int(rng.integers(len(pairs)))]
        gc = g.complement()
        before = local_violations(g, forbidden, u, v) + local_violations(gc, complement_forbidden, u, v)
        candidate = g.toggle_edge(u, v)
        cc = candidate.complement()
        after = local_violations(candidate, forbidden, u, v) + local_violations(cc, complement_forbidden, u, v)
        delta = after - before
        if delta <= 0 or rng.random() < np.exp(-betas[step] * delta):
            g = candidate
            current += delta

    if current == 0:
        return write_graph6(g)
    return None


class StochasticSearchService:
    """Seeded, restartable local search for lower-bound witnesses."""

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = jobs if jobs is not None else settings.jobs

    def search(
        self,
        order: int,
        forbidden: PatternSpec,
        complement_forbidden: PatternSpec,
        config: SearchConfig
    ) -> Optional[Graph]:
        """
        Look for a graph on `order` vertices avoiding `forbidden` whose
        complement avoids `complement_forbidden`.

        The first successful restart by index wins, so the answer does not
        depend on the worker count.

        Returns:
            Witness graph, or None when the budget runs out
        """
        streams = np.random.SeedSequence(config.seed).spawn(config.restarts)
        logger.info(
            f"Stochastic search at order {order} for ({forbidden}, {complement_forbidden}): "
            f"{config.restarts} restarts x {config.flips} flips, seed {config.seed}"
        )
        if self.jobs == 1:
            for index, stream in enumerate(streams):
                code = _restart(order, forbidden, complement_forbidden, config.flips, stream)
                if code is not None:
                    logger.info(f"Restart {index} found a witness at order {order}")
                    return self._checked(code, forbidden, complement_forbidden)
            return None

        results: List[Optional[str]] = Parallel(n_jobs=self.jobs)(
            delayed(_restart)(order, forbidden, complement_forbidden, config.flips, stream)
            for stream in streams
        )
        for index, code in enumerate(results):
            if code is not None:
                logger.info(f"Restart {index} found a witness at order {order}")
                return self._checked(code, forbidden, complement_forbidden)
        return None

    @staticmethod
    def _checked(code: str, forbidden: PatternSpec, complement_forbidden: PatternSpec) -> Graph:
        g = parse_graph6(code)
        if DetectionService.contains(g, forbidden) or DetectionService.contains(g.complement(), complement_forbidden):
            raise VerificationError(f"Local search produced an invalid witness {code}")
        return g

"""
Construction service - pattern realizations, named constructions and the
Burr lower bound.
"""

import logging
from typing import Any, Dict, List, Sequence

from config.settings import settings
from src.domain.graph import Graph
from src.domain.patterns import PatternKind, PatternSpec
from src.exceptions import ArgumentError, CapacityError, HypothesisNotMetError
from src.utils.structure import is_connected


logger = logging.getLogger(__name__)


# Known closed forms for pattern pairs: (g kind, h kind, formula, hypotheses, value)
REFERENCE_VALUES = [
    ('star', 'wheel', '3n+1', 'm odd, n >= m-1', lambda n, m: 3 * n + 1),
    ('k2n', 'cycle', '2n+3', 'm odd, m >= 7, n >= 2m+499, n >= 3493', lambda n, m: 2 * n + 3),
    ('wheel', 'book', '2m+1', 'm >= 5n+3', lambda n, m: 2 * m + 1),
    ('k2n', 'wheel', '3n+4', 'm odd, n >= 4m, n large', lambda n, m: 3 * n + 4),
]


class ConstructionService:
    """Builders for the graphs the toolkit reasons about."""

    @staticmethod
    def _check_capacity(order: int) -> None:
        if order > settings.construction_order_cap:
            raise CapacityError(
                f"Construction of order {order} exceeds the cap of {settings.construction_order_cap}"
            )

    @staticmethod
    def cycle(m: int) -> Graph:
        if m < 3:
            raise ArgumentError(f"A cycle needs at least 3 vertices, got {m}")
        return Graph.from_edges(m, ((i, (i + 1) % m) for i in range(m)))

    @staticmethod
    def path(k: int) -> Graph:
        return Graph.from_edges(k, ((i, i + 1) for i in range(k - 1)))

    @staticmethod
    def join(g: Graph, h: Graph) -> Graph:
        """
        Disjoint union of g and h plus every edge between them.

        Raises:
            CapacityError: When the combined order exceeds the construction cap
        """
        ConstructionService._check_capacity(g.order + h.order)
        union = g.disjoint_union(h)
        low = g.vertex_mask
        high = union.vertex_mask & ~low
        rows = [row | (high if v < g.order else low) for v, row in enumerate(union.rows)]
        return Graph(union.order, rows)

    @staticmethod
    def disjoint_cliques(copies: int, clique_order: int) -> Graph:
        """Disjoint union of `copies` complete graphs of the given order."""
        if copies < 1 or clique_order < 1:
            raise ArgumentError(
                f"disjoint_cliques needs copies >= 1 and clique_order >= 1, got {copies}, {clique_order}"
            )
        ConstructionService._check_capacity(copies * clique_order)
        g = Graph.empty(0)
        for _ in range(copies):
            g = g.disjoint_union(Graph.complete(clique_order))
        return g

    @staticmethod
    def complete_multipartite(part_sizes: Sequence[int]) -> Graph:
        """Complete multipartite graph; parts occupy contiguous vertex blocks."""
        if not part_sizes or any(size < 1 for size in part_sizes):
            raise ArgumentError(f"Every part size must be >= 1, got {list(part_sizes)}")
        total = sum(part_sizes)
        ConstructionService._check_capacity(total)
        full = (1 << total) - 1
        rows: List[int] = []
        start = 0
        for size in part_sizes:
            block = ((1 << size) - 1) << start
            rows.extend([full & ~block] * size)
            start += size
        return Graph(total, rows)

    @staticmethod
    def realize(pattern: PatternSpec) -> Graph:
        """
        Canonical realization of a pattern.

        Stars put the centre at 0, K_{2,n} and books put the apex pair at 0
        and 1, wheels put the hub at 0 with the rim 1..m in cyclic order.
        """
        p = pattern.parameter
        kind = pattern.pattern_kind
        ConstructionService._check_capacity(pattern.burr_parameters().order)

        if kind == PatternKind.STAR:
            return Graph.from_edges(p + 1, ((0, i) for i in range(1, p + 1)))
        if kind in (PatternKind.K2N, PatternKind.BOOK):
            edges = [(a, i) for a in (0, 1) for i in range(2, p + 2)]
            if kind == PatternKind.BOOK:
                edges.append((0, 1))
            return Graph.from_edges(p + 2, edges)
        if kind == PatternKind.CYCLE:
            return ConstructionService.cycle(p)
        if kind == PatternKind.WHEEL:
            return ConstructionService.join(Graph.empty(1), ConstructionService.cycle(p))
        return Graph.complete(p)

    @staticmethod
    def burr_lower_bound(g: PatternSpec, h: PatternSpec) -> int:
        """
        Burr's bound (|V(g)|-1)(χ(h)-1)+σ(h).

        Raises:
            HypothesisNotMetError: When g is disconnected or |V(g)| < σ(h)
        """
        g_params = g.burr_parameters()
        h_params = h.burr_parameters()
        if not is_connected(ConstructionService.realize(g)):
            raise HypothesisNotMetError(f"Burr bound needs a connected {g}")
        if g_params.order < h_params.surplus:
            raise HypothesisNotMetError(
                f"Burr bound needs |V({g})| = {g_params.order} >= σ({h}) = {h_params.surplus}"
            )
        return (g_params.order - 1) * (h_params.chromatic_number - 1) + h_params.surplus

    @staticmethod
    def burr_witness(g: PatternSpec, h: PatternSpec) -> Graph:
        """
        Graph on burr_lower_bound(g, h) - 1 vertices that is g-free with an
        h-free complement: χ(h)-1 disjoint copies of K_{|V(g)|-1} plus one
        K_{σ(h)-1}.
        """
        bound = ConstructionService.burr_lower_bound(g, h)
        g_params = g.burr_parameters()
        h_params = h.burr_parameters()
        ConstructionService._check_capacity(bound - 1)

        witness = Graph.empty(0)
        if g_params.order > 1:
            witness = ConstructionService.disjoint_cliques(h_params.chromatic_number - 1, g_params.order - 1)
        if h_params.surplus > 1:
            witness = witness.disjoint_union(Graph.complete(h_params.surplus - 1))
        logger.debug(f"Burr witness for ({g}, {h}) has order {witness.order}")
        return witness

    @staticmethod
    def lower_bound_witness(n: int) -> Graph:
        """Three disjoint copies of K_{n+1}."""
        return ConstructionService.disjoint_cliques(3, n + 1)

    @staticmethod
    def reference_table(n: int, m: int) -> List[Dict[str, Any]]:
        """
        Known closed-form Ramsey values at (n, m), each beside the Burr bound
        of its pair. The closed forms only hold under their hypotheses.
        """
        rows = []
        for g_kind, h_kind, formula, hypotheses, value in REFERENCE_VALUES:
            g_param = m if g_kind == 'wheel' else n
            h_param = n if h_kind == 'book' else m
            g = PatternSpec(kind=g_kind, parameter=g_param)
            h = PatternSpec(kind=h_kind, parameter=h_param)
            burr = ConstructionService.burr_lower_bound(g, h)
            rows.append({
                'g': str(g),
                'h': str(h),
                'formula': formula,
                'hypotheses': hypotheses,
                'value': value(n, m),
                'burr_bound': burr,
                'matches_burr': value(n, m) == burr,
            })
        return rows

"""
Generation service - isomorph-free exhaustive generation of simple graphs by
canonical augmentation, with hereditary pruning and a joblib worker pool.

A child of a parent on k vertices is the parent plus vertex k joined to a
subset S of the old vertices. A child is kept when vertex k lies in the
orbit of the child's canonical deletion vertex, and kept children of one
parent are deduplicated by nauty certificate. Every isomorphism class is
then produced exactly once. Predicates closed under vertex deletion can
prune a branch as soon as it fails.
"""

import logging
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
import pynauty
from joblib import Parallel, delayed
from tqdm import tqdm

from config.settings import settings
from src.domain.graph import Graph
from src.domain.patterns import PatternSpec
from src.exceptions import ArgumentError, CapacityError
from src.services.detection_service import DetectionService
from src.utils.bitsets import iter_bits, popcount, to_list
from src.utils.graph6 import parse_graph6, write_graph6


logger = logging.getLogger(__name__)

R = TypeVar('R')

# Number of isomorphism classes of simple graphs, by order
KNOWN_CLASS_COUNTS = {
    0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346,
    9: 274668, 10: 12005168, 11: 1018997864, 12: 165091172592,
}


class HereditaryFilter:
    """
    Predicate closed under vertex deletion, used to prune generation.

    A graph on k vertices survives when it is free of `forbidden`, its
    complement is free of `complement_forbidden`, and every vertex has degree
    at least min_degree - (target_order - k).
    """

    def __init__(
        self,
        forbidden: Optional[PatternSpec] = None,
        complement_forbidden: Optional[PatternSpec] = None,
        min_degree: int = 0,
        target_order: int = 0
    ):
        self.forbidden = forbidden
        self.complement_forbidden = complement_forbidden
        self.min_degree = min_degree
        self.target_order = target_order

    def degree_floor(self, order: int) -> int:
        """Least degree a graph on `order` vertices needs; 0 without a degree bound."""
        if self.min_degree <= 0:
            return 0
        return self.min_degree - (self.target_order - order)

    def accepts(self, g: Graph, new_vertex: Optional[int] = None) -> bool:
        """
        Check the predicate; with `new_vertex`, g minus that vertex is known
        to pass and only copies through it are searched.
        """
        floor = self.degree_floor(g.order)
        if floor > 0 and g.min_degree() < floor:
            return False
        if self.forbidden is not None and DetectionService.contains(g, self.forbidden, new_vertex):
            return False
        if self.complement_forbidden is not None and DetectionService.contains(
            g.complement(), self.complement_forbidden, new_vertex
        ):
            return False
        return True

    def __repr__(self) -> str:
        return (
            f"HereditaryFilter(forbidden={self.forbidden}, complement_forbidden={self.complement_forbidden}, "
            f"min_degree={self.min_degree}, target_order={self.target_order})"
        )


def _nauty_graph(g: Graph) -> pynauty.Graph:
    return pynauty.Graph(
        number_of_vertices=g.order,
        directed=False,
        adjacency_dict={v: to_list(g.neighbors(v)) for v in range(g.order)}
    )


def _weight(g: Graph, degrees: Sequence[int], v: int) -> Tuple[int, Tuple[int, ...]]:
    return degrees[v], tuple(sorted(degrees[u] for u in iter_bits(g.neighbors(v))))


def _is_canonical_extension(child: Graph, degrees: Sequence[int]) -> bool:
    """
    Whether the last vertex is in the orbit of the canonical deletion vertex.

    The canonical deletion vertex is, among vertices of largest
    (degree, sorted neighbour degrees), the one placed last by nauty's
    canonical labelling.
    """
    k = child.order - 1
    if degrees[k] < max(degrees):
        return False
    top_degree = [v for v in range(child.order) if degrees[v] == degrees[k]]
    weights = {v: _weight(child, degrees, v) for v in top_degree}
    best = max(weights.values())
    if weights[k] < best:
        return False
    tied = [v for v in top_degree if weights[v] == best]
    if len(tied) == 1:
        return True

    ng = _nauty_graph(child)
    position = {v: i for i, v in enumerate(pynauty.canon_label(ng))}
    chosen = max(tied, key=position.__getitem__)
    if chosen == k:
        return True
    orbits = pynauty.autgrp(ng)[3]
    return orbits[chosen] == orbits[k]


def canonical_children(parent: Graph, graph_filter: Optional[HereditaryFilter] = None) -> List[Graph]:
    """Children of parent accepted by canonical augmentation, in subset order."""
    k = parent.order
    degrees = parent.degrees()
    floor = graph_filter.degree_floor(k + 1) if graph_filter is not None else 0
    seen = set()
    children = []
    for subset in range(1 << k):
        new_degree = popcount(subset)
        if new_degree < floor:
            continue
        child_degrees = [d + ((subset >> v) & 1) for v, d in enumerate(degrees)]
        child_degrees.append(new_degree)
        if new_degree < max(child_degrees):
            continue
        if floor > 0 and min(child_degrees) < floor:
            continue
        child = parent.add_vertex(subset)
        if graph_filter is not None and not graph_filter.accepts(child, new_vertex=k):
            continue
        if not _is_canonical_extension(child, child_degrees):
            continue
        certificate = pynauty.certificate(_nauty_graph(child))
        if certificate in seen:
            continue
        seen.add(certificate)
        children.append(child)
    return children


def iter_descendants(root: Graph, order: int, graph_filter: Optional[HereditaryFilter] = None) -> Iterator[Graph]:
    """Depth-first stream of the canonical descendants of root at `order`."""
    if root.order == order:
        yield root
        return
    stack = [iter(canonical_children(root, graph_filter))]
    while stack:
        child = next(stack[-1], None)
        if child is None:
            stack.pop()
            continue
        if child.order == order:
            yield child
        else:
            stack.append(iter(canonical_children(child, graph_filter)))


def _run_subtree(
    root_graph6: str,
    order: int,
    graph_filter: Optional[HereditaryFilter],
    task: Callable[[Iterator[Graph]], R]
) -> R:
    root = parse_graph6(root_graph6)
    return task(iter_descendants(root, order, graph_filter))


class GenerationService:
    """Isomorph-free generation over one worker pool."""

    def __init__(
        self,
        jobs: Optional[int] = None,
        split_order: Optional[int] = None,
        order_guard: Optional[int] = None,
        allow_large: bool = False,
        progress: Optional[bool] = None
    ):
        """
        Initialize service.

        Args:
            jobs: Worker count (defaults to settings.jobs)
            split_order: Order of the subtree roots handed to workers
            order_guard: Largest order generated without allow_large
            allow_large: Generate past the guard, with a cost warning
            progress: Show a tqdm bar over subtrees on stderr
        """
        self.jobs = jobs if jobs is not None else settings.jobs
        self.split_order = split_order if split_order is not None else settings.split_order
        self.order_guard = order_guard if order_guard is not None else settings.exhaustive_order_guard
        self.allow_large = allow_large
        self.progress = settings.progress if progress is None else progress
        if self.jobs < 1:
            raise ArgumentError(f"Worker count must be >= 1, got {self.jobs}")

    def check_order(self, order: int) -> None:
        """
        Raises:
            CapacityError: Above the search cap, or above the guard unless allowed
        """
        if order < 0:
            raise ArgumentError(f"Order must be non-negative, got {order}")
        if order > settings.search_order_cap:
            raise CapacityError(f"Order {order} exceeds the search cap of {settings.search_order_cap}")
        if order > self.order_guard:
            if not self.allow_large:
                raise CapacityError(
                    f"Exhaustive generation at order {order} exceeds the guard of {self.order_guard}"
                )
            estimate = KNOWN_CLASS_COUNTS.get(order)
            classes = f"{estimate:,}" if estimate is not None else "an unknown number of"
            logger.warning(
                f"Generating past the guard at order {order}: {classes} isomorphism classes "
                f"before pruning"
            )

    def subtree_roots(self, order: int, graph_filter: Optional[HereditaryFilter] = None) -> List[Graph]:
        """Graphs at the split order (or `order`, if smaller) whose subtrees cover everything."""
        self.check_order(order)
        if order == 0:
            return [Graph.empty(0)]
        seed = Graph.empty(1)
        if graph_filter is not None and not graph_filter.accepts(seed):
            return []
        depth = min(self.split_order, order)
        return list(iter_descendants(seed, depth, graph_filter))

    def iter_graphs(self, order: int, graph_filter: Optional[HereditaryFilter] = None) -> Iterator[Graph]:
        """Serial stream of one representative per isomorphism class at `order`."""
        for root in self.subtree_roots(order, graph_filter):
            yield from iter_descendants(root, order, graph_filter)

    def generate_nonisomorphic(
        self,
        order: int,
        consumer: Optional[Callable[[Graph], None]] = None,
        graph_filter: Optional[HereditaryFilter] = None
    ) -> int:
        """
        Stream every isomorphism class at `order` to consumer.

        Returns:
            Number of graphs generated
        """
        count = 0
        for g in self.iter_graphs(order, graph_filter):
            if consumer is not None:
                consumer(g)
            count += 1
        logger.info(f"Generated {count} graphs at order {order}")
        return count

    def map_subtrees(
        self,
        order: int,
        task: Callable[[Iterator[Graph]], R],
        graph_filter: Optional[HereditaryFilter] = None,
        roots: Optional[List[Graph]] = None
    ) -> List[R]:
        """
        Apply task to the graph stream of every subtree, over the worker pool.

        Results come back in root order, so any reduction over them is
        independent of the worker count.
        """
        if roots is None:
            roots = self.subtree_roots(order, graph_filter)
        root_codes = [write_graph6(root) for root in roots]
        iterable = tqdm(root_codes, desc=f"order {order}", disable=not self.progress)
        if self.jobs == 1:
            return [_run_subtree(code, order, graph_filter, task) for code in iterable]
        logger.debug(f"Dispatching {len(root_codes)} subtrees to {self.jobs} workers")
        return Parallel(n_jobs=self.jobs)(
            delayed(_run_subtree)(code, order, graph_filter, task) for code in iterable
        )


def count_task(stream: Iterator[Graph]) -> int:
    return sum(1 for _ in stream)


def count_and_least_task(stream: Iterator[Graph]) -> Tuple[int, Optional[str]]:
    """Graph count plus the least graph6 code in a subtree."""
    count = 0
    least: Optional[str] = None
    for g in stream:
        count += 1
        code = write_graph6(g)
        if least is None or code < least:
            least = code
    return count, least


def random_graph(order: int, rng: np.random.Generator, density: Optional[float] = None) -> Graph:
    """G(order, p) sample; p is drawn from [0.2, 0.8] when not given."""
    p = density if density is not None else rng.uniform(0.2, 0.8)
    pairs = [(a, b) for a in range(order) for b in range(a + 1, order)]
    keep = rng.random(len(pairs)) < p
    return Graph.from_edges(order, (pair for pair, kept in zip(pairs, keep) if kept))


def random_pattern_free_graph(order: int, forbidden: PatternSpec, rng: np.random.Generator) -> Graph:
    """
    Random graph free of `forbidden`: a random maximal free graph built by
    adding shuffled pairs that keep it free, then thinned by a random edge
    deletion rate in [0, 0.3).
    """
    pairs = [(a, b) for a in range(order) for b in range(a + 1, order)]
    g = Graph.empty(order)
    for index in rng.permutation(len(pairs)):
        u, v = pairs[int(index)]
        candidate = g.toggle_edge(u, v)
        if not DetectionService.contains(candidate, forbidden, new_vertex=u):
            g = candidate
    drop = rng.uniform(0.0, 0.3)
    edges = list(g.edges())
    kept = rng.random(len(edges)) >= drop
    return Graph.from_edges(order, (edge for edge, keep in zip(edges, kept) if keep))

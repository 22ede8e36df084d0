"""
Lemma service - mechanical checks of the structural lemmas behind
R(K_{2,n}, W_m) = 3n+4.

Each check takes one concrete graph, decides whether the lemma's hypotheses
hold and, when they do, whether its conclusion does. Scans run a check over
a corpus, a random sample or every graph of an order and reduce the verdicts
to counts plus a few sample counterexamples.

Thresholds involving sqrt(3) are compared in integers after squaring; every
other bound is an exact Fraction.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from config.settings import settings
from src.domain.graph import BipartitenessCertificate, Graph
from src.domain.patterns import PatternKind, PatternSpec
from src.domain.reports import DecompositionReport, LemmaParameters, LemmaVerdict, MomentReport, ScanSummary
from src.exceptions import ArgumentError, CapacityError, HypothesisNotMetError, UnknownLemmaError
from src.services.arrowing_service import verify_lower_bound_witness
from src.services.detection_service import DetectionService
from src.services.generation_service import (
    GenerationService,
    HereditaryFilter,
    random_graph,
    random_pattern_free_graph,
)
from src.utils.bitsets import from_iterable, full_mask, iter_bits, popcount, to_list
from src.utils.graph6 import write_graph6
from src.utils.structure import (
    biconnected_components,
    bipartiteness,
    components,
    connectivity,
    is_bipartite,
    is_two_connected,
)


logger = logging.getLogger(__name__)

STANDARD_FRACTIONS = (Fraction(1, 10), Fraction(1, 6))
REGIME_FRACTION = {'lower': Fraction(1, 10), 'upper': Fraction(1, 6)}
SAMPLE_LIMIT = 20
INTERSECTION_ORDER_CAP = 12


def _fraction_text(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _k2n(n: int) -> PatternSpec:
    return PatternSpec(kind=PatternKind.K2N, parameter=n)


def _min_degree_floor(n: int) -> int:
    """Least delta with delta² >= 3(n+1)²."""
    target = 3 * (n + 1) ** 2
    root = math.isqrt(target)
    return root if root * root == target else root + 1


def neighborhood_regime(size: int, n: int) -> str:
    """
    Size regime of the complement neighbourhood H̄ on `size` vertices.

    below: size < (3-√3)(n+1); lower: up to 3(n+1)/2 - 1; between: the gap
    left when n+1 is odd; upper: 3(n+1)/2 to 2(n+1); above: past 2(n+1).
    """
    q = n + 1
    if size > 2 * q:
        return 'above'
    if (3 * q - size) ** 2 > 3 * q * q:
        return 'below'
    if 2 * size <= 3 * q - 2:
        return 'lower'
    if 2 * size < 3 * q:
        return 'between'
    return 'upper'


def expectation_numerator(n: int, eps: Fraction) -> Fraction:
    """Closed-form numerator of the expectation gap; positive for n, ε >= 1."""
    e = Fraction(eps)
    return (
        16 * e ** 3 + 32 * e ** 2 * n + 68 * e ** 2 + 12 * e * n ** 2 + 120 * e * n + 108 * e
        - 9 * n ** 2 - 42 * n - 33
    )


def expectation_gap(n: int, eps: Fraction) -> Fraction:
    """
    Expected common-neighbourhood estimate minus (n+1) - 2ε, evaluated
    directly from the averaged expression for |V(H̄)| = 3(n+1)/2 - ε.
    """
    q = n + 1
    e = Fraction(eps)
    first = (Fraction(9, 4) * q * q - 3 * q * (1 + e) + (1 + e) ** 2) / (Fraction(9, 4) * q + e / 2)
    last = (3 * q + 1) / (Fraction(3, 4) * q + e / 2)
    return first + 5 - last - (q - 2 * e)


def _best_pair(rows: Tuple[int, ...], vertices: List[int], within: int) -> Tuple[int, Tuple[int, int]]:
    """Largest |N(x) ∩ N(y) ∩ within| over pairs, lexicographically least pair on ties."""
    best = -1
    pair = (vertices[0], vertices[1])
    for x, y in itertools.combinations(vertices, 2):
        size = popcount(rows[x] & rows[y] & within)
        if size > best:
            best = size
            pair = (x, y)
    return best, pair


def _strictly_above(best: int, d: int, size_a: int, size_b: int) -> bool:
    # best > d²/|B| - d/|A|, denominators cleared
    return best * size_a * size_b > d * d * size_a - d * size_b


class ScanTally:
    """
    Running counts of one scan.

    Plain and picklable so each generation subtree can hand one back to the
    parent process. Verdicts are only materialized when kept as samples.
    """

    def __init__(self):
        self.examined = 0
        self.hypotheses_met = 0
        self.conclusion_held = 0
        self.counterexamples = 0
        self.leading: List[LemmaVerdict] = []
        self.failures: List[LemmaVerdict] = []

    def record(self, met: bool, held: Optional[bool], make: Callable[[], LemmaVerdict]) -> None:
        self.examined += 1
        verdict = None
        if len(self.leading) < SAMPLE_LIMIT:
            verdict = make()
            self.leading.append(verdict)
        if not met:
            return
        self.hypotheses_met += 1
        if held:
            self.conclusion_held += 1
        elif held is False:
            self.counterexamples += 1
            if len(self.failures) < SAMPLE_LIMIT:
                self.failures.append(verdict if verdict is not None else make())

    def add(self, verdict: LemmaVerdict) -> None:
        self.record(verdict.hypotheses_met, verdict.conclusion_holds, lambda: verdict)

    def merge(self, other: 'ScanTally') -> 'ScanTally':
        self.examined += other.examined
        self.hypotheses_met += other.hypotheses_met
        self.conclusion_held += other.conclusion_held
        self.counterexamples += other.counterexamples
        self.leading = (self.leading + other.leading)[:SAMPLE_LIMIT]
        self.failures = (self.failures + other.failures)[:SAMPLE_LIMIT]
        return self

    def summary(self, lemma_id: str, parameters: Dict[str, Any]) -> ScanSummary:
        samples = self.leading if self.examined <= SAMPLE_LIMIT else self.failures
        return ScanSummary(
            lemma_id=lemma_id,
            parameters=parameters,
            examined=self.examined,
            hypotheses_met=self.hypotheses_met,
            conclusion_held=self.conclusion_held,
            counterexamples=self.counterexamples,
            samples=samples
        )


class LemmaService:
    """Single-graph lemma checks and the scans built on them."""

    def __init__(self, generation_service: Optional[GenerationService] = None, progress: Optional[bool] = None):
        """
        Initialize service.

        Args:
            generation_service: Generator and worker pool for exhaustive scans
            progress: Show a tqdm bar during random scans
        """
        self.generation_service = generation_service or GenerationService()
        self.progress = settings.progress if progress is None else progress

    # ------------------------------------------------------------------
    # Intersection lemma
    # ------------------------------------------------------------------

    @staticmethod
    def max_common_neighborhood(g: Graph, a: int, b: int, d: int) -> MomentReport:
        """
        Best common neighbourhood inside B over pairs of A, against the
        first-moment bound d²/|B| - d/|A|.

        A and B disjoint gives the bipartite form; A ⊆ B = V(g) the general
        one.

        Raises:
            ArgumentError: Sets outside the graph, d < 1, or A, B in neither form
            HypothesisNotMetError: |A| < 2, or a vertex of A with fewer than d
                neighbours in B
        """
        if (a | b) & ~g.vertex_mask:
            raise ArgumentError("A and B must be vertex sets of the graph")
        if d < 1:
            raise ArgumentError(f"d must be >= 1, got {d}")
        if not a & b:
            mode = 'bipartite'
        elif not a & ~b and b == g.vertex_mask:
            mode = 'general'
        else:
            raise ArgumentError("A and B must be disjoint, or A ⊆ B = V")

        size_a, size_b = popcount(a), popcount(b)
        if size_a < 2:
            raise HypothesisNotMetError(f"|A| = {size_a}, need at least 2", lemma_id='intersection-lemma')
        short = [x for x in iter_bits(a) if popcount(g.neighbors(x) & b) < d]
        if short:
            raise HypothesisNotMetError(
                f"Vertices {short} have fewer than {d} neighbours in B",
                lemma_id='intersection-lemma'
            )

        best, pair = _best_pair(g.rows, to_list(a), b)
        bound = Fraction(d * d, size_b) - Fraction(d, size_a)
        return MomentReport(
            mode=mode,
            d=d,
            size_a=size_a,
            size_b=size_b,
            bound=bound,
            best_pair=list(pair),
            best_intersection=best,
            holds=best > bound,
            boundary=d * size_a == size_b
        )

    @staticmethod
    def _intersection_instance(g: Graph, a: int, b: int, d: int) -> LemmaVerdict:
        report = LemmaService.max_common_neighborhood(g, a, b, d)
        diagnostics = {'a': to_list(a), 'b': to_list(b)}
        diagnostics.update(report.to_dict())
        return LemmaVerdict(
            lemma_id='intersection-lemma',
            hypotheses_met=True,
            conclusion_holds=report.holds,
            graph6=write_graph6(g),
            diagnostics=diagnostics
        )

    @staticmethod
    def general_instances(g: Graph, d: Optional[int] = None) -> Iterator[Tuple[int, int, int, int, Tuple[int, int]]]:
        """
        Every general-form instance of g: (A, |A|, d, best, pair) for each
        A ⊆ V with |A| >= 2 and each feasible d (only `d` when given).
        """
        rows = g.rows
        degrees = g.degrees()
        for a in range(1, 1 << g.order):
            size = popcount(a)
            if size < 2:
                continue
            vertices = to_list(a)
            lowest_degree = min(degrees[x] for x in vertices)
            if lowest_degree < 1:
                continue
            best, pair = _best_pair(rows, vertices, g.vertex_mask)
            choices = range(1, lowest_degree + 1) if d is None else ([d] if d <= lowest_degree else [])
            for value in choices:
                yield a, size, value, best, pair

    @staticmethod
    def check_intersection_lemma(g: Graph, d: Optional[int] = None) -> LemmaVerdict:
        """
        General form on one graph, over every A with |A| >= 2 and every
        feasible d.

        Raises:
            CapacityError: Above the subset enumeration cap
        """
        if g.order > INTERSECTION_ORDER_CAP:
            raise CapacityError(f"Intersection lemma enumerates subsets; limited to order {INTERSECTION_ORDER_CAP}")
        instances = 0
        violations = 0
        off_boundary = 0
        first: Optional[Dict[str, Any]] = None
        for a, size, value, best, _ in LemmaService.general_instances(g, d):
            instances += 1
            if _strictly_above(best, value, size, g.order):
                continue
            violations += 1
            if value * size != g.order:
                off_boundary += 1
            if first is None:
                first = LemmaService._intersection_instance(g, a, g.vertex_mask, value).diagnostics

        met = instances > 0
        return LemmaVerdict(
            lemma_id='intersection-lemma',
            hypotheses_met=met,
            conclusion_holds=(violations == 0) if met else None,
            graph6=write_graph6(g),
            diagnostics={
                'mode': 'general',
                'instances': instances,
                'violations': violations,
                'violations_off_boundary': off_boundary,
                'first_violation': first,
            }
        )

    @staticmethod
    def _record_intersection(g: Graph, params: LemmaParameters, tally: ScanTally) -> None:
        for a, size, value, best, _ in LemmaService.general_instances(g, params.d):
            tally.record(
                True,
                _strictly_above(best, value, size, g.order),
                partial(LemmaService._intersection_instance, g, a, g.vertex_mask, value)
            )

    def scan_intersection_bipartite(self, size_a: int, size_b: int, d: Optional[int] = None) -> ScanSummary:
        """
        Every bipartite instance with the given part sizes and every feasible d.

        A-side neighbourhoods are enumerated as multisets, since relabelling A
        changes neither the degrees nor the best intersection.
        """
        if size_a < 2 or size_b < 1:
            raise ArgumentError(f"Need |A| >= 2 and |B| >= 1, got {size_a} and {size_b}")
        if size_a + size_b > settings.search_order_cap:
            raise CapacityError(f"|A| + |B| exceeds the search cap of {settings.search_order_cap}")

        order = size_a + size_b
        a_mask = full_mask(size_a)
        b_mask = full_mask(order) & ~a_mask
        local_b = full_mask(size_b)
        tally = ScanTally()
        for rows in itertools.combinations_with_replacement(range(1, 1 << size_b), size_a):
            lowest_degree = min(popcount(row) for row in rows)
            best = max(popcount(x & y) for x, y in itertools.combinations(rows, 2))
            choices = range(1, lowest_degree + 1) if d is None else ([d] if d <= lowest_degree else [])
            for value in choices:
                tally.record(
                    True,
                    _strictly_above(best, value, size_a, size_b),
                    partial(self._bipartite_instance, rows, size_a, a_mask, b_mask, local_b, value)
                )
        summary = tally.summary('intersection-lemma', {
            'mode': 'exhaustive-bipartite', 'size_a': size_a, 'size_b': size_b, 'd': d, 'unit': 'instance'
        })
        logger.info(
            f"Bipartite intersection scan {size_a}x{size_b}: {summary.examined} instances, "
            f"{summary.counterexamples} violations"
        )
        return summary

    @staticmethod
    def _bipartite_instance(
        rows: Tuple[int, ...], size_a: int, a_mask: int, b_mask: int, local_b: int, d: int
    ) -> LemmaVerdict:
        edges = [(x, size_a + y) for x, row in enumerate(rows) for y in iter_bits(row & local_b)]
        g = Graph.from_edges(size_a + local_b.bit_length(), edges)
        return LemmaService._intersection_instance(g, a_mask, b_mask, d)

    # ------------------------------------------------------------------
    # Degree bounds at order 3n+4
    # ------------------------------------------------------------------

    @staticmethod
    def _require_order(g: Graph, n: int) -> None:
        if g.order != 3 * n + 4:
            raise ArgumentError(f"Expected a graph on 3n+4 = {3 * n + 4} vertices, got {g.order}")

    @staticmethod
    def check_delta_complement_bound(g: Graph, n: int, m: int) -> LemmaVerdict:
        """
        K_{2,n}-free with W_m-free complement implies Δ(Ḡ) <= 2n+2.

        Raises:
            ArgumentError: When g is not on 3n+4 vertices
        """
        LemmaService._require_order(g, n)
        complement = g.complement()
        k2n = DetectionService.find_k2n(g, n)
        wheel = DetectionService.find_wheel(complement, m) if not k2n.found else None
        met = not k2n.found and wheel is not None and not wheel.found
        top = complement.max_degree()
        return LemmaVerdict(
            lemma_id='delta-complement',
            hypotheses_met=met,
            conclusion_holds=(top <= 2 * n + 2) if met else None,
            asymptotic=True,
            graph6=write_graph6(g),
            diagnostics={
                'n': n,
                'm': m,
                'k2n_free': not k2n.found,
                'complement_wheel_free': None if wheel is None else not wheel.found,
                'max_complement_degree': top,
                'bound': 2 * n + 2,
            }
        )

    @staticmethod
    def check_min_degree_bound(g: Graph, n: int) -> LemmaVerdict:
        """
        K_{2,n}-free on 3n+4 vertices implies δ(G) < √3(n+1), compared as
        δ² < 3(n+1)².

        Raises:
            ArgumentError: When g is not on 3n+4 vertices
        """
        LemmaService._require_order(g, n)
        k2n = DetectionService.find_k2n(g, n)
        delta = g.min_degree()
        bound = 3 * (n + 1) ** 2
        met = not k2n.found
        return LemmaVerdict(
            lemma_id='min-degree-sqrt3',
            hypotheses_met=met,
            conclusion_holds=(delta * delta < bound) if met else None,
            graph6=write_graph6(g),
            diagnostics={
                'n': n,
                'min_degree': delta,
                'min_degree_squared': delta * delta,
                'bound_squared': bound,
                'k2n_pair': k2n.pair,
            }
        )

    # ------------------------------------------------------------------
    # Decompositions
    # ------------------------------------------------------------------

    @staticmethod
    def dense_null_decomposition(g: Graph, fraction: Fraction) -> DecompositionReport:
        """
        Split V into P = {x : deg(x) < |V|·fraction + 1} and Q = V - P.

        Components are those of g[Q].

        Raises:
            ArgumentError: For a fraction outside (0, 1)
        """
        fraction = Fraction(fraction)
        if not 0 < fraction < 1:
            raise ArgumentError(f"Fraction must lie strictly between 0 and 1, got {fraction}")
        standard = fraction in STANDARD_FRACTIONS
        if not standard:
            logger.warning(f"Fraction {_fraction_text(fraction)} is neither 1/10 nor 1/6")
        threshold = g.order * fraction + 1
        null_set = [x for x in range(g.order) if g.degree(x) < threshold]
        dense_mask = g.vertex_mask & ~from_iterable(null_set)
        return DecompositionReport(
            kind='dense-null',
            threshold_fraction=fraction,
            threshold=threshold,
            standard_fraction=standard,
            null_set=null_set,
            dense_set=to_list(dense_mask),
            components=[to_list(part) for part in components(g, dense_mask)]
        )

    @staticmethod
    def check_dense_null(g: Graph, fraction: Fraction) -> LemmaVerdict:
        """The decomposition partitions V and follows the strict threshold exactly."""
        report = LemmaService.dense_null_decomposition(g, fraction)
        threshold = report.threshold
        partition = sorted(report.null_set + report.dense_set) == list(range(g.order))
        exact = all(g.degree(x) < threshold for x in report.null_set) and all(
            g.degree(x) >= threshold for x in report.dense_set
        )
        return LemmaVerdict(
            lemma_id='dense-null',
            hypotheses_met=True,
            conclusion_holds=partition and exact,
            graph6=write_graph6(g),
            diagnostics=report.to_dict()
        )

    @staticmethod
    def _two_connected_cut(g: Graph, limit: int, k: Optional[int]) -> Optional[Tuple[List[int], List[int]]]:
        full = g.vertex_mask
        for size in range(limit + 1):
            for cut in itertools.combinations(range(g.order), size):
                rest = full & ~from_iterable(cut)
                if not rest:
                    continue
                parts = components(g, rest)
                if k is not None and not (len(parts) < k and size <= len(parts) - 1):
                    continue
                if all(is_two_connected(g, part) for part in parts):
                    return list(cut), parts
        return None

    @staticmethod
    def two_connected_decomposition(g: Graph, k: int) -> Optional[DecompositionReport]:
        """
        Least U (by size, then lexicographically) such that every component
        of g - U is 2-connected.

        Deletion sets meeting the star-cycle shape (s < k components and
        |U| <= s - 1) are preferred; only when none exists within the cut cap
        is the unconstrained minimum returned.

        Returns:
            The decomposition, or None when no U up to the cut cap works

        Raises:
            ArgumentError: Unless 2 <= k <= |V|
        """
        if not 2 <= k <= g.order:
            raise ArgumentError(f"k must satisfy 2 <= k <= |V| = {g.order}, got {k}")
        max_cut = settings.star_cycle_max_cut
        found = LemmaService._two_connected_cut(g, min(max_cut, k - 2, g.order), k)
        if found is None:
            found = LemmaService._two_connected_cut(g, min(max_cut, g.order), None)
        if found is None:
            return None
        cut, parts = found
        return DecompositionReport(
            kind='two-connected',
            cut_set=cut,
            components=[to_list(part) for part in parts]
        )

    @staticmethod
    def check_star_cycle(g: Graph, k: int) -> LemmaVerdict:
        """
        δ(G) >= |V|/k + k implies some U with |U| <= s - 1, s < k, leaves s
        vertex-disjoint 2-connected components.
        """
        report = LemmaService.two_connected_decomposition(g, k)
        delta = g.min_degree()
        met = k * delta >= g.order + k * k
        diagnostics: Dict[str, Any] = {'k': k, 'min_degree': delta, 'decomposition': None}
        if report is None:
            capped = k - 2 > settings.star_cycle_max_cut
            diagnostics['search_capped'] = capped
            holds: Optional[bool] = None if capped else False
        else:
            s = report.component_count
            diagnostics['decomposition'] = report.to_dict()
            diagnostics['component_count'] = s
            holds = s < k and len(report.cut_set) <= s - 1
        return LemmaVerdict(
            lemma_id='star-cycle',
            hypotheses_met=met,
            conclusion_holds=holds if met else None,
            graph6=write_graph6(g),
            diagnostics=diagnostics
        )

    # ------------------------------------------------------------------
    # Cycle lengths
    # ------------------------------------------------------------------

    @staticmethod
    def check_cycle_lemma_1(g: Graph, r: int, with_spectrum: bool = True) -> LemmaVerdict:
        """
        2-connected, non-bipartite, δ >= r and |V| >= 2r+1 imply ec >= 2r and
        oc >= 2r-1.

        With with_spectrum=False the conclusion comes from two targeted cycle
        searches and the spectrum is only computed for a failure.

        Raises:
            ArgumentError: For r < 3
            CapacityError: Above the spectrum order cap
        """
        if r < 3:
            raise ArgumentError(f"r must be >= 3, got {r}")
        if g.order > settings.spectrum_order_cap:
            raise CapacityError(f"Cycle lemma checks are limited to order {settings.spectrum_order_cap}")

        checks = {
            'order_at_least_2r_plus_1': g.order >= 2 * r + 1,
            'min_degree_at_least_r': g.order > 0 and g.min_degree() >= r,
        }
        checks['two_connected'] = all(checks.values()) and is_two_connected(g)
        checks['non_bipartite'] = all(checks.values()) and not is_bipartite(g)
        met = all(checks.values())
        diagnostics: Dict[str, Any] = {'r': r, 'hypotheses': checks}
        holds: Optional[bool] = None
        if met:
            if with_spectrum:
                spectrum = DetectionService.cycle_spectrum(g)
                holds = spectrum.ec >= 2 * r and spectrum.oc >= 2 * r - 1
            else:
                holds = DetectionService.has_cycle_at_least(g, 2 * r, 0) and DetectionService.has_cycle_at_least(
                    g, 2 * r - 1, 1
                )
                spectrum = DetectionService.cycle_spectrum(g) if not holds else None
            if spectrum is not None:
                diagnostics['spectrum'] = spectrum.to_dict()
        return LemmaVerdict(
            lemma_id='cycle-lemma-1',
            hypotheses_met=met,
            conclusion_holds=holds,
            graph6=write_graph6(g),
            diagnostics=diagnostics
        )

    # ------------------------------------------------------------------
    # Complement neighbourhood H̄ = Ḡ[N_Ḡ(v)]
    # ------------------------------------------------------------------

    @staticmethod
    def complement_neighbourhood(g: Graph, n: int, lemma_id: str) -> Tuple[int, List[int], Graph]:
        """
        Vertex v of largest complement degree (least index on ties) and the
        complement graph induced on its complement neighbourhood.

        Returns:
            (v, original labels of H̄'s vertices, H̄)

        Raises:
            ArgumentError: When g is not on 3n+4 vertices
            HypothesisNotMetError: When g contains K_{2,n}
        """
        LemmaService._require_order(g, n)
        k2n = DetectionService.find_k2n(g, n)
        if k2n.found:
            raise HypothesisNotMetError(f"Graph contains K_(2,{n}) on pair {k2n.pair}", lemma_id=lemma_id)
        complement = g.complement()
        hub = max(range(g.order), key=lambda v: (complement.degree(v), -v))
        nbhd = complement.neighbors(hub)
        return hub, to_list(nbhd), complement.induced(nbhd)

    @staticmethod
    def check_bipartition_cap(g: Graph, n: int) -> Dict[str, Any]:
        """Larger side of a 2-colouring of g against 3(n+1)/4 + 4."""
        certificate = bipartiteness(g)
        if not certificate.is_bipartite:
            return {'bipartite': False}
        larger = max(len(side) for side in certificate.sides)
        return {
            'bipartite': True,
            'larger_side': larger,
            'cap': _fraction_text(Fraction(3 * (n + 1), 4) + 4),
            'exceeds_cap': 4 * larger > 3 * (n + 1) + 16,
        }

    @staticmethod
    def neighborhood_nonbipartite_scan(g: Graph, n: int) -> LemmaVerdict:
        """
        Build H̄ for a K_{2,n}-free g on 3n+4 vertices, place it in a size
        regime and check that the revised neighbourhood H̄' is non-bipartite.

        H̄' drops the low-degree vertex when the dense/null split leaves
        exactly one. Outside the two asserted regimes nothing is claimed.

        Raises:
            ArgumentError: When g is not on 3n+4 vertices
            HypothesisNotMetError: When g contains K_{2,n}
        """
        hub, labels, hbar = LemmaService.complement_neighbourhood(g, n, 'nbd-nonbipartite')
        regime = neighborhood_regime(hbar.order, n)
        diagnostics: Dict[str, Any] = {
            'n': n,
            'hub': hub,
            'neighbourhood': labels,
            'size': hbar.order,
            'regime': regime,
        }
        if regime not in REGIME_FRACTION:
            logger.debug(f"H̄ of size {hbar.order} is in the {regime} regime for n={n}; nothing asserted")
            diagnostics['bipartiteness'] = _relabel_certificate(bipartiteness(hbar), labels).to_dict()
            return LemmaVerdict(
                lemma_id='nbd-nonbipartite',
                hypotheses_met=False,
                asymptotic=True,
                graph6=write_graph6(g),
                diagnostics=diagnostics
            )

        decomposition = LemmaService.dense_null_decomposition(hbar, REGIME_FRACTION[regime])
        kept = hbar.vertex_mask
        if len(decomposition.null_set) == 1:
            kept &= ~(1 << decomposition.null_set[0])
        revised = hbar.induced(kept)
        revised_labels = [labels[i] for i in iter_bits(kept)]
        certificate = bipartiteness(revised)
        blocks, articulation = biconnected_components(revised)
        kappa = connectivity(revised) if revised.order >= 2 else None

        diagnostics.update({
            'fraction': _fraction_text(REGIME_FRACTION[regime]),
            'null_set': [labels[i] for i in decomposition.null_set],
            'dense_set': [labels[i] for i in decomposition.dense_set],
            'revised_vertices': revised_labels,
            'bipartiteness': _relabel_certificate(certificate, revised_labels).to_dict(),
            'connectivity': kappa,
            'cut_vertex_case': kappa is not None and kappa <= 1,
            'blocks': [[revised_labels[i] for i in iter_bits(block)] for block in blocks],
            'articulation_points': [revised_labels[i] for i in iter_bits(articulation)],
        })
        if certificate.is_bipartite:
            diagnostics['side_cap'] = LemmaService.check_bipartition_cap(revised, n)
        return LemmaVerdict(
            lemma_id='nbd-nonbipartite',
            hypotheses_met=True,
            conclusion_holds=not certificate.is_bipartite,
            asymptotic=True,
            graph6=write_graph6(g),
            diagnostics=diagnostics
        )

    @staticmethod
    def check_almost_one_tenth(g: Graph, n: int) -> LemmaVerdict:
        """
        In the lower and upper regimes, at most one vertex of H̄ falls below
        the regime's degree threshold.
        """
        hub, labels, hbar = LemmaService.complement_neighbourhood(g, n, 'almost-one-tenth')
        regime = neighborhood_regime(hbar.order, n)
        diagnostics: Dict[str, Any] = {'n': n, 'hub': hub, 'size': hbar.order, 'regime': regime}
        if regime not in REGIME_FRACTION:
            return LemmaVerdict(
                lemma_id='almost-one-tenth',
                hypotheses_met=False,
                asymptotic=True,
                graph6=write_graph6(g),
                diagnostics=diagnostics
            )
        decomposition = LemmaService.dense_null_decomposition(hbar, REGIME_FRACTION[regime])
        diagnostics['fraction'] = _fraction_text(REGIME_FRACTION[regime])
        diagnostics['null_set'] = [labels[i] for i in decomposition.null_set]
        return LemmaVerdict(
            lemma_id='almost-one-tenth',
            hypotheses_met=True,
            conclusion_holds=len(decomposition.null_set) <= 1,
            asymptotic=True,
            graph6=write_graph6(g),
            diagnostics=diagnostics
        )

    # ------------------------------------------------------------------
    # Rational inequality
    # ------------------------------------------------------------------

    @staticmethod
    def check_expectation_claim(max_n: int, max_eps: int) -> LemmaVerdict:
        """
        Exact check, for n in 1..max_n and ε in 1, 3/2, ..., max_eps, that the
        expectation gap equals P(n,ε)/((2ε+3n+3)(2ε+9n+9)) with
        P >= 3n² + 110n + 159 > 0.
        """
        if max_n < 1 or max_eps < 1:
            raise ArgumentError(f"Grid bounds must be >= 1, got n <= {max_n}, eps <= {max_eps}")
        checked = 0
        failures: List[Dict[str, Any]] = []
        tightest: Optional[Tuple[Fraction, int, Fraction]] = None
        for n in range(1, max_n + 1):
            for twice_eps in range(2, 2 * max_eps + 1):
                eps = Fraction(twice_eps, 2)
                gap = expectation_gap(n, eps)
                numerator = expectation_numerator(n, eps)
                denominator = (2 * eps + 3 * n + 3) * (2 * eps + 9 * n + 9)
                ok = (
                    gap == numerator / denominator
                    and numerator >= 3 * n * n + 110 * n + 159
                    and gap > 0
                )
                checked += 1
                if tightest is None or gap < tightest[0]:
                    tightest = (gap, n, eps)
                if not ok and len(failures) < SAMPLE_LIMIT:
                    failures.append({'n': n, 'eps': _fraction_text(eps), 'gap': _fraction_text(gap)})
        gap, n_at, eps_at = tightest
        return LemmaVerdict(
            lemma_id='expectation-claim',
            hypotheses_met=True,
            conclusion_holds=not failures,
            graph6=None,
            diagnostics={
                'max_n': max_n,
                'max_eps': max_eps,
                'eps_step': '1/2',
                'checked': checked,
                'failures': failures,
                'smallest_gap': {'n': n_at, 'eps': _fraction_text(eps_at), 'gap': _fraction_text(gap)},
            }
        )

    # ------------------------------------------------------------------
    # Registry-driven checks and scans
    # ------------------------------------------------------------------

    @staticmethod
    def definition(lemma_id: str) -> 'LemmaDefinition':
        """
        Raises:
            UnknownLemmaError: For an id not in the registry
        """
        found = LEMMAS.get(lemma_id)
        if found is None:
            raise UnknownLemmaError(lemma_id, LEMMA_IDS)
        return found

    @staticmethod
    def check(lemma_id: str, g: Graph, params: LemmaParameters, detailed: bool = True) -> LemmaVerdict:
        """
        Run one lemma on one graph. Unmet hypotheses come back as a verdict
        rather than an exception.
        """
        definition = LemmaService.definition(lemma_id)
        if definition.check is None:
            raise ArgumentError(f"Lemma '{lemma_id}' takes no graph input")
        params.require(*definition.required)
        return _evaluate(definition, g, params, detailed)

    def run_standalone(self, lemma_id: str, params: LemmaParameters) -> ScanSummary:
        """Lemmas checked without graph input (a parameter grid or a construction)."""
        definition = self.definition(lemma_id)
        if definition.standalone is None:
            raise ArgumentError(f"Lemma '{lemma_id}' needs graph input: a corpus or a generator flag")
        params.require(*definition.required)
        tally = ScanTally()
        tally.add(definition.standalone(params))
        return tally.summary(lemma_id, {'mode': 'standalone', **params.to_dict()})

    def scan_graphs(self, lemma_id: str, graphs: Iterable[Graph], params: LemmaParameters) -> ScanSummary:
        """Run a lemma over a corpus."""
        definition = self._graph_definition(lemma_id, params)
        tally = ScanTally()
        for g in graphs:
            _record(definition, g, params, tally)
        summary = tally.summary(lemma_id, {'mode': 'corpus', **params.to_dict()})
        self._log_summary(summary)
        return summary

    def scan_exhaustive(
        self, lemma_id: str, params: LemmaParameters, max_order: Optional[int] = None
    ) -> ScanSummary:
        """
        Run a lemma over every graph (up to isomorphism) of each order it
        applies to, up to max_order. Lemmas pinned to order 3n+4 scan that
        order only. Hypothesis filters that are closed under vertex deletion
        prune generation, so `examined` counts surviving graphs.

        Raises:
            ArgumentError: For a max_order that contradicts a pinned order
        """
        definition = self._graph_definition(lemma_id, params)
        if definition.pinned_order:
            pinned = 3 * params.n + 4
            if max_order is not None and max_order != pinned:
                raise ArgumentError(f"Lemma '{lemma_id}' only applies at order 3n+4 = {pinned}, got {max_order}")
            orders = [pinned]
        else:
            if max_order is None:
                raise ArgumentError(f"Lemma '{lemma_id}' needs a maximum order for an exhaustive scan")
            orders = list(range(definition.min_order(params), max_order + 1))

        tally = ScanTally()
        filters = {}
        for order in orders:
            graph_filter = definition.scan_filter(params, order)
            filters[order] = repr(graph_filter) if graph_filter is not None else None
            task = partial(_scan_task, lemma_id, params)
            for part in self.generation_service.map_subtrees(order, task, graph_filter):
                tally.merge(part)
            logger.info(f"Order {order}: {tally.examined} {lemma_id} instances so far")
        summary = tally.summary(lemma_id, {
            'mode': 'exhaustive', 'orders': orders, 'filters': filters, **params.to_dict()
        })
        self._log_summary(summary)
        return summary

    def scan_random(
        self, lemma_id: str, params: LemmaParameters, count: int, seed: int, order: Optional[int] = None
    ) -> ScanSummary:
        """
        Run a lemma over `count` seeded random graphs. Lemmas pinned to
        order 3n+4 draw random K_{2,n}-free graphs; the others draw G(order, p).
        """
        definition = self._graph_definition(lemma_id, params)
        if count < 1:
            raise ArgumentError(f"Random scan needs a positive count, got {count}")
        forbidden = None
        if definition.pinned_order:
            order = 3 * params.n + 4
            forbidden = _k2n(params.n)
        elif order is None:
            raise ArgumentError(f"Lemma '{lemma_id}' needs --order for a random scan")

        rng = np.random.default_rng(seed)
        tally = ScanTally()
        for _ in tqdm(range(count), desc=lemma_id, disable=not self.progress):
            g = random_pattern_free_graph(order, forbidden, rng) if forbidden else random_graph(order, rng)
            _record(definition, g, params, tally)
        summary = tally.summary(lemma_id, {
            'mode': 'random', 'count': count, 'order': order, 'seed': seed, **params.to_dict()
        })
        self._log_summary(summary)
        return summary

    def _graph_definition(self, lemma_id: str, params: LemmaParameters) -> 'LemmaDefinition':
        definition = self.definition(lemma_id)
        if definition.check is None:
            raise ArgumentError(f"Lemma '{lemma_id}' takes no graph input")
        params.require(*definition.required)
        return definition

    @staticmethod
    def _log_summary(summary: ScanSummary) -> None:
        logger.info(
            f"{summary.lemma_id}: {summary.examined} examined, {summary.hypotheses_met} met hypotheses, "
            f"{summary.conclusion_held} held, {summary.counterexamples} counterexamples"
        )


def _relabel_certificate(certificate: BipartitenessCertificate, labels: List[int]) -> BipartitenessCertificate:
    if certificate.is_bipartite:
        left, right = certificate.sides
        return BipartitenessCertificate(
            verdict=certificate.verdict,
            sides=([labels[v] for v in left], [labels[v] for v in right])
        )
    return BipartitenessCertificate(
        verdict=certificate.verdict,
        odd_cycle=[labels[v] for v in certificate.odd_cycle]
    )


@dataclass(frozen=True)
class LemmaDefinition:
    """Registry entry: how to check a lemma and how to scan for it."""

    lemma_id: str
    title: str
    required: Tuple[str, ...] = ()
    asymptotic: bool = False
    pinned_order: bool = False
    check: Optional[Callable[[Graph, LemmaParameters, bool], LemmaVerdict]] = None
    standalone: Optional[Callable[[LemmaParameters], LemmaVerdict]] = None
    record: Optional[Callable[[Graph, LemmaParameters, ScanTally], None]] = None
    min_order: Callable[[LemmaParameters], int] = lambda params: 1
    scan_filter: Callable[[LemmaParameters, int], Optional[HereditaryFilter]] = lambda params, order: None


def _evaluate(definition: LemmaDefinition, g: Graph, params: LemmaParameters, detailed: bool) -> LemmaVerdict:
    try:
        return definition.check(g, params, detailed)
    except HypothesisNotMetError as e:
        return LemmaVerdict(
            lemma_id=definition.lemma_id,
            hypotheses_met=False,
            asymptotic=definition.asymptotic,
            graph6=write_graph6(g),
            diagnostics={'reason': e.detail}
        )


def _record(definition: LemmaDefinition, g: Graph, params: LemmaParameters, tally: ScanTally) -> None:
    if definition.record is not None:
        definition.record(g, params, tally)
    else:
        tally.add(_evaluate(definition, g, params, detailed=False))


def _scan_task(lemma_id: str, params: LemmaParameters, stream: Iterator[Graph]) -> ScanTally:
    definition = LEMMAS[lemma_id]
    tally = ScanTally()
    for g in stream:
        _record(definition, g, params, tally)
    return tally


def _min_degree_filter(params: LemmaParameters, order: int) -> Optional[HereditaryFilter]:
    # n = 1 is small enough to scan every graph of order 7
    if params.n == 1:
        return None
    return HereditaryFilter(
        forbidden=_k2n(params.n),
        min_degree=_min_degree_floor(params.n),
        target_order=3 * params.n + 4
    )


LEMMAS: Dict[str, LemmaDefinition] = {
    definition.lemma_id: definition
    for definition in (
        LemmaDefinition(
            lemma_id='intersection-lemma',
            title="Two vertices of A share more than d²/|B| - d/|A| neighbours in B",
            check=lambda g, params, detailed: LemmaService.check_intersection_lemma(g, params.d),
            record=LemmaService._record_intersection,
            min_order=lambda params: 2,
        ),
        LemmaDefinition(
            lemma_id='cycle-lemma-1',
            title="2-connected non-bipartite, δ >= r, |V| >= 2r+1: ec >= 2r and oc >= 2r-1",
            check=lambda g, params, detailed: LemmaService.check_cycle_lemma_1(g, params.r, detailed),
            min_order=lambda params: 2 * params.r + 1,
            scan_filter=lambda params, order: HereditaryFilter(min_degree=params.r, target_order=order),
        ),
        LemmaDefinition(
            lemma_id='star-cycle',
            title="δ >= |V|/k + k: deleting |U| <= s-1 vertices leaves s < k 2-connected parts",
            check=lambda g, params, detailed: LemmaService.check_star_cycle(g, params.k),
            min_order=lambda params: params.k,
            scan_filter=lambda params, order: HereditaryFilter(
                min_degree=-(-(order + params.k ** 2) // params.k), target_order=order
            ),
        ),
        LemmaDefinition(
            lemma_id='delta-complement',
            title="K_{2,n}-free, W_m-free complement, 3n+4 vertices: Δ(Ḡ) <= 2n+2",
            required=('n', 'm'),
            asymptotic=True,
            pinned_order=True,
            check=lambda g, params, detailed: LemmaService.check_delta_complement_bound(g, params.n, params.m),
            scan_filter=lambda params, order: HereditaryFilter(
                forbidden=_k2n(params.n),
                complement_forbidden=PatternSpec(kind=PatternKind.WHEEL, parameter=params.m)
            ),
        ),
        LemmaDefinition(
            lemma_id='min-degree-sqrt3',
            title="K_{2,n}-free on 3n+4 vertices: δ < √3(n+1)",
            required=('n',),
            pinned_order=True,
            check=lambda g, params, detailed: LemmaService.check_min_degree_bound(g, params.n),
            scan_filter=_min_degree_filter,
        ),
        LemmaDefinition(
            lemma_id='dense-null',
            title="Dense/null split is a partition by the strict degree threshold",
            check=lambda g, params, detailed: LemmaService.check_dense_null(g, params.fraction),
        ),
        LemmaDefinition(
            lemma_id='nbd-nonbipartite',
            title="In-regime complement neighbourhood H̄' is non-bipartite",
            required=('n',),
            asymptotic=True,
            pinned_order=True,
            check=lambda g, params, detailed: LemmaService.neighborhood_nonbipartite_scan(g, params.n),
            scan_filter=lambda params, order: HereditaryFilter(forbidden=_k2n(params.n)),
        ),
        LemmaDefinition(
            lemma_id='expectation-claim',
            title="Expectation gap equals its closed form and is positive",
            required=('n',),
            standalone=lambda params: LemmaService.check_expectation_claim(params.n, params.max_eps),
        ),
        LemmaDefinition(
            lemma_id='almost-one-tenth',
            title="In-regime H̄ has at most one vertex below the degree threshold",
            required=('n',),
            asymptotic=True,
            pinned_order=True,
            check=lambda g, params, detailed: LemmaService.check_almost_one_tenth(g, params.n),
            scan_filter=lambda params, order: HereditaryFilter(forbidden=_k2n(params.n)),
        ),
        LemmaDefinition(
            lemma_id='lower-bound-witness',
            title="3K_{n+1} is K_{2,n}-free with a W_m-free complement",
            required=('n', 'm'),
            standalone=lambda params: verify_lower_bound_witness(params.n, params.m),
        ),
    )
}

LEMMA_IDS: List[str] = list(LEMMAS)

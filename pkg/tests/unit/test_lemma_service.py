"""
Unit tests for LemmaService: single-graph checks, the rational inequality
and the scans built on them.
"""

import logging
from fractions import Fraction

import networkx as nx
import pytest

from src.domain.graph import Graph
from src.domain.patterns import PatternSpec
from src.domain.reports import LemmaParameters
from src.exceptions import ArgumentError, CapacityError, HypothesisNotMetError, UnknownLemmaError
from src.services.construction_service import ConstructionService
from src.services.generation_service import GenerationService
from src.services.lemma_service import (
    LEMMA_IDS,
    SAMPLE_LIMIT,
    LemmaService,
    ScanTally,
    expectation_gap,
    expectation_numerator,
    neighborhood_regime,
)
from src.utils.bitsets import from_iterable


@pytest.fixture
def service():
    return LemmaService(GenerationService(jobs=1), progress=False)


@pytest.fixture
def matching():
    """Perfect matching 4K2 with pairs (i, i+4)."""
    return Graph.from_edges(8, [(i, i + 4) for i in range(4)])


@pytest.fixture
def petersen():
    return Graph.from_networkx(nx.petersen_graph())


@pytest.fixture
def triangles_plus_vertex():
    """3K3 plus an isolated vertex: order 10, K_{2,2}-free."""
    return ConstructionService.lower_bound_witness(2).add_vertex(0)


class TestIntersectionLemma:
    """Tests for the common-neighbourhood bound in both forms."""

    def test_bipartite_matching_sits_on_the_boundary(self, matching):
        report = LemmaService.max_common_neighborhood(matching, 0b00001111, 0b11110000, 1)

        assert report.mode == "bipartite"
        assert report.bound == 0
        assert report.best_intersection == 0
        assert not report.holds
        assert report.boundary

    def test_general_form_on_complete_graph(self):
        k4 = Graph.complete(4)
        report = LemmaService.max_common_neighborhood(k4, 0b0011, 0b1111, 3)

        assert report.mode == "general"
        assert report.bound == Fraction(3, 4)
        assert report.best_pair == [0, 1]
        assert report.best_intersection == 2
        assert report.holds

    def test_degree_hypothesis(self, matching):
        with pytest.raises(HypothesisNotMetError):
            LemmaService.max_common_neighborhood(matching, 0b00001111, 0b11110000, 2)

    def test_sets_must_be_disjoint_or_nested(self, matching):
        with pytest.raises(ArgumentError):
            LemmaService.max_common_neighborhood(matching, 0b00000011, 0b00000110, 1)

    def test_general_check_on_matching(self, matching):
        """Only A = V with d = 1 fails, and it is the boundary case."""
        verdict = LemmaService.check_intersection_lemma(matching)

        assert verdict.hypotheses_met
        assert verdict.conclusion_holds is False
        assert verdict.diagnostics['instances'] == 247
        assert verdict.diagnostics['violations'] == 1
        assert verdict.diagnostics['violations_off_boundary'] == 0
        assert verdict.diagnostics['first_violation']['boundary'] is True

    def test_general_check_on_complete_graph(self):
        verdict = LemmaService.check_intersection_lemma(Graph.complete(4))

        assert verdict.conclusion_holds is True
        assert verdict.diagnostics['violations'] == 0

    def test_general_check_capacity(self):
        with pytest.raises(CapacityError):
            LemmaService.check_intersection_lemma(Graph.empty(13))

    def test_exhaustive_bipartite_4x4(self, service):
        """The perfect matching at d = 1 is the single failing instance."""
        summary = service.scan_intersection_bipartite(4, 4)

        assert summary.counterexamples == 1
        assert len(summary.samples) == 1
        sample = summary.samples[0]
        assert sample.diagnostics['boundary'] is True
        assert sample.diagnostics['d'] == 1
        assert sample.diagnostics['best_intersection'] == 0

    def test_exhaustive_bipartite_3x5_holds(self, service):
        summary = service.scan_intersection_bipartite(3, 5)

        assert summary.examined > 0
        assert summary.counterexamples == 0
        assert summary.conclusion_held == summary.examined

    def test_exhaustive_bipartite_fixed_d(self, service):
        summary = service.scan_intersection_bipartite(4, 4, d=2)

        assert summary.counterexamples == 0
        assert summary.parameters['d'] == 2


class TestDegreeBounds:
    """Tests for the checks pinned to order 3n+4."""

    def test_min_degree_on_petersen(self, petersen):
        verdict = LemmaService.check_min_degree_bound(petersen, 2)

        assert verdict.hypotheses_met
        assert verdict.conclusion_holds
        assert verdict.diagnostics['min_degree_squared'] == 9
        assert verdict.diagnostics['bound_squared'] == 27

    def test_min_degree_needs_k2n_free(self):
        verdict = LemmaService.check_min_degree_bound(Graph.complete(10), 2)

        assert not verdict.hypotheses_met
        assert verdict.conclusion_holds is None
        assert verdict.diagnostics['k2n_pair'] == [0, 1]

    def test_wrong_order_rejected(self):
        with pytest.raises(ArgumentError):
            LemmaService.check_min_degree_bound(ConstructionService.lower_bound_witness(2), 2)

    @pytest.mark.parametrize("m", [5, 7, 9])
    def test_delta_complement_needs_wheel_free_complement(self, triangles_plus_vertex, m):
        """The isolated vertex is a complement hub over K_{3,3,3}."""
        verdict = LemmaService.check_delta_complement_bound(triangles_plus_vertex, 2, m)

        assert not verdict.hypotheses_met
        assert verdict.asymptotic
        assert verdict.diagnostics['k2n_free'] is True
        assert verdict.diagnostics['complement_wheel_free'] is False
        assert verdict.diagnostics['max_complement_degree'] == 9


class TestDecompositions:
    """Tests for the dense/null split and the 2-connected decomposition."""

    def test_dense_null_on_path(self):
        p10 = ConstructionService.path(10)
        report = LemmaService.dense_null_decomposition(p10, Fraction(1, 10))

        assert report.threshold == 2
        assert report.null_set == [0, 9]
        assert report.dense_set == list(range(1, 9))
        assert report.components == [list(range(1, 9))]
        assert report.standard_fraction

    def test_one_sixth_empties_the_dense_side(self):
        report = LemmaService.dense_null_decomposition(ConstructionService.path(10), Fraction(1, 6))

        assert report.threshold == Fraction(8, 3)
        assert report.null_set == list(range(10))
        assert report.components == []

    def test_non_standard_fraction_warns(self, caplog):
        with caplog.at_level(logging.WARNING):
            report = LemmaService.dense_null_decomposition(Graph.complete(4), Fraction(1, 4))

        assert not report.standard_fraction
        assert "neither 1/10 nor 1/6" in caplog.text

    def test_fraction_out_of_range(self):
        with pytest.raises(ArgumentError):
            LemmaService.dense_null_decomposition(Graph.complete(4), Fraction(1))

    def test_dense_null_check_holds(self, petersen):
        assert LemmaService.check_dense_null(petersen, Fraction(1, 6)).conclusion_holds

    def test_complete_graph_needs_no_cut(self):
        verdict = LemmaService.check_star_cycle(Graph.complete(6), 2)

        assert verdict.hypotheses_met
        assert verdict.conclusion_holds
        assert verdict.diagnostics['component_count'] == 1
        assert verdict.diagnostics['decomposition']['cut_set'] == []

    def test_disjoint_cliques_split_without_cut(self):
        report = LemmaService.two_connected_decomposition(ConstructionService.disjoint_cliques(2, 4), 3)

        assert report.cut_set == []
        assert report.components == [[0, 1, 2, 3], [4, 5, 6, 7]]

    def test_pendant_vertex_is_cut(self):
        g = Graph.complete(5).add_vertex(0b00001)
        report = LemmaService.two_connected_decomposition(g, 2)

        assert report.cut_set == [5]
        assert report.components == [[0, 1, 2, 3, 4]]

    def test_star_cycle_hypothesis_fails_for_low_degree(self):
        verdict = LemmaService.check_star_cycle(ConstructionService.disjoint_cliques(2, 4), 3)

        assert not verdict.hypotheses_met
        assert verdict.conclusion_holds is None

    def test_k_out_of_range(self):
        with pytest.raises(ArgumentError):
            LemmaService.two_connected_decomposition(Graph.complete(4), 1)


class TestCycleLemma:
    """Tests for the long even and odd cycle lemma."""

    def test_wheel_meets_and_holds(self):
        w6 = ConstructionService.realize(PatternSpec.parse("wheel:6"))
        verdict = LemmaService.check_cycle_lemma_1(w6, 3)

        assert verdict.hypotheses_met
        assert verdict.conclusion_holds
        assert verdict.diagnostics['spectrum']['lengths'] == [3, 4, 5, 6, 7]

    def test_targeted_search_skips_spectrum(self):
        verdict = LemmaService.check_cycle_lemma_1(Graph.complete(7), 3, with_spectrum=False)

        assert verdict.conclusion_holds
        assert 'spectrum' not in verdict.diagnostics

    def test_bipartite_graph_not_covered(self):
        k34 = ConstructionService.complete_multipartite([3, 4])
        verdict = LemmaService.check_cycle_lemma_1(k34, 3)

        assert not verdict.hypotheses_met
        assert verdict.diagnostics['hypotheses']['two_connected']
        assert not verdict.diagnostics['hypotheses']['non_bipartite']

    def test_invalid_r_and_capacity(self):
        with pytest.raises(ArgumentError):
            LemmaService.check_cycle_lemma_1(Graph.complete(7), 2)
        with pytest.raises(CapacityError):
            LemmaService.check_cycle_lemma_1(Graph.complete(17), 3)


class TestComplementNeighbourhood:
    """Tests for the H̄ regime checks."""

    @pytest.mark.parametrize("size,expected", [
        (3, 'below'), (4, 'between'), (5, 'upper'), (6, 'upper'), (7, 'above'),
    ])
    def test_regimes_for_n_2(self, size, expected):
        assert neighborhood_regime(size, 2) == expected

    @pytest.mark.parametrize("size,expected", [
        (12, 'below'), (13, 'lower'), (14, 'lower'), (15, 'upper'), (20, 'upper'), (21, 'above'),
    ])
    def test_regimes_for_n_9(self, size, expected):
        assert neighborhood_regime(size, 9) == expected

    def test_isolated_vertex_hub_is_above_regime(self, triangles_plus_vertex):
        """H̄ is K_{3,3,3}: too large for either asserted regime."""
        verdict = LemmaService.neighborhood_nonbipartite_scan(triangles_plus_vertex, 2)

        assert not verdict.hypotheses_met
        assert verdict.conclusion_holds is None
        assert verdict.diagnostics['hub'] == 9
        assert verdict.diagnostics['size'] == 9
        assert verdict.diagnostics['regime'] == 'above'
        assert verdict.diagnostics['bipartiteness']['verdict'] == 'non-bipartite'

    def test_petersen_neighbourhood_is_a_prism(self, petersen):
        verdict = LemmaService.neighborhood_nonbipartite_scan(petersen, 2)

        assert verdict.hypotheses_met
        assert verdict.conclusion_holds
        assert verdict.diagnostics['hub'] == 0
        assert verdict.diagnostics['neighbourhood'] == [2, 3, 6, 7, 8, 9]
        assert verdict.diagnostics['regime'] == 'upper'
        assert verdict.diagnostics['fraction'] == '1/6'
        assert verdict.diagnostics['null_set'] == []
        assert verdict.diagnostics['connectivity'] == 3
        assert not verdict.diagnostics['cut_vertex_case']
        assert 'side_cap' not in verdict.diagnostics

    def test_almost_one_tenth_on_petersen(self, petersen):
        verdict = LemmaService.check_almost_one_tenth(petersen, 2)

        assert verdict.hypotheses_met
        assert verdict.conclusion_holds
        assert verdict.diagnostics['null_set'] == []

    def test_k2n_hypothesis_raises(self):
        with pytest.raises(HypothesisNotMetError) as exc_info:
            LemmaService.neighborhood_nonbipartite_scan(Graph.complete(10), 2)

        assert exc_info.value.lemma_id == 'nbd-nonbipartite'

    def test_bipartition_cap_on_large_star(self):
        star = ConstructionService.realize(PatternSpec.parse("star:20"))
        result = LemmaService.check_bipartition_cap(star, 2)

        assert result['bipartite']
        assert result['larger_side'] == 20
        assert result['cap'] == '25/4'
        assert result['exceeds_cap']

    def test_bipartition_cap_on_odd_cycle(self):
        assert LemmaService.check_bipartition_cap(ConstructionService.cycle(5), 2) == {'bipartite': False}


class TestExpectationClaim:
    """Tests for the exact rational inequality."""

    def test_known_values(self):
        assert expectation_gap(1, Fraction(1)) == Fraction(17, 10)
        assert expectation_gap(2, Fraction(1)) == Fraction(391, 319)

    def test_closed_form(self):
        for n in range(1, 6):
            for eps in (Fraction(1), Fraction(3, 2), Fraction(7)):
                denominator = (2 * eps + 3 * n + 3) * (2 * eps + 9 * n + 9)
                assert expectation_gap(n, eps) == expectation_numerator(n, eps) / denominator

    def test_numerator_floor_is_tight_at_eps_one(self):
        for n in range(1, 10):
            assert expectation_numerator(n, Fraction(1)) == 3 * n * n + 110 * n + 159

    def test_grid_check(self):
        verdict = LemmaService.check_expectation_claim(10, 5)

        assert verdict.conclusion_holds
        assert verdict.diagnostics['checked'] == 90
        assert verdict.diagnostics['failures'] == []

    def test_invalid_grid(self):
        with pytest.raises(ArgumentError):
            LemmaService.check_expectation_claim(0, 5)


class TestScanTally:
    """Tests for sample selection in scan summaries."""

    def test_small_scans_keep_every_verdict(self, service):
        summary = service.scan_graphs('dense-null', [Graph.complete(3), Graph.empty(2)], LemmaParameters())

        assert summary.examined == 2
        assert len(summary.samples) == 2

    def test_large_scans_keep_failures_only(self):
        tally = ScanTally()
        verdict_ok = LemmaService.check_dense_null(Graph.complete(3), Fraction(1, 10))
        for _ in range(SAMPLE_LIMIT + 5):
            tally.add(verdict_ok)

        summary = tally.summary('dense-null', {})
        assert summary.examined == SAMPLE_LIMIT + 5
        assert summary.samples == []

    def test_merge(self):
        left, right = ScanTally(), ScanTally()
        verdict = LemmaService.check_dense_null(Graph.complete(3), Fraction(1, 10))
        left.add(verdict)
        right.add(verdict)

        merged = left.merge(right)
        assert merged.examined == 2
        assert merged.conclusion_held == 2


class TestRegistryAndScans:
    """Tests for lemma lookup and the scan drivers."""

    def test_ids(self):
        assert len(LEMMA_IDS) == 10
        assert 'intersection-lemma' in LEMMA_IDS
        assert 'lower-bound-witness' in LEMMA_IDS

    def test_unknown_id(self):
        with pytest.raises(UnknownLemmaError) as exc_info:
            LemmaService.definition('no-such-lemma')

        assert 'cycle-lemma-1' in exc_info.value.valid_ids

    def test_missing_parameter(self, petersen):
        with pytest.raises(ArgumentError):
            LemmaService.check('min-degree-sqrt3', petersen, LemmaParameters())

    def test_check_turns_unmet_hypotheses_into_verdict(self):
        verdict = LemmaService.check('nbd-nonbipartite', Graph.complete(10), LemmaParameters(n=2))

        assert not verdict.hypotheses_met
        assert 'K_(2,2)' in verdict.diagnostics['reason']

    def test_standalone_lemmas(self, service):
        claim = service.run_standalone('expectation-claim', LemmaParameters(n=5, max_eps=4))
        witness = service.run_standalone('lower-bound-witness', LemmaParameters(n=3, m=5))

        assert claim.conclusion_held == 1
        assert witness.conclusion_held == 1
        assert witness.counterexamples == 0

    def test_standalone_lemma_takes_no_graph(self, service):
        with pytest.raises(ArgumentError):
            service.scan_graphs('expectation-claim', [Graph.complete(3)], LemmaParameters(n=2))

    def test_corpus_scan_counts_instances(self, service, matching):
        summary = service.scan_graphs('intersection-lemma', [matching], LemmaParameters())

        assert summary.examined == 247
        assert summary.counterexamples == 1

    def test_exhaustive_min_degree_n_1(self, service):
        """Every graph on 7 vertices; only matchings avoid K_{2,1}."""
        summary = service.scan_exhaustive('min-degree-sqrt3', LemmaParameters(n=1))

        assert summary.parameters['orders'] == [7]
        assert summary.examined == 1044
        assert summary.hypotheses_met == 4
        assert summary.counterexamples == 0

    def test_exhaustive_pinned_order_mismatch(self, service):
        with pytest.raises(ArgumentError):
            service.scan_exhaustive('min-degree-sqrt3', LemmaParameters(n=1), max_order=8)

    def test_exhaustive_cycle_lemma(self, service):
        summary = service.scan_exhaustive('cycle-lemma-1', LemmaParameters(r=3), max_order=7)

        assert summary.parameters['orders'] == [7]
        assert summary.hypotheses_met > 0
        assert summary.counterexamples == 0

    def test_random_scan_is_seeded(self, service):
        params = LemmaParameters(fraction=Fraction(1, 6))
        first = service.scan_random('dense-null', params, count=5, seed=1, order=12)
        second = service.scan_random('dense-null', params, count=5, seed=1, order=12)

        assert first.examined == 5
        assert first.conclusion_held == 5
        assert [s.graph6 for s in first.samples] == [s.graph6 for s in second.samples]

    def test_random_pinned_scan_draws_k2n_free_graphs(self, service):
        summary = service.scan_random('min-degree-sqrt3', LemmaParameters(n=2), count=3, seed=4)

        assert summary.parameters['order'] == 10
        assert summary.hypotheses_met == 3
        assert summary.counterexamples == 0

    def test_random_scan_needs_order(self, service):
        with pytest.raises(ArgumentError):
            service.scan_random('dense-null', LemmaParameters(), count=2, seed=0)

    @pytest.mark.parametrize("lemma_id,params,max_order", [
        ('intersection-lemma', LemmaParameters(), 4),
        ('cycle-lemma-1', LemmaParameters(r=3), 7),
        ('star-cycle', LemmaParameters(k=2), 6),
        ('min-degree-sqrt3', LemmaParameters(n=1), None),
        ('dense-null', LemmaParameters(), 4),
        ('nbd-nonbipartite', LemmaParameters(n=1), None),
        ('almost-one-tenth', LemmaParameters(n=1), None),
    ])
    def test_exhaustive_scans_reach_their_class(self, service, lemma_id, params, max_order):
        summary = service.scan_exhaustive(lemma_id, params, max_order=max_order)

        assert summary.examined > 0

    def test_exhaustive_scan_over_matchings(self, service):
        """K_{2,1}-free graphs on 7 vertices are the four matchings."""
        summary = service.scan_exhaustive('nbd-nonbipartite', LemmaParameters(n=1))

        assert summary.examined == 4

    def test_exhaustive_delta_complement_class_is_empty(self, service):
        """Every matching on 7 vertices has 4 independent vertices, so R(P_3, K_4) = 7 leaves nothing."""
        summary = service.scan_exhaustive('delta-complement', LemmaParameters(n=1, m=3))

        assert summary.examined == 0
        assert summary.counterexamples == 0


class TestExhaustiveSweeps:
    """Long exhaustive runs of the lemma checks at desk scale."""

    # (|A|, |B|) -> partitions of B into |A| blocks of size d = |B|/|A|
    BOUNDARY_PARTITIONS = {(2, 2): 1, (2, 4): 3, (3, 3): 1, (4, 4): 1, (5, 5): 1}

    @pytest.mark.slow
    def test_bipartite_sweep_fails_only_on_partitions(self, service):
        for size_a in range(2, 6):
            for size_b in range(1, 6):
                summary = service.scan_intersection_bipartite(size_a, size_b)

                assert summary.examined > 0
                assert summary.counterexamples == self.BOUNDARY_PARTITIONS.get((size_a, size_b), 0)

    @pytest.mark.slow
    def test_general_form_fails_only_on_boundary(self):
        generation = GenerationService(jobs=1, split_order=4)
        checked = 0
        for order in range(2, 8):
            for g in generation.iter_graphs(order):
                verdict = LemmaService.check_intersection_lemma(g)
                assert verdict.diagnostics['violations_off_boundary'] == 0
                checked += 1

        assert checked == 1251

    @pytest.mark.slow
    def test_min_degree_n_2(self, service):
        """No K_{2,2}-free graph on 10 vertices reaches minimum degree 6."""
        summary = service.scan_exhaustive('min-degree-sqrt3', LemmaParameters(n=2))

        assert summary.parameters['orders'] == [10]
        assert summary.examined == 0
        assert summary.counterexamples == 0

    @pytest.mark.slow
    def test_cycle_lemma_to_order_9(self, service):
        summary = service.scan_exhaustive('cycle-lemma-1', LemmaParameters(r=3), max_order=9)

        assert summary.parameters['orders'] == [7, 8, 9]
        assert summary.hypotheses_met > 0
        assert summary.counterexamples == 0

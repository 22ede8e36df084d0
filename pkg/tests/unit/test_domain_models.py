"""
Unit tests for domain models.

Tests validation logic, JSON serialization, and the invariants of the graph
value type and the report models.
"""

import json
from fractions import Fraction

import numpy as np
import pytest
from pydantic import ValidationError

from src.domain.graph import BipartitenessCertificate, Graph
from src.domain.patterns import PatternKind, PatternSpec
from src.domain.reports import (
    CycleSpectrum,
    LemmaParameters,
    LemmaVerdict,
    MomentReport,
    OrderResult,
    RamseyRun,
    ReportEnvelope,
    SearchConfig,
    WitnessReport,
)
from src.exceptions import ArgumentError


@pytest.fixture
def c5():
    """Five-cycle 0-1-2-3-4-0."""
    return Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])


class TestGraph:
    """Tests for the bitset Graph value type."""

    def test_rows_must_be_symmetric(self):
        """Test that a one-sided adjacency is rejected."""
        with pytest.raises(ValueError) as exc_info:
            Graph(2, [0b10, 0b00])

        assert "symmetric" in str(exc_info.value)

    def test_self_loops_rejected(self):
        """Test that self-loops are rejected by both constructors."""
        with pytest.raises(ValueError):
            Graph(1, [0b1])
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 1)])

    def test_bits_outside_vertex_range_rejected(self):
        with pytest.raises(ValueError):
            Graph(2, [0b100, 0b000])

    def test_edges_are_lexicographic(self, c5):
        """Test edge listing order and counts."""
        assert list(c5.edges()) == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
        assert c5.edge_count() == 5
        assert c5.degrees() == [2] * 5

    def test_complement_of_c5_is_a_five_cycle(self, c5):
        comp = c5.complement()

        assert comp.edge_count() == 5
        assert comp.degrees() == [2] * 5
        assert not comp.has_edge(0, 1)
        assert comp.has_edge(0, 2)
        assert comp.complement() == c5

    def test_complete_and_empty(self):
        assert Graph.complete(5).is_complete()
        assert Graph.complete(5).edge_count() == 10
        assert Graph.empty(4).edge_count() == 0
        assert Graph.empty(0).order == 0
        assert Graph.empty(1).is_complete()

    def test_induced_relabels_in_ascending_order(self, c5):
        """Test that the induced subgraph keeps adjacency under relabelling."""
        sub = c5.induced(0b01101)  # vertices 0, 2, 3

        assert sub.order == 3
        assert list(sub.edges()) == [(1, 2)]

    def test_delete_vertices(self, c5):
        path = c5.delete_vertices(1 << 4)

        assert path.order == 4
        assert list(path.edges()) == [(0, 1), (1, 2), (2, 3)]

    def test_disjoint_union_and_add_vertex(self):
        union = Graph.complete(2).disjoint_union(Graph.complete(3))

        assert union.order == 5
        assert union.edge_count() == 4
        assert not union.has_edge(1, 2)

        star = Graph.empty(3).add_vertex(0b111)
        assert star.degree(3) == 3
        assert star.neighbors(0) == 0b1000

    def test_toggle_edge(self, c5):
        toggled = c5.toggle_edge(0, 2)

        assert toggled.has_edge(0, 2)
        assert toggled.toggle_edge(0, 2) == c5
        assert not c5.has_edge(0, 2)

    def test_value_semantics(self, c5):
        """Test equality and hashing by order and rows."""
        same = Graph.from_edges(5, [(4, 0), (3, 4), (2, 3), (1, 2), (0, 1), (0, 1)])

        assert same == c5
        assert hash(same) == hash(c5)
        assert len({same, c5}) == 1
        assert Graph.empty(3) != Graph.empty(4)

    def test_networkx_round_trip(self, c5):
        nx_graph = c5.to_networkx()

        assert nx_graph.number_of_nodes() == 5
        assert Graph.from_networkx(nx_graph) == c5

    def test_complement_and_degree_sum_on_random_graphs(self):
        rng = np.random.default_rng(5)
        for order in range(1, 13):
            edges = [(a, b) for a in range(order) for b in range(a + 1, order) if rng.random() < 0.5]
            g = Graph.from_edges(order, edges)
            comp = g.complement()

            assert comp.complement() == g
            assert sum(g.degrees()) == 2 * g.edge_count()
            assert g.edge_count() + comp.edge_count() == order * (order - 1) // 2
            assert [order - 1 - d for d in g.degrees()] == comp.degrees()


class TestBipartitenessCertificate:
    """Tests for the self-verifying bipartiteness certificate."""

    def test_valid_sides_verify(self):
        c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        certificate = BipartitenessCertificate(verdict="bipartite", sides=([0, 2], [1, 3]))

        assert certificate.is_bipartite
        assert certificate.verify(c4)

    def test_monochromatic_edge_fails(self):
        c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        certificate = BipartitenessCertificate(verdict="bipartite", sides=([0, 1], [2, 3]))

        assert not certificate.verify(c4)

    def test_odd_cycle_verifies(self, c5):
        certificate = BipartitenessCertificate(verdict="non-bipartite", odd_cycle=[0, 1, 2, 3, 4])

        assert not certificate.is_bipartite
        assert certificate.verify(c5)

    def test_even_or_broken_cycle_fails(self, c5):
        assert not BipartitenessCertificate(verdict="non-bipartite", odd_cycle=[0, 1, 2, 3]).verify(c5)
        assert not BipartitenessCertificate(verdict="non-bipartite", odd_cycle=[0, 2, 4]).verify(c5)


class TestPatternSpec:
    """Tests for pattern parsing and closed-form chromatic data."""

    def test_parse(self):
        pattern = PatternSpec.parse("WHEEL:5")

        assert pattern.pattern_kind == PatternKind.WHEEL
        assert pattern.parameter == 5
        assert str(pattern) == "wheel:5"

    @pytest.mark.parametrize("text", ["wheel:2", "cycle:1", "k2n:0", "foo:3", "k2n", "k2n:x"])
    def test_parse_rejects(self, text):
        with pytest.raises(ArgumentError):
            PatternSpec.parse(text)

    def test_constructor_rejects_small_parameter(self):
        with pytest.raises(ValidationError):
            PatternSpec(kind=PatternKind.WHEEL, parameter=2)

    def test_patterns_are_hashable(self):
        assert len({PatternSpec.parse("k2n:2"), PatternSpec.parse("k2n:2")}) == 1

    @pytest.mark.parametrize("text,expected", [
        ("star:3", (4, 2, 1)),
        ("k2n:1", (3, 2, 1)),
        ("k2n:3", (5, 2, 2)),
        ("book:2", (4, 3, 1)),
        ("cycle:6", (6, 2, 3)),
        ("cycle:5", (5, 3, 1)),
        ("wheel:4", (5, 3, 1)),
        ("wheel:5", (6, 4, 1)),
        ("clique:4", (4, 4, 1)),
    ])
    def test_burr_parameters(self, text, expected):
        params = PatternSpec.parse(text).burr_parameters()

        assert (params.order, params.chromatic_number, params.surplus) == expected


class TestWitnessReport:
    """Tests for witness verification against a host graph."""

    def test_k2n_witness_verifies(self):
        k23 = Graph.from_edges(5, [(a, i) for a in (0, 1) for i in (2, 3, 4)])
        report = WitnessReport(found=True, pattern=PatternSpec.parse("k2n:3"), pair=[0, 1], common=[2, 3, 4])

        assert report.verify(k23)
        assert sorted(report.vertices()) == [0, 1, 2, 3, 4]

    def test_book_needs_spine_edge(self):
        k23 = Graph.from_edges(5, [(a, i) for a in (0, 1) for i in (2, 3, 4)])
        report = WitnessReport(found=True, pattern=PatternSpec.parse("book:3"), pair=[0, 1], common=[2, 3, 4])

        assert not report.verify(k23)

    def test_repeated_vertex_fails(self, c5):
        report = WitnessReport(found=True, pattern=PatternSpec.parse("cycle:5"), cycle=[0, 1, 2, 3, 3])

        assert not report.verify(c5)

    def test_not_found_always_verifies(self, c5):
        assert WitnessReport.not_found(PatternSpec.parse("clique:3")).verify(c5)

    def test_json_round_trip(self):
        report = WitnessReport(found=True, pattern=PatternSpec.parse("wheel:3"), hub=0, cycle=[1, 2, 3])
        data = json.loads(report.to_json())

        assert data['pattern'] == {'kind': 'wheel', 'parameter': 3}
        assert WitnessReport.from_dict(data) == report


class TestCycleSpectrum:
    """Tests for CycleSpectrum consistency validation."""

    def test_consistent_spectrum(self):
        spectrum = CycleSpectrum(girth=5, ec=8, oc=9, lengths=[5, 6, 8, 9])

        assert spectrum.circumference == 9

    def test_acyclic(self):
        spectrum = CycleSpectrum()

        assert spectrum.girth is None
        assert spectrum.circumference == 0

    def test_inconsistent_maxima_rejected(self):
        with pytest.raises(ValidationError):
            CycleSpectrum(girth=3, ec=6, oc=3, lengths=[3, 4])

    def test_unsorted_lengths_rejected(self):
        with pytest.raises(ValidationError):
            CycleSpectrum(girth=3, ec=4, oc=3, lengths=[4, 3])


class TestMomentReport:
    """Tests for the exact rational bound field."""

    def test_bound_serializes_as_fraction_text(self):
        report = MomentReport(
            mode="bipartite", d=2, size_a=3, size_b=5, bound=Fraction(2, 15),
            best_pair=[0, 1], best_intersection=1, holds=True, boundary=False
        )

        assert report.to_dict()['bound'] == "2/15"
        assert MomentReport.from_dict(report.to_dict()).bound == Fraction(2, 15)

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValidationError):
            MomentReport(
                mode="mixed", d=1, size_a=2, size_b=2, bound=0,
                best_pair=[0, 1], best_intersection=0, holds=False, boundary=True
            )


class TestLemmaModels:
    """Tests for lemma parameters and verdicts."""

    def test_require_lists_missing_flags(self):
        params = LemmaParameters(n=2)

        params.require('n')
        with pytest.raises(ArgumentError) as exc_info:
            params.require('n', 'm', 'd')

        assert "--m" in str(exc_info.value)
        assert "--d" in str(exc_info.value)

    def test_defaults(self):
        params = LemmaParameters()

        assert params.r == 3
        assert params.k == 2
        assert params.fraction == Fraction(1, 10)
        assert params.to_dict()['fraction'] == "1/10"

    def test_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            LemmaParameters(m=2)
        with pytest.raises(ValidationError):
            LemmaParameters(r=2)

    def test_counterexample_flag(self):
        failing = LemmaVerdict(lemma_id="dense-null", hypotheses_met=True, conclusion_holds=False)
        unmet = LemmaVerdict(lemma_id="dense-null", hypotheses_met=False)

        assert failing.is_counterexample
        assert not unmet.is_counterexample


class TestRamseyRun:
    """Tests for search configuration and run monotonicity."""

    def test_exhaustive_limit(self):
        assert SearchConfig(max_order=20, order_guard=12).exhaustive_limit == 12
        assert SearchConfig(max_order=20, order_guard=12, allow_large=True).exhaustive_limit == 20
        assert SearchConfig(max_order=8, order_guard=12).exhaustive_limit == 8

    def test_jobs_left_out_of_serialization(self):
        """Test that reports do not depend on the worker count."""
        one = SearchConfig(max_order=8, jobs=1).to_dict()
        four = SearchConfig(max_order=8, jobs=4).to_dict()

        assert 'jobs' not in one
        assert one == four

    def test_non_monotone_arrowing_rejected(self):
        config = SearchConfig(max_order=8)
        with pytest.raises(ValidationError) as exc_info:
            RamseyRun(
                g=PatternSpec.parse("k2n:1"),
                h=PatternSpec.parse("wheel:3"),
                lower_bound=1,
                per_order=[
                    OrderResult(order=6, arrows=True, source="exhaustive"),
                    OrderResult(order=7, arrows=False, source="exhaustive"),
                ],
                config=config
            )

        assert "monotone" in str(exc_info.value)


class TestReportEnvelope:
    """Tests for the JSON envelope."""

    def test_payload_kind_must_match_command(self):
        with pytest.raises(ValidationError):
            ReportEnvelope(tool="ramsey-lab", version="0.1.0", command="ramsey", payload_kind="witness", payload={})

    def test_unknown_command_rejected(self):
        with pytest.raises(ValidationError):
            ReportEnvelope(tool="ramsey-lab", version="0.1.0", command="plot", payload_kind="plot", payload={})

    def test_valid_envelope(self):
        envelope = ReportEnvelope(
            tool="ramsey-lab", version="0.1.0", command="detect", payload_kind="witness", payload=[]
        )

        assert envelope.to_dict()['schema_version'] == 1

"""
Unit tests for AnalysisService.
"""

import networkx as nx

from src.domain.graph import Graph
from src.services.analysis_service import AnalysisService
from src.utils.graph6 import parse_graph6


class TestAnalyze:
    """Tests for single-graph summaries."""

    def test_petersen(self):
        petersen = Graph.from_networkx(nx.petersen_graph())
        summary = AnalysisService.analyze(petersen)

        assert parse_graph6(summary.graph6) == petersen
        assert summary.edge_count == 15
        assert summary.min_degree == summary.max_degree == 3
        assert summary.connectivity == 3
        assert len(summary.separator) == 3
        assert not summary.bipartiteness.is_bipartite
        assert summary.bipartiteness.verify(petersen)
        assert summary.cycle_spectrum.lengths == [5, 6, 8, 9]
        assert summary.articulation_points == []
        assert len(summary.decompositions) == 2

    def test_bowtie_blocks(self):
        bowtie = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
        summary = AnalysisService.analyze(bowtie)

        assert summary.connectivity == 1
        assert summary.separator == [0]
        assert summary.articulation_points == [0]
        assert sorted(summary.blocks) == [[0, 1, 2], [0, 3, 4]]

    def test_spectrum_skipped_above_cap(self):
        summary = AnalysisService.analyze(Graph.empty(17))

        assert summary.cycle_spectrum is None
        assert "17" in summary.spectrum_note

    def test_single_vertex(self):
        summary = AnalysisService.analyze(Graph.empty(1))

        assert summary.connectivity is None
        assert summary.separator is None
        assert summary.bipartiteness.is_bipartite
        assert summary.cycle_spectrum.lengths == []

"""
Unit tests for the graph6 codec, cross-checked against networkx.
"""

import networkx as nx
import numpy as np
import pytest

from src.domain.graph import Graph
from src.exceptions import GraphParseError
from src.utils.graph6 import parse_graph6, write_graph6


def networkx_code(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode('ascii').strip()


class TestWriteGraph6:
    """Tests for encoding."""

    def test_small_known_codes(self):
        assert write_graph6(Graph.empty(0)) == "?"
        assert write_graph6(Graph.empty(1)) == "@"
        assert write_graph6(Graph.complete(4)) == "C~"
        assert write_graph6(Graph.empty(4)) == "C?"

    def test_matches_networkx_on_petersen(self):
        petersen = Graph.from_networkx(nx.petersen_graph())

        assert write_graph6(petersen) == networkx_code(petersen)

    @pytest.mark.parametrize("order", [5, 17, 62, 63, 70])
    def test_matches_networkx_on_random_graphs(self, order):
        """Test both size-prefix forms against the reference encoder."""
        rng = np.random.default_rng(order)
        edges = [(a, b) for a in range(order) for b in range(a + 1, order) if rng.random() < 0.4]
        g = Graph.from_edges(order, edges)

        code = write_graph6(g)
        assert code == networkx_code(g)
        assert parse_graph6(code) == g

    @pytest.mark.slow
    def test_every_small_graph_matches_networkx(self):
        """All labelled graphs on 1 to 6 vertices."""
        for order in range(1, 7):
            pairs = [(a, b) for a in range(order) for b in range(a + 1, order)]
            for bits in range(1 << len(pairs)):
                g = Graph.from_edges(order, [pair for i, pair in enumerate(pairs) if bits >> i & 1])
                code = write_graph6(g)

                assert code == networkx_code(g)
                assert parse_graph6(code) == g

    @pytest.mark.slow
    def test_random_graphs_up_to_62_vertices(self):
        rng = np.random.default_rng(62)
        for _ in range(10_000):
            order = int(rng.integers(7, 63))
            density = rng.uniform(0.05, 0.95)
            edges = [(a, b) for a in range(order) for b in range(a + 1, order) if rng.random() < density]
            g = Graph.from_edges(order, edges)
            code = write_graph6(g)

            assert code == networkx_code(g)
            assert parse_graph6(code) == g


class TestParseGraph6:
    """Tests for decoding and error offsets."""

    def test_header_and_whitespace_ignored(self):
        assert parse_graph6("  >>graph6<<C~\n") == Graph.complete(4)

    def test_parses_networkx_output(self):
        nx_graph = nx.cycle_graph(9)
        code = nx.to_graph6_bytes(nx_graph, header=False).decode('ascii').strip()

        assert parse_graph6(code) == Graph.from_networkx(nx_graph)

    def test_empty_input(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph6("")

        assert exc_info.value.offset == 0

    def test_byte_out_of_range(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph6("C!")

        assert exc_info.value.offset == 1

    def test_truncated_body(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph6("C")

        assert exc_info.value.offset == 1
        assert "expected 1 data bytes" in str(exc_info.value)

    def test_trailing_bytes(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph6("C~~")

        assert exc_info.value.offset == 2

    def test_nonzero_padding(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph6("B~")

        assert exc_info.value.offset == 1
        assert "padding" in str(exc_info.value)

    def test_offset_counts_leading_whitespace(self):
        with pytest.raises(GraphParseError) as exc_info:
            parse_graph6("  C!")

        assert exc_info.value.offset == 3

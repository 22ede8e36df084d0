"""
Graph Domain Types

Immutable simple undirected graph stored as one adjacency bit-row per vertex,
and the bipartiteness certificate returned by the structure checks.
"""

from enum import Enum
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import Field

from src.domain import DomainModel
from src.utils.bitsets import full_mask, iter_bits, popcount


class Graph:
    """
    Immutable simple undirected graph on vertices 0..order-1.

    Row v is an int whose bit u is set iff uv is an edge. Instances are
    hashable value objects and safe to share between workers.
    """

    __slots__ = ('_order', '_rows', '_hash')

    def __init__(self, order: int, rows: Sequence[int]):
        if order < 0:
            raise ValueError(f"Graph order must be non-negative, got {order}")
        if len(rows) != order:
            raise ValueError(f"Expected {order} adjacency rows, got {len(rows)}")
        limit = full_mask(order)
        for v, row in enumerate(rows):
            if row < 0 or row & ~limit:
                raise ValueError(f"Row {v} has bits outside the vertex range")
            if (row >> v) & 1:
                raise ValueError(f"Self-loop at vertex {v}")
            for u in iter_bits(row):
                if not (rows[u] >> v) & 1:
                    raise ValueError(f"Adjacency not symmetric between {v} and {u}")
        self._order = order
        self._rows = tuple(rows)
        self._hash: Optional[int] = None

    @classmethod
    def _trusted(cls, order: int, rows: Sequence[int]) -> 'Graph':
        """Build without validation; rows must already satisfy the invariants."""
        g = cls.__new__(cls)
        g._order = order
        g._rows = tuple(rows)
        g._hash = None
        return g

    # Constructors

    @classmethod
    def empty(cls, order: int) -> 'Graph':
        if order < 0:
            raise ValueError(f"Graph order must be non-negative, got {order}")
        return cls._trusted(order, [0] * order)

    @classmethod
    def complete(cls, order: int) -> 'Graph':
        if order < 0:
            raise ValueError(f"Graph order must be non-negative, got {order}")
        full = full_mask(order)
        return cls._trusted(order, [full & ~(1 << v) for v in range(order)])

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Tuple[int, int]]) -> 'Graph':
        """Build a graph from an edge list; duplicate edges are ignored."""
        if order < 0:
            raise ValueError(f"Graph order must be non-negative, got {order}")
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"Edge ({u}, {v}) outside vertex range 0..{order - 1}")
            if u == v:
                raise ValueError(f"Self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(order, rows)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> 'Graph':
        """Convert a networkx graph, relabelling nodes in sorted order."""
        nodes = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in graph.edges()))

    # Accessors

    @property
    def order(self) -> int:
        return self._order

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    @property
    def vertex_mask(self) -> int:
        return full_mask(self._order)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._rows[u] >> v) & 1)

    def neighbors(self, v: int) -> int:
        """Neighbourhood of v as a vertex-set mask."""
        return self._rows[v]

    def degree(self, v: int) -> int:
        return popcount(self._rows[v])

    def degrees(self) -> List[int]:
        return [popcount(row) for row in self._rows]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        for u, row in enumerate(self._rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def is_complete(self) -> bool:
        return self.edge_count() == self._order * (self._order - 1) // 2

    # Derived graphs

    def complement(self) -> 'Graph':
        full = full_mask(self._order)
        return Graph._trusted(
            self._order,
            [full & ~row & ~(1 << v) for v, row in enumerate(self._rows)]
        )

    def induced(self, vertices: int) -> 'Graph':
        """
        Subgraph induced on a vertex set, relabelled by ascending original index.

        Args:
            vertices: Vertex-set mask, a subset of V(g)

        Returns:
            Graph of order |vertices|
        """
        if vertices & ~self.vertex_mask or vertices < 0:
            raise ValueError("Induced vertex set is not a subset of the graph")
        kept = list(iter_bits(vertices))
        rows = []
        for v in kept:
            row = self._rows[v] & vertices
            new_row = 0
            for i, u in enumerate(kept):
                if (row >> u) & 1:
                    new_row |= 1 << i
            rows.append(new_row)
        return Graph._trusted(len(kept), rows)

    def delete_vertices(self, vertices: int) -> 'Graph':
        return self.induced(self.vertex_mask & ~vertices)

    def disjoint_union(self, other: 'Graph') -> 'Graph':
        shift = self._order
        return Graph._trusted(
            self._order + other._order,
            list(self._rows) + [row << shift for row in other._rows]
        )

    def add_vertex(self, neighbors: int) -> 'Graph':
        """Append vertex `order` adjacent to the given vertex set."""
        if neighbors & ~self.vertex_mask or neighbors < 0:
            raise ValueError("New vertex neighbourhood is not a subset of the graph")
        k = self._order
        rows = [row | (((neighbors >> v) & 1) << k) for v, row in enumerate(self._rows)]
        rows.append(neighbors)
        return Graph._trusted(k + 1, rows)

    def toggle_edge(self, u: int, v: int) -> 'Graph':
        if u == v:
            raise ValueError(f"Self-loop at vertex {u}")
        rows = list(self._rows)
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        return Graph._trusted(self._order, rows)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self._order))
        graph.add_edges_from(self.edges())
        return graph

    # Value semantics

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._order, self._rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, edges={self.edge_count()})"


class BipartiteVerdict(str, Enum):
    BIPARTITE = "bipartite"
    NON_BIPARTITE = "non-bipartite"


class BipartitenessCertificate(DomainModel):
    """
    Self-verifying answer to "is this graph bipartite".

    Bipartite graphs carry the two sides of a proper 2-colouring; the others
    carry an odd cycle listed in cyclic order.
    """

    verdict: BipartiteVerdict = Field(..., description="bipartite or non-bipartite")
    sides: Optional[Tuple[List[int], List[int]]] = Field(
        None,
        description="Colour classes of a proper 2-colouring (bipartite only)"
    )
    odd_cycle: Optional[List[int]] = Field(
        None,
        description="Odd cycle in cyclic vertex order (non-bipartite only)"
    )

    @property
    def is_bipartite(self) -> bool:
        return self.verdict == BipartiteVerdict.BIPARTITE.value

    def verify(self, g: Graph) -> bool:
        """Recheck the certificate against the graph it was issued for."""
        if self.is_bipartite:
            if self.sides is None:
                return False
            left, right = self.sides
            if sorted(left + right) != list(range(g.order)):
                return False
            for side in (left, right):
                mask = sum(1 << v for v in side)
                if any(g.neighbors(v) & mask for v in side):
                    return False
            return True

        cycle = self.odd_cycle or []
        if len(cycle) < 3 or len(cycle) % 2 == 0 or len(set(cycle)) != len(cycle):
            return False
        return all(
            g.has_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
        )

"""
Structural primitives on bitset graphs.

Connectivity, block decomposition and bipartiteness. Hot-loop checks
(components, 2-connectivity of an induced subgraph) stay on bitsets; the
exact vertex connectivity and the block decomposition go through networkx.
"""

import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

import networkx as nx

from src.domain.graph import BipartitenessCertificate, BipartiteVerdict, Graph
from src.exceptions import ArgumentError
from src.utils.bitsets import from_iterable, iter_bits, lowest, popcount, to_list


logger = logging.getLogger(__name__)


def reach(g: Graph, start: int, within: int) -> int:
    """Vertices of `within` reachable from start inside g[within]."""
    seen = 1 << start
    frontier = seen
    rows = g.rows
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def components(g: Graph, within: Optional[int] = None) -> List[int]:
    """Connected components of g[within], ordered by least vertex."""
    remaining = g.vertex_mask if within is None else within
    out = []
    while remaining:
        comp = reach(g, lowest(remaining), remaining)
        out.append(comp)
        remaining &= ~comp
    return out


def is_connected(g: Graph, within: Optional[int] = None) -> bool:
    mask = g.vertex_mask if within is None else within
    if not mask:
        return True
    return reach(g, lowest(mask), mask) == mask


def is_two_connected(g: Graph, within: Optional[int] = None) -> bool:
    """
    True when g[within] has at least 3 vertices, is connected and has no
    cut vertex.
    """
    mask = g.vertex_mask if within is None else within
    if popcount(mask) < 3 or not is_connected(g, mask):
        return False
    for v in iter_bits(mask):
        if not is_connected(g, mask & ~(1 << v)):
            return False
    return True


def connectivity_with_separator(g: Graph) -> Tuple[int, List[int]]:
    """
    Vertex connectivity k(G) and a minimum separating set.

    Complete graphs have connectivity order-1 and no separator; disconnected
    graphs have connectivity 0 with the empty separator.

    Raises:
        ArgumentError: When the graph has fewer than 2 vertices
    """
    if g.order < 2:
        raise ArgumentError(f"Connectivity needs at least 2 vertices, got {g.order}")
    if g.is_complete():
        return g.order - 1, []
    if not is_connected(g):
        return 0, []
    nx_graph = g.to_networkx()
    cut = nx.minimum_node_cut(nx_graph)
    return len(cut), sorted(cut)


def connectivity(g: Graph) -> int:
    return connectivity_with_separator(g)[0]


def biconnected_components(g: Graph) -> Tuple[List[int], int]:
    """
    Block decomposition.

    Returns:
        (blocks, articulation): blocks as vertex masks sorted by their vertex
        lists, isolated vertices as single-vertex blocks; articulation points
        as a mask
    """
    nx_graph = g.to_networkx()
    blocks = [from_iterable(block) for block in nx.biconnected_components(nx_graph)]
    blocks.extend(1 << v for v in range(g.order) if g.degree(v) == 0)
    blocks.sort(key=to_list)
    articulation = from_iterable(nx.articulation_points(nx_graph))
    return blocks, articulation


def _path_to_root(v: int, parent: Dict[int, int]) -> List[int]:
    path = [v]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    return path


def bipartiteness(g: Graph) -> BipartitenessCertificate:
    """
    BFS 2-colouring per component, least vertex first.

    On the first monochromatic edge the odd cycle is closed through the
    lowest common BFS ancestor of its ends.
    """
    colour: Dict[int, int] = {}
    parent: Dict[int, int] = {}
    for root in range(g.order):
        if root in colour:
            continue
        colour[root] = 0
        parent[root] = -1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in iter_bits(g.neighbors(u)):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    parent[w] = u
                    queue.append(w)
                elif colour[w] == colour[u]:
                    cycle = _close_odd_cycle(u, w, parent)
                    logger.debug(f"Odd cycle of length {len(cycle)} through edge ({u}, {w})")
                    return BipartitenessCertificate(
                        verdict=BipartiteVerdict.NON_BIPARTITE,
                        odd_cycle=cycle
                    )

    left = [v for v in range(g.order) if colour[v] == 0]
    right = [v for v in range(g.order) if colour[v] == 1]
    return BipartitenessCertificate(verdict=BipartiteVerdict.BIPARTITE, sides=(left, right))


def _close_odd_cycle(u: int, w: int, parent: Dict[int, int]) -> List[int]:
    up = _path_to_root(u, parent)
    wp = _path_to_root(w, parent)
    on_w_path = set(wp)
    lca = next(x for x in up if x in on_w_path)
    left = up[:up.index(lca) + 1]
    right = wp[:wp.index(lca)]
    return left + right[::-1]


def is_bipartite(g: Graph, within: Optional[int] = None) -> bool:
    """Bitset 2-colouring check of g[within]."""
    mask = g.vertex_mask if within is None else within
    rows = g.rows
    unseen = mask
    while unseen:
        start = lowest(unseen)
        side = [1 << start, 0]
        frontier = 1 << start
        turn = 0
        unseen &= ~frontier
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= rows[v]
            nxt &= mask
            if nxt & side[turn]:
                return False
            turn = 1 - turn
            side[turn] |= nxt
            frontier = nxt & unseen
            unseen &= ~nxt
        if any(rows[v] & side[0] for v in iter_bits(side[0])):
            return False
        if any(rows[v] & side[1] for v in iter_bits(side[1])):
            return False
    return True

"""
Detection service - exact subgraph containment for every pattern family,
plus the exact cycle spectrum.

All searches walk vertices in ascending index order, so the first witness
found is the lexicographically least one and reports are reproducible.
"""

import logging
from typing import List, Optional

from config.settings import settings
from src.domain.graph import Graph
from src.domain.patterns import PatternKind, PatternSpec
from src.domain.reports import CycleSpectrum, WitnessReport
from src.exceptions import ArgumentError, CapacityError
from src.utils.bitsets import first_k, iter_bits, lowest, popcount
from src.utils.structure import is_bipartite, reach


logger = logging.getLogger(__name__)


def _cycle_from(g: Graph, anchor: int, m: int, allowed: int) -> Optional[List[int]]:
    """
    Lexicographically least cycle of length m through `anchor` whose other
    vertices lie in `allowed`, as a vertex list starting at the anchor.

    Paths are extended depth first in ascending order and cut when the
    vertices still reachable from the path end cannot complete the cycle.
    """
    rows = g.rows
    back = rows[anchor] & allowed
    if m < 3 or popcount(back) < 2 or popcount(allowed) < m - 1:
        return None
    if m % 2 and is_bipartite(g, allowed | (1 << anchor)):
        return None

    path = [anchor]

    def extend(end: int, free: int) -> bool:
        missing = m - len(path)
        if missing == 1:
            last = rows[end] & free & back
            if last:
                path.append(lowest(last))
                return True
            return False
        candidates = rows[end] & free
        if not candidates:
            return False
        # The rest of the cycle lies in the component of `end` inside free + end
        region = reach(g, end, free | (1 << end)) & ~(1 << end)
        if popcount(region) < missing or not region & back:
            return False
        for w in iter_bits(candidates):
            path.append(w)
            if extend(w, free & ~(1 << w)):
                return True
            path.pop()
        return False

    for first in iter_bits(back):
        path.append(first)
        if extend(first, allowed & ~(1 << first)):
            return path
        path.pop()
    return None


def _cycle_within(g: Graph, m: int, within: int) -> Optional[List[int]]:
    """Least cycle of length m inside g[within], anchored at its least vertex."""
    remaining = within
    while popcount(remaining) >= m:
        anchor = lowest(remaining)
        remaining &= ~(1 << anchor)
        cycle = _cycle_from(g, anchor, m, remaining)
        if cycle is not None:
            return cycle
    return None


def _clique_within(g: Graph, k: int, candidates: int) -> Optional[List[int]]:
    """Lexicographically least k-clique inside the candidate set."""
    rows = g.rows
    chosen: List[int] = []

    def grow(cands: int) -> bool:
        if len(chosen) == k:
            return True
        need = k - len(chosen)
        while popcount(cands) >= need:
            v = lowest(cands)
            cands &= ~(1 << v)
            chosen.append(v)
            if grow(cands & rows[v]):
                return True
            chosen.pop()
        return False

    if k == 0:
        return []
    return list(chosen) if grow(candidates) else None


def _hub_order(g: Graph, hubs: int) -> List[int]:
    """Candidate hubs by decreasing degree, ties by index."""
    return sorted(iter_bits(hubs), key=lambda v: (-g.degree(v), v))


class DetectionService:
    """Containment checks returning explicit witnesses."""

    @staticmethod
    def find_k2n(g: Graph, n: int) -> WitnessReport:
        """
        Least pair u < v with at least n common neighbours.

        Returns:
            WitnessReport with the pair and its n least common neighbours
        """
        if n < 1:
            raise ArgumentError(f"K_(2,n) needs n >= 1, got {n}")
        pattern = PatternSpec(kind=PatternKind.K2N, parameter=n)
        rows = g.rows
        for u in range(g.order):
            ru = rows[u]
            for v in range(u + 1, g.order):
                common = ru & rows[v]
                if popcount(common) >= n:
                    return WitnessReport(found=True, pattern=pattern, pair=[u, v], common=first_k(common, n))
        return WitnessReport.not_found(pattern)

    @staticmethod
    def find_book(g: Graph, n: int) -> WitnessReport:
        """Least edge uv whose ends share at least n neighbours."""
        if n < 1:
            raise ArgumentError(f"A book needs n >= 1, got {n}")
        pattern = PatternSpec(kind=PatternKind.BOOK, parameter=n)
        rows = g.rows
        for u, v in g.edges():
            common = rows[u] & rows[v]
            if popcount(common) >= n:
                return WitnessReport(found=True, pattern=pattern, pair=[u, v], common=first_k(common, n))
        return WitnessReport.not_found(pattern)

    @staticmethod
    def find_star(g: Graph, n: int) -> WitnessReport:
        """Least vertex of degree at least n."""
        if n < 1:
            raise ArgumentError(f"A star needs n >= 1, got {n}")
        pattern = PatternSpec(kind=PatternKind.STAR, parameter=n)
        for v in range(g.order):
            if g.degree(v) >= n:
                return WitnessReport(found=True, pattern=pattern, center=v, leaves=first_k(g.neighbors(v), n))
        return WitnessReport.not_found(pattern)

    @staticmethod
    def find_clique(g: Graph, k: int) -> WitnessReport:
        if k < 1:
            raise ArgumentError(f"A clique needs k >= 1, got {k}")
        pattern = PatternSpec(kind=PatternKind.CLIQUE, parameter=k)
        clique = _clique_within(g, k, g.vertex_mask)
        if clique is None:
            return WitnessReport.not_found(pattern)
        return WitnessReport(found=True, pattern=pattern, clique=clique)

    @staticmethod
    def find_cycle_of_length(g: Graph, m: int) -> WitnessReport:
        """
        Cycle on exactly m vertices, as a cyclic order starting at its least
        vertex.

        Raises:
            ArgumentError: When m is outside 3..order
        """
        if not 3 <= m <= g.order:
            raise ArgumentError(f"Cycle length must lie in 3..{g.order}, got {m}")
        pattern = PatternSpec(kind=PatternKind.CYCLE, parameter=m)
        cycle = _cycle_within(g, m, g.vertex_mask)
        if cycle is None:
            return WitnessReport.not_found(pattern)
        return WitnessReport(found=True, pattern=pattern, cycle=cycle)

    @staticmethod
    def find_wheel(g: Graph, m: int, hubs: Optional[int] = None) -> WitnessReport:
        """
        Hub v with a C_m inside g[N(v)].

        Hubs are tried by decreasing degree (ties by index); the witness is
        the first hub in that order that works, with its least cycle.

        Args:
            g: Host graph
            m: Rim length, at least 3
            hubs: Optional mask restricting the candidate hubs
        """
        if m < 3:
            raise ArgumentError(f"A wheel needs m >= 3, got {m}")
        pattern = PatternSpec(kind=PatternKind.WHEEL, parameter=m)
        candidates = g.vertex_mask if hubs is None else hubs
        for hub in _hub_order(g, candidates):
            nbhd = g.neighbors(hub)
            if popcount(nbhd) < m:
                continue
            cycle = _cycle_within(g, m, nbhd)
            if cycle is not None:
                return WitnessReport(found=True, pattern=pattern, hub=hub, cycle=cycle)
        return WitnessReport.not_found(pattern)

    @staticmethod
    def find(g: Graph, pattern: PatternSpec) -> WitnessReport:
        """
        Generic containment check dispatching on the pattern family.

        Cycles longer than the host are reported as not found rather than
        rejected.
        """
        p = pattern.parameter
        kind = pattern.pattern_kind
        if kind == PatternKind.K2N:
            return DetectionService.find_k2n(g, p)
        if kind == PatternKind.BOOK:
            return DetectionService.find_book(g, p)
        if kind == PatternKind.STAR:
            return DetectionService.find_star(g, p)
        if kind == PatternKind.CLIQUE:
            return DetectionService.find_clique(g, p)
        if kind == PatternKind.WHEEL:
            return DetectionService.find_wheel(g, p)
        if p > g.order:
            return WitnessReport.not_found(pattern)
        return DetectionService.find_cycle_of_length(g, p)

    @staticmethod
    def contains(g: Graph, pattern: PatternSpec, new_vertex: Optional[int] = None) -> bool:
        """
        Whether g contains the pattern.

        With `new_vertex`, only copies using that vertex are looked for; the
        caller guarantees g minus that vertex is pattern-free.
        """
        if new_vertex is None:
            return DetectionService.find(g, pattern).found

        p = pattern.parameter
        kind = pattern.pattern_kind
        rows = g.rows
        x = new_vertex
        nx_ = rows[x]
        others = g.vertex_mask & ~(1 << x)

        if kind == PatternKind.STAR:
            return popcount(nx_) >= p or any(popcount(rows[u]) >= p for u in iter_bits(nx_))
        if kind in (PatternKind.K2N, PatternKind.BOOK):
            book = kind == PatternKind.BOOK
            for u in iter_bits(others):
                if book and not (nx_ >> u) & 1:
                    continue
                if popcount(nx_ & rows[u]) >= p:
                    return True
            # x as a common neighbour of a pair inside N(x)
            for u in iter_bits(nx_):
                for v in iter_bits(nx_ >> (u + 1)):
                    v += u + 1
                    if book and not (rows[u] >> v) & 1:
                        continue
                    if popcount(rows[u] & rows[v]) >= p:
                        return True
            return False
        if kind == PatternKind.CLIQUE:
            if p == 1:
                return True
            return _clique_within(g, p - 1, nx_) is not None
        if kind == PatternKind.CYCLE:
            return p <= g.order and _cycle_from(g, x, p, others) is not None
        # Wheel: x as the hub, or x on the rim of a neighbouring hub
        if popcount(nx_) >= p and _cycle_within(g, p, nx_) is not None:
            return True
        for hub in iter_bits(nx_):
            rim = rows[hub] & ~(1 << x)
            if popcount(rim) + 1 >= p and _cycle_from(g, x, p, rim) is not None:
                return True
        return False

    @staticmethod
    def violation_count(g: Graph, pattern: PatternSpec) -> int:
        """
        Smooth count of pattern occurrences, zero exactly when g is free of
        the pattern.

        K_{2,n}: pairs with >= n common neighbours; book: such edges; star:
        vertices of degree >= n; wheel: vertices that are hubs of a W_m;
        cycle and clique: 0 or 1.
        """
        p = pattern.parameter
        kind = pattern.pattern_kind
        rows = g.rows
        if kind in (PatternKind.K2N, PatternKind.BOOK):
            book = kind == PatternKind.BOOK
            count = 0
            for u in range(g.order):
                for v in range(u + 1, g.order):
                    if book and not (rows[u] >> v) & 1:
                        continue
                    if popcount(rows[u] & rows[v]) >= p:
                        count += 1
            return count
        if kind == PatternKind.STAR:
            return sum(1 for row in rows if popcount(row) >= p)
        if kind == PatternKind.WHEEL:
            return sum(1 for v in range(g.order) if DetectionService.is_hub(g, v, p))
        return 1 if DetectionService.find(g, pattern).found else 0

    @staticmethod
    def is_hub(g: Graph, v: int, m: int) -> bool:
        """Whether v is the hub of some W_m."""
        nbhd = g.neighbors(v)
        return popcount(nbhd) >= m and _cycle_within(g, m, nbhd) is not None

    @staticmethod
    def cycle_spectrum(g: Graph) -> CycleSpectrum:
        """
        Every cycle length of g, by anchored subset dynamic programming.

        For each anchor a, state (S, v) records a path from a to v visiting
        exactly S, where a is the least vertex of S. A cycle of length |S|
        closes when v is adjacent to a. States are kept as S -> mask of ends.

        Raises:
            CapacityError: Above the spectrum order cap
        """
        cap = settings.spectrum_order_cap
        if g.order > cap:
            raise CapacityError(
                f"Cycle spectrum limited to order {cap}; use find_cycle_of_length per length"
            )
        rows = g.rows
        lengths = set()
        for a in range(g.order):
            higher = g.vertex_mask & ~((1 << (a + 1)) - 1)
            if popcount(rows[a] & higher) < 2:
                continue
            # Layered by |S|: frontier maps S to the set of possible path ends
            frontier = {1 << a: 1 << a}
            size = 1
            while frontier:
                nxt = {}
                for mask, end_set in frontier.items():
                    free = higher & ~mask
                    for v in iter_bits(end_set):
                        if size >= 3 and (rows[v] >> a) & 1:
                            lengths.add(size)
                        for w in iter_bits(rows[v] & free):
                            key = mask | (1 << w)
                            nxt[key] = nxt.get(key, 0) | (1 << w)
                frontier = nxt
                size += 1
        ordered = sorted(lengths)
        evens = [x for x in ordered if x % 2 == 0]
        odds = [x for x in ordered if x % 2 == 1]
        return CycleSpectrum(
            girth=ordered[0] if ordered else None,
            ec=max(evens, default=0),
            oc=max(odds, default=0),
            lengths=ordered
        )

    @staticmethod
    def has_cycle_at_least(g: Graph, length: int, parity: int) -> bool:
        """
        Whether g has a cycle of length >= `length` with the given parity
        (0 even, 1 odd), trying the longest candidates first.
        """
        top = g.order if g.order % 2 == parity else g.order - 1
        for m in range(top, max(length, 3) - 1, -2):
            if m >= 3 and _cycle_within(g, m, g.vertex_mask) is not None:
                return True
        return False

"""
Report Domain Models

Witnesses, cycle spectra, lemma verdicts, Ramsey search runs and the JSON
envelope every CLI command writes.
"""

from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import Field, field_validator, model_validator

from src.domain import DomainModel, Rational
from src.domain.graph import BipartitenessCertificate, Graph
from src.domain.patterns import PatternSpec
from src.exceptions import ArgumentError


class WitnessReport(DomainModel):
    """
    Result of a containment check, with the vertices of the copy when found.

    Which witness fields are filled depends on the pattern: `pair` and
    `common` for K_{2,n} and books, `center` and `leaves` for stars, `hub`
    and `cycle` for wheels, `cycle` for cycles, `clique` for cliques.
    """

    found: bool = Field(..., description="Whether the host contains the pattern")
    pattern: PatternSpec = Field(..., description="Pattern searched for")
    pair: Optional[List[int]] = Field(None, description="Two apex vertices (K2n, book)")
    common: Optional[List[int]] = Field(None, description="Common neighbours of the pair")
    center: Optional[int] = Field(None, description="Star centre")
    leaves: Optional[List[int]] = Field(None, description="Star leaves")
    hub: Optional[int] = Field(None, description="Wheel hub")
    cycle: Optional[List[int]] = Field(None, description="Cyclic vertex order")
    clique: Optional[List[int]] = Field(None, description="Clique vertices")

    @classmethod
    def not_found(cls, pattern: PatternSpec) -> 'WitnessReport':
        return cls(found=False, pattern=pattern)

    def vertices(self) -> List[int]:
        """All witness vertices."""
        out: List[int] = []
        for part in (self.pair, self.common, self.leaves, self.cycle, self.clique):
            out.extend(part or [])
        for single in (self.center, self.hub):
            if single is not None:
                out.append(single)
        return out

    def verify(self, g: Graph) -> bool:
        """Check every edge the witness claims against the host graph."""
        if not self.found:
            return True
        vs = self.vertices()
        if len(vs) != len(set(vs)) or any(not 0 <= v < g.order for v in vs):
            return False

        kind = self.pattern.pattern_kind.value
        n = self.pattern.parameter
        if kind in ('k2n', 'book'):
            if not self.pair or len(self.pair) != 2 or len(self.common or []) != n:
                return False
            u, v = self.pair
            if kind == 'book' and not g.has_edge(u, v):
                return False
            return all(g.has_edge(u, w) and g.has_edge(v, w) for w in self.common)
        if kind == 'star':
            leaves = self.leaves or []
            return self.center is not None and len(leaves) == n and all(
                g.has_edge(self.center, w) for w in leaves
            )
        if kind == 'clique':
            clique = self.clique or []
            return len(clique) == n and all(
                g.has_edge(a, b) for i, a in enumerate(clique) for b in clique[i + 1:]
            )

        cycle = self.cycle or []
        if len(cycle) != n:
            return False
        if not all(g.has_edge(cycle[i], cycle[(i + 1) % n]) for i in range(n)):
            return False
        if kind == 'wheel':
            return self.hub is not None and all(g.has_edge(self.hub, w) for w in cycle)
        return True


class CycleSpectrum(DomainModel):
    """Girth, even and odd circumference and every achievable cycle length."""

    girth: Optional[int] = Field(None, description="Shortest cycle length, None if acyclic")
    ec: int = Field(0, ge=0, description="Longest even cycle, 0 if none")
    oc: int = Field(0, ge=0, description="Longest odd cycle, 0 if none")
    lengths: List[int] = Field(default_factory=list, description="Achievable cycle lengths, ascending")

    @model_validator(mode='after')
    def consistent(self) -> 'CycleSpectrum':
        lengths = self.lengths
        if lengths != sorted(set(lengths)):
            raise ValueError("lengths must be strictly ascending")
        evens = [x for x in lengths if x % 2 == 0]
        odds = [x for x in lengths if x % 2 == 1]
        if self.ec != max(evens, default=0) or self.oc != max(odds, default=0):
            raise ValueError("ec/oc inconsistent with lengths")
        if self.girth != (lengths[0] if lengths else None):
            raise ValueError("girth inconsistent with lengths")
        return self

    @property
    def circumference(self) -> int:
        return max(self.ec, self.oc)


class MomentReport(DomainModel):
    """Best common-neighbourhood pair against the first-moment bound."""

    mode: str = Field(..., description="bipartite or general")
    d: int = Field(..., ge=1, description="Asserted minimum degree of A into B")
    size_a: int = Field(..., ge=2)
    size_b: int = Field(..., ge=1)
    bound: Rational = Field(..., description="d²/|B| − d/|A|, exact")
    best_pair: List[int] = Field(..., description="Lexicographically least maximizing pair")
    best_intersection: int = Field(..., ge=0)
    holds: bool = Field(..., description="best_intersection > bound")
    boundary: bool = Field(..., description="d·|A| = |B|, the degenerate equality case")

    @field_validator('mode')
    @classmethod
    def known_mode(cls, v: str) -> str:
        if v not in ('bipartite', 'general'):
            raise ValueError(f"mode must be bipartite or general, got {v}")
        return v


class DecompositionReport(DomainModel):
    """
    Vertex decomposition produced by the dense/null split or the
    two-connected (star-cycle) search.
    """

    kind: str = Field(..., description="dense-null or two-connected")
    threshold_fraction: Optional[Rational] = Field(None, description="Degree fraction (dense-null)")
    threshold: Optional[Rational] = Field(None, description="|V|·fraction + 1 (dense-null)")
    standard_fraction: Optional[bool] = Field(None, description="fraction is 1/10 or 1/6")
    null_set: List[int] = Field(default_factory=list, description="P: low-degree vertices")
    dense_set: List[int] = Field(default_factory=list, description="Q: the remaining vertices")
    cut_set: List[int] = Field(default_factory=list, description="U: deleted vertices")
    components: List[List[int]] = Field(default_factory=list, description="Vertex-disjoint parts")

    @property
    def component_count(self) -> int:
        return len(self.components)


class LemmaVerdict(DomainModel):
    """Outcome of checking one lemma on one concrete input."""

    lemma_id: str = Field(..., description="Stable lemma identifier")
    hypotheses_met: bool = Field(..., description="Input satisfies the lemma's hypotheses")
    conclusion_holds: Optional[bool] = Field(
        None,
        description="Conclusion checked; None when hypotheses fail or nothing is asserted"
    )
    asymptotic: bool = Field(
        False,
        description="Lemma is only claimed for large parameters; a failure is a scan finding"
    )
    graph6: Optional[str] = Field(None, description="Input graph, when there is one")
    diagnostics: Dict[str, Any] = Field(default_factory=dict)

    @property
    def is_counterexample(self) -> bool:
        return self.hypotheses_met and self.conclusion_holds is False


class LemmaParameters(DomainModel):
    """Numeric parameters a lemma check may need."""

    n: Optional[int] = Field(None, ge=1, description="K_{2,n} parameter")
    m: Optional[int] = Field(None, ge=3, description="Wheel rim length")
    r: int = Field(3, ge=3, description="Degree parameter of the cycle lemma")
    k: int = Field(2, ge=2, description="Component bound of the star-cycle decomposition")
    fraction: Rational = Field(Fraction(1, 10), description="Dense/null degree fraction")
    d: Optional[int] = Field(None, ge=1, description="Fixed d for the intersection lemma")
    max_eps: int = Field(20, ge=1, description="Largest ε on the expectation-claim grid")

    def require(self, *names: str) -> None:
        """
        Raises:
            ArgumentError: When a needed parameter was not supplied
        """
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            raise ArgumentError(f"Missing lemma parameter(s): {', '.join('--' + m for m in missing)}")


class ScanSummary(DomainModel):
    """Aggregate counts of a lemma scan over many inputs."""

    lemma_id: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    examined: int = Field(0, ge=0)
    hypotheses_met: int = Field(0, ge=0)
    conclusion_held: int = Field(0, ge=0)
    counterexamples: int = Field(0, ge=0)
    samples: List[LemmaVerdict] = Field(
        default_factory=list,
        description="Counterexamples (first few) or, for tiny scans, every verdict"
    )


class SearchMode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    STOCHASTIC = "stochastic"


class SearchConfig(DomainModel):
    """Knobs of a Ramsey search; echoed in the run for replay."""

    max_order: int = Field(..., ge=1)
    jobs: int = Field(1, ge=1, exclude=True, description="Worker count; results do not depend on it")
    mode: SearchMode = Field(SearchMode.EXHAUSTIVE)
    order_guard: int = Field(12, ge=1, description="Largest order searched exhaustively")
    allow_large: bool = Field(False, description="Search past the guard anyway")
    flips: int = Field(20000, ge=1, description="Stochastic flips per restart")
    restarts: int = Field(8, ge=1)
    seed: int = Field(0, ge=0)
    split_order: int = Field(6, ge=1, description="Subtree root order for parallel generation")

    @property
    def exhaustive_limit(self) -> int:
        """Largest order the exhaustive scan may touch."""
        return self.max_order if self.allow_large else min(self.max_order, self.order_guard)


class OrderResult(DomainModel):
    """Arrowing status at one order of a run."""

    order: int = Field(..., ge=1)
    arrows: Optional[bool] = Field(None, description="None when the order was not settled")
    source: str = Field(..., description="construction, exhaustive, stochastic or skipped")
    witness: Optional[str] = Field(None, description="graph6 of a non-arrowing witness")
    graphs_examined: int = Field(0, ge=0)
    wall_time: float = Field(0.0, ge=0)


class RamseyRun(DomainModel):
    """
    Result of ramsey_number: the value when found, otherwise the best
    interval known within the configured limits.
    """

    g: PatternSpec
    h: PatternSpec
    value: Optional[int] = Field(None, description="Least arrowing order, when settled")
    lower_bound: int = Field(..., ge=1, description="Every order below this is non-arrowing")
    upper_bound: Optional[int] = Field(None, description="Known arrowing order, if any")
    burr_bound: Optional[int] = Field(None, description="Burr lower bound, when applicable")
    bounded: bool = Field(False, description="Value not settled within the limits")
    per_order: List[OrderResult] = Field(default_factory=list)
    config: SearchConfig

    @model_validator(mode='after')
    def arrows_monotone(self) -> 'RamseyRun':
        seen_true = False
        for result in self.per_order:
            if result.arrows is True:
                seen_true = True
            elif result.arrows is False and seen_true:
                raise ValueError(f"Arrowing not monotone at order {result.order}")
        return self


class AnalysisSummary(DomainModel):
    """Structural summary of a single graph."""

    graph6: str
    order: int = Field(..., ge=0)
    edge_count: int = Field(..., ge=0)
    degrees: List[int]
    min_degree: int
    max_degree: int
    connectivity: Optional[int] = Field(None, description="None for order < 2")
    separator: Optional[List[int]] = None
    bipartiteness: BipartitenessCertificate
    blocks: List[List[int]] = Field(default_factory=list)
    articulation_points: List[int] = Field(default_factory=list)
    cycle_spectrum: Optional[CycleSpectrum] = None
    spectrum_note: Optional[str] = Field(None, description="Why the spectrum was skipped")
    decompositions: List[DecompositionReport] = Field(default_factory=list)


PAYLOAD_KINDS = {
    'construct': 'construction',
    'analyze': 'analysis',
    'ramsey': 'ramsey-run',
    'lemma': 'lemma-scan',
    'detect': 'witness',
}


class ReportEnvelope(DomainModel):
    """Self-contained JSON report written by every command."""

    schema_version: int = Field(1, ge=1)
    tool: str
    version: str
    command: str
    arguments: Dict[str, Any] = Field(default_factory=dict, description="Echo of the invocation")
    seed: Optional[int] = None
    wall_time: float = Field(0.0, ge=0)
    payload_kind: str
    payload: Any

    @model_validator(mode='after')
    def payload_matches_command(self) -> 'ReportEnvelope':
        expected = PAYLOAD_KINDS.get(self.command)
        if expected is None:
            raise ValueError(f"Unknown command '{self.command}'")
        if self.payload_kind != expected:
            raise ValueError(
                f"Command '{self.command}' carries {expected} payloads, got {self.payload_kind}"
            )
        return self

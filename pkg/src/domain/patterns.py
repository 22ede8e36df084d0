"""
Pattern Domain Models

Parameterized target patterns (star, K_{2,n}, book, cycle, wheel, clique)
with their chromatic data in closed form.
"""

from enum import Enum

from pydantic import ConfigDict, Field, model_validator

from src.domain import DomainModel
from src.exceptions import ArgumentError


class PatternKind(str, Enum):
    """Supported pattern families, named as in the CLI grammar."""
    STAR = "star"
    K2N = "k2n"
    BOOK = "book"
    CYCLE = "cycle"
    WHEEL = "wheel"
    CLIQUE = "clique"


class BurrParameters(DomainModel):
    """Order, chromatic number and chromatic surplus of a pattern."""

    order: int = Field(..., ge=1, description="Vertex count of the realization")
    chromatic_number: int = Field(..., ge=1, description="Chromatic number χ")
    surplus: int = Field(..., ge=1, description="Smallest colour class over χ-colourings (σ)")


class PatternSpec(DomainModel):
    """
    A pattern family plus its parameter, e.g. wheel:5 or k2n:3.

    Cycles and wheels need m >= 3; every other family needs a parameter >= 1.
    """

    model_config = ConfigDict(frozen=True)

    kind: PatternKind = Field(..., description="Pattern family")
    parameter: int = Field(..., description="n for star/k2n/book, m for cycle/wheel, k for clique")

    @model_validator(mode='after')
    def parameter_in_range(self) -> 'PatternSpec':
        minimum = 3 if self.kind in (PatternKind.CYCLE.value, PatternKind.WHEEL.value) else 1
        if self.parameter < minimum:
            raise ValueError(
                f"{self.kind} requires parameter >= {minimum}, got {self.parameter}"
            )
        return self

    @classmethod
    def parse(cls, text: str) -> 'PatternSpec':
        """
        Parse the `kind:parameter` grammar.

        Raises:
            ArgumentError: On unknown kinds, non-integer or out-of-range parameters
        """
        kind, sep, raw = text.strip().partition(':')
        if not sep:
            raise ArgumentError(f"Pattern '{text}' must look like kind:parameter")
        try:
            pattern_kind = PatternKind(kind.lower())
        except ValueError:
            valid = ', '.join(k.value for k in PatternKind)
            raise ArgumentError(f"Unknown pattern kind '{kind}'. Valid kinds: {valid}")
        try:
            parameter = int(raw)
        except ValueError:
            raise ArgumentError(f"Pattern parameter '{raw}' is not an integer")
        try:
            return cls(kind=pattern_kind, parameter=parameter)
        except ValueError as e:
            raise ArgumentError(str(e)) from e

    @property
    def pattern_kind(self) -> PatternKind:
        return PatternKind(self.kind)

    def burr_parameters(self) -> BurrParameters:
        """Closed-form (|V|, χ, σ) for the canonical realization."""
        p = self.parameter
        kind = self.pattern_kind
        if kind == PatternKind.STAR:
            return BurrParameters(order=p + 1, chromatic_number=2, surplus=1)
        if kind == PatternKind.K2N:
            # K_{2,1} is a path whose smaller colour class is its centre
            return BurrParameters(order=p + 2, chromatic_number=2, surplus=1 if p == 1 else 2)
        if kind == PatternKind.BOOK:
            return BurrParameters(order=p + 2, chromatic_number=3, surplus=1)
        if kind == PatternKind.CYCLE:
            if p % 2 == 0:
                return BurrParameters(order=p, chromatic_number=2, surplus=p // 2)
            return BurrParameters(order=p, chromatic_number=3, surplus=1)
        if kind == PatternKind.WHEEL:
            return BurrParameters(order=p + 1, chromatic_number=4 if p % 2 else 3, surplus=1)
        return BurrParameters(order=p, chromatic_number=p, surplus=1)

    def __str__(self) -> str:
        return f"{self.kind}:{self.parameter}"

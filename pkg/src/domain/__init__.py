"""
Domain package: the Graph value type, pattern specs and the pydantic
report models every command serializes.
"""

from fractions import Fraction
from typing import Annotated, Any, Dict

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer


def _parse_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("Rational value cannot be a boolean")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise ValueError(f"Cannot interpret {value!r} as a rational")


def _format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


# Exact rational, serialized as "p/q"
Rational = Annotated[
    Fraction,
    BeforeValidator(_parse_fraction),
    PlainSerializer(_format_fraction, return_type=str),
]


class DomainModel(BaseModel):
    """
    Base class for report models: strict fields, enum values on output and
    a JSON form in which every Fraction is a "p/q" string.
    """

    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        validate_assignment=True,
        use_enum_values=True,
        extra='forbid'
    )

    def to_dict(self) -> Dict[str, Any]:
        """JSON-compatible dictionary, ready for the report envelope."""
        return self.model_dump(mode='json')

    def to_json(self) -> str:
        return self.model_dump_json()

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'DomainModel':
        """
        Rebuild a model from to_dict output.

        Raises:
            ValidationError: If data doesn't match the model schema
        """
        return cls.model_validate(data)

    @classmethod
    def from_json(cls, json_str: str) -> 'DomainModel':
        return cls.model_validate_json(json_str)


from .graph import Graph, BipartitenessCertificate, BipartiteVerdict  # noqa: E402
from .patterns import PatternKind, PatternSpec, BurrParameters  # noqa: E402
from .reports import (  # noqa: E402
    WitnessReport,
    CycleSpectrum,
    MomentReport,
    DecompositionReport,
    LemmaVerdict,
    LemmaParameters,
    ScanSummary,
    OrderResult,
    RamseyRun,
    SearchConfig,
    SearchMode,
    AnalysisSummary,
    ReportEnvelope,
)

__all__ = [
    'DomainModel',
    'Rational',
    'Graph',
    'BipartitenessCertificate',
    'BipartiteVerdict',
    'PatternKind',
    'PatternSpec',
    'BurrParameters',
    'WitnessReport',
    'CycleSpectrum',
    'MomentReport',
    'DecompositionReport',
    'LemmaVerdict',
    'LemmaParameters',
    'ScanSummary',
    'OrderResult',
    'RamseyRun',
    'SearchConfig',
    'SearchMode',
    'AnalysisSummary',
    'ReportEnvelope',
]

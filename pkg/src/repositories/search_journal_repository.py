"""
Search journal repository - resumability checkpoint of an arrowing search.

Each line records one finished generation subtree:
order<TAB>root graph6<TAB>graphs examined<TAB>least witness graph6 or '-'.
The first comment line names the pattern pair the journal belongs to.
"""

import logging
from typing import Dict, Optional

from pydantic import Field

from src.domain import DomainModel
from src.domain.patterns import PatternSpec
from src.exceptions import ArgumentError
from src.repositories.base import LineRepository


logger = logging.getLogger(__name__)

_NO_WITNESS = '-'


class JournalEntry(DomainModel):
    """One finished subtree of an arrowing search."""

    order: int = Field(..., ge=0)
    root: str = Field(..., description="graph6 of the subtree root")
    examined: int = Field(..., ge=0)
    witness: Optional[str] = Field(None, description="Least surviving graph6 in the subtree")


class SearchJournalRepository(LineRepository[JournalEntry]):
    """Append-only journal keyed by (order, subtree root)."""

    def decode(self, line: str, line_number: int) -> JournalEntry:
        fields = line.split('\t')
        if len(fields) != 4:
            raise ArgumentError(f"Journal {self.path} line {line_number}: expected 4 tab-separated fields")
        order, root, examined, witness = fields
        try:
            return JournalEntry(
                order=int(order),
                root=root,
                examined=int(examined),
                witness=None if witness == _NO_WITNESS else witness
            )
        except ValueError as e:
            raise ArgumentError(f"Journal {self.path} line {line_number}: {e}") from e

    def encode(self, record: JournalEntry) -> str:
        witness = record.witness if record.witness is not None else _NO_WITNESS
        return f"{record.order}\t{record.root}\t{record.examined}\t{witness}"

    @staticmethod
    def _header(g: PatternSpec, h: PatternSpec) -> str:
        return f"arrowing g={g} h={h}"

    def open_run(self, g: PatternSpec, h: PatternSpec) -> None:
        """
        Bind the journal to a pattern pair, writing the header on first use.

        Raises:
            ArgumentError: When the journal belongs to a different pair
        """
        expected = self._header(g, h)
        if self.path.exists():
            with self.path.open('r', encoding='ascii', errors='replace') as f:
                first = f.readline().strip()
            if first and first != f"# {expected}":
                raise ArgumentError(f"Journal {self.path} belongs to another run ({first.lstrip('# ')})")
            if first:
                logger.info(f"Resuming from journal {self.path}")
                return
        self.write_comment(expected)

    def completed(self, order: int) -> Dict[str, JournalEntry]:
        """Finished subtrees at `order`, by root graph6."""
        return {entry.root: entry for entry in self.iter_records() if entry.order == order}

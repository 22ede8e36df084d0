"""
Base Repository Interfaces

Abstract base for the line-oriented text stores the toolkit persists to
(graph6 corpora and search journals). Records are appended, never rewritten.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, Iterable, Iterator, List, Optional, TypeVar, Union

from src.exceptions import ArgumentError


# Generic type for stored records
T = TypeVar('T')


class LineRepository(ABC, Generic[T]):
    """
    Abstract append-only repository over a text file, one record per line.

    Blank lines and lines starting with '#' are comments. Type parameter T is
    the record type returned by this repository.
    """

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)

    @abstractmethod
    def decode(self, line: str, line_number: int) -> T:
        """
        Parse one non-comment line.

        Args:
            line: Line content without the trailing newline
            line_number: 1-based line number, for error reporting

        Returns:
            Record instance
        """

    @abstractmethod
    def encode(self, record: T) -> str:
        """Render a record as one line, without newline."""

    def invalid_line(self, line_number: int, offset: int) -> Exception:
        """Error for a line holding a byte outside ASCII."""
        return ArgumentError(f"{self.path} line {line_number}: non-ASCII byte at offset {offset}")

    def exists(self) -> bool:
        return self.path.exists()

    def iter_records(self) -> Iterator[T]:
        """Stream every record in file order."""
        if not self.path.exists():
            return
        with self.path.open('rb') as f:
            for line_number, raw in enumerate(f, start=1):
                try:
                    line = raw.decode('ascii').rstrip('\r\n')
                except UnicodeDecodeError as e:
                    raise self.invalid_line(line_number, e.start) from e
                if not line.strip() or line.lstrip().startswith('#'):
                    continue
                yield self.decode(line, line_number)

    def find_all(self, limit: Optional[int] = None, offset: int = 0) -> List[T]:
        """
        Find all records with optional pagination.

        Args:
            limit: Maximum number of results (None for all)
            offset: Number of records to skip

        Returns:
            List of records
        """
        out = []
        for i, record in enumerate(self.iter_records()):
            if i < offset:
                continue
            if limit is not None and len(out) >= limit:
                break
            out.append(record)
        return out

    def append(self, records: Iterable[T]) -> int:
        """
        Append records, creating the file and parent directories as needed.

        Returns:
            Number of records written
        """
        self.path.parent.mkdir(parents=True, exist_ok=True)
        count = 0
        with self.path.open('a', encoding='ascii') as f:
            for record in records:
                f.write(self.encode(record) + '\n')
                count += 1
        return count

    def write_comment(self, text: str) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open('a', encoding='ascii') as f:
            f.write(f"# {text}\n")

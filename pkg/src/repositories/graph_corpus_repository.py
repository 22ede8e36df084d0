"""
Graph corpus repository - graph6 files, one graph per line.
"""

import logging
from typing import Iterable, List

from src.domain.graph import Graph
from src.exceptions import GraphParseError
from src.repositories.base import LineRepository
from src.utils.graph6 import parse_graph6, write_graph6


logger = logging.getLogger(__name__)


def _decode_line(line: str, line_number: int) -> Graph:
    try:
        return parse_graph6(line)
    except GraphParseError as e:
        message = e.detail.split(': ', 1)[-1]
        raise GraphParseError(message, e.offset, line=line_number) from e


def parse_corpus(lines: Iterable[str]) -> List[Graph]:
    """Parse corpus text already in memory (e.g. read from stdin)."""
    graphs = []
    for line_number, raw in enumerate(lines, start=1):
        line = raw.rstrip('\n')
        if not line.strip() or line.lstrip().startswith('#'):
            continue
        graphs.append(_decode_line(line, line_number))
    return graphs


class GraphCorpusRepository(LineRepository[Graph]):
    """graph6 corpus on disk; parse errors carry line number and byte offset."""

    def decode(self, line: str, line_number: int) -> Graph:
        return _decode_line(line, line_number)

    def encode(self, record: Graph) -> str:
        return write_graph6(record)

    def invalid_line(self, line_number: int, offset: int) -> Exception:
        return GraphParseError("non-ASCII byte", offset, line=line_number)

    def load(self) -> List[Graph]:
        graphs = self.find_all()
        logger.info(f"Loaded {len(graphs)} graphs from {self.path}")
        return graphs

"""Repository package initialization."""

from .base import LineRepository
from .graph_corpus_repository import GraphCorpusRepository
from .search_journal_repository import JournalEntry, SearchJournalRepository

__all__ = [
    'LineRepository',
    'GraphCorpusRepository',
    'JournalEntry',
    'SearchJournalRepository',
]

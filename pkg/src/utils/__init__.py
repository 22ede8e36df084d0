# src/utils/__init__.py
from .bitsets import from_iterable, full_mask, iter_bits, popcount, to_list

__all__ = [
    'from_iterable',
    'full_mask',
    'iter_bits',
    'popcount',
    'to_list',
]

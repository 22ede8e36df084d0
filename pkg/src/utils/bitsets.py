"""
Bitset helpers for vertex sets.

A vertex set over a graph of order n is a plain int whose bit v is set when
vertex v belongs to the set. Bits at positions >= n are never set.
"""

from typing import Iterable, Iterator, List


def popcount(mask: int) -> int:
    """Number of vertices in the set."""
    return mask.bit_count()


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the vertices of a set in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: int) -> List[int]:
    """Sorted vertex list, the JSON form of a vertex set."""
    return list(iter_bits(mask))


def from_iterable(vertices: Iterable[int]) -> int:
    """Build a set from vertex indices."""
    mask = 0
    for v in vertices:
        if v < 0:
            raise ValueError(f"Vertex index must be non-negative, got {v}")
        mask |= 1 << v
    return mask


def full_mask(order: int) -> int:
    """The set of all vertices of a graph of the given order."""
    return (1 << order) - 1


def lowest(mask: int) -> int:
    """Least vertex of a non-empty set."""
    return (mask & -mask).bit_length() - 1


def first_k(mask: int, k: int) -> List[int]:
    """The k least vertices of the set."""
    out = []
    for v in iter_bits(mask):
        if len(out) == k:
            break
        out.append(v)
    return out


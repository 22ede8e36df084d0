"""
graph6 codec.

Encodes the upper triangle of the adjacency matrix column by column
(x(0,1), x(0,2), x(1,2), x(0,3), ...) in 6-bit groups offset by 63, after a
size prefix: one byte for N <= 62, '~' plus three bytes up to 258047, '~~'
plus six bytes beyond that.
"""

from typing import List

from src.domain.graph import Graph
from src.exceptions import GraphParseError


HEADER = ">>graph6<<"
_SMALL_LIMIT = 62
_MEDIUM_LIMIT = 258047
_LARGE_LIMIT = 68719476735


def _size_bytes(n: int) -> List[int]:
    if n <= _SMALL_LIMIT:
        return [n + 63]
    if n <= _MEDIUM_LIMIT:
        return [126] + [((n >> shift) & 63) + 63 for shift in (12, 6, 0)]
    if n <= _LARGE_LIMIT:
        return [126, 126] + [((n >> shift) & 63) + 63 for shift in (30, 24, 18, 12, 6, 0)]
    raise ValueError(f"Order {n} exceeds the graph6 size limit")


def write_graph6(g: Graph) -> str:
    """Encode a graph as a graph6 string without header or newline."""
    out = _size_bytes(g.order)
    rows = g.rows
    group = 0
    filled = 0
    for j in range(1, g.order):
        column = rows[j]
        for i in range(j):
            group = (group << 1) | ((column >> i) & 1)
            filled += 1
            if filled == 6:
                out.append(group + 63)
                group = 0
                filled = 0
    if filled:
        out.append((group << (6 - filled)) + 63)
    return bytes(out).decode('ascii')


def _decode_size(data: bytes) -> tuple:
    """Return (order, index of first data byte)."""
    if not data:
        raise GraphParseError("empty input", 0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        width, start = 6, 2
    else:
        width, start = 3, 1
    if len(data) < start + width:
        raise GraphParseError("truncated size field", len(data))
    n = 0
    for b in data[start:start + width]:
        n = (n << 6) | (b - 63)
    return n, start + width


def parse_graph6(text: str) -> Graph:
    """
    Decode one graph6 record.

    Leading/trailing whitespace and an optional '>>graph6<<' header are
    ignored.

    Raises:
        GraphParseError: With the byte offset of the first malformed byte
    """
    stripped = text.strip()
    skipped = len(text) - len(text.lstrip())
    if stripped.startswith(HEADER):
        stripped = stripped[len(HEADER):]
        skipped += len(HEADER)

    try:
        data = stripped.encode('ascii')
    except UnicodeEncodeError as e:
        raise GraphParseError("non-ASCII character", skipped + e.start) from e

    for offset, b in enumerate(data):
        if not 63 <= b <= 126:
            raise GraphParseError(f"byte {b!r} outside the graph6 range 63..126", skipped + offset)

    n, start = _decode_size(data)
    pairs = n * (n - 1) // 2
    needed = (pairs + 5) // 6
    body = data[start:]
    if len(body) < needed:
        raise GraphParseError(
            f"expected {needed} data bytes for order {n}, got {len(body)}",
            skipped + len(data)
        )
    if len(body) > needed:
        raise GraphParseError("trailing bytes after graph data", skipped + start + needed)

    rows = [0] * n
    bit_index = 0
    for j in range(1, n):
        for i in range(j):
            b = body[bit_index // 6] - 63
            if (b >> (5 - bit_index % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            bit_index += 1

    padding = needed * 6 - pairs
    if padding and (body[-1] - 63) & ((1 << padding) - 1):
        raise GraphParseError("non-zero padding bits", skipped + start + needed - 1)

    return Graph(n, rows)

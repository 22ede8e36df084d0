"""
Report plumbing for the CLI: seed derivation, the JSON envelope on stdout
and human-readable tables on stderr.
"""

import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, TextIO

from config.settings import APP_TITLE, VERSION, settings
from src.domain.reports import PAYLOAD_KINDS, ReportEnvelope
from src.exceptions import ExitCode


logger = logging.getLogger(__name__)

TOOL_NAME = "ramsey-lab"


@dataclass
class CommandResult:
    """What a subcommand hands back to the dispatcher."""

    payload: Any
    exit_code: ExitCode = ExitCode.OK
    table: List[Sequence[Any]] = field(default_factory=list)
    headers: Sequence[str] = ()
    raw_output: Optional[str] = None


def derive_seed(command: str, arguments: Dict[str, Any]) -> int:
    """
    Default seed: a hash of the command and its flags, so the same
    invocation always replays the same random streams.
    """
    material = json.dumps({'command': command, **arguments}, sort_keys=True, default=str)
    digest = hashlib.sha256(material.encode('utf-8')).digest()
    return int.from_bytes(digest[:4], 'big')


def build_envelope(
    command: str, arguments: Dict[str, Any], seed: Optional[int], wall_time: float, payload: Any
) -> ReportEnvelope:
    return ReportEnvelope(
        schema_version=settings.report_schema_version,
        tool=TOOL_NAME,
        version=VERSION,
        command=command,
        arguments=arguments,
        seed=seed,
        wall_time=wall_time,
        payload_kind=PAYLOAD_KINDS[command],
        payload=payload
    )


def write_envelope(envelope: ReportEnvelope, stream: Optional[TextIO] = None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(envelope.to_dict(), indent=2))
    stream.write('\n')


def write_table(headers: Sequence[str], rows: List[Sequence[Any]], stream: Optional[TextIO] = None) -> None:
    """Fixed-width table; nothing is written for an empty table."""
    if not rows:
        return
    stream = stream or sys.stderr
    cells = [[str(h) for h in headers]] + [[('-' if c is None else str(c)) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    for index, row in enumerate(cells):
        stream.write('  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() + '\n')
        if index == 0:
            stream.write('  '.join('-' * width for width in widths) + '\n')


def write_banner(command: str, seed: Optional[int], stream: Optional[TextIO] = None) -> None:
    stream = stream or sys.stderr
    stream.write(f"{APP_TITLE} {VERSION} - {command} (seed {seed})\n")

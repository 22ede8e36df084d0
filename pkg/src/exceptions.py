"""
Ramsey Lab Exceptions

Domain exception hierarchy and the standardized error payload used by the CLI.
Every exception carries the process exit code its command ends with.
"""

import logging
from datetime import datetime, timezone
from enum import IntEnum
from typing import Any, Dict, List, Optional, Union


logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """Stable process exit codes."""
    OK = 0
    COUNTEREXAMPLE = 1
    USAGE = 2
    CAPACITY = 3


class RamseyLabError(Exception):
    """Base class for all domain errors."""

    error_type = "internal"
    exit_code = ExitCode.USAGE

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class ArgumentError(RamseyLabError, ValueError):
    """Operation called with arguments outside its domain."""

    error_type = "argument"


class UnknownLemmaError(ArgumentError):
    """Lemma id not in the registry."""

    def __init__(self, lemma_id: str, valid_ids: List[str]):
        detail = f"Unknown lemma id '{lemma_id}'. Valid ids: {', '.join(valid_ids)}"
        super().__init__(detail)
        self.lemma_id = lemma_id
        self.valid_ids = valid_ids


class GraphParseError(RamseyLabError, ValueError):
    """Malformed graph6 input."""

    error_type = "parse"

    def __init__(self, message: str, offset: int, line: Optional[int] = None):
        where = f"byte {offset}" if line is None else f"line {line}, byte {offset}"
        super().__init__(f"graph6 parse error at {where}: {message}")
        self.offset = offset
        self.line = line


class CapacityError(RamseyLabError):
    """Input exceeds a representation cap or an exhaustive-search guard."""

    error_type = "capacity"
    exit_code = ExitCode.CAPACITY


class HypothesisNotMetError(RamseyLabError):
    """A lemma or bound was asked for on an input that violates its hypotheses."""

    error_type = "hypothesis"

    def __init__(self, detail: str, lemma_id: Optional[str] = None):
        super().__init__(detail)
        self.lemma_id = lemma_id


class VerificationError(RamseyLabError):
    """A construction failed its own freeness verification."""

    error_type = "verification"
    exit_code = ExitCode.COUNTEREXAMPLE


def create_error_response(
    error_type: str,
    message: str,
    details: Union[Dict[str, Any], List[Dict[str, Any]], None] = None,
    exit_code: int = ExitCode.USAGE
) -> Dict[str, Any]:
    """
    Create standardized error payload.

    Args:
        error_type: Type of error (argument, parse, capacity, hypothesis, verification, internal)
        message: Main error message
        details: Additional error details
        exit_code: Process exit code the command ends with

    Returns:
        Standardized error dictionary
    """
    response = {
        "error": {
            "type": error_type,
            "message": message,
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "exit_code": int(exit_code)
        }
    }

    if details:
        response["error"]["details"] = details

    return response


def error_response_for(exc: BaseException) -> Dict[str, Any]:
    """Map any exception onto the standardized payload, logging by severity."""
    if isinstance(exc, RamseyLabError):
        details: Dict[str, Any] = {}
        if isinstance(exc, GraphParseError):
            details = {"offset": exc.offset, "line": exc.line}
        elif isinstance(exc, UnknownLemmaError):
            details = {"valid_ids": exc.valid_ids}
        elif isinstance(exc, HypothesisNotMetError) and exc.lemma_id:
            details = {"lemma_id": exc.lemma_id}
        if exc.exit_code == ExitCode.CAPACITY:
            logger.warning(f"Capacity error: {exc.detail}")
        else:
            logger.info(f"{exc.error_type} error: {exc.detail}")
        return create_error_response(exc.error_type, exc.detail, details or None, exc.exit_code)

    if isinstance(exc, ValueError):
        logger.info(f"Invalid value: {exc}")
        return create_error_response("argument", str(exc), None, ExitCode.USAGE)

    logger.error(f"Unexpected error: {exc}", exc_info=True)
    return create_error_response("internal", "An unexpected error occurred.", None, ExitCode.USAGE)


def exit_code_for(exc: BaseException) -> ExitCode:
    """Exit code for an exception raised by a command."""
    if isinstance(exc, RamseyLabError):
        return ExitCode(exc.exit_code)
    return ExitCode.USAGE

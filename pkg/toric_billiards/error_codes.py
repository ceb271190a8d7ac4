"""
Error Codes and Machine-Readable Messages

Centralized error code catalogue. Each exception family maps to a code, a
short title, a suggestion and the process exit status the command line
uses for it.
"""

from dataclasses import dataclass
from typing import Dict, Optional

from .constants import ExitCode
from .exceptions import (
    BadResidues,
    BadSum,
    CapacityExceeded,
    ConfigurationError,
    GraphValidationError,
    InternalMismatch,
    LabelingError,
    NoClosedForm,
    NotACycle,
    NotAForest,
    NotATreeEdge,
    OddRefractionCycle,
    OrbitTooLarge,
    RefractionPresent,
    RootOfUnityMismatch,
    StateError,
    StructureError,
    UnsupportedRank,
    UsageError,
    ValidationError,
    VerificationError,
)


@dataclass
class ErrorInfo:
    """Information about an error family"""

    code: str
    title: str
    suggestion: str
    exit_code: ExitCode


# Error code catalog
ERROR_CATALOG: Dict[str, ErrorInfo] = {
    # Input errors (ERR-1xx)
    "ERR-101": ErrorInfo(
        code="ERR-101",
        title="Invalid Graph",
        suggestion="Edges need distinct endpoints in 1..n, no repeats, "
        "and a kind of 'reflect' or 'refract'.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-102": ErrorInfo(
        code="ERR-102",
        title="Invalid Labeling",
        suggestion="Labels must list every value 1..n exactly once.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-103": ErrorInfo(
        code="ERR-103",
        title="Invalid State",
        suggestion="Use i in 1..n and eps equal to 1 or -1.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-104": ErrorInfo(
        code="ERR-104",
        title="Window Residues Repeat",
        suggestion="Window entries must be pairwise distinct modulo n.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-105": ErrorInfo(
        code="ERR-105",
        title="Window Sum Wrong",
        suggestion="Window entries must sum to n(n+1)/2.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-106": ErrorInfo(
        code="ERR-106",
        title="Invalid Input",
        suggestion="Check the JSON input against the documented formats.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-107": ErrorInfo(
        code="ERR-107",
        title="Invalid Command Line",
        suggestion="Run with --help to list subcommands and flags.",
        exit_code=ExitCode.USAGE,
    ),
    # Structure errors (ERR-2xx)
    "ERR-201": ErrorInfo(
        code="ERR-201",
        title="Odd Refraction Cycle",
        suggestion="Use an even number of refraction edges on the cycle.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-202": ErrorInfo(
        code="ERR-202",
        title="Not A Forest",
        suggestion="The forest formula needs an acyclic graph.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-203": ErrorInfo(
        code="ERR-203",
        title="Not A Cycle",
        suggestion="The cycle formula needs the graph to be one n-cycle.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-204": ErrorInfo(
        code="ERR-204",
        title="Not A Tree Edge",
        suggestion="Pick two adjacent vertices of a tree component.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-205": ErrorInfo(
        code="ERR-205",
        title="Refraction Present",
        suggestion="Toric promotion needs a graph without refraction edges.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-206": ErrorInfo(
        code="ERR-206",
        title="No Closed Form",
        suggestion="Use the 'orbit' command to brute-force the size.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-207": ErrorInfo(
        code="ERR-207",
        title="Unsupported Rank",
        suggestion="This operation is only available for the stated n.",
        exit_code=ExitCode.USAGE,
    ),
    # Capacity errors (ERR-3xx)
    "ERR-301": ErrorInfo(
        code="ERR-301",
        title="Capacity Exceeded",
        suggestion="Lower n or raise the configured limit.",
        exit_code=ExitCode.CAPACITY,
    ),
    "ERR-302": ErrorInfo(
        code="ERR-302",
        title="Orbit Too Large",
        suggestion="Raise render.strip_cap or pick a smaller orbit.",
        exit_code=ExitCode.CAPACITY,
    ),
    # Verification errors (ERR-4xx)
    "ERR-401": ErrorInfo(
        code="ERR-401",
        title="Verification Mismatch",
        suggestion="A computed value disagrees with its oracle; "
        "rerun with --log-level DEBUG.",
        exit_code=ExitCode.MISMATCH,
    ),
    "ERR-402": ErrorInfo(
        code="ERR-402",
        title="Internal Mismatch",
        suggestion="Two independent computations disagree.",
        exit_code=ExitCode.MISMATCH,
    ),
    "ERR-403": ErrorInfo(
        code="ERR-403",
        title="Root Of Unity Mismatch",
        suggestion="A root-of-unity average is not near an integer.",
        exit_code=ExitCode.MISMATCH,
    ),
    # Configuration errors (ERR-5xx)
    "ERR-501": ErrorInfo(
        code="ERR-501",
        title="Configuration Error",
        suggestion="Compare your file with config.yaml.example.",
        exit_code=ExitCode.USAGE,
    ),
    "ERR-599": ErrorInfo(
        code="ERR-599",
        title="Unexpected Error",
        suggestion="Rerun with --log-level DEBUG and report the traceback.",
        exit_code=ExitCode.INTERNAL,
    ),
}

# Most specific classes first
_EXCEPTION_CODES = [
    (GraphValidationError, "ERR-101"),
    (LabelingError, "ERR-102"),
    (StateError, "ERR-103"),
    (BadResidues, "ERR-104"),
    (BadSum, "ERR-105"),
    (UsageError, "ERR-107"),
    (ValidationError, "ERR-106"),
    (OddRefractionCycle, "ERR-201"),
    (NotAForest, "ERR-202"),
    (NotACycle, "ERR-203"),
    (NotATreeEdge, "ERR-204"),
    (RefractionPresent, "ERR-205"),
    (NoClosedForm, "ERR-206"),
    (UnsupportedRank, "ERR-207"),
    (StructureError, "ERR-206"),
    (OrbitTooLarge, "ERR-302"),
    (CapacityExceeded, "ERR-301"),
    (InternalMismatch, "ERR-402"),
    (RootOfUnityMismatch, "ERR-403"),
    (VerificationError, "ERR-401"),
    (ConfigurationError, "ERR-501"),
]


def get_error_info(error_code: str) -> Optional[ErrorInfo]:
    """
    Get error information by code.

    Args:
        error_code: Error code (e.g., "ERR-101")

    Returns:
        ErrorInfo object or None if code not found
    """
    return ERROR_CATALOG.get(error_code)


def error_code_for(exc: BaseException) -> str:
    """Return the catalogue code for an exception instance."""
    for exc_type, code in _EXCEPTION_CODES:
        if isinstance(exc, exc_type):
            return code
    return "ERR-599"


def exit_code_for(exc: BaseException) -> ExitCode:
    """Return the process exit status for an exception instance."""
    return ERROR_CATALOG[error_code_for(exc)].exit_code


def format_error_line(exc: BaseException) -> str:
    """
    Format an exception as a single machine-parsable line.

    Args:
        exc: The exception to describe

    Returns:
        A line like ``error code=ERR-101 kind=GraphValidationError
        message="..."`` with newlines and quotes escaped
    """
    message = str(exc).replace("\\", "\\\\").replace('"', '\\"')
    message = message.replace("\n", " ")
    return (
        f"error code={error_code_for(exc)} "
        f"kind={type(exc).__name__} "
        f'message="{message}"'
    )


def get_error_dict(exc: BaseException) -> Dict[str, str]:
    """
    Get error information as a dictionary for JSON reports.

    Args:
        exc: The exception to describe

    Returns:
        Dictionary with error information
    """
    info = ERROR_CATALOG[error_code_for(exc)]
    return {
        "error_code": info.code,
        "title": info.title,
        "kind": type(exc).__name__,
        "message": str(exc),
        "suggestion": info.suggestion,
    }

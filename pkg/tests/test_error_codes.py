"""Tests for the error catalogue and exit status mapping"""

import pytest

from toric_billiards.constants import ExitCode
from toric_billiards.error_codes import (
    ERROR_CATALOG,
    _EXCEPTION_CODES,
    error_code_for,
    exit_code_for,
    format_error_line,
    get_error_dict,
    get_error_info,
)
from toric_billiards.exceptions import (
    BadSum,
    CapacityExceeded,
    ConfigurationError,
    GraphValidationError,
    InternalMismatch,
    OddRefractionCycle,
    OrbitTooLarge,
    UsageError,
    ValidationError,
    VerificationError,
)


def test_every_mapped_code_is_catalogued():
    for _, code in _EXCEPTION_CODES:
        assert get_error_info(code) is not None
    for code, info in ERROR_CATALOG.items():
        assert info.code == code


@pytest.mark.parametrize(
    "exc,code,status",
    [
        (GraphValidationError("loop", field="edges"), "ERR-101", 2),
        (BadSum("sum"), "ERR-105", 2),
        (UsageError("flag"), "ERR-107", 2),
        (ValidationError("generic"), "ERR-106", 2),
        (OddRefractionCycle(cycle=[1, 2, 3]), "ERR-201", 2),
        (OrbitTooLarge("strip", limit=4, requested=5), "ERR-302", 3),
        (CapacityExceeded("big", limit=9, requested=10), "ERR-301", 3),
        (InternalMismatch("gap"), "ERR-402", 1),
        (VerificationError("lemma"), "ERR-401", 1),
        (ConfigurationError("bad", config_key="render.width"), "ERR-501", 2),
    ],
)
def test_codes_and_exit_status(exc, code, status):
    assert error_code_for(exc) == code
    assert exit_code_for(exc) == ExitCode(status)


def test_unknown_exceptions():
    assert error_code_for(KeyError("x")) == "ERR-599"
    assert exit_code_for(KeyError("x")) is ExitCode.INTERNAL


def test_error_line_is_single_line_and_escaped():
    exc = ValidationError('bad "value"\nsecond line', field="labels")
    line = format_error_line(exc)
    assert "\n" not in line
    assert line.startswith("error code=ERR-106 kind=ValidationError ")
    assert '\\"value\\"' in line


def test_error_dict():
    info = get_error_dict(GraphValidationError("loop at 2", field="edges"))
    assert info["error_code"] == "ERR-101"
    assert info["kind"] == "GraphValidationError"
    assert "loop at 2" in info["message"]
    assert info["suggestion"]


def test_unknown_code():
    assert get_error_info("ERR-000") is None

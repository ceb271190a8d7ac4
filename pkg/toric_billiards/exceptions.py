"""
Custom Exception Classes

This module defines the exception hierarchy for the toric billiards
package. Every error raised on purpose derives from ToricBilliardsError so
the command line can map it to an error code and exit status.
"""

from typing import Any, Optional


class ToricBilliardsError(Exception):
    """Base exception for all toric billiards errors"""

    pass


class ConfigurationError(ToricBilliardsError):
    """Raised when configuration is invalid or missing"""

    def __init__(self, message: str, config_key: str = None):
        """
        Initialize configuration error.

        Args:
            message: Error description
            config_key: The configuration key that caused the error
        """
        self.config_key = config_key
        if config_key:
            message = f"Configuration error for '{config_key}': {message}"
        super().__init__(message)


# =============================================================================
# Input validation
# =============================================================================


class ValidationError(ToricBilliardsError):
    """Raised when an input object fails validation"""

    def __init__(self, message: str, field: str = None, value: Any = None):
        """
        Initialize validation error.

        Args:
            message: Error description
            field: The field that failed validation
            value: The value that failed validation
        """
        self.field = field
        self.value = value
        if field:
            message = f"Validation failed for '{field}': {message}"
        super().__init__(message)


class GraphValidationError(ValidationError):
    """Raised for loops, duplicate edges, bad vertices or material tags"""

    pass


class LabelingError(ValidationError):
    """Raised when a labeling is not a bijection onto 1..n"""

    pass


class StateError(ValidationError):
    """Raised when a state has a bad index or orientation"""

    pass


class UsageError(ValidationError):
    """Raised for malformed command lines"""

    pass


class WindowError(ValidationError):
    """Raised when a window does not describe an affine permutation"""

    pass


class BadResidues(WindowError):
    """Window entries are not pairwise distinct modulo n"""

    pass


class BadSum(WindowError):
    """Window entries do not have the required sum"""

    pass


# =============================================================================
# Structural preconditions
# =============================================================================


class StructureError(ToricBilliardsError):
    """Raised when a graph lacks the structure an operation needs"""

    pass


class OddRefractionCycle(StructureError):
    """A cycle carries an odd number of refraction edges"""

    def __init__(self, message: str = None, cycle: Optional[list] = None):
        self.cycle = cycle
        if message is None:
            message = "cycle has an odd number of refraction edges"
        if cycle:
            message = f"{message} (through vertices {cycle})"
        super().__init__(message)


class NotAForest(StructureError):
    """The graph contains a cycle"""

    pass


class NotACycle(StructureError):
    """The graph is not a single n-cycle"""

    pass


class NotATreeEdge(StructureError):
    """The vertex pair is not an edge of a tree component"""

    pass


class RefractionPresent(StructureError):
    """Toric promotion is only defined without refraction edges"""

    pass


class NoClosedForm(StructureError):
    """Neither the forest nor the cycle formula applies"""

    pass


# =============================================================================
# Capacity
# =============================================================================


class CapacityExceeded(ToricBilliardsError):
    """Raised when a request exceeds a documented computation limit"""

    def __init__(self, message: str, limit: int = None, requested: int = None):
        """
        Initialize capacity error.

        Args:
            message: Error description
            limit: The configured limit
            requested: The requested size
        """
        self.limit = limit
        self.requested = requested
        if limit is not None and requested is not None:
            message = f"{message} (requested {requested}, limit {limit})"
        super().__init__(message)


class OrbitTooLarge(CapacityExceeded):
    """An orbit has more states than a renderer accepts"""

    pass


class UnsupportedRank(ToricBilliardsError):
    """Raised when an operation is only available for some n"""

    def __init__(self, message: str, n: int = None):
        self.n = n
        if n is not None:
            message = f"{message} (got n={n})"
        super().__init__(message)


# =============================================================================
# Verification
# =============================================================================


class VerificationError(ToricBilliardsError):
    """Raised when a computed value disagrees with its oracle"""

    def __init__(self, message: str, context: Optional[dict] = None):
        self.context = context or {}
        if self.context:
            details = ", ".join(f"{k}={v}" for k, v in self.context.items())
            message = f"{message} [{details}]"
        super().__init__(message)


class InternalMismatch(VerificationError):
    """Two independent computations of the same quantity disagree"""

    pass


class RootOfUnityMismatch(VerificationError):
    """A root-of-unity average is not within tolerance of an integer"""

    pass

"""
Validation Utilities

Validation of the JSON payloads accepted by the command line: graphs,
labelings, states and affine windows. Validators return a
ValidationResult; the domain constructors turn failures into exceptions.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .constants import EdgeMaterial, EnumerationDefaults
from .exceptions import ValidationError

logger = logging.getLogger(__name__)


@dataclass
class ValidationResult:
    """Result of a validation operation"""

    valid: bool
    error: Optional[str] = None
    warnings: Optional[List[str]] = None
    field: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        result: Dict[str, Any] = {"valid": self.valid}
        if self.error:
            result["error"] = self.error
        if self.field:
            result["field"] = self.field
        if self.warnings:
            result["warnings"] = self.warnings
        return result


def _fail(error: str, field: str = None) -> ValidationResult:
    return ValidationResult(valid=False, error=error, field=field)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _edge_parts(edge: Any):
    """Split an edge given as a dict or a (u, v, kind) sequence."""
    if isinstance(edge, dict):
        return edge.get("u"), edge.get("v"), edge.get("kind")
    if isinstance(edge, (list, tuple)) and len(edge) == 3:
        return edge[0], edge[1], edge[2]
    return None


def validate_graph_payload(raw: Any) -> ValidationResult:
    """
    Validate a graph description.

    Accepted form: ``{"n": int, "edges": [{"u": int, "v": int,
    "kind": "reflect"|"refract"}, ...]}``; edges may also be given as
    ``[u, v, kind]`` triples.

    Args:
        raw: Parsed JSON object

    Returns:
        ValidationResult
    """
    if not isinstance(raw, dict):
        return _fail("expected an object with 'n' and 'edges'")

    n = raw.get("n")
    if not _is_int(n):
        return _fail("must be an integer", field="n")
    if n < EnumerationDefaults.MIN_N:
        return _fail(
            f"must be at least {EnumerationDefaults.MIN_N}, got {n}",
            field="n",
        )

    edges = raw.get("edges", [])
    if not isinstance(edges, list):
        return _fail("must be a list", field="edges")

    seen = set()
    for position, edge in enumerate(edges):
        field = f"edges[{position}]"
        parts = _edge_parts(edge)
        if parts is None:
            return _fail("expected {u, v, kind} or [u, v, kind]", field=field)
        u, v, kind = parts
        if not (_is_int(u) and _is_int(v)):
            return _fail("endpoints must be integers", field=field)
        if not (1 <= u <= n and 1 <= v <= n):
            return _fail(f"endpoint out of range 1..{n}", field=field)
        if u == v:
            return _fail(f"loop at vertex {u}", field=field)
        if kind is None:
            return _fail("missing material kind", field=field)
        try:
            EdgeMaterial.normalize(kind)
        except ValueError:
            return _fail(f"unknown material kind {kind!r}", field=field)
        pair = (min(u, v), max(u, v))
        if pair in seen:
            return _fail(f"duplicate edge {pair}", field=field)
        seen.add(pair)

    return ValidationResult(valid=True)


def validate_labels(labels: Any, n: Optional[int] = None) -> ValidationResult:
    """
    Validate a label sequence as a bijection onto 1..n.

    Args:
        labels: Sequence with labels[v-1] = label of vertex v
        n: Expected length, if known

    Returns:
        ValidationResult
    """
    if not isinstance(labels, (list, tuple)):
        return _fail("must be a list", field="labels")
    if n is not None and len(labels) != n:
        return _fail(
            f"expected {n} labels, got {len(labels)}", field="labels"
        )
    if not all(_is_int(x) for x in labels):
        return _fail("labels must be integers", field="labels")
    if sorted(labels) != list(range(1, len(labels) + 1)):
        return _fail(
            f"not a bijection onto 1..{len(labels)}: {list(labels)}",
            field="labels",
        )
    return ValidationResult(valid=True)


def validate_state_payload(
    raw: Any, n: Optional[int] = None
) -> ValidationResult:
    """
    Validate a state ``{"labels": [...], "i": int, "eps": 1|-1}``.

    Args:
        raw: Parsed JSON object
        n: Vertex count of the graph the state belongs to

    Returns:
        ValidationResult
    """
    if not isinstance(raw, dict):
        return _fail("expected an object with 'labels', 'i' and 'eps'")

    result = validate_labels(raw.get("labels"), n)
    if not result.valid:
        return result

    size = len(raw["labels"])
    i = raw.get("i", 1)
    if not _is_int(i) or not 1 <= i <= size:
        return _fail(f"must be an integer in 1..{size}", field="i")

    eps = raw.get("eps", 1)
    if not _is_int(eps) or eps not in (1, -1):
        return _fail("must be 1 or -1", field="eps")

    warnings = []
    if "i" not in raw or "eps" not in raw:
        warnings.append("missing 'i' or 'eps' defaulted to 1")
    return ValidationResult(valid=True, warnings=warnings or None)


def validate_window_payload(raw: Any) -> ValidationResult:
    """
    Validate the shape of ``{"window": [...]}``.

    Residue and sum checks belong to affine_from_window.

    Args:
        raw: Parsed JSON object or a bare list

    Returns:
        ValidationResult
    """
    window = raw.get("window") if isinstance(raw, dict) else raw
    if not isinstance(window, (list, tuple)):
        return _fail("must be a list of integers", field="window")
    if len(window) < EnumerationDefaults.MIN_N:
        return _fail(
            f"needs at least {EnumerationDefaults.MIN_N} entries",
            field="window",
        )
    if not all(_is_int(x) for x in window):
        return _fail("entries must be integers", field="window")
    return ValidationResult(valid=True)


def load_json(path: Union[str, Path]) -> Any:
    """
    Read a JSON file.

    Args:
        path: File to read

    Returns:
        Parsed JSON value

    Raises:
        ValidationError: If the file is missing or is not valid JSON
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ValidationError("file not found", field=str(path))
    except json.JSONDecodeError as e:
        raise ValidationError(f"invalid JSON: {e}", field=str(path))


def load_json_argument(value: str) -> Any:
    """
    Parse a command-line argument that is either a path or inline JSON.

    Args:
        value: A file path, or text starting with '{' or '['

    Returns:
        Parsed JSON value
    """
    stripped = value.lstrip()
    if stripped.startswith(("{", "[")):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as e:
            raise ValidationError(f"invalid inline JSON: {e}", field=value)
    logger.debug("Reading JSON input from %s", value)
    return load_json(value)

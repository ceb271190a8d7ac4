"""
Path Utilities

Helpers for creating output directories and writing command results
either to a file or to standard output.
"""

import sys
from pathlib import Path
from typing import Optional, TextIO, Union


def ensure_parent_dir(path: Union[str, Path]) -> Path:
    """
    Ensure the parent directory of a file path exists.

    Args:
        path: Path to a file (the parent directory will be created)

    Returns:
        Path object of the input path

    Example:
        >>> ensure_parent_dir("out/diagrams/orbit.svg")
        # Creates out/diagrams/ if it doesn't exist
    """
    path = Path(path)
    parent = path.parent
    if parent and str(parent) != ".":
        parent.mkdir(parents=True, exist_ok=True)
    return path


def write_output(
    text: str,
    path: Optional[Union[str, Path]] = None,
    stream: Optional[TextIO] = None,
) -> None:
    """
    Write text to a file, or to a stream when no path is given.

    A trailing newline is added when missing.

    Args:
        text: The text to write
        path: Destination file; parent directories are created
        stream: Stream used when path is None (default sys.stdout)
    """
    if not text.endswith("\n"):
        text += "\n"
    if path is None:
        (stream or sys.stdout).write(text)
        return
    target = ensure_parent_dir(path)
    with open(target, "w", encoding="utf-8") as f:
        f.write(text)

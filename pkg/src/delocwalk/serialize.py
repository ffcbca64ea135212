"""
Deterministic CSV/JSON output.

Floats are written with 17 significant digits (``%.17g``) so that every
double round-trips exactly and identical runs give byte-identical files.
Files are written to a temporary sibling and renamed into place.
"""

from __future__ import annotations

import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = ["fmt", "to_json", "csv_text", "write_text"]


def fmt(value) -> str:
    """Format one scalar for CSV output."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.17g" % float(value)


def to_json(obj, indent: int | None = 2, _level: int = 0) -> str:
    """
    Serialize dicts, lists, strings, numbers, booleans and None.

    Non-finite floats become ``null`` since JSON has no spelling for them.
    Key order is preserved.
    """
    pad = "" if indent is None else "\n" + " " * (indent * (_level + 1))
    close = "" if indent is None else "\n" + " " * (indent * _level)
    sep = ", " if indent is None else ","
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return "%.17g" % obj if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        import json

        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k), indent)}: {to_json(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{" + sep.join(items) + close + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{to_json(v, indent, _level + 1)}" for v in obj]
        return "[" + sep.join(items) + close + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_text(header: Sequence[str], columns: Iterable[Sequence]) -> str:
    """Comma-separated text with a header row and LF line endings."""
    lines = [",".join(header)]
    lines.extend(",".join(fmt(v) for v in row) for row in zip(*columns))
    return "\n".join(lines) + "\n"


def write_text(text: str, out: str | os.PathLike | None) -> None:
    """Write to ``out`` atomically, or to stdout when ``out`` is None or '-'."""
    if out is None or str(out) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

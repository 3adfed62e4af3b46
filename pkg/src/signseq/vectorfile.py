"""Line-oriented vector files and polygon norm files.

A vector file holds one JSON-style array of decimal numbers per line, for
example ``[0.5, -0.25]``.  Blank lines and lines starting with ``#`` are
ignored; every vector must have the same dimension.  Numbers are written with
17 significant digits so a float survives a write/read cycle unchanged.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .norms import PolygonError, Vector


class VectorFileError(ValueError):
    pass


def format_number(x: float) -> str:
    s = f"{x:.17g}"
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def format_vector(v: Sequence[float]) -> str:
    return "[" + ", ".join(format_number(c) for c in v) + "]"


def dumps_vectors(vectors: Iterable[Sequence[float]], header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    lines.extend(format_vector(v) for v in vectors)
    return "\n".join(lines) + "\n" if lines else ""


def loads_vectors(text: str) -> list[Vector]:
    vectors: list[Vector] = []
    dim = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise VectorFileError(f"line {lineno}: not an array of numbers ({exc.msg})") from None
        if not isinstance(row, list) or not row or not all(
            isinstance(c, (int, float)) and not isinstance(c, bool) for c in row
        ):
            raise VectorFileError(f"line {lineno}: expected a non-empty array of numbers")
        v = tuple(float(c) for c in row)
        if not all(math.isfinite(c) for c in v):
            raise VectorFileError(f"line {lineno}: non-finite coordinate")
        if dim is None:
            dim = len(v)
        elif len(v) != dim:
            raise VectorFileError(f"line {lineno}: dimension {len(v)} differs from {dim}")
        vectors.append(v)
    return vectors


def _read_text(path: str | Path) -> str:
    if str(path) == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise VectorFileError(f"cannot read {path}: {exc.strerror}") from None


def read_vectors(path: str | Path) -> tuple[list[Vector], str]:
    """Return the vectors and the raw text (used for the report digest)."""
    text = _read_text(path)
    return loads_vectors(text), text


def write_vectors(vectors, out: str | Path | TextIO | None, header: str | None = None) -> None:
    text = dumps_vectors(vectors, header)
    if out is None or str(out) == "-":
        sys.stdout.write(text)
    elif hasattr(out, "write"):
        out.write(text)
    else:
        Path(out).write_text(text)


def read_polygon_file(path: str | Path) -> list[tuple[float, float]]:
    """Read a JSON array of ``[x, y]`` vertex pairs."""
    try:
        data = json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise PolygonError(f"polygon file {path}: invalid JSON ({exc.msg})") from None
    except VectorFileError as exc:
        raise PolygonError(str(exc)) from None
    if not isinstance(data, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(c, (int, float)) for c in p)
        for p in data
    ):
        raise PolygonError(f"polygon file {path}: expected an array of [x, y] pairs")
    return [(float(x), float(y)) for x, y in data]

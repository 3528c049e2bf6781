"""PFA file format: CSV with an f1..fm header and '#' metadata comments.

Round-trips are lossless: coordinates are written with 17 significant
digits, which is enough to reconstruct every float64 bit pattern.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import EmptyInput, ParseError
from .geometry import Pfa


def _parse_row(fields: list[str], lineno: int) -> list[float]:
    values = []
    for col, tok in enumerate(fields, start=1):
        try:
            v = float(tok)
        except ValueError:
            raise ParseError(f"column {col}: not a number: {tok!r}", line=lineno) from None
        if not math.isfinite(v):
            raise ParseError(f"column {col}: non-finite value {tok!r}", line=lineno)
        values.append(v)
    return values


def read_points(path) -> np.ndarray:
    """Parse a PFA CSV file into an (N, m) array.

    Comment lines start with '#'. A leading non-numeric line is taken as
    the header; it is optional on input. Every data row must have the
    same column count and only finite values, otherwise a ParseError
    with the offending 1-based line number is raised.
    """
    rows: list[list[float]] = []
    m = None
    header_seen = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split(",")]
            if not rows and not header_seen:
                try:
                    float(fields[0])
                except ValueError:
                    header_seen = True
                    m = len(fields)
                    continue
            values = _parse_row(fields, lineno)
            if m is None:
                m = len(values)
            elif len(values) != m:
                raise ParseError(
                    f"expected {m} columns, found {len(values)}", line=lineno
                )
            rows.append(values)
    if not rows:
        raise EmptyInput(f"no data rows in {path}")
    return np.array(rows, dtype=float)


def read_pfa(path) -> Pfa:
    """Read a PFA file; the result is not normalized (callers decide)."""
    return Pfa(read_points(path), normalized=False)


def write_points(points: np.ndarray, path, metadata: dict | None = None) -> None:
    """Write an (N, m) array in the PFA CSV format.

    Metadata key/value pairs become '#'-prefixed comment lines above the
    header, making every output self-describing and reproducible.
    """
    points = np.asarray(points, dtype=float)
    n, m = points.shape
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if metadata:
            for key, value in metadata.items():
                fh.write(f"# {key}={value}\n")
        fh.write(",".join(f"f{i + 1}" for i in range(m)) + "\n")
        for row in points:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def write_pfa(pfa: Pfa, path, metadata: dict | None = None) -> None:
    write_points(pfa.points, path, metadata=metadata)

"""Byte-stable report serialization.

All numeric CSV fields are written with 17 significant digits, '.' decimal
separator and '\n' line endings, so identical configurations always produce
identical bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence


def fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def complex_columns(z: complex) -> tuple[float, float, float, float]:
    """Re, Im, magnitude, argument; the convenience pair avoids complex parsing downstream."""
    import cmath

    return z.real, z.imag, abs(z), cmath.phase(z)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])


def write_json(path: Path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def sequence_label(vertices: Sequence[int]) -> str:
    return "-".join(str(v) for v in vertices)

"""Small shared helpers: atomic writes, CSV text, exact ratio rendering."""

from __future__ import annotations

import csv
import io
import os
from fractions import Fraction
from pathlib import Path


def write_text_atomic(path: Path, text: str) -> None:
    """Write `text` to `path` via a temp file and rename, so readers never
    observe a partially written file and failed runs leave no new file."""
    path = Path(path)
    tmp = path.parent / (path.name + ".tmp~")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def csv_text(header, rows) -> str:
    """Render a header plus rows as CSV text with unix line endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def exact_str(value: Fraction) -> str:
    """Lossless "numerator/denominator" rendering, denominator always shown."""
    return f"{value.numerator}/{value.denominator}"


def decimal_str(value: Fraction, places: int = 6) -> str:
    """Fixed-point decimal rendering of a non-negative rational.

    Rounds half-to-even at the last place; avoids float so the rendering is
    exact and stable.
    """
    scale = 10**places
    scaled = round(value * scale)
    return f"{scaled // scale}.{scaled % scale:0{places}d}"

"""Plain-text point configuration files.

One point per line, whitespace-separated homogeneous coordinates written as
integers or ``n/d`` fractions.  ``#`` starts a comment line; blank lines are
skipped.  Every point must have the same number of coordinates (3 or 4).
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import DuplicatePoint, ParseError
from .geometry import PointConfig, ProjPoint


def _parse_rational(tok: str, lineno: int) -> Fraction:
    num, sep, den = tok.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ParseError(f"not a rational number: {tok!r}", lineno) from None
    if d <= 0:
        raise ParseError(f"denominator must be positive in {tok!r}", lineno)
    return Fraction(n, d)


def parse_config(text: str, label: str = "") -> PointConfig:
    points: list[ProjPoint] = []
    first_line: dict[ProjPoint, int] = {}
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        coords = [_parse_rational(tok, lineno) for tok in line.split()]
        if len(coords) not in (3, 4):
            raise ParseError(f"expected 3 or 4 coordinates, got {len(coords)}", lineno)
        if width is None:
            width = len(coords)
        elif len(coords) != width:
            raise ParseError(f"expected {width} coordinates, got {len(coords)}", lineno)
        if not any(coords):
            raise ParseError("all coordinates are zero", lineno)
        p = ProjPoint(coords)
        if p in first_line:
            raise DuplicatePoint(first_line[p], len(points))
        first_line[p] = len(points)
        points.append(p)
    return PointConfig(points, label)


def serialize_config(cfg: PointConfig, header: str | None = None) -> str:
    lines = []
    if header:
        lines.extend("# " + h for h in header.splitlines())
    lines.extend(" ".join(str(c) for c in p.coords) for p in cfg.points)
    return "\n".join(lines) + "\n"


def load_config(path: str | Path) -> PointConfig:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), label=path.stem)

"""Plain-text pixmap (P3) renders of the convergent coefficient table."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cfrac import coefficient_table
from .ring import Zmod
from .seq import get_sequence

__all__ = ["DEFAULT_COLORS", "RenderSpec", "table_pixels", "to_ppm", "render_table"]

# residue -> RGB; 0 white, 1 red, 2 green, 3 blue
DEFAULT_COLORS = {0: (255, 255, 255), 1: (255, 0, 0), 2: (0, 128, 0), 3: (0, 0, 255)}


@dataclass(frozen=True)
class RenderSpec:
    """What to draw. Ranges are inclusive ``(lo, hi)`` pairs."""

    track: str = "Q"
    seq_name: str = "paperfolding"
    n_range: tuple[int, int] = (1, 16)
    i_range: tuple[int, int] = (0, 15)
    modulus: int = 4
    color_map: dict = field(default_factory=lambda: dict(DEFAULT_COLORS))
    scale: int = 1

    def __post_init__(self):
        if self.track not in ("P", "Q"):
            raise ValueError("track must be 'P' or 'Q'")
        if self.scale < 1:
            raise ValueError("scale must be >= 1")
        (n0, n1), (i0, i1) = self.n_range, self.i_range
        if not (0 <= n0 <= n1 and 0 <= i0 <= i1):
            raise ValueError("ranges must be non-empty and non-negative")
        missing = set(range(self.modulus)) - set(self.color_map)
        if missing:
            raise ValueError(f"color map lacks residues {sorted(missing)}")
        for rgb in self.color_map.values():
            if len(rgb) != 3 or not all(0 <= int(v) <= 255 for v in rgb):
                raise ValueError(f"bad RGB triple {rgb!r}")


def table_pixels(spec: RenderSpec) -> np.ndarray:
    """(height, width, 3) uint8 image; first row holds the largest i."""
    (n0, n1), (i0, i1) = spec.n_range, spec.i_range
    seq = get_sequence(spec.seq_name, n1 + 2)
    table = coefficient_table(seq, n1, i1, Zmod(spec.modulus), spec.track)
    cells = np.asarray(table.entries[n0 : n1 + 1, i0 : i1 + 1], dtype=np.int64).T[::-1]
    lut = np.array([spec.color_map[r] for r in range(spec.modulus)], dtype=np.uint8)
    img = lut[cells]
    return np.repeat(np.repeat(img, spec.scale, axis=0), spec.scale, axis=1)


def to_ppm(img: np.ndarray) -> bytes:
    h, w, _ = img.shape
    rows = [" ".join(map(str, row.ravel().tolist())) for row in img]
    return ("P3\n%d %d\n255\n" % (w, h) + "\n".join(rows) + "\n").encode("ascii")


def render_table(spec: RenderSpec, out: str | Path | None = None) -> bytes:
    """Render and optionally write to ``out``; returns the file bytes."""
    data = to_ppm(table_pixels(spec))
    if out is not None:
        Path(out).write_bytes(data)
    return data

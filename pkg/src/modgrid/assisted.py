"""Assisted generation: configuration-driven module placement.

The canvas orientation picks which configuration file to use (wider than
tall loads the horizontal layout, otherwise the vertical one), the layout
fixes the grid, and each cell is resolved from its directive: empty cells
stay empty, fixed cells take their module, and random cells draw uniformly
from the palette using the per-cell value u01(seed, row, col) — so results
are reproducible and independent of evaluation order.
"""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Iterable

from .composition import Composition
from .config import ConfigLayout, parse_config
from .errors import ParamError
from .palette import ModulePalette
from .rng import u01


class Orientation(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"


HORIZONTAL_CONFIG = "horizontal.mcfg"
VERTICAL_CONFIG = "vertical.mcfg"


def choose_orientation(canvas_w: float, canvas_h: float) -> Orientation:
    """Horizontal iff width exceeds height; square counts as vertical."""
    if canvas_w <= 0 or canvas_h <= 0:
        raise ParamError(f"canvas must be positive, got {canvas_w} x {canvas_h}")
    return Orientation.HORIZONTAL if canvas_w > canvas_h else Orientation.VERTICAL


def load_layout_for_orientation(
    config_dir: str | Path, orientation: Orientation
) -> ConfigLayout:
    """Read horizontal.mcfg or vertical.mcfg from a configuration directory."""
    name = HORIZONTAL_CONFIG if orientation is Orientation.HORIZONTAL else VERTICAL_CONFIG
    return parse_config((Path(config_dir) / name).read_text(encoding="utf-8"))


def generate_assisted(
    layout: ConfigLayout,
    palette: ModulePalette,
    canvas_w: float,
    canvas_h: float,
    seed: int,
    cell_order: Iterable[tuple[int, int]] | None = None,
) -> Composition:
    """Resolve a layout into a composition on the given canvas.

    Cells are uniform squares at min-fit scale and the grid is centered;
    a fixed directive whose index character has no module in the palette
    degrades to a random draw.  `cell_order` is a test hook: any permutation
    of the cells must produce an identical result.
    """
    if canvas_w <= 0 or canvas_h <= 0:
        raise ParamError(f"canvas must be positive, got {canvas_w} x {canvas_h}")
    rows, cols = layout.rows, layout.cols
    cell_px = min(canvas_w / cols, canvas_h / rows)
    origin_x = (canvas_w - cols * cell_px) / 2.0
    origin_y = (canvas_h - rows * cell_px) / 2.0

    n = len(palette)
    placements: list[list[int | None]] = [[None] * cols for _ in range(rows)]
    order = cell_order if cell_order is not None else (
        (r, c) for r in range(rows) for c in range(cols)
    )
    for r, c in order:
        ch = layout.cells[r][c]
        if ch == "0":
            continue
        pos = palette.position_of(ch) if ch != "*" else None
        if pos is None:  # '*' or a fixed reference with no module
            pos = min(int(u01(seed, r, c) * n), n - 1)
        placements[r][c] = pos

    return Composition(
        rows=rows,
        cols=cols,
        cell_px=cell_px,
        origin_x=origin_x,
        origin_y=origin_y,
        canvas_w=float(canvas_w),
        canvas_h=float(canvas_h),
        placements=tuple(tuple(row) for row in placements),
    )

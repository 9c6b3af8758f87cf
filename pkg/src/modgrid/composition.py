"""The resolved output grid shared by both generation methods."""

from __future__ import annotations

from dataclasses import dataclass

from .palette import ModulePalette


@dataclass(frozen=True)
class Composition:
    """Placement grid plus canvas geometry, ready for rendering.

    `placements[r][c]` is a palette position (0-based) or None for an empty
    cell.  Cells are squares of side `cell_px` in canvas units; the grid's
    top-left corner sits at (origin_x, origin_y).
    """

    rows: int
    cols: int
    cell_px: float
    origin_x: float
    origin_y: float
    canvas_w: float
    canvas_h: float
    placements: tuple[tuple[int | None, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("composition needs at least one row and one column")
        if self.cell_px <= 0:
            raise ValueError("cell size must be positive")
        if len(self.placements) != self.rows or any(
            len(row) != self.cols for row in self.placements
        ):
            raise ValueError("placements must form an exact rows x cols matrix")

    def placed_count(self) -> int:
        return sum(1 for row in self.placements for p in row if p is not None)

    def empty_count(self) -> int:
        return self.rows * self.cols - self.placed_count()

    def max_placement(self) -> int | None:
        placed = [p for row in self.placements for p in row if p is not None]
        return max(placed) if placed else None

    def check_against(self, palette: ModulePalette) -> None:
        """Raise if any placement points outside the palette."""
        top = self.max_placement()
        if top is not None and top >= len(palette):
            raise ValueError(
                f"placement {top} outside palette of {len(palette)} modules"
            )

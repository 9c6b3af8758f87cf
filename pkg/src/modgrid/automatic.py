"""Automatic generation: brightness-driven module placement.

The pipeline: convert the input image to greyscale, normalize brightness
between two thresholds, cut the image into square cells (`rows` tall, as
many columns as fit), profile each cell's s*s sub-region brightness, and
pick each cell's module by comparing that profile against every module's.
Near-white cells are skipped.  The pick is a roulette-wheel draw whose
weights fall off exponentially with profile distance; temperature tau
controls sharpness, and tau = 0 is the deterministic nearest-module choice.

Every random draw is u01(seed, frame_index, row, col), so a composition is
a pure function of (image, palette, params) and cells may be resolved in
any order.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from PIL import Image, UnidentifiedImageError

from .composition import Composition
from .errors import EmptyDirectoryError, ParamError
from .palette import BrightnessProfile, ModulePalette
from .rng import u01

# Rec. 709 luma weights (0.2126, 0.7152, 0.0722), kept as integers over a
# common denominator so white maps to exactly 1.0.
_LUMA_R, _LUMA_G, _LUMA_B = 2126, 7152, 722
_LUMA_DENOM = 10000 * 255

FRAME_EXTENSIONS = (".png", ".ppm", ".jpg", ".jpeg", ".bmp")

DEFAULT_TAU = 0.05
DEFAULT_PLACE_MAX = 0.98


@dataclass(eq=False)
class GreyRaster:
    """Brightness buffer in [0, 1]; 0 is black, 1 is white."""

    values: np.ndarray  # (height, width) float64

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2 or self.values.size == 0:
            raise ParamError("raster must be a non-empty 2-D brightness buffer")

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def height(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class GenerationParams:
    """Knobs of the automatic pipeline.

    With skip_dark=False (default) a cell brighter than place_max stays
    empty: black modules depict the dark parts of the image.  skip_dark
    flips the comparison, so place_max acts as the minimum brightness a
    cell needs to receive a module.
    """

    rows: int
    seed: int = 0
    norm_min: float = 0.0
    norm_max: float = 1.0
    place_max: float = DEFAULT_PLACE_MAX
    s: int = 3
    tau: float = DEFAULT_TAU
    skip_dark: bool = False

    def __post_init__(self) -> None:
        if self.rows < 1:
            raise ParamError(f"rows must be >= 1, got {self.rows}")
        if not (0.0 <= self.norm_min < self.norm_max <= 1.0):
            raise ParamError(
                f"need 0 <= norm_min < norm_max <= 1, got {self.norm_min}, {self.norm_max}"
            )
        if not (0.0 < self.place_max <= 1.0):
            raise ParamError(f"place_max must be in (0, 1], got {self.place_max}")
        if self.s < 1:
            raise ParamError(f"subdivision order must be >= 1, got {self.s}")
        if self.tau < 0.0:
            raise ParamError(f"tau must be >= 0, got {self.tau}")


# ---------------------------------------------------------------------------
# Image input
# ---------------------------------------------------------------------------


def load_image_rgb(source: str | Path | bytes) -> np.ndarray:
    """Decode an image file or byte blob into an RGB uint8 array."""
    if isinstance(source, bytes):
        img = Image.open(io.BytesIO(source))
    else:
        img = Image.open(source)
    rgb = np.asarray(img.convert("RGB"), dtype=np.uint8)
    if rgb.size == 0:
        raise ParamError("image has no pixels")
    return rgb


def to_greyscale(image: np.ndarray) -> GreyRaster:
    """Rec. 709 luma: (0.2126 R + 0.7152 G + 0.0722 B) / 255."""
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] < 3 or arr.size == 0:
        raise ParamError("expected a non-empty H x W x 3 RGB array")
    rgb = arr[:, :, :3].astype(np.int64)
    luma = _LUMA_R * rgb[:, :, 0] + _LUMA_G * rgb[:, :, 1] + _LUMA_B * rgb[:, :, 2]
    return GreyRaster(values=luma / _LUMA_DENOM)


def normalize(raster: GreyRaster, norm_min: float, norm_max: float) -> GreyRaster:
    """Linear remap of [norm_min, norm_max] onto [0, 1], clamped."""
    if not norm_min < norm_max:
        raise ParamError(f"need norm_min < norm_max, got {norm_min}, {norm_max}")
    out = (raster.values - norm_min) / (norm_max - norm_min)
    return GreyRaster(values=np.clip(out, 0.0, 1.0))


# ---------------------------------------------------------------------------
# Grid derivation and cell profiling
# ---------------------------------------------------------------------------


def grid_from_image(width: int, height: int, rows: int) -> tuple[int, int, float]:
    """Cell size from the row count; columns fill the width, remainder unused."""
    if rows < 1:
        raise ParamError(f"rows must be >= 1, got {rows}")
    if rows > height:
        raise ParamError(f"rows ({rows}) exceeds image height ({height})")
    cell_px = height / rows
    cols = max(1, math.floor(width / cell_px))
    return rows, cols, cell_px


def _pixel_range(lo: float, hi: float, limit: int) -> tuple[int, int]:
    """Indices whose centers fall in [lo, hi), clamped to [0, limit)."""
    start = max(0, math.ceil(lo - 0.5))
    stop = min(limit, math.ceil(hi - 0.5))
    return start, max(start, stop)


def cell_profile(raster: GreyRaster, rect: tuple[float, float, float, float], s: int) -> BrightnessProfile:
    """s*s sub-region brightness means for one cell rectangle.

    Pixels belong to the sub-rectangle containing their center; a
    sub-rectangle with no pixel centers takes the whole-cell mean.
    """
    if s < 1:
        raise ParamError(f"subdivision order must be >= 1, got {s}")
    x0, y0, x1, y1 = rect
    j0, j1 = _pixel_range(x0, x1, raster.width)
    i0, i1 = _pixel_range(y0, y1, raster.height)
    if j1 <= j0 or i1 <= i0:
        raise ParamError(f"cell rectangle {rect} covers no pixel centers")
    block = raster.values[i0:i1, j0:j1]
    whole = float(block.mean())

    values = np.empty((s, s), dtype=np.float64)
    for si in range(s):
        ri0, ri1 = _pixel_range(y0 + si * (y1 - y0) / s, y0 + (si + 1) * (y1 - y0) / s, raster.height)
        ri0, ri1 = max(ri0, i0), min(ri1, i1)
        for sj in range(s):
            cj0, cj1 = _pixel_range(x0 + sj * (x1 - x0) / s, x0 + (sj + 1) * (x1 - x0) / s, raster.width)
            cj0, cj1 = max(cj0, j0), min(cj1, j1)
            if ri1 <= ri0 or cj1 <= cj0:
                values[si, sj] = whole
            else:
                values[si, sj] = float(raster.values[ri0:ri1, cj0:cj1].mean())
    return BrightnessProfile(order=s, values=values)


# ---------------------------------------------------------------------------
# Matching and selection
# ---------------------------------------------------------------------------


def module_distance(cell: BrightnessProfile, module: BrightnessProfile) -> float:
    """Normalized mean absolute difference between two profiles, in [0, 1]."""
    if cell.order != module.order:
        raise ParamError(
            f"profile order mismatch: {cell.order} vs {module.order}"
        )
    return float(np.abs(cell.values - module.values).mean())


def select_module(distances: Sequence[float], tau: float, u: float) -> int:
    """Roulette pick over distance-derived weights; returns a palette position.

    tau = 0 is the greedy limit: the smallest distance wins, ties broken by
    the lowest palette position.  Otherwise weights are exp(-d/tau); the
    exponent is shifted by the minimum distance, which leaves the
    probabilities unchanged but cannot underflow to an all-zero wheel.
    """
    n = len(distances)
    if n == 0:
        raise ParamError("need at least one module distance")
    if tau < 0.0:
        raise ParamError(f"tau must be >= 0, got {tau}")
    if tau == 0.0:
        best = 0
        for i in range(1, n):
            if distances[i] < distances[best]:
                best = i
        return best
    d_min = min(distances)
    weights = [math.exp(-(d - d_min) / tau) for d in distances]
    total = sum(weights)
    cum = 0.0
    for i, w in enumerate(weights):
        cum += w / total
        if cum > u:
            return i
    return n - 1  # cumulative rounding fell just short of 1


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------


def generate_automatic(
    image: np.ndarray,
    palette: ModulePalette,
    params: GenerationParams,
    frame_index: int = 0,
    cell_order: Iterable[tuple[int, int]] | None = None,
) -> Composition:
    """Depict an RGB image with palette modules.

    `cell_order` is a test hook: any permutation of the cells must yield an
    identical composition.
    """
    if params.s != palette.order:
        raise ParamError(
            f"params.s = {params.s} but palette profiled at order {palette.order}"
        )
    grey = to_greyscale(image)
    norm = normalize(grey, params.norm_min, params.norm_max)
    rows, cols, cell_px = grid_from_image(norm.width, norm.height, params.rows)

    profiles = palette.profile_matrix()  # (n, s, s)
    placements: list[list[int | None]] = [[None] * cols for _ in range(rows)]
    order = cell_order if cell_order is not None else (
        (r, c) for r in range(rows) for c in range(cols)
    )
    for r, c in order:
        rect = (
            c * cell_px,
            r * cell_px,
            min((c + 1) * cell_px, float(norm.width)),
            min((r + 1) * cell_px, float(norm.height)),
        )
        j0, j1 = _pixel_range(rect[0], rect[2], norm.width)
        i0, i1 = _pixel_range(rect[1], rect[3], norm.height)
        if j1 <= j0 or i1 <= i0:
            continue
        mean = float(norm.values[i0:i1, j0:j1].mean())
        skip = (mean < params.place_max) if params.skip_dark else (mean > params.place_max)
        if skip:
            continue
        cp = cell_profile(norm, rect, params.s)
        dists = np.abs(cp.values[None, :, :] - profiles).mean(axis=(1, 2))
        u = u01(params.seed, frame_index, r, c)
        placements[r][c] = select_module(dists.tolist(), params.tau, u)

    return Composition(
        rows=rows,
        cols=cols,
        cell_px=cell_px,
        origin_x=0.0,
        origin_y=0.0,
        canvas_w=float(norm.width),
        canvas_h=float(norm.height),
        placements=tuple(tuple(row) for row in placements),
    )


@dataclass(eq=False)
class FrameResult:
    """Outcome of one frame in sequence mode."""

    frame_index: int
    path: Path
    composition: Composition | None = None
    error: str | None = None


def list_frames(frame_dir: str | Path) -> list[Path]:
    """Image files of a frame directory in byte-wise filename order."""
    frame_dir = Path(frame_dir)
    frames = sorted(
        (
            p
            for p in frame_dir.iterdir()
            if p.is_file() and p.suffix.lower() in FRAME_EXTENSIONS
        ),
        key=lambda p: p.name.encode("utf-8"),
    )
    if not frames:
        raise EmptyDirectoryError(f"no image frames in {frame_dir}")
    return frames


def generate_sequence(
    frame_dir: str | Path,
    palette: ModulePalette,
    params: GenerationParams,
) -> list[FrameResult]:
    """One composition per frame; the frame index feeds the random stream.

    A frame that fails to decode or generate is reported in its result and
    the remaining frames are still processed.
    """
    results = []
    for idx, path in enumerate(list_frames(frame_dir)):
        result = FrameResult(frame_index=idx, path=path)
        try:
            image = load_image_rgb(path)
            result.composition = generate_automatic(
                image, palette, params, frame_index=idx
            )
        except (ParamError, UnidentifiedImageError, OSError, ValueError) as exc:
            result.error = f"{path.name}: {exc}"
        results.append(result)
    return results

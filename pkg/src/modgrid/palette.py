"""Module palette: loading, indexing, and brightness profiling.

A palette is an ordered set of square black-and-white vector modules.  Each
module gets an index character ('1'..'9' then uppercase letters) and an s*s
brightness profile computed by rasterizing the geometry on a white ground
and averaging equal blocks.  'O' is never assigned (it reads as the empty
cell in configuration files) and neither is 'I' (too close to '1' and 'l'),
which caps a palette at 33 modules.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadGeometryError, EmptyPaletteError, IndexOverflowError, ParamError
from .geometry import FilledPath, VectorGeometry, rect_commands
from .svgdoc import load_module_svg

log = logging.getLogger(__name__)

INDEX_CHARS = "123456789" + "".join(
    c for c in "ABCDEFGHIJKLMNOPQRSTUVWXYZ" if c not in ("I", "O")
)
MAX_MODULES = len(INDEX_CHARS)  # 33

DEFAULT_PROFILE_ORDER = 3
DEFAULT_PROFILE_RESOLUTION = 96

CACHE_FILENAME = "profiles.json"

# Low-discrepancy constant used to scatter the fill order of the procedural
# default modules (golden ratio conjugate).
_PHI_CONJ = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(eq=False)
class BrightnessProfile:
    """s*s matrix of mean brightness in [0, 1], row 0 = top."""

    order: int
    values: np.ndarray  # shape (order, order), float64

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (self.order, self.order):
            raise ValueError(
                f"profile needs {self.order}x{self.order} values, got {self.values.shape}"
            )

    def mean(self) -> float:
        return float(self.values.mean())


@dataclass(eq=False)
class Module:
    """One square vector module with its brightness profile."""

    index_char: str
    geometry: VectorGeometry
    profile: BrightnessProfile
    name: str = ""


@dataclass(eq=False)
class ModulePalette:
    """Ordered, immutable set of modules sharing one profile order."""

    modules: tuple[Module, ...]
    order: int

    def __post_init__(self) -> None:
        self.modules = tuple(self.modules)
        if not self.modules:
            raise EmptyPaletteError("palette needs at least one module")
        for m in self.modules:
            if m.profile.order != self.order:
                raise ValueError(
                    f"module {m.index_char!r} profiled at order {m.profile.order}, "
                    f"palette order is {self.order}"
                )
        chars = [m.index_char for m in self.modules]
        if len(set(chars)) != len(chars):
            raise ValueError("duplicate index characters in palette")
        self._by_char = {m.index_char: i for i, m in enumerate(self.modules)}

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def position_of(self, index_char: str) -> int | None:
        """Palette position of an index character, or None if absent."""
        return self._by_char.get(index_char)

    def profile_matrix(self) -> np.ndarray:
        """All profiles stacked: shape (len(palette), order, order)."""
        return np.stack([m.profile.values for m in self.modules])

    def means(self) -> list[float]:
        return [m.profile.mean() for m in self.modules]


def profile_resolution(s: int, resolution: int) -> int:
    """Effective raster side: `resolution` rounded up to a multiple of s."""
    if s < 1:
        raise ParamError(f"profile order must be >= 1, got {s}")
    if resolution < 1:
        raise ParamError(f"resolution must be >= 1, got {resolution}")
    return s * math.ceil(resolution / s)


def profile_module(
    geometry: VectorGeometry,
    s: int,
    resolution: int = DEFAULT_PROFILE_RESOLUTION,
) -> BrightnessProfile:
    """Profile a module by center-point rasterization on a white ground.

    The raster side is `resolution` rounded up to a multiple of s; a pixel
    is black iff its center lies inside a filled path.  Each profile value
    is the mean brightness (white=1, black=0) of one of the s*s blocks.
    """
    res = profile_resolution(s, resolution)
    centers = (np.arange(res) + 0.5) / res
    xx, yy = np.meshgrid(centers, centers)  # row = y (top first), col = x
    ink = geometry.ink_at(xx, yy)
    brightness = 1.0 - ink.astype(np.float64)
    block = res // s
    values = brightness.reshape(s, block, s, block).mean(axis=(1, 3))
    return BrightnessProfile(order=s, values=values)


# ---------------------------------------------------------------------------
# Procedural default palette
# ---------------------------------------------------------------------------


def _scatter_order(rows: int, cols: int) -> list[tuple[int, int]]:
    """Deterministic well-spread ordering of a rows*cols grid."""
    cells = list(range(rows * cols))
    cells.sort(key=lambda k: (math.modf(k * _PHI_CONJ)[0], k))
    return [(k // cols, k % cols) for k in cells]


def _minigrid_dims(m: int) -> tuple[int, int]:
    """Factor m into rows x cols with rows the largest divisor <= sqrt(m)."""
    rows = max(d for d in range(1, math.isqrt(m) + 1) if m % d == 0)
    return rows, m // rows


def _default_geometry(i: int, n: int, s: int) -> VectorGeometry:
    """Ink for default module i of n: the same (n-1-i)-cell pattern repeated
    in each of the s*s profile blocks.

    Repeating per block keeps every block's brightness equal to the module's
    overall mean (exactly i/(n-1)), so brightness matching sees the palette
    as an evenly spaced greyscale ramp.  Patterns are nested (module i+1's
    ink is a subset of module i's), which makes rasterized means strictly
    increasing as well.
    """
    if n == 1 or i == 0:  # fully inked: one rect, not a grid of them
        return VectorGeometry((FilledPath(rect_commands(0.0, 0.0, 1.0, 1.0)),))
    m = n - 1
    filled = m - i  # minigrid cells inked per block
    if filled == 0:
        return VectorGeometry(())
    grid_rows, grid_cols = _minigrid_dims(m)
    order = _scatter_order(grid_rows, grid_cols)
    block = 1.0 / s
    cell_w = block / grid_cols
    cell_h = block / grid_rows
    commands = []
    for br in range(s):
        for bc in range(s):
            for r, c in order[:filled]:
                commands.extend(
                    rect_commands(bc * block + c * cell_w, br * block + r * cell_h, cell_w, cell_h)
                )
    return VectorGeometry((FilledPath(commands=tuple(commands)),))


def default_palette(
    n: int,
    s: int = DEFAULT_PROFILE_ORDER,
    resolution: int = DEFAULT_PROFILE_RESOLUTION,
) -> ModulePalette:
    """Generate the built-in palette of n modules with increasing brightness.

    Module 1 is fully inked, module n fully empty; between them the ink
    thins through a nested scatter of sub-squares, so overall mean
    brightness is strictly increasing with the index and spans [0, 1].
    """
    if not 1 <= n <= MAX_MODULES:
        raise ParamError(f"module count must be in 1..{MAX_MODULES}, got {n}")
    modules = []
    for i in range(n):
        geom = _default_geometry(i, n, s)
        modules.append(
            Module(
                index_char=INDEX_CHARS[i],
                geometry=geom,
                profile=profile_module(geom, s, resolution),
                name=f"default-{INDEX_CHARS[i]}",
            )
        )
    return ModulePalette(modules=tuple(modules), order=s)


# ---------------------------------------------------------------------------
# Palette directory loading with advisory profile cache
# ---------------------------------------------------------------------------


def _cache_key(filename: str, s: int, res: int) -> str:
    return f"{filename}::s={s}::res={res}"


def _read_cache(path: Path) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError):
        return {}
    entries = data.get("entries")
    return entries if isinstance(entries, dict) else {}


def _write_cache(path: Path, entries: dict) -> None:
    try:
        path.write_text(
            json.dumps({"version": 1, "entries": entries}, indent=1, sort_keys=True),
            encoding="utf-8",
        )
    except OSError as exc:  # cache is advisory; a read-only dir is fine
        log.debug("profile cache not written to %s: %s", path, exc)


def _cached_profile(entry: object, s: int, digest: str) -> BrightnessProfile | None:
    if not isinstance(entry, dict) or entry.get("sha256") != digest:
        return None
    values = entry.get("values")
    if not isinstance(values, list) or len(values) != s * s:
        return None
    arr = np.asarray(values, dtype=np.float64)
    if np.isnan(arr).any() or arr.min() < 0.0 or arr.max() > 1.0:
        return None
    return BrightnessProfile(order=s, values=arr.reshape(s, s))


def load_palette(
    dir_path: str | Path,
    s: int = DEFAULT_PROFILE_ORDER,
    resolution: int = DEFAULT_PROFILE_RESOLUTION,
    use_cache: bool = True,
) -> ModulePalette:
    """Load all *.svg modules from a directory, byte-wise filename order.

    Index characters are assigned in order; profiles come from the advisory
    `profiles.json` cache beside the modules when the file hash, order and
    resolution all match, and are recomputed (and the cache refreshed)
    otherwise.
    """
    dir_path = Path(dir_path)
    files = sorted(
        (p for p in dir_path.iterdir() if p.is_file() and p.suffix.lower() == ".svg"),
        key=lambda p: p.name.encode("utf-8"),
    )
    if not files:
        raise EmptyPaletteError(f"no .svg module files in {dir_path}")
    if len(files) > MAX_MODULES:
        raise IndexOverflowError(
            f"{len(files)} module files in {dir_path}, but only "
            f"{MAX_MODULES} index characters exist"
        )

    res = profile_resolution(s, resolution)
    cache_path = dir_path / CACHE_FILENAME
    entries = _read_cache(cache_path) if use_cache else {}
    cache_dirty = False

    modules = []
    for i, path in enumerate(files):
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise BadGeometryError(f"{path.name}: unreadable ({exc})") from exc
        digest = hashlib.sha256(raw).hexdigest()
        geometry = load_module_svg(raw.decode("utf-8"), name=path.name)
        key = _cache_key(path.name, s, res)
        profile = _cached_profile(entries.get(key), s, digest)
        if profile is None:
            profile = profile_module(geometry, s, resolution)
            entries[key] = {
                "sha256": digest,
                "values": [float(v) for v in profile.values.ravel()],
            }
            cache_dirty = True
        modules.append(
            Module(
                index_char=INDEX_CHARS[i],
                geometry=geometry,
                profile=profile,
                name=path.name,
            )
        )

    if use_cache and cache_dirty:
        _write_cache(cache_path, entries)
    return ModulePalette(modules=tuple(modules), order=s)


def refresh_profile_cache(
    dir_path: str | Path,
    s: int = DEFAULT_PROFILE_ORDER,
    resolution: int = DEFAULT_PROFILE_RESOLUTION,
) -> Path:
    """Recompute every profile and rewrite profiles.json; returns its path."""
    dir_path = Path(dir_path)
    cache_path = dir_path / CACHE_FILENAME
    try:
        cache_path.unlink()
    except FileNotFoundError:
        pass
    load_palette(dir_path, s=s, resolution=resolution, use_cache=True)
    return cache_path

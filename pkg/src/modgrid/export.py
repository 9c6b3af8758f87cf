"""Rendering compositions to SVG documents and PNG pixel buffers.

Output is byte-deterministic: numbers are written with exactly four decimal
places, attributes in lexicographic order, cells in row-major order.  PNG
rasterization uses the same center-point coverage rule as module profiling
(no anti-aliasing), which keeps rendered brightness consistent with the
profiles that drove module selection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

from .composition import Composition
from .errors import DanglingModuleError, RasterSizeError
from .geometry import path_data, transform_commands
from .palette import Module, ModulePalette

Color = tuple[int, int, int]

BLACK: Color = (0, 0, 0)
WHITE: Color = (255, 255, 255)

_MAX_RASTER_PIXELS = 10**8

SVG_XMLNS = "http://www.w3.org/2000/svg"
XLINK_XMLNS = "http://www.w3.org/1999/xlink"


@dataclass(frozen=True)
class RenderOptions:
    """Styling freedom is limited to color substitution and scale."""

    px_per_unit: float = 1.0
    foreground: Color = BLACK
    background: Color = WHITE
    invert: bool = False
    flatten: bool = False

    def __post_init__(self) -> None:
        if self.px_per_unit <= 0:
            raise ValueError(f"px_per_unit must be positive, got {self.px_per_unit}")

    def colors(self) -> tuple[Color, Color]:
        """(ink, ground) after applying invert."""
        if self.invert:
            return self.background, self.foreground
        return self.foreground, self.background


def _hex(color: Color) -> str:
    return "#{:02x}{:02x}{:02x}".format(*color)


def _f(v: float) -> str:
    return f"{v:.4f}"


def _el(tag: str, attrs: dict[str, str], content: str | None = None) -> str:
    """One element with lexicographically ordered attributes."""
    body = " ".join(f'{k}="{attrs[k]}"' for k in sorted(attrs))
    if content is None:
        return f"<{tag} {body}/>" if body else f"<{tag}/>"
    open_tag = f"<{tag} {body}>" if body else f"<{tag}>"
    return f"{open_tag}{content}</{tag}>"


def _module_paths(module: Module, ink_color: Color, ground_color: Color) -> list[str]:
    out = []
    for fp in module.geometry.paths:
        attrs = {
            "d": path_data(fp.commands),
            "fill": _hex(ink_color if fp.paints_ink else ground_color),
        }
        if fp.fill_rule == "evenodd":
            attrs["fill-rule"] = "evenodd"
        out.append(_el("path", attrs))
    return out


def render_svg(
    composition: Composition, palette: ModulePalette, opts: RenderOptions = RenderOptions()
) -> str:
    """Render a composition into a standalone SVG 1.1 document string."""
    _check_refs(composition, palette)
    ink, ground = opts.colors()
    w, h = composition.canvas_w, composition.canvas_h

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        _el_open(
            "svg",
            {
                "height": _f(h),
                "version": "1.1",
                "viewBox": f"0 0 {_f(w)} {_f(h)}",
                "width": _f(w),
                "xmlns": SVG_XMLNS,
                "xmlns:xlink": XLINK_XMLNS,
            },
        ),
        _el(
            "rect",
            {"fill": _hex(ground), "height": _f(h), "width": _f(w), "x": _f(0), "y": _f(0)},
        ),
    ]

    used = sorted(
        {p for row in composition.placements for p in row if p is not None}
    )
    if not opts.flatten and used:
        defs = []
        for pos in used:
            module = palette.modules[pos]
            defs.append(
                _el(
                    "g",
                    {"id": f"m{module.index_char}"},
                    "".join(_module_paths(module, ink, ground)),
                )
            )
        lines.append(_el("defs", {}, "".join(defs)))

    for r in range(composition.rows):
        for c in range(composition.cols):
            pos = composition.placements[r][c]
            if pos is None:
                continue
            x = composition.origin_x + c * composition.cell_px
            y = composition.origin_y + r * composition.cell_px
            if opts.flatten:
                cell_affine = (
                    composition.cell_px,
                    0.0,
                    0.0,
                    composition.cell_px,
                    x,
                    y,
                )
                module = palette.modules[pos]
                for fp in module.geometry.paths:
                    attrs = {
                        "d": path_data(transform_commands(fp.commands, cell_affine)),
                        "fill": _hex(ink if fp.paints_ink else ground),
                    }
                    if fp.fill_rule == "evenodd":
                        attrs["fill-rule"] = "evenodd"
                    lines.append(_el("path", attrs))
            else:
                lines.append(
                    _el(
                        "use",
                        {
                            "transform": f"translate({_f(x)} {_f(y)}) scale({_f(composition.cell_px)})",
                            "xlink:href": f"#m{palette.modules[pos].index_char}",
                        },
                    )
                )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _el_open(tag: str, attrs: dict[str, str]) -> str:
    body = " ".join(f'{k}="{attrs[k]}"' for k in sorted(attrs))
    return f"<{tag} {body}>"


def _check_refs(composition: Composition, palette: ModulePalette) -> None:
    top = composition.max_placement()
    if top is not None and top >= len(palette):
        raise DanglingModuleError(
            f"composition references module {top}, palette has {len(palette)}"
        )


def render_png(
    composition: Composition, palette: ModulePalette, opts: RenderOptions = RenderOptions()
) -> np.ndarray:
    """Rasterize a composition to an RGB uint8 buffer (height, width, 3).

    A pixel takes the ink color iff its center lies inside a filled path of
    the module placed in the cell containing it.
    """
    _check_refs(composition, palette)
    ppu = opts.px_per_unit
    width = max(1, round(composition.canvas_w * ppu))
    height = max(1, round(composition.canvas_h * ppu))
    if width * height > _MAX_RASTER_PIXELS:
        raise RasterSizeError(
            f"{width} x {height} exceeds the {_MAX_RASTER_PIXELS}-pixel raster guard"
        )
    ink, ground = opts.colors()
    buffer = np.empty((height, width, 3), dtype=np.uint8)
    buffer[:, :] = ground

    for r in range(composition.rows):
        for c in range(composition.cols):
            pos = composition.placements[r][c]
            if pos is None:
                continue
            x0 = composition.origin_x + c * composition.cell_px
            y0 = composition.origin_y + r * composition.cell_px
            x1 = x0 + composition.cell_px
            y1 = y0 + composition.cell_px
            px0 = max(0, math.ceil(x0 * ppu - 0.5))
            px1 = min(width, math.ceil(x1 * ppu - 0.5))
            py0 = max(0, math.ceil(y0 * ppu - 0.5))
            py1 = min(height, math.ceil(y1 * ppu - 0.5))
            if px1 <= px0 or py1 <= py0:
                continue
            lx = ((np.arange(px0, px1) + 0.5) / ppu - x0) / composition.cell_px
            ly = ((np.arange(py0, py1) + 0.5) / ppu - y0) / composition.cell_px
            gx, gy = np.meshgrid(lx, ly)
            mask = palette.modules[pos].geometry.ink_at(gx, gy)
            buffer[py0:py1, px0:px1][mask] = ink
    return buffer


def module_svg_doc(module: Module, foreground: Color = BLACK, background: Color = WHITE) -> str:
    """Standalone SVG document showing one module (used for palette sheets)."""
    lines = [
        _el_open(
            "svg",
            {
                "version": "1.1",
                "viewBox": "0 0 1 1",
                "xmlns": SVG_XMLNS,
            },
        ),
        _el(
            "rect",
            {
                "fill": _hex(background),
                "height": _f(1),
                "width": _f(1),
                "x": _f(0),
                "y": _f(0),
            },
        ),
    ]
    lines.extend(_module_paths(module, foreground, background))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def save_png(buffer: np.ndarray, path: str | Path) -> None:
    Image.fromarray(buffer, mode="RGB").save(path, format="PNG")


def save_svg(document: str, path: str | Path) -> None:
    Path(path).write_text(document, encoding="utf-8")

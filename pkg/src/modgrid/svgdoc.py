"""Reading square SVG module files into normalized vector geometry.

Modules arrive as standalone SVG documents with a square viewport.  The
drawing is normalized into the unit square: viewport minimum maps to (0, 0)
and the side length to 1.  Filled shapes become `FilledPath` entries in
document order; `fill="none"` elements are dropped, white fills paint ground
(holes), everything else paints ink.

Supported elements: path, rect, circle, ellipse, polygon, polyline, g.
Transforms (translate / scale / rotate / matrix) are honored; uniform
scale + translate keeps curves exact, other transforms flatten the shape.
"""

from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET

from .errors import BadGeometryError
from .geometry import (
    Affine,
    FilledPath,
    IDENTITY,
    VectorGeometry,
    affine_compose,
    ellipse_commands,
    parse_path_data,
    polygon_commands,
    rect_commands,
    transform_commands,
)

_WHITE_FILLS = {"white", "#fff", "#ffffff", "rgb(255,255,255)", "rgb(255, 255, 255)"}
_LENGTH_RE = re.compile(r"^\s*([+-]?[0-9.eE+-]+)\s*(px)?\s*$")
_TRANSFORM_RE = re.compile(r"(\w+)\s*\(([^)]*)\)")
_NUMBER_SPLIT_RE = re.compile(r"[\s,]+")


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _parse_length(value: str, name: str) -> float:
    m = _LENGTH_RE.match(value)
    if not m:
        raise BadGeometryError(f"{name}: cannot parse length {value!r}")
    return float(m.group(1))


def _parse_transform(value: str) -> Affine:
    m: Affine = IDENTITY
    for func, args in _TRANSFORM_RE.findall(value):
        nums = [float(v) for v in _NUMBER_SPLIT_RE.split(args.strip()) if v]
        if func == "translate":
            tx = nums[0]
            ty = nums[1] if len(nums) > 1 else 0.0
            t: Affine = (1.0, 0.0, 0.0, 1.0, tx, ty)
        elif func == "scale":
            sx = nums[0]
            sy = nums[1] if len(nums) > 1 else sx
            t = (sx, 0.0, 0.0, sy, 0.0, 0.0)
        elif func == "matrix":
            t = (nums[0], nums[1], nums[2], nums[3], nums[4], nums[5])
        elif func == "rotate":
            a = math.radians(nums[0])
            cos_a, sin_a = math.cos(a), math.sin(a)
            t = (cos_a, sin_a, -sin_a, cos_a, 0.0, 0.0)
            if len(nums) == 3:
                cx, cy = nums[1], nums[2]
                t = affine_compose(
                    affine_compose((1, 0, 0, 1, cx, cy), t), (1, 0, 0, 1, -cx, -cy)
                )
        else:
            raise BadGeometryError(f"unsupported transform {func!r}")
        m = affine_compose(m, t)
    return m


def _style_props(el: ET.Element) -> dict[str, str]:
    props = {}
    style = el.get("style", "")
    for item in style.split(";"):
        if ":" in item:
            k, v = item.split(":", 1)
            props[k.strip()] = v.strip()
    return props


def _fill_of(el: ET.Element) -> str | None:
    """Effective fill color string, or None for fill='none'."""
    fill = _style_props(el).get("fill", el.get("fill", "")).strip().lower()
    if fill == "none":
        return None
    return fill or "black"


def _fill_rule_of(el: ET.Element) -> str:
    rule = _style_props(el).get("fill-rule", el.get("fill-rule", "")).strip().lower()
    return "evenodd" if rule == "evenodd" else "nonzero"


def _shape_commands(el: ET.Element):
    tag = _local_name(el.tag)
    get = lambda k, d="0": float(el.get(k, d))  # noqa: E731
    if tag == "path":
        d = el.get("d", "")
        return parse_path_data(d) if d.strip() else ()
    if tag == "rect":
        w, h = get("width"), get("height")
        if w <= 0 or h <= 0:
            return ()
        return rect_commands(get("x"), get("y"), w, h)
    if tag == "circle":
        r = get("r")
        return ellipse_commands(get("cx"), get("cy"), r, r) if r > 0 else ()
    if tag == "ellipse":
        rx, ry = get("rx"), get("ry")
        return ellipse_commands(get("cx"), get("cy"), rx, ry) if rx > 0 and ry > 0 else ()
    if tag in ("polygon", "polyline"):
        raw = [v for v in _NUMBER_SPLIT_RE.split(el.get("points", "").strip()) if v]
        pts = [(float(raw[i]), float(raw[i + 1])) for i in range(0, len(raw) - 1, 2)]
        return polygon_commands(pts) if len(pts) >= 3 else ()
    return None  # not a shape


def _collect(el: ET.Element, ctm: Affine, name: str, out: list[FilledPath]) -> None:
    tf = el.get("transform")
    if tf:
        ctm = affine_compose(ctm, _parse_transform(tf))
    tag = _local_name(el.tag)
    if tag in ("g", "svg"):
        for child in el:
            _collect(child, ctm, name, out)
        return
    if tag in ("defs", "metadata", "title", "desc", "style"):
        return
    try:
        commands = _shape_commands(el)
    except ValueError as exc:
        raise BadGeometryError(f"{name}: {exc}") from exc
    if commands is None or not commands:
        return
    fill = _fill_of(el)
    if fill is None:
        return
    out.append(
        FilledPath(
            commands=transform_commands(commands, ctm),
            fill_rule=_fill_rule_of(el),
            paints_ink=fill not in _WHITE_FILLS,
        )
    )


def load_module_svg(text: str, name: str = "<svg>") -> VectorGeometry:
    """Parse one module document into unit-square geometry.

    Raises BadGeometryError (tagged with `name`) for unparseable XML, a
    non-square viewport, or geometry escaping the unit square.
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise BadGeometryError(f"{name}: not valid XML ({exc})") from exc
    if _local_name(root.tag) != "svg":
        raise BadGeometryError(f"{name}: root element is not <svg>")

    view_box = root.get("viewBox")
    if view_box:
        parts = [float(v) for v in _NUMBER_SPLIT_RE.split(view_box.strip()) if v]
        if len(parts) != 4:
            raise BadGeometryError(f"{name}: malformed viewBox {view_box!r}")
        min_x, min_y, width, height = parts
    else:
        w_attr, h_attr = root.get("width"), root.get("height")
        if not w_attr or not h_attr:
            raise BadGeometryError(f"{name}: no viewBox and no width/height")
        min_x = min_y = 0.0
        width = _parse_length(w_attr, name)
        height = _parse_length(h_attr, name)
    if width <= 0 or height <= 0:
        raise BadGeometryError(f"{name}: non-positive viewport {width}x{height}")
    if abs(width - height) > 1e-6 * max(width, height):
        raise BadGeometryError(
            f"{name}: viewport is not square ({width:g} x {height:g})"
        )

    scale = 1.0 / width
    normalize: Affine = (scale, 0.0, 0.0, scale, -min_x * scale, -min_y * scale)
    paths: list[FilledPath] = []
    for child in root:
        _collect(child, normalize, name, paths)
    geom = VectorGeometry(tuple(paths))

    box = geom.bbox()
    if box is not None:
        tol = 1e-4
        if box[0] < -tol or box[1] < -tol or box[2] > 1 + tol or box[3] > 1 + tol:
            raise BadGeometryError(
                f"{name}: geometry escapes the square viewport "
                f"(bbox {box[0]:.4f},{box[1]:.4f} .. {box[2]:.4f},{box[3]:.4f})"
            )
    return geom

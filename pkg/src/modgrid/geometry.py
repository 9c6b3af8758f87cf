"""Vector geometry model and deterministic rasterization.

A module's drawing is a sequence of filled paths in the unit square.  Paths
keep their curve commands (so vector export stays smooth), and are flattened
to polygons once for rasterization.

Rasterization is anti-aliasing-free on purpose: a sample point is ink if and
only if it lies inside a filled path under that path's fill rule.  Paths are
evaluated back-to-front (last drawn wins), which lets white shapes punch
holes into black ones the way layered SVG documents do.  The same
center-point rule drives both brightness profiling and PNG rendering, so the
two stay bit-consistent by construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

# Path commands are tuples with absolute coordinates:
#   ("M", x, y) ("L", x, y) ("Q", x1, y1, x, y) ("C", x1, y1, x2, y2, x, y)
#   ("A", rx, ry, rot_deg, large_arc, sweep, x, y) ("Z",)
PathCommand = tuple

# Fixed subdivision counts keep flattening deterministic across platforms.
_BEZIER_SEGMENTS = 16
_ARC_SEGMENTS_PER_QUARTER = 16


@dataclass(eq=False)
class FilledPath:
    """One filled path: commands plus how it paints."""

    commands: tuple[PathCommand, ...]
    fill_rule: str = "nonzero"  # or "evenodd"
    paints_ink: bool = True  # False: paints ground color (cuts holes)

    def __post_init__(self) -> None:
        if self.fill_rule not in ("nonzero", "evenodd"):
            raise ValueError(f"unknown fill rule {self.fill_rule!r}")


@dataclass(eq=False)
class VectorGeometry:
    """An ordered stack of filled paths, first drawn first."""

    paths: tuple[FilledPath, ...]
    _flat: list[list[np.ndarray]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.paths = tuple(self.paths)
        self._flat = [flatten_commands(p.commands) for p in self.paths]

    def ink_at(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Evaluate ink coverage at sample points (arrays of any shape).

        A point takes the color of the topmost path containing it; points
        covered by no path are ground (not ink).
        """
        shape = np.shape(xs)
        fx = np.asarray(xs, dtype=np.float64).ravel()
        fy = np.asarray(ys, dtype=np.float64).ravel()
        ink = np.zeros(fx.shape, dtype=bool)
        undecided = np.ones(fx.shape, dtype=bool)
        for path, polys in zip(reversed(self.paths), reversed(self._flat)):
            if not undecided.any():
                break
            idx = np.nonzero(undecided)[0]
            inside = _contains(polys, path.fill_rule, fx[idx], fy[idx])
            hit = idx[inside]
            ink[hit] = path.paints_ink
            undecided[hit] = False
        return ink.reshape(shape)

    def bbox(self) -> tuple[float, float, float, float] | None:
        """(min_x, min_y, max_x, max_y) over all flattened points, or None."""
        pts = [poly for polys in self._flat for poly in polys if len(poly)]
        if not pts:
            return None
        allp = np.vstack(pts)
        return (
            float(allp[:, 0].min()),
            float(allp[:, 1].min()),
            float(allp[:, 0].max()),
            float(allp[:, 1].max()),
        )

    def is_empty(self) -> bool:
        return not any(len(poly) >= 3 for polys in self._flat for poly in polys)


def _contains(
    polys: list[np.ndarray], rule: str, px: np.ndarray, py: np.ndarray
) -> np.ndarray:
    """Point-in-fill test over a set of closed polygons.

    Half-open edge rule (y1 <= y < y2 upward, y2 <= y < y1 downward) makes
    vertex hits unambiguous and horizontal edges inert.
    """
    acc = np.zeros(px.shape, dtype=np.int64)
    for poly in polys:
        if len(poly) < 3:
            continue
        x1 = poly[:, 0]
        y1 = poly[:, 1]
        x2 = np.roll(x1, -1)
        y2 = np.roll(y1, -1)
        for i in range(len(poly)):
            a_y, b_y = y1[i], y2[i]
            if a_y == b_y:
                continue
            up = a_y < b_y
            lo, hi = (a_y, b_y) if up else (b_y, a_y)
            m = (py >= lo) & (py < hi)
            if not m.any():
                continue
            t = (py[m] - a_y) / (b_y - a_y)
            xi = x1[i] + t * (x2[i] - x1[i])
            cross = xi > px[m]
            if rule == "evenodd":
                add = cross.astype(np.int64)
            else:
                add = np.where(cross, 1 if up else -1, 0)
            acc[m] += add
    if rule == "evenodd":
        return (acc % 2) == 1
    return acc != 0


# ---------------------------------------------------------------------------
# Flattening
# ---------------------------------------------------------------------------


def flatten_commands(commands: tuple[PathCommand, ...]) -> list[np.ndarray]:
    """Flatten path commands into closed polygons (open rings, Nx2).

    Subpaths are implicitly closed for filling, as SVG fills do.
    """
    polys: list[np.ndarray] = []
    current: list[tuple[float, float]] = []
    start = (0.0, 0.0)
    pos = (0.0, 0.0)

    def close_current() -> None:
        nonlocal current
        if len(current) >= 3:
            polys.append(np.asarray(current, dtype=np.float64))
        current = []

    for cmd in commands:
        op = cmd[0]
        if op == "M":
            close_current()
            pos = start = (cmd[1], cmd[2])
            current = [pos]
        elif op == "L":
            pos = (cmd[1], cmd[2])
            current.append(pos)
        elif op == "Q":
            x1, y1, x, y = cmd[1:]
            for k in range(1, _BEZIER_SEGMENTS + 1):
                t = k / _BEZIER_SEGMENTS
                u = 1.0 - t
                current.append(
                    (
                        u * u * pos[0] + 2 * u * t * x1 + t * t * x,
                        u * u * pos[1] + 2 * u * t * y1 + t * t * y,
                    )
                )
            pos = (x, y)
        elif op == "C":
            x1, y1, x2, y2, x, y = cmd[1:]
            for k in range(1, _BEZIER_SEGMENTS + 1):
                t = k / _BEZIER_SEGMENTS
                u = 1.0 - t
                current.append(
                    (
                        u**3 * pos[0] + 3 * u * u * t * x1 + 3 * u * t * t * x2 + t**3 * x,
                        u**3 * pos[1] + 3 * u * u * t * y1 + 3 * u * t * t * y2 + t**3 * y,
                    )
                )
            pos = (x, y)
        elif op == "A":
            pts = _flatten_arc(pos, cmd)
            current.extend(pts)
            pos = (cmd[6], cmd[7])
        elif op == "Z":
            if current:
                current.append(start)
                close_current()
            pos = start
        else:
            raise ValueError(f"unknown path command {op!r}")
    close_current()
    return polys


def _flatten_arc(pos: tuple[float, float], cmd: PathCommand) -> list[tuple[float, float]]:
    """Sample an elliptical arc (SVG endpoint parameterization)."""
    rx, ry, rot_deg, large_arc, sweep, x2, y2 = cmd[1:]
    x1, y1 = pos
    if rx == 0.0 or ry == 0.0 or (x1 == x2 and y1 == y2):
        return [(x2, y2)]
    rx, ry = abs(rx), abs(ry)
    phi = math.radians(rot_deg)
    cosp, sinp = math.cos(phi), math.sin(phi)

    # Endpoint -> center conversion, with radius scale-up when too small.
    dx, dy = (x1 - x2) / 2.0, (y1 - y2) / 2.0
    x1p = cosp * dx + sinp * dy
    y1p = -sinp * dx + cosp * dy
    lam = (x1p / rx) ** 2 + (y1p / ry) ** 2
    if lam > 1.0:
        s = math.sqrt(lam)
        rx *= s
        ry *= s
    num = rx**2 * ry**2 - rx**2 * y1p**2 - ry**2 * x1p**2
    den = rx**2 * y1p**2 + ry**2 * x1p**2
    coef = math.sqrt(max(0.0, num / den)) if den else 0.0
    if large_arc == sweep:
        coef = -coef
    cxp = coef * rx * y1p / ry
    cyp = -coef * ry * x1p / rx
    cx = cosp * cxp - sinp * cyp + (x1 + x2) / 2.0
    cy = sinp * cxp + cosp * cyp + (y1 + y2) / 2.0

    def angle(ux: float, uy: float, vx: float, vy: float) -> float:
        dot = ux * vx + uy * vy
        norm = math.hypot(ux, uy) * math.hypot(vx, vy)
        a = math.acos(max(-1.0, min(1.0, dot / norm)))
        return -a if ux * vy - uy * vx < 0 else a

    theta1 = angle(1.0, 0.0, (x1p - cxp) / rx, (y1p - cyp) / ry)
    dtheta = angle(
        (x1p - cxp) / rx, (y1p - cyp) / ry, (-x1p - cxp) / rx, (-y1p - cyp) / ry
    )
    if not sweep and dtheta > 0:
        dtheta -= 2 * math.pi
    elif sweep and dtheta < 0:
        dtheta += 2 * math.pi

    n = max(2, math.ceil(abs(dtheta) / (math.pi / 2) * _ARC_SEGMENTS_PER_QUARTER))
    pts = []
    for k in range(1, n + 1):
        th = theta1 + dtheta * (k / n)
        ex = rx * math.cos(th)
        ey = ry * math.sin(th)
        pts.append((cosp * ex - sinp * ey + cx, sinp * ex + cosp * ey + cy))
    pts[-1] = (x2, y2)  # land exactly on the endpoint
    return pts


# ---------------------------------------------------------------------------
# Affine transforms
# ---------------------------------------------------------------------------

# Affine as (a, b, c, d, e, f):  x' = a*x + c*y + e ;  y' = b*x + d*y + f
Affine = tuple[float, float, float, float, float, float]

IDENTITY: Affine = (1.0, 0.0, 0.0, 1.0, 0.0, 0.0)


def affine_compose(m1: Affine, m2: Affine) -> Affine:
    """m1 applied after m2 (matrix product m1 @ m2)."""
    a1, b1, c1, d1, e1, f1 = m1
    a2, b2, c2, d2, e2, f2 = m2
    return (
        a1 * a2 + c1 * b2,
        b1 * a2 + d1 * b2,
        a1 * c2 + c1 * d2,
        b1 * c2 + d1 * d2,
        a1 * e2 + c1 * f2 + e1,
        b1 * e2 + d1 * f2 + f1,
    )


def affine_apply(m: Affine, x: float, y: float) -> tuple[float, float]:
    a, b, c, d, e, f = m
    return (a * x + c * y + e, b * x + d * y + f)


def is_uniform_scale_translate(m: Affine) -> bool:
    a, b, c, d, _, _ = m
    return b == 0.0 and c == 0.0 and a == d and a > 0.0


def transform_commands(
    commands: tuple[PathCommand, ...], m: Affine
) -> tuple[PathCommand, ...]:
    """Map commands through a transform, preserving curves when exact.

    Uniform scale + translate maps every command type exactly (arc radii
    scale, rotation unchanged).  Anything else falls back to flattening the
    path and re-emitting it as line segments.
    """
    if m == IDENTITY:
        return tuple(commands)
    if is_uniform_scale_translate(m):
        s = m[0]
        out: list[PathCommand] = []
        for cmd in commands:
            op = cmd[0]
            if op == "Z":
                out.append(("Z",))
            elif op == "A":
                rx, ry, rot, laf, sf, x, y = cmd[1:]
                tx, ty = affine_apply(m, x, y)
                out.append(("A", rx * s, ry * s, rot, laf, sf, tx, ty))
            else:
                coords = cmd[1:]
                mapped: list[float] = []
                for i in range(0, len(coords), 2):
                    tx, ty = affine_apply(m, coords[i], coords[i + 1])
                    mapped.extend((tx, ty))
                out.append((op, *mapped))
        return tuple(out)
    # General affine: flatten, transform points, rebuild as polylines.
    out = []
    for poly in flatten_commands(tuple(commands)):
        a, b, c, d, e, f = m
        tx = a * poly[:, 0] + c * poly[:, 1] + e
        ty = b * poly[:, 0] + d * poly[:, 1] + f
        out.append(("M", float(tx[0]), float(ty[0])))
        for i in range(1, len(poly)):
            out.append(("L", float(tx[i]), float(ty[i])))
        out.append(("Z",))
    return tuple(out)


# ---------------------------------------------------------------------------
# Shape builders
# ---------------------------------------------------------------------------


def rect_commands(x: float, y: float, w: float, h: float) -> tuple[PathCommand, ...]:
    return (
        ("M", x, y),
        ("L", x + w, y),
        ("L", x + w, y + h),
        ("L", x, y + h),
        ("Z",),
    )


def ellipse_commands(cx: float, cy: float, rx: float, ry: float) -> tuple[PathCommand, ...]:
    return (
        ("M", cx + rx, cy),
        ("A", rx, ry, 0.0, 0, 1, cx - rx, cy),
        ("A", rx, ry, 0.0, 0, 1, cx + rx, cy),
        ("Z",),
    )


def polygon_commands(points: list[tuple[float, float]]) -> tuple[PathCommand, ...]:
    if not points:
        return ()
    cmds: list[PathCommand] = [("M", points[0][0], points[0][1])]
    for x, y in points[1:]:
        cmds.append(("L", x, y))
    cmds.append(("Z",))
    return tuple(cmds)


# ---------------------------------------------------------------------------
# SVG path data parsing and emission
# ---------------------------------------------------------------------------

_NUM_RE = re.compile(r"[+-]?(?:\d*\.\d+|\d+\.?)(?:[eE][+-]?\d+)?")
_WSP_RE = re.compile(r"[\s,]*")
_FLAG_RE = re.compile(r"[01]")


class _PathScanner:
    def __init__(self, d: str):
        self.d = d
        self.i = 0

    def _skip(self) -> None:
        self.i = _WSP_RE.match(self.d, self.i).end()

    def at_end(self) -> bool:
        self._skip()
        return self.i >= len(self.d)

    def peek_command(self) -> str | None:
        self._skip()
        if self.i < len(self.d) and self.d[self.i].isalpha():
            return self.d[self.i]
        return None

    def take_command(self) -> str:
        cmd = self.d[self.i]
        self.i += 1
        return cmd

    def number(self) -> float:
        self._skip()
        m = _NUM_RE.match(self.d, self.i)
        if not m:
            raise ValueError(f"bad path data near offset {self.i}: {self.d[self.i:self.i+16]!r}")
        self.i = m.end()
        return float(m.group())

    def flag(self) -> int:
        self._skip()
        m = _FLAG_RE.match(self.d, self.i)
        if not m:
            raise ValueError(f"bad arc flag near offset {self.i}")
        self.i = m.end()
        return int(m.group())

    def has_number(self) -> bool:
        self._skip()
        return bool(_NUM_RE.match(self.d, self.i))


def parse_path_data(d: str) -> tuple[PathCommand, ...]:
    """Parse an SVG path 'd' string into absolute commands.

    Supports M/L/H/V/C/S/Q/T/A/Z in both absolute and relative form, with
    implicit command repetition and compressed arc flags.  H/V become L;
    S/T expand to C/Q with reflected control points.
    """
    sc = _PathScanner(d)
    out: list[PathCommand] = []
    pos = (0.0, 0.0)
    start = (0.0, 0.0)
    last_cubic_ctrl: tuple[float, float] | None = None
    last_quad_ctrl: tuple[float, float] | None = None
    cmd = ""

    while not sc.at_end():
        nxt = sc.peek_command()
        if nxt is not None:
            cmd = sc.take_command()
        elif cmd in ("M", "m"):
            cmd = "L" if cmd == "M" else "l"  # implicit lineto after moveto
        elif cmd == "":
            raise ValueError("path data must start with a command")

        rel = cmd.islower()
        op = cmd.upper()
        ox, oy = pos if rel else (0.0, 0.0)

        if op == "Z":
            out.append(("Z",))
            pos = start
            last_cubic_ctrl = last_quad_ctrl = None
            continue
        if op == "M":
            x, y = sc.number() + ox, sc.number() + oy
            out.append(("M", x, y))
            pos = start = (x, y)
            last_cubic_ctrl = last_quad_ctrl = None
        elif op == "L":
            x, y = sc.number() + ox, sc.number() + oy
            out.append(("L", x, y))
            pos = (x, y)
            last_cubic_ctrl = last_quad_ctrl = None
        elif op == "H":
            x = sc.number() + (pos[0] if rel else 0.0)
            out.append(("L", x, pos[1]))
            pos = (x, pos[1])
            last_cubic_ctrl = last_quad_ctrl = None
        elif op == "V":
            y = sc.number() + (pos[1] if rel else 0.0)
            out.append(("L", pos[0], y))
            pos = (pos[0], y)
            last_cubic_ctrl = last_quad_ctrl = None
        elif op == "C":
            x1, y1 = sc.number() + ox, sc.number() + oy
            x2, y2 = sc.number() + ox, sc.number() + oy
            x, y = sc.number() + ox, sc.number() + oy
            out.append(("C", x1, y1, x2, y2, x, y))
            pos = (x, y)
            last_cubic_ctrl = (x2, y2)
            last_quad_ctrl = None
        elif op == "S":
            x2, y2 = sc.number() + ox, sc.number() + oy
            x, y = sc.number() + ox, sc.number() + oy
            if last_cubic_ctrl is None:
                x1, y1 = pos
            else:
                x1, y1 = 2 * pos[0] - last_cubic_ctrl[0], 2 * pos[1] - last_cubic_ctrl[1]
            out.append(("C", x1, y1, x2, y2, x, y))
            pos = (x, y)
            last_cubic_ctrl = (x2, y2)
            last_quad_ctrl = None
        elif op == "Q":
            x1, y1 = sc.number() + ox, sc.number() + oy
            x, y = sc.number() + ox, sc.number() + oy
            out.append(("Q", x1, y1, x, y))
            pos = (x, y)
            last_quad_ctrl = (x1, y1)
            last_cubic_ctrl = None
        elif op == "T":
            if last_quad_ctrl is None:
                x1, y1 = pos
            else:
                x1, y1 = 2 * pos[0] - last_quad_ctrl[0], 2 * pos[1] - last_quad_ctrl[1]
            x, y = sc.number() + ox, sc.number() + oy
            out.append(("Q", x1, y1, x, y))
            pos = (x, y)
            last_quad_ctrl = (x1, y1)
            last_cubic_ctrl = None
        elif op == "A":
            rx, ry = sc.number(), sc.number()
            rot = sc.number()
            laf, sf = sc.flag(), sc.flag()
            x, y = sc.number() + ox, sc.number() + oy
            out.append(("A", rx, ry, rot, laf, sf, x, y))
            pos = (x, y)
            last_cubic_ctrl = last_quad_ctrl = None
        else:
            raise ValueError(f"unsupported path command {cmd!r}")
    return tuple(out)


def path_data(commands: tuple[PathCommand, ...], decimals: int = 4) -> str:
    """Emit commands as an SVG path 'd' string with fixed decimal places."""

    def f(v: float) -> str:
        return f"{v:.{decimals}f}"

    parts: list[str] = []
    for cmd in commands:
        op = cmd[0]
        if op == "Z":
            parts.append("Z")
        elif op == "A":
            rx, ry, rot, laf, sf, x, y = cmd[1:]
            parts.append(f"A {f(rx)} {f(ry)} {f(rot)} {int(laf)} {int(sf)} {f(x)} {f(y)}")
        else:
            coords = " ".join(f(v) for v in cmd[1:])
            parts.append(f"{op} {coords}")
    return " ".join(parts)

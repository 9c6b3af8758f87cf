"""Command-line entry point.

Subcommands: assisted, auto, sequence, template, profile, serve.  Every
successful run echoes the effective parameter set, defaults and seed
included, so any output can be reproduced from the log line alone.

Exit codes: 0 success, 1 usage error, 2 input/file error, 3 generation
error.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from pathlib import Path

from PIL import UnidentifiedImageError

from . import __version__
from .assisted import choose_orientation, generate_assisted, load_layout_for_orientation
from .automatic import (
    GenerationParams,
    generate_automatic,
    generate_sequence,
    load_image_rgb,
)
from .config import export_template, parse_config, serialize_config
from .errors import (
    BadGeometryError,
    DanglingModuleError,
    EmptyConfigError,
    EmptyDirectoryError,
    EmptyPaletteError,
    IndexOverflowError,
    ModgridError,
    ParamError,
    RasterSizeError,
)
from .export import RenderOptions, render_png, render_svg, save_png, save_svg
from .palette import (
    DEFAULT_PROFILE_RESOLUTION,
    ModulePalette,
    default_palette,
    load_palette,
    refresh_profile_cache,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_GENERATION = 3

PALETTE_ENV_VAR = "MODGRID_PALETTE"
DEFAULT_MODULE_COUNT = 10

_INPUT_ERRORS = (
    EmptyPaletteError,
    BadGeometryError,
    IndexOverflowError,
    EmptyConfigError,
    EmptyDirectoryError,
    UnidentifiedImageError,
    FileNotFoundError,
    IsADirectoryError,
    NotADirectoryError,
    PermissionError,
)

_HEX_COLOR_RE = re.compile(r"^#?([0-9a-fA-F]{6})$")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse, but usage problems exit 1 per the documented code map."""

    def error(self, message: str):  # noqa: D102
        raise _UsageError(message)


def _color(value: str) -> tuple[int, int, int]:
    m = _HEX_COLOR_RE.match(value)
    if not m:
        raise argparse.ArgumentTypeError(f"expected #rrggbb, got {value!r}")
    v = m.group(1)
    return (int(v[0:2], 16), int(v[2:4], 16), int(v[4:6], 16))


def _fresh_seed() -> int:
    return time.time_ns() & ((1 << 63) - 1)


def _add_palette_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--palette",
        default=None,
        help=f"palette directory of *.svg modules (default: ${PALETTE_ENV_VAR}, "
        "else the built-in palette)",
    )
    p.add_argument(
        "--modules",
        type=int,
        default=DEFAULT_MODULE_COUNT,
        help="module count of the built-in palette when no directory is given",
    )
    p.add_argument("--s", type=int, default=3, help="brightness profile order")


def _add_render_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--px-per-unit", type=float, default=1.0, help="PNG scale factor")
    p.add_argument("--fg", type=_color, default=(0, 0, 0), help="foreground color (#rrggbb)")
    p.add_argument("--bg", type=_color, default=(255, 255, 255), help="background color (#rrggbb)")
    p.add_argument("--invert", action="store_true", help="swap foreground and background")
    p.add_argument("--flatten", action="store_true", help="emit standalone SVG paths instead of defs/use")


def build_parser() -> _Parser:
    parser = _Parser(prog="modgrid", description=__doc__)
    parser.add_argument("--version", action="version", version=f"modgrid {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("assisted", help="generate from a configuration file")
    p.add_argument("--config", help="configuration file (.mcfg)")
    p.add_argument("--config-dir", help="directory with horizontal.mcfg / vertical.mcfg")
    p.add_argument("--width", type=float, required=True, help="canvas width")
    p.add_argument("--height", type=float, required=True, help="canvas height")
    p.add_argument("--seed", type=int, default=None, help="random seed (default: from clock)")
    p.add_argument("-o", "--out", required=True, help="output basename (writes OUT.svg, OUT.png, OUT.used.mcfg)")
    _add_palette_flags(p)
    _add_render_flags(p)

    p = sub.add_parser("auto", help="generate from an input image")
    p.add_argument("--image", required=True, help="input image (PNG, PPM, ...)")
    p.add_argument("--rows", type=int, required=True, help="grid row count")
    p.add_argument("--tau", type=float, default=0.05, help="selection temperature (0 = greedy)")
    p.add_argument("--norm-min", type=float, default=0.0, help="normalization lower threshold")
    p.add_argument("--norm-max", type=float, default=1.0, help="normalization upper threshold")
    p.add_argument("--place-max", type=float, default=0.98, help="placement brightness cutoff")
    p.add_argument("--skip-dark", action="store_true", help="skip dark cells instead of bright ones")
    p.add_argument("--seed", type=int, default=None, help="random seed (default: from clock)")
    p.add_argument("-o", "--out", required=True, help="output basename (writes OUT.svg, OUT.png)")
    _add_palette_flags(p)
    _add_render_flags(p)

    p = sub.add_parser("sequence", help="generate one output per frame in a directory")
    p.add_argument("--frames", required=True, help="directory of image frames")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--tau", type=float, default=0.05)
    p.add_argument("--norm-min", type=float, default=0.0)
    p.add_argument("--norm-max", type=float, default=1.0)
    p.add_argument("--place-max", type=float, default=0.98)
    p.add_argument("--skip-dark", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--out", required=True, help="output directory")
    _add_palette_flags(p)
    _add_render_flags(p)

    p = sub.add_parser("template", help="export a blank configuration template")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("-o", "--out", required=True, help="output file")

    p = sub.add_parser("profile", help="write/refresh the palette profile cache")
    p.add_argument("--palette", required=True, help="palette directory")
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--resolution", type=int, default=DEFAULT_PROFILE_RESOLUTION)

    p = sub.add_parser("serve", help="start the local preview service")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1", help="bind address (loopback by default)")
    p.add_argument("--ui-dist", default=None, help="built UI bundle to serve at /")
    _add_palette_flags(p)

    return parser


def _load_palette_from_args(args: argparse.Namespace) -> ModulePalette:
    palette_dir = args.palette or os.environ.get(PALETTE_ENV_VAR)
    if palette_dir:
        return load_palette(palette_dir, s=args.s)
    if not 1 <= args.modules <= 33:
        raise _UsageError(f"--modules must be in 1..33, got {args.modules}")
    return default_palette(args.modules, s=args.s)


def _render_options(args: argparse.Namespace) -> RenderOptions:
    if args.px_per_unit <= 0:
        raise _UsageError(f"--px-per-unit must be positive, got {args.px_per_unit}")
    return RenderOptions(
        px_per_unit=args.px_per_unit,
        foreground=args.fg,
        background=args.bg,
        invert=args.invert,
        flatten=args.flatten,
    )


def _out_base(out: str) -> Path:
    base = re.sub(r"\.(svg|png)$", "", out)
    path = Path(base)
    if path.parent != Path("."):
        path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _echo(command: str, **kv) -> None:
    pairs = " ".join(f"{k}={v}" for k, v in kv.items())
    print(f"modgrid {command}: {pairs}")


def _palette_label(args: argparse.Namespace) -> str:
    return args.palette or os.environ.get(PALETTE_ENV_VAR) or f"<builtin:{args.modules}>"


def _color_hex(color: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*color)


def _cmd_assisted(args: argparse.Namespace) -> int:
    if not args.config and not args.config_dir:
        raise _UsageError("assisted needs --config or --config-dir")
    if args.width <= 0 or args.height <= 0:
        raise _UsageError("--width and --height must be positive")
    seed = args.seed if args.seed is not None else _fresh_seed()
    palette = _load_palette_from_args(args)
    opts = _render_options(args)

    if args.config:
        layout = parse_config(Path(args.config).read_text(encoding="utf-8"))
        source = args.config
    else:
        orientation = choose_orientation(args.width, args.height)
        layout = load_layout_for_orientation(args.config_dir, orientation)
        source = f"{args.config_dir}:{orientation.value}"

    comp = generate_assisted(layout, palette, args.width, args.height, seed)
    base = _out_base(args.out)
    save_svg(render_svg(comp, palette, opts), base.with_suffix(".svg"))
    save_png(render_png(comp, palette, opts), base.with_suffix(".png"))
    base.with_suffix(".used.mcfg").write_text(serialize_config(layout), encoding="utf-8")
    _echo(
        "assisted",
        config=source,
        width=args.width,
        height=args.height,
        palette=_palette_label(args),
        s=args.s,
        seed=seed,
        px_per_unit=opts.px_per_unit,
        fg=_color_hex(args.fg),
        bg=_color_hex(args.bg),
        invert=opts.invert,
        flatten=opts.flatten,
        out=base,
    )
    return EXIT_OK


def _auto_params(args: argparse.Namespace, seed: int) -> GenerationParams:
    try:
        return GenerationParams(
            rows=args.rows,
            seed=seed,
            norm_min=args.norm_min,
            norm_max=args.norm_max,
            place_max=args.place_max,
            s=args.s,
            tau=args.tau,
            skip_dark=args.skip_dark,
        )
    except ParamError as exc:
        raise _UsageError(str(exc)) from exc


def _echo_auto(command: str, args: argparse.Namespace, seed: int, **extra) -> None:
    _echo(
        command,
        rows=args.rows,
        tau=args.tau,
        norm_min=args.norm_min,
        norm_max=args.norm_max,
        place_max=args.place_max,
        skip_dark=args.skip_dark,
        palette=_palette_label(args),
        s=args.s,
        seed=seed,
        px_per_unit=args.px_per_unit,
        fg=_color_hex(args.fg),
        bg=_color_hex(args.bg),
        invert=args.invert,
        flatten=args.flatten,
        **extra,
    )


def _cmd_auto(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _fresh_seed()
    params = _auto_params(args, seed)
    palette = _load_palette_from_args(args)
    opts = _render_options(args)
    image = load_image_rgb(args.image)
    comp = generate_automatic(image, palette, params)
    base = _out_base(args.out)
    save_svg(render_svg(comp, palette, opts), base.with_suffix(".svg"))
    save_png(render_png(comp, palette, opts), base.with_suffix(".png"))
    _echo_auto("auto", args, seed, image=args.image, out=base)
    return EXIT_OK


def _cmd_sequence(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _fresh_seed()
    params = _auto_params(args, seed)
    palette = _load_palette_from_args(args)
    opts = _render_options(args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    results = generate_sequence(args.frames, palette, params)
    failures = 0
    for res in results:
        if res.composition is None:
            failures += 1
            print(f"error: frame {res.frame_index}: {res.error}", file=sys.stderr)
            continue
        stem = out_dir / f"frame_{res.frame_index:04d}"
        save_svg(render_svg(res.composition, palette, opts), stem.with_suffix(".svg"))
        save_png(render_png(res.composition, palette, opts), stem.with_suffix(".png"))
    if failures == len(results):
        print("error: every frame failed", file=sys.stderr)
        return EXIT_GENERATION
    _echo_auto(
        "sequence", args, seed,
        frames=args.frames, out=out_dir, generated=len(results) - failures,
    )
    return EXIT_OK


def _cmd_template(args: argparse.Namespace) -> int:
    try:
        text = export_template(args.rows, args.cols)
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    out = Path(args.out)
    if out.parent != Path("."):
        out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    _echo("template", rows=args.rows, cols=args.cols, out=out)
    return EXIT_OK


def _cmd_profile(args: argparse.Namespace) -> int:
    if args.s < 1:
        raise _UsageError(f"--s must be >= 1, got {args.s}")
    if args.resolution < 1:
        raise _UsageError(f"--resolution must be >= 1, got {args.resolution}")
    path = refresh_profile_cache(args.palette, s=args.s, resolution=args.resolution)
    _echo("profile", palette=args.palette, s=args.s, resolution=args.resolution, cache=path)
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    palette = _load_palette_from_args(args)
    app = create_app(palette, ui_dist=args.ui_dist)
    _echo(
        "serve",
        palette=_palette_label(args),
        s=args.s,
        host=args.host,
        port=args.port,
        ui_dist=args.ui_dist,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


_COMMANDS = {
    "assisted": _cmd_assisted,
    "auto": _cmd_auto,
    "sequence": _cmd_sequence,
    "template": _cmd_template,
    "profile": _cmd_profile,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DanglingModuleError, RasterSizeError, ParamError, ModgridError, OSError) as exc:
        print(f"generation error: {exc}", file=sys.stderr)
        return EXIT_GENERATION


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

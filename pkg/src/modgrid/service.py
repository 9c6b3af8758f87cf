"""Local HTTP preview service for the browser steering loop.

Endpoints (JSON unless noted):

    POST /api/upload            image bytes -> {token, width, height}
    POST /api/generate          GenerateRequest -> {variants: [...]}
    GET  /api/palette           -> {modules: [{index_char, svg, mean_brightness}]}
    GET  /api/template?rows&cols-> text/plain blank template

Generation is pure, so every response is reproducible from the echoed seed
and parameters.  The only state is the in-memory upload store (1 hour
expiry).  Binds loopback by default via the CLI; this is a designer's local
tool.
"""

from __future__ import annotations

import base64
import io
import secrets
import threading
import time
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, Request
from fastapi.concurrency import run_in_threadpool
from fastapi.responses import JSONResponse, PlainTextResponse
from PIL import Image, UnidentifiedImageError

from .assisted import generate_assisted
from .automatic import GenerationParams, generate_automatic, grid_from_image
from .composition import Composition
from .config import export_template, parse_config
from .errors import EmptyConfigError, ModgridError, ParamError
from .export import RenderOptions, module_svg_doc, render_png, render_svg
from .palette import ModulePalette

MAX_UPLOAD_BYTES = 32 * 1024 * 1024
UPLOAD_TTL_SECONDS = 3600
MAX_VARIANTS = 16
MAX_GRID_SIDE = 512
THUMBNAIL_LONG_EDGE = 512


@dataclass
class _Upload:
    pixels: np.ndarray
    expires: float


@dataclass
class _UploadStore:
    """Token-keyed decoded images; single lock, entries expire after 1 h."""

    ttl: float = UPLOAD_TTL_SECONDS
    _entries: dict[str, _Upload] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def put(self, pixels: np.ndarray) -> str:
        token = secrets.token_hex(16)
        with self._lock:
            self._purge()
            self._entries[token] = _Upload(pixels=pixels, expires=time.time() + self.ttl)
        return token

    def get(self, token: str) -> np.ndarray | None:
        with self._lock:
            self._purge()
            entry = self._entries.get(token)
            return entry.pixels if entry else None

    def _purge(self) -> None:
        now = time.time()
        dead = [k for k, v in self._entries.items() if v.expires <= now]
        for k in dead:
            del self._entries[k]


def _thumbnail_b64(comp: Composition, palette: ModulePalette) -> str:
    ppu = THUMBNAIL_LONG_EDGE / max(comp.canvas_w, comp.canvas_h)
    buffer = render_png(comp, palette, RenderOptions(px_per_unit=ppu))
    out = io.BytesIO()
    Image.fromarray(buffer, mode="RGB").save(out, format="PNG")
    return base64.b64encode(out.getvalue()).decode("ascii")


def _field_errors(errors: dict[str, str]) -> JSONResponse:
    return JSONResponse(status_code=400, content={"errors": errors})


def _number(body: dict, key: str, errors: dict[str, str], *, required: bool = False,
            default=None, minimum=None, maximum=None, integral: bool = False):
    if key not in body or body[key] is None:
        if required:
            errors[key] = "field is required"
        return default
    value = body[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        errors[key] = "must be a number"
        return default
    if integral and int(value) != value:
        errors[key] = "must be an integer"
        return default
    if minimum is not None and value < minimum:
        errors[key] = f"must be >= {minimum}"
        return default
    if maximum is not None and value > maximum:
        errors[key] = f"must be <= {maximum}"
        return default
    return int(value) if integral else float(value)


def create_app(palette: ModulePalette, ui_dist: str | None = None) -> FastAPI:
    """Build the service around one immutable palette."""
    app = FastAPI(title="modgrid preview service", docs_url=None, redoc_url=None)
    uploads = _UploadStore()

    def _decode_and_store(raw: bytes):
        try:
            img = Image.open(io.BytesIO(raw))
            pixels = np.asarray(img.convert("RGB"), dtype=np.uint8)
        except (UnidentifiedImageError, OSError, ValueError):
            return JSONResponse(
                status_code=415, content={"detail": "unsupported image format"}
            )
        if pixels.size == 0:
            return JSONResponse(
                status_code=415, content={"detail": "image has no pixels"}
            )
        token = uploads.put(pixels)
        return {"token": token, "width": pixels.shape[1], "height": pixels.shape[0]}

    @app.post("/api/upload")
    async def upload(request: Request):
        raw = await request.body()
        if len(raw) > MAX_UPLOAD_BYTES:
            return JSONResponse(
                status_code=413,
                content={"detail": f"upload exceeds {MAX_UPLOAD_BYTES} bytes"},
            )
        return await run_in_threadpool(_decode_and_store, raw)

    @app.post("/api/generate")
    async def generate(request: Request):
        try:
            body = await request.json()
        except ValueError:
            return _field_errors({"body": "request body must be JSON"})
        if not isinstance(body, dict):
            return _field_errors({"body": "request body must be a JSON object"})

        errors: dict[str, str] = {}
        method = body.get("method")
        if method not in ("assisted", "automatic"):
            errors["method"] = "must be 'assisted' or 'automatic'"
        variants = _number(
            body, "variants", errors, default=1, minimum=1, maximum=MAX_VARIANTS,
            integral=True,
        )
        seed0 = _number(body, "seed", errors, default=None, integral=True)
        if seed0 is None:
            seed0 = time.time_ns() & ((1 << 63) - 1)
        if errors:
            return _field_errors(errors)

        # Generation runs in the threadpool so the accept loop stays free.
        if method == "assisted":
            return await run_in_threadpool(_generate_assisted, body, seed0, variants)
        return await run_in_threadpool(_generate_automatic, body, seed0, variants)

    def _generate_assisted(body: dict, seed0: int, variants: int):
        errors: dict[str, str] = {}
        config_text = body.get("config_text")
        if not isinstance(config_text, str) or not config_text:
            errors["config_text"] = "field is required"
        width = _number(body, "width", errors, required=True, minimum=1e-6)
        height = _number(body, "height", errors, required=True, minimum=1e-6)
        if errors:
            return _field_errors(errors)
        try:
            layout = parse_config(config_text)
        except EmptyConfigError as exc:
            return _field_errors({"config_text": str(exc)})
        if layout.rows > MAX_GRID_SIDE or layout.cols > MAX_GRID_SIDE:
            return JSONResponse(
                status_code=422,
                content={"detail": f"grid exceeds {MAX_GRID_SIDE}x{MAX_GRID_SIDE} cells"},
            )
        out = []
        for i in range(variants):
            seed = seed0 + i
            comp = generate_assisted(layout, palette, width, height, seed)
            out.append(
                {
                    "seed": seed,
                    "svg": render_svg(comp, palette),
                    "thumbnail_png_base64": _thumbnail_b64(comp, palette),
                }
            )
        return {"variants": out}

    def _generate_automatic(body: dict, seed0: int, variants: int):
        errors: dict[str, str] = {}
        token = body.get("image_ref")
        if not isinstance(token, str) or not token:
            errors["image_ref"] = "field is required"
        rows = _number(body, "rows", errors, required=True, minimum=1, integral=True)
        norm_min = _number(body, "norm_min", errors, default=0.0, minimum=0.0, maximum=1.0)
        norm_max = _number(body, "norm_max", errors, default=1.0, minimum=0.0, maximum=1.0)
        place_max = _number(body, "place_max", errors, default=0.98, maximum=1.0)
        tau = _number(body, "tau", errors, default=0.05, minimum=0.0)
        s = _number(body, "s", errors, default=palette.order, integral=True)
        skip_dark = body.get("skip_dark", False)
        if not isinstance(skip_dark, bool):
            errors["skip_dark"] = "must be a boolean"
        if s is not None and s != palette.order:
            errors["s"] = f"palette is profiled at order {palette.order}"
        if errors:
            return _field_errors(errors)

        pixels = uploads.get(token)
        if pixels is None:
            return JSONResponse(status_code=404, content={"detail": "unknown image token"})

        try:
            params = GenerationParams(
                rows=rows,
                seed=seed0,
                norm_min=norm_min,
                norm_max=norm_max,
                place_max=place_max,
                s=s,
                tau=tau,
                skip_dark=skip_dark,
            )
            grid_rows, grid_cols, _ = grid_from_image(
                pixels.shape[1], pixels.shape[0], rows
            )
        except ParamError as exc:
            return _field_errors({"rows": str(exc)})
        if grid_rows > MAX_GRID_SIDE or grid_cols > MAX_GRID_SIDE:
            return JSONResponse(
                status_code=422,
                content={"detail": f"grid exceeds {MAX_GRID_SIDE}x{MAX_GRID_SIDE} cells"},
            )

        out = []
        try:
            for i in range(variants):
                seed = seed0 + i
                comp = generate_automatic(
                    pixels,
                    palette,
                    GenerationParams(
                        rows=rows,
                        seed=seed,
                        norm_min=norm_min,
                        norm_max=norm_max,
                        place_max=place_max,
                        s=s,
                        tau=tau,
                        skip_dark=skip_dark,
                    ),
                )
                out.append(
                    {
                        "seed": seed,
                        "svg": render_svg(comp, palette),
                        "thumbnail_png_base64": _thumbnail_b64(comp, palette),
                    }
                )
        except (ModgridError, ValueError) as exc:
            return JSONResponse(status_code=422, content={"detail": str(exc)})
        return {"variants": out}

    @app.get("/api/palette")
    def palette_sheet():
        return {
            "modules": [
                {
                    "index_char": m.index_char,
                    "svg": module_svg_doc(m),
                    "mean_brightness": m.profile.mean(),
                }
                for m in palette.modules
            ]
        }

    @app.get("/api/template")
    def template(rows: str = "", cols: str = ""):
        try:
            r, c = int(rows), int(cols)
        except ValueError:
            return _field_errors({"rows": "rows and cols must be integers"})
        try:
            text = export_template(r, c)
        except ValueError as exc:
            return _field_errors({"rows": str(exc)})
        return PlainTextResponse(text)

    if ui_dist:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dist, html=True), name="ui")

    return app

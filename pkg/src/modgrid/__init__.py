"""modgrid: a modular grid composition engine.

Assembles a fixed palette of square black-and-white vector modules into
logotypes, letterings, patterns, and image-depicting mosaics.  Two methods:
assisted generation places modules from a text configuration grid;
automatic generation places them by matching module brightness profiles
against an input image.
"""

from .assisted import (
    Orientation,
    choose_orientation,
    generate_assisted,
    load_layout_for_orientation,
)
from .automatic import (
    FrameResult,
    GenerationParams,
    GreyRaster,
    cell_profile,
    generate_automatic,
    generate_sequence,
    grid_from_image,
    load_image_rgb,
    module_distance,
    normalize,
    select_module,
    to_greyscale,
)
from .composition import Composition
from .config import (
    CellKind,
    CellSpec,
    ConfigLayout,
    export_template,
    parse_config,
    serialize_config,
)
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
    StrictParseError,
)
from .export import RenderOptions, render_png, render_svg, save_png, save_svg
from .palette import (
    BrightnessProfile,
    INDEX_CHARS,
    Module,
    ModulePalette,
    default_palette,
    load_palette,
    profile_module,
    refresh_profile_cache,
)
from .rng import mix, u01

__version__ = "0.1.0"

__all__ = [
    "BadGeometryError",
    "BrightnessProfile",
    "CellKind",
    "CellSpec",
    "Composition",
    "ConfigLayout",
    "DanglingModuleError",
    "EmptyConfigError",
    "EmptyDirectoryError",
    "EmptyPaletteError",
    "FrameResult",
    "GenerationParams",
    "GreyRaster",
    "INDEX_CHARS",
    "IndexOverflowError",
    "ModgridError",
    "Module",
    "ModulePalette",
    "Orientation",
    "ParamError",
    "RasterSizeError",
    "RenderOptions",
    "StrictParseError",
    "cell_profile",
    "choose_orientation",
    "default_palette",
    "export_template",
    "generate_assisted",
    "generate_automatic",
    "generate_sequence",
    "grid_from_image",
    "load_image_rgb",
    "load_layout_for_orientation",
    "load_palette",
    "mix",
    "module_distance",
    "normalize",
    "parse_config",
    "profile_module",
    "refresh_profile_cache",
    "render_png",
    "render_svg",
    "save_png",
    "save_svg",
    "select_module",
    "serialize_config",
    "to_greyscale",
    "u01",
]

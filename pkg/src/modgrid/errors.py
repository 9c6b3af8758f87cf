"""Exception hierarchy for the modgrid engine."""

from __future__ import annotations


class ModgridError(Exception):
    """Base class for all engine errors."""


class EmptyPaletteError(ModgridError):
    """Palette directory contains no module files."""


class BadGeometryError(ModgridError):
    """Module file rejected: non-square viewport or unusable geometry."""


class IndexOverflowError(ModgridError):
    """More module files than assignable index characters."""


class EmptyConfigError(ModgridError):
    """Configuration text has zero lines or an empty first line."""


class StrictParseError(ModgridError):
    """Strict parse mode hit a character with no defined meaning."""

    def __init__(self, message: str, line: int, col: int, char: str):
        super().__init__(message)
        self.line = line
        self.col = col
        self.char = char


class ParamError(ModgridError):
    """Generation parameter out of its documented range."""


class DanglingModuleError(ModgridError):
    """Composition references a module index outside the palette."""


class RasterSizeError(ModgridError):
    """Requested raster exceeds the pixel-count guard."""


class EmptyDirectoryError(ModgridError):
    """Frame directory contains no image files."""

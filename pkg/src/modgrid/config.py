"""Placement configuration files: parsing, repair, and templates.

A configuration is plain text: each line is a grid row, each character a
cell.  '0' leaves the cell empty, '*' asks for a random module, an index
character ('1'..'9', 'A'..'Z') pins a specific module.  Malformed input is
repaired rather than rejected:

  * the first line fixes the column count; longer lines are truncated,
    shorter lines padded with empty cells;
  * a blank line is a full row of empty cells;
  * any character with no defined meaning reads as '*'.

'o' and 'O' are accepted as aliases of '0' on input; serialization always
emits '0'.  The only rejected input is an empty text or an empty first
line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .errors import EmptyConfigError, StrictParseError

# Canonical cell characters: '0' empty, '*' random, the rest fixed indices.
# 'O' canonicalizes to '0'; 'I' stays a legal fixed reference (it simply
# never matches a palette, see palette.INDEX_CHARS).
_EMPTY_ALIASES = "oO"
_UNKNOWN_RE = re.compile(r"[^0-9A-Z*]")
_STRICT_BAD_RE = re.compile(r"[^0-9oOA-Z*]")
_NON_CANONICAL_RE = re.compile(r"[^0-9A-NP-Z*]")

CONFIG_EXTENSION = ".mcfg"


class CellKind(Enum):
    EMPTY = "empty"
    RANDOM = "random"
    FIXED = "fixed"


@dataclass(frozen=True)
class CellSpec:
    """One cell directive."""

    kind: CellKind
    index_char: str | None = None

    def __post_init__(self) -> None:
        if self.kind is CellKind.FIXED:
            c = self.index_char
            if c is None or not _is_fixed_char(c):
                raise ValueError(f"not a fixed-cell index character: {c!r}")
        elif self.index_char is not None:
            raise ValueError(f"{self.kind.value} cell carries no index character")

    @property
    def char(self) -> str:
        """Canonical configuration character for this cell."""
        if self.kind is CellKind.EMPTY:
            return "0"
        if self.kind is CellKind.RANDOM:
            return "*"
        return self.index_char  # type: ignore[return-value]


def _is_fixed_char(c: str) -> bool:
    # 'O' is the empty alias, so it can never be a fixed reference.
    return len(c) == 1 and (("1" <= c <= "9") or ("A" <= c <= "Z" and c != "O"))


EMPTY = CellSpec(CellKind.EMPTY)
RANDOM = CellSpec(CellKind.RANDOM)
_CELL_CACHE: dict[str, CellSpec] = {"0": EMPTY, "*": RANDOM}


def cell_from_char(c: str) -> CellSpec:
    """CellSpec for one canonical character."""
    spec = _CELL_CACHE.get(c)
    if spec is None:
        spec = CellSpec(CellKind.FIXED, c)
        _CELL_CACHE[c] = spec
    return spec


@dataclass(frozen=True)
class ConfigLayout:
    """A rectangular grid of cell directives.

    Rows are stored as canonical strings (one character per cell), which
    keeps parsing, comparison and serialization cheap on large grids.
    """

    rows: int
    cols: int
    cells: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("layout needs at least one row and one column")
        if len(self.cells) != self.rows or any(len(r) != self.cols for r in self.cells):
            raise ValueError("cells must form an exact rows x cols matrix")
        for line in self.cells:
            m = _NON_CANONICAL_RE.search(line)
            if m:
                raise ValueError(f"non-canonical cell character {m.group()!r}")

    def cell(self, row: int, col: int) -> CellSpec:
        return cell_from_char(self.cells[row][col])

    def cell_matrix(self) -> list[list[CellSpec]]:
        return [[cell_from_char(c) for c in line] for line in self.cells]

    def count_empty(self) -> int:
        return sum(line.count("0") for line in self.cells)


def _split_lines(text: str) -> list[str]:
    """LF/CRLF split; one trailing newline does not add a trailing row."""
    lines = text.split("\n")
    if len(lines) > 1 and lines[-1] == "":
        lines.pop()
    return [ln[:-1] if ln.endswith("\r") else ln for ln in lines]


def parse_config(text: str, strict: bool = False) -> ConfigLayout:
    """Parse configuration text, repairing malformed input.

    The first line fixes the column count.  With strict=True, a character
    outside the defined set raises StrictParseError instead of being read
    as '*' (intended for authoring; padding and truncation stay silent).
    """
    lines = _split_lines(text)
    if not lines or lines[0] == "":
        raise EmptyConfigError("configuration needs a non-empty first line")
    cols = len(lines[0])

    if strict:
        for i, line in enumerate(lines):
            m = _STRICT_BAD_RE.search(line[:cols])
            if m:
                raise StrictParseError(
                    f"line {i + 1}, column {m.start() + 1}: "
                    f"character {m.group()!r} has no meaning",
                    line=i + 1,
                    col=m.start() + 1,
                    char=m.group(),
                )

    canon = []
    for line in lines:
        line = line[:cols]
        for alias in _EMPTY_ALIASES:
            if alias in line:
                line = line.replace(alias, "0")
        line = _UNKNOWN_RE.sub("*", line)
        if len(line) < cols:
            line = line + "0" * (cols - len(line))
        canon.append(line)
    return ConfigLayout(rows=len(canon), cols=cols, cells=tuple(canon))


def serialize_config(layout: ConfigLayout) -> str:
    """Canonical text for a layout; parse_config round-trips it exactly."""
    return "\n".join(layout.cells) + "\n"


def export_template(rows: int, cols: int) -> str:
    """Blank template: `rows` lines of `cols` zeros, newline-terminated."""
    if rows < 1 or cols < 1:
        raise ValueError(f"template needs rows, cols >= 1 (got {rows}, {cols})")
    return ("0" * cols + "\n") * rows

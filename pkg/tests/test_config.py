from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modgrid.config import (
    CellKind,
    CellSpec,
    ConfigLayout,
    cell_from_char,
    export_template,
    parse_config,
    serialize_config,
)
from modgrid.errors import EmptyConfigError, StrictParseError


def kinds(layout: ConfigLayout) -> list[list[str]]:
    return [[layout.cell(r, c).kind.value for c in range(layout.cols)] for r in range(layout.rows)]


# ---------------------------------------------------------------------------
# parse_config
# ---------------------------------------------------------------------------


def test_parse_short_line_padded():
    layout = parse_config("0*1\n2")
    assert (layout.rows, layout.cols) == (2, 3)
    assert layout.cells == ("0*1", "200")
    assert layout.cell(0, 1) == CellSpec(CellKind.RANDOM)
    assert layout.cell(0, 2) == CellSpec(CellKind.FIXED, "1")
    assert layout.cell(1, 0) == CellSpec(CellKind.FIXED, "2")
    assert layout.cell(1, 1) == CellSpec(CellKind.EMPTY)


def test_parse_blank_line_is_empty_row():
    layout = parse_config("12345\n\n*")
    assert (layout.rows, layout.cols) == (3, 5)
    assert layout.cells[1] == "00000"
    assert layout.cells[2] == "*0000"


def test_parse_long_line_truncated():
    layout = parse_config("00\n0000")
    assert (layout.rows, layout.cols) == (2, 2)
    assert layout.cells == ("00", "00")
    assert layout.count_empty() == 4


def test_parse_empty_text_rejected():
    with pytest.raises(EmptyConfigError):
        parse_config("")
    with pytest.raises(EmptyConfigError):
        parse_config("\n123")


def test_unknown_characters_become_random():
    layout = parse_config("a!?\nz .")
    assert layout.cells == ("***", "***")


def test_lowercase_o_and_uppercase_o_are_empty():
    layout = parse_config("oO0\n*oX")
    assert layout.cells == ("000", "*0X")


def test_crlf_and_trailing_newline():
    assert parse_config("01\r\n2*\r\n").cells == ("01", "2*")
    assert parse_config("01\n").rows == 1
    assert parse_config("01\n\n").rows == 2  # inner blank line still a row


def test_strict_mode_rejects_unknown_chars():
    with pytest.raises(StrictParseError) as exc_info:
        parse_config("0*\n1x", strict=True)
    assert exc_info.value.line == 2
    assert exc_info.value.col == 2
    assert exc_info.value.char == "x"
    # o/O are defined (empty aliases): no error
    assert parse_config("oO\n**", strict=True).cells == ("00", "**")
    # characters beyond the column cut don't count
    assert parse_config("00\n00x", strict=True).cells == ("00", "00")


# ---------------------------------------------------------------------------
# export_template / serialize_config
# ---------------------------------------------------------------------------


def test_template_examples():
    assert export_template(1, 1) == "0\n"
    assert export_template(2, 3) == "000\n000\n"
    with pytest.raises(ValueError):
        export_template(0, 5)
    with pytest.raises(ValueError):
        export_template(5, 0)


def test_template_round_trip_5x40():
    layout = parse_config(export_template(5, 40))
    assert (layout.rows, layout.cols) == (5, 40)
    assert layout.count_empty() == 200


def test_serialize_examples():
    assert serialize_config(parse_config("00\n00")) == "00\n00\n"
    assert serialize_config(parse_config("0*1\n2")) == "0*1\n200\n"
    layout = parse_config("A0\n0A")
    text = serialize_config(layout)
    assert text == "A0\n0A\n"
    assert parse_config(text) == layout


# ---------------------------------------------------------------------------
# CellSpec / ConfigLayout validation
# ---------------------------------------------------------------------------


def test_cellspec_rejects_bad_fixed_chars():
    with pytest.raises(ValueError):
        CellSpec(CellKind.FIXED, "O")  # alias of empty, never a module
    with pytest.raises(ValueError):
        CellSpec(CellKind.FIXED, "a")
    with pytest.raises(ValueError):
        CellSpec(CellKind.FIXED, "0")
    with pytest.raises(ValueError):
        CellSpec(CellKind.EMPTY, "1")


def test_cell_from_char_caches_singletons():
    assert cell_from_char("0") is cell_from_char("0")
    assert cell_from_char("B") is cell_from_char("B")


def test_layout_rejects_ragged_or_noncanonical():
    with pytest.raises(ValueError):
        ConfigLayout(rows=2, cols=2, cells=("00", "000"))
    with pytest.raises(ValueError):
        ConfigLayout(rows=1, cols=2, cells=("O0",))
    with pytest.raises(ValueError):
        ConfigLayout(rows=0, cols=1, cells=())


# ---------------------------------------------------------------------------
# Properties
# ---------------------------------------------------------------------------

config_texts = st.text(
    alphabet=st.characters(min_codepoint=32, max_codepoint=126),
    min_size=0,
    max_size=200,
).map(lambda s: s.replace("\r", ""))  # bare CR is covered by explicit tests


@given(config_texts)
@settings(max_examples=300, deadline=None)
def test_parse_total_and_rectangular(text):
    lines = text.split("\n")
    if len(lines) > 1 and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] == "":
        with pytest.raises(EmptyConfigError):
            parse_config(text)
        return
    layout = parse_config(text)
    assert layout.cols == len(lines[0])
    assert layout.rows == len(lines)
    assert all(len(row) == layout.cols for row in layout.cells)


@given(config_texts)
@settings(max_examples=300, deadline=None)
def test_repair_is_idempotent(text):
    try:
        layout = parse_config(text)
    except EmptyConfigError:
        return
    assert parse_config(serialize_config(layout)) == layout


@given(st.integers(1, 100), st.integers(1, 100))
@settings(max_examples=60, deadline=None)
def test_template_round_trip_property(rows, cols):
    layout = parse_config(export_template(rows, cols))
    assert (layout.rows, layout.cols) == (rows, cols)
    assert layout.count_empty() == rows * cols

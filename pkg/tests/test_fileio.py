import json

import pytest

from weakbrace.errors import ParseError
from weakbrace.fileio import (
    dumps_json,
    format_table_document,
    format_tables,
    parse_semilattice_text,
    parse_table_text,
    read_semilattice_file,
    read_table_file,
)

GOOD = """# comment
elements: 0 1

op add:
0 1
1 0
"""


def test_parse_basic():
    doc = parse_table_text(GOOD)
    assert doc.names == ("0", "1")
    assert doc.ops["add"].table == ((0, 1), (1, 0))
    assert doc.comments == ["# comment"]


def test_table_files_round_trip_byte_identical(data_dir):
    files = sorted(data_dir.glob("*.tbl"))
    assert len(files) >= 10
    for path in files:
        text = path.read_text()
        assert format_table_document(parse_table_text(text)) == text, path.name


def test_format_tables_reorders():
    doc = parse_table_text(GOOD)
    t = doc.ops["add"].reordered(("1", "0"))
    out = format_tables(("0", "1"), add=t)
    assert parse_table_text(out).ops["add"] == doc.ops["add"]


@pytest.mark.parametrize("text,fragment", [
    ("", "missing elements"),
    ("elements: 0 1\n", "no op blocks"),
    ("op add:\n0\n", "before elements"),
    ("elements:\n", "empty carrier"),
    ("elements: 0 0\n", "duplicate element"),
    ("elements: 0\nelements: 0\n", "duplicate elements"),
    ("elements: 0\nop foo:\n0\n", "unknown block"),
    ("elements: 0\nop add:\n0\nop add:\n0\n", "duplicate block"),
    ("elements: 0 1\nop add:\n0 1\n", "has 1 rows"),
    ("elements: 0 1\nop add:\n0\n", "row has 1 entries"),
    ("elements: 0 1\nop add:\n0 1\n1 0\n0 0\n", "too many rows"),
    ("elements: 0 1\nop add:\n0 1\n1 x\n", "block 'add'"),
    ("elements: 0\n0\n", "unexpected line"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_table_text(text)


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as exc:
        parse_table_text("elements: 0 1\n\nop add:\n0 1 0\n")
    assert exc.value.line == 4


def test_unreadable(tmp_path):
    with pytest.raises(ParseError):
        read_table_file(tmp_path / "missing.tbl")


def test_semilattice_file(data_dir):
    doc = read_semilattice_file(data_dir / "ex1_semilattice.sl")
    assert doc.meet.names == ("E0", "Ee", "Ef")
    assert set(doc.components) == {"E0", "Ee", "Ef"}
    assert doc.homs[("Ee", "E0")] == {"e": "0", "a": "0"}


@pytest.mark.parametrize("text", [
    "elements: A\nop meet:\nA\ncomponent A: nowhere.tbl\n",
    "elements: A\nop meet:\nA\ncomponent B: sl_zero.tbl\n",
    "elements: A\nop meet:\nA\ncomponent A: sl_zero.tbl\nhom A -> A:\nbogus\n",
    "elements: A\nop meet:\nA\ncomponent A: sl_zero.tbl\nnonsense\n",
])
def test_semilattice_parse_errors(text, data_dir):
    with pytest.raises(ParseError):
        parse_semilattice_text(text, data_dir)


def test_json_sorted_and_stable():
    s = dumps_json({"b": 1, "a": [1, 2]})
    assert s == dumps_json({"a": [1, 2], "b": 1})
    assert list(json.loads(s)) == ["a", "b"]
    assert s.endswith("\n")

"""Text formats: operation tables and strong-semilattice specifications.

Table file::

    # optional comments
    elements: 0 e f a b

    op add:
    0 0 0 0 0
    ...

Row i, column j holds the name of ``element_i * element_j``. Block labels are
``add``, ``mul`` and ``diamond`` (``meet`` inside semilattice files).

Semilattice file: a table file whose single block is ``op meet:`` over the
semilattice Y, followed by ``component <alpha>: <path>`` lines pointing at
table files with ``add`` and ``mul`` blocks, and ``hom <alpha> -> <beta>:``
blocks made of ``x -> y`` lines.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .core import CayleyTable, from_named_rows
from .errors import MagmaError, ParseError

TABLE_LABELS = ("add", "mul", "diamond")

_OP = re.compile(r"^op\s+(\S+)\s*:$")
_COMPONENT = re.compile(r"^component\s+(\S+)\s*:\s*(\S.*)$")
_HOM = re.compile(r"^hom\s+(\S+)\s*->\s*(\S+)\s*:$")
_ARROW = re.compile(r"^(\S+)\s*->\s*(\S+)$")


@dataclass
class TableDocument:
    names: tuple[str, ...]
    ops: dict[str, CayleyTable] = field(default_factory=dict)
    comments: list[str] = field(default_factory=list)

    def get(self, label: str) -> CayleyTable | None:
        return self.ops.get(label)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        yield no, raw.strip()


def _parse_blocks(lines, labels: Iterable[str], stop=None):
    """Shared reader for ``elements:`` plus ``op`` blocks.

    ``stop`` is a predicate for lines that end the table section (used by the
    semilattice reader); those lines are returned unconsumed.
    """
    labels = tuple(labels)
    names: tuple[str, ...] | None = None
    comments: list[str] = []
    blocks: dict[str, list[list[str]]] = {}
    block_line: dict[str, int] = {}
    current: str | None = None
    rest = []
    it = iter(lines)
    for no, line in it:
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line)
            continue
        if stop is not None and stop(line):
            rest = [(no, line), *it]
            break
        if line.startswith("elements:"):
            if names is not None:
                raise ParseError("duplicate elements line", no)
            names = tuple(line[len("elements:"):].split())
            if not names:
                raise ParseError("empty carrier", no)
            if len(set(names)) != len(names):
                raise ParseError("duplicate element name", no)
            continue
        m = _OP.match(line)
        if m:
            label = m.group(1)
            if names is None:
                raise ParseError("op block before elements line", no)
            if label not in labels:
                raise ParseError(f"unknown block label {label!r}", no)
            if label in blocks:
                raise ParseError(f"duplicate block {label!r}", no)
            blocks[label] = []
            block_line[label] = no
            current = label
            continue
        if current is None:
            raise ParseError(f"unexpected line {line!r}", no)
        row = line.split()
        if len(row) != len(names):
            raise ParseError(f"row has {len(row)} entries, expected {len(names)}", no)
        if len(blocks[current]) == len(names):
            raise ParseError(f"too many rows in block {current!r}", no)
        blocks[current].append(row)
    if names is None:
        raise ParseError("missing elements line")
    ops = {}
    for label, rows in blocks.items():
        if len(rows) != len(names):
            raise ParseError(f"block {label!r} has {len(rows)} rows, expected {len(names)}",
                             block_line[label])
        try:
            ops[label] = from_named_rows(names, rows)
        except (MagmaError, KeyError) as exc:
            raise ParseError(f"block {label!r}: {exc}", block_line[label]) from None
    return TableDocument(names, ops, comments), rest


def parse_table_text(text: str) -> TableDocument:
    doc, _ = _parse_blocks(_lines(text), TABLE_LABELS)
    if not doc.ops:
        raise ParseError("no op blocks")
    return doc


def read_table_file(path: str | Path) -> TableDocument:
    try:
        text = Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_table_text(text)


def format_table_document(doc: TableDocument) -> str:
    out = list(doc.comments)
    out.append("elements: " + " ".join(doc.names))
    for label, t in doc.ops.items():
        if t.names != doc.names:
            t = t.reordered(doc.names)
        out.append("")
        out.append(f"op {label}:")
        out.extend(" ".join(r) for r in t.named_rows())
    return "\n".join(out) + "\n"


def format_tables(names, comments=(), **ops: CayleyTable) -> str:
    return format_table_document(TableDocument(tuple(names), dict(ops), list(comments)))


# --- semilattice files --------------------------------------------------

@dataclass
class SemilatticeDocument:
    meet: CayleyTable
    components: dict[str, TableDocument]
    homs: dict[tuple[str, str], dict[str, str]]
    comments: list[str]


def parse_semilattice_text(text: str, base_dir: str | Path = ".") -> SemilatticeDocument:
    base_dir = Path(base_dir)

    def stop(line: str) -> bool:
        return bool(_COMPONENT.match(line) or _HOM.match(line))

    doc, rest = _parse_blocks(_lines(text), ("meet",), stop=stop)
    if "meet" not in doc.ops:
        raise ParseError("semilattice file needs an 'op meet:' block")
    components: dict[str, TableDocument] = {}
    homs: dict[tuple[str, str], dict[str, str]] = {}
    current: dict[str, str] | None = None
    for no, line in rest:
        if not line or line.startswith("#"):
            continue
        m = _COMPONENT.match(line)
        if m:
            alpha, ref = m.group(1), m.group(2).strip()
            if alpha not in doc.names:
                raise ParseError(f"component {alpha!r} is not an element of Y", no)
            if alpha in components:
                raise ParseError(f"duplicate component {alpha!r}", no)
            try:
                comp = read_table_file(base_dir / ref)
            except ParseError as exc:
                raise ParseError(f"component {alpha!r}: {exc}", no) from None
            if "add" not in comp.ops or "mul" not in comp.ops:
                raise ParseError(f"component {alpha!r} needs add and mul blocks", no)
            components[alpha] = comp
            current = None
            continue
        m = _HOM.match(line)
        if m:
            key = (m.group(1), m.group(2))
            if key in homs:
                raise ParseError(f"duplicate hom {key[0]} -> {key[1]}", no)
            for a in key:
                if a not in doc.names:
                    raise ParseError(f"hom endpoint {a!r} is not an element of Y", no)
            current = homs[key] = {}
            continue
        m = _ARROW.match(line)
        if m and current is not None:
            if m.group(1) in current:
                raise ParseError(f"{m.group(1)!r} mapped twice", no)
            current[m.group(1)] = m.group(2)
            continue
        raise ParseError(f"unexpected line {line!r}", no)
    missing = [a for a in doc.names if a not in components]
    if missing:
        raise ParseError(f"no component for {', '.join(missing)}")
    return SemilatticeDocument(doc.ops["meet"], components, homs, doc.comments)


def read_semilattice_file(path: str | Path) -> SemilatticeDocument:
    path = Path(path)
    try:
        text = path.read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_semilattice_text(text, path.parent)


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"

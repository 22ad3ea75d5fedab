"""Finite magmas, inverse semigroups and Clifford semigroups.

Elements are identified by their index ``0..n-1``; names are kept only for
presentation and file I/O.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateName,
    IdempotentsDontCommute,
    ImplicationViolation,
    IndexOutOfRange,
    InverseNotUnique,
    MagmaError,
    NotAssociative,
    NotClifford,
    NotRegular,
)

MAX_ORDER = 64


class Verdict(NamedTuple):
    """Outcome of a universally quantified check.

    ``witness`` is the first counterexample in row-major order, or ``None``.
    """

    holds: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


HOLDS = Verdict(True, None)


def fails(*witness: int) -> Verdict:
    return Verdict(False, tuple(int(w) for w in witness))


@dataclass(frozen=True)
class CayleyTable:
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def index(self, name: str) -> int:
        try:
            return self._name_index[name]
        except KeyError:
            raise KeyError(f"unknown element {name!r}") from None

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.names)}

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.table, dtype=np.int64).reshape(self.n, self.n)
        a.flags.writeable = False
        return a

    def flat(self) -> tuple[int, ...]:
        return tuple(v for row in self.table for v in row)

    def named_rows(self) -> list[list[str]]:
        return [[self.names[v] for v in row] for row in self.table]

    def reordered(self, names: Sequence[str]) -> "CayleyTable":
        """The same operation with elements listed in the order ``names``."""
        if sorted(names) != sorted(self.names):
            raise DimensionMismatch("reordering must be a permutation of the carrier")
        perm = [self.index(s) for s in names]
        pos = {old: new for new, old in enumerate(perm)}
        rows = tuple(tuple(pos[self.table[i][j]] for j in perm) for i in perm)
        return CayleyTable(tuple(names), rows)

    def renamed(self, names: Sequence[str]) -> "CayleyTable":
        return validate_magma(self.n, names, self.table)

    def permuted(self, perm: Sequence[int]) -> "CayleyTable":
        """Transport the operation along the bijection ``i -> perm[i]`` (names kept)."""
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                rows[perm[i]][perm[j]] = perm[self.table[i][j]]
        return CayleyTable(self.names, tuple(tuple(r) for r in rows))

    def __str__(self) -> str:
        width = max(len(s) for s in self.names)
        lines = []
        for row in self.named_rows():
            lines.append(" ".join(s.rjust(width) for s in row))
        return "\n".join(lines)


def validate_magma(n: int, names: Sequence[str], table: Sequence[Sequence[int]]) -> CayleyTable:
    """Check raw data and build a :class:`CayleyTable`."""
    if not 1 <= n <= MAX_ORDER:
        raise DimensionMismatch(f"carrier size {n} outside 1..{MAX_ORDER}")
    names = tuple(str(s) for s in names)
    if len(names) != n:
        raise DimensionMismatch(f"{len(names)} names for a carrier of size {n}")
    if any(not s or any(c.isspace() for c in s) for s in names):
        raise MagmaError("element names must be nonempty tokens without whitespace")
    seen: set[str] = set()
    for s in names:
        if s in seen:
            raise DuplicateName(f"duplicate element name {s!r}")
        seen.add(s)
    rows = [list(r) for r in table]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionMismatch(f"table is not {n}x{n}")
    out = []
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                raise IndexOutOfRange(f"entry ({i},{j}) = {v!r} is not an index in [0,{n})", (i, j))
        out.append(tuple(int(v) for v in r))
    return CayleyTable(names, tuple(out))


def magma(rows: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> CayleyTable:
    """Convenience constructor from index rows; names default to ``"0".."n-1"``."""
    n = len(rows)
    if names is None:
        names = [str(i) for i in range(n)]
    return validate_magma(n, names, rows)


def from_named_rows(names: Sequence[str], rows: Sequence[Sequence[str]]) -> CayleyTable:
    names = list(names)
    index = {s: i for i, s in enumerate(names)}
    try:
        table = [[index[s] for s in r] for r in rows]
    except KeyError as exc:
        raise IndexOutOfRange(f"undeclared element {exc.args[0]!r}") from None
    return validate_magma(len(names), names, table)


def is_associative(t: CayleyTable) -> Verdict:
    a = t.array
    left = a[a]          # [x, y, z] -> (x*y)*z
    right = a[:, a]      # [x, y, z] -> x*(y*z)
    bad = np.argwhere(left != right)
    if len(bad):
        return fails(*bad[0])
    return HOLDS


@dataclass(frozen=True)
class InverseSemigroup:
    base: CayleyTable
    inv: tuple[int, ...]
    idempotents: frozenset[int]
    zero_part: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.base.names

    def op(self, x: int, y: int) -> int:
        return self.base.table[x][y]

    def neg(self, x: int) -> int:
        return self.inv[x]


def von_neumann_inverses(t: CayleyTable) -> InverseSemigroup:
    """Compute the unique inverse of every element, or reject the table."""
    v = is_associative(t)
    if not v:
        raise NotAssociative("operation is not associative", v.witness)
    a = t.array
    n = t.n
    xs = np.arange(n)
    inv = []
    for el in range(n):
        axa = a[a[el, :], el]       # el*x*el
        xax = a[a[:, el], xs]       # x*el*x
        cands = np.flatnonzero((axa == el) & (xax == xs))
        if len(cands) == 0:
            raise NotRegular(f"{t.names[el]} has no inverse", (el,))
        if len(cands) > 1:
            raise InverseNotUnique(
                f"{t.names[el]} has {len(cands)} inverses", (el, *map(int, cands)))
        inv.append(int(cands[0]))
    idem = sorted(i for i in range(n) if t.table[i][i] == i)
    for i, e in enumerate(idem):
        for f in idem[i + 1:]:
            if t.table[e][f] != t.table[f][e]:
                raise IdempotentsDontCommute(
                    f"{t.names[e]} and {t.names[f]} do not commute", (e, f))
    zero = tuple(t.table[inv[x]][x] for x in range(n))
    return InverseSemigroup(t, tuple(inv), frozenset(idem), zero)


def idempotent_set(t: Union[CayleyTable, InverseSemigroup]) -> frozenset[int]:
    if isinstance(t, InverseSemigroup):
        return t.idempotents
    return frozenset(i for i in range(t.n) if t.table[i][i] == i)


def center(t: Union[CayleyTable, InverseSemigroup]) -> frozenset[int]:
    if isinstance(t, InverseSemigroup):
        t = t.base
    a = t.array
    commutes = (a == a.T).all(axis=1)
    return frozenset(int(i) for i in np.flatnonzero(commutes))


def identity_element(t: Union[CayleyTable, InverseSemigroup]) -> int | None:
    if isinstance(t, InverseSemigroup):
        t = t.base
    xs = tuple(range(t.n))
    for e in xs:
        if t.table[e] == xs and all(t.table[x][e] == x for x in xs):
            return e
    return None


def _clifford_witness(s: InverseSemigroup) -> int | None:
    for x in range(s.n):
        if s.op(s.inv[x], x) != s.op(x, s.inv[x]):
            return x
    return None


def is_clifford(s: InverseSemigroup) -> bool:
    """Clifford test by definition, cross-checked against idempotent centrality."""
    by_definition = _clifford_witness(s) is None
    # s is already known regular, so centrality of idempotents is the whole criterion
    by_centrality = s.idempotents <= center(s)
    if by_definition != by_centrality:
        raise ImplicationViolation(
            "definitional and centrality Clifford tests disagree on "
            f"{s.names}: {by_definition} vs {by_centrality}")
    return by_definition


@dataclass(frozen=True)
class CliffordStructure:
    base: InverseSemigroup
    h_classes: tuple[frozenset[int], ...]
    class_identity: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.base.names

    @property
    def table(self) -> CayleyTable:
        return self.base.base

    @property
    def idempotents(self) -> frozenset[int]:
        return self.base.idempotents

    def op(self, x: int, y: int) -> int:
        return self.base.base.table[x][y]

    def neg(self, x: int) -> int:
        return self.base.inv[x]

    def zero(self, x: int) -> int:
        """The idempotent ``x^0 = -x + x``."""
        return self.base.zero_part[x]

    def h_class(self, x: int) -> frozenset[int]:
        return self.h_classes[self.class_identity.index(self.zero(x))]


def build_clifford(s: InverseSemigroup) -> CliffordStructure:
    if not is_clifford(s):
        w = _clifford_witness(s)
        raise NotClifford(f"-{s.names[w]}+{s.names[w]} != {s.names[w]}-{s.names[w]}", (w,))
    idents = sorted(set(s.zero_part))
    classes = []
    for e in idents:
        h = frozenset(x for x in range(s.n) if s.zero_part[x] == e)
        for x in h:
            if s.op(e, x) != x or s.op(x, e) != x or s.inv[x] not in h:
                raise ImplicationViolation(f"H-class of {s.names[e]} is not a group")
            if s.op(x, s.inv[x]) != e:
                raise ImplicationViolation(f"H-class of {s.names[e]} is not a group")
            for y in h:
                if s.op(x, y) not in h:
                    raise ImplicationViolation(f"H-class of {s.names[e]} not closed")
        classes.append(h)
    return CliffordStructure(s, tuple(classes), tuple(idents))


def inverse_law_violations(s: InverseSemigroup) -> list[str]:
    """Standard identities of inverse semigroups, checked on every tuple."""
    out = []
    n = s.n
    for a in range(n):
        if s.inv[s.inv[a]] != a:
            out.append(f"-(-{a}) != {a}")
        for b in range(n):
            if s.inv[s.op(a, b)] != s.op(s.inv[b], s.inv[a]):
                out.append(f"-({a}*{b}) != -{b}*-{a}")
    for e in s.idempotents:
        if s.inv[e] != e:
            out.append(f"-{e} != {e} for idempotent")
    return out


def clifford_law_violations(c: CliffordStructure) -> list[str]:
    out = []
    n = c.n
    for a in range(n):
        a0 = c.zero(a)
        if c.op(a0, a) != a or c.op(a, a0) != a:
            out.append(f"{a}^0 is not an identity for {a}")
        if c.zero(c.neg(a)) != a0 or c.neg(a0) != a0 or c.zero(a0) != a0:
            out.append(f"(-{a})^0 != {a}^0")
        for b in range(n):
            if c.zero(c.op(a, b)) != c.op(a0, c.zero(b)):
                out.append(f"({a}+{b})^0 != {a}^0+{b}^0")
            if c.zero(c.op(a, c.neg(b))) != c.op(a0, c.zero(b)):
                out.append(f"({a}-{b})^0 != {a}^0+{b}^0")
    for e in c.idempotents:
        for a in range(n):
            if c.op(e, a) != c.op(a, e):
                out.append(f"idempotent {e} not central at {a}")
    return out


def subtable(t: CayleyTable, elements: Iterable[int]) -> CayleyTable | None:
    """Restriction of ``t`` to ``elements`` (kept in index order), or None if not closed."""
    elems = sorted(elements)
    pos = {x: i for i, x in enumerate(elems)}
    rows = []
    for x in elems:
        row = []
        for y in elems:
            z = t.table[x][y]
            if z not in pos:
                return None
            row.append(pos[z])
        rows.append(tuple(row))
    return CayleyTable(tuple(t.names[x] for x in elems), tuple(rows))

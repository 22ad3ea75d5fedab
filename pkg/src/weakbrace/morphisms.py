"""Endomorphisms of a finite semigroup and the semidirect product End(S,+) x| (S,+)."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Union

import numpy as np

from .core import (
    HOLDS,
    CayleyTable,
    CliffordStructure,
    InverseSemigroup,
    Verdict,
    build_clifford,
    fails,
    identity_element,
    von_neumann_inverses,
)
from .errors import CarrierTooLarge, EndoNotInList, ImplicationViolation, NoIdentity

DEFAULT_MAX_ENDO_ORDER = 8

Carrier = Union[CayleyTable, InverseSemigroup, CliffordStructure]


def _table(s: Carrier) -> CayleyTable:
    while not isinstance(s, CayleyTable):
        s = s.base
    return s


def map_label(images, names) -> str:
    """Render a self-map as ``(x1x2...xn)``; space separated if any name is long."""
    sep = "" if all(len(s) == 1 for s in names) else " "
    return "(" + sep.join(names[v] for v in images) + ")"


@dataclass(frozen=True)
class EndoMap:
    images: tuple[int, ...]
    target: CayleyTable = field(compare=False, hash=False, repr=False)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self) -> int:
        return len(self.images)

    def after(self, other: "EndoMap") -> tuple[int, ...]:
        """Images of ``self o other``."""
        return tuple(self.images[v] for v in other.images)

    @property
    def is_bijective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def label(self) -> str:
        return map_label(self.images, self.target.names)


def is_endomorphism(t: CayleyTable, images) -> Verdict:
    tab = t.table
    for x in range(t.n):
        for y in range(t.n):
            if images[tab[x][y]] != tab[images[x]][images[y]]:
                return fails(x, y)
    return HOLDS


def enumerate_endomorphisms(s: Carrier, max_n: int = DEFAULT_MAX_ENDO_ORDER) -> list[EndoMap]:
    """All endomorphisms, in lexicographic order of their image arrays.

    Maps are built one image at a time; a partial map is abandoned as soon as
    some product x*y with x, y and x*y all assigned breaks the homomorphism law.
    """
    t = _table(s)
    n = t.n
    if n > max_n:
        raise CarrierTooLarge(f"carrier of size {n} exceeds endomorphism bound {max_n}")
    tab = t.table
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(n):
            xy = tab[x][y]
            checks[max(x, y, xy)].append((x, y, xy))
    images = [0] * n
    out: list[EndoMap] = []

    def extend(k: int) -> None:
        if k == n:
            out.append(EndoMap(tuple(images), t))
            return
        for v in range(n):
            images[k] = v
            if all(images[xy] == tab[images[x]][images[y]] for x, y, xy in checks[k]):
                extend(k + 1)

    extend(0)
    return out


def enumerate_automorphisms(s: Carrier, max_n: int = DEFAULT_MAX_ENDO_ORDER) -> list[EndoMap]:
    auts = [m for m in enumerate_endomorphisms(s, max_n) if m.is_bijective]
    present = {m.images for m in auts}
    n = _table(s).n
    if tuple(range(n)) not in present:
        raise ImplicationViolation("identity is not an automorphism")
    for f in auts:
        inv = [0] * n
        for x, v in enumerate(f.images):
            inv[v] = x
        if tuple(inv) not in present:
            raise ImplicationViolation("automorphisms not closed under inversion")
        for g in auts:
            if f.after(g) not in present:
                raise ImplicationViolation("automorphisms not closed under composition")
    return auts


class EndomorphismMonoid:
    """Interned, ordered list of End(S) with a composition table over indices."""

    def __init__(self, s: Carrier, max_n: int = DEFAULT_MAX_ENDO_ORDER):
        self.table = _table(s)
        self.maps = enumerate_endomorphisms(self.table, max_n)
        self._index = {m.images: i for i, m in enumerate(self.maps)}

    def __len__(self) -> int:
        return len(self.maps)

    def __getitem__(self, i: int) -> EndoMap:
        return self.maps[i]

    def index_of(self, images) -> int:
        try:
            return self._index[tuple(images)]
        except KeyError:
            raise EndoNotInList(f"{map_label(images, self.table.names)} is not an endomorphism") from None

    def get_index(self, images) -> int | None:
        return self._index.get(tuple(images))

    @cached_property
    def compose_table(self) -> list[list[int]]:
        """``compose_table[i][j]`` is the index of ``maps[i] o maps[j]``."""
        return [[self.index_of(f.after(g)) for g in self.maps] for f in self.maps]

    @cached_property
    def images_array(self) -> np.ndarray:
        return np.array([m.images for m in self.maps], dtype=np.int64)

    @property
    def identity(self) -> int:
        return self.index_of(range(self.table.n))

    @cached_property
    def automorphisms(self) -> list[int]:
        return [i for i, m in enumerate(self.maps) if m.is_bijective]

    def inverse_of(self, i: int) -> int:
        inv = [0] * self.table.n
        for x, v in enumerate(self.maps[i].images):
            inv[v] = x
        return self.index_of(inv)


class HolomorphElement(NamedTuple):
    endo: int
    point: int


SubsemigroupOfHolomorph = frozenset  # frozenset[HolomorphElement], closed under Holomorph.product


class Holomorph:
    """End(S,+) x| (S,+) with product (f,x)(g,y) = (fg, x + f(y))."""

    def __init__(self, s: Carrier, endos: EndomorphismMonoid | None = None,
                 max_n: int = DEFAULT_MAX_ENDO_ORDER):
        self.add = _table(s)
        self._carrier = s
        self.endos = endos if endos is not None else EndomorphismMonoid(self.add, max_n)
        if self.endos.table != self.add:
            raise ValueError("endomorphism list belongs to a different table")

    @cached_property
    def clifford(self) -> CliffordStructure:
        """The Clifford structure of (S,+); raises if (S,+) is not Clifford."""
        s = self._carrier
        if isinstance(s, CliffordStructure):
            return s
        if isinstance(s, CayleyTable):
            s = von_neumann_inverses(s)
        return build_clifford(s)

    def element(self, images, point: int) -> HolomorphElement:
        return HolomorphElement(self.endos.index_of(images), point)

    def product(self, u: HolomorphElement, v: HolomorphElement) -> HolomorphElement:
        f = self.endos.maps[u.endo].images
        return HolomorphElement(self.endos.compose_table[u.endo][v.endo],
                                self.add.table[u.point][f[v.point]])

    def closure(self, elems: Iterable[HolomorphElement]) -> frozenset[HolomorphElement]:
        result = set(elems)
        frontier = list(result)
        while frontier:
            fresh = []
            current = list(result)
            for u in frontier:
                for v in current:
                    for w in (self.product(u, v), self.product(v, u)):
                        if w not in result:
                            result.add(w)
                            fresh.append(w)
            frontier = fresh
        return frozenset(result)

    def is_closed(self, elems: Iterable[HolomorphElement]) -> bool:
        h = set(elems)
        return all(self.product(u, v) in h for u in h for v in h)

    def subtable(self, elems: Iterable[HolomorphElement]) -> tuple[list[HolomorphElement], CayleyTable]:
        """Cayley table of a closed subset, elements in sorted order."""
        order = sorted(elems)
        pos = {u: i for i, u in enumerate(order)}
        rows = []
        for u in order:
            rows.append(tuple(pos[self.product(u, v)] for v in order))
        names = tuple(self.label(u) for u in order)
        return order, CayleyTable(names, tuple(rows))

    def label(self, u: HolomorphElement) -> str:
        return f"[{self.endos.maps[u.endo].label()},{self.add.names[u.point]}]"

    def product_array(self) -> np.ndarray:
        """Full product table over indices ``endo * n + point``."""
        n = self.add.n
        imgs = self.endos.images_array
        comp = np.array(self.endos.compose_table, dtype=np.int64)
        add = self.add.array
        m = len(self.endos)
        f = np.repeat(np.arange(m), n)
        x = np.tile(np.arange(n), m)
        # (f,x)(g,y) = (fg, x + f(y))
        endo = comp[f[:, None], f[None, :]]
        point = add[x[:, None], imgs[f[:, None], x[None, :]]]
        return endo * n + point

    def is_associative(self) -> Verdict:
        p = self.product_array()
        bad = np.argwhere(p[p] != p[:, p])
        if len(bad):
            return fails(*(int(i) for i in bad[0]))
        return HOLDS


def are_conjugate(hol: Holomorph, h: Iterable[HolomorphElement],
                  k: Iterable[HolomorphElement]) -> int | None:
    """Some automorphism psi with (psi,0) H (psi^-1,0) = K, as an index into ``hol.endos``.

    Only meaningful when (S,+) has an identity 0.
    """
    zero = identity_element(hol.add)
    if zero is None:
        raise NoIdentity("(S,+) has no identity element")
    h = list(h)
    k = frozenset(k)
    if len(h) != len(k):
        return None
    for psi in hol.endos.automorphisms:
        left = HolomorphElement(psi, zero)
        right = HolomorphElement(hol.endos.inverse_of(psi), zero)
        image = frozenset(hol.product(hol.product(left, u), right) for u in h)
        if image == k:
            return psi
    return None

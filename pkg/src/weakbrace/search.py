"""Exhaustive enumeration of brace structures over a fixed carrier.

Routes:

* ``gamma``  - Gamma functions on a Clifford (S,+)
* ``good``   - good inverse subsemigroups of End(S,+) x| (S,+)
* ``affine`` - affine structures on an inverse semigroup (S,.)
* ``oracle`` - every table of the other operation, filtered by the brace axioms

The three structured routes share one backtracking driver. Positions are
assigned in a fixed order from precomputed domains; after each assignment the
route's ``consistent`` test sees the partial state. The tree is cut once at the
first branching position and the subtrees are explored in order (optionally on
worker processes), so results and node counts do not depend on ``jobs``.
"""

from __future__ import annotations

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Union

import numpy as np

from .brace import WeakBrace, check_weak_brace, is_dual
from .core import CayleyTable, build_clifford, identity_element, von_neumann_inverses
from .correspondences import (
    AffineStructure,
    GammaFunction,
    GoodSubsemigroup,
    brace_from_affine,
    brace_from_gamma,
    brace_from_good,
    good_from_brace,
    is_affine_structure,
    is_gamma_function,
    is_good_subsemigroup,
)
from .errors import (
    AffineError,
    AlgebraError,
    BudgetExceeded,
    CarrierTooLarge,
    DimensionMismatch,
    GammaError,
    GoodError,
    ImplicationViolation,
)
from .morphisms import DEFAULT_MAX_ENDO_ORDER, EndomorphismMonoid, Holomorph, HolomorphElement, are_conjugate

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8
ROUTES = ("gamma", "good", "affine", "oracle")
ORACLE_MAX_EXHAUSTIVE = 3
ORACLE_MAX = 4
ISO_MAX = 8

Structure = Union[GammaFunction, GoodSubsemigroup, AffineStructure, None]


@dataclass
class SearchStats:
    nodes: int = 0
    pruned: int = 0
    seconds: float = 0.0


class Found(NamedTuple):
    structure: Structure
    brace: WeakBrace


@dataclass
class EnumerationReport:
    route: str
    carrier: CayleyTable
    results: list[Found]
    stats: SearchStats = field(default_factory=SearchStats)
    complete: bool = True
    varied: str = "mul"            # operation that the search produces

    @property
    def braces(self) -> list[WeakBrace]:
        return [f.brace for f in self.results]

    def brace_keys(self) -> list[tuple]:
        return [b.key() for b in self.braces]

    @property
    def dual_count(self) -> int:
        return sum(1 for b in self.braces if is_dual(b))


def _sort_key(varied: str):
    def key(f: Found):
        b = f.brace
        first = b.mul if varied == "mul" else b.add
        other = b.add if varied == "mul" else b.mul
        return (first.base.flat(), other.base.flat())
    return key


def _as_table(s) -> CayleyTable:
    while not isinstance(s, CayleyTable):
        s = s.base
    return s


# --- backtracking driver ----------------------------------------------------

class _Search:
    """Route-specific search over ``len(domains)`` positions."""

    route = ""
    domains: list[tuple[int, ...]]

    def consistent(self, assign: list[int], k: int) -> bool:
        raise NotImplementedError

    def accept(self, assign: tuple[int, ...]) -> Found | None:
        raise NotImplementedError


class _Walk:
    def __init__(self, search: _Search, budget: int, split_at: int | None = None):
        self.search = search
        self.budget = budget
        self.split_at = split_at
        self.nodes = 0
        self.pruned = 0
        self.leaves: list[tuple[int, ...]] = []
        self.tasks: list[tuple[int, ...]] = []

    def run(self, prefix: tuple[int, ...] = ()) -> None:
        assign = list(prefix) + [-1] * (len(self.search.domains) - len(prefix))
        self._descend(assign, len(prefix))

    def _descend(self, assign: list[int], k: int) -> None:
        doms = self.search.domains
        if k == len(doms):
            if self.search.accept(tuple(assign)) is None:
                self.pruned += 1
            else:
                self.leaves.append(tuple(assign))
            return
        if k == self.split_at:
            self.tasks.append(tuple(assign[:k]))
            return
        for v in doms[k]:
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"search exceeded budget of {self.budget} nodes")
            assign[k] = v
            if self.search.consistent(assign, k):
                self._descend(assign, k + 1)
            else:
                self.pruned += 1
        assign[k] = -1


def _make_search(route: str, table: CayleyTable) -> _Search:
    if route == "gamma":
        return _GammaSearch(table)
    if route == "good":
        return _GoodSearch(table)
    if route == "affine":
        return _AffineSearch(table)
    raise ValueError(f"unknown route {route!r}")


def _run_task(route: str, table: CayleyTable, prefix: tuple[int, ...], budget: int):
    walk = _Walk(_make_search(route, table), budget)
    walk.run(prefix)
    return walk.leaves, walk.nodes, walk.pruned


def _drive(search: _Search, table: CayleyTable, budget: int, jobs: int) -> EnumerationReport:
    start = time.perf_counter()
    doms = search.domains
    split = next((k for k, d in enumerate(doms) if len(d) > 1), None)
    split_at = None if split is None else split + 1
    top = _Walk(search, budget, split_at)
    top.run()
    nodes, pruned, leaves = top.nodes, top.pruned, list(top.leaves)
    if top.tasks:
        remaining = budget - nodes
        if jobs > 1 and len(top.tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outs = list(pool.map(_run_task, itertools.repeat(search.route),
                                     itertools.repeat(table), top.tasks,
                                     itertools.repeat(remaining)))
            for lv, nd, pr in outs:
                leaves += lv
                nodes += nd
                pruned += pr
            if nodes > budget:
                raise BudgetExceeded(f"search exceeded budget of {budget} nodes")
        else:
            for prefix in top.tasks:
                walk = _Walk(search, budget - nodes)
                walk.run(prefix)
                leaves += walk.leaves
                nodes += walk.nodes
                pruned += walk.pruned
    results = [search.accept(a) for a in leaves]
    varied = "add" if search.route == "affine" else "mul"
    results.sort(key=_sort_key(varied))
    stats = SearchStats(nodes, pruned, time.perf_counter() - start)
    log.info("%s: %d results, %d nodes, %d pruned", search.route, len(results), nodes, pruned)
    return EnumerationReport(search.route, table, results, stats, True, varied)


# --- Gamma functions and good subsemigroups --------------------------------

class _EndoChoice(_Search):
    """One endomorphism per element, closed under f_{x + f_x(y)} = f_x f_y."""

    def __init__(self, add: CayleyTable):
        self.table = add
        self.s = build_clifford(von_neumann_inverses(add))
        self.endos = EndomorphismMonoid(self.s)
        s = self.s
        n = s.n
        idem = sorted(s.idempotents)
        self.order = tuple(idem + [x for x in range(n) if x not in s.idempotents])
        self.images = [m.images for m in self.endos.maps]
        self.compose = self.endos.compose_table
        self.add = add.table
        self.domains = [tuple(f for f, img in enumerate(self.images) if self.unary(x, img))
                        for x in self.order]

    def unary(self, x: int, img: tuple[int, ...]) -> bool:
        raise NotImplementedError

    def by_element(self, assign) -> list[int]:
        g = [-1] * self.s.n
        for pos, x in enumerate(self.order):
            g[x] = assign[pos]
        return g

    def consistent(self, assign: list[int], k: int) -> bool:
        g = self.by_element(assign)
        new = self.order[k]
        add, images, comp = self.add, self.images, self.compose
        n = self.s.n
        for x in range(n):
            gx = g[x]
            if gx < 0:
                continue
            for y in range(n):
                gy = g[y]
                if gy < 0:
                    continue
                z = add[x][images[gx][y]]
                gz = g[z]
                if gz >= 0 and new in (x, y, z) and comp[gx][gy] != gz:
                    return False
        return True


class _GammaSearch(_EndoChoice):
    """Domains from (F1) restricted to one element, (F2) and (F4)."""

    route = "gamma"

    def unary(self, x: int, img) -> bool:
        s = self.s
        add = self.add
        x0 = s.zero(x)
        if any(add[x0][v] != v for v in img):
            return False
        if x in s.idempotents:
            if any(img[f] != add[x][f] for f in s.idempotents):
                return False
            if any(img[y] != y for y in s.h_class(x)):
                return False
        elif img[x] == x0:
            return False
        return True

    def accept(self, assign) -> Found | None:
        g = self.by_element(assign)
        try:
            gf = is_gamma_function(self.s, g, self.endos)
        except GammaError:
            return None
        return Found(gf, brace_from_gamma(self.s, gf))


class _GoodSearch(_EndoChoice):
    """Domains from (G3), (G4) and the idempotent elements of H.

    (f_e, e) is idempotent for e in E(S,+) and (f_e, e)(f_x, x) lies over e + x;
    a non-idempotent x has (f_x, x)^2 != (f_x, x).
    """

    route = "good"

    def __init__(self, add: CayleyTable):
        super().__init__(add)
        self.hol = Holomorph(self.s, self.endos)

    def unary(self, x: int, img) -> bool:
        s = self.s
        add = self.add
        x0 = s.zero(x)
        if any(add[x0][v] != v for v in img):
            return False
        zero = identity_element(s.table)
        if zero is not None and img[zero] != x0:
            return False
        if x in s.idempotents:
            if tuple(img[v] for v in img) != tuple(img):
                return False
            if any(add[x][img[y]] != add[x][y] for y in range(s.n)):
                return False
        elif add[x][img[x]] == x:
            return False
        return True

    def accept(self, assign) -> Found | None:
        g = self.by_element(assign)
        h = [HolomorphElement(f, x) for x, f in enumerate(g)]
        try:
            good = is_good_subsemigroup(self.hol, h)
        except GoodError:
            return None
        return Found(good, brace_from_good(good))


def good_candidate_domains(add: CayleyTable) -> dict[int, tuple[int, ...]]:
    """Endomorphism indices still allowed for each element before backtracking."""
    search = _GoodSearch(add)
    return {x: search.domains[pos] for pos, x in enumerate(search.order)}


# --- affine structures -----------------------------------------------------

class _AffineSearch(_Search):
    """Free cells are (a, b) with a, b non-idempotent; the rest is fixed by (A3).

    A free cell a <> b lies in a^-1 a S, since a <> b = a^-1 (a + b).
    """

    route = "affine"

    def __init__(self, mul: CayleyTable):
        self.table = mul
        self.mul = von_neumann_inverses(mul)
        m = self.mul
        n = m.n
        M = mul.table
        base = [[-1] * n for _ in range(n)]
        self.conflict = False
        for e in m.idempotents:
            for a in range(n):
                pins = ((e, a, M[e][a]), (a, e, M[M[m.inv[a]][e]][a]))
                for r, c, v in pins:
                    if base[r][c] not in (-1, v):
                        self.conflict = True
                    base[r][c] = v
        self.base = base
        self.cells = [(a, b) for a in range(n) for b in range(n) if base[a][b] < 0]
        doms = []
        for a, b in self.cells:
            left = M[m.inv[a]][a]
            doms.append(tuple(v for v in range(n) if M[left][v] == v))
        if self.conflict:
            doms = [()] * max(1, len(self.cells))
        self.domains = doms

    def _table(self, assign) -> list[list[int]]:
        D = [row[:] for row in self.base]
        for (a, b), v in zip(self.cells, assign):
            D[a][b] = v
        return D

    def consistent(self, assign: list[int], k: int) -> bool:
        D = self._table(assign)
        M = self.table.table
        n = self.mul.n
        for a in range(n):
            for b in range(n):
                ab = M[a][b]
                dab = D[a][b]
                for c in range(n):
                    # (A1) (ab) <> c = b <> (a <> c)
                    ac = D[a][c]
                    lhs = D[ab][c]
                    if lhs >= 0 and ac >= 0:
                        rhs = D[b][ac]
                        if rhs >= 0 and lhs != rhs:
                            return False
                    # (A2) a <> (b (b <> c)) = (a <> b)((a <> b) <> (a <> c))
                    bc = D[b][c]
                    if bc < 0 or dab < 0 or ac < 0:
                        continue
                    lhs = D[a][M[b][bc]]
                    inner = D[dab][ac]
                    if lhs >= 0 and inner >= 0 and lhs != M[dab][inner]:
                        return False
        return True

    def accept(self, assign) -> Found | None:
        D = self._table(assign)
        try:
            aff = is_affine_structure(self.mul, tuple(tuple(r) for r in D))
        except AffineError:
            return None
        return Found(aff, brace_from_affine(aff))


# --- public enumerators -------------------------------------------------------

def enumerate_gamma_functions(add, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> EnumerationReport:
    table = _as_table(add)
    return _drive(_GammaSearch(table), table, budget, jobs)


def enumerate_good_subsemigroups(add, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> EnumerationReport:
    table = _as_table(add)
    return _drive(_GoodSearch(table), table, budget, jobs)


def enumerate_affine_structures(mul, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> EnumerationReport:
    table = _as_table(mul)
    search = _AffineSearch(table)
    if search.conflict:
        return EnumerationReport("affine", table, [], SearchStats(), True, "add")
    return _drive(search, table, budget, jobs)


# --- brute-force oracle ---------------------------------------------------

@lru_cache(maxsize=None)
def _all_tables(n: int) -> np.ndarray:
    grid = np.array(list(itertools.product(range(n), repeat=n * n)), dtype=np.int8)
    return grid.reshape(-1, n, n)


@lru_cache(maxsize=None)
def associative_tables(n: int) -> np.ndarray:
    """Every associative table on {0..n-1}, for n <= 3 by scanning all n^(n^2)."""
    if n > ORACLE_MAX_EXHAUSTIVE:
        if n not in _BACKTRACK_CACHE:
            tables, complete, nodes = _associative_tables_backtrack(n, DEFAULT_BUDGET)
            if not complete:
                raise BudgetExceeded(f"associative tables of order {n} not enumerated within budget")
            _BACKTRACK_CACHE[n] = (tables, nodes)
        return _BACKTRACK_CACHE[n][0]
    T = _all_tables(n).astype(np.int64)
    k = np.arange(len(T))[:, None, None, None]
    r = np.arange(n)
    xy = T[:, :, :, None]                             # [t, x, y, _]
    left = T[k, xy, r[None, None, None, :]]          # (xy)z
    yz = T[:, None, :, :]                            # [t, _, y, z]
    right = T[k, r[None, :, None, None], yz]         # x(yz)
    ok = (left == right).reshape(len(T), -1).all(axis=1)
    return T[ok]


_BACKTRACK_CACHE: dict[int, tuple[np.ndarray, int]] = {}


def _associative_tables_backtrack(n: int, budget: int) -> tuple[np.ndarray, bool, int]:
    """Row-major cell assignment with associativity checked on every determined triple."""
    T = [[-1] * n for _ in range(n)]
    out: list[list[list[int]]] = []
    nodes = 0
    cells = [(i, j) for i in range(n) for j in range(n)]

    def ok() -> bool:
        for x in range(n):
            for y in range(n):
                xy = T[x][y]
                if xy < 0:
                    continue
                for z in range(n):
                    yz = T[y][z]
                    if yz < 0:
                        continue
                    l, r = T[xy][z], T[x][yz]
                    if l >= 0 and r >= 0 and l != r:
                        return False
        return True

    def rec(k: int) -> None:
        nonlocal nodes
        if k == len(cells):
            out.append([row[:] for row in T])
            return
        i, j = cells[k]
        for v in range(n):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded
            T[i][j] = v
            if ok():
                rec(k + 1)
        T[i][j] = -1

    try:
        rec(0)
    except BudgetExceeded:
        return np.array(out, dtype=np.int64).reshape(-1, n, n), False, nodes
    return np.array(out, dtype=np.int64).reshape(-1, n, n), True, nodes


def _inverse_maps(T: np.ndarray) -> list[list[int] | None]:
    """Per table: the unique inverse of each element, or None if not an inverse semigroup."""
    n = T.shape[1]
    out = []
    for t in T:
        inv = []
        for x in range(n):
            cands = [y for y in range(n) if t[t[x, y], x] == x and t[t[y, x], y] == y]
            if len(cands) != 1:
                inv = None
                break
            inv.append(cands[0])
        out.append(inv)
    return out


def _weak1_and_inverse_axiom(add: np.ndarray, add_inv: np.ndarray,
                             mul: np.ndarray, mul_inv: np.ndarray) -> bool:
    n = len(add)
    r = np.arange(n)
    lhs = mul[r[:, None, None], add[None, :, :]]                     # x(y+z)
    t = add[mul[:, :, None], add_inv[:, None, None]]                 # xy - x
    rhs = add[t, mul[:, None, :]]                                    # xy - x + xz
    if not (lhs == rhs).all():
        return False
    return bool((mul[r, mul_inv] == add[add_inv, r]).all())


def oracle_enumerate_braces(fixed, second: str = "mul", budget: int = DEFAULT_BUDGET) -> EnumerationReport:
    """All tables for the ``second`` operation making a weak brace with ``fixed``.

    ``second="mul"`` fixes the addition; ``second="add"`` fixes the multiplication.
    Uses only the axioms: both operations inverse semigroups, x(y+z) = xy - x + xz
    and x x^-1 = -x + x.
    """
    if second not in ("mul", "add"):
        raise ValueError("second must be 'mul' or 'add'")
    table = _as_table(fixed)
    n = table.n
    if n > ORACLE_MAX:
        raise CarrierTooLarge(f"oracle handles carriers of size <= {ORACLE_MAX}, got {n}")
    start = time.perf_counter()
    complete = True
    if n <= ORACLE_MAX_EXHAUSTIVE:
        cands = associative_tables(n)
        nodes = n ** (n * n)
    elif n in _BACKTRACK_CACHE and _BACKTRACK_CACHE[n][1] <= budget:
        cands, nodes = _BACKTRACK_CACHE[n]
    else:
        cands, complete, nodes = _associative_tables_backtrack(n, budget)
        if complete:
            _BACKTRACK_CACHE[n] = (cands, nodes)
    fixed_arr = np.array(table.table, dtype=np.int64)
    finv = _inverse_maps(fixed_arr[None])[0]
    results = []
    pruned = 0
    if finv is not None:
        finv = np.array(finv, dtype=np.int64)
        for t, inv in zip(cands, _inverse_maps(cands)):
            if inv is None:
                pruned += 1
                continue
            inv = np.array(inv, dtype=np.int64)
            if second == "mul":
                ok = _weak1_and_inverse_axiom(fixed_arr, finv, t, inv)
            else:
                ok = _weak1_and_inverse_axiom(t, inv, fixed_arr, finv)
            if not ok:
                pruned += 1
                continue
            other = CayleyTable(table.names, tuple(tuple(int(v) for v in row) for row in t))
            try:
                b = check_weak_brace(table, other) if second == "mul" else check_weak_brace(other, table)
            except AlgebraError as exc:
                raise ImplicationViolation(f"oracle table accepted by the axioms but rejected by the kernel: {exc}") from exc
            results.append(Found(None, b))
    results.sort(key=_sort_key(second))
    stats = SearchStats(nodes, pruned, time.perf_counter() - start)
    return EnumerationReport("oracle", table, results, stats, complete, second)


def inverse_semigroup_tables(n: int) -> list[CayleyTable]:
    """Every inverse semigroup table on {0..n-1}, names '0'..'n-1'."""
    names = tuple(str(i) for i in range(n))
    T = associative_tables(n)
    out = []
    for t, inv in zip(T, _inverse_maps(T)):
        if inv is not None:
            out.append(CayleyTable(names, tuple(tuple(int(v) for v in row) for row in t)))
    return out


# --- isomorphism classes ----------------------------------------------------

def _perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def find_isomorphism(b1: WeakBrace, b2: WeakBrace, perms: np.ndarray | None = None) -> tuple[int, ...] | None:
    """A bijection p with p(x+y) = p(x)+p(y) and p(xy) = p(x)p(y) from b1 to b2."""
    n = b1.n
    if n != b2.n:
        return None
    if n > ISO_MAX:
        raise CarrierTooLarge(f"isomorphism scan limited to n <= {ISO_MAX}")
    P = _perms(n) if perms is None else perms
    ok = np.ones(len(P), dtype=bool)
    for src, dst in ((b1.add, b2.add), (b1.mul, b2.mul)):
        A = src.base.array
        B = dst.base.array
        image = B[P[:, :, None], P[:, None, :]]
        ok &= (image == P[:, A]).reshape(len(P), -1).all(axis=1)
    hit = np.flatnonzero(ok)
    if len(hit) == 0:
        return None
    return tuple(int(v) for v in P[hit[0]])


def isomorphism_classes(braces: list[WeakBrace]) -> list[list[int]]:
    """Partition of ``range(len(braces))`` into isomorphism classes, each in input order.

    When every brace has the same addition table and that addition has an
    identity, the partition is compared with conjugacy of the corresponding
    good subsemigroups by automorphisms (psi, 0).
    """
    if not braces:
        return []
    n = braces[0].n
    if any(b.n != n for b in braces):
        raise DimensionMismatch("braces over carriers of different sizes")
    if n > ISO_MAX:
        raise CarrierTooLarge(f"isomorphism scan limited to n <= {ISO_MAX} (n! bijections)")
    P = _perms(n)
    classes: list[list[int]] = []
    for i, b in enumerate(braces):
        for cls in classes:
            if find_isomorphism(braces[cls[0]], b, P) is not None:
                cls.append(i)
                break
        else:
            classes.append([i])
    _crosscheck_conjugacy(braces, classes)
    return classes


def _crosscheck_conjugacy(braces: list[WeakBrace], classes: list[list[int]]) -> None:
    add = braces[0].add.base
    if any(b.add.base != add for b in braces) or identity_element(add) is None:
        return
    if add.n > DEFAULT_MAX_ENDO_ORDER:
        return
    hol = Holomorph(braces[0].add_clifford)
    goods = [good_from_brace(b, hol).elements for b in braces]
    for cls in classes:
        for i in cls[1:]:
            if are_conjugate(hol, goods[cls[0]], goods[i]) is None:
                raise ImplicationViolation(
                    f"isomorphic braces {cls[0]} and {i} give non-conjugate good subsemigroups")
    for c1, c2 in itertools.combinations(classes, 2):
        if are_conjugate(hol, goods[c1[0]], goods[c2[0]]) is not None:
            raise ImplicationViolation(
                f"non-isomorphic braces {c1[0]} and {c2[0]} give conjugate good subsemigroups")


def enumerate_route(route: str, doc_table: CayleyTable, budget: int = DEFAULT_BUDGET,
                    jobs: int = 1, second: str = "mul") -> EnumerationReport:
    if route == "gamma":
        return enumerate_gamma_functions(doc_table, budget, jobs)
    if route == "good":
        return enumerate_good_subsemigroups(doc_table, budget, jobs)
    if route == "affine":
        return enumerate_affine_structures(doc_table, budget, jobs)
    if route == "oracle":
        return oracle_enumerate_braces(doc_table, second, budget)
    raise ValueError(f"unknown route {route!r}")


__all__ = [
    "DEFAULT_BUDGET",
    "ROUTES",
    "EnumerationReport",
    "Found",
    "SearchStats",
    "associative_tables",
    "enumerate_affine_structures",
    "enumerate_gamma_functions",
    "enumerate_good_subsemigroups",
    "enumerate_route",
    "find_isomorphism",
    "good_candidate_domains",
    "inverse_semigroup_tables",
    "isomorphism_classes",
    "oracle_enumerate_braces",
]

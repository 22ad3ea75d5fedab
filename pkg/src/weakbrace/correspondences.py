"""The three constructive descriptions of weak left braces.

Over a fixed Clifford semigroup (S,+):

* good inverse subsemigroups H of End(S,+) x| (S,+)   (``brace_from_good`` / ``good_from_brace``)
* Gamma functions gamma: S -> End(S,+)                 (``brace_from_gamma`` / ``gamma_from_brace``)

Over a fixed inverse semigroup (S,.):

* affine structures, a binary operation diamond        (``brace_from_affine`` / ``affine_from_brace``)

Every constructed object is revalidated through the corresponding checker.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .brace import WeakBrace, check_weak_brace, is_dual
from .core import (
    HOLDS,
    CayleyTable,
    CliffordStructure,
    InverseSemigroup,
    Verdict,
    fails,
    identity_element,
    is_clifford,
    von_neumann_inverses,
)
from .errors import (
    A1Fails,
    A2Fails,
    A3Fails,
    AffineError,
    AffineValidationFails,
    AlgebraError,
    D1Fails,
    D2Fails,
    D3Fails,
    F1Fails,
    F2Fails,
    F3Fails,
    F4Fails,
    G1Fails,
    G2Fails,
    G3Fails,
    G4Fails,
    GammaError,
    ImplicationViolation,
    NotInverseSub,
)
from .morphisms import EndomorphismMonoid, Holomorph, HolomorphElement

# --- good inverse subsemigroups ------------------------------------------


@dataclass(frozen=True)
class GoodSubsemigroup:
    hol: Holomorph = field(compare=False, repr=False)
    elements: frozenset[HolomorphElement]
    kind: str                      # "inverse" or "clifford"
    endo_at: tuple[int, ...]       # endo_at[x]: the f with (f, x) in H

    def __iter__(self):
        return iter(sorted(self.elements))

    def __len__(self) -> int:
        return len(self.elements)


def is_good_subsemigroup(hol: Holomorph, h: Iterable[HolomorphElement]) -> GoodSubsemigroup:
    """Validate H and classify it as a good inverse or good Clifford subsemigroup.

    Checks, in order: closure, (G1), inverse subsemigroup, (G2), (G3), (G4).
    """
    s = hol.clifford
    add = s.table.table
    maps = hol.endos.maps
    h = frozenset(h)
    if not hol.is_closed(h):
        raise NotInverseSub("H is not closed under the holomorph product")
    endo_at: list[int | None] = [None] * s.n
    for u in sorted(h):
        if endo_at[u.point] is not None:
            raise G1Fails(f"two elements of H over {s.names[u.point]}", (u.point,))
        endo_at[u.point] = u.endo
    for x, f in enumerate(endo_at):
        if f is None:
            raise G1Fails(f"no element of H over {s.names[x]}", (x,))
    order, tab = hol.subtable(h)
    try:
        inv_h = von_neumann_inverses(tab)
    except AlgebraError as exc:
        raise NotInverseSub(f"H is not an inverse semigroup: {exc}",
                            tuple(order[i].point for i in exc.witness)) from exc
    kind = "clifford" if is_clifford(inv_h) else "inverse"
    for i, u in enumerate(order):
        f = maps[u.endo].images
        y = order[inv_h.inv[i]].point
        if HolomorphElement(u.endo, f[s.neg(y)]) not in h:
            raise G2Fails(f"(f, f(-y)) missing for x={s.names[u.point]}", (u.point,))
    for u in order:
        f = maps[u.endo].images
        x0 = add[s.neg(u.point)][u.point]
        for y in range(s.n):
            if add[x0][f[y]] != f[y]:
                raise G3Fails(f"-x+x+f(y) != f(y) at x={s.names[u.point]}, y={s.names[y]}",
                              (u.point, y))
    zero = identity_element(s.table)
    if zero is not None:
        for u in order:
            if maps[u.endo].images[zero] != add[s.neg(u.point)][u.point]:
                raise G4Fails(f"f(0) != -x+x at x={s.names[u.point]}", (u.point,))
    return GoodSubsemigroup(hol, h, kind, tuple(endo_at))


def brace_from_good(g: GoodSubsemigroup) -> WeakBrace:
    """B(H): a o b = a + f(b) where (f, a) in H."""
    s = g.hol.clifford
    maps = g.hol.endos.maps
    add = s.table.table
    rows = tuple(tuple(add[a][maps[g.endo_at[a]].images[b]] for b in range(s.n)) for a in range(s.n))
    br = check_weak_brace(s.base, CayleyTable(s.names, rows))
    if is_dual(br) != (g.kind == "clifford"):
        raise ImplicationViolation("good Clifford subsemigroups must give exactly the dual braces")
    if not projection_is_isomorphism(g, br):
        raise ImplicationViolation("second projection H -> (S,o) is not a homomorphism")
    return br


def projection_is_isomorphism(g: GoodSubsemigroup, br: WeakBrace) -> bool:
    """pi_2 restricted to H is a bijective homomorphism onto (S, o)."""
    if sorted(u.point for u in g.elements) != list(range(br.n)):
        return False
    for u in g.elements:
        for v in g.elements:
            if g.hol.product(u, v).point != br.times(u.point, v.point):
                return False
    return True


def good_from_brace(br: WeakBrace, hol: Holomorph | None = None) -> GoodSubsemigroup:
    """S(B) = {(lambda_a, a)}."""
    if hol is None:
        hol = Holomorph(br.add_clifford)
    elems = [HolomorphElement(hol.endos.index_of(br.lambda_table[a]), a) for a in range(br.n)]
    g = is_good_subsemigroup(hol, elems)
    if (g.kind == "clifford") != is_dual(br):
        raise ImplicationViolation("dual braces must give good Clifford subsemigroups")
    return g


# --- Gamma functions ------------------------------------------------------

GammaInput = Union[Sequence[int], Sequence[Sequence[int]]]


@dataclass(frozen=True)
class GammaFunction:
    endos: EndomorphismMonoid = field(compare=False, repr=False)
    gamma: tuple[int, ...]                       # End index per element
    dual_flag: bool
    inverse_witnesses: tuple[tuple[int, ...], ...] = field(compare=False)

    def images(self, x: int) -> tuple[int, ...]:
        return self.endos.maps[self.gamma[x]].images


def _gamma_indices(endos: EndomorphismMonoid, gamma: GammaInput) -> tuple[int, ...]:
    out = []
    for g in gamma:
        if isinstance(g, int):
            endos.maps[g]
            out.append(g)
        else:
            out.append(endos.index_of(g))
    return tuple(out)


def _f3_witnesses(s: CliffordStructure, G, x: int) -> tuple[int, ...]:
    return tuple(u for u in range(s.n) if G[x][u] == s.neg(x) and G[u][x] == s.neg(u))


def gamma_violation(s: CliffordStructure, G) -> AlgebraError | None:
    """First failing condition among (F1)-(F4) for the image lists ``G``, or None."""
    n = s.n
    add = s.table.table
    for x in range(n):
        gx = G[x]
        for y in range(n):
            z = add[x][gx[y]]
            if tuple(gx[v] for v in G[y]) != tuple(G[z]):
                return F1Fails("gamma_x gamma_y != gamma_{x+gamma_x(y)}", (x, y))
        if G[s.zero(x)][x] != x:
            return F1Fails("gamma_{x^0}(x) != x", (x,))
        x0 = s.zero(x)
        for y in range(n):
            if add[x0][gx[y]] != gx[y]:
                return F1Fails("x^0 + gamma_x(y) != gamma_x(y)", (x, y))
    for x in range(n):
        if G[x][x] == s.zero(x) and x != s.zero(x):
            return F2Fails("gamma_x(x) = x^0 but x != x^0", (x,))
    for x in range(n):
        if not _f3_witnesses(s, G, x):
            return F3Fails("no x^-1 with gamma_x(x^-1) = -x and gamma_{x^-1}(x) = -x^-1", (x,))
    for e in sorted(s.idempotents):
        for f in sorted(s.idempotents):
            if G[e][f] != add[e][f]:
                return F4Fails("gamma_e(f) != e+f", (e, f))
    return None


def dual_gamma_violation(s: CliffordStructure, G) -> AlgebraError | None:
    n = s.n
    add = s.table.table
    for x in range(n):
        h = s.h_class(x)
        image = {G[x][a] for a in h}
        if not image <= h:
            return D1Fails("gamma_x does not map H_x into H_x", (x,))
        if len(image) != len(h):
            return D1Fails("gamma_x is not injective on H_x", (x,))
    for x in range(n):
        gx = G[x]
        x0 = s.zero(x)
        for y in range(n):
            z = add[x][gx[y]]
            if tuple(gx[v] for v in G[y]) != tuple(G[z]):
                return D2Fails("gamma_x gamma_y != gamma_{x+gamma_x(y)}", (x, y))
            if add[x0][gx[y]] != gx[y]:
                return D2Fails("x^0 + gamma_x(y) != gamma_x(y)", (x, y))
    for e in sorted(s.idempotents):
        for f in sorted(s.idempotents):
            if G[e][f] != add[e][f]:
                return D3Fails("gamma_e(f) != e+f", (e, f))
    return None


def is_dual_gamma(s: CliffordStructure, gamma: GammaInput, endos: EndomorphismMonoid | None = None) -> bool:
    endos = endos or EndomorphismMonoid(s)
    G = [endos.maps[i].images for i in _gamma_indices(endos, gamma)]
    return dual_gamma_violation(s, G) is None


def is_gamma_function(s: CliffordStructure, gamma: GammaInput,
                      endos: EndomorphismMonoid | None = None) -> GammaFunction:
    """Validate (F1)-(F4); flag (D1)-(D3). Every dual candidate must pass (F1)-(F4)."""
    endos = endos or EndomorphismMonoid(s)
    idx = _gamma_indices(endos, gamma)
    if len(idx) != s.n:
        raise GammaError(f"gamma has {len(idx)} entries for {s.n} elements")
    G = [endos.maps[i].images for i in idx]
    dual = dual_gamma_violation(s, G) is None
    err = gamma_violation(s, G)
    if err is not None:
        if dual:
            raise ImplicationViolation(f"dual Gamma function fails {type(err).__name__}") from err
        raise err
    witnesses = tuple(_f3_witnesses(s, G, x) for x in range(s.n))
    return GammaFunction(endos, idx, dual, witnesses)


def brace_from_gamma(s: CliffordStructure, g: GammaFunction) -> WeakBrace:
    """B(gamma): x o y = x + gamma_x(y)."""
    add = s.table.table
    rows = tuple(tuple(add[x][g.images(x)[y]] for y in range(s.n)) for x in range(s.n))
    br = check_weak_brace(s.base, CayleyTable(s.names, rows))
    if is_dual(br) != g.dual_flag:
        raise ImplicationViolation("dual Gamma functions must give exactly the dual braces")
    for x, ws in enumerate(g.inverse_witnesses):
        if set(ws) != {br.minv(x)}:
            raise ImplicationViolation(f"(F3) witnesses for {s.names[x]} are not the o-inverse")
    return br


def gamma_from_brace(br: WeakBrace, endos: EndomorphismMonoid | None = None) -> GammaFunction:
    """G(B): gamma_x = lambda_x."""
    endos = endos or EndomorphismMonoid(br.add_clifford)
    g = is_gamma_function(br.add_clifford, [br.lambda_table[x] for x in range(br.n)], endos)
    if g.dual_flag != is_dual(br):
        raise ImplicationViolation("dual braces must give dual Gamma functions")
    return g


# --- affine structures -----------------------------------------------------


def _diamond_rows(d) -> tuple[tuple[int, ...], ...]:
    if isinstance(d, CayleyTable):
        return d.table
    return tuple(tuple(r) for r in d)


def affine_axiom_a1(mul: InverseSemigroup, d) -> Verdict:
    """(ab) <> c = b <> (a <> c)."""
    D = _diamond_rows(d)
    M = mul.base.table
    n = mul.n
    for a in range(n):
        for b in range(n):
            ab = M[a][b]
            for c in range(n):
                if D[ab][c] != D[b][D[a][c]]:
                    return fails(a, b, c)
    return HOLDS


def affine_axiom_a2(mul: InverseSemigroup, d) -> Verdict:
    """a <> (b (b <> c)) = (a <> b)((a <> b) <> (a <> c))."""
    D = _diamond_rows(d)
    M = mul.base.table
    n = mul.n
    for a in range(n):
        for b in range(n):
            ab = D[a][b]
            for c in range(n):
                if D[a][M[b][D[b][c]]] != M[ab][D[ab][D[a][c]]]:
                    return fails(a, b, c)
    return HOLDS


def affine_axiom_a3(mul: InverseSemigroup, d) -> Verdict:
    """e <> a = ea and a <> e = a^-1 e a for idempotent e."""
    D = _diamond_rows(d)
    M = mul.base.table
    for e in sorted(mul.idempotents):
        for a in range(mul.n):
            if D[e][a] != M[e][a] or D[a][e] != M[M[mul.inv[a]][e]][a]:
                return fails(e, a)
    return HOLDS


@dataclass(frozen=True)
class AffineStructure:
    mul: InverseSemigroup
    diamond: CayleyTable

    def key(self) -> tuple:
        return self.diamond.flat()


def is_affine_structure(mul: Union[CayleyTable, InverseSemigroup], d) -> AffineStructure:
    if isinstance(mul, CayleyTable):
        mul = von_neumann_inverses(mul)
    rows = _diamond_rows(d)
    table = CayleyTable(mul.names, rows)
    for check, err in ((affine_axiom_a1, A1Fails), (affine_axiom_a2, A2Fails), (affine_axiom_a3, A3Fails)):
        v = check(mul, rows)
        if not v:
            raise err(f"{err.__name__[:2]} fails at {tuple(mul.names[i] for i in v.witness)}", v.witness)
    return AffineStructure(mul, table)


def induced_addition(mul: InverseSemigroup, d) -> CayleyTable:
    """x + y = x (x <> y)."""
    D = _diamond_rows(d)
    M = mul.base.table
    n = mul.n
    return CayleyTable(mul.names, tuple(tuple(M[x][D[x][y]] for y in range(n)) for x in range(n)))


def brace_from_affine(a: AffineStructure) -> WeakBrace:
    """B(<>): the brace (S, +, .) with x + y = x (x <> y)."""
    br = check_weak_brace(induced_addition(a.mul, a.diamond), a.mul)
    if br.mul_is_clifford != is_clifford(a.mul):
        raise ImplicationViolation("duality of B(<>) must match (S,.) being Clifford")
    D = a.diamond.table
    for x in range(br.n):
        xi = br.minv(x)
        if br.neg(x) != D[xi][xi]:
            raise ImplicationViolation(f"-x != x^-1 <> x^-1 at {br.names[x]}")
    return br


def affine_table_from_brace(br: WeakBrace) -> CayleyTable:
    """a <> b = a^-1 (a + b)."""
    n = br.n
    rows = tuple(tuple(br.times(br.minv(a), br.plus(a, b)) for b in range(n)) for a in range(n))
    return CayleyTable(br.names, rows)


def affine_from_brace(br: WeakBrace) -> AffineStructure:
    """A(B), validated; a failure is surfaced as AffineValidationFails."""
    table = affine_table_from_brace(br)
    try:
        return is_affine_structure(br.mul, table)
    except AffineError as exc:
        raise AffineValidationFails(f"A(B) is not an affine structure: {exc}", exc.witness) from exc


def affine_formulas_agree(br: WeakBrace) -> Verdict:
    """a^-1 (a + b) = lambda_{a^-1}(b) = -a^-1 + a^-1 b for all a, b."""
    for a in range(br.n):
        ai = br.minv(a)
        for b in range(br.n):
            if br.times(ai, br.plus(a, b)) != br.lam(ai, b):
                return fails(a, b)
    return HOLDS


def affine_identity_violations(a: AffineStructure) -> list[str]:
    """Identities of an affine structure and its induced addition, checked on all tuples."""
    mul = a.mul
    M = mul.base.table
    D = a.diamond.table
    n = mul.n
    P = induced_addition(mul, D).table
    out = []
    for x in range(n):
        xi = mul.inv[x]
        if D[M[x][xi]][x] != x:
            out.append(f"(x x^-1) <> x != x at {x}")
        for y in range(n):
            if D[x][y] != M[xi][P[x][y]]:
                out.append(f"x <> y != x^-1 (x + y) at {(x, y)}")
            if M[M[x][xi]][D[xi][y]] != D[xi][y]:
                out.append(f"(x x^-1)(x^-1 <> y) != x^-1 <> y at {(x, y)}")
            for z in range(n):
                if D[x][P[y][z]] != P[D[x][y]][D[x][z]]:
                    out.append(f"x <> (y+z) != (x<>y) + (x<>z) at {(x, y, z)}")
    for e in mul.idempotents:
        for x in range(n):
            if not P[e][x] == P[x][e] == M[e][x]:
                out.append(f"e + a = a + e = ea fails at {(e, x)}")
    return out

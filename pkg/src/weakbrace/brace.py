"""Weak left braces (S,+,.) and their lambda maps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

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
    is_clifford,
    von_neumann_inverses,
)
from .errors import (
    AddNotInverse,
    AlgebraError,
    DimensionMismatch,
    DistributivityFails,
    ImplicationViolation,
    InverseAxiomFails,
    LambdaNotEndo,
    MulNotInverse,
    NotClifford,
)
from .morphisms import EndoMap, is_endomorphism

Operand = Union[CayleyTable, InverseSemigroup]


def _inverse(t: Operand, err: type[AlgebraError], which: str) -> InverseSemigroup:
    if isinstance(t, InverseSemigroup):
        return t
    try:
        return von_neumann_inverses(t)
    except AlgebraError as exc:
        raise err(f"({which}) is not an inverse semigroup: {exc}", exc.witness) from exc


def _first(mask: np.ndarray) -> Verdict:
    bad = np.argwhere(mask)
    if len(bad):
        return fails(*bad[0])
    return HOLDS


def _arrays(add: Operand, mul: Operand):
    a = _inverse(add, AddNotInverse, "S,+")
    m = _inverse(mul, MulNotInverse, "S,.")
    if a.names != m.names:
        raise DimensionMismatch("operations live on different carriers")
    return a.base.array, m.base.array, np.array(a.inv, dtype=np.int64)


def check_axiom_weak1(add: Operand, mul: Operand) -> Verdict:
    """x(y+z) = xy - x + xz for all x, y, z."""
    A, M, neg = _arrays(add, mul)
    lhs = M[:, A]
    t = A[M[:, :, None], neg[:, None, None]]
    rhs = A[t, M[:, None, :]]
    return _first(lhs != rhs)


def check_axiom_weak2(add: Operand, mul: Operand) -> Verdict:
    """-x + x(y+z) = -x + xy - x + xz for all x, y, z (each lambda_x is additive)."""
    A, M, neg = _arrays(add, mul)
    nx = neg[:, None, None]
    lhs = A[nx, M[:, A]]
    t = A[A[nx, M[:, :, None]], nx]
    rhs = A[t, M[:, None, :]]
    return _first(lhs != rhs)


def check_axiom_weak3(add: Operand, mul: Operand) -> Verdict:
    """-xy + xyz = -x + x(-y + yz) for all x, y, z (lambda is multiplicative)."""
    A, M, neg = _arrays(add, mul)
    xy = M[:, :, None]
    lhs = A[neg[xy], M[xy, np.arange(len(neg))[None, None, :]]]
    inner = A[neg[None, :, None], M[None, :, :]]        # [_, y, z] -> -y + yz
    rhs = A[neg[:, None, None], M[np.arange(len(neg))[:, None, None], inner]]
    return _first(lhs != rhs)


def check_inverse_axiom(add: Operand, mul: Operand) -> Verdict:
    """x x^-1 = -x + x for all x."""
    a = _inverse(add, AddNotInverse, "S,+")
    m = _inverse(mul, MulNotInverse, "S,.")
    for x in range(a.n):
        if m.op(x, m.inv[x]) != a.op(a.inv[x], x):
            return fails(x)
    return HOLDS


@dataclass(frozen=True)
class WeakBrace:
    add: InverseSemigroup
    mul: InverseSemigroup
    lambda_table: tuple[tuple[int, ...], ...]
    add_clifford: CliffordStructure

    @property
    def n(self) -> int:
        return self.add.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.add.names

    def plus(self, x: int, y: int) -> int:
        return self.add.base.table[x][y]

    def times(self, x: int, y: int) -> int:
        return self.mul.base.table[x][y]

    def neg(self, x: int) -> int:
        return self.add.inv[x]

    def minv(self, x: int) -> int:
        return self.mul.inv[x]

    def lam(self, a: int, b: int) -> int:
        return self.lambda_table[a][b]

    def key(self) -> tuple:
        """Canonical sort key: flattened multiplication, then addition."""
        return (self.mul.base.flat(), self.add.base.flat())

    @cached_property
    def mul_is_clifford(self) -> bool:
        return is_clifford(self.mul)

    def __repr__(self) -> str:
        return f"WeakBrace(names={self.names}, add={self.add.base.table}, mul={self.mul.base.table})"


def check_weak_brace(add: Operand, mul: Operand) -> WeakBrace:
    """Validate (S,+,.) and return the brace with its cached lambda table.

    Raises the first failing axiom: AddNotInverse, MulNotInverse,
    DistributivityFails(x,y,z), InverseAxiomFails(x).
    """
    a = _inverse(add, AddNotInverse, "S,+")
    m = _inverse(mul, MulNotInverse, "S,.")
    if a.names != m.names:
        raise DimensionMismatch("operations live on different carriers")
    v = check_axiom_weak1(a, m)
    if not v:
        raise DistributivityFails(f"x(y+z) != xy-x+xz at {tuple(a.names[i] for i in v.witness)}", v.witness)
    v = check_inverse_axiom(a, m)
    if not v:
        raise InverseAxiomFails(f"x x^-1 != -x+x at x={a.names[v.witness[0]]}", v.witness)
    return _assemble(a, m)


def _assemble(a: InverseSemigroup, m: InverseSemigroup) -> WeakBrace:
    n = a.n
    try:
        cl = build_clifford(a)
    except NotClifford as exc:
        raise ImplicationViolation(f"additive structure of a weak brace is not Clifford: {exc}") from exc
    if a.idempotents != m.idempotents:
        raise ImplicationViolation("E(S,+) != E(S,.) in a weak brace")
    lam = tuple(tuple(a.op(a.inv[x], m.op(x, y)) for y in range(n)) for x in range(n))
    for x in range(n):
        if not is_endomorphism(a.base, lam[x]):
            raise LambdaNotEndo(f"lambda_{a.names[x]} is not additive", (x,))
        for y in range(n):
            if m.op(x, y) != a.op(x, lam[x][y]):
                raise ImplicationViolation(f"ab != a + lambda_a(b) at {(x, y)}")
    return WeakBrace(a, m, lam, cl)


def lambda_of(b: WeakBrace, a: int) -> EndoMap:
    images = b.lambda_table[a]
    if not is_endomorphism(b.add.base, images):
        raise LambdaNotEndo(f"lambda_{b.names[a]} is not additive", (a,))
    return EndoMap(images, b.add.base)


def lambda_is_mul_homomorphism(b: WeakBrace) -> Verdict:
    """lambda_{ab} = lambda_a o lambda_b pointwise."""
    lt = b.lambda_table
    for x in range(b.n):
        for y in range(b.n):
            xy = b.times(x, y)
            for z in range(b.n):
                if lt[xy][z] != lt[x][lt[y][z]]:
                    return fails(x, y, z)
    return HOLDS


def is_dual(b: WeakBrace) -> bool:
    """(S,.) Clifford; for dual braces also confirms lambda_a restricts to Aut(H_a,+)."""
    if not b.mul_is_clifford:
        return False
    cl = b.add_clifford
    for a in range(b.n):
        h = cl.h_class(a)
        image = {b.lam(a, x) for x in h}
        if image != set(h):
            raise ImplicationViolation(f"lambda_{b.names[a]} does not permute H_{b.names[a]}")
    return True


def is_group(s: InverseSemigroup) -> bool:
    return len(s.idempotents) == 1


def is_skew_brace(b: WeakBrace) -> bool:
    return is_group(b.add) and is_group(b.mul)


def brace_identity_violations(b: WeakBrace) -> list[str]:
    """Identities every weak brace satisfies, checked on all tuples.

    Covers e.a = e+a = a+e, a^0+a = a, a^0+b^0 = (a+b)^0, lambda_a(a^-1) = -a,
    coincidence of additive and multiplicative identities, and for dual braces
    x^0 = x x^-1 = x^-1 x, a^0 a = a, (ab)^0 = a^0 b^0.
    """
    out = []
    n = b.n
    cl = b.add_clifford
    E = b.add.idempotents
    for e in E:
        for a in range(n):
            if not b.times(e, a) == b.plus(e, a) == b.plus(a, e):
                out.append(f"e.a = e+a = a+e fails at {(e, a)}")
    for a in range(n):
        a0 = cl.zero(a)
        if b.plus(a0, a) != a or b.plus(a, a0) != a:
            out.append(f"a^0 + a != a at {a}")
        if b.lam(a, b.minv(a)) != b.neg(a):
            out.append(f"lambda_a(a^-1) != -a at {a}")
        for c in range(n):
            if b.plus(a0, cl.zero(c)) != cl.zero(b.plus(a, c)):
                out.append(f"a^0+b^0 != (a+b)^0 at {(a, c)}")
    e_add = identity_element(b.add)
    e_mul = identity_element(b.mul)
    if e_add != e_mul:
        out.append(f"additive identity {e_add} != multiplicative identity {e_mul}")
    if b.mul_is_clifford:
        for x in range(n):
            x0 = cl.zero(x)
            if not x0 == b.times(x, b.minv(x)) == b.times(b.minv(x), x):
                out.append(f"x^0 != x x^-1 at {x}")
            if b.times(x0, x) != x or b.times(x, x0) != x:
                out.append(f"x^0 x != x at {x}")
            if cl.zero(b.minv(x)) != x0:
                out.append(f"(x^-1)^0 != x^0 at {x}")
            for e in E:
                if not b.times(x, e) == b.plus(x, e) == b.plus(e, x):
                    out.append(f"a e = a+e fails at {(x, e)}")
            for y in range(n):
                xy0 = cl.zero(b.times(x, y))
                if not xy0 == b.times(x0, cl.zero(y)) == b.plus(x0, cl.zero(y)):
                    out.append(f"(ab)^0 != a^0 b^0 at {(x, y)}")
    return out

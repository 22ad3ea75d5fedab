"""Symmetric, lambda-homomorphic and lambda-anti-homomorphic braces, and strong
semilattices of skew braces."""

from __future__ import annotations

from dataclasses import dataclass, field

from .brace import WeakBrace, check_weak_brace, is_dual, is_skew_brace
from .core import HOLDS, CayleyTable, Verdict, fails, is_associative
from .errors import AlgebraError, ImplicationViolation, NotDual, ParseError, SpecInvalid
from .fileio import SemilatticeDocument

CLASS_FLAGS = ("weak", "dual", "symmetric", "lambda-homomorphic", "lambda-anti-homomorphic")


def _require_dual(b: WeakBrace, what: str) -> None:
    if not is_dual(b):
        raise ImplicationViolation(f"{what} brace on {b.names} is not dual")


def is_symmetric(b: WeakBrace) -> Verdict:
    """x(y+z) = xy - x + xz and x + yz = (x+y) x^-1 (x+z) for all x, y, z.

    A witness (x, y, z) names the first failure of the second identity; the
    first identity holds for every weak brace and is rechecked here anyway.
    """
    n = b.n
    P, M = b.plus, b.times
    verdict = HOLDS
    for x in range(n):
        xi = b.minv(x)
        nx = b.neg(x)
        for y in range(n):
            xy = M(x, y)
            x_plus_y = P(x, y)
            for z in range(n):
                if M(x, P(y, z)) != P(P(xy, nx), M(x, z)):
                    raise ImplicationViolation(f"weak brace fails x(y+z)=xy-x+xz at {(x, y, z)}")
                if verdict and P(x, M(y, z)) != M(M(x_plus_y, xi), P(x, z)):
                    verdict = fails(x, y, z)
    if verdict:
        _require_dual(b, "symmetric")
        for x in range(n):
            if P(b.neg(x), x) != M(x, b.minv(x)) or P(x, b.neg(x)) != M(b.minv(x), x):
                raise ImplicationViolation(f"symmetric brace has -x+x != x x^-1 at {x}")
    return verdict


def is_lambda_homomorphic(b: WeakBrace) -> Verdict:
    """lambda_x o lambda_y = lambda_{x+y}; witness (x, y, z)."""
    lt = b.lambda_table
    for x in range(b.n):
        for y in range(b.n):
            s = b.plus(x, y)
            for z in range(b.n):
                if lt[x][lt[y][z]] != lt[s][z]:
                    return fails(x, y, z)
    _require_dual(b, "lambda-homomorphic")
    return HOLDS


def _anti_by_lambda(b: WeakBrace) -> Verdict:
    lt = b.lambda_table
    for x in range(b.n):
        for y in range(b.n):
            s = b.plus(x, y)
            for z in range(b.n):
                if lt[y][lt[x][z]] != lt[s][z]:
                    return fails(x, y, z)
    return HOLDS


def _anti_single_axiom(b: WeakBrace) -> Verdict:
    """y(-x + xz) = -x + (x+y)z."""
    P, M = b.plus, b.times
    for x in range(b.n):
        nx = b.neg(x)
        for y in range(b.n):
            s = P(x, y)
            for z in range(b.n):
                if M(y, P(nx, M(x, z))) != P(nx, M(s, z)):
                    return fails(x, y, z)
    return HOLDS


def is_lambda_anti_homomorphic(b: WeakBrace) -> Verdict:
    """lambda_y o lambda_x = lambda_{x+y}; witness (x, y, z).

    The single-axiom form y(-x+xz) = -x+(x+y)z is evaluated too, and the two
    must agree.
    """
    v1 = _anti_by_lambda(b)
    v2 = _anti_single_axiom(b)
    if bool(v1) != bool(v2):
        raise ImplicationViolation(
            f"lambda-anti-homomorphism forms disagree on {b.names}: {v1} vs {v2}")
    if v1:
        _require_dual(b, "lambda-anti-homomorphic")
    return v1


def classify(b: WeakBrace) -> dict[str, Verdict]:
    """All flags of a valid brace, with the implications among them enforced.

    Raises ImplicationViolation if symmetric and lambda-anti-homomorphic
    disagree or a special class is found that is not dual.
    """
    dual = is_dual(b)
    if dual:
        dual_v = HOLDS
    else:
        w = next(x for x in range(b.n)
                 if b.times(x, b.minv(x)) != b.times(b.minv(x), x))
        dual_v = fails(w)
    flags = {
        "weak": HOLDS,
        "dual": dual_v,
        "symmetric": is_symmetric(b),
        "lambda-homomorphic": is_lambda_homomorphic(b),
        "lambda-anti-homomorphic": is_lambda_anti_homomorphic(b),
    }
    if bool(flags["symmetric"]) != bool(flags["lambda-anti-homomorphic"]):
        raise ImplicationViolation(
            f"symmetric ({bool(flags['symmetric'])}) and lambda-anti-homomorphic "
            f"({bool(flags['lambda-anti-homomorphic'])}) disagree on {b.names}")
    return flags


# --- strong semilattices --------------------------------------------------

@dataclass
class SemilatticeSpec:
    """Y with meet table, a skew brace per element of Y, and maps phi_{alpha,beta}.

    ``homs[(alpha, beta)]`` lists, for each element of B_alpha (by index), the
    index of its image in B_beta. A missing ``(alpha, alpha)`` entry means the
    identity.
    """

    Y: CayleyTable
    components: dict[str, WeakBrace]
    homs: dict[tuple[str, str], tuple[int, ...]] = field(default_factory=dict)

    def geq(self, alpha: str, beta: str) -> bool:
        """alpha >= beta, i.e. alpha meet beta = beta."""
        a, b = self.Y.index(alpha), self.Y.index(beta)
        return self.Y.op(a, b) == b

    def hom(self, alpha: str, beta: str) -> tuple[int, ...]:
        if alpha == beta and (alpha, alpha) not in self.homs:
            return tuple(range(self.components[alpha].n))
        return self.homs[(alpha, beta)]


def _check_meet_semilattice(Y: CayleyTable) -> None:
    for a in range(Y.n):
        if Y.op(a, a) != a:
            raise SpecInvalid(f"Y is not idempotent at {Y.names[a]}", (a,))
        for b in range(Y.n):
            if Y.op(a, b) != Y.op(b, a):
                raise SpecInvalid(f"Y is not commutative at {Y.names[a]}, {Y.names[b]}", (a, b))
    v = is_associative(Y)
    if not v:
        raise SpecInvalid(f"Y is not associative at {v.witness}", v.witness)


def validate_spec(spec: SemilatticeSpec) -> None:
    """Raise SpecInvalid naming the first violated requirement."""
    Y = spec.Y
    _check_meet_semilattice(Y)
    missing = [a for a in Y.names if a not in spec.components]
    if missing:
        raise SpecInvalid(f"no component for {', '.join(missing)}")
    for alpha, comp in spec.components.items():
        if alpha not in Y.names:
            raise SpecInvalid(f"component {alpha} is not an element of Y")
        if not is_skew_brace(comp):
            raise SpecInvalid(f"component {alpha} is not a skew brace (both operations must be groups)")
    for (alpha, beta), images in spec.homs.items():
        if alpha not in spec.components or beta not in spec.components:
            raise SpecInvalid(f"hom {alpha} -> {beta} names an unknown component")
        if not spec.geq(alpha, beta):
            raise SpecInvalid(f"hom {alpha} -> {beta} given but {alpha} >= {beta} fails")
        if len(images) != spec.components[alpha].n or not all(
                0 <= v < spec.components[beta].n for v in images):
            raise SpecInvalid(f"hom {alpha} -> {beta} is not a map B_{alpha} -> B_{beta}")
    pairs = [(a, b) for a in Y.names for b in Y.names if spec.geq(a, b)]
    for alpha, beta in pairs:
        if alpha != beta and (alpha, beta) not in spec.homs:
            raise SpecInvalid(f"missing hom {alpha} -> {beta}")
    for alpha in Y.names:
        if spec.hom(alpha, alpha) != tuple(range(spec.components[alpha].n)):
            raise SpecInvalid(f"condition (1) fails: phi_{alpha},{alpha} is not the identity")
    for alpha, beta in pairs:
        f = spec.hom(alpha, beta)
        src, dst = spec.components[alpha], spec.components[beta]
        for x in range(src.n):
            for y in range(src.n):
                if (f[src.plus(x, y)] != dst.plus(f[x], f[y])
                        or f[src.times(x, y)] != dst.times(f[x], f[y])):
                    raise SpecInvalid(
                        f"hom {alpha} -> {beta} is not a brace homomorphism",
                        (x, y))
    for alpha, beta in pairs:
        for gamma in Y.names:
            if not spec.geq(beta, gamma):
                continue
            f, g, h = spec.hom(alpha, beta), spec.hom(beta, gamma), spec.hom(alpha, gamma)
            if tuple(g[v] for v in f) != h:
                raise SpecInvalid(
                    f"condition (2) fails: phi_{beta},{gamma} phi_{alpha},{beta} != phi_{alpha},{gamma}")


def _carrier(spec: SemilatticeSpec) -> list[tuple[str, int]]:
    return [(alpha, x) for alpha in spec.Y.names for x in range(spec.components[alpha].n)]


def composed_names(spec: SemilatticeSpec) -> tuple[str, ...]:
    """Element names of the union: plain if the components are disjoint, else ``alpha.x``."""
    carrier = _carrier(spec)
    plain = [spec.components[a].names[x] for a, x in carrier]
    if len(set(plain)) == len(plain):
        return tuple(plain)
    return tuple(f"{a}.{spec.components[a].names[x]}" for a, x in carrier)


def compose_semilattice(spec: SemilatticeSpec) -> WeakBrace:
    """The strong semilattice [Y; B_alpha; phi_alpha,beta], validated as a dual brace."""
    validate_spec(spec)
    carrier = _carrier(spec)
    pos = {c: i for i, c in enumerate(carrier)}
    Y = spec.Y
    add_rows, mul_rows = [], []
    for alpha, x in carrier:
        arow, mrow = [], []
        for beta, y in carrier:
            gamma = Y.names[Y.op(Y.index(alpha), Y.index(beta))]
            u = spec.hom(alpha, gamma)[x]
            v = spec.hom(beta, gamma)[y]
            comp = spec.components[gamma]
            arow.append(pos[(gamma, comp.plus(u, v))])
            mrow.append(pos[(gamma, comp.times(u, v))])
        add_rows.append(tuple(arow))
        mul_rows.append(tuple(mrow))
    names = composed_names(spec)
    try:
        b = check_weak_brace(CayleyTable(names, tuple(add_rows)), CayleyTable(names, tuple(mul_rows)))
    except AlgebraError as exc:
        raise ImplicationViolation(f"strong semilattice is not a weak brace: {exc}") from exc
    _require_dual(b, "strong semilattice")
    return b


def decompose_semilattice(b: WeakBrace) -> SemilatticeSpec:
    """Y = E(S) with e meet f = e + f, B_e = H_e, phi_{e,f}(x) = f + x."""
    if not is_dual(b):
        w = next(x for x in range(b.n) if b.times(x, b.minv(x)) != b.times(b.minv(x), x))
        raise NotDual(f"mul not Clifford, witness {b.names[w]}", (w,))
    cl = b.add_clifford
    idem = sorted(b.add.idempotents)
    ypos = {e: i for i, e in enumerate(idem)}
    y_rows = []
    for e in idem:
        row = []
        for f in idem:
            s = b.plus(e, f)
            if s not in ypos or b.times(e, f) != s:
                raise ImplicationViolation(f"e+f != ef or not idempotent at {(e, f)}")
            row.append(ypos[s])
        y_rows.append(tuple(row))
    Y = CayleyTable(tuple(b.names[e] for e in idem), tuple(y_rows))
    members = {e: sorted(cl.h_class(e)) for e in idem}
    components = {}
    for e in idem:
        h = members[e]
        local = {x: i for i, x in enumerate(h)}
        names = tuple(b.names[x] for x in h)
        try:
            add = CayleyTable(names, tuple(tuple(local[b.plus(x, y)] for y in h) for x in h))
            mul = CayleyTable(names, tuple(tuple(local[b.times(x, y)] for y in h) for x in h))
            comp = check_weak_brace(add, mul)
        except (KeyError, AlgebraError) as exc:
            raise ImplicationViolation(f"H-class of {b.names[e]} is not a sub-brace: {exc}") from exc
        if not is_skew_brace(comp):
            raise ImplicationViolation(f"H-class of {b.names[e]} is not a skew brace")
        components[b.names[e]] = comp
    homs = {}
    for e in idem:
        for f in idem:
            if e != f and b.plus(e, f) == f:
                local = {x: i for i, x in enumerate(members[f])}
                homs[(b.names[e], b.names[f])] = tuple(local[b.plus(f, x)] for x in members[e])
    spec = SemilatticeSpec(Y, components, homs)
    try:
        validate_spec(spec)
    except SpecInvalid as exc:
        raise ImplicationViolation(f"decomposition is not a valid semilattice spec: {exc}") from exc
    return spec


def roundtrip_semilattice(b: WeakBrace) -> WeakBrace:
    """compose(decompose(b)) listed in the element order of ``b``.

    Raises ImplicationViolation unless both tables come back unchanged.
    """
    c = compose_semilattice(decompose_semilattice(b))
    add = c.add.base.reordered(b.names)
    mul = c.mul.base.reordered(b.names)
    if add != b.add.base or mul != b.mul.base:
        raise ImplicationViolation(f"semilattice round trip changed the tables on {b.names}")
    return check_weak_brace(add, mul)


def spec_from_document(doc: SemilatticeDocument) -> SemilatticeSpec:
    """Resolve a parsed semilattice file; component tables are validated as braces."""
    components = {}
    for alpha, comp in doc.components.items():
        components[alpha] = check_weak_brace(comp.ops["add"], comp.ops["mul"])
    homs = {}
    for (alpha, beta), mapping in doc.homs.items():
        src, dst = components[alpha], components[beta]
        try:
            homs[(alpha, beta)] = tuple(dst.add.base.index(mapping[s]) for s in src.names)
        except KeyError as exc:
            raise ParseError(f"hom {alpha} -> {beta}: {exc.args[0]}") from None
        extra = set(mapping) - set(src.names)
        if extra:
            raise ParseError(f"hom {alpha} -> {beta}: unknown source {sorted(extra)[0]!r}")
    return SemilatticeSpec(doc.meet, components, homs)

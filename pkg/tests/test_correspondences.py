import pytest

from weakbrace.brace import check_weak_brace, is_dual
from weakbrace.core import build_clifford, magma, von_neumann_inverses
from weakbrace.correspondences import (
    affine_axiom_a1,
    affine_axiom_a2,
    affine_formulas_agree,
    affine_from_brace,
    affine_identity_violations,
    brace_from_affine,
    brace_from_gamma,
    brace_from_good,
    gamma_from_brace,
    good_from_brace,
    induced_addition,
    is_affine_structure,
    is_dual_gamma,
    is_gamma_function,
    is_good_subsemigroup,
)
from weakbrace.errors import A1Fails, A3Fails, F1Fails, G1Fails, GammaError, NotInverseSub
from weakbrace.fixtures import EX1_NAMES, GAMMA1, GAMMA2, H1, H2, load, phi_images
from weakbrace.morphisms import EndomorphismMonoid, Holomorph, HolomorphElement
from weakbrace.search import (
    enumerate_affine_structures,
    enumerate_gamma_functions,
    enumerate_good_subsemigroups,
    inverse_semigroup_tables,
    oracle_enumerate_braces,
)


def gamma_list(spec):
    return [phi_images(spec[x]) for x in EX1_NAMES]


@pytest.fixture(scope="module")
def h1(phi):
    return {phi(k, x) for k, x in H1}


@pytest.fixture(scope="module")
def h2(phi):
    return {phi(k, x) for k, x in H2}


@pytest.fixture(scope="module")
def corpus():
    return [t for n in (1, 2, 3, 4) for t in inverse_semigroup_tables(n)]


@pytest.fixture(scope="module")
def corpus_braces(corpus, trivial_brace, brace2):
    out = [trivial_brace, brace2]
    for t in corpus:
        if t.n <= 3:
            out.extend(oracle_enumerate_braces(t).braces)
        else:
            out.extend(enumerate_gamma_functions(t).braces)
    return out


class TestGoodSubsemigroups:
    def test_first_is_clifford(self, hol, h1):
        assert is_good_subsemigroup(hol, h1).kind == "clifford"

    def test_second_is_inverse_only(self, hol, h2):
        assert is_good_subsemigroup(hol, h2).kind == "inverse"

    def test_replacing_a_forces_two_elements_over_a(self, hol, phi, h2):
        h = (h2 - {phi(5, "a")}) | {phi(4, "a")}
        closed = hol.closure(h)
        assert {phi(4, "a"), phi(6, "a")} <= closed
        assert len([u for u in closed if EX1_NAMES[u.point] == "a"]) > 1
        with pytest.raises(G1Fails):
            is_good_subsemigroup(hol, closed)

    def test_unclosed_set_rejected(self, hol, phi, h2):
        with pytest.raises(NotInverseSub):
            is_good_subsemigroup(hol, (h2 - {phi(5, "a")}) | {phi(4, "a")})

    def test_missing_point(self, hol, phi):
        with pytest.raises(G1Fails):
            is_good_subsemigroup(hol, {phi(1, "0")})

    def test_brace_from_first_is_trivial(self, hol, h1, ex1_add):
        br = brace_from_good(is_good_subsemigroup(hol, h1))
        assert br.mul.base.table == ex1_add.table

    def test_brace_from_second(self, hol, h2, brace2):
        br = brace_from_good(is_good_subsemigroup(hol, h2))
        assert br.mul.base.table == brace2.mul.base.table

    def test_from_brace(self, hol, h1, h2, trivial_brace, brace2):
        assert good_from_brace(trivial_brace, hol).elements == h1
        assert good_from_brace(brace2, hol).elements == h2

    def test_singleton(self):
        b = check_weak_brace(magma([[0]]), magma([[0]]))
        g = good_from_brace(b)
        assert g.elements == {HolomorphElement(0, 0)}
        assert g.hol.endos.maps[0].images == (0,)


class TestGammaFunctions:
    def test_first_is_dual(self, ex1_clifford):
        g = is_gamma_function(ex1_clifford, gamma_list(GAMMA1))
        assert g.dual_flag
        assert is_dual_gamma(ex1_clifford, gamma_list(GAMMA1))

    def test_second_not_dual(self, ex1_clifford):
        g = is_gamma_function(ex1_clifford, gamma_list(GAMMA2))
        assert not g.dual_flag

    def test_braces(self, ex1_clifford, trivial_brace, brace2):
        endos = EndomorphismMonoid(ex1_clifford)
        for spec, br in ((GAMMA1, trivial_brace), (GAMMA2, brace2)):
            g = is_gamma_function(ex1_clifford, gamma_list(spec), endos)
            assert brace_from_gamma(ex1_clifford, g).key() == br.key()
            assert gamma_from_brace(br, endos).gamma == g.gamma

    def test_inverse_witness_is_mul_inverse(self, ex1_clifford, brace2):
        g = is_gamma_function(ex1_clifford, gamma_list(GAMMA2))
        for x in range(5):
            assert g.inverse_witnesses[x] == (brace2.minv(x),)

    def test_violations(self, ex1_clifford):
        bad = gamma_list(GAMMA1)
        bad[EX1_NAMES.index("e")] = phi_images(3)
        with pytest.raises(GammaError):
            is_gamma_function(ex1_clifford, bad)
        with pytest.raises(GammaError):
            is_gamma_function(ex1_clifford, gamma_list(GAMMA1)[:4])
        with pytest.raises(F1Fails) as exc:
            is_gamma_function(ex1_clifford, [phi_images(1)] * 5)
        assert exc.value.witness == (EX1_NAMES.index("e"),)

    def test_trivial_gamma_on_corpus(self, corpus):
        for t in corpus:
            s = build_clifford(von_neumann_inverses(t))
            gamma = [tuple(t.op(s.zero(x), y) for y in range(t.n)) for x in range(t.n)]
            g = is_gamma_function(s, gamma)
            br = brace_from_gamma(s, g)
            assert br.mul.base.table == t.table


class TestAffineStructures:
    def test_diamond_on_brandt(self, ex2):
        a = is_affine_structure(ex2.ops["mul"], ex2.ops["diamond"])
        br = brace_from_affine(a)
        assert br.add.base.table == ex2.ops["add"].table
        for x in range(5):
            xi = br.minv(x)
            assert br.neg(x) == a.diamond.op(xi, xi)

    def test_fixed_point_diamond_rejected(self):
        d = load("b2_diamond_fixed.tbl")
        with pytest.raises(A1Fails):
            is_affine_structure(d.ops["mul"], d.ops["diamond"])

    def test_a_diamond_a_equal_f_rejected(self, ex2):
        mul = von_neumann_inverses(ex2.ops["mul"])
        names = mul.names
        rows = [list(r) for r in ex2.ops["diamond"].table]
        rows[names.index("a")][names.index("a")] = names.index("f")
        assert not affine_axiom_a2(mul, rows)
        assert not affine_axiom_a1(mul, rows)
        plus = induced_addition(mul, rows)
        a = names.index("a")
        assert plus.op(a, a) == a

    def test_a3_pins_idempotent_rows(self, ex2):
        mul = von_neumann_inverses(ex2.ops["mul"])
        rows = [list(r) for r in ex2.ops["diamond"].table]
        e, a = mul.names.index("e"), mul.names.index("a")
        rows[e][a] = 0
        with pytest.raises((A1Fails, A3Fails)):
            is_affine_structure(mul, rows)

    def test_group_identity_row(self):
        c3 = load("c3.tbl").ops["add"]
        proj = [[b for b in range(3)] for _ in range(3)]
        a = is_affine_structure(c3, proj)
        assert brace_from_affine(a).add.base.table == c3.table
        rep = enumerate_affine_structures(c3)
        for f in rep.results:
            assert f.structure.diamond.table[0] == (0, 1, 2)

    def test_from_trivial_group_brace_is_projection(self):
        c3 = load("c3.tbl").ops["add"]
        a = affine_from_brace(check_weak_brace(c3, c3))
        assert a.diamond.table == ((0, 1, 2),) * 3

    def test_from_non_dual_brace(self, brace2, ex2):
        a = affine_from_brace(brace2)
        assert a.diamond.table == ex2.ops["diamond"].table


class TestRoundTrips:
    def test_good(self, corpus, ex1_add):
        for t in corpus + [ex1_add]:
            rep = enumerate_good_subsemigroups(t)
            for f in rep.results:
                g = f.structure
                br = brace_from_good(g)
                assert good_from_brace(br, g.hol).elements == g.elements
                assert brace_from_good(good_from_brace(br, g.hol)).key() == br.key()
                assert (g.kind == "clifford") == is_dual(br)

    def test_gamma(self, corpus, ex1_add):
        for t in corpus + [ex1_add]:
            rep = enumerate_gamma_functions(t)
            for f in rep.results:
                g = f.structure
                s = build_clifford(von_neumann_inverses(t))
                br = brace_from_gamma(s, g)
                assert gamma_from_brace(br, g.endos).gamma == g.gamma
                assert g.dual_flag == is_dual(br)

    def test_affine(self, corpus, b2_mul):
        for t in corpus + [b2_mul]:
            rep = enumerate_affine_structures(t)
            for f in rep.results:
                br = brace_from_affine(f.structure)
                assert affine_from_brace(br).diamond == f.structure.diamond
                assert affine_identity_violations(f.structure) == []

    def test_braces(self, corpus_braces):
        for br in corpus_braces:
            hol = Holomorph(br.add_clifford)
            assert brace_from_good(good_from_brace(br, hol)).key() == br.key()
            s = br.add_clifford
            assert brace_from_gamma(s, gamma_from_brace(br)).key() == br.key()
            again = brace_from_affine(affine_from_brace(br))
            assert again.add.base.table == br.add.base.table
            assert affine_formulas_agree(br)

    def test_kind_preserved(self, corpus_braces):
        for br in corpus_braces:
            d = is_dual(br)
            assert (good_from_brace(br).kind == "clifford") == d
            assert gamma_from_brace(br).dual_flag == d

import pytest

import oracles
from conftest import rows
from weakbrace.brace import check_weak_brace, is_dual
from weakbrace.core import CayleyTable, magma
from weakbrace.errors import NotDual, SpecInvalid
from weakbrace.fixtures import load_semilattice
from weakbrace.search import enumerate_gamma_functions, inverse_semigroup_tables, oracle_enumerate_braces
from weakbrace.special import (
    SemilatticeSpec,
    classify,
    compose_semilattice,
    decompose_semilattice,
    is_lambda_anti_homomorphic,
    is_lambda_homomorphic,
    is_symmetric,
    roundtrip_semilattice,
    spec_from_document,
    validate_spec,
)

SPECIAL = ("symmetric", "lambda-homomorphic", "lambda-anti-homomorphic")


@pytest.fixture(scope="module")
def s3_braces(s3):
    return enumerate_gamma_functions(s3).braces


@pytest.fixture(scope="module")
def corpus(trivial_brace, brace2, s3_braces):
    out = [trivial_brace, brace2] + list(s3_braces)
    for n in (1, 2, 3):
        for t in inverse_semigroup_tables(n):
            out.extend(oracle_enumerate_braces(t).braces)
    for t in inverse_semigroup_tables(4):
        out.extend(enumerate_gamma_functions(t).braces)
    return out


def chain_over(top):
    """Y = {hi >= lo}; top brace over hi, trivial singleton brace over lo, constant hom."""
    Y = CayleyTable(("hi", "lo"), ((0, 1), (1, 1)))
    point = check_weak_brace(magma([[0]], ["z"]), magma([[0]], ["z"]))
    return SemilatticeSpec(Y, {"hi": top, "lo": point}, {("hi", "lo"): (0,) * top.n})


class TestExamples:
    def test_trivial_brace(self, trivial_brace):
        flags = classify(trivial_brace)
        assert all(flags.values())

    def test_second_brace(self, brace2):
        flags = classify(brace2)
        assert not flags["dual"]
        for name in SPECIAL:
            assert not flags[name]
        assert brace2.names[flags["dual"].witness[0]] == "a"

    def test_witnesses_fail_the_identities(self, brace2):
        b = brace2
        x, y, z = is_symmetric(b).witness
        assert b.plus(x, b.times(y, z)) != b.times(b.times(b.plus(x, y), b.minv(x)), b.plus(x, z))
        x, y, z = is_lambda_homomorphic(b).witness
        assert b.lam(x, b.lam(y, z)) != b.lam(b.plus(x, y), z)
        x, y, z = is_lambda_anti_homomorphic(b).witness
        assert b.lam(y, b.lam(x, z)) != b.lam(b.plus(x, y), z)

    def test_group_with_add_equal_mul(self, s3):
        b = check_weak_brace(s3, s3)
        assert is_symmetric(b) and is_lambda_homomorphic(b) and is_lambda_anti_homomorphic(b)

    def test_singleton(self):
        b = check_weak_brace(magma([[0]]), magma([[0]]))
        assert all(classify(b).values())

    def test_trivial_brace_on_commutative_corpus(self):
        for n in (1, 2, 3):
            for t in inverse_semigroup_tables(n):
                b = check_weak_brace(t, t)
                assert is_symmetric(b) and is_lambda_homomorphic(b) and is_lambda_anti_homomorphic(b)

    def test_s3_has_every_combination_seen(self, s3_braces):
        seen = {tuple(bool(v) for v in classify(b).values()) for b in s3_braces}
        assert (True, True, False, False, False) in seen
        assert (True, True, True, False, True) in seen
        assert (True, True, True, True, True) in seen


class TestCorpus:
    def test_against_oracle(self, corpus):
        for b in corpus:
            a, m = rows(b.add.base), rows(b.mul.base)
            assert bool(is_symmetric(b)) == oracles.symmetric(a, m)
            assert bool(is_lambda_homomorphic(b)) == oracles.lambda_hom(a, m)
            assert bool(is_lambda_anti_homomorphic(b)) == oracles.lambda_anti_hom(a, m)

    def test_symmetric_iff_anti_homomorphic(self, corpus):
        for b in corpus:
            assert bool(is_symmetric(b)) == bool(is_lambda_anti_homomorphic(b))

    def test_special_implies_dual(self, corpus):
        for b in corpus:
            flags = classify(b)
            if any(flags[k] for k in SPECIAL):
                assert flags["dual"]

    def test_round_trip_on_dual(self, corpus):
        for b in corpus:
            if is_dual(b):
                again = roundtrip_semilattice(b)
                assert again.key() == b.key()

    def test_components_are_groups_with_identity_e(self, corpus):
        for b in corpus:
            if not is_dual(b):
                continue
            spec = decompose_semilattice(b)
            for e, comp in spec.components.items():
                i = comp.names.index(e)
                assert all(comp.plus(i, x) == x == comp.times(i, x) for x in range(comp.n))
                assert len(comp.add.idempotents) == 1 and len(comp.mul.idempotents) == 1

    def test_special_composite_iff_special_components(self, corpus, s3_braces):
        cases = [b for b in corpus if is_dual(b)]
        cases += [compose_semilattice(chain_over(b)) for b in s3_braces]
        for b in cases:
            spec = decompose_semilattice(b)
            for name, check in (("symmetric", is_symmetric),
                                ("lambda-homomorphic", is_lambda_homomorphic),
                                ("lambda-anti-homomorphic", is_lambda_anti_homomorphic)):
                assert bool(check(b)) == all(bool(check(c)) for c in spec.components.values()), name


class TestSemilattice:
    def test_reproduces_trivial_brace(self, trivial_brace):
        b = compose_semilattice(spec_from_document(load_semilattice("ex1_semilattice.sl")))
        assert b.names == ("0", "e", "a", "f", "b")
        assert b.add.base.reordered(trivial_brace.names) == trivial_brace.add.base
        assert b.mul.base.reordered(trivial_brace.names) == trivial_brace.mul.base

    def test_decomposes_into_h_classes(self, trivial_brace):
        spec = decompose_semilattice(trivial_brace)
        parts = {e: set(c.names) for e, c in spec.components.items()}
        assert parts == {"0": {"0"}, "e": {"e", "a"}, "f": {"f", "b"}}
        assert spec.geq("e", "0") and not spec.geq("e", "f")

    def test_single_component(self):
        spec = spec_from_document(load_semilattice("sl_single.sl"))
        b = compose_semilattice(spec)
        comp = next(iter(spec.components.values()))
        assert b.key() == comp.key()

    def test_skew_brace_is_one_component(self, s3_braces):
        for b in s3_braces:
            spec = decompose_semilattice(b)
            assert spec.Y.n == 1

    def test_identity_hom_required(self):
        with pytest.raises(SpecInvalid, match=r"condition \(1\)"):
            validate_spec(spec_from_document(load_semilattice("sl_bad_identity.sl")))

    def test_non_dual_rejected(self, brace2):
        with pytest.raises(NotDual) as exc:
            decompose_semilattice(brace2)
        assert brace2.names[exc.value.witness[0]] == "a"

    def test_non_homomorphism_rejected(self, s3_braces):
        top = s3_braces[0]
        spec = chain_over(top)
        Y = CayleyTable(("hi", "lo"), ((0, 1), (1, 1)))
        bad = SemilatticeSpec(Y, {"hi": top, "lo": top}, {("hi", "lo"): (1,) * top.n})
        with pytest.raises(SpecInvalid, match="not a brace homomorphism"):
            validate_spec(bad)
        validate_spec(spec)

    def test_not_a_semilattice(self, trivial_brace):
        Y = CayleyTable(("p", "q"), ((1, 0), (0, 1)))
        with pytest.raises(SpecInvalid):
            validate_spec(SemilatticeSpec(Y, {"p": trivial_brace, "q": trivial_brace}, {}))

    def test_non_skew_component_rejected(self, trivial_brace):
        Y = CayleyTable(("p",), ((0,),))
        with pytest.raises(SpecInvalid):
            validate_spec(SemilatticeSpec(Y, {"p": trivial_brace}, {}))

    def test_transitivity_required(self, s3):
        c2 = magma([[0, 1], [1, 0]], ["u", "v"])
        top = check_weak_brace(s3, s3)
        mid = check_weak_brace(c2, c2)
        low = check_weak_brace(magma([[0]], ["z"]), magma([[0]], ["z"]))
        Y = CayleyTable(("t", "m", "l"), ((0, 1, 2), (1, 1, 2), (2, 2, 2)))
        sign = tuple(0 if sum(p[i] > p[j] for i in range(3) for j in range(i + 1, 3)) % 2 == 0 else 1
                     for p in (tuple(int(c) for c in nm) for nm in s3.names))
        homs = {("t", "m"): sign, ("m", "l"): (0, 0), ("t", "l"): (0,) * 6}
        assert compose_semilattice(SemilatticeSpec(Y, {"t": top, "m": mid, "l": low}, homs)).n == 9
        homs = {("t", "m"): sign, ("m", "l"): (0, 1), ("t", "l"): (0,) * 6}
        with pytest.raises(SpecInvalid, match=r"condition \(2\)"):
            validate_spec(SemilatticeSpec(Y, {"t": top, "m": mid, "l": mid}, homs))

import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import two_state_machine
from ratgroup import (
    NotInvertibleError,
    PrefixCodeError,
    SupportError,
    bracket,
    compose,
    equal,
    fix,
    fp,
    glue,
    identity,
    image_code,
    inverse,
    mover,
    num_restrictions,
    pair,
    prefix_exchange,
    raw,
    restriction,
    small_support_factor,
    swap,
    x0,
)
from ratgroup import codes
from ratgroup.elements import exchange_machine, find_displaced_cone, product
from ratgroup.generators import GeneratorSpec, gen_element
from ratgroup.transducer import Transducer, eval_prefix, words, words_upto
from ratgroup.verify import commutator_sides, identity_on_cone, simplicity_sides


def same(a, b):
    return equal(a.forward, b.forward)


def generated(seed, depth=3):
    spec = GeneratorSpec(seed=seed, depth=depth)
    return gen_element(spec, spec.rng("elements"))


seeds = st.integers(0, 10**6)


class TestIdentity:
    def test_eval(self):
        assert identity()("0110") == "0110"

    def test_compose(self):
        assert same(identity(), compose(identity(), identity()))

    def test_restrictions(self):
        assert num_restrictions(identity().forward) == 1


class TestPrefixExchange:
    def test_x0_table_matches_rules(self):
        e = prefix_exchange({"00": "0", "01": "10", "1": "11"})
        M = e.forward
        assert M.num_states == 3
        for w in words(6):
            expected = {"00": "0", "01": "10"}.get(w[:2]) or "11"
            rest = w[2:] if w[:2] in ("00", "01") else w[1:]
            assert eval_prefix(M, w) == expected + rest
        assert same(e, x0())

    def test_swap(self):
        s = prefix_exchange([("0", "1"), ("1", "0")])
        assert s("0110") == "1110"
        assert image_code(s, ["0"]) == ["1"]

    def test_trivial_table(self):
        assert same(prefix_exchange({"": ""}), identity())

    def test_bad_codes(self):
        with pytest.raises(PrefixCodeError):
            prefix_exchange({"0": "0"})
        with pytest.raises(PrefixCodeError):
            prefix_exchange({"0": "0", "01": "10", "1": "11"})
        with pytest.raises(PrefixCodeError):
            prefix_exchange({"0": "0", "1": "0"})

    def test_backward_is_flipped_table(self):
        e = prefix_exchange({"00": "1", "01": "01", "1": "00"})
        assert equal(e.backward, exchange_machine([("1", "00"), ("01", "01"), ("00", "1")]))


class TestX0:
    def test_rules(self):
        x = x0()
        assert x("00") == "0"
        assert x("01") == "10"
        assert x("1") == "11"

    def test_inverse(self):
        assert same(compose(x0(), inverse(x0())), identity())


class TestFp:
    def test_flips_even_positions(self):
        assert fp(2)("0000") == "0101"

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_rho_power_goes_to_zero(self, p):
        rho = "0" * (p - 1) + "1"
        assert fp(p)(rho * 4) == "0" * (4 * p)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_involution(self, p):
        sq = compose(fp(p), fp(p))
        assert same(sq, identity())
        for w in words_upto(3 * p if p < 5 else 10):
            assert sq(w) == w

    def test_not_prime(self):
        with pytest.raises(ValueError):
            fp(4)


class TestPair:
    def test_restriction_law(self):
        f, g = x0(), fp(2)
        for alpha in words_upto(3):
            assert restriction(pair(f, g).forward, "0" + alpha).machine == restriction(f.forward, alpha).machine
            assert restriction(pair(f, g).forward, "1" + alpha).machine == restriction(g.forward, alpha).machine

    def test_identity(self):
        assert same(pair(identity(), identity()), identity())

    def test_identity_branch(self):
        assert pair(x0(), identity())("100") == "100"

    def test_second_branch_uses_g(self):
        assert pair(identity(), x0())("11") == "111"


class TestFix:
    def test_hilbert_x0(self):
        g = fix(x0())
        assert same(g, pair(x0(), g))

    def test_eval(self):
        assert fix(fp(2))("11001") == "11000"

    def test_identity(self):
        assert same(fix(identity()), identity())

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_fixed_point_law(self, seed):
        f = generated(seed)
        g = fix(f)
        assert same(g, pair(f, g))


class TestCompose:
    def test_fp2_squared(self):
        assert same(compose(fp(2), fp(2)), identity())

    def test_neutral(self):
        assert same(compose(x0(), identity()), x0())
        assert same(compose(identity(), x0()), x0())

    def test_order(self):
        # x0 after swap: 0 -> 1 -> 11, so 0 goes to 11
        assert compose(x0(), swap())("0") == "11"
        assert compose(swap(), x0())("1") == "01"

    @settings(max_examples=30, deadline=None)
    @given(seeds, seeds)
    def test_semantics(self, s1, s2):
        a, b = generated(s1), generated(s2)
        ab = compose(a, b)
        for w in words_upto(8):
            mid = b(w)
            expect = a(mid)
            got = ab(w)
            assert got.startswith(expect) or expect.startswith(got)

    def test_product_states_are_pairs(self):
        P = product(fp(2).forward, fp(3).forward)
        assert P.num_states == 6


class TestInverse:
    def test_fix_x0(self):
        assert same(compose(inverse(fix(x0())), fix(x0())), identity())

    def test_identity(self):
        assert inverse(identity()) is not None
        assert same(inverse(identity()), identity())

    def test_raw_without_inverse(self):
        with pytest.raises(NotInvertibleError):
            inverse(raw(two_state_machine()))

    def test_raw_with_inverse(self):
        e = raw(x0().forward, x0().backward)
        inv = inverse(e)
        assert inv.op == "inv"
        assert inverse(inv) is e
        assert same(compose(e, inv), identity())

    def test_structural_rewrites(self):
        f, g = x0(), fp(3)
        assert inverse(pair(f, g)).op == "pair"
        assert str(inverse(pair(f, g))) == "pair(pex(0->00, 10->01, 11->1), fp(3))"
        assert str(inverse(compose(f, swap()))) == "comp(pex(1->0, 0->1), pex(0->00, 10->01, 11->1))"
        assert str(inverse(fix(f))) == "fix(pex(0->00, 10->01, 11->1))"

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_group_inverse(self, seed):
        a = generated(seed)
        assert same(compose(a, inverse(a)), identity())
        assert same(compose(inverse(a), a), identity())


class TestGlue:
    def test_pair_by_agreement(self):
        f, g = x0(), fp(3)
        h = glue([("0", pair(f, swap())), ("1", pair(x0(), g))])
        assert same(h, pair(f, g))

    def test_swap(self):
        assert same(glue([("0", swap()), ("1", inverse(swap()))]), swap())

    def test_single_piece(self):
        assert same(glue([("", x0())]), x0())

    def test_incomplete_code(self):
        with pytest.raises(PrefixCodeError):
            glue([("0", x0())])

    def test_overlap_warns(self):
        with pytest.warns(UserWarning):
            h = glue([("0", identity()), ("1", swap())])
        assert h.backward is None

    def test_inverse_is_glued(self):
        h = glue([("0", pair(x0(), swap())), ("1", pair(fp(2), x0()))])
        assert h.backward is not None
        assert same(compose(h, inverse(h)), identity())

    def test_agrees_on_cones(self):
        pieces = [("00", x0()), ("01", swap()), ("1", identity())]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            h = glue(pieces)
        for a, g in pieces:
            for w in words_upto(5):
                x, y = h(a + w), g(a + w)
                assert x.startswith(y) or y.startswith(x)


class TestMover:
    def _check(self, E1, E2):
        g = mover(E1, E2)
        assert codes.subset(image_code(g, E1), E2)
        return g

    def test_into_smaller_cone(self):
        g = self._check(["0"], ["01"])
        for w in words(4):
            assert g("0" + w).startswith("01")

    def test_same_set(self):
        self._check(["0"], ["0"])

    def test_three_cones(self):
        g = self._check(["00", "01", "10"], ["11"])
        targets = sorted(image_code(g, [e])[0] for e in ["00", "01", "10"])
        assert len(targets) == 3
        assert all(t.startswith("11") for t in targets)

    @pytest.mark.parametrize("E1, E2", [([], ["0"]), (["0"], []), (["0", "1"], ["0"]), ([""], ["1"])])
    def test_improper(self, E1, E2):
        with pytest.raises(PrefixCodeError):
            mover(E1, E2)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.text("01", min_size=1, max_size=3), min_size=1, max_size=3),
           st.lists(st.text("01", min_size=1, max_size=3), min_size=1, max_size=3))
    def test_random_sets(self, E1, E2):
        E1, E2 = codes.normalize(E1), codes.normalize(E2)
        if not (codes.is_proper(E1) and codes.is_proper(E2)):
            return
        self._check(E1, E2)


class TestSmallSupport:
    def test_swap(self):
        g, gf = small_support_factor(swap(), ["0"])
        assert same(g, swap())
        assert same(gf, identity())

    def test_identity_fails(self):
        with pytest.raises(SupportError):
            small_support_factor(identity(), ["0"])

    def test_require_proper(self):
        with pytest.raises(SupportError):
            small_support_factor(swap(), ["0"], require_proper=True)

    def test_exchange(self):
        f = prefix_exchange({"00": "10", "10": "00", "01": "01", "11": "11"})
        g, gf = small_support_factor(f, ["00"], require_proper=True)
        for w in words(6):
            if w[:2] not in ("00", "10"):
                assert g(w) == w
        assert same(compose(inverse(g), gf), f)
        assert identity_on_cone(gf.forward, "00", 10) is None

    @settings(max_examples=20, deadline=None)
    @given(seeds)
    def test_factorization(self, seed):
        f = generated(seed)
        E = find_displaced_cone(f, 4)
        if E is None:
            return
        g, gf = small_support_factor(f, E)
        assert same(compose(inverse(g), gf), f)
        assert identity_on_cone(gf.forward, E[0], 10) is None


class TestImage:
    def test_x0(self):
        assert image_code(x0(), ["0"]) == ["0", "10"]
        assert image_code(x0(), ["1"]) == ["11"]

    def test_needs_inverse(self):
        with pytest.raises(NotInvertibleError):
            image_code(raw(Transducer([(0, 0)], [("0", "1")])), ["0"])


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_commutator_identity(seed):
    f, rhs = commutator_sides(generated(seed))
    assert same(f, rhs)


@settings(max_examples=15, deadline=None)
@given(seeds, seeds)
def test_simplicity_step(s1, s2):
    lhs, rhs = simplicity_sides(generated(s1), generated(s2))
    assert same(lhs, rhs)


def test_bracket_convention():
    # [a, b] = a b a^-1 b^-1 with composition applied right to left
    a, b = x0(), swap()
    expected = compose(compose(compose(a, b), inverse(a)), inverse(b))
    assert same(bracket(a, b), expected)
    assert not same(bracket(a, b), identity())

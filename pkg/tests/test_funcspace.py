import itertools
import random

import pytest

from tritrade import funcspace
from tritrade.errors import BadBaseWord, NotAUnitrade
from tritrade.funcspace import (
    BoolFn,
    LineSumKind,
    TernFn,
    bool_from_unitrade,
    degree,
    gf2_basis_fn,
    gf3_basis_fn,
    gf3_rank,
    inner3,
    line_sums,
    mobius,
    parity_counter,
    tern_from_trade,
    u_from_bool,
)
from tritrade.trade import TradeSet, bipartition, is_unitrade


class TestUFromBool:
    def test_zero(self):
        assert u_from_bool(BoolFn(2, 0)).mask == 0

    def test_n1_identity_map(self):
        f = BoolFn.from_text("01")  # f(x) = x
        assert sorted(u_from_bool(f).words()) == [(1,), (2,)]

    def test_parity_plus_one_n3_has_size_16(self):
        f = parity_counter(3).xor(BoolFn(3, (1 << 8) - 1))
        assert u_from_bool(f).cardinality == 16

    def test_restriction_returns_f(self):
        rng = random.Random(2)
        for _ in range(50):
            f = BoolFn(3, rng.getrandbits(8))
            U = u_from_bool(f)
            for w in itertools.product((0, 1), repeat=3):
                assert (int(f(w) == 1)) == (1 if _cell3(w) in U else 0)

    def test_always_unitrade(self):
        rng = random.Random(3)
        for _ in range(100):
            f = BoolFn(4, rng.getrandbits(16))
            assert is_unitrade(u_from_bool(f))


def _cell3(word):
    from tritrade.cube import cell_of_word

    return cell_of_word(word, 3)


class TestBoolFromUnitrade:
    def test_empty(self):
        assert bool_from_unitrade(TradeSet(2, 3, 0)).bits == 0

    def test_n1_pair(self):
        U = TradeSet.from_words(1, 3, [(1,), (2,)])
        assert bool_from_unitrade(U).to_text() == "01"

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_roundtrip_exhaustive(self, n):
        for bits in range(1 << (1 << n)):
            f = BoolFn(n, bits)
            assert bool_from_unitrade(u_from_bool(f)) == f

    def test_roundtrip_random_n45(self):
        rng = random.Random(9)
        for n in (4, 5):
            for _ in range(20):
                f = BoolFn(n, rng.getrandbits(1 << n))
                assert bool_from_unitrade(u_from_bool(f)) == f

    def test_rejects_non_unitrade(self):
        with pytest.raises(NotAUnitrade):
            bool_from_unitrade(TradeSet.from_words(1, 3, [(0,)]))


class TestMobius:
    def test_zero(self):
        assert mobius(BoolFn(2, 0)).bits == 0

    def test_or_anf(self):
        f = BoolFn.from_text("0111")  # OR at cells 00,01,10,11
        g = mobius(f)
        assert g.to_text() == "0111"  # x2 xor x1 xor x1x2

    def test_involution_exhaustive_n3(self):
        for bits in range(256):
            f = BoolFn(3, bits)
            assert mobius(mobius(f)) == f

    def test_unitrade_on_top_subcube_is_mobius(self):
        # U[f] restricted to {0,2}^n gives the ANF coefficients
        rng = random.Random(4)
        for _ in range(30):
            f = BoolFn(3, rng.getrandbits(8))
            U = u_from_bool(f)
            g = mobius(f)
            for w2 in itertools.product((0, 1), repeat=3):
                top = tuple(2 * d for d in w2)
                assert (g(w2) == 1) == (_cell3(top) in U)


class TestDegree:
    def test_constant_one(self):
        assert degree(BoolFn(2, 0b1111)) == 0

    def test_product(self):
        f = BoolFn.from_callable(2, lambda w: w[0] & w[1])
        assert degree(f) == 2

    def test_parity_linear(self):
        for n in (2, 3, 4):
            assert degree(parity_counter(n)) == 1

    def test_zero_sentinel(self):
        assert degree(BoolFn(3, 0)) == float("-inf")

    def test_even_ones_in_faces_iff_degree_bound(self):
        # deg f <= m-1 iff every face of dimension >= m has even ones
        from tritrade.construct import face_one_counts

        for bits in range(256):
            f = BoolFn(3, bits)
            d = degree(f)
            for m in range(1, 4):
                even = all(
                    ones % 2 == 0
                    for dim, ones in face_one_counts(f)
                    if dim >= m
                )
                assert even == (d <= m - 1)


class TestGf2Basis:
    def test_n1_worked_table(self):
        assert gf2_basis_fn((0,)).to_text() == "-0+"

    def test_support_size_and_trace(self):
        for x in itertools.product((0, 1), repeat=3):
            b = gf2_basis_fn(x)
            assert b.cardinality == 8
            trace = [w for w in b.support().words() if all(d < 2 for d in w)]
            assert trace == [x]

    def test_rejects_maximal_digit(self):
        with pytest.raises(BadBaseWord):
            gf2_basis_fn((0, 2))

    def test_line_sums_vanish(self):
        for x in itertools.product((0, 1), repeat=2):
            assert LineSumKind.INVALID not in line_sums(gf2_basis_fn(x))

    def test_independent_over_gf3(self):
        rows = [gf2_basis_fn(x).values for x in itertools.product((0, 1), repeat=2)]
        assert gf3_rank(rows) == 4


class TestGf3Basis:
    def test_constant(self):
        assert gf3_basis_fn((0, 0)).values == (1,) * 9

    def test_identity_n1(self):
        assert gf3_basis_fn((1,)).values == (0, 1, -1)

    def test_in_gf3_space(self):
        for a in itertools.product((0, 1), repeat=3):
            assert funcspace.in_gf3_space(gf3_basis_fn(a))

    def test_spans_line_sum_zero_n2(self):
        rows = [gf3_basis_fn(a).values for a in itertools.product((0, 1), repeat=2)]
        assert gf3_rank(rows) == 4


class TestInner3:
    def test_zero(self):
        z = TernFn.zero(2)
        assert inner3(z, gf3_basis_fn((1, 0))) == 0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_orthogonality(self, n):
        ones = (1,) * n
        for a in itertools.product((0, 1), repeat=n):
            for b in itertools.product((0, 1), repeat=n):
                v = inner3(gf3_basis_fn(a), gf3_basis_fn(b))
                if a == b == ones:
                    assert v % 3 == (2 ** n) % 3
                else:
                    assert v == 0

    def test_self_inner_is_cardinality_mod3(self, catalog3):
        for B in catalog3[1:50]:
            f = tern_from_trade(B)
            assert inner3(f, f) % 3 == B.cardinality % 3

    def test_self_inner_of_combinations(self):
        # <f,f> is 0 or 2^n mod 3 for random GF(3) combinations of the basis
        rng = random.Random(8)
        n = 2
        basis = [gf3_basis_fn(a) for a in itertools.product((0, 1), repeat=n)]
        for _ in range(100):
            acc = [0] * 9
            for b in basis:
                c = rng.randrange(3)
                acc = [(x + c * y) % 3 for x, y in zip(acc, b.values)]
            f = TernFn(n, tuple(x - 3 if x == 2 else x for x in acc))
            assert inner3(f, f) % 3 in {0, (2 ** n) % 3}


class TestLineSums:
    def test_zero_function(self):
        kinds = line_sums(TernFn.zero(2))
        assert set(kinds) == {LineSumKind.ALL_ZERO}

    def test_signed_triple(self):
        assert line_sums(TernFn(1, (1, -1, 0))) == (LineSumKind.SIGNED_TRIPLE,)

    def test_invalid(self):
        assert line_sums(TernFn(1, (1, 1, -1))) == (LineSumKind.INVALID,)

    def test_members_have_unitrade_support_and_coloring(self):
        from tritrade.enumeration import enumerate_functions

        for f in enumerate_functions(2):
            S = f.support()
            assert is_unitrade(S)
            B = bipartition(S)
            assert B is not None
            # sign classes are exactly the two legs
            pos = sum(1 << c for c, v in enumerate(f.values) if v > 0)
            assert pos in (B.part0, B.part1)


class TestSupportBounds:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_nonzero_support_at_least_2_to_n(self, n):
        from tritrade.enumeration import enumerate_functions

        for f in enumerate_functions(n):
            if any(f.values):
                assert f.cardinality >= 2 ** n

    @pytest.mark.parametrize("n", [2, 3])
    def test_minimal_support_is_boolean_cube(self, n):
        # cardinality exactly 2^n forces a product of per-coordinate 2-sets
        # (so the induced graph is the boolean n-cube)
        import itertools as it

        from tritrade.enumeration import enumerate_functions

        for f in enumerate_functions(n):
            if f.cardinality != 2 ** n:
                continue
            words = f.support().words()
            projections = [sorted({w[i] for w in words}) for i in range(n)]
            assert all(len(p) == 2 for p in projections)
            assert sorted(words) == sorted(it.product(*projections))


def test_text_roundtrips():
    f = TernFn(2, (1, -1, 0, 0, 0, 0, -1, 1, 0))
    assert TernFn.from_text(f.to_text()) == f
    g = BoolFn(3, 0b10110001)
    assert BoolFn.from_text(g.to_text()) == g

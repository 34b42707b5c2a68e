import itertools
import random

import pytest

from tritrade.errors import EmptyCatalog, NotAUnitrade, OutOfRange
from tritrade.funcspace import BoolFn, u_from_bool
from tritrade.trade import (
    BipartiteTrade,
    TradeSet,
    bipartition,
    connectivity_and_structure,
    half_cardinality_stats,
    half_cardinality_stats_from_spectrum,
    is_connected,
    is_unitrade,
    mod3_admissible,
    small_bitrade_admissible,
    unitrade_alpha_admissible,
    xor_of_two_bitrades,
)


class TestIsUnitrade:
    def test_empty(self):
        assert is_unitrade(TradeSet(2, 3, 0))

    def test_pair_on_line(self):
        assert is_unitrade(TradeSet.from_words(1, 3, [(0,), (1,)]))

    def test_single_point_fails(self):
        assert not is_unitrade(TradeSet.from_words(1, 3, [(0,)]))

    def test_incidence_cached(self):
        S = TradeSet.from_words(2, 3, [(0, 0), (0, 1), (1, 0), (1, 1)])
        assert S.line_incidence().count(2) == 4


class TestBipartition:
    def test_minimal_parts_are_weight_classes(self):
        from tritrade.monomial import monomial_cube

        B = bipartition(monomial_cube((0, 0, 0)))
        assert B is not None
        even = [w for w in B.base.words() if sum(w) % 2 == 0]
        part0_words = sorted(
            w for w in B.base.words()
            if (B.part0 >> _cell3(w)) & 1
        )
        assert part0_words in (sorted(even), sorted(set(B.base.words()) - set(even)))

    def test_parity_unitrade_not_bipartite(self):
        from tritrade.funcspace import parity_counter

        U = u_from_bool(parity_counter(3))
        assert U.cardinality == 16
        assert bipartition(U) is None

    def test_maximal_n2_split(self):
        from tritrade.construct import maximal_bitrade

        B = maximal_bitrade(2)
        assert (B.half0, B.half1) == (3, 3)
        part0 = {w for w in B.base.words() if (B.part0 >> _cell3(w)) & 1}
        assert part0 == {w for w in B.base.words() if sum(w) % 3 == 1}

    def test_requires_unitrade(self):
        with pytest.raises(NotAUnitrade):
            bipartition(TradeSet.from_words(1, 3, [(0,)]))

    def test_part0_tiebreak_smallest_cell(self, catalog3):
        for B in catalog3[1:100]:
            low = (B.base.mask & -B.base.mask).bit_length() - 1
            assert (B.part0 >> low) & 1


def _cell3(word):
    from tritrade.cube import cell_of_word

    return cell_of_word(word, 3)


class TestStructure:
    def test_nonempty_unitrades_intersect_n2(self):
        us = [u_from_bool(BoolFn(2, b)) for b in range(1, 16)]
        for S, T in itertools.combinations(us, 2):
            assert connectivity_and_structure(S, T).intersects

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_no_proper_containment_exhaustive(self, n):
        masks = [u_from_bool(BoolFn(n, b)).mask for b in range(1, 1 << (1 << n))]
        for a in masks:
            for b in masks:
                assert not (a | b == b and a != b)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_connected(self, n):
        for b in range(1, 1 << (1 << n)):
            assert is_connected(u_from_bool(BoolFn(n, b)))

    def test_unique_split_for_ternary(self, catalog3):
        # connectivity makes the 2-coloring unique up to swap: recoloring
        # from any start cell gives the same parts
        rng = random.Random(0)
        for B in rng.sample(catalog3[1:], 30):
            parts = {B.part0, B.part1}
            again = bipartition(B.base)
            assert {again.part0, again.part1} == parts


class TestMod3:
    def test_size_pair_14_16(self):
        assert mod3_admissible(3, 14)
        assert not mod3_admissible(3, 16)

    def test_zero(self):
        for n in range(6):
            assert mod3_admissible(n, 0)

    def test_every_catalog_cardinality(self, catalog3):
        for B in catalog3:
            assert mod3_admissible(3, B.cardinality)


class TestAlphaAdmissible:
    def test_examples(self):
        assert unitrade_alpha_admissible(4, 24)   # 2 - 2^-1
        assert unitrade_alpha_admissible(4, 36)   # 2 + 2^-2
        assert unitrade_alpha_admissible(3, 18)   # 2.5 - 2^-2
        assert not unitrade_alpha_admissible(3, 17)

    def test_empty_and_odd(self):
        assert unitrade_alpha_admissible(3, 0)
        assert not unitrade_alpha_admissible(3, 9)

    def test_above_threshold(self):
        assert unitrade_alpha_admissible(3, 20)
        assert unitrade_alpha_admissible(3, 22)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_full_catalog(self, n):
        for bits in range(1 << (1 << n)):
            U = u_from_bool(BoolFn(n, bits))
            assert unitrade_alpha_admissible(n, U.cardinality), U.cardinality


class TestSmallBitradeAdmissible:
    def test_examples(self):
        assert small_bitrade_admissible(5, 68)
        assert not small_bitrade_admissible(5, 66)
        assert small_bitrade_admissible(5, 80)

    def test_window_guard(self):
        with pytest.raises(OutOfRange):
            small_bitrade_admissible(5, 64)
        with pytest.raises(OutOfRange):
            small_bitrade_admissible(5, 82)

    def test_n4_window(self):
        admissible = {
            c for c in range(34, 41, 2) if small_bitrade_admissible(4, c)
        }
        assert admissible == {34, 36, 40}


class TestXorOfTwoBitrades:
    def test_bitrade_pairs_with_empty(self, catalog3):
        B = catalog3[5]
        pair = xor_of_two_bitrades(B.base, catalog3)
        assert pair is not None
        m1, m2 = pair[0].base.mask, pair[1].base.mask
        assert m1 ^ m2 == B.base.mask

    def test_n1_example(self):
        cat = [
            BipartiteTrade(TradeSet(1, 3, 0), 0, 0),
            bipartition(TradeSet.from_words(1, 3, [(0,), (1,)])),
            bipartition(TradeSet.from_words(1, 3, [(0,), (2,)])),
            bipartition(TradeSet.from_words(1, 3, [(1,), (2,)])),
        ]
        U = TradeSet.from_words(1, 3, [(0,), (1,)])
        pair = xor_of_two_bitrades(U, cat)
        assert pair is not None

    def test_exhaustive_n3_report(self, catalog3):
        # every nonempty unitrade at n=3 decomposes over the 202-set catalog
        decomposable = 0
        for bits in range(1, 256):
            U = u_from_bool(BoolFn(3, bits))
            if xor_of_two_bitrades(U, catalog3) is not None:
                decomposable += 1
        assert decomposable == 255


class TestHalfStats:
    def test_single_entry(self):
        from tritrade.monomial import monomial_cube

        B = bipartition(monomial_cube((0, 0)))
        mean, std = half_cardinality_stats([B])
        assert (mean, std) == (2.0, 0.0)

    def test_n2(self, catalog2):
        mean, std = half_cardinality_stats([B for B in catalog2 if B.cardinality])
        assert round(mean, 3) == 2.4
        assert round(std, 3) == 0.490

    def test_n3(self, catalog3):
        mean, std = half_cardinality_stats([B for B in catalog3 if B.cardinality])
        assert round(mean, 3) == 6.448
        assert round(std, 3) == 1.188

    def test_empty_catalog(self):
        with pytest.raises(EmptyCatalog):
            half_cardinality_stats([])

    def test_spectrum_variant_matches(self, catalog3, spectra):
        mean_c, std_c = half_cardinality_stats([B for B in catalog3 if B.cardinality])
        mean_s, std_s = half_cardinality_stats_from_spectrum(spectra[3].entries)
        assert abs(mean_c - mean_s) < 1e-12
        assert abs(std_c - std_s) < 1e-12


def test_tradeset_serialization():
    S = TradeSet.from_words(2, 3, [(0, 1), (2, 2)])
    assert TradeSet.from_json(S.to_json()) == S
    assert TradeSet.from_text(2, 3, S.to_text()) == S

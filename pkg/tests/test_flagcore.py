from itertools import product

import pytest
from hypothesis import given, strategies as st

from flagpoincare.flagcore import (
    FlagShape, all_shapes, check_index_tuple, enumerate_index_tuples,
    f_factorized, f_polynomial, fibration_split, flag_poincare, n_statistic,
    subset_n_statistic, transpose_subset,
)
from flagpoincare.polyq import omega, q_binomial, q_multinomial

from conftest import P

fs = frozenset


def _tuples(k, profile):
    return list(enumerate_index_tuples(k, profile))


class TestFlagShape:
    def test_parse_and_str(self):
        s = FlagShape.parse("1, 2,1")
        assert s.parts == (1, 2, 1) and s.k == 4 and s.l == 2
        assert str(s) == "Fl(1,2,1;4)"
        assert s.partial_sums == (1, 3)

    def test_dim(self):
        assert FlagShape((1, 1)).dim == 1
        assert FlagShape((1, 1, 1)).dim == 3
        assert FlagShape((2, 2)).dim == 4

    @pytest.mark.parametrize("parts", [(3,), (1, 0), (2, -1, 1)])
    def test_rejects(self, parts):
        with pytest.raises(ValueError):
            FlagShape(parts)

    def test_all_shapes_counts(self):
        # compositions of k with at least two parts: 2^(k-1) - 1
        for k in range(2, 7):
            assert len(list(all_shapes(k))) == 2 ** (k - 1) - 1


class TestIndexTuples:
    def test_counts(self):
        assert len(_tuples(3, [1, 1, 1])) == 6
        assert _tuples(2, [0, 2, 0]) == [(fs(), fs({1, 2}), fs())]
        assert len(_tuples(4, [1, 2, 1])) == 12

    def test_order_is_fixed(self):
        assert _tuples(3, [1, 2]) == [
            (fs({1}), fs({2, 3})), (fs({2}), fs({1, 3})), (fs({3}), fs({1, 2})),
        ]

    def test_profile_mismatch(self):
        with pytest.raises(ValueError):
            _tuples(3, [1, 1])

    def test_negative_entry_is_empty(self):
        assert _tuples(2, [2, -1, 1]) == []

    def test_each_is_a_partition(self):
        for t in enumerate_index_tuples(5, [2, 1, 2]):
            check_index_tuple(t, 5, [2, 1, 2])
        assert len(set(enumerate_index_tuples(5, [2, 1, 2]))) == 30

    def test_check_rejects_overlap(self):
        with pytest.raises(ValueError):
            check_index_tuple([{1, 2}, {2}])


class TestNStatistic:
    @pytest.mark.parametrize("blocks, n", [
        (({1}, {2}, {3}), 3),
        (({3}, {2}, {1}), 0),
        (({1, 2}, {3}), 2),
    ])
    def test_values(self, blocks, n):
        assert n_statistic(blocks) == n

    @pytest.mark.parametrize("k, profile, expected", [
        (3, [1, 1, 1], P(1, 2, 2, 1)),
        (2, [1, 1], P(1, 1)),
        (3, [2, 1], P(1, 1, 1)),
    ])
    def test_f_polynomial(self, k, profile, expected):
        assert f_polynomial(k, profile) == expected

    def test_two_block_f_is_binomial(self):
        for n in range(1, 8):
            for j in range(n + 1):
                assert f_polynomial(n, [j, n - j]) == q_binomial(n, j)

    def test_transpose_lemma(self):
        # N of (S, complement) is omega(transpose(S)) - r(r+1)/2
        for n in range(1, 9):
            for r in range(n + 1):
                for s, _ in enumerate_index_tuples(n, [r, n - r]):
                    assert subset_n_statistic(s, n) == omega(transpose_subset(s, n)) - r * (r + 1) // 2


class TestFlagPoincare:
    @pytest.mark.parametrize("parts, expected", [
        ((1, 1), P(1, 1)),
        ((1, 2), P(1, 1, 1)),
        ((1, 1, 1), P(1, 2, 2, 1)),
    ])
    def test_values(self, parts, expected):
        assert flag_poincare(FlagShape(parts)) == expected

    def test_three_way_small(self):
        for k in range(2, 6):
            for shape in all_shapes(k):
                a = f_polynomial(k, shape.parts)
                assert a == f_factorized(shape.parts) == q_multinomial(k, shape.parts)

    def test_degree_is_dimension(self):
        for shape in all_shapes(5):
            assert flag_poincare(shape).degree == shape.dim


class TestTranspose:
    def test_value(self):
        assert transpose_subset({1, 3}, 4) == fs({2, 4})

    @given(st.sets(st.integers(1, 9)))
    def test_involution(self, s):
        assert transpose_subset(transpose_subset(s, 9), 9) == fs(s)

    def test_complements_n_statistic(self):
        # transposing reflects N inside [0, j(n-j)]
        for n, j in product(range(1, 7), range(7)):
            if j > n:
                continue
            for s, _ in enumerate_index_tuples(n, [j, n - j]):
                assert subset_n_statistic(transpose_subset(s, n), n) == j * (n - j) - subset_n_statistic(s, n)


class TestFibrationSplit:
    def test_example(self):
        coarse, fine = fibration_split((fs({1}), fs({3}), fs({2})), [2, 1])
        assert coarse == (fs({1, 3}), fs({2}))
        assert fine[0] == (fs({1}), fs({2}))
        assert n_statistic(coarse) + sum(n_statistic(f) for f in fine) == 2 == 1 + 1

    def test_single_group(self):
        t = (fs({2}), fs({1, 3}))
        coarse, fine = fibration_split(t, [2])
        assert n_statistic(coarse) == 0
        assert n_statistic(fine[0]) == n_statistic(t)

    def test_grouping_mismatch(self):
        with pytest.raises(ValueError):
            fibration_split((fs({1}), fs({2})), [1, 2])

    @given(st.sampled_from([(1, 2, 1, 1), (2, 1, 2), (1, 1, 1, 1, 1)]), st.data())
    def test_additive(self, profile, data):
        tuples = _tuples(sum(profile), profile)
        t = data.draw(st.sampled_from(tuples))
        cuts = data.draw(st.sets(st.integers(1, len(profile) - 1)))
        bounds = [0, *sorted(cuts), len(profile)]
        grouping = [b - a for a, b in zip(bounds, bounds[1:])]
        coarse, fine = fibration_split(t, grouping)
        assert n_statistic(t) == n_statistic(coarse) + sum(n_statistic(f) for f in fine)

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from flagpoincare.torusweights import (
    NEGATIVE, POSITIVE, ZERO, ZERO_WEIGHT, GenericityError, NonEffectiveError,
    Weight, WeightMultiset, block_rep, debug_weights, numeric_sign,
    tangent_weights, weight_sign,
)

a = Weight.alpha
d = Weight.difference

# dominant coefficients are +-1 or +-2 and the rest is small, as for every
# weight the engine builds
small = st.dictionaries(st.integers(1, 6), st.sampled_from([-1, 1, Fraction(1, 2), Fraction(-1, 2)]),
                        max_size=3)
dominated = st.tuples(small, st.integers(7, 9), st.sampled_from([1, -1, 2, -2])).map(
    lambda x: Weight({**x[0], x[1]: x[2]}))


class TestWeight:
    def test_canonical_form(self):
        w = Weight({3: 1, 1: -1, 2: 0})
        assert w.terms == ((1, -1), (3, 1))
        assert w == a(3) - a(1) == d(3, 1)
        assert hash(w) == hash(d(3, 1))
        assert d(2, 2) == ZERO_WEIGHT

    def test_fractions_normalize(self):
        w = (a(1) + a(3)) / 2 * 2
        assert w == a(1) + a(3)
        assert all(isinstance(c, int) for _, c in w.terms)

    def test_swap(self):
        assert d(3, 1).swap(1, 3) == d(1, 3)
        assert d(4, 2).swap(1, 3) == d(4, 2)

    def test_ratio(self):
        assert d(3, 1).ratio(d(1, 3)) == -1
        assert (2 * a(2) - 2 * a(1)).ratio(d(2, 1)) == 2
        assert (a(1) + a(2)).ratio(d(2, 1)) is None
        with pytest.raises(ZeroDivisionError):
            a(1).ratio(ZERO_WEIGHT)

    def test_str(self):
        assert str(d(2, 1)) == "a2 - a1"
        assert str(2 * a(3) - a(1)) == "2*a3 - a1"
        assert str(ZERO_WEIGHT) == "0"


class TestSign:
    @pytest.mark.parametrize("w, sign", [
        (d(2, 1), POSITIVE),
        (a(1) + a(2) - a(3), NEGATIVE),
        ((a(2) + a(3)) / 2 - a(1), POSITIVE),
        (a(3) - a(2) - a(1), POSITIVE),
        (ZERO_WEIGHT, ZERO),
    ])
    def test_examples(self, w, sign):
        assert weight_sign(w) == sign == w.sign()
        for base in (3, 4, 5):
            assert numeric_sign(w, base) == sign

    def test_numeric_base_4(self):
        # 64 - 16 - 4 > 0
        assert numeric_sign(a(3) - a(2) - a(1), 4) == POSITIVE

    def test_sum_of_two_positive_lines(self):
        # a_b - a_a + a_d - a_c with b the largest index
        assert weight_sign(a(5) - a(1) + a(4) - a(2)) == POSITIVE

    def test_small_base_rejected(self):
        with pytest.raises(ValueError):
            numeric_sign(a(1), 2)

    @given(dominated)
    def test_rule_matches_numeric(self, w):
        for base in (3, 4, 5):
            assert numeric_sign(w, base) == weight_sign(w)

    def test_debug_mode_checks_and_collects(self):
        with debug_weights() as seen:
            w = d(3, 1)
        assert w in seen
        with pytest.raises(GenericityError):
            with debug_weights():
                a(1) * 5 - a(2)  # coefficient too large for base 3
        # outside the block nothing is checked
        a(1) * 5 - a(2)


class TestMultiset:
    def test_add_sub(self):
        w = d(2, 1)
        m = WeightMultiset([w]) + WeightMultiset([w])
        assert m.multiplicity(w) == 2 and m.dimension == 2
        assert (m - m) == WeightMultiset()

    def test_counts(self):
        m = WeightMultiset([d(2, 1), d(1, 2), ZERO_WEIGHT])
        assert (m.positive_count(), m.negative_count(), m.zero_count()) == (1, 1, 1)

    def test_non_effective(self):
        m = WeightMultiset([d(2, 1)]) - WeightMultiset([d(2, 1), d(3, 1)])
        assert not m.is_effective()
        with pytest.raises(NonEffectiveError):
            m.positive_count()

    def test_intersection(self):
        m1 = WeightMultiset([d(2, 1), d(2, 1), d(3, 1)])
        m2 = WeightMultiset([d(2, 1), d(3, 2)])
        assert m1.intersection(m2) == WeightMultiset([d(2, 1)])

    def test_iteration_sorted(self):
        m = WeightMultiset([d(3, 1), d(2, 1), d(2, 1)])
        assert list(m) == sorted([d(3, 1), d(2, 1), d(2, 1)])
        assert len(m) == 3


class TestBlockRep:
    def test_examples(self):
        m = block_rep([{1}, {2}])
        assert m == WeightMultiset([d(2, 1)]) and m.positive_count() == 1
        m = block_rep([{2}, {1, 3}])
        assert m == WeightMultiset([d(1, 2), d(3, 2)]) and m.positive_count() == 1

    def test_overlap(self):
        with pytest.raises(ValueError):
            block_rep([{1, 2}, {2}])

    def test_tangent_examples(self):
        assert tangent_weights([{1}, {2}]) == WeightMultiset([d(2, 1)])
        m = tangent_weights([{1}, {2, 3}])
        assert m == WeightMultiset([d(2, 1), d(3, 1)]) and m.positive_count() == 2
        m = tangent_weights([{2}, {1}, {3}])
        assert m == WeightMultiset([d(1, 2), d(3, 2), d(3, 1)]) and m.positive_count() == 2

    def test_empty_blocks_contribute_nothing(self):
        assert block_rep([set(), {1}, {2}, set()]) == block_rep([{1}, {2}])

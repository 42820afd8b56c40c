import pytest
from hypothesis import given, settings, strategies as st

from flagpoincare.polyq import (
    ONE, T, ZERO, IDENTITIES, IntPolynomial, InexactDivisionError, eval_at_one,
    exact_divide, is_palindromic, omega, q_binomial, q_binomial_by_subsets,
    q_factorial, q_multinomial, q_number, reverse, verify_identity_suite,
    verify_subset_oracle,
)

from conftest import P

polys = st.lists(st.integers(-50, 50), max_size=7).map(IntPolynomial)
monic = st.tuples(st.lists(st.integers(-9, 9), max_size=4), st.sampled_from([1, -1])).map(
    lambda x: IntPolynomial(x[0] + [x[1]]))


class TestIntPolynomial:
    def test_trailing_zeros_stripped(self):
        assert P(1, 2, 0, 0).coeffs == (1, 2)
        assert P(0, 0) == ZERO
        assert ZERO.degree < 0

    def test_immutable(self):
        with pytest.raises(AttributeError):
            P(1).coeffs = (2,)

    def test_arithmetic(self):
        assert P(1, 1) * P(1, 1) == P(1, 2, 1)
        assert P(1, 1) - P(1, 1) == ZERO
        assert P(1, 1) ** 3 == P(1, 3, 3, 1)
        assert T.shift(2) == IntPolynomial.monomial(3)

    def test_compare_with_int(self):
        assert ONE == 1
        assert P(2) == 2

    def test_from_exponents(self):
        assert IntPolynomial.from_exponents([0, 2, 2]) == P(1, 0, 2)
        assert IntPolynomial.from_exponents({3: 1, 0: -1}) == P(-1, 0, 0, 1)

    def test_to_string_lowest_first(self):
        assert P(1, 2, 0, 1).to_string() == "1 + 2t + t^3"
        assert P(1, -1).to_string("q", 2) == "1 - q^2"
        assert P(0, 3).to_string(latex=True) == "3t"
        assert P(1, 0, 1).to_string("q", 2, latex=True) == "1 + q^{4}"
        assert ZERO.to_string() == "0"

    def test_divmod(self):
        q, r = P(1, 2, 1).divmod(P(1, 1))
        assert q == P(1, 1) and r == ZERO

    @given(polys, polys)
    def test_ring_laws(self, a, b):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) * a == a * a + b * a

    @given(polys, monic)
    def test_division_roundtrip(self, a, b):
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree < b.degree


class TestSpecValues:
    @pytest.mark.parametrize("n, expected", [(1, P(1)), (2, P(1, 1)), (4, P(1, 1, 1, 1))])
    def test_q_number(self, n, expected):
        assert q_number(n) == expected

    @pytest.mark.parametrize("n", [0, -1])
    def test_q_number_domain(self, n):
        with pytest.raises(ValueError):
            q_number(n)

    @pytest.mark.parametrize("n, expected", [(0, P(1)), (2, P(1, 1)), (3, P(1, 2, 2, 1))])
    def test_q_factorial(self, n, expected):
        assert q_factorial(n) == expected

    def test_q_binomial(self):
        for n in range(6):
            assert q_binomial(n, 0) == 1
            assert q_binomial(n, n) == 1
        assert q_binomial(4, 2) == P(1, 1, 2, 1, 1)

    @pytest.mark.parametrize("n, j", [(2, 3), (-1, 0), (3, -1)])
    def test_q_binomial_domain(self, n, j):
        with pytest.raises(ValueError):
            q_binomial(n, j)

    def test_subset_oracle_4_2(self):
        # sum of t^(omega(S) - 3) over the six 2-subsets of {1..4}
        assert q_binomial_by_subsets(4, 2) == P(1, 1, 2, 1, 1)

    def test_q_multinomial(self):
        assert q_multinomial(2, [1, 1]) == P(1, 1)
        assert q_multinomial(3, [1, 1, 1]) == q_factorial(3) == P(1, 2, 2, 1)
        assert q_multinomial(3, [0, 2, 1]) == q_binomial(3, 2) == P(1, 1, 1)

    @pytest.mark.parametrize("parts", [[1, 1], [2, -1, 2]])
    def test_q_multinomial_domain(self, parts):
        with pytest.raises(ValueError):
            q_multinomial(3, parts)

    def test_exact_divide(self):
        assert exact_divide(P(1, 2, 1), P(1, 1)) == P(1, 1)
        num = (ONE - IntPolynomial.monomial(3)) * P(1, 1)
        assert exact_divide(num, ONE - IntPolynomial.monomial(2)) == P(1, 1, 1)

    def test_inexact_division_carries_remainder(self):
        with pytest.raises(InexactDivisionError) as info:
            exact_divide(P(1, 1), P(1, 1, 1))
        assert info.value.remainder == P(1, 1)

    def test_reverse_and_eval(self):
        assert reverse(P(1, 2)) == P(2, 1)
        assert reverse(P(1, 1, 1)) == P(1, 1, 1)
        assert eval_at_one(P(1, 2, 2, 1)) == 6
        assert is_palindromic(P(1, 2, 1)) and not is_palindromic(P(1, 2))

    def test_omega(self):
        assert omega({2, 5}) == 7


class TestIdentities:
    @pytest.mark.parametrize("n_max", [2, 8])
    def test_suite_passes(self, n_max):
        results = verify_identity_suite(n_max)
        assert {r.name for r in results} == set(IDENTITIES)
        for r in results:
            assert r.passed, r.counterexample
            assert r.checked > 0

    def test_subset_oracle(self):
        assert verify_subset_oracle(8).passed

    def test_n_max_domain(self):
        with pytest.raises(ValueError):
            verify_identity_suite(1)

    @settings(max_examples=40)
    @given(st.integers(0, 9).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
    def test_binomial_matches_subsets(self, nj):
        n, j = nj
        assert q_binomial(n, j) == q_binomial_by_subsets(n, j)

    @given(st.integers(0, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
    def test_binomial_value_at_one(self, nj):
        from math import comb
        n, j = nj
        assert eval_at_one(q_binomial(n, j)) == comb(n, j)
        assert is_palindromic(q_binomial(n, j))

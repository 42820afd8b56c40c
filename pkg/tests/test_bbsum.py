import pytest

from flagpoincare.bbsum import (
    MATCH, MISMATCH, NO_CLOSED_FORM, closed_form_double, closed_form_single,
    closed_form_split, closed_form_split_derivation, compare,
    grassmannian_reduction_check, poincare_closed_form, poincare_enumeration, tally,
)
from flagpoincare.flagcore import FlagShape, all_shapes
from flagpoincare.modulifixed import UnsupportedDegreeError, expected_dimension
from flagpoincare.polyq import InexactDivisionError, q_multinomial, q_number

from conftest import P

F = lambda *parts: FlagShape(parts)  # noqa: E731


class TestEnumeration:
    def test_zero_degree_is_flag(self):
        assert poincare_enumeration(F(1, 1, 1)) == P(1, 2, 2, 1)
        assert poincare_enumeration(F(1, 2), (0,)) == P(1, 1, 1)

    @pytest.mark.parametrize("shape, degree, expected", [
        (F(1, 1), (1,), P(1)),
        (F(1, 2), (1,), P(1, 1, 1)),
        (F(1, 1), (2,), P(1, 1, 1)),
    ])
    def test_values(self, shape, degree, expected):
        assert poincare_enumeration(shape, degree) == expected

    def test_split_value(self):
        # (1 + q^4) = (1 + t^2); the moduli space has dimension 7
        expected = P(1, 0, 1) * P(1, 1, 1) * P(1, 1, 1, 1)
        got = poincare_enumeration(F(1, 1, 1, 1), (1, 0, 1))
        assert got == expected
        assert got.degree == expected_dimension(F(1, 1, 1, 1), (1, 0, 1)) == 7

    def test_unsupported(self):
        with pytest.raises(UnsupportedDegreeError):
            poincare_enumeration(F(1, 1, 1), (2, 1))

    def test_jobs_do_not_change_result(self):
        a = tally(F(1, 2, 1), (1, 1), jobs=1)
        b = tally(F(1, 2, 1), (1, 1), jobs=3)
        assert a == b


class TestClosedForms:
    @pytest.mark.parametrize("shape, degree, expected", [
        (F(1, 1), (1,), P(1)),
        (F(1, 1), (2,), P(1, 1, 1)),
        (F(1, 1, 1, 1), (1, 0, 1), P(1, 0, 1) * P(1, 1, 1) * P(1, 1, 1, 1)),
    ])
    def test_values(self, shape, degree, expected):
        assert poincare_closed_form(shape, degree) == expected

    def test_adjacent_partial_has_none(self):
        assert poincare_closed_form(F(1, 2, 1), (1, 1)) is None

    def test_split_two_forms_agree(self):
        for k in range(4, 8):
            for shape in all_shapes(k):
                for i in range(shape.l):
                    for j in range(i + 2, shape.l):
                        assert closed_form_split(shape, i, j) == closed_form_split_derivation(shape, i, j)

    def test_divisions_are_exact(self):
        # larger shapes than are enumerated: formulas stay polynomial
        for shape in all_shapes(8):
            for i in range(shape.l):
                closed_form_single(shape, i)
                closed_form_double(shape, i)

    def test_exact_divide_guards_formulas(self):
        from flagpoincare.polyq import exact_divide
        with pytest.raises(InexactDivisionError):
            exact_divide(q_number(3), q_number(2))


class TestCompare:
    def test_match(self):
        rep = compare(F(1, 2), (1,))
        assert rep.agreement == MATCH and rep.difference.is_zero()
        assert rep.poly_enumeration == P(1, 1, 1)
        assert rep.betti == [1, 0, 1, 0, 1]
        assert rep.euler == rep.fixed_point_count == 3
        assert rep.palindromic and rep.euler_consistent and rep.minus_is_reverse

    def test_double_on_grassmannian(self):
        rep = compare(F(2, 2), (2,))
        assert rep.agreement == MATCH
        assert rep.dimension == expected_dimension(F(2, 2), (2,))

    def test_adjacent_complete_reported(self):
        rep = compare(F(1, 1, 1), (1, 1))
        assert rep.palindromic and rep.euler_consistent
        assert rep.poly_enumeration == P(1, 2, 3, 2, 1)
        assert rep.agreement == MISMATCH
        assert rep.difference == P(0, 0, 0, -1)
        assert any("integer reading" in n for n in rep.notes)
        assert any("1 + 2t + 2t^3 + t^4" in n for n in rep.notes)

    def test_adjacent_partial(self):
        rep = compare(F(1, 2, 1), (1, 1))
        assert rep.agreement == NO_CLOSED_FORM and rep.difference is None
        assert rep.palindromic and rep.euler_consistent

    def test_family_split(self):
        rep = compare(F(1, 1), (2,))
        fam = dict(rep.families)
        assert list(fam) == ["I1", "I2", "I3", "I4", "I5"]
        assert sum(p(1) for p in fam.values()) == 3

    @pytest.mark.parametrize("shape", [s for k in range(2, 6) for s in all_shapes(k)], ids=str)
    def test_closed_forms_hold(self, shape):
        l = shape.l
        for i in range(l):
            for degree in ([1 if s == i else 0 for s in range(l)], [2 if s == i else 0 for s in range(l)]):
                assert compare(shape, degree).agreement == MATCH
            for j in range(i + 2, l):
                degree = [1 if s in (i, j) else 0 for s in range(l)]
                assert compare(shape, degree).agreement == MATCH


class TestGrassmannianReduction:
    @pytest.mark.parametrize("shape, i", [(F(1, 1, 1), 0), (F(1, 1), 0), (F(2, 1, 1), 1), (F(1, 2, 2), 1)])
    def test_holds(self, shape, i):
        assert grassmannian_reduction_check(shape, i)

    def test_merged_factor(self):
        assert q_multinomial(3, [2, 1]) == P(1, 1, 1)

"""Tests for the exact identity checkers."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import RATIONAL_POINTS
from facsum.exceptions import DomainError
from facsum.managers import identities, reduction
from facsum.models import AffineFn, SequenceKind, SuiteConfig, SuperRecurrence


class TestBinomialIdentities:
    def test_y_shift_example(self):
        result = identities.check_y_shift(2, 1, 1)
        assert result.lhs == result.rhs == 11
        assert result.passed
        assert result.printed_variant_lhs is None

    @pytest.mark.parametrize("n", range(6))
    @pytest.mark.parametrize("x", RATIONAL_POINTS)
    def test_y_shift_zero_offset(self, n, x):
        assert identities.check_y_shift(n, 0, x).passed

    @pytest.mark.parametrize("k", range(4))
    @pytest.mark.parametrize("x", RATIONAL_POINTS)
    def test_unfolded_base(self, k, x):
        result = identities.check_unfolded_binomial(1, k, x)
        assert result.lhs == result.rhs == x + k + 1

    def test_unfolded_examples(self):
        assert identities.check_unfolded_binomial(2, 0, 1).lhs == 5
        assert identities.check_unfolded_binomial(4, 2, Fraction(3, 2)).passed

    def test_unfolded_rejects_zero(self):
        with pytest.raises(DomainError):
            identities.check_unfolded_binomial(0, 1, 1)

    def test_delta_example(self):
        result = identities.check_delta_relation(2, 1)
        assert result.lhs == 11
        assert result.rhs == 11
        assert result.passed

    @pytest.mark.parametrize("m", range(1, 7))
    def test_delta_base_row(self, m):
        result = identities.check_delta_relation(0, m)
        assert result.lhs == m
        assert result.passed

    def test_delta_rejects_zero(self):
        with pytest.raises(DomainError):
            identities.check_delta_relation(3, 0)


class TestStirlingTouchard:
    @pytest.mark.parametrize("x", RATIONAL_POINTS)
    def test_inverse_pair_example(self, x):
        result = identities.check_stirling_touchard_inverse(2, 1, x)
        assert result.lhs == 1 + 3 * x + x ** 2
        assert result.passed

    def test_printed_index_discrepancy(self):
        result = identities.check_stirling_touchard_inverse(2, 1, 1)
        assert result.passed
        assert result.lhs == 5
        assert result.printed_variant_lhs == 2
        assert result.has_discrepancy
        assert "printed index gives 2, expected 5" in result.note

    def test_printed_variant_can_be_skipped(self):
        result = identities.check_stirling_touchard_inverse(2, 1, 1, printed_variant=False)
        assert result.printed_variant_lhs is None
        assert result.note == ""

    @pytest.mark.parametrize("n", range(6))
    def test_zeroth_column_is_touchard(self, n):
        result = identities.check_stirling_touchard_inverse(n, 0, Fraction(3, 2))
        assert result.passed

    def test_rejects_zero_point(self):
        with pytest.raises(DomainError):
            identities.check_stirling_touchard_inverse(2, 1, 0)

    def test_touchard_from_y(self):
        result = identities.check_touchard_from_y(2, 1, 1)
        assert result.lhs == result.rhs == 5
        assert result.printed_variant_lhs == 2

    def test_touchard_from_y_at_zero(self):
        result = identities.check_touchard_from_y(0, 0, 0)
        assert result.passed
        assert result.printed_variant_lhs is None

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(min_value=0, max_value=7),
        st.integers(min_value=0, max_value=4),
        st.fractions(min_value=-3, max_value=3, max_denominator=5).filter(lambda x: x != 0),
    )
    def test_inverse_pair_holds(self, n, k, x):
        assert identities.check_stirling_touchard_inverse(n, k, x).passed
        assert identities.check_touchard_from_y(n, k, x).passed


class TestComposition:
    def test_example_with_printed_mismatch(self):
        results = identities.check_rstirling_composition(2, 2)
        assert len(results) == 5
        result = results[2]
        assert result.parameters == (("n", "2"), ("k", "2"), ("m", "2"))
        assert result.lhs == result.rhs == 7
        assert result.printed_variant_lhs == 3
        assert result.passed
        assert "printed index gives 3, expected 7" in result.note

    @pytest.mark.parametrize("n", range(6))
    def test_zero_k(self, n):
        assert all(result.passed for result in identities.check_rstirling_composition(n, 0))

    def test_small_case(self):
        result = identities.check_rstirling_composition(1, 1)[1]
        assert result.lhs == result.rhs == 1

    @pytest.mark.parametrize("n", range(7))
    @pytest.mark.parametrize("k", range(4))
    def test_grid(self, n, k):
        results = identities.check_rstirling_composition(n, k, printed_variant=False)
        assert len(results) == n + k + 1
        assert all(result.passed for result in results)
        assert all(result.printed_variant_lhs is None for result in results)

    @pytest.mark.parametrize("n", range(6))
    @pytest.mark.parametrize("k", range(4))
    def test_explicit_formula(self, n, k):
        for i in range(n + 1):
            assert identities.check_rstirling_explicit(n, i, k).passed


class TestDiagonal:
    def test_binomial(self):
        result = identities.check_diagonal(reduction.preset(SequenceKind.BINOMIAL), 5)
        assert result.lhs == result.rhs == 1

    def test_factorial_diagonal(self):
        result = identities.check_diagonal(identities.FACTORIAL_DIAGONAL, 3)
        assert result.lhs == result.rhs == 6

    def test_stirling2(self):
        result = identities.check_diagonal(reduction.preset(SequenceKind.STIRLING2), 4)
        assert result.lhs == result.rhs == 1

    def test_custom_recurrence(self):
        rec = SuperRecurrence(
            coeffs=(AffineFn(alpha=1), AffineFn(beta=2, gamma=1)), base_value=3, name="custom"
        )
        # 3 * 3 * 5 * 7
        result = identities.check_diagonal(rec, 3)
        assert result.lhs == result.rhs == 315
        assert result.parameters == (("rec", "custom"), ("n", "3"))


class TestClosedForms:
    @pytest.mark.parametrize("n", range(1, 6))
    @pytest.mark.parametrize("x", RATIONAL_POINTS)
    def test_stirling1(self, n, x):
        for m in range(1, n + 1):
            for k in range(3):
                result = identities.check_stirling1_closed(n, m, k, x)
                assert result.passed, result.note

    @pytest.mark.parametrize("n", range(6))
    @pytest.mark.parametrize("k", range(3))
    @pytest.mark.parametrize("x", RATIONAL_POINTS)
    def test_stirling2(self, n, k, x):
        assert identities.check_stirling2_unfolded(n, k, x).passed


class TestSuite:
    def test_empty_grid(self):
        assert identities.run_suite(SuiteConfig()) == []

    def test_grid_passes_with_discrepancies(self):
        config = SuiteConfig.grid(n_max=4, k_max=2, x_values=RATIONAL_POINTS)
        results = identities.run_suite(config)
        assert results
        assert all(result.passed for result in results), [
            result.to_record() for result in results if not result.passed
        ]
        assert any(result.has_discrepancy for result in results)

    def test_full_grid_passes(self):
        results = identities.run_suite(SuiteConfig.grid(n_max=12, k_max=6, x_values=RATIONAL_POINTS))
        assert {result.identity_id for result in results} >= {
            "stirling_touchard_inverse",
            "rstirling_composition",
            "stirling2_unfolded",
        }
        failed = [result.to_record() for result in results if not result.passed]
        assert not failed

    def test_without_printed_variants(self):
        config = SuiteConfig.grid(
            n_max=3, k_max=2, x_values=[Fraction(1)], printed_variants=False
        )
        results = identities.run_suite(config)
        assert all(result.printed_variant_lhs is None for result in results)
        assert not any(result.has_discrepancy for result in results)

    def test_deterministic_order(self):
        config = SuiteConfig.grid(n_max=2, k_max=1, x_values=[Fraction(1, 2)])
        first = [result.to_record() for result in identities.run_suite(config)]
        second = [result.to_record() for result in identities.run_suite(config)]
        assert first == second

    def test_families_in_order(self):
        config = SuiteConfig.grid(n_max=1, k_max=0, x_values=[Fraction(1)], m_max=1)
        ids = [result.identity_id for result in identities.run_suite(config)]
        assert ids[0] == "y_shift"
        assert ids[-1] == "stirling2_unfolded"

    def test_record_shape(self):
        record = identities.check_stirling_touchard_inverse(2, 1, 1).to_record()
        assert record["id"] == "stirling_touchard_inverse"
        assert record["params"] == {"n": "2", "k": "1", "x": "1"}
        assert record["exact"] == record["numeric"] == "5"
        assert record["printed_variant"] == "2"
        assert record["abs_error"] == 0.0
        assert record["passed"] is True

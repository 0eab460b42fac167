"""Tests for the memoized triangles and their oracles."""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import factorial

import pytest

from facsum.exceptions import DomainError
from facsum.managers import sequences
from facsum.models import Poly, SequenceKind


class TestKnownRows:
    def test_stirling2_row(self, manager):
        assert [manager.stirling2(4, k) for k in range(5)] == [0, 1, 7, 6, 1]

    def test_stirling1_row(self, manager):
        assert [manager.stirling1_unsigned(4, k) for k in range(5)] == [0, 6, 11, 6, 1]

    def test_signed_stirling1(self, manager):
        assert manager.stirling1_signed(4, 1) == -6
        assert manager.stirling1_signed(4, 2) == 11

    def test_binomial(self, manager):
        assert manager.binomial(5, 2) == 10
        assert manager.binomial(3, 4) == 0

    def test_bell(self, manager):
        assert [manager.bell(n) for n in range(7)] == [1, 1, 2, 5, 15, 52, 203]

    def test_r_stirling2(self, manager):
        assert manager.r_stirling2(3, 2, 2) == 2
        assert manager.r_stirling2(4, 2, 2) == 4
        assert manager.r_stirling2(1, 1, 2) == 0

    def test_r_stirling1(self, manager):
        assert manager.r_stirling1(3, 2, 2) == 2
        assert manager.r_stirling1(3, 3, 2) == 1

    def test_zero_row(self, manager):
        assert manager.stirling1_unsigned(0, 0) == 1
        assert manager.stirling2(0, 0) == 1
        assert manager.stirling2(3, 0) == 0


class TestRowInvariants:
    @pytest.mark.parametrize("n", range(21))
    def test_cycle_counts_sum_to_factorial(self, manager, n):
        row = manager.table(SequenceKind.STIRLING1, n).rows[n]
        assert sum(row) == factorial(n)

    @pytest.mark.parametrize("n", range(31))
    def test_binomial_symmetry(self, manager, n):
        assert all(manager.binomial(n, k) == manager.binomial(n, n - k) for k in range(n + 1))
        assert sum(manager.binomial(n, k) for k in range(n + 1)) == 2 ** n


class TestValidation:
    def test_negative_index(self, manager):
        with pytest.raises(DomainError):
            manager.stirling2(-1, 0)

    def test_binomial_has_no_r(self, manager):
        with pytest.raises(DomainError):
            manager.entry(SequenceKind.BINOMIAL, 3, 1, r=1)

    def test_domain_error_is_value_error(self, manager):
        with pytest.raises(ValueError):
            manager.bell(-2)


class TestPolynomials:
    def test_touchard(self, manager):
        assert manager.touchard_poly(3) == Poly.power([0, 1, 3, 1])
        assert manager.touchard_poly(0) == Poly.power([1])

    def test_r_touchard(self, manager):
        assert manager.r_touchard_poly(2, 1) == Poly.power([1, 3, 1])
        assert manager.r_touchard_poly(0, 3) == Poly.power([1])

    def test_touchard_at_one_is_bell(self, manager):
        for n in range(10):
            assert sum(manager.touchard_poly(n).coeffs) == manager.bell(n)


class TestTable:
    def test_snapshot(self, manager):
        table = manager.table(SequenceKind.STIRLING2, 3)
        assert table.rows == ((1,), (0, 1), (0, 1, 1), (0, 1, 3, 1))
        assert table.entry(3, 2) == 3
        assert table.entry(9, 2) == 0

    def test_r_table(self, manager):
        table = manager.table(SequenceKind.RSTIRLING2, 3, r=2)
        assert table.rows[3] == (0, 0, 2, 1)

    def test_cache_matches_builder(self, manager):
        manager.stirling1_unsigned(30, 3)
        manager.clear()
        built = sequences.build_rows(SequenceKind.STIRLING1, 30)
        assert manager.table(SequenceKind.STIRLING1, 30).rows == tuple(map(tuple, built))

    def test_concurrent_growth(self, manager):
        requests = [(n, k) for n in range(60, 0, -3) for k in (1, n // 2)]
        with ThreadPoolExecutor(max_workers=8) as pool:
            values = list(pool.map(lambda nk: manager.stirling2(*nk), requests))
        expected = sequences.build_rows(SequenceKind.STIRLING2, 60)
        assert values == [expected[n][k] for n, k in requests]


class TestOracles:
    @pytest.mark.parametrize("r", [0, 1, 2])
    def test_set_partitions(self, manager, r):
        for n in range(7):
            for k in range(n + 1):
                assert manager.r_stirling2(n, k, r) == sequences.count_set_partitions(n, k, r)

    @pytest.mark.parametrize("r", [0, 1, 2])
    def test_cycle_permutations(self, manager, r):
        for n in range(6):
            for k in range(n + 1):
                assert manager.r_stirling1(n, k, r) == sequences.count_cycle_permutations(n, k, r)

    def test_subsets(self, manager):
        for n in range(8):
            for k in range(n + 1):
                assert manager.binomial(n, k) == sequences.count_subsets(n, k)

    def test_explicit_r_stirling2(self, manager):
        assert sequences.r_stirling2_explicit(2, 0, 2) == 4
        for n in range(6):
            for i in range(n + 2):
                for k in range(4):
                    explicit = sequences.r_stirling2_explicit(n, i, k)
                    assert explicit == manager.r_stirling2(n + k, i + k, k)
                    assert isinstance(explicit, Fraction)

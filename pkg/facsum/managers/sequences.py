"""Sequence manager for Facsum.

Memoized triangles for binomial coefficients, Stirling numbers of both kinds
and their r-variants, plus Bell numbers and (r-)Touchard polynomials. Every
triangle also has a cache-free builder and a brute-force enumeration oracle
so cache bugs stay detectable.
"""

import itertools
import logging
import threading
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterator, List, Tuple

from facsum.exceptions import DomainError
from facsum.models import Poly, SeqTable, SequenceKind


def _check_indices(*values: int) -> None:
    for value in values:
        if value < 0:
            raise DomainError(f"Sequence indices must be non-negative, got {value}")


def _next_row(kind: SequenceKind, r: int, n: int, previous: List[int]) -> List[int]:
    """Row n of a triangle from row n-1 by its two-term recurrence."""
    base = kind.base_kind
    if n < r:
        return [0] * (n + 1)
    if n == r:
        row = [0] * (n + 1)
        row[r] = 1
        return row
    row = [0] * (n + 1)
    for k in range(r, n + 1):
        left = previous[k] if k < n else 0
        diagonal = previous[k - 1] if k - 1 >= r else 0
        if base is SequenceKind.BINOMIAL:
            weight = 1
        elif base is SequenceKind.STIRLING1:
            weight = n - 1
        else:
            weight = k
        row[k] = weight * left + diagonal
    return row


def build_rows(kind: SequenceKind, n_max: int, r: int = 0) -> List[List[int]]:
    """Cache-free triangle rows 0..n_max."""
    _check_indices(n_max, r)
    rows: List[List[int]] = []
    for n in range(n_max + 1):
        rows.append(_next_row(kind, r, n, rows[-1] if rows else []))
    return rows


class SequenceManager:
    """Memoized recurrence triangles, grown row by row on demand.

    Rows are appended whole under a lock, so concurrent readers never see a
    partially filled row; recomputing a row twice is harmless.
    """

    def __init__(self):
        self._tables: Dict[Tuple[SequenceKind, int], List[List[int]]] = {}
        self._lock = threading.Lock()

    def _rows(self, kind: SequenceKind, r: int, n: int) -> List[List[int]]:
        key = (kind.base_kind, r)
        rows = self._tables.get(key)
        if rows is not None and len(rows) > n:
            return rows
        with self._lock:
            rows = self._tables.setdefault(key, [])
            start = len(rows)
            for m in range(start, n + 1):
                rows.append(_next_row(kind, r, m, rows[-1] if rows else []))
            if n >= start:
                logging.debug(f"🧮 Grew {kind.base_kind.value} r={r} triangle to row {n}")
        return rows

    def entry(self, kind: SequenceKind, n: int, k: int, r: int = 0) -> int:
        _check_indices(n, k, r)
        if kind is SequenceKind.BINOMIAL and r:
            raise DomainError("Binomial coefficients have no r-variant")
        if k > n:
            return 0
        return self._rows(kind, r, n)[n][k]

    def table(self, kind: SequenceKind, n_max: int, r: int = 0) -> SeqTable:
        """Immutable snapshot of rows 0..n_max."""
        _check_indices(n_max, r)
        if kind is SequenceKind.BINOMIAL and r:
            raise DomainError("Binomial coefficients have no r-variant")
        rows = self._rows(kind, r, n_max)
        return SeqTable(kind=kind, r=r, rows=tuple(tuple(row) for row in rows[: n_max + 1]))

    def clear(self) -> None:
        with self._lock:
            self._tables.clear()

    def binomial(self, n: int, k: int) -> int:
        return self.entry(SequenceKind.BINOMIAL, n, k)

    def stirling1_unsigned(self, n: int, k: int) -> int:
        return self.entry(SequenceKind.STIRLING1, n, k)

    def stirling1_signed(self, n: int, k: int) -> int:
        value = self.stirling1_unsigned(n, k)
        return -value if (n - k) % 2 else value

    def stirling2(self, n: int, k: int) -> int:
        return self.entry(SequenceKind.STIRLING2, n, k)

    def r_stirling1(self, n: int, k: int, r: int) -> int:
        return self.entry(SequenceKind.RSTIRLING1, n, k, r)

    def r_stirling2(self, n: int, k: int, r: int) -> int:
        return self.entry(SequenceKind.RSTIRLING2, n, k, r)

    def bell(self, n: int) -> int:
        _check_indices(n)
        return sum(self._rows(SequenceKind.STIRLING2, 0, n)[n])

    def touchard_poly(self, n: int) -> Poly:
        """T_n(x) = sum_k {n,k} x^k."""
        _check_indices(n)
        return Poly.power(self._rows(SequenceKind.STIRLING2, 0, n)[n])

    def r_touchard_poly(self, n: int, r: int) -> Poly:
        """T_{n,r}(x) = sum_k {n+r, k+r}_r x^k."""
        _check_indices(n, r)
        row = self._rows(SequenceKind.RSTIRLING2, r, n + r)[n + r]
        return Poly.power(row[r:])


def r_stirling2_explicit(n: int, i: int, k: int) -> Fraction:
    """(1/i!) sum_j C(i,j) (-1)^(i-j) (k+j)^n, equal to {n+k, i+k}_k."""
    _check_indices(n, i, k)
    total = sum((-1) ** (i - j) * comb(i, j) * (k + j) ** n for j in range(i + 1))
    return Fraction(total, factorial(i))


def _set_partitions(elements: List[int]) -> Iterator[List[List[int]]]:
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for partition in _set_partitions(rest):
        yield [[first]] + partition
        for index in range(len(partition)):
            yield partition[:index] + [[first] + partition[index]] + partition[index + 1:]


def _cycle_count(permutation: Tuple[int, ...]) -> List[List[int]]:
    seen = [False] * len(permutation)
    cycles = []
    for start in range(len(permutation)):
        if seen[start]:
            continue
        cycle = []
        current = start
        while not seen[current]:
            seen[current] = True
            cycle.append(current)
            current = permutation[current]
        cycles.append(cycle)
    return cycles


def _separated(blocks: List[List[int]], r: int) -> bool:
    """True when elements 0..r-1 all sit in distinct blocks."""
    owners = [next(i for i, block in enumerate(blocks) if e in block) for e in range(r)]
    return len(set(owners)) == r


def count_set_partitions(n: int, k: int, r: int = 0) -> int:
    """Brute-force {n,k}_r: partitions of n elements into k blocks, first r separated."""
    _check_indices(n, k, r)
    if n < r:
        return 0
    return sum(
        1
        for blocks in _set_partitions(list(range(n)))
        if len(blocks) == k and _separated(blocks, r)
    )


def count_cycle_permutations(n: int, k: int, r: int = 0) -> int:
    """Brute-force [n,k]_r: permutations with k cycles, first r in distinct cycles."""
    _check_indices(n, k, r)
    if n < r:
        return 0
    total = 0
    for permutation in itertools.permutations(range(n)):
        cycles = _cycle_count(permutation)
        if len(cycles) == k and _separated(cycles, r):
            total += 1
    return total


def count_subsets(n: int, k: int) -> int:
    """Brute-force C(n,k)."""
    _check_indices(n, k)
    return sum(1 for _ in itertools.combinations(range(n), k))


default_manager = SequenceManager()


def binomial(n: int, k: int) -> int:
    return default_manager.binomial(n, k)


def stirling1_unsigned(n: int, k: int) -> int:
    return default_manager.stirling1_unsigned(n, k)


def stirling1_signed(n: int, k: int) -> int:
    return default_manager.stirling1_signed(n, k)


def stirling2(n: int, k: int) -> int:
    return default_manager.stirling2(n, k)


def r_stirling1(n: int, k: int, r: int) -> int:
    return default_manager.r_stirling1(n, k, r)


def r_stirling2(n: int, k: int, r: int) -> int:
    return default_manager.r_stirling2(n, k, r)


def bell(n: int) -> int:
    return default_manager.bell(n)


def touchard_poly(n: int) -> Poly:
    return default_manager.touchard_poly(n)


def r_touchard_poly(n: int, r: int) -> Poly:
    return default_manager.r_touchard_poly(n, r)

"""Exact integer combinatorics used throughout the solvers.

Binomials with the negative-argument-is-zero convention, Stirling
partition numbers, integer partitions ordered by length, monomial
multiplicities, merge counts between partitions, and Moser polynomial
values.  Everything is computed with Python's arbitrary-precision
integers, so there is no overflow regime anywhere in this module.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator


@dataclass(frozen=True)
class Partition:
    """An integer partition stored as its parts in ascending order."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.parts:
            raise ValueError("a partition needs at least one part")
        if any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive integers: {self.parts!r}")
        if any(a > b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"parts must be in ascending order: {self.parts!r}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"


@dataclass(frozen=True)
class PartitionList:
    """All partitions of ``u`` into at most ``k_max`` parts.

    Entries are ordered by increasing length and, within one length,
    lexicographically on the ascending part tuple.  Consequently
    ``entries[0] == (u,)`` and the all-ones partition comes last
    whenever ``u <= k_max``.
    """

    u: int
    k_max: int
    entries: tuple[Partition, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.entries)


class BinomialTable:
    """Rows of Pascal's triangle precomputed up to ``n_max``.

    Lookups follow the convention that a binomial with any negative
    argument is zero.
    """

    def __init__(self, n_max: int):
        if n_max < 0:
            raise ValueError("n_max must be non-negative")
        self.n_max = n_max
        rows = [[1]]
        for a in range(1, n_max + 1):
            prev = rows[-1]
            row = [1] + [prev[b - 1] + prev[b] for b in range(1, a)] + [1]
            rows.append(row)
        self._rows = rows

    def choose(self, a: int, b: int) -> int:
        if a < 0 or b < 0 or b > a:
            return 0
        if a > self.n_max:
            raise ValueError(
                f"binomial table holds rows up to {self.n_max}, asked for C({a},{b})"
            )
        return self._rows[a][b]


def binomial(table: BinomialTable, a: int, b: int) -> int:
    """C(a, b) from a precomputed table; zero for any negative argument."""
    return table.choose(a, b)


def _comb0(a: int, b: int) -> int:
    # Same zero convention as BinomialTable, without a table.
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def stirling2(u: int, i: int) -> int:
    """Stirling partition number S(u, i) by the explicit alternating sum.

    The division by i! must be exact; that exactness doubles as a
    self-check of the summation.
    """
    if u < 1 or i < 1:
        raise ValueError("stirling2 expects positive arguments")
    if u < i:
        return 0
    total = sum((-1) ** (i - j) * math.comb(i, j) * j**u for j in range(i + 1))
    q, r = divmod(total, math.factorial(i))
    if r:
        raise AssertionError(f"inexact Stirling division for S({u},{i})")
    return q


def _ascending_parts(u: int, length: int, min_part: int) -> Iterator[tuple[int, ...]]:
    if length == 1:
        if u >= min_part:
            yield (u,)
        return
    for first in range(min_part, u // length + 1):
        for rest in _ascending_parts(u - first, length - 1, first):
            yield (first,) + rest


def partitions_at_most(u: int, k_max: int) -> PartitionList:
    """All partitions of u into at most k_max parts, shortest first."""
    if u < 1 or k_max < 1:
        raise ValueError("u and k_max must be positive")
    entries: list[Partition] = []
    for length in range(1, min(u, k_max) + 1):
        entries.extend(Partition(t) for t in _ascending_parts(u, length, 1))
    return PartitionList(u, k_max, tuple(entries))


def multiplicity_mu(p: Partition) -> int:
    """Product over distinct part values of (multiplicity)!."""
    mu = 1
    for count in Counter(p.parts).values():
        mu *= math.factorial(count)
    return mu


def _grouped(avail: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(avail).items()))


def _take_choices(
    groups: tuple[tuple[int, int], ...], target: int
) -> Iterator[tuple[tuple[tuple[int, int], ...], int]]:
    # Yield (remaining groups, labeled ways) for every sub-multiset of the
    # available parts summing to target.  Equal parts are distinguishable,
    # so taking c copies out of a group of size a contributes C(a, c).
    if target == 0:
        yield groups, 1
        return
    if not groups:
        return
    (value, count), rest = groups[0], groups[1:]
    for c in range(0, min(count, target // value) + 1):
        ways = math.comb(count, c)
        left = count - c
        for rem_rest, rest_ways in _take_choices(rest, target - c * value):
            remaining = ((value, left),) + rem_rest if left else rem_rest
            yield remaining, ways * rest_ways


@lru_cache(maxsize=None)
def _ordered_merges(groups: tuple[tuple[int, int], ...], targets: tuple[int, ...]) -> int:
    if not targets:
        return 1 if not groups else 0
    total = 0
    for remaining, ways in _take_choices(groups, targets[0]):
        if ways:
            total += ways * _ordered_merges(remaining, targets[1:])
    return total


def combine_count(p1: Partition, p2: Partition) -> int:
    """Number of ways to merge the parts of p1 into groups summing to p2.

    Parts of p1 at equal positions are treated as distinguishable; the
    resulting collection of groups is unordered.  Zero whenever p2 has
    more parts than p1, and combine_count(p, p) == 1.
    """
    if p1.weight != p2.weight:
        raise ValueError(
            f"partitions must have equal weight: {p1.weight} != {p2.weight}"
        )
    if p2.length > p1.length:
        return 0
    ordered = _ordered_merges(_grouped(p1.parts), p2.parts)
    q, r = divmod(ordered, multiplicity_mu(p2))
    if r:
        raise AssertionError("merge count not divisible by target multiplicity")
    return q


def first_row_coefficient(p: Partition, n: int, k: int) -> int:
    """Coefficient of the recovery matrix's first row for partition p.

    Equals C(n-l, k-l) times the number of set partitions of a
    weight(p)-element set into blocks of sizes p, where l = length(p).
    The division by the multiplicity is exact by construction.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    numerator = 1
    remaining = p.weight
    for part in p.parts:
        numerator *= math.comb(remaining, part)
        remaining -= part
    q, r = divmod(numerator, multiplicity_mu(p))
    if r:
        raise AssertionError(f"inexact block-count division for {p!r}")
    return _comb0(n - p.length, k - p.length) * q


def moser_value_stirling(n: int, k: int, u: int) -> int:
    """Moser polynomial value via the Stirling-number form."""
    if not 1 <= k <= n or u < 1:
        raise ValueError("need 1 <= k <= n and u >= 1")
    return sum(
        (-1) ** (i - 1) * math.factorial(i - 1) * stirling2(u, i) * _comb0(n - i, k - i)
        for i in range(1, u + 1)
    )


def moser_value(n: int, k: int, u: int) -> int:
    """Moser polynomial value: sum of (-1)^(j-1) j^(u-1) C(n, k-j).

    Zero exactly when the degree-u recovery matrix for (n, k) is
    singular.  Debug builds cross-check the equivalent Stirling form.
    """
    if not 1 <= k <= n or u < 1:
        raise ValueError("need 1 <= k <= n and u >= 1")
    value = sum(
        (-1) ** (j - 1) * j ** (u - 1) * _comb0(n, k - j) for j in range(1, k + 1)
    )
    assert value == moser_value_stirling(n, k, u)
    return value

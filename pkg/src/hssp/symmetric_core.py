"""Power-moment recovery: the linear-algebra heart of the Vieta solver.

From the moments S_u of the given k-subset sums, each power sum P_u of
the hidden multiset satisfies one linear system per degree u.  The
system matrix is indexed by the partitions of u into at most k parts:
its first row carries binomial/multinomial coefficients and row i holds
the merge counts v(L[i], L[j]).  Solving upward in u and feeding the
results through Newton's identities yields the elementary symmetric
values of the hidden multiset.

Matrices depend only on (u, n, k), so their factorizations are cached
across solves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinatorics import (
    PartitionList,
    combine_count,
    first_row_coefficient,
    partitions_at_most,
)
from .scalar_field import NumericMode, SingularMatrixError, _solve_exact


@dataclass(frozen=True)
class RecoveryMatrix:
    """Partition-indexed integer matrix linking moments to power sums."""

    u: int
    n: int
    k: int
    partitions: PartitionList
    rows: tuple[tuple[int, ...], ...]


@dataclass
class PowerSumRecovery:
    """Power sums P_1..P_n plus optional per-degree solution vectors."""

    power_sums: list
    partition_values: list | None
    warnings: list


def compute_moments(sums, n: int):
    """Moments S_u = sum of b^u for u = 1..n, via running powers.

    Exact inputs are summed exactly; float inputs use math.fsum so the
    result does not depend on summation order.
    """
    sums = list(sums)
    if not sums:
        raise ValueError("need at least one subset sum")
    is_float = any(isinstance(b, float) for b in sums)
    add = math.fsum if is_float else sum
    powers = list(sums)
    moments = []
    for u in range(1, n + 1):
        moments.append(add(powers))
        if u < n:
            powers = [p * b for p, b in zip(powers, sums)]
    return moments


def build_recovery_matrix(u: int, n: int, k: int) -> RecoveryMatrix:
    """The degree-u matrix over partitions of u into at most k parts.

    Row 0 holds the first-row coefficients; row i >= 1 holds the merge
    counts against partition entries[i], giving a unit diagonal there.
    """
    if u < 1 or not 1 <= k <= n:
        raise ValueError("need u >= 1 and 1 <= k <= n")
    plist = partitions_at_most(u, k)
    first = tuple(first_row_coefficient(p, n, k) for p in plist.entries)
    rows = [first]
    for p1 in plist.entries[1:]:
        rows.append(tuple(combine_count(p1, p2) for p2 in plist.entries))
    return RecoveryMatrix(u, n, k, plist, tuple(rows))


@lru_cache(maxsize=None)
def _exact_first_inverse_row(u: int, n: int, k: int) -> tuple[Fraction, ...]:
    # First row of the matrix inverse, i.e. the solve of M^T y = e1.
    matrix = build_recovery_matrix(u, n, k)
    size = len(matrix.rows)
    transposed = [[matrix.rows[r][c] for r in range(size)] for c in range(size)]
    e1 = [Fraction(int(i == 0)) for i in range(size)]
    return tuple(_solve_exact(transposed, e1))


@lru_cache(maxsize=None)
def _float_lu(u: int, n: int, k: int):
    # Compact LU factorization with partial pivoting; cached per matrix.
    matrix = build_recovery_matrix(u, n, k)
    size = len(matrix.rows)
    lu = [[float(v) for v in row] for row in matrix.rows]
    perm = list(range(size))
    pivots = []
    for col in range(size):
        pivot_row = max(range(col, size), key=lambda r: abs(lu[r][col]))
        pivot = lu[pivot_row][col]
        if pivot == 0.0:
            raise SingularMatrixError(
                f"recovery matrix singular at u={u} (n={n}, k={k})", col
            )
        if pivot_row != col:
            lu[col], lu[pivot_row] = lu[pivot_row], lu[col]
            perm[col], perm[pivot_row] = perm[pivot_row], perm[col]
        pivots.append(abs(pivot))
        for r in range(col + 1, size):
            factor = lu[r][col] / pivot
            lu[r][col] = factor
            if factor:
                for c in range(col + 1, size):
                    lu[r][c] -= factor * lu[col][c]
    ratio = min(pivots) / max(pivots)
    return lu, tuple(perm), ratio


def _lu_solve(lu, perm, rhs):
    size = len(lu)
    y = [float(rhs[perm[i]]) for i in range(size)]
    for i in range(size):
        for j in range(i):
            y[i] -= lu[i][j] * y[j]
    for i in range(size - 1, -1, -1):
        for j in range(i + 1, size):
            y[i] -= lu[i][j] * y[j]
        y[i] /= lu[i][i]
    return y


def _rhs_for_degree(plist: PartitionList, moment, power_sums):
    rhs = [moment]
    for entry in plist.entries[1:]:
        prod = power_sums[entry.parts[0] - 1]
        for q in entry.parts[1:]:
            prod = prod * power_sums[q - 1]
        rhs.append(prod)
    return rhs


def recover_power_sums(
    moments,
    n: int,
    k: int,
    mode: NumericMode,
    keep_partition_values: bool = False,
) -> PowerSumRecovery:
    """Recover P_1..P_n from the moments S_1..S_n.

    Callers are expected to have checked that every degree's matrix is
    non-singular (the Moser value is non-zero for u = 1..n); a singular
    matrix found here propagates as SingularMatrixError.

    With ``keep_partition_values`` the full solution vector of every
    degree (the values for all partitions, not just P_u) is retained
    for diagnostics.
    """
    if len(moments) < n:
        raise ValueError("need one moment per degree 1..n")
    power_sums: list = []
    details: list | None = [] if keep_partition_values else None
    warnings: list = []
    for u in range(1, n + 1):
        plist = partitions_at_most(u, k)
        rhs = _rhs_for_degree(plist, moments[u - 1], power_sums)
        if mode.is_exact:
            if keep_partition_values:
                matrix = build_recovery_matrix(u, n, k)
                full = _solve_exact([list(r) for r in matrix.rows], rhs)
                details.append(full)
                value = full[0]
            else:
                row = _exact_first_inverse_row(u, n, k)
                value = sum(c * b for c, b in zip(row, rhs))
        else:
            lu, perm, ratio = _float_lu(u, n, k)
            if ratio < 1e-10:
                warnings.append(
                    f"ill-conditioned recovery matrix at u={u} (pivot ratio {ratio:.2e})"
                )
            full = _lu_solve(lu, perm, rhs)
            if keep_partition_values:
                details.append(full)
            value = full[0]
        power_sums.append(value)
    return PowerSumRecovery(power_sums, details, warnings)


def newton_elementary(power_sums, n: int):
    """Elementary symmetric values from power sums by Newton's identities.

    Returns e[0..n] with e[0] = 1 and
    i * e[i] = sum_{j=1..i} (-1)^(j-1) e[i-j] P_j.
    """
    if len(power_sums) < n:
        raise ValueError("need power sums P_1..P_n")
    is_float = any(isinstance(p, float) for p in power_sums[:n])
    e = [1.0 if is_float else Fraction(1)]
    for i in range(1, n + 1):
        acc = 0.0 if is_float else Fraction(0)
        for j in range(1, i + 1):
            term = e[i - j] * power_sums[j - 1]
            acc = acc + term if j % 2 == 1 else acc - term
        e.append(acc / i)
    return e

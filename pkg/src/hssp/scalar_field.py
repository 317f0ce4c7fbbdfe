"""The working field: exact rationals or 64-bit floats.

Scalars are plain ``fractions.Fraction`` (or ``int``) values in exact
mode and ``float`` in float mode; matrices and vectors are plain lists.
This module provides linear solving (fraction-free Bareiss elimination
in exact mode, partial pivoting in float mode), exact determinants,
tolerance-aware multiset comparison, and the canonical string forms
"p/q" and shortest round-trip decimals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

RATIONAL = "rational"
FLOAT = "float"

# Pivot ratios below this trigger a conditioning warning in float mode.
CONDITION_RATIO_LIMIT = 1e-10


@dataclass(frozen=True)
class NumericMode:
    """Field selection plus the comparison tolerance policy.

    Exact mode compares exactly and both epsilons are zero.  Float mode
    compares within max(epsilon_abs, epsilon_rel * magnitude).
    """

    kind: str
    epsilon_abs: float = 0.0
    epsilon_rel: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in (RATIONAL, FLOAT):
            raise ValueError(f"unknown numeric mode kind: {self.kind!r}")
        if self.epsilon_abs < 0 or self.epsilon_rel < 0:
            raise ValueError("tolerances must be non-negative")
        if self.kind == RATIONAL and (self.epsilon_abs or self.epsilon_rel):
            raise ValueError("exact mode admits no tolerances")
        if self.kind == FLOAT and not (self.epsilon_abs or self.epsilon_rel):
            raise ValueError("float mode needs a positive tolerance")

    @classmethod
    def exact(cls) -> "NumericMode":
        return cls(RATIONAL)

    @classmethod
    def float64(cls, epsilon_abs: float = 1e-6, epsilon_rel: float = 1e-9) -> "NumericMode":
        return cls(FLOAT, epsilon_abs, epsilon_rel)

    @property
    def is_exact(self) -> bool:
        return self.kind == RATIONAL


class SingularMatrixError(ValueError):
    """Raised when elimination finds no usable pivot; carries the rank."""

    def __init__(self, message: str, rank: int):
        super().__init__(message)
        self.rank = rank


def parse_scalar(text: str, kind: str):
    """Parse "p/q", an integer, or a decimal string into the given field."""
    text = text.strip()
    try:
        if kind == RATIONAL:
            return Fraction(text)
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a valid {kind} scalar: {text!r}") from exc


def format_scalar(value) -> str:
    """Canonical string form: "p/q" (or "p") for rationals, repr for floats."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def pair_tolerance(mode: NumericMode, a, b) -> float:
    return max(mode.epsilon_abs, mode.epsilon_rel * max(abs(a), abs(b)))


def multiset_equal(a, b, mode: NumericMode):
    """Compare two scalar multisets; returns (equal, max deviation).

    Both sides are sorted and matched pairwise.  The deviation is None
    when the lengths differ, otherwise the largest pairwise gap.
    """
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False, None
    if not a:
        return True, Fraction(0) if mode.is_exact else 0.0
    sa, sb = sorted(a), sorted(b)
    if mode.is_exact:
        deviation = max(abs(x - y) for x, y in zip(sa, sb))
        return deviation == 0, deviation
    deviation = 0.0
    equal = True
    for x, y in zip(sa, sb):
        gap = abs(x - y)
        deviation = max(deviation, gap)
        if gap > pair_tolerance(mode, x, y):
            equal = False
    return equal, deviation


def mat_vec(matrix, vector):
    return [sum(m * v for m, v in zip(row, vector)) for row in matrix]


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _check_system(matrix, rhs) -> int:
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square and non-empty")
    if len(rhs) != n:
        raise ValueError("right-hand side length must match the matrix order")
    return n


def _bareiss_forward(rows, width):
    """Fraction-free forward elimination in place; returns (pivot columns, sign).

    ``rows`` is a list of Fraction lists of length ``width``; only the
    first len(rows) columns are eliminated (the rest ride along, which is
    how augmented right-hand sides are carried).
    """
    n = len(rows)
    sign = 1
    prev = Fraction(1)
    pivot_cols = []
    row = 0
    for col in range(n):
        pivot_row = next((r for r in range(row, n) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != row:
            rows[row], rows[pivot_row] = rows[pivot_row], rows[row]
            sign = -sign
        pivot = rows[row][col]
        for r in range(row + 1, n):
            factor = rows[r][col]
            for c in range(col, width):
                rows[r][c] = (rows[r][c] * pivot - factor * rows[row][c]) / prev
        prev = pivot
        pivot_cols.append(col)
        row += 1
    return pivot_cols, sign


def _solve_exact(matrix, rhs):
    n = _check_system(matrix, rhs)
    rows = [
        [Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)
    ]
    pivot_cols, _ = _bareiss_forward(rows, n + 1)
    if len(pivot_cols) < n:
        raise SingularMatrixError(
            f"singular system: rank {len(pivot_cols)} < order {n}", len(pivot_cols)
        )
    solution = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = rows[i][n] - sum(rows[i][j] * solution[j] for j in range(i + 1, n))
        solution[i] = acc / rows[i][i]
    return solution


def _solve_float(matrix, rhs, mode: NumericMode, warnings):
    n = _check_system(matrix, rhs)
    rows = [[float(v) for v in row] + [float(b)] for row, b in zip(matrix, rhs)]
    pivots = []
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(rows[r][col]))
        pivot = rows[pivot_row][col]
        if abs(pivot) <= mode.epsilon_abs or pivot == 0.0:
            raise SingularMatrixError(
                f"singular system: pivot {pivot!r} at column {col}", col
            )
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
        pivots.append(abs(pivot))
        for r in range(col + 1, n):
            factor = rows[r][col] / pivot
            if factor:
                for c in range(col, n + 1):
                    rows[r][c] -= factor * rows[col][c]
    if warnings is not None and min(pivots) / max(pivots) < CONDITION_RATIO_LIMIT:
        warnings.append(
            f"ill-conditioned system: pivot ratio {min(pivots) / max(pivots):.2e}"
        )
    solution = [0.0] * n
    for i in range(n - 1, -1, -1):
        acc = rows[i][n] - sum(rows[i][j] * solution[j] for j in range(i + 1, n))
        solution[i] = acc / rows[i][i]
    return solution


def solve_linear(matrix, rhs, mode: NumericMode, warnings=None):
    """Solve matrix * x = rhs over the mode's field.

    Exact mode runs fraction-free Bareiss elimination with exact back
    substitution; float mode runs Gaussian elimination with partial
    pivoting and appends a conditioning note to ``warnings`` when the
    pivot ratio drops below 1e-10.
    """
    if mode.is_exact:
        return _solve_exact(matrix, rhs)
    return _solve_float(matrix, rhs, mode, warnings)


def _det_int(matrix, n):
    rows = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            sign = -sign
        pivot = rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col]
            for c in range(col, n):
                rows[r][c] = (rows[r][c] * pivot - factor * rows[col][c]) // prev
        prev = pivot
    return sign * rows[n - 1][n - 1]


def determinant_exact(matrix, mode: NumericMode | None = None):
    """Exact determinant by fraction-free elimination (exact mode only)."""
    if mode is not None and not mode.is_exact:
        raise ValueError("determinant_exact requires the exact rational mode")
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square and non-empty")
    if all(isinstance(v, int) for row in matrix for v in row):
        # Integer matrices stay integer under Bareiss; // divisions are exact.
        return Fraction(_det_int(matrix, n))
    rows = [[Fraction(v) for v in row] for row in matrix]
    pivot_cols, sign = _bareiss_forward(rows, n)
    if len(pivot_cols) < n:
        return Fraction(0)
    return sign * rows[n - 1][n - 1]

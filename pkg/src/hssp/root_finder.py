"""Monic polynomial assembly and real root extraction.

The polynomial is built from elementary symmetric values with the
Vieta sign pattern.  Roots are found by Aberth-Ehrlich simultaneous
iteration from perturbed-circle start points, polished per root with
Newton steps, then clustered so repeated roots come out as exact
multiplicities.  Valid inputs have all-real roots; anything else
raises NonRealRootsError.

Cluster merges are only accepted when the residual at the cluster mean
sits at the float evaluation noise floor, which makes the escalating
merge radii safe: two genuinely distinct roots leave a residual far
above noise at their midpoint.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

# A root whose imaginary part is below this (relative) threshold is real.
IMAG_TOLERANCE = 1e-7
# Escalating single-linkage radii used when grouping repeated roots.
CLUSTER_RADII = (1e-8, 1e-7, 1e-6, 1e-5, 1e-4)

_EPS = math.ulp(1.0)


class NonRealRootsError(ValueError):
    """The polynomial has roots that are not real within tolerance."""


@dataclass(frozen=True)
class MonicPolynomial:
    """Coefficients in ascending order; the leading one must equal 1."""

    coefficients: tuple

    def __post_init__(self) -> None:
        if len(self.coefficients) < 2:
            raise ValueError("polynomial must have degree at least 1")
        if self.coefficients[-1] != 1:
            raise ValueError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def evaluate(self, x):
        acc = self.coefficients[-1]
        for c in reversed(self.coefficients[:-1]):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class RootSet:
    """Roots with multiplicity, ascending, plus per-root residuals."""

    roots: tuple
    residuals: tuple


def poly_from_elementary(e, n: int) -> MonicPolynomial:
    """prod (x - x_i) from elementary values: coefficient of x^(n-i) is (-1)^i e_i."""
    if len(e) != n + 1:
        raise ValueError(f"need e[0..{n}], got {len(e)} values")
    if e[0] != 1:
        raise ValueError("e[0] must be 1")
    coeffs = [None] * (n + 1)
    for i in range(n + 1):
        coeffs[n - i] = e[i] if i % 2 == 0 else -e[i]
    return MonicPolynomial(tuple(coeffs))


def _eval(coeffs, x):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _eval_with_derivative(coeffs, x):
    p = coeffs[-1]
    dp = 0.0
    for c in reversed(coeffs[:-1]):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _noise_floor(coeffs, x) -> float:
    # Forward error bound for Horner evaluation at x, with headroom.
    ax = abs(x)
    acc = abs(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * ax + abs(c)
    return 8.0 * len(coeffs) * _EPS * acc + 1e-300


def _aberth(coeffs):
    n = len(coeffs) - 1
    center = -coeffs[-2] / n
    radius = 1.0 + max(abs(c) for c in coeffs[:-1])
    roots = [
        center + radius * cmath.exp(1j * (2.0 * math.pi * j / n + 0.4))
        for j in range(n)
    ]
    for _ in range(400):
        biggest = 0.0
        for i in range(n):
            z = roots[i]
            p, dp = _eval_with_derivative(coeffs, z)
            if p == 0:
                continue
            weight = 0.0 + 0.0j
            for j in range(n):
                if j != i:
                    diff = z - roots[j]
                    if diff == 0:
                        diff = 1e-12 * (1.0 + abs(z))
                    weight += 1.0 / diff
            denom = dp - p * weight
            if denom == 0:
                denom = 1e-300
            step = p / denom
            roots[i] = z - step
            biggest = max(biggest, abs(step) / (1.0 + abs(roots[i])))
        if biggest < 1e-14:
            break
    return roots


def _newton_polish(coeffs, z):
    best = z
    best_res = abs(_eval(coeffs, z))
    for _ in range(60):
        p, dp = _eval_with_derivative(coeffs, z)
        if dp == 0:
            break
        z = z - p / dp
        res = abs(_eval(coeffs, z))
        if res < best_res:
            best, best_res = z, res
        else:
            break
    return best


def _merge_clusters(coeffs, clusters, scale):
    # clusters: list of (mean, multiplicity).  Accept a merge only when
    # the merged mean evaluates at the noise floor, so genuinely distinct
    # roots are never averaged together.
    for radius in CLUSTER_RADII:
        limit = radius * scale
        merged = True
        while merged:
            merged = False
            for i in range(len(clusters)):
                for j in range(i + 1, len(clusters)):
                    zi, mi = clusters[i]
                    zj, mj = clusters[j]
                    if abs(zi - zj) > limit:
                        continue
                    mean = (zi * mi + zj * mj) / (mi + mj)
                    if abs(_eval(coeffs, mean)) <= _noise_floor(coeffs, mean):
                        clusters[i] = (mean, mi + mj)
                        del clusters[j]
                        merged = True
                        break
                if merged:
                    break
    return clusters


def find_real_roots(poly: MonicPolynomial, mode=None) -> RootSet:
    """All real roots of the polynomial, counted with multiplicity.

    Exact coefficients are lowered to floats for the iteration.  A root
    is accepted as real if its imaginary part is within IMAG_TOLERANCE
    (relative), or if its real projection already evaluates at the
    noise floor, which is how high-multiplicity roots present in float
    arithmetic.  Anything else raises NonRealRootsError.
    """
    coeffs = [float(c) for c in poly.coefficients]
    n = poly.degree
    if n == 1:
        root = -coeffs[0]
        return RootSet((root,), (abs(_eval(coeffs, root)),))
    approx = _aberth(coeffs)
    polished = [_newton_polish(coeffs, z) for z in approx]
    scale = max(1.0, max(abs(z) for z in polished))
    clusters = _merge_clusters(coeffs, [(z, 1) for z in polished], scale)
    reals: list[float] = []
    for z, multiplicity in clusters:
        if abs(z.imag) <= IMAG_TOLERANCE * (1.0 + abs(z.real)):
            value = z.real
        elif abs(_eval(coeffs, z.real)) <= _noise_floor(coeffs, z.real):
            value = z.real
        else:
            raise NonRealRootsError(
                f"root {z:.6g} has imaginary part beyond tolerance; "
                "the input is not a consistent all-real instance"
            )
        reals.extend([value] * multiplicity)
    reals.sort()
    residuals = tuple(abs(_eval(coeffs, r)) for r in reals)
    return RootSet(tuple(reals), residuals)


def _simple_clusters(values, limit):
    clusters: list[list[float]] = []
    for v in sorted(values):
        if clusters and v - clusters[-1][-1] <= limit:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    out = []
    for group in clusters:
        mean = math.fsum(group) / len(group)
        out.extend([mean] * len(group))
    return out


def _certify(coeffs, candidates) -> bool:
    # Synthetic division by every candidate must leave zero remainders
    # and reduce the polynomial to the constant 1.
    current = list(coeffs)
    for root in candidates:
        acc = current[-1]
        descending = [acc]
        for c in reversed(current[:-1]):
            acc = acc * root + c
            descending.append(acc)
        remainder = descending.pop()
        if remainder != 0:
            return False
        current = list(reversed(descending))
    return current == [Fraction(1)]


def rational_reconstruct(roots: RootSet, max_denominator: int, poly: MonicPolynomial):
    """Round float roots to rationals and certify them exactly, or return None.

    Each root is replaced by its best rational approximation with a
    bounded denominator (continued-fraction convergents).  Candidates
    are accepted only when synthetic division by all of them reduces
    the polynomial to 1 with zero remainders.  When raw roots fail,
    progressively wider cluster averages are tried, which repairs the
    float scatter around repeated roots; exact certification makes the
    widening safe.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be positive")
    exact_coeffs = []
    for c in poly.coefficients:
        if isinstance(c, float):
            return None
        exact_coeffs.append(Fraction(c))
    values = [float(r) for r in roots.roots]
    scale = max(1.0, max(abs(v) for v in values))
    seen = set()
    for radius in (0.0,) + CLUSTER_RADII:
        grouped = values if radius == 0.0 else _simple_clusters(values, radius * scale)
        candidates = tuple(
            sorted(Fraction(v).limit_denominator(max_denominator) for v in grouped)
        )
        if candidates in seen:
            continue
        seen.add(candidates)
        if _certify(exact_coeffs, candidates):
            return list(candidates)
    return None

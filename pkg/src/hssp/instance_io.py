"""Instance generation, the subset-sum oracle, verification, and file I/O.

File formats (UTF-8 JSON, keys in the order shown, newline-terminated):

    instance:  {"n": int, "k": int, "mode": "rational"|"float",
                "sums": ["3", "7/2", ...]}
               plus an optional trailing "warnings" list
    solution:  {"elements": ["1", "2", ...]}
    report:    mirrors SolveReport; big integers ride as decimal strings

Rationals are serialized as "p/q" in lowest terms ("p" when q = 1) and
floats as shortest round-trip decimals, so canonical files round-trip
byte for byte.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .combinatorics import moser_value
from .scalar_field import (
    FLOAT,
    RATIONAL,
    NumericMode,
    format_scalar,
    multiset_equal,
    parse_scalar,
)


class MalformedInstanceError(ValueError):
    """An instance or solution file violates the format contract."""


@dataclass
class Instance:
    """An (n, k)-complete instance: all C(n, k) subset sums, kept sorted."""

    n: int
    k: int
    mode: str
    sums: tuple
    warnings: tuple = ()

    def __post_init__(self) -> None:
        if self.mode not in (RATIONAL, FLOAT):
            raise MalformedInstanceError(f"unknown mode {self.mode!r}")
        if not 1 <= self.k <= self.n - 1:
            raise MalformedInstanceError(
                f"need 1 <= k <= n-1, got n={self.n}, k={self.k}"
            )
        expected = math.comb(self.n, self.k)
        if len(self.sums) != expected:
            raise MalformedInstanceError(
                f"expected C({self.n},{self.k}) = {expected} sums, got {len(self.sums)}"
            )
        self.sums = tuple(sorted(self.sums))
        self.warnings = tuple(self.warnings)

    def numeric_mode(self) -> NumericMode:
        return NumericMode.exact() if self.mode == RATIONAL else NumericMode.float64()


def subset_sums(elements, k: int):
    """All C(n, k) k-subset sums of the multiset, sorted ascending.

    This enumeration is the ground-truth oracle every verification path
    goes through.
    """
    elements = list(elements)
    if not 1 <= k <= len(elements):
        raise ValueError(f"need 1 <= k <= {len(elements)}, got k={k}")
    return sorted(sum(combo) for combo in combinations(elements, k))


class SplitMix64:
    """SplitMix64: a platform-independent 64-bit generator.

    State update and output scrambling, all modulo 2**64:

        state += 0x9E3779B97F4A7C15
        z = state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4B5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        return z ^ (z >> 31)
    """

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4B5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def next_int(self, lo: int, hi: int) -> int:
        # Modulo mapping; the bias of at most (hi-lo+1)/2**64 is irrelevant
        # at desk scale and keeps the recurrence portable.
        return lo + self.next_u64() % (hi - lo + 1)

    def next_unit_float(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


INTEGER_RANGE = "integer-range"
UNIT_FLOAT = "unit-float"


def generate_instance(
    n: int,
    k: int,
    seed: int,
    distribution: str = INTEGER_RANGE,
    lo: int = -50,
    hi: int = 50,
    distinct: bool = False,
):
    """Draw a hidden multiset and return (instance, ground truth elements).

    Identical arguments always produce identical output.  Instances on a
    singular pair are still generated but carry a warning in their
    metadata.
    """
    if not 2 <= k <= n - 1:
        raise MalformedInstanceError(f"need 2 <= k <= n-1, got n={n}, k={k}")
    rng = SplitMix64(seed)
    if distribution == INTEGER_RANGE:
        if lo > hi:
            raise ValueError(f"bad range: {lo} > {hi}")
        if distinct and hi - lo + 1 < n:
            raise ValueError(f"range [{lo},{hi}] cannot hold {n} distinct values")
        draw = lambda: rng.next_int(lo, hi)
        mode = RATIONAL
    elif distribution == UNIT_FLOAT:
        draw = rng.next_unit_float
        mode = FLOAT
    else:
        raise ValueError(f"unknown distribution {distribution!r}")
    elements: list = []
    while len(elements) < n:
        value = draw()
        if distinct and value in elements:
            continue
        elements.append(value)
    elements.sort()
    warnings = []
    kk = min(k, n - k)
    if kk >= 2 and any(moser_value(n, kk, u) == 0 for u in range(1, n + 1)):
        warnings.append(
            f"singular pair ({n},{k}): multiple hidden multisets may share these sums"
        )
    instance = Instance(n, k, mode, tuple(subset_sums(elements, k)), tuple(warnings))
    return instance, elements


def verify_solution(instance: Instance, candidate, mode: NumericMode | None = None):
    """Re-derive the candidate's k-subset sums and compare multisets.

    Returns (matches, max deviation).
    """
    candidate = list(candidate)
    if len(candidate) != instance.n:
        return False, None
    if mode is None:
        mode = instance.numeric_mode()
    derived = subset_sums(candidate, instance.k)
    return multiset_equal(derived, instance.sums, mode)


def _parse_sums(raw, kind, what):
    if not isinstance(raw, list):
        raise MalformedInstanceError(f"{what} must be a list of strings")
    values = []
    for index, text in enumerate(raw):
        if not isinstance(text, str):
            raise MalformedInstanceError(f"{what}[{index}]: expected a string")
        try:
            values.append(parse_scalar(text, kind))
        except ValueError as exc:
            raise MalformedInstanceError(f"{what}[{index}]: {exc}") from exc
    return values


def read_instance(path) -> Instance:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise MalformedInstanceError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise MalformedInstanceError(f"{path}: expected a JSON object")
    for key in ("n", "k", "mode", "sums"):
        if key not in data:
            raise MalformedInstanceError(f"{path}: missing key {key!r}")
    n, k, mode = data["n"], data["k"], data["mode"]
    if not isinstance(n, int) or not isinstance(k, int):
        raise MalformedInstanceError(f"{path}: n and k must be integers")
    if mode not in (RATIONAL, FLOAT):
        raise MalformedInstanceError(f"{path}: mode must be 'rational' or 'float'")
    sums = _parse_sums(data["sums"], mode, "sums")
    warnings = tuple(data.get("warnings", ()))
    try:
        return Instance(n, k, mode, tuple(sums), warnings)
    except MalformedInstanceError as exc:
        raise MalformedInstanceError(f"{path}: {exc}") from exc


def write_instance(instance: Instance, path) -> None:
    payload: dict = {
        "n": instance.n,
        "k": instance.k,
        "mode": instance.mode,
        "sums": [format_scalar(v) for v in instance.sums],
    }
    if instance.warnings:
        payload["warnings"] = list(instance.warnings)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle)
        handle.write("\n")


def read_solution(path, kind: str = RATIONAL):
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise MalformedInstanceError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict) or "elements" not in data:
        raise MalformedInstanceError(f"{path}: expected an object with 'elements'")
    return _parse_sums(data["elements"], kind, "elements")


def write_solution(elements, path) -> None:
    payload = {"elements": [format_scalar(v) for v in sorted(elements)]}
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle)
        handle.write("\n")


def report_to_dict(report) -> dict:
    """JSON-ready view of a SolveReport; big integers become strings."""
    payload = {
        "status": report.status,
        "algorithm": report.algorithm,
        "solutions": [
            [format_scalar(v) for v in solution] for solution in report.solutions
        ],
        "verification": [
            None if dev is None else format_scalar(dev) for dev in report.verification
        ],
        "moser": {
            "values": [[u, str(value)] for u, value in report.moser.values],
            "singular_us": list(report.moser.singular_us),
        },
        "warnings": list(report.warnings),
        "elapsed": report.elapsed,
    }
    if report.iterations is not None:
        payload["iterations"] = report.iterations
        payload["iteration_bound"] = str(report.cursor_bound)
    return payload


def write_report(report, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(report_to_dict(report), handle)
        handle.write("\n")

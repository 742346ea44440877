"""Exact Schmidt-coefficient vectors and majorization.

Everything is kept as ``fractions.Fraction`` so that equalities between
prefix sums are decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import accumulate
from numbers import Rational
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidState,
    NegativeCoefficient,
    NotNormalized,
    SumMismatch,
)


def to_fraction(value) -> Fraction:
    """Convert ints, Fractions and decimal strings without passing through floats."""
    if isinstance(value, bool):
        raise InvalidState(f"not a number: {value!r}")
    if isinstance(value, (Rational, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidState(f"cannot parse coefficient {value!r}") from exc
    if isinstance(value, float):
        # repr gives the shortest decimal that round-trips, which is what
        # a user typing 0.33 meant
        return Fraction(repr(value))
    raise InvalidState(f"not a number: {value!r}")


@dataclass(frozen=True)
class SchmidtVector:
    """Non-negative coefficients held in non-increasing order.

    ``normalized`` asserts that the coefficients sum to one; it is checked
    at construction.
    """

    coefficients: tuple[Fraction, ...]
    normalized: bool = False

    def __post_init__(self):
        coeffs = tuple(sorted((to_fraction(c) for c in self.coefficients), reverse=True))
        if not coeffs:
            raise InvalidState("a state needs at least one coefficient")
        if coeffs[-1] < 0:
            raise NegativeCoefficient(f"negative coefficient {coeffs[-1]}")
        if self.normalized and sum(coeffs) != 1:
            raise NotNormalized(f"coefficients sum to {sum(coeffs)}, not 1")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of(cls, values: Iterable, normalized: bool | None = None) -> "SchmidtVector":
        """Build a vector; ``normalized`` defaults to whether the sum is 1."""
        coeffs = tuple(to_fraction(v) for v in values)
        if normalized is None:
            normalized = sum(coeffs) == 1
        return cls(coeffs, normalized)

    @classmethod
    def from_weights(cls, weights: Iterable) -> "SchmidtVector":
        """Scale non-negative weights so they sum to one."""
        coeffs = [to_fraction(w) for w in weights]
        total = sum(coeffs)
        if total <= 0:
            raise InvalidState("weights must have a positive sum")
        return cls(tuple(c / total for c in coeffs), True)

    @classmethod
    def uniform(cls, dim: int) -> "SchmidtVector":
        return cls((Fraction(1, dim),) * dim, True)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, index):
        return self.coefficients[index]

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    @property
    def total(self) -> Fraction:
        return sum(self.coefficients, Fraction(0))

    @property
    def largest(self) -> Fraction:
        return self.coefficients[0]

    @property
    def smallest(self) -> Fraction:
        return self.coefficients[-1]

    @property
    def support(self) -> int:
        """Number of non-zero coefficients."""
        return sum(1 for c in self.coefficients if c > 0)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coefficients) + ")"


def coefficients_of(x) -> tuple[Fraction, ...]:
    if isinstance(x, SchmidtVector):
        return x.coefficients
    return tuple(sorted((to_fraction(c) for c in x), reverse=True))


def as_vector(x) -> SchmidtVector:
    return x if isinstance(x, SchmidtVector) else SchmidtVector.of(x)


def parse(raw: Sequence, dimension: int, normalized: bool = True) -> SchmidtVector:
    if len(raw) != dimension:
        raise DimensionMismatch(f"expected {dimension} coefficients, got {len(raw)}")
    return SchmidtVector(tuple(to_fraction(c) for c in raw), normalized)


def prefix_sums(x) -> list[Fraction]:
    """All partial sums e_1..e_n of the sorted coefficients."""
    return list(accumulate(coefficients_of(x)))


def prefix_sum(x, m: int) -> Fraction:
    coeffs = coefficients_of(x)
    if not 1 <= m <= len(coeffs):
        raise IndexOutOfRange(f"m={m} outside 1..{len(coeffs)}")
    return sum(coeffs[:m], Fraction(0))


@dataclass(frozen=True)
class CompactForm:
    """Run-length view: distinct values (decreasing) with their multiplicities."""

    values: tuple[Fraction, ...]
    multiplicities: tuple[int, ...]

    def expand(self) -> SchmidtVector:
        return SchmidtVector.of(
            v for v, k in zip(self.values, self.multiplicities) for _ in range(k)
        )

    def __len__(self) -> int:
        return len(self.values)

    def first_position(self, i: int) -> int:
        """0-based position in the sorted vector of the first copy of value ``i`` (1-based)."""
        return sum(self.multiplicities[: i - 1])

    def last_position(self, i: int) -> int:
        return sum(self.multiplicities[:i]) - 1


def compact(x) -> CompactForm:
    values: list[Fraction] = []
    mults: list[int] = []
    for c in coefficients_of(x):
        if values and values[-1] == c:
            mults[-1] += 1
        else:
            values.append(c)
            mults.append(1)
    return CompactForm(tuple(values), tuple(mults))


def tensor(x, y) -> SchmidtVector:
    """Coefficients of the product state, i.e. all pairwise products."""
    xs, ys = coefficients_of(x), coefficients_of(y)
    return SchmidtVector.of(a * b for a in xs for b in ys)


def tensor_power(x, m: int) -> SchmidtVector:
    if m < 1:
        raise IndexOutOfRange("tensor power needs m >= 1")
    base = x if isinstance(x, SchmidtVector) else SchmidtVector.of(x)
    return reduce(tensor, [base] * (m - 1), base)


def direct_sum(*parts) -> SchmidtVector:
    return SchmidtVector.of(c for p in parts for c in coefficients_of(p))


@dataclass(frozen=True)
class MajorizationReport:
    majorized: bool
    strict: bool
    delta_set: frozenset[int]
    first_violation: int | None


def majorize(x, y) -> MajorizationReport:
    """Compare x against y: is x majorized by y?

    ``delta_set`` holds the interior indices m (1 <= m < n) where the
    partial sums agree. ``strict`` requires every interior partial sum of x
    to be strictly below that of y and x != y.
    """
    xs, ys = coefficients_of(x), coefficients_of(y)
    if len(xs) != len(ys):
        raise DimensionMismatch(f"dimensions differ: {len(xs)} vs {len(ys)}")
    ex, ey = prefix_sums(xs), prefix_sums(ys)
    if ex[-1] != ey[-1]:
        raise SumMismatch(f"totals differ: {ex[-1]} vs {ey[-1]}")
    first_violation = next((m for m, (a, b) in enumerate(zip(ex, ey), 1) if a > b), None)
    delta = frozenset(m for m in range(1, len(xs)) if ex[m - 1] == ey[m - 1])
    majorized = first_violation is None
    strict = majorized and not delta and xs != ys
    return MajorizationReport(majorized, strict, delta, first_violation)


def majorized_by(x, y) -> bool:
    return majorize(x, y).majorized


def strictly_majorized_by(x, y) -> bool:
    return majorize(x, y).strict


def bounded_strictly(x, y) -> bool:
    """True when y's range strictly contains x's: max x < max y and min x > min y."""
    xs, ys = coefficients_of(x), coefficients_of(y)
    return xs[0] < ys[0] and xs[-1] > ys[-1]


def distance(x, y) -> float:
    xs, ys = coefficients_of(x), coefficients_of(y)
    if len(xs) != len(ys):
        raise DimensionMismatch(f"dimensions differ: {len(xs)} vs {len(ys)}")
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(xs, ys)))


def is_recovery_witness(psi, phi, chi, omega) -> bool:
    """Check the three relations that make omega a genuine recovery of chi's loss."""
    if len(coefficients_of(omega)) != len(coefficients_of(chi)):
        return False
    if coefficients_of(omega) == coefficients_of(chi) or sum(coefficients_of(omega)) != sum(coefficients_of(chi)):
        return False
    if not majorized_by(omega, chi):
        return False
    return majorized_by(tensor(psi, chi), tensor(phi, omega))

"""Uniformity indices and entanglement entropy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ZeroState
from .vectors import coefficients_of, compact


@dataclass(frozen=True)
class UniformityIndices:
    minimal_local: Fraction
    maximal_local: Fraction
    global_: Fraction

    def as_dict(self) -> dict:
        return {"l_u": self.minimal_local, "L_u": self.maximal_local, "g_u": self.global_}


def _successive_ratios(x) -> list[Fraction]:
    values = compact(x).values
    if values[0] == 0:
        raise ZeroState("all coefficients are zero")
    return [b / a for a, b in zip(values, values[1:])]


def minimal_local_uniformity(x) -> Fraction:
    """Smallest ratio between neighbouring distinct coefficients (1 if all equal)."""
    ratios = _successive_ratios(x)
    return min(ratios) if ratios else Fraction(1)


def maximal_local_uniformity(x) -> Fraction:
    """Largest ratio between neighbouring distinct coefficients (1 if all equal).

    A trailing zero contributes the ratio 0.
    """
    ratios = _successive_ratios(x)
    return max(ratios) if ratios else Fraction(1)


def global_uniformity(x) -> Fraction:
    coeffs = coefficients_of(x)
    if coeffs[0] == 0:
        raise ZeroState("all coefficients are zero")
    return coeffs[-1] / coeffs[0]


def indices(x) -> UniformityIndices:
    return UniformityIndices(
        minimal_local_uniformity(x), maximal_local_uniformity(x), global_uniformity(x)
    )


def entropy(x) -> float:
    """Shannon entropy in bits; float because logarithms are irrational."""
    return -sum(float(p) * math.log2(p) for p in coefficients_of(x) if p > 0) + 0.0

"""Closed-form decision when psi is strictly majorized by phi.

Only phi and the auxiliary chi matter. Write L for the maximal local
uniformity of chi and g for the global uniformity of phi:

* chi uniform on a strict subset of its levels (L = 0): recoverable exactly
  when n * a >= n' * (a + 1), with a = support of chi, n = dim phi and
  n' = support of phi;
* g < L < 1: recoverable;
* L = g: recoverable only for a two-level phi whose level multiplicities
  fit a pair of neighbouring levels of chi with that same ratio;
* otherwise (L < g, or chi maximally entangled): not recoverable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import InvalidState, NotStrict, PreconditionViolated, WitnessSearchFailed
from .solver import perturb, transfer_spec
from .uniformity import global_uniformity, maximal_local_uniformity
from .vectors import SchmidtVector, as_vector, compact, is_recovery_witness, majorize

MAX_HALVINGS = 64


class StrictCase(enum.Enum):
    UNIFORM_SUPPORT = "uniform_support"
    ABOVE_THRESHOLD = "above_threshold"
    CRITICAL_PATTERN = "critical_pattern"
    MAXIMALLY_ENTANGLED_AUX = "maximally_entangled_aux"
    BELOW_THRESHOLD = "below_threshold"
    NO_PATTERN_MATCH = "no_pattern_match"
    SUPPORT_TOO_SMALL = "support_too_small"


FEASIBLE_CASES = frozenset(
    {StrictCase.UNIFORM_SUPPORT, StrictCase.ABOVE_THRESHOLD, StrictCase.CRITICAL_PATTERN}
)


@dataclass(frozen=True)
class PatternMatch:
    """Where a two-level phi lines up with neighbouring levels ``boundary`` and ``boundary + 1`` of chi.

    ``copies`` is set when phi is literally ``copies`` repetitions of a
    contiguous stretch made of ``upper`` copies of the higher level and
    ``lower`` copies of the lower one.
    """

    boundary: int
    upper: int | None = None
    lower: int | None = None
    copies: int | None = None


@dataclass(frozen=True)
class StrictVerdict:
    feasible: bool
    case: StrictCase
    boundary: int | None = None
    match: PatternMatch | None = None
    detail: dict = field(default_factory=dict)


def _validate(phi, chi):
    if compact(phi).values[0] == 0 or len(compact(phi)) < 2:
        raise InvalidState("phi must be partially entangled")
    if compact(chi).values[0] == 0:
        raise InvalidState("chi has no positive coefficient")


def _boundaries_at(chi, ratio: Fraction) -> list[int]:
    values = compact(chi).values
    return [i for i in range(1, len(values)) if values[i] / values[i - 1] == ratio]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def match_critical_pattern(phi, chi) -> PatternMatch | None:
    """Find neighbouring levels of chi that a two-level phi can be matched against.

    Requires phi to have exactly two levels whose ratio equals the ratio of
    chi's levels ``i + 1`` and ``i``. With level multiplicities (M_a, M_b)
    in phi and (k_i, k_{i+1}) in chi, the match exists iff
    ``1 / k_{i+1} <= M_a / M_b <= k_i``.
    """
    phi_form, chi_form = compact(phi), compact(chi)
    if len(phi_form) != 2 or phi_form.values[1] == 0:
        return None
    ratio = phi_form.values[1] / phi_form.values[0]
    big, small = phi_form.multiplicities
    fallback = None
    for i in _boundaries_at(chi, ratio):
        k_hi, k_lo = chi_form.multiplicities[i - 1], chi_form.multiplicities[i]
        if not (big <= k_hi * small and small <= k_lo * big):
            continue
        for copies in _divisors(gcd(big, small)):
            upper, lower = big // copies, small // copies
            if upper <= k_hi and lower <= k_lo:
                return PatternMatch(i, upper, lower, copies)
        fallback = fallback or PatternMatch(i)
    return fallback


def decide_strict(phi, chi) -> StrictVerdict:
    _validate(phi, chi)
    chi_form = compact(chi)
    if len(chi_form) == 1:
        return StrictVerdict(False, StrictCase.MAXIMALLY_ENTANGLED_AUX)

    top = maximal_local_uniformity(chi)
    threshold = global_uniformity(phi)
    detail = {"L_u": top, "g_u": threshold}

    if top == 0:
        # chi is (c, ..., c, 0, ..., 0)
        n, n_support, a = len(phi), as_vector(phi).support, chi_form.multiplicities[0]
        detail.update(n=n, n_support=n_support, a=a)
        if n * a >= n_support * (a + 1):
            return StrictVerdict(True, StrictCase.UNIFORM_SUPPORT, 1, detail=detail)
        return StrictVerdict(False, StrictCase.SUPPORT_TOO_SMALL, detail=detail)

    if threshold < top:
        return StrictVerdict(True, StrictCase.ABOVE_THRESHOLD, _boundaries_at(chi, top)[0], detail=detail)
    if top < threshold:
        return StrictVerdict(False, StrictCase.BELOW_THRESHOLD, detail=detail)
    match = match_critical_pattern(phi, chi)
    if match is None:
        return StrictVerdict(False, StrictCase.NO_PATTERN_MATCH, detail=detail)
    return StrictVerdict(True, StrictCase.CRITICAL_PATTERN, match.boundary, match, detail)


@dataclass(frozen=True)
class StrictWitness:
    omega: SchmidtVector
    i: int
    j: int
    epsilon: Fraction


def witness_strict(psi, phi, chi, verdict: StrictVerdict | None = None) -> StrictWitness:
    """Move epsilon across the boundary named by the verdict, halving until it verifies."""
    if not majorize(psi, phi).strict:
        raise NotStrict("psi must be strictly majorized by phi")
    verdict = verdict or decide_strict(phi, chi)
    if not verdict.feasible:
        raise PreconditionViolated(f"no recovery possible ({verdict.case.value})")
    i = verdict.boundary
    epsilon = transfer_spec(chi, i, i + 1).epsilon_max
    for _ in range(MAX_HALVINGS):
        omega = perturb(chi, i, i + 1, epsilon)
        if is_recovery_witness(psi, phi, chi, omega):
            return StrictWitness(omega, i, i + 1, epsilon)
        epsilon /= 2
    raise WitnessSearchFailed(f"no epsilon verified after {MAX_HALVINGS} halvings")

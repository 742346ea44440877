"""Uses of the recovery criteria: concentration, mutual catalysis, many copies."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadParameters, DimensionMismatch, NotStrict, PreconditionViolated
from .strict import StrictVerdict, decide_strict
from .uniformity import global_uniformity, maximal_local_uniformity
from .vectors import (
    SchmidtVector,
    as_vector,
    majorize,
    majorized_by,
    tensor,
    tensor_power,
    to_fraction,
)


@dataclass(frozen=True)
class ConcentrationBounds:
    """Every coefficient of chi must lie in [gamma_min, gamma_max].

    The largest coefficient then ranges over the half-open interval
    (largest_low, largest_high].
    """

    gamma_min: Fraction
    gamma_max: Fraction
    largest_low: Fraction
    largest_high: Fraction
    feasible: bool


def concentration_bounds(a, b, k: int) -> ConcentrationBounds:
    """Which k-level auxiliaries let (a, 1-a) (x) chi reach (b, 1-b) (x) maximally entangled?"""
    a, b = to_fraction(a), to_fraction(b)
    if not (Fraction(1, 2) < a <= b <= 1) or k < 2:
        raise BadParameters("need 1/2 < a <= b <= 1 and k >= 2")
    if a == b:
        # only the uniform chi, which is not a strict loss of entanglement
        even = Fraction(1, k)
        return ConcentrationBounds(even, even, even, even, False)
    low = (1 - b) / (k * (1 - a))
    high = b / (k * a)
    largest_high = min(high, 1 - (k - 1) * low)
    return ConcentrationBounds(low, high, Fraction(1, k), largest_high, k * low < 1 < k * high)


def verify_concentration(psi, phi, chi, k: int) -> bool:
    chi = as_vector(chi)
    if chi.dim != k:
        raise DimensionMismatch(f"chi has dimension {chi.dim}, expected {k}")
    return majorized_by(tensor(psi, chi), tensor(phi, SchmidtVector.uniform(k)))


@dataclass(frozen=True)
class MutualCatalysisFlags:
    psi_to_phi: bool
    alpha_to_beta: bool
    joint: bool
    trivial_cross: bool

    @property
    def is_mutual_catalysis(self) -> bool:
        return (
            not self.psi_to_phi
            and not self.alpha_to_beta
            and self.joint
            and not self.trivial_cross
        )


def _reachable(x, y) -> bool:
    return len(x) == len(y) and majorized_by(x, y)


def mutual_catalysis_check(psi, phi, alpha, beta) -> MutualCatalysisFlags:
    """Neither pair converts alone, yet jointly they do, and not by simply swapping roles."""
    psi, phi, alpha, beta = (as_vector(v) for v in (psi, phi, alpha, beta))
    if psi.dim != phi.dim or alpha.dim != beta.dim:
        raise DimensionMismatch("each conversion needs matching dimensions")
    return MutualCatalysisFlags(
        psi_to_phi=majorized_by(psi, phi),
        alpha_to_beta=majorized_by(alpha, beta),
        joint=majorized_by(tensor(psi, alpha), tensor(phi, beta)),
        trivial_cross=_reachable(psi, beta) and _reachable(alpha, phi),
    )


def multicopy_threshold(chi, phi) -> int:
    """Smallest number of copies k with L_u(chi) > g_u(phi)**k."""
    top = maximal_local_uniformity(chi)
    if not 0 < top < 1:
        raise PreconditionViolated(f"need 0 < L_u(chi) < 1, got {top}")
    g = global_uniformity(phi)
    if g == 1:
        raise PreconditionViolated("phi is maximally entangled")
    k, power = 1, g
    while not top > power:
        k += 1
        power *= g
    return k


def multicopy_recover(psi, phi, chi, copies: int, mode: str = "target") -> StrictVerdict:
    """Decide recovery after tensoring ``copies`` copies of the target (or of chi)."""
    if copies < 1:
        raise BadParameters("copies must be at least 1")
    if not majorize(psi, phi).strict:
        raise NotStrict("psi must be strictly majorized by phi")
    if mode == "target":
        return decide_strict(tensor_power(phi, copies), chi)
    if mode == "auxiliary":
        return decide_strict(phi, tensor_power(chi, copies))
    raise BadParameters(f"unknown mode {mode!r}")

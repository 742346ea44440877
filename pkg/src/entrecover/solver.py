"""Exact decision procedure for recovery with a single-transfer auxiliary.

Any admissible recovered auxiliary can be pushed towards chi until it
differs from chi by one small transfer between two distinct values. So it
suffices to examine, for each ordered pair (i, j) of distinct values in the
compact form of chi, the family chi(i, j, eps) that moves eps from the last
copy of value i to the first copy of value j.

Along that family every entry of phi (x) chi(i, j, eps) is affine in eps.
Below the first crossing point the sorted order is frozen, so majorization
becomes a finite list of linear inequalities in eps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate, combinations

from .errors import BadPair, EpsilonOutOfRange, NotMajorized, WitnessSearchFailed
from .vectors import (
    SchmidtVector,
    coefficients_of,
    compact,
    is_recovery_witness,
    majorize,
    prefix_sums,
    tensor,
)


@dataclass(frozen=True)
class PerturbationSpec:
    i: int
    j: int
    epsilon_max: Fraction


def transfer_spec(chi, i: int, j: int) -> PerturbationSpec:
    """Validate a pair of distinct-value positions and bound the transfer size.

    The bound keeps the perturbed vector in the same sorted order.
    """
    values = compact(chi).values
    if not 1 <= i < j <= len(values):
        raise BadPair(f"need 1 <= i < j <= {len(values)}, got ({i}, {j})")
    if j == i + 1:
        bound = (values[i - 1] - values[i]) / 2
    else:
        bound = min(values[i - 1] - values[i], values[j - 2] - values[j - 1])
    return PerturbationSpec(i, j, bound)


def perturb(chi, i: int, j: int, epsilon) -> SchmidtVector:
    spec = transfer_spec(chi, i, j)
    epsilon = Fraction(epsilon)
    if not 0 <= epsilon <= spec.epsilon_max:
        raise EpsilonOutOfRange(f"epsilon {epsilon} outside [0, {spec.epsilon_max}]")
    form = compact(chi)
    coeffs = list(coefficients_of(chi))
    coeffs[form.last_position(i)] -= epsilon
    coeffs[form.first_position(j)] += epsilon
    return SchmidtVector.of(coeffs)


@dataclass(frozen=True)
class AffineEntry:
    """One coefficient of phi (x) chi(i, j, eps), equal to constant + slope * eps."""

    constant: Fraction
    slope: Fraction

    def at(self, epsilon: Fraction) -> Fraction:
        return self.constant + self.slope * epsilon


def affine_entries(phi, chi, spec: PerturbationSpec) -> list[AffineEntry]:
    form = compact(chi)
    give, take = form.last_position(spec.i), form.first_position(spec.j)
    entries = []
    for beta in coefficients_of(phi):
        for pos, gamma in enumerate(coefficients_of(chi)):
            slope = -beta if pos == give else beta if pos == take else Fraction(0)
            entries.append(AffineEntry(beta * gamma, slope))
    return entries


def leftmost_interval(phi, chi, spec: PerturbationSpec) -> tuple[Fraction, list[AffineEntry]]:
    """Return c1, the first crossing point in (0, bound], and the order valid on (0, c1].

    If no two entries cross inside the range, c1 is the bound itself.
    """
    entries = affine_entries(phi, chi, spec)
    c1 = spec.epsilon_max
    moving = [e for e in entries if e.slope != 0]
    for a in moving:
        for b in entries:
            if a.slope == b.slope:
                continue
            theta = (b.constant - a.constant) / (a.slope - b.slope)
            if 0 < theta < c1:
                c1 = theta
    middle = c1 / 2
    order = sorted(entries, key=lambda e: e.at(middle), reverse=True)
    return c1, order


def decide_pair(psi, phi, chi, spec: PerturbationSpec) -> Fraction | None:
    """Largest verified epsilon in (0, c1] for this pair, or None when no epsilon works.

    Each partial sum constraint A + B*eps >= C either holds for all small
    eps, bounds eps from above, or fails at every eps > 0.
    """
    if not majorize(psi, phi).majorized:
        raise NotMajorized("psi must be majorized by phi")
    c1, order = leftmost_interval(phi, chi, spec)
    targets = prefix_sums(tensor(psi, chi))
    constants = accumulate(e.constant for e in order)
    slopes = accumulate(e.slope for e in order)
    best = c1
    for a, b, c in zip(constants, slopes, targets):
        if a > c:
            if b < 0:
                best = min(best, (a - c) / -b)
        elif a == c:
            if b < 0:
                return None
        else:
            return None
    return best


@dataclass(frozen=True)
class TransferWitness:
    i: int
    j: int
    epsilon: Fraction
    omega: SchmidtVector


@dataclass(frozen=True)
class TransferVerdict:
    feasible: bool
    witness: TransferWitness | None
    pairs_examined: int


def distinct_pairs(chi):
    return combinations(range(1, len(compact(chi)) + 1), 2)


def decide_by_transfers(psi, phi, chi) -> TransferVerdict:
    """Exact decision for psi (x) chi -> phi (x) omega with omega strictly below chi."""
    if not majorize(psi, phi).majorized:
        raise NotMajorized("psi must be majorized by phi")
    examined = 0
    for i, j in distinct_pairs(chi):
        examined += 1
        spec = transfer_spec(chi, i, j)
        epsilon = decide_pair(psi, phi, chi, spec)
        if epsilon is None:
            continue
        omega = perturb(chi, i, j, epsilon)
        if not is_recovery_witness(psi, phi, chi, omega):
            raise WitnessSearchFailed(f"pair ({i}, {j}) at epsilon {epsilon} does not verify")
        return TransferVerdict(True, TransferWitness(i, j, epsilon, omega), examined)
    return TransferVerdict(False, None, examined)


def _dominated(lower: list[Fraction], upper: list[Fraction]) -> bool:
    lower, upper = sorted(lower, reverse=True), sorted(upper, reverse=True)
    return all(a <= b for a, b in zip(accumulate(lower), accumulate(upper)))


def grid_oracle(psi, phi, chi, grid_depth: int = 20) -> TransferVerdict:
    """Brute force: try eps = bound / 2**t for t = 1..grid_depth on every pair.

    Deliberately shares nothing with the interval logic above except the
    perturbation itself.
    """
    psi_c, phi_c, chi_c = (list(coefficients_of(v)) for v in (psi, phi, chi))
    lhs = [a * b for a in psi_c for b in chi_c]
    examined = 0
    for i, j in distinct_pairs(chi):
        examined += 1
        bound = transfer_spec(chi, i, j).epsilon_max
        for t in range(1, grid_depth + 1):
            epsilon = bound / 2**t
            omega = perturb(chi, i, j, epsilon)
            rhs = [a * b for a in phi_c for b in omega]
            if _dominated(lhs, rhs):
                return TransferVerdict(True, TransferWitness(i, j, epsilon, omega), examined)
    return TransferVerdict(False, None, examined)

"""Bundled worked examples, re-checked end to end by ``entrecover selftest``."""

from __future__ import annotations

from fractions import Fraction

from .applications import concentration_bounds, mutual_catalysis_check, verify_concentration
from .general import check_partition, construct_auxiliary, witness_general
from .solver import decide_by_transfers
from .strict import decide_strict
from .uniformity import indices
from .vectors import SchmidtVector, is_recovery_witness, tensor_power


def _vec(*values) -> SchmidtVector:
    return SchmidtVector.of(values)


def _two_level_patterns() -> bool:
    chi = _vec("3/5", "2/5")
    verdicts = [decide_strict(SchmidtVector.from_weights(w), chi).feasible for w in ([3, 3, 2, 2], [3, 3, 2], [3, 2, 2])]
    return verdicts == [True, False, False]


def _uniformity_values() -> bool:
    half = Fraction(1, 2)
    zero = Fraction(0)
    a = indices(_vec("1/2", "1/4", "1/4")).as_dict()
    b = indices(_vec("1/2", "1/4", "1/4", "0")).as_dict()
    return a == {"l_u": half, "L_u": half, "g_u": half} and b == {"l_u": zero, "L_u": half, "g_u": zero}


def _mutual_catalysis() -> bool:
    psi = _vec("0.33", "0.32", "0.3", "0.05")
    phi = _vec("0.6", "0.2", "0.14", "0.06")
    alpha = _vec("0.6", "0.3", "0.1", "0")
    beta = _vec("0.46", "0.46", "0.08", "0")
    flags = mutual_catalysis_check(psi, phi, alpha, beta)
    relabeled = decide_by_transfers(psi, beta, alpha)
    return flags.is_mutual_catalysis and relabeled.feasible


def _concentration() -> bool:
    bounds = concentration_bounds("3/5", "4/5", 2)
    psi, phi = _vec("3/5", "2/5"), _vec("4/5", "1/5")
    edge = Fraction(2, 3)
    over = edge + Fraction(1, 1000)
    return (
        (bounds.largest_low, bounds.largest_high) == (Fraction(1, 2), edge)
        and verify_concentration(psi, phi, _vec(edge, 1 - edge), 2)
        and not verify_concentration(psi, phi, _vec(over, 1 - over), 2)
    )


def _more_auxiliary_copies() -> bool:
    phi = SchmidtVector.from_weights([3, 3, 3, 3, 2, 2])
    chi = _vec("3/5", "2/5")
    return not decide_strict(phi, chi).feasible and decide_strict(phi, tensor_power(chi, 2)).feasible


def _constructions() -> bool:
    instances = [
        (("1/2", "1/4", "1/4"), ("1/2", "3/10", "1/5")),
        (("2/5", "2/5", "1/5"), ("1/2", "3/10", "1/5")),
        (("2/5", "1/4", "1/4", "1/10"), ("2/5", "3/10", "1/5", "1/10")),
        (
            ("1/4", "1/4", "3/20", "11/100", "11/100", "13/200", "13/200"),
            ("3/10", "1/5", "3/20", "3/25", "1/10", "2/25", "1/20"),
        ),
    ]
    for psi_raw, phi_raw in instances:
        psi, phi = _vec(*psi_raw), _vec(*phi_raw)
        built = construct_auxiliary(psi, phi)
        if not check_partition(psi, phi, built.chi, built.partition):
            return False
        omega = witness_general(psi, phi, built.chi, built.partition).omega
        if not is_recovery_witness(psi, phi, built.chi, omega):
            return False
    return True


CHECKS = {
    "two-level targets against a two-level auxiliary": _two_level_patterns,
    "uniformity indices of small vectors": _uniformity_values,
    "mutual catalysis and its relabeled recovery": _mutual_catalysis,
    "entanglement concentration window": _concentration,
    "two auxiliary copies unlock recovery": _more_auxiliary_copies,
    "auxiliary constructions for four equality patterns": _constructions,
}


def run_selftest() -> list[dict]:
    return [{"name": name, "passed": bool(check())} for name, check in CHECKS.items()]

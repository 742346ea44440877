"""Acceptance criteria. Each test carries a ``criterion`` marker and the run
ends with one PASS/FAIL line per criterion."""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction as F
from itertools import accumulate

import pytest

from conftest import (
    WITNESS_LOG,
    audit,
    brute_tensor,
    majorized_below,
    random_vector,
    strictly_below,
    with_equality_pattern,
)
from entrecover.applications import concentration_bounds, mutual_catalysis_check, verify_concentration
from entrecover.errors import UnsupportedStructure
from entrecover.general import Scheme, check_partition, construct_auxiliary, find_partition, witness_general
from entrecover.recovery import recover
from entrecover.solver import decide_by_transfers, grid_oracle
from entrecover.strict import StrictCase, decide_strict, witness_strict
from entrecover.uniformity import entropy, indices, maximal_local_uniformity
from entrecover.vectors import SchmidtVector, majorize, tensor_power

criterion = pytest.mark.criterion
W = SchmidtVector.from_weights


def V(*xs):
    return SchmidtVector.of(xs)


def shannon(xs) -> float:
    return -sum(float(x) * math.log2(float(x)) for x in xs if x > 0)


def prefix(xs) -> list[F]:
    return list(accumulate(sorted(xs, reverse=True)))


def strictly_below_all(x, y) -> bool:
    """x strictly majorized by y: equal totals and every interior prefix strictly smaller."""
    px, py = prefix(x), prefix(y)
    return px[-1] == py[-1] and all(a < b for a, b in zip(px[:-1], py[:-1]))


def min_successive_ratio(xs) -> F:
    levels = sorted(set(xs), reverse=True)
    if len(levels) == 1:
        return F(1)
    return min(b / a for a, b in zip(levels, levels[1:]))


CHI_3_5 = V("3/5", "2/5")
CATALYSIS = dict(
    psi=V("0.33", "0.32", "0.3", "0.05"),
    phi=V("0.6", "0.2", "0.14", "0.06"),
    alpha=V("0.6", "0.3", "0.1", "0"),
    beta=V("0.46", "0.46", "0.08", "0"),
)


@criterion("1", "two-level auxiliary (3/5, 2/5) against three two-level targets")
def test_two_level_triple():
    assert decide_strict(W([3, 3, 2, 2]), CHI_3_5).feasible
    assert not decide_strict(W([3, 3, 2]), CHI_3_5).feasible
    assert not decide_strict(W([3, 2, 2]), CHI_3_5).feasible


@criterion("2", "uniformity indices of (1/2, 1/4, 1/4) with and without a trailing zero")
def test_uniformity_values():
    half = F(1, 2)
    plain = indices(V("0.5", "0.25", "0.25"))
    padded = indices(V("0.5", "0.25", "0.25", "0"))
    assert (plain.minimal_local, plain.maximal_local, plain.global_) == (half, half, half)
    assert (padded.minimal_local, padded.global_) == (0, 0)
    assert padded.maximal_local == half


@criterion("3", "mutual catalysis of four 4-level states, relabeled recovery and entropies")
def test_mutual_catalysis_example():
    c = CATALYSIS
    assert mutual_catalysis_check(c["psi"], c["phi"], c["alpha"], c["beta"]).is_mutual_catalysis
    verdict = decide_by_transfers(c["psi"], c["beta"], c["alpha"])
    assert verdict.feasible
    assert audit("acceptance catalysis", c["psi"], c["beta"], c["alpha"], verdict.witness.omega)
    # the quoted omega is phi itself
    assert audit("acceptance quoted omega", c["psi"], c["beta"], c["alpha"], c["phi"])
    assert entropy(c["alpha"]) == pytest.approx(1.2955, abs=1e-3)
    assert entropy(c["phi"]) == pytest.approx(1.5472, abs=1e-3)
    assert shannon(c["alpha"]) == pytest.approx(entropy(c["alpha"]))
    assert entropy(verdict.witness.omega) > entropy(c["alpha"])


@criterion("4", "two-qubit concentration window (1/2, 2/3] is tight")
def test_concentration_window():
    bounds = concentration_bounds(F(3, 5), F(4, 5), 2)
    assert (bounds.largest_low, bounds.largest_high) == (F(1, 2), F(2, 3))
    psi, phi = V("3/5", "2/5"), V("4/5", "1/5")
    edge = F(2, 3)
    assert verify_concentration(psi, phi, V(edge, 1 - edge), 2)
    over = edge + F(1, 1000)
    assert not verify_concentration(psi, phi, V(over, 1 - over), 2)


@criterion("5", "a second copy of the auxiliary unlocks recovery")
def test_second_copy_unlocks():
    phi = W([3, 3, 3, 3, 2, 2])
    assert not decide_strict(phi, CHI_3_5).feasible
    verdict = decide_strict(phi, tensor_power(CHI_3_5, 2))
    assert verdict.feasible and verdict.case is StrictCase.CRITICAL_PATTERN


@criterion("6", "L_u of (p, 1-p) tensor powers stays (1-p)/p")
@pytest.mark.parametrize("p", [F(3, 5), F(7, 10)])
def test_qubit_powers_keep_their_local_uniformity(p):
    for k in range(1, 7):
        assert maximal_local_uniformity(tensor_power(V(p, 1 - p), k)) == (1 - p) / p


def _majorized_instance(rng):
    n, k = rng.randint(2, 5), rng.randint(2, 4)
    phi = random_vector(rng, n, zeros=rng.choice([0, 0, 0, 1]))
    psi = majorized_below(rng, phi)
    chi = random_vector(rng, k, zeros=rng.choice([0, 0, 1]))
    return psi, phi, chi


@criterion("7", "transfer search agrees with the depth-20 grid oracle on 200+ instances")
def test_oracle_concordance():
    rng = random.Random(7)
    disagreements, feasible = [], 0
    for _ in range(220):
        psi, phi, chi = _majorized_instance(rng)
        exact = decide_by_transfers(psi, phi, chi)
        grid = grid_oracle(psi, phi, chi, 20)
        if exact.feasible != grid.feasible:
            disagreements.append((psi, phi, chi))
        if exact.feasible:
            feasible += 1
            assert audit("acceptance algorithm2", psi, phi, chi, exact.witness.omega)
        if grid.feasible:
            assert audit("acceptance oracle", psi, phi, chi, grid.witness.omega)
    assert disagreements == []
    assert 0 < feasible < 220


def _strict_instances(rng):
    # plain random pairs
    for _ in range(70):
        phi = random_vector(rng, rng.randint(2, 5), zeros=rng.choice([0, 0, 1]))
        if len(set(phi)) == 1:
            continue
        yield strictly_below(rng, phi), phi, random_vector(rng, rng.randint(2, 4), zeros=rng.choice([0, 0, 1]))
    # two-level targets sitting exactly on the threshold of a two-level auxiliary
    for _ in range(30):
        hi, lo = rng.randint(2, 6), rng.randint(1, 5)
        if hi <= lo:
            hi, lo = lo + 1, hi
        k_hi, k_lo = rng.randint(1, 2), rng.randint(1, 2)
        chi = W([hi] * k_hi + [lo] * k_lo)
        phi = W([hi] * rng.randint(1, 4) + [lo] * rng.randint(1, 4))
        yield strictly_below(rng, phi), phi, chi
    # auxiliaries flat on part of their support
    for _ in range(20):
        a = rng.randint(1, 3)
        chi = W([1] * a + [0] * rng.randint(1, 2))
        phi = random_vector(rng, rng.randint(2, 5), zeros=rng.randint(0, 2))
        if len(set(phi)) == 1:
            continue
        yield strictly_below(rng, phi), phi, chi


@criterion("8", "closed-form strict decision agrees with transfer search on 100+ strict pairs")
def test_strict_concordance():
    rng = random.Random(8)
    seen, cases, disagreements = 0, set(), []
    for psi, phi, chi in _strict_instances(rng):
        assert majorize(psi, phi).strict
        closed = decide_strict(phi, chi)
        exact = decide_by_transfers(psi, phi, chi)
        seen += 1
        cases.add(closed.case)
        if closed.feasible != exact.feasible:
            disagreements.append((psi, phi, chi, closed.case))
        if closed.feasible:
            assert audit("acceptance strict", psi, phi, chi, witness_strict(psi, phi, chi, closed).omega)
    assert disagreements == []
    assert seen >= 100
    assert {StrictCase.CRITICAL_PATTERN, StrictCase.NO_PATTERN_MATCH, StrictCase.UNIFORM_SUPPORT} <= cases


@criterion("9", "tensoring with chi keeps strictness exactly when l_u(chi) > g_u(phi)")
def test_local_versus_global_uniformity():
    rng = random.Random(9)
    forward = converse = 0
    while forward + converse < 150 or min(forward, converse) < 40:
        phi = random_vector(rng, rng.randint(2, 4), zeros=rng.choice([0, 0, 1]))
        if len(set(phi)) == 1:
            continue
        chi = random_vector(rng, rng.randint(2, 4), top=rng.choice([4, 12]), zeros=rng.choice([0, 0, 1]))
        psi = strictly_below(rng, phi)
        beta, gamma = list(phi), list(chi)
        big = brute_tensor(psi, chi), brute_tensor(phi, chi)
        if min_successive_ratio(gamma) > beta[-1] / beta[0]:
            forward += 1
            assert strictly_below_all(*big)
        else:
            converse += 1
            n = len(beta)
            h = next(h for h in range(1, len(gamma)) if gamma[h] * beta[0] <= gamma[h - 1] * beta[-1])
            assert prefix(big[1])[n * h - 1] <= prefix(big[0])[n * h - 1]
            assert not strictly_below_all(*big)


@criterion("10", "constructed auxiliaries pass their condition and their witnesses verify")
@pytest.mark.parametrize(
    "pattern, sizes",
    [("first", range(3, 7)), ("last", range(3, 7)), ("both", range(4, 8)), ("two-three-five", range(7, 9))],
)
def test_constructor_soundness(pattern, sizes):
    rng = random.Random(pattern)
    cut_of = {
        "first": lambda n: [1],
        "last": lambda n: [n - 1],
        "both": lambda n: [1, n - 1],
        "two-three-five": lambda n: [2, 3, 5],
    }[pattern]
    for n in sizes:
        for _ in range(6):
            cuts = cut_of(n)
            psi, phi = with_equality_pattern(rng, n, cuts)
            assert sorted(majorize(psi, phi).delta_set) == cuts
            for scheme in (None, Scheme.GENERAL):
                built = construct_auxiliary(psi, phi, scheme)
                assert check_partition(psi, phi, built.chi, built.partition)
                omega = witness_general(psi, phi, built.chi, built.partition).omega
                assert audit(f"acceptance construct {pattern}", psi, phi, built.chi, omega)


@criterion("11", "every witness from every producer passes the independent three-relation check")
def test_witness_campaign():
    rng = random.Random(11)
    for _ in range(120):
        psi, phi, chi = _majorized_instance(rng)
        for method in ("auto", "algorithm2", "oracle", "general"):
            result = recover(psi, phi, chi, method=method, grid_depth=12)
            if result["witness"] is not None:
                audit(f"campaign {method}", psi, phi, chi, result["witness"]["omega"])
        if majorize(psi, phi).delta_set and list(psi) != list(phi):
            try:
                built = construct_auxiliary(psi, phi)
            except UnsupportedStructure:
                continue
            partition = find_partition(psi, phi, built.chi)
            if partition is not None:
                audit("campaign found partition", psi, phi, built.chi, witness_general(psi, phi, built.chi, partition).omega)
    bad = [source for source, ok in WITNESS_LOG if not ok]
    assert bad == []
    assert len(WITNESS_LOG) >= 100


@criterion("smoke", "n=50, k=6 instances decide in under a minute")
def test_large_instance_smoke():
    rng = random.Random(50)
    start = time.perf_counter()
    for _ in range(3):
        phi = random_vector(rng, 50, top=1000)
        psi = majorized_below(rng, phi)
        chi = random_vector(rng, 6, top=100)
        verdict = decide_by_transfers(psi, phi, chi)
        if verdict.feasible:
            assert audit("smoke", psi, phi, chi, verdict.witness.omega)
    assert time.perf_counter() - start < 60

from __future__ import annotations

import random
from fractions import Fraction
from itertools import accumulate, product

import pytest

from entrecover.vectors import SchmidtVector

_CRITERIA: dict[str, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, text): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label, text = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        # parametrized criteria pass only if every case passes
        earlier = _CRITERIA.get(label, (text, True))[1]
        _CRITERIA[label] = (text, earlier and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    bad = sum(1 for _, ok in WITNESS_LOG if not ok)
    if "11" in _CRITERIA and bad:
        # witnesses from the other suites count towards this criterion too
        _CRITERIA["11"] = (_CRITERIA["11"][0], False)
    for label, (text, passed) in sorted(_CRITERIA.items(), key=lambda kv: _label_key(kv[0])):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {text}")
    terminalreporter.write_line(f"witness audit: {len(WITNESS_LOG)} witnesses re-checked, {bad} violations")


def _label_key(label: str):
    head = label.split()[0]
    return (0, int(head)) if head.isdigit() else (1, label)


# --- independent helpers -------------------------------------------------


def brute_majorized(x, y) -> bool:
    """Sort-and-compare majorization, written without the library."""
    xs, ys = sorted(x, reverse=True), sorted(y, reverse=True)
    if len(xs) != len(ys) or sum(xs) != sum(ys):
        return False
    return all(a <= b for a, b in zip(accumulate(xs), accumulate(ys)))


def brute_tensor(x, y) -> list[Fraction]:
    return [a * b for a, b in product(x, y)]


def three_relations(psi, phi, chi, omega) -> bool:
    return (
        brute_majorized(brute_tensor(psi, chi), brute_tensor(phi, omega))
        and brute_majorized(omega, chi)
        and sorted(omega) != sorted(chi)
    )


WITNESS_LOG: list[tuple[str, bool]] = []


def audit(source: str, psi, phi, chi, omega) -> bool:
    """Record a witness produced anywhere in the suite and check it independently."""
    ok = three_relations(list(psi), list(phi), list(chi), list(omega))
    WITNESS_LOG.append((source, ok))
    return ok


# --- random instances ------------------------------------------------------


def random_vector(rng: random.Random, n: int, zeros: int = 0, top: int = 12) -> SchmidtVector:
    zeros = min(zeros, n - 1)
    weights = [rng.randint(1, top) for _ in range(n - zeros)] + [0] * zeros
    return SchmidtVector.from_weights(weights)


def mix_towards_flat(block, t: Fraction) -> list[Fraction]:
    mean = sum(block) / len(block)
    return [t * b + (1 - t) * mean for b in block]


def strictly_below(rng: random.Random, phi) -> SchmidtVector:
    t = Fraction(rng.randint(1, 19), 20)
    return SchmidtVector.of(mix_towards_flat(list(phi), t))


def majorized_below(rng: random.Random, phi) -> SchmidtVector:
    """A psi below phi whose equality pattern comes from random cut points.

    Each piece is either kept or pulled towards its own mean, so pieces
    never overlap and the result stays sorted.
    """
    coeffs = list(phi)
    n = len(coeffs)
    cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
    out = []
    for lo, hi in zip([0, *cuts], [*cuts, n]):
        piece = coeffs[lo:hi]
        if rng.random() < 0.3:
            out.extend(piece)
        else:
            out.extend(mix_towards_flat(piece, Fraction(rng.randint(0, 9), 10)))
    return SchmidtVector.of(out)


def with_equality_pattern(rng: random.Random, n: int, cuts: list[int]) -> tuple[SchmidtVector, SchmidtVector]:
    """(psi, phi) whose partial sums agree exactly at ``cuts`` and nowhere else."""
    phi = SchmidtVector.from_weights(sorted(rng.sample(range(1, 60), n), reverse=True))
    coeffs = list(phi)
    out = []
    for lo, hi in zip([0, *cuts], [*cuts, n]):
        out.extend(mix_towards_flat(coeffs[lo:hi], Fraction(rng.randint(1, 9), 10)))
    return SchmidtVector.of(out), phi


@pytest.fixture
def rng():
    return random.Random(20240611)

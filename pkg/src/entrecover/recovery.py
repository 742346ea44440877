"""One entry point that runs any of the recovery procedures on an instance."""

from __future__ import annotations

from .errors import BadParameters, NotStrict
from .general import find_partition, witness_general
from .solver import decide_by_transfers, grid_oracle
from .strict import decide_strict, witness_strict
from .uniformity import entropy
from .vectors import as_vector, majorize

METHODS = ("auto", "strict", "general", "algorithm2", "oracle")


def _witness(omega, chi, **extra) -> dict:
    return {**extra, "omega": omega, "entropy_gain": entropy(omega) - entropy(chi)}


def recover(psi, phi, chi, method: str = "auto", grid_depth: int = 20) -> dict:
    """Decide whether chi can lose some entanglement while psi -> phi is carried out.

    ``feasible`` is None when only a sufficient condition was checked and it
    did not hold.
    """
    psi, phi, chi = as_vector(psi), as_vector(phi), as_vector(chi)
    if method not in METHODS:
        raise BadParameters(f"unknown method {method!r}")
    if grid_depth < 1:
        raise BadParameters("grid depth must be positive")
    strict = majorize(psi, phi).strict
    if method == "auto":
        method = "strict" if strict else "algorithm2"

    if method == "strict":
        if not strict:
            raise NotStrict("psi must be strictly majorized by phi")
        verdict = decide_strict(phi, chi)
        out = {"feasible": verdict.feasible, "method": method, "case": verdict.case, "witness": None}
        if verdict.match is not None:
            out["match"] = verdict.match
        if verdict.feasible:
            w = witness_strict(psi, phi, chi, verdict)
            out["witness"] = _witness(w.omega, chi, i=w.i, j=w.j, epsilon=w.epsilon)
        return out

    if method == "general":
        partition = find_partition(psi, phi, chi)
        if partition is None:
            return {"feasible": None, "method": method, "witness": None}
        w = witness_general(psi, phi, chi, partition)
        return {
            "feasible": True,
            "method": method,
            "partition": {"layout": partition.layout, "block_dims": partition.block_dims},
            "witness": _witness(w.omega, chi, epsilon=w.epsilon, blocks=w.transfers),
        }

    solve = decide_by_transfers if method == "algorithm2" else (
        lambda p, q, c: grid_oracle(p, q, c, grid_depth)
    )
    verdict = solve(psi, phi, chi)
    out = {"feasible": verdict.feasible, "method": method, "pairs_examined": verdict.pairs_examined, "witness": None}
    if verdict.witness is not None:
        w = verdict.witness
        out["witness"] = _witness(w.omega, chi, i=w.i, j=w.j, epsilon=w.epsilon)
    return out

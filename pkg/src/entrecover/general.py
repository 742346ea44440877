"""Sufficient conditions for recovery when psi is majorized by phi but not strictly.

The pair (psi, phi) splits into equal blocks and strictly majorized blocks.
An auxiliary chi cut into conformal blocks can be recovered when its blocks
are spread out relative to phi's blocks in a controlled way. Two versions of
the condition are checked here:

* blockwise: one chi block per block of the decomposition;
* grouped: one chi block per equal block and one per maximal run of strict
  blocks, so chi can be much smaller.

``construct_auxiliary`` builds a chi satisfying one of them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .decomposition import BlockTag, NormalDecomposition, normal_decompose
from .errors import (
    BadPartition,
    ConstructionFailed,
    NoEqualityStructure,
    NotMajorized,
    PreconditionViolated,
    UnsupportedStructure,
    WitnessSearchFailed,
)
from .solver import transfer_spec, perturb
from .uniformity import global_uniformity, minimal_local_uniformity
from .vectors import (
    SchmidtVector,
    bounded_strictly,
    coefficients_of,
    compact,
    is_recovery_witness,
    majorize,
    tensor,
)

MAX_HALVINGS = 64
MAX_SLACK_ROUNDS = 32


class Layout(enum.Enum):
    BLOCKS = "blocks"
    GROUPS = "groups"


@dataclass(frozen=True)
class ConformalPartition:
    layout: Layout
    block_dims: tuple[int, ...]


def split(chi, dims) -> list[SchmidtVector]:
    coeffs = coefficients_of(chi)
    if any(d < 1 for d in dims) or sum(dims) != len(coeffs):
        raise BadPartition(f"block sizes {tuple(dims)} do not partition dimension {len(coeffs)}")
    out, start = [], 0
    for d in dims:
        out.append(SchmidtVector(coeffs[start:start + d]))
        start += d
    return out


def _spread_apart(chi_i, chi_j, phi_i, phi_j) -> bool:
    """chi_i/chi_j is strictly wider than phi_i/phi_j: chi_j (x) phi_i sits inside chi_i (x) phi_j."""
    return bounded_strictly(tensor(chi_j, phi_i), tensor(chi_i, phi_j))


def _nondegenerate(chi_blocks, strict_side) -> bool:
    # all of chi positive, and some strict-side block has room for a transfer
    if any(b.smallest == 0 for b in chi_blocks):
        return False
    return any(len(compact(chi_blocks[k])) > 1 for k in strict_side)


def check_blockwise_condition(psi, phi, chi, partition: ConformalPartition) -> bool:
    nd = normal_decompose(psi, phi)
    if partition.layout is not Layout.BLOCKS:
        raise BadPartition("expected a block layout")
    if len(partition.block_dims) != len(nd.blocks):
        raise BadPartition(f"need {len(nd.blocks)} chi blocks, got {len(partition.block_dims)}")
    chi_blocks = split(chi, partition.block_dims)
    phi_blocks = [b.target for b in nd.blocks]
    strict = sorted(nd.strict_indices)
    if not strict or not _nondegenerate(chi_blocks, [j - 1 for j in strict]):
        return False
    for i in nd.equal_indices:
        for j in strict:
            if not _spread_apart(chi_blocks[i - 1], chi_blocks[j - 1], phi_blocks[i - 1], phi_blocks[j - 1]):
                return False
    spread = min(minimal_local_uniformity(b) for b in chi_blocks)
    return spread > max(global_uniformity(phi_blocks[j - 1]) for j in strict)


def _nearest(i: int, group: frozenset[int]) -> int:
    return min(group, key=lambda k: abs(i - k))


def check_grouped_condition(psi, phi, chi, partition: ConformalPartition) -> bool:
    nd = normal_decompose(psi, phi)
    if partition.layout is not Layout.GROUPS:
        raise BadPartition("expected a group layout")
    groups = nd.groups()
    if len(partition.block_dims) != len(groups):
        raise BadPartition(f"need {len(groups)} chi blocks, got {len(partition.block_dims)}")
    chi_blocks = split(chi, partition.block_dims)

    def phi_block(k):
        return nd.block(k).target

    strict_pos = [p for p, (tag, _) in enumerate(groups) if tag is BlockTag.STRICT]
    equal_pos = [p for p, (tag, _) in enumerate(groups) if tag is BlockTag.EQUAL]
    if not strict_pos or not _nondegenerate(chi_blocks, strict_pos):
        return False

    for p in equal_pos:
        (i,) = groups[p][1]
        for q in strict_pos:
            run = groups[q][1]
            if not _spread_apart(chi_blocks[p], chi_blocks[q], phi_block(i), phi_block(_nearest(i, run))):
                return False

    worst_strict = max(global_uniformity(phi_block(j)) for j in nd.strict_indices)
    if min(minimal_local_uniformity(chi_blocks[q]) for q in strict_pos) <= worst_strict:
        return False
    if equal_pos:
        ends = max(
            global_uniformity(phi_block(end))
            for q in strict_pos
            for end in (min(groups[q][1]), max(groups[q][1]))
        )
        if min(minimal_local_uniformity(chi_blocks[p]) for p in equal_pos) <= ends:
            return False
    return True


def check_partition(psi, phi, chi, partition: ConformalPartition) -> bool:
    if partition.layout is Layout.BLOCKS:
        return check_blockwise_condition(psi, phi, chi, partition)
    return check_grouped_condition(psi, phi, chi, partition)


def _compositions(total: int, parts: int):
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0, *cuts, total)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def find_partition(psi, phi, chi, limit: int = 20000) -> ConformalPartition | None:
    """Search block layouts of chi for one passing either condition.

    Returns None when nothing passes within ``limit`` candidates; that is an
    inconclusive answer, not a proof of impossibility.
    """
    nd = normal_decompose(psi, phi)
    k = len(coefficients_of(chi))
    tried = 0
    for layout, parts in ((Layout.GROUPS, len(nd.groups())), (Layout.BLOCKS, len(nd.blocks))):
        if parts > k:
            continue
        for dims in _compositions(k, parts):
            tried += 1
            if tried > limit:
                return None
            partition = ConformalPartition(layout, dims)
            if check_partition(psi, phi, chi, partition):
                return partition
    return None


@dataclass(frozen=True)
class GeneralWitness:
    omega: SchmidtVector
    epsilon: Fraction
    transfers: tuple[int, ...]  # 0-based chi blocks that received a transfer


def _strict_side(psi, phi, partition: ConformalPartition) -> list[int]:
    nd = normal_decompose(psi, phi)
    if partition.layout is Layout.BLOCKS:
        return [j - 1 for j in sorted(nd.strict_indices)]
    return [p for p, (tag, _) in enumerate(nd.groups()) if tag is BlockTag.STRICT]


def witness_general(psi, phi, chi, partition: ConformalPartition) -> GeneralWitness:
    """Inside every strict-side chi block, move epsilon from its largest entry to its smallest."""
    blocks = split(chi, partition.block_dims)
    movable = [k for k in _strict_side(psi, phi, partition) if len(compact(blocks[k])) > 1]
    if not movable:
        raise WitnessSearchFailed("no strict-side block of chi has two distinct values")
    epsilon = min(
        transfer_spec(blocks[k], 1, len(compact(blocks[k]))).epsilon_max for k in movable
    )
    for _ in range(MAX_HALVINGS):
        pieces = [
            perturb(b, 1, len(compact(b)), epsilon) if k in movable else b
            for k, b in enumerate(blocks)
        ]
        omega = SchmidtVector.of(c for p in pieces for c in p)
        if is_recovery_witness(psi, phi, chi, omega):
            return GeneralWitness(omega, epsilon, tuple(movable))
        epsilon /= 2
    raise WitnessSearchFailed(f"no epsilon verified after {MAX_HALVINGS} halvings")


class Scheme(enum.Enum):
    FIRST_EQUAL = "delta1"
    LAST_EQUAL = "deltan1"
    BOTH_ENDS_EQUAL = "delta1n1"
    GENERAL = "general"


@dataclass(frozen=True)
class AuxConstruction:
    chi: SchmidtVector
    partition: ConformalPartition
    scheme: Scheme
    parameters: dict = field(default_factory=dict)


def _normalize(values) -> SchmidtVector:
    total = sum(values)
    return SchmidtVector.of([v / total for v in values], True)


def _first_equal(beta, slack):
    # chi = (g1, g2, g3) against phi blocks (b1 | b2..bn)
    r = (beta[1] - beta[-1]) / beta[-1]
    lam, mu = slack * r / 3, slack * 2 * r / 3
    g2 = Fraction(1)
    chi = [g2 * (1 + lam) * beta[0] / beta[1], g2, g2 * (1 + mu) * beta[-1] / beta[1]]
    return chi, (1, 2), {"lambda": lam, "mu": mu}


def _last_equal(beta, slack):
    # chi = (g1, g2, g3) against phi blocks (b1..b(n-1) | bn)
    r = (beta[0] - beta[-2]) / beta[-2]
    lam, mu = slack * r / 3, slack * 2 * r / 3
    g1 = Fraction(1)
    chi = [g1, g1 * (1 + mu) * beta[-2] / beta[0], g1 * (1 + lam) * beta[-1] / beta[0]]
    return chi, (2, 1), {"lambda": lam, "mu": mu}


def _both_ends_equal(beta, slack):
    # chi = (g1, g2, g3, g4) against phi blocks (b1 | b2..b(n-1) | bn)
    ratio = beta[1] / beta[-2]
    product = 1 + slack * (ratio - 1) / 2  # (1 + eta)(1 + mu), inside (1, ratio)
    mu = (product - 1) / 2
    lam = (product - 1) / 2
    eta = product / (1 + mu) - 1
    g2 = Fraction(1)
    chi = [
        g2 * (1 + lam) * beta[0] / beta[1],
        g2,
        g2 * (1 + eta) * (1 + mu) * beta[-2] / beta[1],
        g2 * (1 + mu) * beta[-1] / beta[1],
    ]
    return chi, (1, 2, 1), {"lambda": lam, "mu": mu, "eta": eta}


_CLOSED_FORMS = {
    Scheme.FIRST_EQUAL: _first_equal,
    Scheme.LAST_EQUAL: _last_equal,
    Scheme.BOTH_ENDS_EQUAL: _both_ends_equal,
}


def _scheme_for(delta: frozenset[int], n: int) -> Scheme:
    if delta == {1}:
        return Scheme.FIRST_EQUAL
    if delta == {n - 1}:
        return Scheme.LAST_EQUAL
    if delta == {1, n - 1}:
        return Scheme.BOTH_ENDS_EQUAL
    return Scheme.GENERAL


def _grouped_constraints(nd: NormalDecomposition):
    """Edges (u, v, w) meaning y_u < w * y_v for chi entries y in block order.

    Equal groups get one entry, strict runs get two (top, bottom).
    """
    nodes: list[tuple[int, str]] = []  # (group position, role)
    groups = nd.groups()
    for p, (tag, _) in enumerate(groups):
        roles = ("only",) if tag is BlockTag.EQUAL else ("top", "bottom")
        nodes.extend((p, role) for role in roles)
    index = {node: k for k, node in enumerate(nodes)}
    edges = [(k + 1, k, Fraction(1)) for k in range(len(nodes) - 1)]

    worst_strict = max(global_uniformity(nd.block(j).target) for j in nd.strict_indices)
    for p, (tag, members) in enumerate(groups):
        if tag is BlockTag.STRICT and worst_strict > 0:
            edges.append((index[p, "top"], index[p, "bottom"], 1 / worst_strict))
    for p, (tag, members) in enumerate(groups):
        if tag is not BlockTag.EQUAL:
            continue
        (i,) = members
        own = nd.block(i).target
        if own.smallest == 0:
            raise UnsupportedStructure(f"equal block {i} contains a zero coefficient")
        for q, (other, run) in enumerate(groups):
            if other is not BlockTag.STRICT:
                continue
            near = nd.block(_nearest(i, run)).target
            upper = near.largest / own.largest
            lower = near.smallest / own.smallest
            edges.append((index[q, "top"], index[p, "only"], upper))
            if lower > 0:
                edges.append((index[p, "only"], index[q, "bottom"], 1 / lower))
    dims = tuple(1 if tag is BlockTag.EQUAL else 2 for tag, _ in groups)
    return len(nodes), edges, dims


def _solve_ratios(size: int, edges, shrink: Fraction) -> list[Fraction] | None:
    """Bellman-Ford on multiplicative weights; None if some cycle has product below 1."""
    y = [Fraction(1)] * size
    for _ in range(size + 1):
        changed = False
        for u, v, w in edges:
            bound = w * shrink * y[v]
            if y[u] > bound:
                y[u] = bound
                changed = True
        if not changed:
            return y
    return None


def _construct_grouped(psi, phi, nd):
    size, edges, dims = _grouped_constraints(nd)
    slack = Fraction(1, 2)
    for _ in range(MAX_SLACK_ROUNDS):
        values = _solve_ratios(size, edges, 1 - slack)
        if values is not None:
            chi = _normalize(values)
            partition = ConformalPartition(Layout.GROUPS, dims)
            if check_grouped_condition(psi, phi, chi, partition):
                return AuxConstruction(chi, partition, Scheme.GENERAL, {"slack": slack})
        slack /= 2
    raise UnsupportedStructure(
        "no auxiliary with one entry per equal block and two per strict run satisfies the grouped condition"
    )


def construct_auxiliary(psi, phi, scheme: Scheme | None = None) -> AuxConstruction:
    """Build an auxiliary state that provably recovers part of the lost entanglement.

    ``scheme=None`` picks a closed form from the positions where the partial
    sums of psi and phi agree, falling back to the general solver.
    """
    report = majorize(psi, phi)
    if not report.majorized:
        raise NotMajorized(f"partial sums of psi exceed phi at m={report.first_violation}")
    if coefficients_of(psi) == coefficients_of(phi):
        raise PreconditionViolated("psi and phi coincide; nothing is lost")
    if not report.delta_set:
        raise NoEqualityStructure("psi is strictly majorized by phi; use the strict decision")
    beta = coefficients_of(phi)
    nd = normal_decompose(psi, phi)
    natural = _scheme_for(report.delta_set, len(beta))
    if scheme is None:
        scheme = natural if beta[-1] > 0 else Scheme.GENERAL
    if scheme is Scheme.GENERAL:
        return _construct_grouped(psi, phi, nd)
    if scheme is not natural:
        raise PreconditionViolated(
            f"scheme {scheme.value} needs a different equality pattern than {sorted(report.delta_set)}"
        )
    if beta[-1] == 0:
        raise PreconditionViolated(f"scheme {scheme.value} needs phi with full support")

    build = _CLOSED_FORMS[scheme]
    slack = Fraction(1)
    for _ in range(MAX_SLACK_ROUNDS):
        values, dims, params = build(beta, slack)
        chi = _normalize(values)
        partition = ConformalPartition(Layout.BLOCKS, dims)
        if check_blockwise_condition(psi, phi, chi, partition):
            return AuxConstruction(chi, partition, scheme, params)
        slack /= 2
    raise ConstructionFailed(f"scheme {scheme.value} did not satisfy its condition")

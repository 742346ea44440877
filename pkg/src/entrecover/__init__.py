"""Exact tools for deciding when entanglement lost in an LOCC conversion can be recovered."""

from .applications import (
    concentration_bounds,
    multicopy_recover,
    multicopy_threshold,
    mutual_catalysis_check,
    verify_concentration,
)
from .decomposition import group_indices, normal_decompose
from .general import (
    ConformalPartition,
    Layout,
    Scheme,
    check_blockwise_condition,
    check_grouped_condition,
    construct_auxiliary,
    find_partition,
    witness_general,
)
from .recovery import recover
from .solver import decide_by_transfers, decide_pair, grid_oracle, leftmost_interval, perturb
from .strict import decide_strict, match_critical_pattern, witness_strict
from .uniformity import entropy, indices
from .vectors import (
    SchmidtVector,
    bounded_strictly,
    compact,
    direct_sum,
    distance,
    majorize,
    parse,
    prefix_sum,
    tensor,
    tensor_power,
)

__version__ = "0.1.0"

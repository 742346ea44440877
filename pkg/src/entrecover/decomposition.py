"""Normal decomposition of a majorization pair into equal and strict blocks."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

from .errors import NotMajorized
from .vectors import SchmidtVector, coefficients_of, majorize


class BlockTag(enum.Enum):
    EQUAL = "equal"
    STRICT = "strict"


@dataclass(frozen=True)
class Block:
    source: SchmidtVector
    target: SchmidtVector
    tag: BlockTag
    start: int  # 0-based offset into the sorted vectors

    @property
    def dim(self) -> int:
        return self.source.dim


@dataclass(frozen=True)
class NormalDecomposition:
    """Blocks are numbered from 1 in the returned index sets."""

    blocks: tuple[Block, ...]
    equal_indices: frozenset[int]
    strict_indices: frozenset[int]
    equal_groups: tuple[frozenset[int], ...]
    strict_groups: tuple[frozenset[int], ...]

    def block(self, index: int) -> Block:
        return self.blocks[index - 1]

    def groups(self) -> list[tuple[BlockTag, frozenset[int]]]:
        """Equal singletons and strict runs, in block order."""
        tagged = [(BlockTag.EQUAL, g) for g in self.equal_groups]
        tagged += [(BlockTag.STRICT, g) for g in self.strict_groups]
        return sorted(tagged, key=lambda item: min(item[1]))


def group_index_sets(
    equal: Iterable[int], strict: Iterable[int]
) -> tuple[tuple[frozenset[int], ...], tuple[frozenset[int], ...]]:
    """Split equal indices into singletons and strict indices into maximal consecutive runs."""
    equal_groups = tuple(frozenset([i]) for i in sorted(equal))
    runs: list[list[int]] = []
    for j in sorted(strict):
        if runs and runs[-1][-1] == j - 1:
            runs[-1].append(j)
        else:
            runs.append([j])
    return equal_groups, tuple(frozenset(r) for r in runs)


def group_indices(decomposition: NormalDecomposition):
    return group_index_sets(decomposition.equal_indices, decomposition.strict_indices)


def normal_decompose(x, y) -> NormalDecomposition:
    """Cut x and y at every index where their partial sums agree.

    Pieces of length one are necessarily identical in x and y; runs of them
    are merged into a single equal block. Every longer piece is strictly
    majorized.
    """
    report = majorize(x, y)
    if not report.majorized:
        raise NotMajorized(f"partial sums of x exceed y at m={report.first_violation}")
    xs, ys = coefficients_of(x), coefficients_of(y)
    cuts = [0, *sorted(report.delta_set), len(xs)]

    pieces: list[tuple[int, int, BlockTag]] = []
    for lo, hi in zip(cuts, cuts[1:]):
        tag = BlockTag.EQUAL if xs[lo:hi] == ys[lo:hi] else BlockTag.STRICT
        if tag is BlockTag.EQUAL and pieces and pieces[-1][2] is BlockTag.EQUAL:
            pieces[-1] = (pieces[-1][0], hi, tag)
        else:
            pieces.append((lo, hi, tag))

    blocks = tuple(
        Block(
            SchmidtVector(xs[lo:hi]),
            SchmidtVector(ys[lo:hi]),
            tag,
            lo,
        )
        for lo, hi, tag in pieces
    )
    equal = frozenset(i for i, b in enumerate(blocks, 1) if b.tag is BlockTag.EQUAL)
    strict = frozenset(i for i, b in enumerate(blocks, 1) if b.tag is BlockTag.STRICT)
    equal_groups, strict_groups = group_index_sets(equal, strict)
    return NormalDecomposition(blocks, equal, strict, equal_groups, strict_groups)

"""PARTITION <-> equitable 2-coloring of star forests.

A proper 2-coloring of a star forest picks, per star, which of its two
proper colorings to use ("orientation": bit true means the center gets color
1 and the leaves color 2).  Deciding equitable 2-colorability is therefore a
subset-sum question over the per-star class contributions, solved here by
pseudo-polynomial dynamic programming; the hardness of the star-forest
problem lives in the magnitudes, via the reduction from PARTITION.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Coloring, StarForest, VertexId


@dataclass(frozen=True)
class PartitionInstance:
    """PARTITION input: positive integers to split into two equal-sum parts."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("instance must be non-empty")
        if any(v < 1 for v in self.values):
            raise ValueError("values must be positive integers")
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))

    @property
    def total(self) -> int:
        return sum(self.values)


def partition_exists(instance: PartitionInstance) -> bool:
    """Subset-sum oracle: can the values split into two equal-sum parts?"""
    total = instance.total
    if total % 2:
        return False
    half = total // 2
    reachable = 1  # bitset over subset sums
    for v in instance.values:
        reachable |= reachable << v
    return bool(reachable >> half & 1)


def reduce_partition(instance: PartitionInstance) -> StarForest:
    """Map a PARTITION instance to a star forest whose equitable
    2-colorability answers it: odd totals go to the fixed negative instance
    K_{1,3}, even totals to one star K_{1,v+1} per value."""
    if instance.total % 2:
        return StarForest((3,))
    return StarForest(tuple(v + 1 for v in instance.values))


def orientation_coloring(forest: StarForest, bits: tuple[bool, ...]) -> Coloring:
    """Proper 2-coloring from orientation bits (true: center gets color 1)."""
    if len(bits) != forest.n_components:
        raise ValueError("need one orientation bit per component")
    mapping: dict[VertexId, int] = {}
    for ci, bit in enumerate(bits):
        center_color, leaf_color = (1, 2) if bit else (2, 1)
        mapping[forest.center(ci)] = center_color
        for leaf in forest.leaves_of(ci):
            mapping[leaf] = leaf_color
    return Coloring(mapping)


def equitable_2colorable(forest: StarForest) -> tuple[bool, ...] | None:
    """Orientation whose 2-coloring is equitable (class sizes differ by at
    most one), or None.  Decided by DP over the achievable color-1 counts;
    reconstruction prefers bit true at the earliest components."""
    n_vertices = forest.vertex_count
    targets = {n_vertices // 2, -(-n_vertices // 2)}
    # reachable[i] = bitset of color-1 counts over components i..end
    reachable = [0] * (forest.n_components + 1)
    reachable[forest.n_components] = 1
    for ci in range(forest.n_components - 1, -1, -1):
        m = forest.stars[ci]
        reachable[ci] = (reachable[ci + 1] << 1) | (reachable[ci + 1] << m)
    hit = next((t for t in sorted(targets) if reachable[0] >> t & 1), None)
    if hit is None:
        return None
    bits: list[bool] = []
    remaining = hit
    for ci in range(forest.n_components):
        m = forest.stars[ci]
        # bit true contributes 1 to color-1, bit false contributes m
        if remaining >= 1 and reachable[ci + 1] >> (remaining - 1) & 1:
            bits.append(True)
            remaining -= 1
        else:
            bits.append(False)
            remaining -= m
    assert remaining == 0
    return tuple(bits)


def extract_partition(
    forest: StarForest, bits: tuple[bool, ...]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Reverse the even-sum reduction: indices whose leaves got color 1 form
    one part, the rest the other; both parts sum the original values equally.

    The orientation must induce an equitable coloring, and the forest must
    come from the even-sum branch (every star has at least two leaves)."""
    from .model import is_equitable_k_coloring

    if any(m < 2 for m in forest.stars):
        raise ValueError("not an even-sum reduction forest (some star has fewer than 2 leaves)")
    coloring = orientation_coloring(forest, bits)
    if not is_equitable_k_coloring(forest, coloring, 2):
        raise ValueError("orientation does not induce an equitable 2-coloring")
    values = [m - 1 for m in forest.stars]
    part_a = tuple(i for i, bit in enumerate(bits) if not bit)  # leaves colored 1
    part_b = tuple(i for i, bit in enumerate(bits) if bit)
    sum_a = sum(values[i] for i in part_a)
    sum_b = sum(values[i] for i in part_b)
    assert sum_a == sum_b, "equitable orientation must split values evenly"
    return part_a, part_b

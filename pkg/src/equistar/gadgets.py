"""List assignments that defeat equitable colorability, with verification.

Each generator builds an explicit k-assignment for its target forest; the
registry lets tests and the CLI verify every gadget by running the exact
solver and checking infeasibility.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .model import ListAssignment, StarForest, VertexId
from .solver import solve


def constant_assignment(forest: StarForest, k: int) -> ListAssignment:
    """Every vertex gets {1..k}."""
    if k < 1:
        raise ValueError("k must be positive")
    return ListAssignment.constant(forest, range(1, k + 1))


def _pair_pattern_lists(forest: StarForest, fancy: int, plain_value: frozenset[int]) -> dict:
    """Component ``fancy`` gets the four-color pair pattern, the rest get
    ``plain_value``.  The pattern pairs {1,2} against {3,4} on the first
    eight leaves so that either center choice forces two extra uses of the
    plain color that floods the other stars."""
    pair_lists = {
        1: frozenset({1, 3}),
        2: frozenset({1, 3}),
        3: frozenset({1, 4}),
        4: frozenset({1, 4}),
        5: frozenset({2, 3}),
        6: frozenset({2, 3}),
        7: frozenset({2, 4}),
        8: frozenset({2, 4}),
    }
    lists: dict[VertexId, frozenset[int]] = {}
    for v in forest.vertices():
        if v.component != fancy:
            lists[v] = plain_value
        elif v.slot == 0:
            lists[v] = frozenset({3, 4})
        else:
            lists[v] = pair_lists.get(v.slot, frozenset({3, 4}))
    return lists


def lemma_add_gadget(m1: int, m2: int) -> ListAssignment:
    """2-assignment defeating K_{1,m1} + K_{1,m2} when 8 <= m1 <= m2 <= m1+1.

    The second star is flooded with the constant list {1,2}; the first star's
    lists are drawn from {1,2,3,4} so that any center choice forces the
    flooded color past the equity cap.  Outside the stated range callers
    should use the constant assignment or the leaf-count-gap argument."""
    if not (8 <= m1 <= m2 <= m1 + 1):
        raise ValueError("gadget defined for 8 <= m1 <= m2 <= m1+1")
    forest = StarForest((m1, m2))
    return ListAssignment(forest, _pair_pattern_lists(forest, fancy=0, plain_value=frozenset({1, 2})))


def same_stars_odd_gadget(n: int, m: int) -> ListAssignment:
    """Constant {1,2} on an odd number n >= 3 of copies of K_{1,m}, m >= 3."""
    if n < 3 or n % 2 == 0:
        raise ValueError("n must be odd and at least 3")
    if m < 3:
        raise ValueError("gadget defined for m >= 3")
    return constant_assignment(StarForest((m,) * n), 2)


def same_stars_even_gadget(n: int, m: int) -> ListAssignment:
    """For an even number of identical stars with m >= 8: first component
    carries the four-color pair pattern, the others the constant {1,2}."""
    if n < 2 or n % 2:
        raise ValueError("n must be even and at least 2")
    if m < 8:
        raise ValueError("gadget defined for m >= 8")
    forest = StarForest((m,) * n)
    return ListAssignment(forest, _pair_pattern_lists(forest, fancy=0, plain_value=frozenset({1, 2})))


def tconstruct_gadget(k: int) -> tuple[StarForest, ListAssignment]:
    """Forest ((k-1)(k^3-k+2), k^3) with a layered block assignment that
    meets the usage-cap necessary condition yet is not equitably k-choosable.

    Component 0 is constant {1..k}.  Component 1's center gets {k+1..2k};
    its leaves split into k^2 blocks of k, block (i-1)k+j receiving
    {k+i} union O_j, where O_1..O_k are the (k-1)-subsets of {1..k} in
    lexicographic order (blocks ordered i-major, j-minor)."""
    if k < 2:
        raise ValueError("k must be at least 2")
    m1 = (k - 1) * (k**3 - k + 2)
    m2 = k**3
    forest = StarForest((m1, m2))
    base = frozenset(range(1, k + 1))
    subsets = [
        frozenset(c) for c in itertools.combinations(range(1, k + 1), k - 1)
    ]
    blocks = [
        frozenset({k + i}) | subsets[j - 1] for i in range(1, k + 1) for j in range(1, k + 1)
    ]
    lists: dict[VertexId, frozenset[int]] = {}
    for v in forest.vertices():
        if v.component == 0:
            lists[v] = base
        elif v.slot == 0:
            lists[v] = frozenset(range(k + 1, 2 * k + 1))
        else:
            lists[v] = blocks[(v.slot - 1) // k]
    return forest, ListAssignment(forest, lists)


@dataclass(frozen=True)
class Gadget:
    """Registry entry: a named defeating construction with its own scope."""

    name: str
    description: str
    applies: Callable[[StarForest, int], bool]
    build: Callable[[StarForest, int], ListAssignment]


def _constant_applies(forest: StarForest, k: int) -> bool:
    # in scope whenever the leaf counts overflow the cap argument for two stars
    if forest.n_components != 2 or min(forest.stars) < 1:
        return False
    from .model import rho

    m1, m2 = sorted(forest.stars)
    r = rho(forest, k)
    return m2 > r * (k - 1) - 1 - max(0, m1 - r + 1)


_REGISTRY: dict[str, Gadget] = {}


def _register(gadget: Gadget) -> None:
    _REGISTRY[gadget.name] = gadget


_register(
    Gadget(
        name="constant",
        description="constant {1..k} on a two-star forest past the cap bound",
        applies=_constant_applies,
        build=lambda forest, k: constant_assignment(forest, k),
    )
)
_register(
    Gadget(
        name="two-star-pairs",
        description="four-color pair pattern against a flooded constant star",
        applies=lambda forest, k: (
            k == 2
            and forest.n_components == 2
            and 8 <= forest.stars[0] <= forest.stars[1] <= forest.stars[0] + 1
        ),
        build=lambda forest, k: lemma_add_gadget(*forest.stars),
    )
)
_register(
    Gadget(
        name="identical-odd-constant",
        description="constant {1,2} on an odd number of identical stars",
        applies=lambda forest, k: (
            k == 2
            and forest.n_components >= 3
            and forest.n_components % 2 == 1
            and len(set(forest.stars)) == 1
            and forest.stars[0] >= 3
        ),
        build=lambda forest, k: same_stars_odd_gadget(forest.n_components, forest.stars[0]),
    )
)
_register(
    Gadget(
        name="identical-even-pairs",
        description="pair pattern on one star, constant {1,2} on the rest",
        applies=lambda forest, k: (
            k == 2
            and forest.n_components >= 2
            and forest.n_components % 2 == 0
            and len(set(forest.stars)) == 1
            and forest.stars[0] >= 8
        ),
        build=lambda forest, k: same_stars_even_gadget(forest.n_components, forest.stars[0]),
    )
)
_register(
    Gadget(
        name="cubic-blocks",
        description="layered block lists on ((k-1)(k^3-k+2), k^3)",
        applies=lambda forest, k: k >= 2
        and forest.stars == ((k - 1) * (k**3 - k + 2), k**3),
        build=lambda forest, k: tconstruct_gadget(k)[1],
    )
)


def registry() -> dict[str, Gadget]:
    return dict(_REGISTRY)


def verify_gadget(forest: StarForest, lists: ListAssignment, k: int) -> bool:
    """True iff the exact solver reports no equitable coloring exists."""
    if not lists.is_k_assignment(k):
        raise ValueError("gadget must be a k-assignment")
    return not solve(forest, lists, k).colorable


def export_gadget(name: str, forest: StarForest, lists: ListAssignment, k: int) -> dict:
    gadget = _REGISTRY[name]
    return {
        "gadget": name,
        "construction": gadget.description,
        "k": k,
        "forest": forest.to_json_dict(),
        **lists.to_json_dict(),
    }

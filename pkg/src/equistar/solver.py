"""Exact decision of equitable list-colorability of a star forest.

Given a k-assignment, decides whether a total, proper, list-respecting
coloring exists in which no color is used more than ``rho = ceil(|V|/k)``
times, and produces a witness when one does.

Three interchangeable strategies:

* ``center-enumeration`` -- enumerate center colors across components
  (lexicographic by component, colors ascending); for each combination the
  leaves form a capacity-constrained bipartite assignment problem (each leaf
  needs a color from its list minus its center's color, each color has a
  global remaining capacity), solved exactly by augmenting paths.  First
  success wins, so witnesses are deterministic.
* ``usage-dp`` -- dynamic programming over components with the per-color
  remaining-capacity vector as state; practical when the palette is small
  (constant-assignment instances with many components, where center
  enumeration would be exponential in the component count).
* ``backtracking`` -- plain depth-first search over vertices; a slow
  reference used for cross-checks.

Automatic selection: forests with at most two components always use center
enumeration (at most k^2 combinations); larger forests use the DP when the
palette has at most four colors and center enumeration otherwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .model import (
    Coloring,
    ListAssignment,
    StarForest,
    VertexId,
    is_equitable_list_coloring,
    rho,
)

STRATEGY_CENTER = "center-enumeration"
STRATEGY_DP = "usage-dp"
STRATEGY_BACKTRACK = "backtracking"
STRATEGIES = (STRATEGY_CENTER, STRATEGY_DP, STRATEGY_BACKTRACK)


@dataclass(frozen=True)
class SolveOutcome:
    colorable: bool
    witness: Coloring | None
    strategy: str
    nodes: int

    def to_json_dict(self) -> dict:
        return {
            "colorable": self.colorable,
            "strategy": self.strategy,
            "nodes": self.nodes,
            "witness": None if self.witness is None else self.witness.to_json_dict(),
        }


def _match(allowed: list[tuple[int, ...]], caps: dict[int, int]) -> tuple[list[int] | None, int]:
    """Assign one color per slot within per-color capacities, or fail.

    Exact (Kuhn's augmenting paths on the capacity-expanded graph), not
    heuristic.  Slots are processed in order and colors tried ascending,
    which fixes the returned assignment deterministically.
    """
    usage = {c: 0 for c in caps}
    holders: dict[int, list[int]] = {c: [] for c in caps}
    assign: list[int | None] = [None] * len(allowed)
    nodes = 0

    def take(i: int, c: int) -> None:
        assign[i] = c
        usage[c] += 1
        holders[c].append(i)

    def drop(i: int, c: int) -> None:
        assign[i] = None
        usage[c] -= 1
        holders[c].remove(i)

    def augment(i: int, banned: set[int]) -> bool:
        nonlocal nodes
        for c in allowed[i]:
            if c in banned or c not in caps:
                continue
            nodes += 1
            if usage[c] < caps[c]:
                take(i, c)
                return True
        for c in allowed[i]:
            if c in banned or caps.get(c, 0) == 0:
                continue
            banned.add(c)
            for j in list(holders[c]):
                drop(j, c)
                if augment(j, banned):
                    take(i, c)
                    return True
                take(j, c)
        return False

    for i in range(len(allowed)):
        if not augment(i, set()):
            return None, nodes
    return [c for c in assign], nodes  # type: ignore[misc]


def leaf_assignment(
    leaf_lists: list[tuple[int, ...]] | list[frozenset[int]] | list[set[int]],
    forbidden: list[int | None] | None,
    caps: dict[int, int],
) -> tuple[int, ...] | None:
    """Color each leaf from its list minus its forbidden color, using each
    color at most ``caps[color]`` times.  Returns the assignment in leaf
    order, or None iff infeasible."""
    if any(cap < 0 for cap in caps.values()):
        raise ValueError("capacities must be non-negative")
    if forbidden is None:
        forbidden = [None] * len(leaf_lists)
    if len(forbidden) != len(leaf_lists):
        raise ValueError("forbidden must align with leaf_lists")
    allowed = [
        tuple(sorted(set(lst) - ({fb} if fb is not None else set())))
        for lst, fb in zip(leaf_lists, forbidden)
    ]
    result, _ = _match(allowed, dict(caps))
    return None if result is None else tuple(result)


# -- raw core -----------------------------------------------------------------
#
# The hot loops (exhaustive choosability) bypass the dataclass layer: an
# instance is (stars, flat) where flat is a tuple of sorted color tuples in
# the fixed vertex order.


def _offsets(stars: tuple[int, ...]) -> list[int]:
    out, pos = [], 0
    for m in stars:
        out.append(pos)
        pos += m + 1
    return out


def _decide_center(
    stars: tuple[int, ...], flat: tuple[tuple[int, ...], ...], cap: int
) -> tuple[bool, list[int] | None, int]:
    offsets = _offsets(stars)
    palette = sorted({c for lst in flat for c in lst})
    centers = [flat[o] for o in offsets]
    nodes = 0
    for combo in itertools.product(*centers):
        nodes += 1
        caps = dict.fromkeys(palette, cap)
        feasible = True
        for c in combo:
            caps[c] -= 1
            if caps[c] < 0:
                feasible = False
                break
        if not feasible:
            continue
        allowed: list[tuple[int, ...]] = []
        for ci, m in enumerate(stars):
            cc = combo[ci]
            o = offsets[ci]
            for s in range(1, m + 1):
                allowed.append(tuple(c for c in flat[o + s] if c != cc))
        res, mn = _match(allowed, caps)
        nodes += mn
        if res is not None:
            colors: list[int] = []
            li = 0
            for ci, m in enumerate(stars):
                colors.append(combo[ci])
                colors.extend(res[li : li + m])
                li += m
            return True, colors, nodes
    return False, None, nodes


def _decide_dp(
    stars: tuple[int, ...], flat: tuple[tuple[int, ...], ...], cap: int
) -> tuple[bool, list[int] | None, int]:
    offsets = _offsets(stars)
    palette = sorted({c for lst in flat for c in lst})
    p = len(palette)
    idx = {c: i for i, c in enumerate(palette)}
    n = len(stars)
    nodes = 0

    vec_cache: dict[tuple[int, int], list[tuple[int, ...]]] = {}

    def leaf_vectors(comp: int, cc: int) -> list[tuple[int, ...]]:
        key = (comp, cc)
        if key in vec_cache:
            return vec_cache[key]
        vecs = {(0,) * p}
        o = offsets[comp]
        for s in range(1, stars[comp] + 1):
            allowed = [idx[c] for c in flat[o + s] if c != cc]
            new: set[tuple[int, ...]] = set()
            for v in vecs:
                for ci in allowed:
                    if v[ci] < cap:
                        w = list(v)
                        w[ci] += 1
                        new.add(tuple(w))
            vecs = new
            if not vecs:
                break
        out = sorted(vecs)
        vec_cache[key] = out
        return out

    memo: dict[tuple[int, tuple[int, ...]], bool] = {}

    def can(comp: int, caps: tuple[int, ...]) -> bool:
        nonlocal nodes
        if comp == n:
            return True
        key = (comp, caps)
        hit = memo.get(key)
        if hit is not None:
            return hit
        nodes += 1
        ok = False
        for cc in flat[offsets[comp]]:
            ci = idx[cc]
            if caps[ci] == 0:
                continue
            caps1 = list(caps)
            caps1[ci] -= 1
            for vec in leaf_vectors(comp, cc):
                nodes += 1
                if all(v <= c for v, c in zip(vec, caps1)):
                    rest = tuple(c - v for c, v in zip(caps1, vec))
                    if can(comp + 1, rest):
                        ok = True
                        break
            if ok:
                break
        memo[key] = ok
        return ok

    caps0 = (cap,) * p
    if not can(0, caps0):
        return False, None, nodes

    # Deterministic witness: walk components forward, committing the first
    # (center color, leaf usage vector) that the suffix DP can complete.
    colors: list[int] = []
    caps = caps0
    for comp in range(n):
        committed = False
        for cc in flat[offsets[comp]]:
            ci = idx[cc]
            if caps[ci] == 0:
                continue
            caps1 = list(caps)
            caps1[ci] -= 1
            for vec in leaf_vectors(comp, cc):
                if all(v <= c for v, c in zip(vec, caps1)) and can(
                    comp + 1, tuple(c - v for c, v in zip(caps1, vec))
                ):
                    o = offsets[comp]
                    allowed = [
                        tuple(c for c in flat[o + s] if c != cc)
                        for s in range(1, stars[comp] + 1)
                    ]
                    res, _ = _match(allowed, {palette[j]: vec[j] for j in range(p)})
                    assert res is not None, "achievable usage vector must be realizable"
                    colors.append(cc)
                    colors.extend(res)
                    caps = tuple(c - v for c, v in zip(caps1, vec))
                    committed = True
                    break
            if committed:
                break
        assert committed, "DP said feasible but no component option fit"
    return True, colors, nodes


def _decide_backtrack(
    stars: tuple[int, ...], flat: tuple[tuple[int, ...], ...], cap: int
) -> tuple[bool, list[int] | None, int]:
    offsets = _offsets(stars)
    order: list[tuple[int, int]] = []  # (flat index, center flat index or -1)
    for ci, m in enumerate(stars):
        o = offsets[ci]
        order.append((o, -1))
        for s in range(1, m + 1):
            order.append((o + s, o))
    usage: dict[int, int] = {}
    colors: list[int | None] = [None] * len(flat)
    nodes = 0

    def dfs(i: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        vi, center_vi = order[i]
        for c in flat[vi]:
            if center_vi >= 0 and colors[center_vi] == c:
                continue
            if usage.get(c, 0) >= cap:
                continue
            nodes += 1
            colors[vi] = c
            usage[c] = usage.get(c, 0) + 1
            if dfs(i + 1):
                return True
            usage[c] -= 1
            colors[vi] = None
        return False

    if dfs(0):
        return True, [c for c in colors], nodes  # type: ignore[misc]
    return False, None, nodes


_DECIDERS = {
    STRATEGY_CENTER: _decide_center,
    STRATEGY_DP: _decide_dp,
    STRATEGY_BACKTRACK: _decide_backtrack,
}


def _flatten(forest: StarForest, lists: ListAssignment) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sorted(lists.get(v))) for v in forest.vertices())


def _pick_strategy(stars: tuple[int, ...], flat: tuple[tuple[int, ...], ...]) -> str:
    if len(stars) <= 2:
        return STRATEGY_CENTER
    palette_size = len({c for lst in flat for c in lst})
    return STRATEGY_DP if palette_size <= 4 else STRATEGY_CENTER


def decide_raw(
    stars: tuple[int, ...],
    flat: tuple[tuple[int, ...], ...],
    cap: int,
    strategy: str | None = None,
) -> tuple[bool, list[int] | None, int]:
    """Core decision on the raw representation; returns (bit, colors, nodes)."""
    chosen = strategy or _pick_strategy(stars, flat)
    return _DECIDERS[chosen](stars, flat, cap)


def _coloring_from_flat(forest: StarForest, colors: list[int]) -> Coloring:
    return Coloring(dict(zip(forest.vertices(), colors)))


def solve(
    forest: StarForest, lists: ListAssignment, k: int, strategy: str | None = None
) -> SolveOutcome:
    """Decide equitable list-colorability; the witness, when present, always
    verifies under ``is_equitable_list_coloring``."""
    if lists.forest != forest:
        raise ValueError("assignment was built for a different forest shape")
    if not lists.is_k_assignment(k):
        raise ValueError(f"expected a {k}-assignment (uniform list size {k})")
    if strategy is not None and strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    flat = _flatten(forest, lists)
    chosen = strategy or _pick_strategy(forest.stars, flat)
    bit, colors, nodes = _DECIDERS[chosen](forest.stars, flat, rho(forest, k))
    witness = None
    if bit:
        assert colors is not None
        witness = _coloring_from_flat(forest, colors)
        assert is_equitable_list_coloring(forest, lists, witness, k), (
            "solver produced an invalid witness"
        )
    return SolveOutcome(colorable=bit, witness=witness, strategy=chosen, nodes=nodes)


def solve_center_fixed(
    forest: StarForest,
    lists: ListAssignment,
    k: int,
    center_colors: list[int] | tuple[int, ...],
) -> Coloring | None:
    """Extend fixed center colors to an equitable list coloring, if possible.

    Leaves of component i avoid ``center_colors[i]``; per-color usage stays
    within the global equity cap (centers consume capacity first)."""
    if len(center_colors) != forest.n_components:
        raise ValueError("need one center color per component")
    for ci in range(forest.n_components):
        if center_colors[ci] not in lists.get(forest.center(ci)):
            raise ValueError(f"center color {center_colors[ci]} not in center {ci}'s list")
    cap = rho(forest, k)
    palette = sorted(lists.palette)
    caps = dict.fromkeys(palette, cap)
    for c in center_colors:
        caps[c] -= 1
        if caps[c] < 0:
            return None
    leaf_lists = [tuple(sorted(lists.get(v))) for v in forest.leaves()]
    forbidden: list[int | None] = [center_colors[v.component] for v in forest.leaves()]
    res = leaf_assignment(leaf_lists, forbidden, caps)
    if res is None:
        return None
    mapping: dict[VertexId, int] = {}
    for ci in range(forest.n_components):
        mapping[forest.center(ci)] = center_colors[ci]
    for v, c in zip(forest.leaves(), res):
        mapping[v] = c
    coloring = Coloring(mapping)
    assert is_equitable_list_coloring(forest, lists, coloring, k)
    return coloring

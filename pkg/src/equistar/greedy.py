"""Greedy class extraction and the constructive two-star colorer.

The extraction process peels off color classes of exactly ``rho`` leaves
sharing a still-popular color (one appearing in at least ``rho`` remaining
leaf lists), at most ``k - 2`` times.  Afterwards either no popular color
remains and a cap-tracking greedy run finishes the job, or exactly ``k - 2``
classes were placed and the partial coloring is rebalanced by exchange moves
before one of three completion strategies takes over: solving the small
residual directly as a 2-assignment, the popular-color reduction lemma, or
stripping the surplus of the larger star and extending.

Every deterministic choice is pinned: popular colors by maximum residual
multiplicity then smallest id; class members by repeatedly taking the
lowest-slot eligible leaf from the component with more uncolored eligible
leaves (ties to the lower component index); list truncations keep the two
smallest colors.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .model import (
    Coloring,
    ListAssignment,
    StarForest,
    VertexId,
    is_equitable_list_coloring,
    rho,
)
from .solver import solve


@dataclass(frozen=True)
class GreedyOutcome:
    """Result of the class-extraction process."""

    forest: StarForest
    k: int
    cap: int
    classes: tuple[tuple[int, frozenset[VertexId]], ...]
    colored: Coloring
    residual_vertices: tuple[VertexId, ...]
    residual_lists: dict[VertexId, frozenset[int]]

    @property
    def used_colors(self) -> frozenset[int]:
        return frozenset(c for c, _ in self.classes)

    @property
    def residual_star_sizes(self) -> tuple[int, ...]:
        counts = [0] * self.forest.n_components
        for v in self.residual_vertices:
            if not v.is_center:
                counts[v.component] += 1
        return tuple(counts)

    def validate(self) -> None:
        assert len(self.classes) <= self.k - 2, "too many classes extracted"
        colors = [c for c, _ in self.classes]
        assert len(set(colors)) == len(colors), "class colors must be distinct"
        for c, members in self.classes:
            assert len(members) == self.cap, "every class has exactly cap members"
            assert all(not v.is_center for v in members), "classes contain leaves only"
        domain = self.colored.domain()
        assert domain == set().union(*(m for _, m in self.classes)) if self.classes else not domain
        for v in self.residual_vertices:
            assert len(self.residual_lists[v]) >= 2, "residual lists keep size >= 2"

    def trace_rows(self) -> list[dict]:
        rows = []
        for step, (color, members) in enumerate(self.classes, start=1):
            rows.append(
                {
                    "step": step,
                    "color": color,
                    "vertices": sorted(v.key() for v in members),
                }
            )
        rows.append(
            {
                "residual_leaves": self.residual_star_sizes,
                "residual_list_sizes": sorted(
                    len(self.residual_lists[v]) for v in self.residual_vertices
                ),
            }
        )
        return rows


def run_eps_greedy(forest: StarForest, lists: ListAssignment, k: int) -> GreedyOutcome:
    """Extract up to k-2 classes of exactly rho leaves sharing a color."""
    if forest.n_components != 2:
        raise ValueError("the process is defined on forests with exactly two stars")
    if k < 3:
        raise ValueError("the process is defined for k >= 3")
    if not lists.is_k_assignment(k):
        raise ValueError("expected a k-assignment")
    cap = rho(forest, k)
    remaining: list[VertexId] = list(forest.leaves())
    used: list[int] = []
    classes: list[tuple[int, frozenset[VertexId]]] = []
    for _ in range(k - 2):
        counts: Counter = Counter()
        for v in remaining:
            for c in lists.get(v):
                if c not in used:
                    counts[c] += 1
        popular = [(cnt, c) for c, cnt in counts.items() if cnt >= cap]
        if not popular:
            break
        _, color = max(popular, key=lambda t: (t[0], -t[1]))
        eligible = {v for v in remaining if color in lists.get(v)}
        chosen: set[VertexId] = set()
        for _ in range(cap):
            per_comp = Counter(v.component for v in eligible)
            comp = max(
                range(forest.n_components), key=lambda ci: (per_comp.get(ci, 0), -ci)
            )
            pick = min(v for v in eligible if v.component == comp)
            chosen.add(pick)
            eligible.remove(pick)
        classes.append((color, frozenset(chosen)))
        used.append(color)
        remaining = [v for v in remaining if v not in chosen]

    colored = Coloring(
        {v: color for color, members in classes for v in members}
    )
    residual = tuple(
        v for v in forest.vertices() if v not in colored.assignment
    )
    residual_lists = {v: lists.get(v) - frozenset(used) for v in residual}
    outcome = GreedyOutcome(
        forest=forest,
        k=k,
        cap=cap,
        classes=tuple(classes),
        colored=colored,
        residual_vertices=residual,
        residual_lists=residual_lists,
    )
    outcome.validate()
    return outcome


COLORABLE_NOW = "colorable-now"
NEEDS_REBALANCE = "needs-rebalance"


@dataclass(frozen=True)
class Disposition:
    status: str
    completion: Coloring | None


def _popular_color(
    leaf_lists: list[frozenset[int]], cap: int
) -> int | None:
    counts: Counter = Counter()
    for colors in leaf_lists:
        for c in colors:
            counts[c] += 1
    hits = sorted(c for c, cnt in counts.items() if cnt >= cap)
    return hits[0] if hits else None


def _cap_greedy_complete(
    forest: StarForest,
    cap: int,
    base: dict[VertexId, int],
    residual_lists: dict[VertexId, frozenset[int]],
) -> dict[VertexId, int] | None:
    """Greedy completion, centers first, never exceeding the usage cap.

    Succeeds whenever no color is popular among the residual leaf lists: a
    leaf's blocked color is held by at most cap-2 other leaves plus at most
    one center, and a center always has a color the other center missed."""
    usage: Counter = Counter(base.values())
    out = dict(base)
    todo = sorted(residual_lists, key=lambda v: (v.slot != 0, v))
    for v in todo:
        banned = out.get(VertexId(v.component, 0))
        choice = min(
            (c for c in residual_lists[v] if c != banned and usage[c] < cap),
            default=None,
        )
        if choice is None:
            return None
        out[v] = choice
        usage[choice] += 1
    return out


def post_greedy_disposition(outcome: GreedyOutcome) -> Disposition:
    """Either finish greedily (no color is popular among residual leaf
    lists, so no color can overflow the cap) or certify that exactly k-2
    classes were extracted and rebalancing is required."""
    leaf_lists = [
        outcome.residual_lists[v] for v in outcome.residual_vertices if not v.is_center
    ]
    if _popular_color(leaf_lists, outcome.cap) is None:
        completed = _cap_greedy_complete(
            outcome.forest, outcome.cap, dict(outcome.colored.assignment), outcome.residual_lists
        )
        assert completed is not None, "greedy completion cannot fail without a popular color"
        coloring = Coloring(completed)
        return Disposition(COLORABLE_NOW, coloring)
    assert len(outcome.classes) == outcome.k - 2, (
        "a popular color remains, so the process must have run all k-2 steps"
    )
    return Disposition(NEEDS_REBALANCE, None)


@dataclass
class RebalanceState:
    """A partial coloring with k-2 full classes on leaves, plus the identity
    of the smaller star ("side A"); tracked moves preserve membership in the
    family (leaf-only domain, distinct class colors, classes of size cap)."""

    forest: StarForest
    k: int
    cap: int
    lists: ListAssignment
    coloring: dict[VertexId, int]
    side_a: int  # component index of the smaller star

    @property
    def side_b(self) -> int:
        return 1 - self.side_a

    def uncolored(self, component: int) -> list[VertexId]:
        return [v for v in self.forest.leaves_of(component) if v not in self.coloring]

    @property
    def mu_a(self) -> int:
        return len(self.uncolored(self.side_a))

    @property
    def mu_b(self) -> int:
        return len(self.uncolored(self.side_b))

    def validate(self) -> None:
        usage = Counter(self.coloring.values())
        assert len(usage) == self.k - 2, "exactly k-2 classes"
        assert all(cnt == self.cap for cnt in usage.values()), "classes of size cap"
        assert all(not v.is_center for v in self.coloring), "leaves only"
        for v, c in self.coloring.items():
            assert c in self.lists.get(v), "classes respect lists"

    @classmethod
    def from_greedy(cls, outcome: GreedyOutcome, lists: ListAssignment) -> "RebalanceState":
        stars = outcome.forest.stars
        side_a = 0 if stars[0] <= stars[1] else 1
        state = cls(
            forest=outcome.forest,
            k=outcome.k,
            cap=outcome.cap,
            lists=lists,
            coloring=dict(outcome.colored.assignment),
            side_a=side_a,
        )
        state.validate()
        return state


def rebalance(state: RebalanceState) -> RebalanceState:
    """Exchange moves to a fixpoint: while the uncolored counts differ by at
    least 2, move a color from a colored light-side leaf to an uncolored
    heavy-side leaf whose list contains it.  Each move shrinks the gap by 2,
    so a fixpoint is always reached; class sizes and colors are unchanged."""
    coloring = dict(state.coloring)
    forest = state.forest
    while True:
        mus = {ci: [v for v in forest.leaves_of(ci) if v not in coloring] for ci in (0, 1)}
        gap = len(mus[0]) - len(mus[1])
        if abs(gap) <= 1:
            break
        heavy, light = (0, 1) if gap > 0 else (1, 0)
        moved = False
        for b in mus[heavy]:
            for w in forest.leaves_of(light):
                if w in coloring and coloring[w] in state.lists.get(b):
                    coloring[b] = coloring.pop(w)
                    moved = True
                    break
            if moved:
                break
        if not moved:
            break
    new_state = RebalanceState(
        forest=forest,
        k=state.k,
        cap=state.cap,
        lists=state.lists,
        coloring=coloring,
        side_a=state.side_a,
    )
    new_state.validate()
    return new_state


class HypothesisError(ValueError):
    """A named hypothesis of a constructive subroutine failed."""

    def __init__(self, clause: str):
        super().__init__(f"hypothesis violated: {clause}")
        self.clause = clause


def lemma_reduce_color(
    forest: StarForest, lists: ListAssignment, color: int
) -> Coloring:
    """Proper list coloring of a two-star forest using no color more than
    floor((m1+m2+2)/2) times, given a color that popular among the leaves.

    Requires stars (m1, m2) with m1 >= 0 and m2 >= max(2, m1) (the larger
    star must be component 1), lists of size >= 3 on the larger star's
    leaves and >= 2 elsewhere, and ``color`` present in at least
    floor((m1+m2+2)/2) leaf lists.  The construction colors every small-star
    leaf holding the color, tops up from the larger star to exactly that
    many uses, then completes greedily with the centers first.
    """
    if forest.n_components != 2:
        raise HypothesisError("forest must have exactly two stars")
    m1, m2 = forest.stars
    if m1 < 0 or m2 < max(2, m1):
        raise HypothesisError("need m1 >= 0 and m2 >= max(2, m1)")
    sigma = (m1 + m2 + 2) // 2
    for v in forest.leaves_of(1):
        if len(lists.get(v)) < 3:
            raise HypothesisError("larger-star leaf lists must have size >= 3")
    for v in forest.vertices():
        if v.component == 1 and not v.is_center:
            continue
        if len(lists.get(v)) < 2:
            raise HypothesisError("lists outside the larger star's leaves must have size >= 2")
    holders_a = [v for v in forest.leaves_of(0) if color in lists.get(v)]
    holders_b = [v for v in forest.leaves_of(1) if color in lists.get(v)]
    if len(holders_a) + len(holders_b) < sigma:
        raise HypothesisError("color must appear in at least floor((m1+m2+2)/2) leaf lists")

    out: dict[VertexId, int] = {v: color for v in holders_a}
    for v in holders_b[: sigma - len(holders_a)]:
        out[v] = color
    usage = Counter(out.values())
    assert usage[color] == sigma

    centers = [forest.center(0), forest.center(1)]
    rest = [v for v in forest.vertices() if v not in out and not v.is_center]
    for v in centers + rest:
        available = lists.get(v) - {color}
        banned = out.get(VertexId(v.component, 0)) if not v.is_center else None
        choice = min(c for c in available if c != banned)
        out[v] = choice
        usage[choice] += 1
    coloring = Coloring(out)
    assert max(usage.values()) <= sigma, "construction exceeded the usage bound"
    from .model import is_proper

    assert is_proper(forest, coloring)
    return coloring


@dataclass(frozen=True)
class MainOutcome:
    """Constructive coloring with an audit trail of the path taken."""

    coloring: Coloring
    path: str
    fallback: bool
    reason: str | None
    greedy: GreedyOutcome | None


def _truncate_two(colors: frozenset[int]) -> frozenset[int]:
    return frozenset(sorted(colors)[:2])


def _solve_sub_two_assignment(
    pairs: list[tuple[list[VertexId], VertexId]],
    residual_lists: dict[VertexId, frozenset[int]],
) -> dict[VertexId, int] | None:
    """Solve the residual as a 2-assignment on its own smaller forest.

    ``pairs`` gives, per component, the uncolored leaves and the center.
    Returns the coloring mapped back to original vertices, or None."""
    sub_stars = tuple(len(leaves) for leaves, _ in pairs)
    sub = StarForest(sub_stars)
    mapping: dict[VertexId, VertexId] = {}
    sub_lists: dict[VertexId, frozenset[int]] = {}
    for ci, (leaves, center) in enumerate(pairs):
        mapping[sub.center(ci)] = center
        sub_lists[sub.center(ci)] = residual_lists[center]
        for slot, leaf in enumerate(leaves, start=1):
            mapping[VertexId(ci, slot)] = leaf
            sub_lists[VertexId(ci, slot)] = residual_lists[leaf]
    outcome = solve(sub, ListAssignment(sub, sub_lists), 2)
    if not outcome.colorable:
        return None
    assert outcome.witness is not None
    return {mapping[v]: c for v, c in outcome.witness.assignment.items()}


def theorem_main_color(forest: StarForest, lists: ListAssignment, k: int) -> MainOutcome:
    """Equitable list coloring of a two-star forest under the sufficiency
    conditions m2 <= rho*(k-1)-1 and m1+m2 <= 15 + rho*(k-2).

    Follows the constructive route: class extraction, rebalancing to a
    no-improving-exchange partial coloring, then one of three completions.
    Every intermediate claim is checked at runtime; if any check fails the
    instance is flagged and the exact solver finishes (the conditions
    guarantee a coloring exists, so the fallback cannot fail).
    """
    if forest.n_components != 2:
        raise ValueError("defined for forests with exactly two stars")
    m1, m2 = sorted(forest.stars)
    if m1 < 1:
        raise ValueError("both stars need at least one leaf")
    if k < 1:
        raise ValueError("k must be positive")
    cap = rho(forest, k)
    if not (m2 <= cap * (k - 1) - 1 and m1 + m2 <= 15 + cap * (k - 2)):
        raise ValueError("the sufficiency conditions do not hold; use the exact solver")
    if not lists.is_k_assignment(k):
        raise ValueError("expected a k-assignment")

    def finish(base: dict[VertexId, int], path: str, greedy: GreedyOutcome | None) -> MainOutcome:
        coloring = Coloring(base)
        if is_equitable_list_coloring(forest, lists, coloring, k):
            return MainOutcome(coloring, path, False, None, greedy)
        return fallback(f"{path} produced a non-equitable coloring", greedy)

    def fallback(reason: str, greedy: GreedyOutcome | None) -> MainOutcome:
        outcome = solve(forest, lists, k)
        assert outcome.colorable, "sufficiency conditions guarantee a coloring"
        assert outcome.witness is not None
        return MainOutcome(outcome.witness, "fallback", True, reason, greedy)

    if k <= 2 or cap == 1:
        outcome = solve(forest, lists, k)
        assert outcome.colorable and outcome.witness is not None
        return MainOutcome(outcome.witness, "exact-small", False, None, None)

    greedy_outcome = run_eps_greedy(forest, lists, k)
    disposition = post_greedy_disposition(greedy_outcome)
    if disposition.status == COLORABLE_NOW:
        assert disposition.completion is not None
        return MainOutcome(disposition.completion, "greedy-complete", False, None, greedy_outcome)

    state = rebalance(RebalanceState.from_greedy(greedy_outcome, lists))
    g = state.coloring
    used = frozenset(g.values())
    residual = [v for v in forest.vertices() if v not in g]
    res_lists = {v: lists.get(v) - used for v in residual}
    if any(len(colors) < 2 for colors in res_lists.values()):
        return fallback("residual list shrank below 2", greedy_outcome)

    leaf_lists = [res_lists[v] for v in residual if not v.is_center]
    popular = _popular_color(leaf_lists, cap)
    if popular is None:
        completed = _cap_greedy_complete(forest, cap, g, res_lists)
        if completed is None:
            return fallback("cap-greedy completion failed unexpectedly", greedy_outcome)
        return finish(completed, "post-rebalance-complete", greedy_outcome)

    a, b = state.side_a, state.side_b
    unc_a, unc_b = state.uncolored(a), state.uncolored(b)
    mu_a, mu_b = len(unc_a), len(unc_b)

    if abs(mu_a - mu_b) <= 1:
        # small residual: solve directly as a 2-assignment
        if not (mu_a >= 1 and mu_b >= 1 and mu_a + mu_b <= 15):
            return fallback("balanced residual out of range", greedy_outcome)
        trunc = {v: _truncate_two(res_lists[v]) for v in residual}
        sub = _solve_sub_two_assignment(
            [(unc_a, forest.center(a)), (unc_b, forest.center(b))], trunc
        )
        if sub is None:
            return fallback("balanced residual not 2-solvable", greedy_outcome)
        return finish({**g, **sub}, "balanced-residual", greedy_outcome)

    heavy, light = (b, a) if mu_b > mu_a else (a, b)
    unc_heavy = state.uncolored(heavy)
    unc_light = state.uncolored(light)
    light_fully_uncolored = len(unc_light) == forest.stars[light]

    if not light_fully_uncolored or heavy == a:
        # reduction-lemma case: the exchange fixpoint forces size-3 lists on
        # the heavy side once the light side has a colored leaf
        if heavy == a and len(unc_b) == forest.stars[b]:
            return fallback("larger star fully uncolored while smaller is heavy", greedy_outcome)
        if any(len(res_lists[v]) < 3 for v in unc_heavy):
            return fallback("heavy-side residual list of size 2 after rebalancing", greedy_outcome)
        pairs = [(unc_light, forest.center(light)), (unc_heavy, forest.center(heavy))]
        sub_stars = (len(unc_light), len(unc_heavy))
        subforest = StarForest(sub_stars)
        mapping: dict[VertexId, VertexId] = {}
        sub_lists: dict[VertexId, frozenset[int]] = {}
        for ci, (leaves, center) in enumerate(pairs):
            mapping[subforest.center(ci)] = center
            sub_lists[subforest.center(ci)] = res_lists[center]
            for slot, leaf in enumerate(leaves, start=1):
                mapping[VertexId(ci, slot)] = leaf
                sub_lists[VertexId(ci, slot)] = res_lists[leaf]
        try:
            reduced = lemma_reduce_color(
                subforest, ListAssignment(subforest, sub_lists), popular
            )
        except HypothesisError as exc:
            return fallback(f"reduction lemma rejected the residual: {exc.clause}", greedy_outcome)
        sub = {mapping[v]: c for v, c in reduced.assignment.items()}
        return finish({**g, **sub}, "popular-color-reduction", greedy_outcome)

    # light side fully uncolored (and light == a): strip the surplus of the
    # heavy star, solve the equal-size residual, then extend past the center
    d = mu_b - mu_a
    if not (mu_b <= cap - 1 and 2 * mu_a <= 15 and mu_a >= 1):
        return fallback("strip case out of range", greedy_outcome)
    trunc = {v: _truncate_two(res_lists[v]) for v in residual}
    stripped = unc_heavy[-d:]
    kept = unc_heavy[:-d]
    sub = _solve_sub_two_assignment(
        [(unc_light, forest.center(light)), (kept, forest.center(heavy))], trunc
    )
    if sub is None:
        return fallback("equal residual not 2-solvable", greedy_outcome)
    big_center_color = sub[forest.center(heavy)]
    full = {**g, **sub}
    for v in stripped:
        options = sorted(trunc[v] - {big_center_color})
        if not options:
            return fallback("stripped leaf has no color after truncation", greedy_outcome)
        full[v] = options[0]
    return finish(full, "strip-and-extend", greedy_outcome)

"""Equitable k-choosability by exhaustion over canonical assignments.

The verdict quantifies over every k-assignment.  Exhaustion runs over the
canonical classes of the *dominating family*: assignments whose palette
colors pairwise co-occur in some list.  Merging two never-co-occurring
colors is injective on every list and any equitable coloring of the merged
assignment pulls back, so a defeating assignment stays defeating under
merges and every assignment outside the family is dominated by one inside
(see ``enumeration.domination_palette_bound``).  Hence

* if some family member is solver-infeasible, it is a genuine witness that
  the forest is not equitably k-choosable;
* if every family member is solver-colorable and the enumeration completed,
  every k-assignment over any palette is equitably colorable.

Verdicts are deterministic by default: the witness is the first defeating
class in canonical (ascending-encoding) order of the family traversal.
``fast`` mode probes the constant assignment before enumerating and may
therefore return a different (equally valid) witness; it is labeled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .enumeration import (
    CanonicalAssignment,
    _assignment_from_encoding,
    _iter_canonical_raw,
    domination_palette_bound,
)
from .gadgets import constant_assignment
from .model import StarForest, rho
from .solver import decide_raw, solve

CHOOSABLE = "choosable"
NOT_CHOOSABLE = "not-choosable"
INCONCLUSIVE = "inconclusive"

MODE_DETERMINISTIC = "deterministic"
MODE_FAST = "fast"


@dataclass(frozen=True)
class ChoosabilityVerdict:
    forest: StarForest
    k: int
    status: str
    witness: CanonicalAssignment | None
    classes_examined: int
    solver_nodes: int
    mode: str

    @property
    def complete(self) -> bool:
        return self.status != INCONCLUSIVE

    def to_json_dict(self) -> dict:
        return {
            "forest": self.forest.to_json_dict(),
            "k": self.k,
            "verdict": self.status,
            "mode": self.mode,
            "classes_examined": self.classes_examined,
            "solver_nodes": self.solver_nodes,
            "witness": None if self.witness is None else self.witness.to_json_dict(),
        }


def _exhaust(
    forest: StarForest,
    k: int,
    budget: int | None,
    mode: str,
    stop_at_first: bool,
) -> ChoosabilityVerdict:
    cap = rho(forest, k)
    bound = domination_palette_bound(forest, k)
    classes = 0
    nodes = 0

    def verdict(status: str, witness: CanonicalAssignment | None) -> ChoosabilityVerdict:
        return ChoosabilityVerdict(forest, k, status, witness, classes, nodes, mode)

    if mode == MODE_FAST:
        probe = constant_assignment(forest, k)
        outcome = solve(forest, probe, k)
        nodes += outcome.nodes
        if not outcome.colorable:
            from .enumeration import canonicalize

            return verdict(NOT_CHOOSABLE, canonicalize(probe))

    for enc in _iter_canonical_raw(forest.stars, k, bound, dominating_only=True):
        if budget is not None and classes + nodes > budget:
            return verdict(INCONCLUSIVE, None)
        classes += 1
        bit, _, n = decide_raw(forest.stars, enc, cap)
        nodes += n
        if not bit:
            witness = CanonicalAssignment(forest, _assignment_from_encoding(forest, enc), enc)
            return verdict(NOT_CHOOSABLE, witness)
    return verdict(CHOOSABLE, None)


def is_equitably_k_choosable(
    forest: StarForest,
    k: int,
    budget: int | None = None,
    mode: str = MODE_DETERMINISTIC,
) -> ChoosabilityVerdict:
    """Decide equitable k-choosability; budget exhaustion (measured in
    canonical classes examined plus solver node expansions) yields an
    inconclusive verdict, never a wrong one."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if mode not in (MODE_DETERMINISTIC, MODE_FAST):
        raise ValueError(f"unknown mode {mode!r}")
    return _exhaust(forest, k, budget, mode, stop_at_first=True)


def find_counterexample(
    forest: StarForest,
    k: int,
    budget: int | None = None,
    mode: str = MODE_DETERMINISTIC,
) -> ChoosabilityVerdict:
    """First-hit search for a defeating assignment; identical engine, kept
    as a separate entry point for callers that only want the witness."""
    return is_equitably_k_choosable(forest, k, budget, mode)

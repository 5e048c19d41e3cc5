"""Closed-form predicates for equitable choosability of star forests.

Each predicate implements one characterization, necessary condition, or
sufficient condition, fires only within its stated hypotheses, and tags its
verdict with a rule name.  ``status`` aggregates them with exact
characterizations first, then negative filters, then positive filters.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import StarForest

PROVEN_CHOOSABLE = "choosable"
PROVEN_NOT_CHOOSABLE = "not-choosable"
UNKNOWN = "unknown"

# rule tags
RULE_SINGLE_STAR = "single-star-threshold"
RULE_TWO_STAR_K2 = "two-star-k2-characterization"
RULE_SAME_STARS_K2 = "identical-stars-k2-characterization"
RULE_CAP_NECESSARY = "usage-cap-necessary"
RULE_PAIR_SUFFICIENT = "two-star-sufficient"
RULE_DEGREE_BOUND = "forest-degree-bound"
RULE_CUBIC_FAMILY = "cubic-blocks-family"
RULE_NINE_BLOCK_FAMILY = "eight-plus-nine-blocks-family"


@dataclass(frozen=True)
class StatusVerdict:
    status: str
    rule: str | None = None

    def to_json_dict(self) -> dict:
        return {"status": self.status, "rule": self.rule}


def _pair_rho(m1: int, m2: int, k: int) -> int:
    return -(-(m1 + m2 + 2) // k)


def single_star_choosable(m: int, k: int) -> bool:
    """K_{1,m} is equitably k-choosable iff m <= ceil((m+1)/k) * (k-1)."""
    if m < 0 or k < 1:
        raise ValueError("need m >= 0 and k >= 1")
    return m <= -(-(m + 1) // k) * (k - 1)


def two_star_2choosable(m1: int, m2: int) -> bool:
    """Two stars are equitably 2-choosable iff the leaf counts differ by at
    most one and sum to at most 15."""
    if min(m1, m2) < 1:
        raise ValueError("both stars need at least one leaf")
    a, b = sorted((m1, m2))
    return b - a <= 1 and a + b <= 15


def n_same_star_2choosable(n: int, m: int) -> bool:
    """n identical stars K_{1,m}: 2-choosable iff m <= 2 (n odd), m <= 7 (n even)."""
    if n < 2 or m < 1:
        raise ValueError("need n >= 2 identical stars with m >= 1")
    return m <= 2 if n % 2 else m <= 7


def lemma_only_necessary(m1: int, m2: int, k: int) -> bool:
    """Tight necessary condition for two stars:
    m2 <= rho*(k-1) - 1 - max(0, m1 - rho + 1); false means not choosable."""
    if not 1 <= m1 or m1 > m2 or k < 1:
        raise ValueError("need 1 <= m1 <= m2 and k >= 1")
    r = _pair_rho(m1, m2, k)
    return m2 <= r * (k - 1) - 1 - max(0, m1 - r + 1)


def lemma_only2_necessary(m1: int, m2: int, k: int) -> bool:
    """Simpler equivalent necessary condition: m2 <= rho*(k-1) - 1."""
    if not 1 <= m1 or m1 > m2 or k < 1:
        raise ValueError("need 1 <= m1 <= m2 and k >= 1")
    r = _pair_rho(m1, m2, k)
    return m2 <= r * (k - 1) - 1


def thm_main_sufficient(m1: int, m2: int, k: int) -> bool:
    """Sufficient condition for two stars: m2 <= rho*(k-1) - 1 and
    m1 + m2 <= 15 + rho*(k-2); true means choosable."""
    if not 1 <= m1 or m1 > m2 or k < 1:
        raise ValueError("need 1 <= m1 <= m2 and k >= 1")
    r = _pair_rho(m1, m2, k)
    return m2 <= r * (k - 1) - 1 and m1 + m2 <= 15 + r * (k - 2)


def forest_bound_sufficient(forest: StarForest, k: int) -> bool:
    """Any forest is equitably k-choosable when k >= 1 + max_degree/2."""
    if k < 1:
        raise ValueError("k must be positive")
    return 2 * k >= 2 + max(forest.stars)


def cubic_family_member(m1: int, m2: int, k: int) -> bool:
    """The pair ((k-1)(k^3-k+2), k^3), not equitably k-choosable for k >= 2
    although it meets the usage-cap necessary condition."""
    if k < 2:
        return False
    family = tuple(sorted(((k - 1) * (k**3 - k + 2), k**3)))
    return tuple(sorted((m1, m2))) == family


def nine_block_family_member(m1: int, m2: int, k: int) -> bool:
    """The pair (8, 9(k-1)-1), equitably k-choosable for k >= 3 although it
    fails the pair-sufficiency condition; no extrapolation."""
    if k < 3:
        return False
    return tuple(sorted((m1, m2))) == tuple(sorted((8, 9 * (k - 1) - 1)))


def status(forest: StarForest, k: int) -> StatusVerdict:
    """Aggregate verdict: exact characterizations, then negative filters,
    then positive filters, else unknown."""
    if k < 1:
        raise ValueError("k must be positive")
    stars = forest.stars
    n = len(stars)

    # exact characterizations
    if n == 1:
        ok = single_star_choosable(stars[0], k)
        return StatusVerdict(PROVEN_CHOOSABLE if ok else PROVEN_NOT_CHOOSABLE, RULE_SINGLE_STAR)
    if k == 2 and n == 2 and min(stars) >= 1:
        ok = two_star_2choosable(*stars)
        return StatusVerdict(PROVEN_CHOOSABLE if ok else PROVEN_NOT_CHOOSABLE, RULE_TWO_STAR_K2)
    if k == 2 and n >= 2 and min(stars) >= 1 and len(set(stars)) == 1:
        ok = n_same_star_2choosable(n, stars[0])
        return StatusVerdict(PROVEN_CHOOSABLE if ok else PROVEN_NOT_CHOOSABLE, RULE_SAME_STARS_K2)

    # negative filters (two stars)
    if n == 2 and min(stars) >= 1:
        m1, m2 = sorted(stars)
        if not lemma_only2_necessary(m1, m2, k):
            return StatusVerdict(PROVEN_NOT_CHOOSABLE, RULE_CAP_NECESSARY)
        if cubic_family_member(m1, m2, k):
            return StatusVerdict(PROVEN_NOT_CHOOSABLE, RULE_CUBIC_FAMILY)

    # positive filters
    if n == 2 and min(stars) >= 1:
        m1, m2 = sorted(stars)
        if nine_block_family_member(m1, m2, k):
            return StatusVerdict(PROVEN_CHOOSABLE, RULE_NINE_BLOCK_FAMILY)
        if thm_main_sufficient(m1, m2, k):
            return StatusVerdict(PROVEN_CHOOSABLE, RULE_PAIR_SUFFICIENT)
    if forest_bound_sufficient(forest, k):
        return StatusVerdict(PROVEN_CHOOSABLE, RULE_DEGREE_BOUND)

    return StatusVerdict(UNKNOWN)

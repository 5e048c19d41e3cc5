"""Star forests, list assignments, colorings, and the equity predicates.

A star forest is a disjoint union of stars ``K_{1,m_i}`` described by the
sequence of leaf counts ``m_i`` (``m_i = 0`` is a lone vertex).  The vertex
order is fixed globally: components in input order, center before leaves,
leaves by ascending slot.  Every deterministic tie-break in this package
refers to that order.

Colors are bare non-negative integers.  Palettes are never required to be
contiguous; canonical enumeration imposes contiguity only on its own output.

JSON interchange forms (used by every module and the CLI):

* forest      ``{"stars": [m1, ...]}``
* assignment  ``{"lists": {"c.s": [colors...], ...}}`` keyed by ``component.slot``
* coloring    ``{"colors": {"c.s": color, ...}}``
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping


@dataclass(frozen=True, order=True)
class VertexId:
    """Vertex address ``(component, slot)``; slot 0 is the center."""

    component: int
    slot: int

    def key(self) -> str:
        return f"{self.component}.{self.slot}"

    @classmethod
    def from_key(cls, key: str) -> "VertexId":
        comp, _, slot = key.partition(".")
        return cls(int(comp), int(slot))

    @property
    def is_center(self) -> bool:
        return self.slot == 0


@dataclass(frozen=True)
class StarForest:
    """Disjoint union of stars, one leaf count per component."""

    stars: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.stars:
            raise ValueError("a star forest needs at least one component")
        if any(m < 0 for m in self.stars):
            raise ValueError("leaf counts must be non-negative")
        object.__setattr__(self, "stars", tuple(int(m) for m in self.stars))

    @property
    def n_components(self) -> int:
        return len(self.stars)

    @property
    def vertex_count(self) -> int:
        return sum(m + 1 for m in self.stars)

    def center(self, component: int) -> VertexId:
        return VertexId(component, 0)

    def leaves_of(self, component: int) -> Iterator[VertexId]:
        for slot in range(1, self.stars[component] + 1):
            yield VertexId(component, slot)

    def vertices(self) -> Iterator[VertexId]:
        """All vertices in the fixed global order."""
        for comp, m in enumerate(self.stars):
            yield VertexId(comp, 0)
            for slot in range(1, m + 1):
                yield VertexId(comp, slot)

    def leaves(self) -> Iterator[VertexId]:
        for comp in range(self.n_components):
            yield from self.leaves_of(comp)

    def contains(self, v: VertexId) -> bool:
        return 0 <= v.component < self.n_components and 0 <= v.slot <= self.stars[v.component]

    def to_json_dict(self) -> dict:
        return {"stars": list(self.stars)}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "StarForest":
        return cls(tuple(data["stars"]))


class ListAssignment:
    """Mapping from every forest vertex to a non-empty set of colors."""

    __slots__ = ("forest", "_lists")

    def __init__(self, forest: StarForest, lists: Mapping[VertexId, Iterable[int]]):
        self.forest = forest
        frozen: dict[VertexId, frozenset[int]] = {}
        for v in forest.vertices():
            if v not in lists:
                raise ValueError(f"vertex {v.key()} has no list")
            colors = frozenset(int(c) for c in lists[v])
            if not colors:
                raise ValueError(f"vertex {v.key()} has an empty list")
            if any(c < 0 for c in colors):
                raise ValueError("colors must be non-negative integers")
            frozen[v] = colors
        if len(lists) != len(frozen):
            extra = set(lists) - set(frozen)
            raise ValueError(f"lists given for vertices outside the forest: {sorted(extra)}")
        self._lists = frozen

    def get(self, v: VertexId) -> frozenset[int]:
        return self._lists[v]

    def __getitem__(self, v: VertexId) -> frozenset[int]:
        return self._lists[v]

    def items(self):
        return self._lists.items()

    @property
    def palette(self) -> frozenset[int]:
        out: set[int] = set()
        for colors in self._lists.values():
            out |= colors
        return frozenset(out)

    def is_k_assignment(self, k: int) -> bool:
        return all(len(colors) == k for colors in self._lists.values())

    def uniform_size(self) -> int | None:
        sizes = {len(colors) for colors in self._lists.values()}
        return sizes.pop() if len(sizes) == 1 else None

    @classmethod
    def constant(cls, forest: StarForest, colors: Iterable[int]) -> "ListAssignment":
        colorset = frozenset(colors)
        return cls(forest, {v: colorset for v in forest.vertices()})

    def to_json_dict(self) -> dict:
        return {
            "lists": {v.key(): sorted(self._lists[v]) for v in self.forest.vertices()}
        }

    @classmethod
    def from_json_dict(cls, forest: StarForest, data: Mapping) -> "ListAssignment":
        lists = {VertexId.from_key(key): colors for key, colors in data["lists"].items()}
        return cls(forest, lists)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ListAssignment)
            and self.forest == other.forest
            and self._lists == other._lists
        )

    def __repr__(self) -> str:
        parts = ", ".join(f"{v.key()}:{sorted(c)}" for v, c in sorted(self._lists.items()))
        return f"ListAssignment({parts})"


@dataclass(frozen=True)
class Coloring:
    """Partial mapping from vertices to colors; immutable after construction."""

    assignment: Mapping[VertexId, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", dict(self.assignment))

    @property
    def usage(self) -> Counter:
        return Counter(self.assignment.values())

    def get(self, v: VertexId) -> int | None:
        return self.assignment.get(v)

    def domain(self) -> set[VertexId]:
        return set(self.assignment)

    def is_total(self, forest: StarForest) -> bool:
        return all(v in self.assignment for v in forest.vertices())

    def to_json_dict(self) -> dict:
        return {"colors": {v.key(): c for v, c in sorted(self.assignment.items())}}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "Coloring":
        return cls({VertexId.from_key(key): int(c) for key, c in data["colors"].items()})


def rho(forest: StarForest, k: int) -> int:
    """Equity cap: ceil(|V|/k), the most any one color may be used."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    n = forest.vertex_count
    return -(-n // k)


def is_proper(forest: StarForest, coloring: Coloring) -> bool:
    """True iff no center shares a color with a colored leaf of its component.

    Partial colorings are allowed; vertices outside the forest are rejected.
    """
    for v in coloring.assignment:
        if not forest.contains(v):
            raise ValueError(f"coloring mentions unknown vertex {v.key()}")
    for comp in range(forest.n_components):
        center_color = coloring.get(forest.center(comp))
        if center_color is None:
            continue
        for leaf in forest.leaves_of(comp):
            if coloring.get(leaf) == center_color:
                return False
    return True


def is_equitable_list_coloring(
    forest: StarForest, lists: ListAssignment, coloring: Coloring, k: int
) -> bool:
    """True iff the coloring is total, proper, list-respecting, and every
    color is used at most ``rho(forest, k)`` times."""
    if not lists.is_k_assignment(k):
        raise ValueError("lists must form a k-assignment")
    if not coloring.is_total(forest):
        return False
    if not is_proper(forest, coloring):
        return False
    for v in forest.vertices():
        if coloring.assignment[v] not in lists.get(v):
            return False
    cap = rho(forest, k)
    return all(count <= cap for count in coloring.usage.values())


def is_equitable_k_coloring(forest: StarForest, coloring: Coloring, k: int) -> bool:
    """True iff proper, total, and the k class sizes (empty classes included)
    differ pairwise by at most one."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if not coloring.is_total(forest):
        return False
    if not is_proper(forest, coloring):
        return False
    sizes = sorted(coloring.usage.values(), reverse=True)
    if len(sizes) > k:
        return False
    sizes += [0] * (k - len(sizes))
    return sizes[0] - sizes[-1] <= 1

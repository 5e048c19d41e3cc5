"""Desk-scale reproduction checks behind ``equistar verify-paper``.

Each check re-derives one published claim with this package's independent
machinery (exact solver, exhaustive choosability, constructive colorer,
reduction oracles) and reports pass/fail.  Sections mirror the material:
2 = complexity reduction, 3 = two-color characterizations, 4 = general-k
constructions.
"""

from __future__ import annotations

import random
from typing import Callable

from .choosability import is_equitably_k_choosable
from .enumeration import sample_assignment
from .formulas import single_star_choosable, two_star_2choosable
from .gadgets import (
    constant_assignment,
    lemma_add_gadget,
    same_stars_even_gadget,
    same_stars_odd_gadget,
    tconstruct_gadget,
    verify_gadget,
)
from .greedy import lemma_reduce_color, theorem_main_color
from .model import (
    Coloring,
    ListAssignment,
    StarForest,
    VertexId,
    is_equitable_k_coloring,
    is_equitable_list_coloring,
    is_proper,
    rho,
)
from .reduction import (
    PartitionInstance,
    equitable_2colorable,
    extract_partition,
    orientation_coloring,
    partition_exists,
    reduce_partition,
)
from .solver import solve


def _row(section: str, check: str, passed: bool, detail: str = "") -> dict:
    return {"section": section, "check": check, "passed": bool(passed), "detail": detail}


def _section2(seed: int) -> list[dict]:
    rows = []
    rows.append(
        _row("2", "fixed-negative-star", equitable_2colorable(StarForest((3,))) is None)
    )
    bits = equitable_2colorable(StarForest((2, 2, 3)))
    ok = bits is not None and is_equitable_k_coloring(
        StarForest((2, 2, 3)), orientation_coloring(StarForest((2, 2, 3)), bits), 2
    )
    rows.append(_row("2", "three-star-positive", ok))

    rng = random.Random(seed)
    mism = 0
    roundtrip_bad = 0
    trials = 250
    for _ in range(trials):
        n = rng.randint(1, 10)
        inst = PartitionInstance(tuple(rng.randint(1, 20) for _ in range(n)))
        forest = reduce_partition(inst)
        bits = equitable_2colorable(forest)
        if partition_exists(inst) != (bits is not None):
            mism += 1
        elif bits is not None and inst.total % 2 == 0:
            part_a, part_b = extract_partition(forest, bits)
            vals = inst.values
            if sum(vals[i] for i in part_a) != sum(vals[i] for i in part_b):
                roundtrip_bad += 1
    rows.append(_row("2", "reduction-biconditional", mism == 0, f"{trials} instances"))
    rows.append(_row("2", "extraction-round-trip", roundtrip_bad == 0))
    return rows


def _section3(seed: int) -> list[dict]:
    rows = []
    ok = all(
        (is_equitably_k_choosable(StarForest((m,)), k).status == "choosable")
        == single_star_choosable(m, k)
        for m in range(1, 5)
        for k in range(1, 4)
    )
    rows.append(_row("3", "single-star-formula-small", ok, "m<=4, k<=3"))

    ok = True
    for s in range(2, 7):
        for m1 in range(1, s // 2 + 1):
            verdict = is_equitably_k_choosable(StarForest((m1, s - m1)), 2)
            ok &= (verdict.status == "choosable") == two_star_2choosable(m1, s - m1)
    rows.append(_row("3", "two-star-k2-grid", ok, "m1+m2<=6"))

    rows.append(
        _row(
            "3",
            "constant-gadget-6-1",
            verify_gadget(StarForest((6, 1)), constant_assignment(StarForest((6, 1)), 3), 3),
        )
    )
    for m1, m2 in ((8, 8), (8, 9)):
        rows.append(
            _row(
                "3",
                f"pair-gadget-{m1}-{m2}",
                verify_gadget(StarForest((m1, m2)), lemma_add_gadget(m1, m2), 2),
            )
        )
    for n, m in ((3, 3), (5, 3)):
        rows.append(
            _row(
                "3",
                f"identical-odd-{n}x{m}",
                verify_gadget(StarForest((m,) * n), same_stars_odd_gadget(n, m), 2),
            )
        )
    for n, m in ((2, 8), (4, 8)):
        rows.append(
            _row(
                "3",
                f"identical-even-{n}x{m}",
                verify_gadget(StarForest((m,) * n), same_stars_even_gadget(n, m), 2),
            )
        )
    return rows


def _section4(seed: int) -> list[dict]:
    rows = []
    for k in (2, 3, 4):
        forest, lists = tconstruct_gadget(k)
        cap_ok = rho(forest, k) == k**3 - k + 3
        rows.append(
            _row(
                "4",
                f"layered-gadget-k{k}",
                cap_ok and verify_gadget(forest, lists, k),
                f"forest {forest.stars}",
            )
        )

    forest = StarForest((8, 17))
    bad = 0
    trials = 300
    for i in range(trials):
        lists = sample_assignment(forest, 3, 3 + i % 7, seed + i)
        if not solve(forest, lists, 3).colorable:
            bad += 1
    rows.append(_row("4", "beyond-bound-family-smoke", bad == 0, f"(8,17) k=3, {trials} samples"))

    bad = 0
    for k, (m1, m2) in ((3, (8, 8)), (4, (10, 12)), (5, (9, 14))):
        f = StarForest((m1, m2))
        for i in range(60):
            lists = sample_assignment(f, k, k + i % 5, seed + i)
            out = theorem_main_color(f, lists, k)
            if not is_equitable_list_coloring(f, lists, out.coloring, k):
                bad += 1
    rows.append(_row("4", "constructive-colorer", bad == 0, "3 shapes x 60 samples"))

    rng = random.Random(seed)
    bad = 0
    trials = 200
    for _ in range(trials):
        m1 = rng.randint(0, 5)
        m2 = rng.randint(max(2, m1), 9)
        f = StarForest((m1, m2))
        sigma = (m1 + m2 + 2) // 2
        color = 1
        palette = list(range(1, 9))
        lists: dict[VertexId, set[int]] = {}
        for v in f.vertices():
            size = 3 if (v.component == 1 and not v.is_center) else 2
            lists[v] = set(rng.sample(palette, size))
        leaves = list(f.leaves())
        rng.shuffle(leaves)
        for v in leaves[:sigma]:
            target = lists[v]
            if color not in target:
                target.pop()
                target.add(color)
        L = ListAssignment(f, lists)
        got = lemma_reduce_color(f, L, color)
        usage = got.usage
        ok = (
            is_proper(f, got)
            and all(got.assignment[v] in L.get(v) for v in f.vertices())
            and max(usage.values()) <= sigma
        )
        if not ok:
            bad += 1
    rows.append(_row("4", "reduction-lemma-property", bad == 0, f"{trials} instances"))
    return rows


_SECTIONS: dict[str, Callable[[int], list[dict]]] = {
    "2": _section2,
    "3": _section3,
    "4": _section4,
}


def run_sections(section: str = "all", seed: int = 0) -> list[dict]:
    names = list(_SECTIONS) if section == "all" else [section]
    rows: list[dict] = []
    for name in names:
        rows.extend(_SECTIONS[name](seed))
    return rows

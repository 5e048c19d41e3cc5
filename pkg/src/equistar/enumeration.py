"""Canonical enumeration and sampling of k-assignments.

Deciding equitable k-choosability quantifies over *every* k-assignment, so
exhaustion is only possible after quotienting by the symmetries that preserve
colorability: renaming colors, permuting leaves within a star, and swapping
components with equal leaf counts.

The canonical encoding of an assignment is the sequence of its lists (as
sorted color tuples) in the fixed vertex order, after

* sorting leaf lists within each component (non-decreasing lex),
* sorting the blocks of equal-size components (non-decreasing by
  ``(center list, leaf lists)``), and
* renaming colors to ``1..p``,

chosen so the resulting flat sequence is lexicographically smallest over all
color bijections.  Smallest-first naming makes colors appear in increasing
order of first use, so every canonical palette is an initial segment of the
positive integers.

Enumeration is orderly: lists are generated directly in canonical order
(extend-and-reject against the invariants above plus the palette growth rule
that a list may introduce at most k new colors, always the consecutive next
integers), and a completed assignment is emitted iff no color relabeling
strictly beats it.  Every k-assignment over any palette is symmetry
equivalent to exactly one emitted item; the default palette bound k*|V| is
sound because no k-assignment can use more colors.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from typing import IO, Iterator

from .model import ListAssignment, StarForest

Block = tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]
Encoding = tuple[tuple[int, ...], ...]


class IncompleteEnumeration(Exception):
    """Raised when an enumeration budget is exhausted; never silent."""

    def __init__(self, classes_emitted: int):
        super().__init__(f"enumeration stopped after {classes_emitted} classes")
        self.classes_emitted = classes_emitted


@dataclass(frozen=True)
class CanonicalAssignment:
    """A symmetry-class representative with its canonical encoding."""

    forest: StarForest
    lists: ListAssignment
    encoding: Encoding

    def to_json_dict(self) -> dict:
        return self.lists.to_json_dict()


def _blocks_from_lists(forest: StarForest, lists: ListAssignment) -> list[Block]:
    blocks: list[Block] = []
    for ci in range(forest.n_components):
        center = tuple(sorted(lists.get(forest.center(ci))))
        leaves = tuple(tuple(sorted(lists.get(v))) for v in forest.leaves_of(ci))
        blocks.append((center, leaves))
    return blocks


def _encode(stars: tuple[int, ...], blocks: list[Block], pm: dict[int, int], nxt: int) -> Encoding:
    """Flat encoding under a (possibly partial) color renaming.

    Unassigned colors map to the next unused name, which is a pointwise lower
    bound on any completion, so lexicographic pruning against it is sound.
    """
    mapped: list[Block] = []
    for center, leaves in blocks:
        c2 = tuple(sorted(pm.get(c, nxt) for c in center))
        l2 = tuple(sorted(tuple(sorted(pm.get(c, nxt) for c in lst)) for lst in leaves))
        mapped.append((c2, l2))
    by_m: dict[int, list[Block]] = {}
    for m, b in zip(stars, mapped):
        by_m.setdefault(m, []).append(b)
    for group in by_m.values():
        group.sort()
    iters = {m: iter(group) for m, group in by_m.items()}
    flat: list[tuple[int, ...]] = []
    for m in stars:
        center, leaves = next(iters[m])
        flat.append(center)
        flat.extend(leaves)
    return tuple(flat)


def _min_search(
    stars: tuple[int, ...],
    blocks: list[Block],
    target: Encoding | None = None,
) -> Encoding | bool:
    """Search color renamings for the lexicographically least encoding.

    With ``target`` set, returns True as soon as some renaming encodes
    strictly below the target (used as the is-canonical rejection test);
    otherwise returns the minimum encoding itself.
    """
    colors = sorted({c for center, leaves in blocks for lst in (center, *leaves) for c in lst})
    p = len(colors)
    pm: dict[int, int] = {}
    state = {"best": target, "found": False, "best_enc": None}

    def dfs() -> None:
        enc = _encode(stars, blocks, pm, len(pm) + 1)
        best = state["best"]
        if best is not None and enc >= best:
            return
        if len(pm) == p:
            state["best"] = enc
            state["best_enc"] = enc
            if target is not None:
                state["found"] = True
            return
        for c in colors:
            if c in pm:
                continue
            pm[c] = len(pm) + 1
            dfs()
            del pm[c]
            if state["found"]:
                return

    dfs()
    if target is not None:
        return state["found"]
    assert state["best_enc"] is not None
    return state["best_enc"]


def _beats_identity(stars: tuple[int, ...], blocks: list[Block], lock_blocks: bool = False) -> bool:
    """Exact test: does any symmetry re-encode strictly below the identity?

    The input must already satisfy the structural invariants (first-appearance
    palette, sorted leaf lists, sorted equal-size blocks), so its own flat
    sequence is the identity encoding.  The search walks canonical positions
    in order, maintaining partial color renamings that keep the walked prefix
    tied with the identity; a position where some not-yet-placed list can map
    strictly below the identity's list certifies a beating symmetry (sorting
    the full image only moves it further down).  States are deduplicated on
    (position, unplaced lists, renaming restricted to colors still to come),
    which collapses automorphism-rich inputs.

    With ``lock_blocks`` the walker keeps every component in place (no
    equal-size block exchange).  A lock-blocks beat of a generation prefix is
    inherited by every completion: the certificate ties the prefix and drops
    strictly at one position, and re-sorting a completed image only moves it
    further down.  That makes this the subtree-rejection test of the orderly
    generator; the free-blocks form is the exact acceptance test.
    """
    # intern list values; colors are 1..cmax
    shape_of: dict[tuple[int, ...], int] = {}
    shapes: list[tuple[int, ...]] = []
    masks: list[int] = []

    def intern(lst: tuple[int, ...]) -> int:
        sid = shape_of.get(lst)
        if sid is None:
            sid = len(shapes)
            shape_of[lst] = sid
            shapes.append(lst)
            m = 0
            for c in lst:
                m |= 1 << c
            masks.append(m)
        return sid

    flat: list[int] = []  # shape ids in position order
    meta: list[int] = []  # group id at center positions, -1 at leaf positions
    group_of_m: dict[int | tuple, int] = {}
    group_blocks: list[list[tuple[int, tuple[int, ...]]]] = []
    for ci, m in enumerate(stars):
        gkey = (ci,) if lock_blocks else m
        if gkey not in group_of_m:
            group_of_m[gkey] = len(group_blocks)
            group_blocks.append([])
    for ci, (m, (center, leaves)) in enumerate(zip(stars, blocks)):
        gkey = (ci,) if lock_blocks else m
        csid = intern(center)
        # input leaves are already value-sorted; keep that order for sids
        lsids = tuple(intern(lf) for lf in leaves)
        group_blocks[group_of_m[gkey]].append((csid, lsids))
        flat.append(csid)
        meta.append(group_of_m[gkey])
        for sid in lsids:
            flat.append(sid)
            meta.append(-1)
    total = len(flat)
    cmax = 0
    for lst in shapes:
        cmax = max(cmax, lst[-1])

    # block mask: colors in a whole block
    def block_mask(block: tuple[int, tuple[int, ...]]) -> int:
        m = masks[block[0]]
        for sid in block[1]:
            m |= masks[sid]
        return m

    # names used by the identity prefix form an initial segment {1..u[pos]}
    u = [0] * (total + 1)
    for i, sid in enumerate(flat):
        u[i + 1] = max(u[i], shapes[sid][-1])

    def min_image(lst: tuple[int, ...], sigma: list[int], used: int) -> list[int]:
        names = []
        fresh = 0
        for c in lst:
            n = sigma[c]
            if n:
                names.append(n)
            else:
                fresh += 1
        if fresh:
            names.extend(range(used + 1, used + 1 + fresh))
        names.sort()
        return names

    def unify_exts(
        lst: tuple[int, ...], sigma: list[int], used: int, target: tuple[int, ...]
    ) -> list[list[int]] | None:
        need = list(target)
        unassigned: list[int] = []
        for c in lst:
            n = sigma[c]
            if n:
                if n in need:
                    need.remove(n)
                else:
                    return None
            else:
                unassigned.append(c)
        if len(need) != len(unassigned):
            return None
        if need and need[0] <= used:
            return None  # names <= used are already owned by other colors
        if not unassigned:
            return [sigma]
        out = []
        for perm in itertools.permutations(need):
            ext = list(sigma)
            for c, n in zip(unassigned, perm):
                ext[c] = n
            out.append(ext)
        return out

    GroupsState = tuple[tuple[tuple[int, tuple[int, ...]], ...], ...]
    start_groups: GroupsState = tuple(tuple(g) for g in group_blocks)
    zero_sigma = [0] * (cmax + 1)
    seen: set = set()
    stack: list[tuple[int, tuple[int, ...], GroupsState, list[int]]] = [
        (0, (), start_groups, zero_sigma)
    ]
    while stack:
        pos, open_leaves, groups, sigma = stack.pop()
        if pos == total:
            continue  # full tie: an automorphism, not a beat
        # colors still to come for this walker: its own unplaced lists
        relevant = 0
        for sid in open_leaves:
            relevant |= masks[sid]
        for group in groups:
            for block in group:
                relevant |= block_mask(block)
        key = (
            pos,
            open_leaves,
            groups,
            bytes(sigma[c] if relevant >> c & 1 else 0 for c in range(cmax + 1)),
        )
        if key in seen:
            continue
        seen.add(key)
        target = shapes[flat[pos]]
        target_l = list(target)
        used = u[pos]
        if open_leaves:
            tried = 0
            for idx, sid in enumerate(open_leaves):
                if tried >> sid & 1:
                    continue
                tried |= 1 << sid
                lst = shapes[sid]
                if min_image(lst, sigma, used) < target_l:
                    return True
                exts = unify_exts(lst, sigma, used, target)
                if exts:
                    rest = open_leaves[:idx] + open_leaves[idx + 1 :]
                    for ext in exts:
                        stack.append((pos + 1, rest, groups, ext))
        else:
            gid = meta[pos]
            assert gid >= 0, "walker expected a center position"
            tried_blocks: set = set()
            for b_idx, block in enumerate(groups[gid]):
                if block in tried_blocks:
                    continue
                tried_blocks.add(block)
                csid, lsids = block
                center = shapes[csid]
                if min_image(center, sigma, used) < target_l:
                    return True
                exts = unify_exts(center, sigma, used, target)
                if exts:
                    g = list(groups[gid])
                    g.pop(b_idx)
                    rest_groups = list(groups)
                    rest_groups[gid] = tuple(g)
                    frozen = tuple(rest_groups)
                    for ext in exts:
                        stack.append((pos + 1, lsids, frozen, ext))
    return False


def _assignment_from_encoding(forest: StarForest, encoding: Encoding) -> ListAssignment:
    return ListAssignment(forest, dict(zip(forest.vertices(), encoding)))


def canonicalize(lists: ListAssignment, forest: StarForest | None = None) -> CanonicalAssignment:
    """Canonical representative of the assignment's symmetry class.

    Idempotent, and constant on orbits: any color relabeling, leaf
    permutation, or equal-star swap of the input yields the same output.
    """
    forest = forest or lists.forest
    if forest != lists.forest:
        raise ValueError("assignment was built for a different forest shape")
    blocks = _blocks_from_lists(forest, lists)
    encoding = _min_search(forest.stars, blocks)
    assert not isinstance(encoding, bool)
    return CanonicalAssignment(forest, _assignment_from_encoding(forest, encoding), encoding)


def _candidates(
    cmax: int, k: int, bound: int, lb: tuple[int, ...] | None
) -> Iterator[tuple[int, ...]]:
    """Sorted k-tuples over {1..cmax} plus a consecutive run of new colors,
    emitted in ascending lex order, skipping tuples below ``lb``."""
    top = min(cmax + k, bound)
    tup: list[int] = [0] * k

    def rec(i: int, start: int, tight: bool) -> Iterator[tuple[int, ...]]:
        if i == k:
            yield tuple(tup)
            return
        lo = start
        if tight and lb is not None:
            lo = max(lo, lb[i])
        for c in range(lo, top + 1):
            # new colors must be the consecutive next integers, so in an
            # ascending tuple each one extends a run starting at cmax+1
            if c > cmax + 1 and (i == 0 or tup[i - 1] != c - 1):
                break
            if k - i - 1 > top - c:
                break  # not enough room to finish the tuple
            tup[i] = c
            still_tight = tight and lb is not None and c == lb[i]
            yield from rec(i + 1, c + 1, still_tight)

    yield from rec(0, 1, lb is not None)


def _iter_canonical_raw(
    stars: tuple[int, ...], k: int, bound: int, dominating_only: bool = False
) -> Iterator[Encoding]:
    """Orderly generation of canonical encodings in ascending order.

    Structural constraints (sorted leaf lists, ordered equal-size blocks,
    first-appearance palette growth) are enforced while extending; each
    placed list is then vetted by the lock-blocks rejection test, which cuts
    the whole subtree when the prefix is already beaten.  A completed
    assignment is emitted iff the exact (block-exchanging) test passes.

    With ``dominating_only``, restrict to assignments whose palette colors
    pairwise co-occur in some list (see ``domination_palette_bound``: those
    dominate all others for the choosability verdict).  A prefix dies once
    its uncovered pairs exceed C(k,2) per remaining list, since a list can
    cover at most that many missing pairs.
    """
    n = len(stars)
    total_lists = sum(stars) + n
    pair_budget = k * (k - 1) // 2
    covered: set[tuple[int, int]] = set()
    blocks: list[Block] = []
    last_same_m: dict[int, Block] = {}
    # the exact test differs from the prefix test only if sizes repeat
    need_full_check = len(set(stars)) < n

    def place_pairs(cand: tuple[int, ...]) -> list[tuple[int, int]]:
        added = []
        for i in range(len(cand)):
            for j in range(i + 1, len(cand)):
                pair = (cand[i], cand[j])
                if pair not in covered:
                    covered.add(pair)
                    added.append(pair)
        return added

    def deficit_prunes(cmax: int, placed: int) -> bool:
        if not dominating_only:
            return False
        deficit = cmax * (cmax - 1) // 2 - len(covered)
        return deficit > (total_lists - placed) * pair_budget

    def prefix_beaten(partial: Block | None) -> bool:
        if partial is None:
            probe = blocks
            probe_stars = stars[: len(blocks)]
        else:
            probe = blocks + [partial]
            probe_stars = stars[: len(blocks)] + (len(partial[1]),)
        return _beats_identity(probe_stars, probe, lock_blocks=True)

    def comp_rec(ci: int, cmax: int, placed: int) -> Iterator[Encoding]:
        if ci == n:
            if dominating_only and cmax * (cmax - 1) // 2 != len(covered):
                return
            if need_full_check and _beats_identity(stars, blocks):
                return
            flat: list[tuple[int, ...]] = []
            for center, leaves in blocks:
                flat.append(center)
                flat.extend(leaves)
            yield tuple(flat)
            return
        m = stars[ci]
        ref = last_same_m.get(m)
        for center in _candidates(cmax, k, bound, ref[0] if ref else None):
            added = place_pairs(center)
            cmax2 = max(cmax, center[-1])
            if deficit_prunes(cmax2, placed + 1) or (ci > 0 and prefix_beaten((center, ()))):
                covered.difference_update(added)
                continue
            tie = ref is not None and center == ref[0]
            yield from leaf_rec(ci, 1, cmax2, center, [], tie, ref, placed + 1)
            covered.difference_update(added)

    def leaf_rec(
        ci: int,
        slot: int,
        cmax: int,
        center: tuple[int, ...],
        leaves: list[tuple[int, ...]],
        tie: bool,
        ref: Block | None,
        placed: int,
    ) -> Iterator[Encoding]:
        m = stars[ci]
        if slot > m:
            block: Block = (center, tuple(leaves))
            prev = last_same_m.get(m)
            last_same_m[m] = block
            blocks.append(block)
            yield from comp_rec(ci + 1, cmax, placed)
            blocks.pop()
            if prev is None:
                del last_same_m[m]
            else:
                last_same_m[m] = prev
            return
        lb = leaves[-1] if leaves else None
        if tie:
            assert ref is not None
            ref_leaf = ref[1][slot - 1]
            if lb is None or ref_leaf > lb:
                lb = ref_leaf
        for cand in _candidates(cmax, k, bound, lb):
            added = place_pairs(cand)
            cmax2 = max(cmax, cand[-1])
            if deficit_prunes(cmax2, placed + 1) or prefix_beaten(
                (center, tuple(leaves) + (cand,))
            ):
                covered.difference_update(added)
                continue
            tie2 = tie and ref is not None and cand == ref[1][slot - 1]
            yield from leaf_rec(
                ci, slot + 1, cmax2, center, leaves + [cand], tie2, ref, placed + 1
            )
            covered.difference_update(added)

    yield from comp_rec(0, 0, 0)


def default_palette_bound(forest: StarForest, k: int) -> int:
    """Sound default: no k-assignment uses more than k*|V| colors."""
    return k * forest.vertex_count


def domination_palette_bound(forest: StarForest, k: int) -> int:
    """Palette bound sufficient for deciding equitable k-choosability.

    If two palette colors c, d never share a list, the map sending d to c is
    injective on every list, so it turns a k-assignment L into a k-assignment
    L' with one color fewer; any equitable L'-coloring pulls back to an
    equitable L-coloring (recolor each vertex with the unique preimage in its
    list: properness and per-color usage only improve).  Hence L' defeats
    whenever L defeats, and repeated merging reaches an assignment whose
    palette colors pairwise co-occur.  Such a palette has at most
    max{p : p*(p-1)/2 <= |V| * k*(k-1)/2} colors, so exhausting canonical
    classes up to that bound decides choosability in both directions.
    """
    pairs = forest.vertex_count * (k * (k - 1) // 2)
    p = k
    while (p + 1) * p // 2 <= pairs:
        p += 1
    return max(p, k)


def enumerate_canonical(
    forest: StarForest,
    k: int,
    palette_bound: int | None = None,
    max_classes: int | None = None,
) -> Iterator[CanonicalAssignment]:
    """Stream every canonical class exactly once, in ascending encoding order.

    A ``palette_bound`` below the sound default is a heuristic override; the
    manifest of any stream built from it must be flagged accordingly.  If
    ``max_classes`` is exceeded, raises IncompleteEnumeration rather than
    truncating silently.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    bound = palette_bound if palette_bound is not None else default_palette_bound(forest, k)
    if bound < k:
        raise ValueError("palette bound below k admits no k-assignment")
    emitted = 0
    for enc in _iter_canonical_raw(forest.stars, k, bound):
        if max_classes is not None and emitted >= max_classes:
            raise IncompleteEnumeration(emitted)
        emitted += 1
        yield CanonicalAssignment(forest, _assignment_from_encoding(forest, enc), enc)


def stream_canonical(
    forest: StarForest,
    k: int,
    out: IO[str],
    palette_bound: int | None = None,
    max_classes: int | None = None,
) -> dict:
    """Write canonical assignments as JSON lines; returns the manifest."""
    bound = palette_bound if palette_bound is not None else default_palette_bound(forest, k)
    complete = True
    emitted = 0
    try:
        for item in enumerate_canonical(forest, k, palette_bound, max_classes):
            out.write(json.dumps(item.to_json_dict(), separators=(",", ":")) + "\n")
            emitted += 1
    except IncompleteEnumeration:
        complete = False
    return {
        "forest": forest.to_json_dict(),
        "k": k,
        "palette_bound": bound,
        "heuristic_bound": bound < default_palette_bound(forest, k),
        "classes": emitted,
        "complete": complete,
    }


def sample_assignment(
    forest: StarForest, k: int, palette_size: int, seed: int
) -> ListAssignment:
    """Uniform independent k-subsets of {1..palette_size} per vertex;
    byte-identical output for a fixed seed."""
    if palette_size < k:
        raise ValueError("palette size must be at least k")
    rng = random.Random(seed)
    lists = {
        v: frozenset(rng.sample(range(1, palette_size + 1), k)) for v in forest.vertices()
    }
    return ListAssignment(forest, lists)

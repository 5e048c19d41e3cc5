import itertools
import json
import random

import pytest

from equistar.enumeration import (
    IncompleteEnumeration,
    _beats_identity,
    _iter_canonical_raw,
    _min_search,
    canonicalize,
    default_palette_bound,
    domination_palette_bound,
    enumerate_canonical,
    sample_assignment,
)
from equistar.model import ListAssignment, StarForest, VertexId
from equistar.solver import solve


# -- an independent naive quotient oracle --------------------------------------


def naive_key(stars, combo):
    """Minimum structural encoding over all permutations of the used colors;
    brute force, independent of the production search."""
    used = sorted({c for lst in combo for c in lst})
    best = None
    for perm in itertools.permutations(range(1, len(used) + 1)):
        mp = dict(zip(used, perm))
        blocks = []
        i = 0
        for m in stars:
            center = tuple(sorted(mp[c] for c in combo[i]))
            i += 1
            leaves = tuple(sorted(tuple(sorted(mp[c] for c in combo[i + j])) for j in range(m)))
            i += m
            blocks.append((center, leaves))
        by_m = {}
        for m, b in zip(stars, blocks):
            by_m.setdefault(m, []).append(b)
        for group in by_m.values():
            group.sort()
        iters = {m: iter(group) for m, group in by_m.items()}
        flat = []
        for m in stars:
            center, leaves = next(iters[m])
            flat.append(center)
            flat.extend(leaves)
        key = tuple(flat)
        if best is None or key < best:
            best = key
    return best


def naive_classes(stars, k, palette):
    forest = StarForest(stars)
    vertices = list(forest.vertices())
    options = list(itertools.combinations(range(1, palette + 1), k))
    return {
        naive_key(stars, combo)
        for combo in itertools.product(options, repeat=len(vertices))
    }


class TestEnumerateCanonical:
    def test_single_edge_k2_classes(self):
        f = StarForest((1,))
        got = [a.encoding for a in enumerate_canonical(f, 2)]
        assert got == [
            ((1, 2), (1, 2)),
            ((1, 2), (1, 3)),
            ((1, 2), (3, 4)),
        ]

    def test_single_edge_k1_classes(self):
        f = StarForest((1,))
        got = [a.encoding for a in enumerate_canonical(f, 1)]
        assert got == [((1,), (1,)), ((1,), (2,))]

    @pytest.mark.parametrize(
        "stars,k",
        [((1,), 1), ((1,), 2), ((2,), 1), ((2,), 2), ((1, 1), 2), ((1, 2), 2), ((1, 1, 1), 1)],
    )
    def test_matches_naive_quotient_palette4(self, stars, k):
        got = {a.encoding for a in enumerate_canonical(StarForest(stars), k, palette_bound=4)}
        want = naive_classes(stars, k, palette=4)
        assert got == want

    def test_frozen_pair_count(self):
        # class count for (1,1), k=2 at the sound default palette bound;
        # pinned once from the naive oracle at the bound-4 slice plus the
        # production run, then frozen as a regression constant
        f = StarForest((1, 1))
        assert sum(1 for _ in enumerate_canonical(f, 2)) == 85

    def test_budget_raises(self):
        f = StarForest((2, 2))
        with pytest.raises(IncompleteEnumeration):
            list(enumerate_canonical(f, 2, max_classes=10))

    def test_emitted_items_are_fixed_points(self):
        f = StarForest((1, 2))
        for item in enumerate_canonical(f, 2, palette_bound=4):
            again = canonicalize(item.lists)
            assert again.encoding == item.encoding


class TestCanonicalize:
    def test_pure_relabeling_example(self):
        f = StarForest((1,))
        L = ListAssignment(f, {VertexId(0, 0): {7, 3}, VertexId(0, 1): {3, 9}})
        got = canonicalize(L)
        # shares exactly one color; same class as [{1,2},{1,3}] in the
        # enumeration order above
        assert got.encoding == ((1, 2), (1, 3))

    def test_equal_components_swap_invariant(self):
        f = StarForest((1, 1))
        a = ListAssignment(
            f,
            {
                VertexId(0, 0): {1, 2},
                VertexId(0, 1): {3, 4},
                VertexId(1, 0): {1, 3},
                VertexId(1, 1): {2, 4},
            },
        )
        b = ListAssignment(
            f,
            {
                VertexId(0, 0): {1, 3},
                VertexId(0, 1): {2, 4},
                VertexId(1, 0): {1, 2},
                VertexId(1, 1): {3, 4},
            },
        )
        assert canonicalize(a).encoding == canonicalize(b).encoding

    def test_color_permutation_quotient(self):
        rng = random.Random(3)
        for seed in range(300):
            stars = rng.choice([(1,), (2,), (1, 1), (2, 1), (1, 1, 2)])
            f = StarForest(stars)
            k = rng.randint(1, 3)
            L = sample_assignment(f, k, rng.randint(k, k + 4), seed)
            palette = sorted(L.palette)
            img = rng.sample(range(1, 40), len(palette))
            mp = dict(zip(palette, img))
            permuted = ListAssignment(
                f, {v: frozenset(mp[c] for c in L.get(v)) for v in f.vertices()}
            )
            assert canonicalize(L).encoding == canonicalize(permuted).encoding

    def test_idempotent(self):
        rng = random.Random(4)
        for seed in range(200):
            f = StarForest(rng.choice([(2, 2), (3, 1), (1, 1, 1)]))
            L = sample_assignment(f, 2, rng.randint(2, 6), seed)
            once = canonicalize(L)
            assert canonicalize(once.lists).encoding == once.encoding

    def test_leaf_permutation_invariant(self):
        f = StarForest((3,))
        base = {
            VertexId(0, 0): {1, 2},
            VertexId(0, 1): {2, 3},
            VertexId(0, 2): {1, 4},
            VertexId(0, 3): {3, 4},
        }
        a = canonicalize(ListAssignment(f, base))
        shuffled = dict(base)
        shuffled[VertexId(0, 1)], shuffled[VertexId(0, 3)] = (
            base[VertexId(0, 3)],
            base[VertexId(0, 1)],
        )
        b = canonicalize(ListAssignment(f, shuffled))
        assert a.encoding == b.encoding


class TestFastCheckAgreesWithBruteForce:
    def test_randomized_equivalence(self):
        rng = random.Random(17)

        def renumber(stars, blocks):
            # fixpoint of (first-appearance rename; structural sort)
            while True:
                mp = {}
                for center, leaves in blocks:
                    for lst in (center, *leaves):
                        for c in sorted(lst):
                            if c not in mp:
                                mp[c] = len(mp) + 1
                out = []
                for center, leaves in blocks:
                    c2 = tuple(sorted(mp[c] for c in center))
                    l2 = tuple(sorted(tuple(sorted(mp[c] for c in lst)) for lst in leaves))
                    out.append((c2, l2))
                by_m = {}
                for m, b in zip(stars, out):
                    by_m.setdefault(m, []).append(b)
                for group in by_m.values():
                    group.sort()
                iters = {m: iter(g) for m, g in by_m.items()}
                out = [next(iters[m]) for m in stars]
                if out == blocks:
                    return out
                blocks = out

        for trial in range(1500):
            stars = rng.choice([(1,), (2,), (3,), (1, 1), (2, 2), (2, 1), (1, 1, 2)])
            k = rng.randint(1, 3)
            pmax = rng.randint(k, k + 3)
            blocks = []
            for m in stars:
                center = tuple(sorted(rng.sample(range(1, pmax + 1), k)))
                leaves = tuple(
                    sorted(tuple(sorted(rng.sample(range(1, pmax + 1), k))) for _ in range(m))
                )
                blocks.append((center, leaves))
            blocks = renumber(tuple(stars), blocks)
            flat = []
            for c, ls in blocks:
                flat.append(c)
                flat.extend(ls)
            enc = tuple(flat)
            assert _beats_identity(tuple(stars), blocks) == bool(
                _min_search(tuple(stars), blocks, target=enc)
            )


class TestDominationBound:
    def test_bound_values(self):
        assert domination_palette_bound(StarForest((6,)), 4) == 9
        assert domination_palette_bound(StarForest((4, 4)), 2) == 5
        assert domination_palette_bound(StarForest((1,)), 1) == 1

    def test_verdicts_match_full_enumeration(self):
        from equistar.choosability import is_equitably_k_choosable
        from equistar.model import rho
        from equistar.solver import decide_raw

        for stars, k in [((1,), 2), ((2,), 3), ((3,), 2), ((1, 1), 2), ((1, 2), 2), ((1, 3), 2)]:
            f = StarForest(stars)
            cap = rho(f, k)
            full = all(
                decide_raw(stars, enc, cap)[0]
                for enc in _iter_canonical_raw(stars, k, default_palette_bound(f, k))
            )
            dom = is_equitably_k_choosable(f, k).status == "choosable"
            assert dom == full


class TestSymmetryInvarianceOfSolver:
    def test_solver_compatible_with_symmetry(self):
        rng = random.Random(23)
        for seed in range(120):
            f = StarForest(rng.choice([(1, 1), (2, 1), (2, 2)]))
            k = rng.randint(1, 3)
            L = sample_assignment(f, k, rng.randint(k, k + 3), seed)
            image = canonicalize(L)
            assert solve(f, L, k).colorable == solve(f, image.lists, k).colorable


class TestSampleAssignment:
    def test_palette_equals_k_gives_constant(self):
        f = StarForest((2, 1))
        L = sample_assignment(f, 3, 3, seed=99)
        assert all(L.get(v) == frozenset({1, 2, 3}) for v in f.vertices())

    def test_seed_determinism(self):
        f = StarForest((2, 2))
        a = sample_assignment(f, 3, 9, seed=1)
        b = sample_assignment(f, 3, 9, seed=1)
        assert json.dumps(a.to_json_dict()) == json.dumps(b.to_json_dict())

    def test_golden_sample(self, tmp_path):
        import pathlib

        f = StarForest((2, 2))
        got = sample_assignment(f, 3, 9, seed=1).to_json_dict()
        golden = pathlib.Path(__file__).parent / "data" / "sample_2_2_k3_p9_seed1.json"
        assert got == json.loads(golden.read_text())

    def test_palette_below_k_rejected(self):
        with pytest.raises(ValueError):
            sample_assignment(StarForest((1,)), 3, 2, seed=0)

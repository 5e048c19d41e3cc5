import json

import pytest
from hypothesis import given, strategies as st

from equistar.model import (
    Coloring,
    ListAssignment,
    StarForest,
    VertexId,
    is_equitable_k_coloring,
    is_equitable_list_coloring,
    is_proper,
    rho,
)


def coloring_of(*pairs):
    return Coloring({VertexId(c, s): col for (c, s), col in pairs})


class TestStarForest:
    def test_vertex_count_and_order(self):
        f = StarForest((2, 0, 1))
        assert f.vertex_count == 6
        assert [v.key() for v in f.vertices()] == ["0.0", "0.1", "0.2", "1.0", "2.0", "2.1"]

    def test_rejects_empty_and_negative(self):
        with pytest.raises(ValueError):
            StarForest(())
        with pytest.raises(ValueError):
            StarForest((1, -1))

    def test_json_round_trip(self):
        f = StarForest((7, 8))
        assert StarForest.from_json_dict(json.loads(json.dumps(f.to_json_dict()))) == f


class TestRho:
    def test_examples(self):
        assert rho(StarForest((7, 8)), 2) == 9
        assert rho(StarForest((8, 8)), 2) == 9  # k^3 - k + 3 at k=2
        assert rho(StarForest((52, 27)), 3) == 27  # k^3 - k + 3 at k=3

    def test_rejects_k_zero(self):
        with pytest.raises(ValueError):
            rho(StarForest((1,)), 0)

    @given(
        stars=st.lists(st.integers(0, 9), min_size=1, max_size=5),
        k=st.integers(1, 9),
    )
    def test_cap_covers_vertices(self, stars, k):
        f = StarForest(tuple(stars))
        assert rho(f, k) * k >= f.vertex_count


class TestIsProper:
    def test_two_stars_proper(self):
        f = StarForest((1, 1))
        c = coloring_of(((0, 0), 1), ((0, 1), 2), ((1, 0), 2), ((1, 1), 1))
        assert is_proper(f, c)

    def test_center_leaf_clash(self):
        f = StarForest((1,))
        assert not is_proper(f, coloring_of(((0, 0), 1), ((0, 1), 1)))

    def test_partial_allowed(self):
        f = StarForest((2,))
        assert is_proper(f, coloring_of(((0, 0), 1), ((0, 1), 2)))

    def test_unknown_vertex_rejected(self):
        f = StarForest((1,))
        with pytest.raises(ValueError):
            is_proper(f, coloring_of(((5, 0), 1)))


class TestEquitableListColoring:
    def test_positive(self):
        f = StarForest((1, 1))
        L = ListAssignment.constant(f, {1, 2})
        c = coloring_of(((0, 0), 1), ((0, 1), 2), ((1, 0), 2), ((1, 1), 1))
        assert is_equitable_list_coloring(f, L, c, 2)

    def test_cap_overflow(self):
        f = StarForest((3,))
        L = ListAssignment.constant(f, {1, 2})
        c = coloring_of(((0, 0), 1), ((0, 1), 2), ((0, 2), 2), ((0, 3), 2))
        assert not is_equitable_list_coloring(f, L, c, 2)  # color 2 used 3 > rho = 2

    def test_constant_three_assignment_defeats_6_1(self):
        # no total proper list coloring of (6,1) under constant {1,2,3} passes
        import itertools

        f = StarForest((6, 1))
        L = ListAssignment.constant(f, {1, 2, 3})
        vertices = list(f.vertices())
        found = False
        for combo in itertools.product((1, 2, 3), repeat=len(vertices)):
            c = Coloring(dict(zip(vertices, combo)))
            if is_equitable_list_coloring(f, L, c, 3):
                found = True
                break
        assert not found

    @given(st.data())
    def test_equitable_implies_proper_and_list_respect(self, data):
        stars = tuple(data.draw(st.lists(st.integers(0, 3), min_size=1, max_size=3)))
        f = StarForest(stars)
        k = data.draw(st.integers(1, 3))
        palette = list(range(1, k + 3))
        lists = {
            v: frozenset(data.draw(st.permutations(palette))[:k]) for v in f.vertices()
        }
        L = ListAssignment(f, lists)
        colors = {
            v: data.draw(st.sampled_from(palette), label=v.key()) for v in f.vertices()
        }
        c = Coloring(colors)
        if is_equitable_list_coloring(f, L, c, k):
            assert is_proper(f, c)
            assert all(c.assignment[v] in L.get(v) for v in f.vertices())


class TestEquitableKColoring:
    def test_path_star_three_leaves_never_equitable(self):
        import itertools

        f = StarForest((3,))
        vertices = list(f.vertices())
        for combo in itertools.product((1, 2), repeat=4):
            c = Coloring(dict(zip(vertices, combo)))
            if is_proper(f, c):
                assert not is_equitable_k_coloring(f, c, 2)

    def test_two_two_three_positive(self):
        # orientation found by the reduction DP gives classes 5/5
        from equistar.reduction import equitable_2colorable, orientation_coloring

        f = StarForest((2, 2, 3))
        bits = equitable_2colorable(f)
        assert bits is not None
        assert is_equitable_k_coloring(f, orientation_coloring(f, bits), 2)

    def test_single_edge(self):
        f = StarForest((1,))
        assert is_equitable_k_coloring(f, coloring_of(((0, 0), 1), ((0, 1), 2)), 2)

    def test_empty_classes_counted(self):
        f = StarForest((0, 0, 0))
        c = coloring_of(((0, 0), 1), ((1, 0), 1), ((2, 0), 1))
        assert not is_equitable_k_coloring(f, c, 3)  # classes 3,0,0


class TestListAssignment:
    def test_missing_vertex_rejected(self):
        f = StarForest((1,))
        with pytest.raises(ValueError):
            ListAssignment(f, {VertexId(0, 0): {1}})

    def test_empty_list_rejected(self):
        f = StarForest((1,))
        with pytest.raises(ValueError):
            ListAssignment(f, {VertexId(0, 0): {1}, VertexId(0, 1): set()})

    def test_json_round_trip(self):
        f = StarForest((1, 2))
        L = ListAssignment(
            f,
            {
                VertexId(0, 0): {1, 5},
                VertexId(0, 1): {2, 3},
                VertexId(1, 0): {1, 2},
                VertexId(1, 1): {4, 5},
                VertexId(1, 2): {1, 4},
            },
        )
        data = json.loads(json.dumps(L.to_json_dict()))
        assert ListAssignment.from_json_dict(f, data) == L

    def test_constant_k_assignment(self):
        f = StarForest((2,))
        L = ListAssignment.constant(f, {1, 2, 3})
        assert L.is_k_assignment(3)
        assert L.palette == frozenset({1, 2, 3})


class TestColoringJson:
    def test_round_trip(self):
        c = coloring_of(((0, 0), 3), ((0, 1), 1))
        data = json.loads(json.dumps(c.to_json_dict()))
        assert Coloring.from_json_dict(data).assignment == c.assignment

    def test_usage_recount(self):
        c = coloring_of(((0, 0), 1), ((0, 1), 2), ((1, 0), 1))
        assert c.usage == {1: 2, 2: 1}

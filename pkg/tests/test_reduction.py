from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from closurelab.errors import DimensionNot2, NonPreservingReducer, NotFullDimensional, PreservingReducer, Unbounded
from closurelab.lattice import make_split
from closurelab.polyhedra import Polyhedron, recession_cone
from closurelab.reduction import (
    ReducerClass,
    classify_reducer,
    extreme_points_of_reduction,
    nonclosed_witness,
    reduce,
    reduce_oracle_2d,
    reduction_contains,
)

TRIANGLE = Polyhedron.from_v(2, [(0, 0), (2, 0), (0, 2)])
SPLIT = make_split((1, 0), 0)
SLAB = Polyhedron.from_h(2, [((1, 0), 1), ((-1, 0), 1)])
ORTHANT_NEG = Polyhedron.from_h(2, [((1, 0), 0), ((0, 1), 0)])
CORNER = Polyhedron.from_h(2, [((1, 0), 1), ((0, 1), 1)])

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=2)


@st.composite
def polygons(draw):
    pts = draw(st.lists(st.tuples(rationals, rationals), min_size=3, max_size=6))
    P = Polyhedron.from_v(2, pts)
    assume(P.is_full_dimensional)
    return P


@st.composite
def splits(draw):
    u = draw(st.sampled_from([(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (2, -1)]))
    return make_split(u, draw(st.integers(-3, 2)))


class TestClassify:
    def test_examples(self):
        assert classify_reducer(Polyhedron.from_h(2, [((1, 0), 0)])) is ReducerClass.HALFSPACE
        assert classify_reducer(SPLIT) is ReducerClass.REC_LINEAR
        assert classify_reducer(CORNER) is ReducerClass.NON_PRESERVING
        assert classify_reducer(TRIANGLE) is ReducerClass.REC_LINEAR

    def test_full_dimensional_required(self):
        with pytest.raises(NotFullDimensional):
            classify_reducer(Polyhedron.from_v(2, [(0, 0), (1, 0)]))


class TestReduce:
    def test_triangle_split(self):
        R = reduce(TRIANGLE, SPLIT)
        assert R == Polyhedron.from_v(2, [(0, 0), (0, 2), (1, 1), (2, 0)])
        # (1, 1) lies on the segment from (0, 2) to (2, 0), so it is no vertex
        assert set(R.vertices) == {(0, 0), (0, 2), (2, 0)}

    def test_triangle_slab(self):
        assert reduce(TRIANGLE, SLAB) == Polyhedron.from_v(2, [(1, 0), (2, 0), (1, 1)])

    def test_disjoint_interior(self):
        L = make_split((1, 0), 5)
        assert reduce(TRIANGLE, L) == TRIANGLE

    def test_swallowed(self):
        L = Polyhedron.from_v(2, [(-1, -1), (5, -1), (-1, 5)])
        assert reduce(TRIANGLE, L).is_empty

    def test_halfspace(self):
        H = Polyhedron.from_h(2, [((1, 0), 1)])
        assert reduce(TRIANGLE, H) == Polyhedron.from_v(2, [(1, 0), (2, 0), (1, 1)])

    def test_lines_not_in_recession(self):
        P = Polyhedron.from_h(2, [((0, 1), 1), ((0, -1), 0)])  # horizontal strip
        assert reduce(P, SPLIT) == P

    def test_lines_in_recession(self):
        # vertical strip 0 <= x1 <= 3 reduced by the split 1 <= x1 <= 2
        P = Polyhedron.from_h(2, [((1, 0), 3), ((-1, 0), 0)])
        R = reduce(P, make_split((1, 0), 1))
        assert R == P

    def test_cylinder_reduction(self):
        # triangle times a line, cut by the split x1 in [0, 1] times the same line
        P = Polyhedron.from_v(3, [(0, 0, 0), (2, 0, 0), (0, 2, 0)], lines=[(0, 0, 1)])
        L = Polyhedron.from_h(3, [((1, 0, 0), 1), ((-1, 0, 0), 1)])
        R = reduce(P, L)
        assert R == Polyhedron.from_v(3, [(1, 0, 0), (2, 0, 0), (1, 1, 0)], lines=[(0, 0, 1)])

    def test_unbounded(self):
        # apex on the boundary of the split: nothing to cut
        P = Polyhedron.from_v(2, [(0, 0)], [(1, 0), (1, 1)])
        assert reduce(P, SPLIT) == P
        # apex inside: both rays are cut where they leave the split
        P = Polyhedron.from_v(2, [(F(1, 2), 0)], [(1, 0), (1, 1)])
        R = reduce(P, SPLIT)
        assert R == Polyhedron.from_v(2, [(1, 0), (1, F(1, 2))], [(1, 0), (1, 1)])
        assert recession_cone(R) == recession_cone(P)

    def test_non_preserving(self):
        with pytest.raises(NonPreservingReducer):
            reduce(TRIANGLE, CORNER)

    def test_empty_input(self):
        assert reduce(Polyhedron.empty(2), SPLIT).is_empty

    @given(polygons(), splits())
    def test_matches_oracle(self, P, L):
        assert reduce(P, L) == reduce_oracle_2d(P, L)

    @given(polygons(), splits())
    def test_monotone_and_idempotent(self, P, L):
        R = reduce(P, L)
        assert R.issubset(P)
        assert reduce(R, L) == R if not R.is_empty else True
        for v in R.vertices:
            assert not L.in_interior(v)

    @given(polygons(), polygons(), splits())
    def test_hull_monotonicity(self, P, Q, L):
        small = P.intersect(Q)
        assume(not small.is_empty)
        assert reduce(small, L).issubset(reduce(P, L))

    @given(polygons(), splits())
    def test_extreme_points_match(self, P, L):
        R = reduce(P, L)
        if R.is_empty:
            return
        assert extreme_points_of_reduction(P, L) == frozenset(R.vertices)


class TestExtremePoints:
    def test_slab(self):
        assert extreme_points_of_reduction(TRIANGLE, SLAB) == {(1, 0), (2, 0), (1, 1)}

    def test_untouched(self):
        assert extreme_points_of_reduction(TRIANGLE, make_split((1, 0), 7)) == set(TRIANGLE.vertices)

    def test_square_split(self):
        sq = Polyhedron.from_v(2, [(0, 0), (2, 0), (0, 2), (2, 2)])
        assert extreme_points_of_reduction(sq, SPLIT) == {(0, 0), (0, 2), (2, 0), (2, 2)}


class TestOracle:
    def test_examples(self):
        assert reduce_oracle_2d(TRIANGLE, SPLIT) == Polyhedron.from_v(2, [(0, 0), (0, 2), (1, 1), (2, 0)])
        big = Polyhedron.from_v(2, [(-1, -1), (5, -1), (-1, 5)])
        assert reduce_oracle_2d(TRIANGLE, big).is_empty
        assert reduce_oracle_2d(TRIANGLE, make_split((0, 1), 4)) == TRIANGLE

    def test_errors(self):
        with pytest.raises(DimensionNot2):
            reduce_oracle_2d(Polyhedron.from_v(3, [(0, 0, 0)]), SPLIT)
        with pytest.raises(Unbounded):
            reduce_oracle_2d(Polyhedron.from_v(2, [(0, 0)], [(1, 0)]), SPLIT)


class TestWitness:
    def test_orthant_instance(self):
        w = nonclosed_witness(ORTHANT_NEG)
        assert w.K == Polyhedron.from_h(2, [((1, 0), 1), ((0, -1), 1)])
        assert w.p == (-1, -1) and w.u2 == (0, -1) and w.t == 1
        assert not reduction_contains(w.K, ORTHANT_NEG, w.p)
        for eps in (1, F(1, 2), F(1, 4), F(1, 8)):
            assert reduction_contains(w.K, ORTHANT_NEG, w.approach_point(eps))

    @pytest.mark.parametrize(
        "L",
        [
            CORNER,
            Polyhedron.from_h(2, [((1, 0), 1)]).intersect(Polyhedron.from_h(2, [((-1, 2), 3)])),
            # one-dimensional pointed part: a half-strip
            Polyhedron.from_h(2, [((1, 0), 1), ((-1, 0), 1), ((0, 1), 0)]),
            # 3D: a wedge with a line, and a simplicial cone
            Polyhedron.from_h(3, [((1, 0, 0), 0), ((0, 1, 0), 0)]),
            Polyhedron.from_h(3, [((1, 0, 0), 1), ((-1, 1, 0), 1), ((0, -1, 1), 1)]),
        ],
    )
    def test_membership_pattern(self, L):
        w = nonclosed_witness(L)
        assert L.in_interior(w.p)
        assert not reduction_contains(w.K, L, w.p)
        for eps in (1, F(1, 2), F(1, 4), F(1, 8)):
            assert reduction_contains(w.K, L, w.approach_point(eps))

    def test_preserving(self):
        with pytest.raises(PreservingReducer):
            nonclosed_witness(SPLIT)

    def test_membership_on_closed_reduction(self):
        # for a preserving reducer, exact membership agrees with reduce
        R = reduce(TRIANGLE, SLAB)
        for x in [(1, 0), (F(3, 2), F(1, 4)), (F(1, 2), F(1, 2)), (0, 0), (2, 0)]:
            assert reduction_contains(TRIANGLE, SLAB, x) == R.contains(x)

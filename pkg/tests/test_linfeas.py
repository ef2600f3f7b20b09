from fractions import Fraction

import pytest

from ifslab.linfeas import (
    LpInfeasible,
    convex_combination_residual,
    halfspace_interior_slack,
    min_infeasibility,
    solve_min,
)

F = Fraction


class TestSolveMin:
    def test_known_optimum(self):
        # min x + y s.t. x + 2y = 4, 3x + y = 5, x,y >= 0
        val, z = solve_min([1, 1], [[1, 2], [3, 1]], [4, 5])
        assert z == [F(6, 5), F(7, 5)]
        assert val == F(13, 5)

    def test_infeasible(self):
        with pytest.raises(LpInfeasible):
            solve_min([1], [[1], [1]], [1, 2])

    def test_redundant_rows_dropped(self):
        # the duplicated constraint leaves an artificial basic at zero
        val, z = solve_min([2, 3], [[1, 1], [1, 1], [1, 0]], [1, 1, F(1, 4)])
        assert z == [F(1, 4), F(3, 4)]
        assert val == F(1, 4) * 2 + F(3, 4) * 3

    def test_degenerate_vertex(self):
        # multiple constraints meet at the optimum; Bland still terminates
        val, _ = solve_min([1, 1, 0], [[1, 0, 1], [0, 1, 1]], [0, 0])
        assert val == 0


class TestMinInfeasibility:
    def test_zero_when_feasible(self):
        assert min_infeasibility([[1, 1]], [1]) == 0

    def test_positive_residual(self):
        # x = -1 with x >= 0: distance 1
        assert min_infeasibility([[1]], [-1]) == 1

    def test_exact_fractions(self):
        r = min_infeasibility([[F(1, 3), F(1, 7)]], [F(1, 21)])
        assert r == 0


class TestConvexResidual:
    def test_inside_square(self):
        pts = [(0, 0), (1, 0), (0, 1), (1, 1)]
        assert convex_combination_residual(pts, (0.5, 0.5)) == 0

    def test_outside(self):
        pts = [(0, 0), (1, 0)]
        assert convex_combination_residual(pts, (2, 0)) > 0

    def test_min_weight_shrinks_feasible_region(self):
        pts = [(0,), (1,)]
        assert convex_combination_residual(pts, (0.001,), min_weight=0) == 0
        assert convex_combination_residual(pts, (0.001,), min_weight=F(1, 100)) > 0
        assert convex_combination_residual(pts, (0.5,), min_weight=F(1, 100)) == 0


class TestInteriorSlack:
    def test_unit_right_triangle_slack(self):
        # raw normals: max t with t <= x, t <= y, x + y + t <= 1 gives 1/3
        hs = [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)]
        assert halfspace_interior_slack(hs) == F(1, 3)

    def test_touching_halfspaces(self):
        hs = [((1,), 0), ((-1,), 0)]  # x <= 0 and x >= 0: single point
        assert halfspace_interior_slack(hs) == 0

    def test_empty(self):
        hs = [((1,), 0), ((-1,), -1)]  # x <= 0 and x >= 1
        assert halfspace_interior_slack(hs) is None

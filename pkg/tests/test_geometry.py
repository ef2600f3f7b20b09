from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ifslab.core import new_ifs
from ifslab.errors import DimensionMismatch, UnsupportedDimension
from ifslab.geometry import (
    contains,
    contains_many,
    hull_polytope,
    image_polytope,
    sample_uniform,
    volume,
    volume_mc,
)
from ifslab.linfeas import convex_combination_residual, halfspace_interior_slack

from helpers import triangle_system, unit_system

UNIT_TRIANGLE = hull_polytope([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
UNIT_INTERVAL = hull_polytope([(0.0,), (1.0,)])


class TestContains:
    def test_interval(self):
        assert contains(UNIT_INTERVAL, (0.5,))
        assert contains(UNIT_INTERVAL, (0.0,))
        assert not contains(UNIT_INTERVAL, (1.1,))

    def test_boundary_fails_interior_margin(self):
        assert not contains(UNIT_INTERVAL, (0.0,), margin=0.01)
        assert contains(UNIT_INTERVAL, (0.5,), margin=0.01)

    def test_triangle_convex_combination(self):
        assert contains(UNIT_TRIANGLE, (0.25, 0.25))
        assert not contains(UNIT_TRIANGLE, (0.6, 0.6))

    def test_tolerance_widens_closed(self):
        assert contains(UNIT_INTERVAL, (1.0 + 5e-10,))
        assert not contains(UNIT_INTERVAL, (1.0 + 5e-9,))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            contains(UNIT_INTERVAL, (0.5, 0.5))

    def test_margin_implies_closed_and_monotone(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            x = tuple(rng.uniform(-0.3, 1.3, size=2))
            big = contains(UNIT_TRIANGLE, x, margin=0.05)
            small = contains(UNIT_TRIANGLE, x, margin=0.01)
            closed = contains(UNIT_TRIANGLE, x)
            assert (not big or small) and (not small or closed)

    def test_generators_inside(self):
        for g in UNIT_TRIANGLE.generators:
            assert contains(UNIT_TRIANGLE, g)

    def test_exact_path_is_exact(self):
        tri = hull_polytope([(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))])
        eps = Fraction(1, 10**30)
        assert contains(tri, (Fraction(1, 2), Fraction(1, 2)))
        assert not contains(tri, (Fraction(1, 2) + eps, Fraction(1, 2)))

    def test_exact_interior_margin(self):
        seg = hull_polytope([(Fraction(0),), (Fraction(1),)])
        m = Fraction(1, 4)
        assert contains(seg, (Fraction(1, 4),), margin=m)
        assert not contains(seg, (Fraction(1, 4) - Fraction(1, 10**20),), margin=m)


class TestLinearFeasibilityPath:
    def test_tetrahedron_membership(self):
        tet = hull_polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert contains(tet, (0.2, 0.2, 0.2))
        assert not contains(tet, (0.5, 0.5, 0.5))
        assert contains(tet, (0.2, 0.2, 0.2), margin=1e-3)
        assert not contains(tet, (0.0, 0.0, 0.0), margin=1e-3)

    def test_residual_agrees_with_halfspaces_2d(self):
        rng = np.random.default_rng(1)
        gens = [tuple(v) for v in rng.uniform(0, 1, size=(6, 2))]
        poly = hull_polytope(gens)
        for _ in range(120):
            x = tuple(rng.uniform(-0.2, 1.2, size=2))
            by_lp = float(convex_combination_residual(gens, x)) <= 1e-9
            assert by_lp == contains(poly, x, tol=1e-9) or _near_edge(poly, x)

    def test_interior_slack_signs(self):
        hs = [(n, off) for n, off, _ in UNIT_TRIANGLE.halfspaces]
        assert halfspace_interior_slack(hs) > 0
        # shifted apart: empty intersection
        hs_empty = [((1.0,), 0.0), ((-1.0,), -1.0)]  # x <= 0 and x >= 1
        assert halfspace_interior_slack(hs_empty) is None


def _near_edge(poly, x, eps=1e-8):
    return contains(poly, x, tol=eps) != contains(poly, x, tol=-eps)


class TestImagePolytope:
    def test_empty_word_is_omega(self):
        s = triangle_system(0.5)
        assert image_polytope(s, ()).generators == s.omega.generators

    def test_interval_image(self):
        s = unit_system(0.6)
        lo, hi = image_polytope(s, (1,)).bounding_box()
        assert lo[0] == pytest.approx(0.4) and hi[0] == pytest.approx(1.0)

    def test_sierpinski_step(self):
        s = triangle_system(0.5)
        img = image_polytope(s, (0,))
        assert sorted(img.generators) == pytest.approx([(0.0, 0.0), (0.0, 0.5), (0.5, 0.0)])

    def test_diameter_scaling(self):
        s = triangle_system(0.7)
        img = image_polytope(s, (0, 1, 2, 1))
        assert img.diameter() == pytest.approx(0.7**4 * s.diameter())

    def test_nesting_under_extension(self):
        s = triangle_system(0.66)
        w = (1, 0, 2)
        outer = image_polytope(s, w)
        for a in range(3):
            inner = image_polytope(s, w + (a,))
            for g in inner.generators:
                assert contains(outer, g)


class TestVolume:
    def test_interval(self):
        assert volume(UNIT_INTERVAL) == 1.0

    def test_shoelace(self):
        assert volume(UNIT_TRIANGLE) == pytest.approx(0.5)

    def test_scaling_law(self):
        s = triangle_system(0.7)
        img = image_polytope(s, (0, 2, 1))
        ratio = volume(img) / volume(s.omega)
        assert ratio == pytest.approx(0.7**6, rel=1e-9)

    def test_dim3_exact_raises(self):
        tet = hull_polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        with pytest.raises(UnsupportedDimension):
            volume(tet)
        est, err = volume_mc(tet, 4000, seed=5)
        assert est == pytest.approx(1 / 6, abs=4 * err + 0.01)


@settings(max_examples=60, deadline=None)
@given(
    lam=st.floats(0.2, 0.9),
    word=st.lists(st.integers(0, 2), min_size=1, max_size=6).map(tuple),
)
def test_volume_scaling_property(lam, word):
    s = new_ifs(lam, [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])
    img = image_polytope(s, word)
    assert volume(img) / volume(s.omega) == pytest.approx(lam ** (2 * len(word)), rel=1e-9)


def test_sample_uniform_stays_inside():
    rng = np.random.default_rng(3)
    pts = sample_uniform(UNIT_TRIANGLE, 500, rng)
    assert contains_many(UNIT_TRIANGLE, pts).all()
    assert len(pts) == 500

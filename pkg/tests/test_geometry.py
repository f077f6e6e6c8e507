import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from corpus import clouds, regular_polygon
from nervus.complex import betti
from nervus.errors import MalformedInputError
from nervus.geometry import PointCloud, cech_ball_complex, connecting_epsilon, min_enclosing_ball, rips_complex


def circumball(pts):
    """Smallest ball with every point of `pts` on its boundary, or None when degenerate."""
    p0 = np.asarray(pts[0], dtype=float)
    a = np.asarray(pts[1:], dtype=float) - p0
    if not len(a):
        return p0, 0.0
    g = a @ a.T
    if abs(np.linalg.det(g)) < 1e-12:
        return None
    lam = np.linalg.solve(g, 0.5 * np.einsum("ij,ij->i", a, a))
    c = p0 + lam @ a
    return c, float(np.linalg.norm(c - p0))


def brute_meb_radius(pts) -> float:
    """Oracle: smallest enclosing circumball over all supports of size at most d + 1."""
    arr = np.asarray(pts, dtype=float)
    best = math.inf
    for k in range(1, arr.shape[1] + 2):
        for sub in combinations(range(len(arr)), k):
            cb = circumball(arr[list(sub)])
            if cb and cb[1] < best and np.all(np.linalg.norm(arr - cb[0], axis=1) <= cb[1] + 1e-9):
                best = cb[1]
    return best


def simplex_set(k):
    return {frozenset(s) for s in k.all_simplices()}


def is_subcomplex(k, l) -> bool:
    return simplex_set(k) <= simplex_set(l)


class TestMinEnclosingBall:
    def test_single_point(self):
        b = min_enclosing_ball([(1.0, 2.0)])
        assert b.radius == 0 and b.center.tolist() == [1.0, 2.0]

    def test_segment(self):
        b = min_enclosing_ball([(0, 0), (2, 0)])
        assert b.radius == pytest.approx(1) and np.allclose(b.center, [1, 0])

    def test_equilateral(self):
        b = min_enclosing_ball([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
        assert b.radius == pytest.approx(1 / math.sqrt(3))

    def test_obtuse_uses_longest_side(self):
        b = min_enclosing_ball([(0, 0), (4, 0), (2, 0.5)])
        assert b.radius == pytest.approx(2)

    def test_duplicates(self):
        assert min_enclosing_ball([(1, 1)] * 4).radius == 0

    def test_empty(self):
        with pytest.raises(MalformedInputError):
            min_enclosing_ball([])

    @settings(max_examples=150)
    @given(clouds(max_points=7))
    def test_matches_brute_force(self, pts):
        b = min_enclosing_ball(pts)
        assert b.radius == pytest.approx(brute_meb_radius(pts), abs=1e-9)
        assert all(b.contains(p) for p in pts)

    @given(clouds(max_points=10))
    def test_diameter_bounds(self, pts):
        arr = np.asarray(pts)
        diam = max((np.linalg.norm(a - b) for a, b in combinations(arr, 2)), default=0.0)
        r = min_enclosing_ball(pts).radius
        assert diam / 2 - 1e-9 <= r <= diam + 1e-9

    @given(clouds(max_points=8), st.integers(0, 7))
    def test_monotone_under_inclusion(self, pts, drop):
        sub = pts[:drop] + pts[drop + 1:] or pts
        assert min_enclosing_ball(sub).radius <= min_enclosing_ball(pts).radius + 1e-9


class TestRips:
    def test_dodecagon_circle(self):
        k = rips_complex(PointCloud(regular_polygon(12)), 0.6)
        assert k.f_vector() == (12, 12) and betti(k) == (1, 1)

    def test_two_points(self):
        cloud = PointCloud([(0, 0), (1, 0)])
        assert betti(rips_complex(cloud, 0.9)) == (2,)
        assert betti(rips_complex(cloud, 1.0)) == (1, 0)

    def test_triangle_fills(self):
        cloud = PointCloud([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
        assert rips_complex(cloud, 1.0).f_vector() == (3, 3, 1)

    def test_maxdim_truncates(self):
        cloud = PointCloud([(0, 0), (1, 0), (0, 1), (1, 1)])
        assert rips_complex(cloud, 2, maxdim=1).f_vector() == (4, 6)

    def test_bad_arguments(self):
        cloud = PointCloud([(0, 0)])
        with pytest.raises(MalformedInputError):
            rips_complex(cloud, -1)
        with pytest.raises(MalformedInputError):
            PointCloud([(0, float("nan"))])
        with pytest.raises(MalformedInputError):
            PointCloud([tuple(range(17))])

    def test_empty_cloud(self):
        assert len(rips_complex(PointCloud([]), 1.0)) == 0

    @given(clouds(max_points=8), st.floats(0, 3))
    def test_matches_clique_oracle(self, pts, eps):
        arr = np.asarray(pts)
        d = np.linalg.norm(arr[:, None] - arr[None], axis=2)
        assume(np.all(np.abs(d - eps) > 1e-6))
        brute = {frozenset(s) for r in range(1, 5) for s in combinations(range(len(pts)), r)
                 if all(d[i, j] <= eps for i, j in combinations(s, 2))}
        assert simplex_set(rips_complex(PointCloud(pts), eps)) == brute

    @given(clouds(), st.floats(0, 2), st.floats(0, 2))
    def test_monotone_in_eps(self, pts, e1, e2):
        lo, hi = sorted((e1, e2))
        cloud = PointCloud(pts)
        assert is_subcomplex(rips_complex(cloud, lo), rips_complex(cloud, hi))


class TestCechBall:
    def test_dodecagon_circle(self):
        assert betti(cech_ball_complex(PointCloud(regular_polygon(12)), 0.3)) == (1, 1)

    def test_equilateral_threshold(self):
        cloud = PointCloud([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
        assert cech_ball_complex(cloud, 0.5).f_vector() == (3, 3)
        assert cech_ball_complex(cloud, 1 / math.sqrt(3)).f_vector() == (3, 3, 1)

    def test_bad_eps(self):
        with pytest.raises(MalformedInputError):
            cech_ball_complex(PointCloud([(0, 0)]), -0.1)

    @settings(max_examples=100)
    @given(clouds(max_points=7), st.floats(0, 2))
    def test_matches_meb_oracle(self, pts, eps):
        subsets = [s for r in range(1, 5) for s in combinations(range(len(pts)), r)]
        radii = {s: brute_meb_radius([pts[i] for i in s]) for s in subsets}
        assume(all(abs(r - eps) > 1e-6 for r in radii.values()))
        brute = {frozenset(s) for s, r in radii.items() if r <= eps}
        assert simplex_set(cech_ball_complex(PointCloud(pts), eps)) == brute

    @given(clouds(max_points=10), st.floats(0, 2))
    def test_sandwiched_by_rips(self, pts, eps):
        cloud = PointCloud(pts)
        assert is_subcomplex(cech_ball_complex(cloud, eps), rips_complex(cloud, 2 * eps))
        # Jung: a set of diameter ε spanning at most 3 dimensions fits in a ball of radius ε·sqrt(3/8)
        assert is_subcomplex(rips_complex(cloud, eps), cech_ball_complex(cloud, eps * math.sqrt(3 / 8) + 1e-7))


class TestConnectingEpsilon:
    @given(clouds(max_points=10))
    def test_threshold(self, pts):
        cloud = PointCloud(pts)
        eps = connecting_epsilon(cloud)
        assert betti(rips_complex(cloud, eps, maxdim=1))[0] == 1
        if eps > 1e-6:
            assert betti(rips_complex(cloud, eps - 1e-6, maxdim=1))[0] > 1

    def test_single_point(self):
        assert connecting_epsilon(PointCloud([(3, 3)])) == 0.0

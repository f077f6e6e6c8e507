from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import EDGE, HOLLOW_TRIANGLE, complexes
from nervus.complex import SimplicialMap, betti, complex_from_maximal, find_isomorphism, homology_map
from nervus.context import cech_nerve
from nervus.errors import CapExceededError, DivergenceError, MalformedInputError
from nervus.fractafold import (Interval, OdeParams, Tower, cantor_context, cantor_intervals, cantor_tower,
                               carpet_complex, carpet_squares, cycle_complex, rossler_cloud, rossler_trajectory,
                               solenoid_tower, sponge_complex, sponge_cubes, star_cover, tower_homology)


class TestIntervals:
    def test_half_open_membership(self):
        iv = Interval(Fraction(0), Fraction(1, 3), True, False)
        assert iv.contains(0) and not iv.contains(Fraction(1, 3)) and iv.label == "[0,1/3)"

    @given(st.integers(0, 7))
    def test_stage_invariants(self, n):
        ivs = cantor_intervals(n).intervals
        assert len(ivs) == 2 ** n
        assert all(a.hi < b.lo for a, b in zip(ivs, ivs[1:]))
        assert all(iv.hi - iv.lo == Fraction(1, 3 ** n) for iv in ivs)
        children = cantor_intervals(n + 1).intervals
        for i, iv in enumerate(ivs):
            assert children[2 * i].subset_of(iv) and children[2 * i + 1].subset_of(iv)


class TestCantor:
    def test_level_one_cover(self):
        p = cantor_context(1)
        assert p.attributes == ("[0,1/3)", "(0,1/3]", "[2/3,1)", "(2/3,1]")
        assert len(p.objects) == 6

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_nerve_is_disjoint_edges(self, n):
        k = cech_nerve(cantor_context(n))
        assert betti(k) == (2 ** n, 0)
        assert find_isomorphism(k, complex_from_maximal([(2 * i, 2 * i + 1) for i in range(2 ** n)])) is not None

    def test_bad_levels(self):
        with pytest.raises(MalformedInputError):
            cantor_context(0)
        with pytest.raises(CapExceededError):
            cantor_context(13)
        with pytest.raises(CapExceededError):
            cantor_tower(4, cap=3)

    def test_tower_sizes_and_maps(self):
        ct = cantor_tower(3)
        assert [len(q.poset) for q in ct.quotients] == [6, 12, 24]
        assert all(m.is_surjective() and m.is_monotone() for m in ct.sorkin_maps)
        assert ct.tower.levels == (1, 2, 3)

    def test_tower_bonds_send_children_to_parents(self):
        bond = cantor_tower(2).tower.bonds[0]
        assert bond.vertex_map["[0,1/9)"] == "[0,1/3)"
        assert bond.vertex_map["(2/9,1/3]"] == "(0,1/3]"
        assert bond.vertex_map["[8/9,1)"] == "[2/3,1)"

    def test_tower_homology(self):
        th = tower_homology(cantor_tower(3).tower)
        assert th.betti == ((2, 0), (4, 0), (8, 0))
        for mats in th.bonding:
            m = np.array(mats[0], dtype=int)
            # each child component lands in exactly one parent, two children per parent
            assert (m.sum(axis=0) == 1).all() and (m.sum(axis=1) == 2).all()

    def test_single_level(self):
        assert tower_homology(cantor_tower(1).tower).bonding == ()


class TestStarCover:
    @pytest.mark.parametrize("k", [EDGE, HOLLOW_TRIANGLE, complex_from_maximal([("a", "b", "c")])])
    def test_fixed_point(self, k):
        assert find_isomorphism(cech_nerve(star_cover(k)), k) is not None

    def test_edge_nerve_is_edge(self):
        assert cech_nerve(star_cover(EDGE)).f_vector() == (2, 1)

    def test_carpet(self):
        assert betti(cech_nerve(star_cover(carpet_complex(1)))) == (1, 1, 0)

    @settings(max_examples=30)
    @given(complexes(max_vertices=6))
    def test_fixed_point_property(self, k):
        assert find_isomorphism(cech_nerve(star_cover(k)), k) is not None


class TestCarpetSponge:
    def test_counts(self):
        assert len(carpet_squares(1)) == 8
        assert carpet_complex(1).f_vector()[2] == 16
        assert len(sponge_cubes(1)) == 20

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_carpet_holes(self, n):
        k = carpet_complex(n)
        b = betti(k)
        assert b[1] == (8 ** n - 1) // 7 == 1 - k.euler_characteristic()
        assert b[0] == 1 and b[2] == 0

    def test_sponge_level_one(self):
        k = sponge_complex(1)
        b = betti(k)
        assert sum((-1) ** i * x for i, x in enumerate(b)) == k.euler_characteristic()
        # connectivity by breadth-first search over edges
        adj = {v: set() for v in k.vertices}
        for a, c in k.n_simplices(1):
            adj[a].add(c)
            adj[c].add(a)
        seen, todo = set(), [k.vertices[0]]
        while todo:
            v = todo.pop()
            if v not in seen:
                seen.add(v)
                todo.extend(adj[v] - seen)
        assert len(seen) == len(k.vertices) and b[0] == 1
        assert b == (1, 5, 0, 0)  # thickened 1-skeleton of the cube: 12 - 8 + 1 loops

    def test_caps(self):
        with pytest.raises(CapExceededError):
            sponge_complex(3)
        with pytest.raises(CapExceededError):
            carpet_complex(5)


class TestSolenoid:
    def test_levels_and_bonds(self):
        t = solenoid_tower(4, 3)
        assert [len(k.vertices) for k in t.complexes] == [4, 8, 16, 32]
        th = tower_homology(t)
        assert all(b == (1, 1) for b in th.betti)
        assert [m[1] for m in th.bonding] == [[[2]]] * 3

    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_composites(self, j):
        t = solenoid_tower(3, 4)
        assert homology_map(t.composite(j, 0), 1) == [[2 ** j]]

    def test_invalid(self):
        with pytest.raises(MalformedInputError):
            solenoid_tower(2, 2)
        with pytest.raises(CapExceededError):
            solenoid_tower(4, 20)

    def test_tower_checks_endpoints(self):
        a, b = cycle_complex(3), cycle_complex(4)
        with pytest.raises(MalformedInputError):
            Tower((0, 1), (a, b), (SimplicialMap.identity(a),))


class TestRossler:
    def test_bounded_and_counted(self):
        cloud = rossler_cloud(OdeParams(), 400)
        assert len(cloud) == 400 and cloud.dim == 3
        assert np.abs(cloud.points).max() < 100

    def test_deterministic(self):
        p = OdeParams(steps=2000, transient=500)
        assert np.array_equal(rossler_cloud(p, 50).points, rossler_cloud(p, 50).points)

    def test_matches_scipy_reference(self):
        from scipy.integrate import solve_ivp

        p = OdeParams(steps=500, transient=0)

        def rhs(_, s):
            x, y, z = s
            return [-(y + z), x + p.a * y, p.b + x * z - p.c * z]

        ref = solve_ivp(rhs, (0, 5), [1, 1, 1], rtol=1e-10, atol=1e-12, t_eval=[5]).y[:, 0]
        assert np.allclose(rossler_trajectory(p)[-1], ref, atol=1e-6)

    def test_divergence_reports_step(self):
        with pytest.raises(DivergenceError) as info:
            rossler_trajectory(OdeParams(c=-50.0, dt=0.5, steps=200, transient=0))
        assert info.value.step >= 1

    def test_invalid_params(self):
        with pytest.raises(MalformedInputError):
            OdeParams(steps=10, transient=20)
        with pytest.raises(MalformedInputError):
            OdeParams(dt=0)
        with pytest.raises(MalformedInputError):
            rossler_cloud(OdeParams(steps=100, transient=50), 60)

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import contexts, random_surjective_transform
from nervus.context import ChuSpace, enumerate_splittings
from nervus.errors import MalformedInputError, RefinementError
from nervus.fractafold import cantor_context, cantor_cover, cantor_points, interval_context
from nervus.refinement import (check_refinement_map, check_refinement_relation, chu_refinement_relation,
                               extend_to_fin, identity_carrier, maximal_refinement_relation, sorkin_refinement_map,
                               subsets)


def sound(pairs, f, p, q) -> bool:
    """Oracle: soundness straight from the definition."""
    return all(q.satisfies(f[x], b) for a, b in pairs for x in p.objects if p.satisfies(x, a))


class TestRelations:
    def test_empty_relation_valid(self):
        p = cantor_context(1)
        check_refinement_relation([], identity_carrier(p), p, p)

    def test_chu_relation_valid(self):
        rng = random.Random(3)
        for _ in range(20):
            t = random_surjective_transform(rng)
            rel = chu_refinement_relation(t)
            assert rel.is_total()  # f_a is onto, so every source attribute is hit

    def test_disjoint_extent_violation(self):
        p = ChuSpace.from_matrix(["x", "y"], ["a", "b"], [[1, 0], [0, 1]])
        with pytest.raises(RefinementError, match="'x'"):
            check_refinement_relation([("a", "b")], identity_carrier(p), p, p)

    def test_identity_maximal_is_extent_containment(self):
        p = cantor_context(2)
        rel = maximal_refinement_relation(identity_carrier(p), p, p)
        for a in p.attributes:
            assert (a, a) in rel.pairs
            for b in p.attributes:
                assert ((a, b) in rel.pairs) == (p.extent(a) <= p.extent(b))

    def test_empty_extent_relates_to_everything(self):
        p = ChuSpace.from_matrix(["x"], ["a", "dead"], [[1, 0]])
        rel = maximal_refinement_relation(identity_carrier(p), p, p)
        assert rel.related("dead") == ["a", "dead"]

    def test_cantor_children_refine_into_parents(self):
        fine = cantor_context(2)
        coarse = interval_context(cantor_points(2), cantor_cover(1))
        rel = maximal_refinement_relation(identity_carrier(fine), fine, coarse)
        assert rel.related("[0,1/9)") == ["[0,1/3)"]
        assert rel.related("(2/9,1/3]") == ["(0,1/3]"]
        assert rel.related("[2/9,1/3)") == ["[0,1/3)", "(0,1/3]"]

    @given(contexts(4, 4), contexts(4, 4), st.data())
    def test_maximal_relation_is_exactly_the_sound_pairs(self, p, q, data):
        if not q.objects:
            return
        f = {x: data.draw(st.sampled_from(q.objects)) for x in p.objects}
        rel = maximal_refinement_relation(f, p, q)
        for a in p.attributes:
            for b in q.attributes:
                assert ((a, b) in rel.pairs) == sound([(a, b)], f, p, q)
        check_refinement_relation(rel.pairs, f, p, q)

    def test_bad_carrier(self):
        p = cantor_context(1)
        with pytest.raises(MalformedInputError):
            check_refinement_relation([], {}, p, p)


class TestMaps:
    def test_splittings_are_refinement_maps(self):
        rng = random.Random(8)
        for _ in range(20):
            t = random_surjective_transform(rng)
            for s in enumerate_splittings(t.f_a, t.target.attributes):
                check_refinement_map(s.choice, t.f_o, t.source, t.target)

    def test_constant_to_universal(self):
        p = ChuSpace.from_matrix(["x", "y"], ["a", "b", "top"], [[1, 0, 1], [0, 1, 1]])
        check_refinement_map({a: "top" for a in p.attributes}, identity_carrier(p), p, p)

    def test_to_never_satisfied(self):
        p = ChuSpace.from_matrix(["x"], ["a", "never"], [[1, 0]])
        with pytest.raises(RefinementError, match="'a'"):
            check_refinement_map({"a": "never", "never": "never"}, identity_carrier(p), p, p)


class TestFinExtension:
    @pytest.fixture
    def rel(self):
        p = cantor_context(2)
        coarse = interval_context(cantor_points(2), cantor_cover(1))
        return maximal_refinement_relation(identity_carrier(p), p, coarse)

    def test_empty_to_empty(self, rel):
        assert extend_to_fin(rel)(set(), set())

    def test_union_and_monotonicity(self, rel):
        fin = extend_to_fin(rel)
        src = rel.source.attributes[:4]
        tgt = rel.target.attributes
        for x in subsets(src):
            for y1 in subsets(tgt):
                for y2 in subsets(tgt):
                    if fin(x, y1) and fin(x, y2):
                        assert fin(x, y1 | y2)
                    if fin(x, y1) and y1 <= y2:
                        for x1 in subsets(x):
                            assert fin(x1, y2)


class TestSorkinMaps:
    def test_cantor_two_onto_one(self):
        fine = cantor_context(2)
        coarse = interval_context(cantor_points(2), cantor_cover(1))
        m = sorkin_refinement_map(fine, coarse, coarse_quotient=None)
        assert len(m.fine.poset) == 12 and len(m.coarse.poset) == 6
        assert m.is_monotone() and m.is_surjective()

    def test_identity(self):
        p = cantor_context(1)
        m = sorkin_refinement_map(p, p)
        assert all(a == b for a, b in m.mapping.items())

    def test_single_universal_attribute(self):
        p = cantor_context(1)
        coarse = ChuSpace.from_matrix(p.objects, ["all"], [[1]] * len(p.objects))
        m = sorkin_refinement_map(p, coarse)
        assert set(m.mapping.values()) == {"{all}"}

    def test_object_sets_must_agree(self):
        with pytest.raises(MalformedInputError):
            sorkin_refinement_map(cantor_context(1), cantor_context(2))

    def test_uncovered_fine_attribute(self):
        p = ChuSpace.from_matrix(["x", "y"], ["a", "b"], [[1, 0], [0, 1]])
        coarse = ChuSpace.from_matrix(["x", "y"], ["only_x"], [[1], [0]])
        with pytest.raises(RefinementError):
            sorkin_refinement_map(p, coarse)

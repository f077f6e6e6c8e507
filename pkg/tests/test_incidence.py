from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import posets
from nervus.complex import betti, coboundary_complex
from nervus.errors import MalformedInputError, ValidationError
from nervus.fractafold import cantor_context
from nervus.incidence import (ChainElement, IncidenceElement, PathAlgebraElement, chain_product, dd_vanishes,
                              hasse_epimorphism, incidence_unit, leibniz_defects, path_algebra, zapatrin_cohomology,
                              zapatrin_d, zapatrin_matrices)
from nervus.linalg import F2
from nervus.poset import Poset, order_complex, sorkin_quotient

CHAIN3 = Poset.from_relation("abc", [("a", "b"), ("b", "c")])
ANTICHAIN3 = Poset.from_relation("abc", [])
DIAMOND = Poset.from_relation("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


def e(k, p, q):
    return IncidenceElement.basis(k, p, q)


def ch(k, *xs):
    return ChainElement.basis(k, xs)


def elements(k, data, cls=IncidenceElement):
    basis = list(k.intervals()) if cls is IncidenceElement else [c for level in k.chains for c in level]
    coeffs = st.integers(-3, 3)
    chosen = data.draw(st.lists(st.sampled_from(basis), max_size=4))
    return cls(k, {b: data.draw(coeffs) for b in chosen})


class TestIncidenceAlgebra:
    def test_composition(self):
        assert e(CHAIN3, "a", "b") * e(CHAIN3, "b", "c") == e(CHAIN3, "a", "c")

    def test_mismatch_vanishes(self):
        assert not e(CHAIN3, "a", "b") * e(CHAIN3, "a", "b")

    def test_not_an_interval(self):
        with pytest.raises(ValidationError):
            e(CHAIN3, "c", "a")

    def test_posets_must_match(self):
        with pytest.raises(MalformedInputError):
            e(CHAIN3, "a", "b") * e(ANTICHAIN3, "a", "a")

    @settings(max_examples=60)
    @given(posets(5), st.data())
    def test_unit_and_associativity(self, k, data):
        u, v, w = (elements(k, data) for _ in range(3))
        one = incidence_unit(k)
        assert one * u == u == u * one
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w

    def test_field_gf2(self):
        x = IncidenceElement(CHAIN3, {("a", "b"): 1}, F2)
        assert not (x + x)


class TestPathAlgebra:
    def test_chain_basis(self):
        alg = path_algebra("abc", [("a", "b"), ("b", "c")])
        assert alg.basis == (("a",), ("b",), ("c",), ("a", "b"), ("b", "c"), ("a", "b", "c"))

    def test_edgeless(self):
        alg = path_algebra(range(4), [])
        assert alg.dimension == 4
        assert set(alg.table) == {(i, i) for i in range(4)}

    def test_diamond_has_ten_paths(self):
        assert path_algebra("abcd", DIAMOND.hasse_edges).dimension == 10

    def test_cycle_rejected(self):
        with pytest.raises(ValidationError):
            path_algebra("ab", [("a", "b"), ("b", "a")])

    @settings(max_examples=40)
    @given(posets(5), st.data())
    def test_path_product_associative(self, k, data):
        alg = path_algebra(k.elements, k.hasse_edges)
        pick = st.lists(st.sampled_from(alg.basis), max_size=3)
        u, v, w = (PathAlgebraElement(alg, {p: 1 for p in data.draw(pick)}) for _ in range(3))
        assert (u * v) * w == u * (v * w)


class TestHasseEpimorphism:
    def test_chain_is_bijective(self):
        h = hasse_epimorphism(CHAIN3)
        assert h.source.dimension == len(h.target_basis) == 6
        assert h.is_surjective()

    def test_diamond(self):
        h = hasse_epimorphism(DIAMOND)
        assert (h.source.dimension, len(h.target_basis)) == (10, 9)
        assert h.image(("a", "b", "d")) == h.image(("a", "c", "d")) == ("a", "d")
        assert h.is_multiplicative()

    def test_antichain_identity(self):
        h = hasse_epimorphism(ANTICHAIN3)
        assert [h.image(p) for p in h.source.basis] == [(x, x) for x in "abc"]

    @settings(max_examples=40)
    @given(posets(6))
    def test_surjective_and_multiplicative(self, k):
        h = hasse_epimorphism(k)
        assert h.is_surjective() and h.is_multiplicative()


class TestZapatrin:
    def test_middle_element(self):
        assert zapatrin_d(ch(CHAIN3, "b")) == ch(CHAIN3, "a", "b") - ch(CHAIN3, "b", "c")

    def test_maximal_chain_is_closed(self):
        assert not zapatrin_d(ch(CHAIN3, "a", "b", "c"))

    def test_dd_of_bottom(self):
        da = zapatrin_d(ch(CHAIN3, "a"))
        assert da == -ch(CHAIN3, "a", "b") - ch(CHAIN3, "a", "c")
        assert not zapatrin_d(da)

    def test_chain_products(self):
        assert ch(CHAIN3, "a", "b") * ch(CHAIN3, "b", "c") == ch(CHAIN3, "a", "b", "c")
        assert not ch(CHAIN3, "a", "b") * ch(CHAIN3, "a", "b")

    def test_leibniz_instance(self):
        u, v = ch(CHAIN3, "a", "b"), ch(CHAIN3, "b")
        lhs = zapatrin_d(u * v)
        rhs = zapatrin_d(u) * v - u * zapatrin_d(v)
        assert lhs == rhs == ch(CHAIN3, "a", "b", "c")

    def test_cohomology_examples(self):
        assert zapatrin_cohomology(CHAIN3) == (1, 0, 0)
        assert zapatrin_cohomology(ANTICHAIN3) == (3,)
        assert zapatrin_cohomology(sorkin_quotient(cantor_context(1)).poset) == (2, 0)

    @given(posets(6))
    def test_dd_zero(self, k):
        assert dd_vanishes(k) and dd_vanishes(k, F2)

    @settings(max_examples=30)
    @given(posets(5))
    def test_leibniz(self, k):
        assert leibniz_defects(k) == []

    @given(posets(6), st.data())
    def test_leibniz_on_combinations(self, k, data):
        u = elements(k, data, ChainElement)
        v = elements(k, data, ChainElement)
        for n in u.degrees():
            un = u.component(n)
            sign = 1 if n % 2 == 0 else -1
            assert zapatrin_d(un * v) == zapatrin_d(un) * v + (un * zapatrin_d(v)).scale(sign)

    @given(posets(6))
    def test_matches_order_complex_coboundary(self, k):
        oc = order_complex(k)
        assert oc.simplices == k.chains
        cob = coboundary_complex(oc)
        mats = zapatrin_matrices(k)
        assert mats.keys() == cob.maps.keys()
        assert all(mats[n] == cob.maps[n] for n in mats)
        assert zapatrin_cohomology(k) == betti(oc)

    def test_chain_must_be_strict(self):
        with pytest.raises(ValidationError):
            ch(CHAIN3, "b", "a")

    def test_coefficients_are_rational(self):
        x = ChainElement(CHAIN3, {("a",): Fraction(1, 2)})
        assert zapatrin_d(x).terms[("a", "b")] == Fraction(-1, 2)
        assert chain_product(x, ch(CHAIN3, "a", "c")).terms == {("a", "c"): Fraction(1, 2)}

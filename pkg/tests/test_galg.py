"""Group-algebra vectors: invariants, linear ops, translations, lifts."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tensorcanon import galg, perm
from tensorcanon.galg import GroupVector
from tensorcanon.perm import Perm

from conftest import random_vector


def vectors(n=3):
    from itertools import permutations
    perms = [Perm(m) for m in permutations(range(1, n + 1))]
    term = st.tuples(
        st.fractions(min_value=-5, max_value=5, max_denominator=4),
        st.sampled_from(perms))
    return st.lists(term, max_size=5).map(lambda tl: GroupVector(n, tl))


class TestInvariants:
    def test_terms_sorted_descending_no_zeros(self):
        v = GroupVector(3, [(Fraction(1), Perm((1, 2, 3))),
                            (Fraction(0), Perm((2, 1, 3))),
                            (Fraction(2), Perm((3, 2, 1)))])
        assert [p.map for _, p in v.terms] == [(3, 2, 1), (1, 2, 3)]

    def test_duplicates_merged(self):
        p = Perm((2, 1))
        v = GroupVector(2, [(Fraction(1), p), (Fraction(2), p)])
        assert v.terms == ((Fraction(3), p),)

    def test_cancelling_duplicates(self):
        p = Perm((2, 1))
        v = GroupVector(2, [(Fraction(2), p), (Fraction(-2), p)])
        assert v.is_zero()

    def test_degree_mismatch_rejected(self):
        with pytest.raises(ValueError):
            GroupVector(2, [(Fraction(1), Perm((1, 2, 3)))])

    def test_coeff_and_dict(self):
        p, q = Perm((2, 1)), Perm((1, 2))
        v = galg.add(galg.unit(p, 2), galg.unit(q, -3))
        assert v.coeff(p) == 2
        assert v.coeff(q) == -3
        assert v.as_dict() == {p: Fraction(2), q: Fraction(-3)}


class TestLinearOps:
    @given(vectors())
    def test_add_zero(self, v):
        assert galg.add(v, galg.zero(3)) == v

    @given(vectors())
    def test_add_negate(self, v):
        assert galg.add(v, galg.negate(v)).is_zero()

    @given(vectors(), vectors())
    def test_add_commutes(self, u, v):
        assert galg.add(u, v) == galg.add(v, u)

    @given(vectors(), vectors(), vectors())
    def test_add_associates(self, u, v, w):
        assert galg.add(galg.add(u, v), w) == galg.add(u, galg.add(v, w))

    @given(vectors())
    def test_scale_laws(self, v):
        assert galg.scale(1, v) == v
        assert galg.scale(0, v).is_zero()
        assert galg.scale(-1, v) == galg.negate(v)

    def test_unit_zero_coeff(self):
        assert galg.unit(Perm((2, 1)), 0).is_zero()


class TestSortCompressRenorm:
    def test_sort_preserves_multiset(self):
        p, q = Perm((1, 2)), Perm((2, 1))
        raw = GroupVector(2, ((Fraction(1), p), (Fraction(2), q)),
                          _normalized=True)
        s = galg.sort(raw)
        assert sorted(s.terms, key=str) == sorted(raw.terms, key=str)
        assert [t[1].map for t in s.terms] == [(2, 1), (1, 2)]

    def test_compress_zeros(self):
        p = Perm((2, 1))
        raw = GroupVector(2, ((Fraction(0), p),), _normalized=True)
        assert galg.compress(raw).is_zero()
        raw2 = GroupVector(2, ((Fraction(2), p), (Fraction(-2), p)),
                           _normalized=True)
        assert galg.compress(raw2).is_zero()

    @given(vectors())
    def test_compress_fixpoint(self, v):
        assert galg.compress(v) == v

    @given(vectors())
    def test_renorm(self, v):
        r = galg.renorm(v)
        if v.is_zero():
            assert r.is_zero()
            return
        from math import gcd
        nums = [c for c, _ in r.terms]
        assert all(c.denominator == 1 for c in nums)
        g = 0
        for c in nums:
            g = gcd(g, abs(c.numerator))
        assert g == 1
        assert nums[0] > 0
        # renorm is projective: scaling the input does not change it
        assert galg.renorm(galg.scale(Fraction(3, 7), v)) == r
        assert galg.renorm(r) == r


class TestTranslate:
    @given(vectors())
    def test_identity_translations(self, v):
        e = perm.identity(3)
        assert galg.translate_left(e, v) == v
        assert galg.translate_right(v, e) == v

    def test_translate_right_unit(self):
        q, p = Perm((2, 1, 3)), Perm((3, 1, 2))
        assert galg.translate_right(galg.unit(q), p) == galg.unit(
            perm.multiply(q, p))

    def test_translate_left_unit(self):
        q, p = Perm((2, 1, 3)), Perm((3, 1, 2))
        assert galg.translate_left(p, galg.unit(q)) == galg.unit(
            perm.multiply(p, q))

    @given(vectors())
    def test_translations_invertible(self, v):
        p = Perm((2, 3, 1))
        assert galg.translate_right(
            galg.translate_right(v, p), perm.inverse(p)) == v
        assert galg.translate_left(
            perm.inverse(p), galg.translate_left(p, v)) == v


class TestLift:
    def test_lift_right_zero(self):
        v = galg.unit(Perm((2, 1)))
        assert galg.lift_right(v, 0) == v

    def test_lift_right_unit(self):
        assert galg.lift_right(galg.unit(Perm((2, 1))), 1) == galg.unit(
            Perm((2, 1, 3)))

    def test_lift_left_unit(self):
        assert galg.lift_left(galg.unit(Perm((2, 1))), 1) == galg.unit(
            Perm((1, 3, 2)))

    @given(vectors())
    def test_lift_degree(self, v):
        assert galg.lift_right(v, 2).degree == 5
        assert galg.lift_left(v, 2).degree == 5


class TestLeading:
    def test_unit(self):
        p = Perm((2, 1))
        assert galg.leading(galg.unit(p)) == (Fraction(1), p)

    def test_zero_raises(self):
        with pytest.raises(ValueError):
            galg.leading(galg.zero(2))

    def test_maximal_map_wins(self):
        rng = random.Random(11)
        for _ in range(20):
            v = random_vector(rng, 4)
            if v.is_zero():
                continue
            _, p = galg.leading(v)
            assert p.map == max(q.map for _, q in v.terms)

import itertools

import pytest
from hypothesis import given

from andreadakis import words as W
from andreadakis.errors import NonUnit, ParameterMismatch
from andreadakis.magnus import (
    DepthReport, Series, gamma_depth, magnus_expand, series_inverse, series_mul,
)
from andreadakis.words import Word

from conftest import words, x


def S(n, D, d):
    return Series(n, D, d)


def sparse_magnus(w, D):
    """Oracle: multiply letter expansions with the generic sparse product."""
    out = Series.one(w.rank, D)
    for a in w.letters:
        i = abs(a)
        if a > 0:
            f = S(w.rank, D, {(): 1, (i,): 1})
        else:
            f = S(w.rank, D, {(i,) * k: (-1) ** k for k in range(D + 1)})
        out = series_mul(out, f)
    return out


class TestSeries:
    def test_mul(self):
        a = S(2, 2, {(): 1, (1,): 1})
        b = S(2, 2, {(): 1, (2,): 1})
        assert series_mul(a, b) == S(2, 2, {(): 1, (1,): 1, (2,): 1, (1, 2): 1})

    def test_mul_truncates(self):
        # (1+X1)(1-X1+X1X1) = 1 + X1^3, truncated at degree 2
        a = S(1, 2, {(): 1, (1,): 1})
        b = S(1, 2, {(): 1, (1,): -1, (1, 1): 1})
        assert series_mul(a, b) == Series.one(1, 2)

    def test_mul_unit(self):
        a = S(2, 3, {(): 1, (1, 2): 5, (2,): -3})
        assert series_mul(a, Series.one(2, 3)) == a

    def test_mismatch(self):
        with pytest.raises(ParameterMismatch):
            series_mul(Series.one(2, 3), Series.one(2, 4))

    def test_inverse(self):
        assert series_inverse(Series.one(2, 3)) == Series.one(2, 3)
        inv = series_inverse(S(1, 3, {(): 1, (1,): 1}))
        assert inv == S(1, 3, {(): 1, (1,): -1, (1, 1): 1, (1, 1, 1): -1})

    def test_non_unit(self):
        with pytest.raises(NonUnit):
            series_inverse(S(1, 3, {(): 2, (1,): 1}))

    def test_zero_and_overdegree_dropped(self):
        s = S(2, 2, {(): 1, (1,): 0, (1, 1, 1): 4})
        assert s.coeffs == {(): 1}

    def test_json_roundtrip(self):
        s = magnus_expand(Word(2, (1, -2, 1)), 4)
        assert Series.from_json(2, 4, s.to_json()) == s
        keys = [tuple(m) for m, _ in s.to_json()]
        assert keys == sorted(keys, key=lambda m: (len(m), m))


class TestMagnus:
    def test_generator(self):
        assert magnus_expand(x(1), 3) == S(2, 3, {(): 1, (1,): 1})

    def test_cancelled(self):
        assert magnus_expand(W.reduce([1, -1], 2), 3) == Series.one(2, 3)

    def test_commutator(self):
        mu = magnus_expand(W.commutator(x(1), x(2)), 2)
        assert mu == S(2, 2, {(): 1, (1, 2): 1, (2, 1): -1})

    @given(words(3, 10))
    def test_dense_matches_sparse_oracle(self, w):
        assert magnus_expand(w, 4) == sparse_magnus(w, 4)

    @given(words(2), words(2))
    def test_multiplicative(self, u, v):
        assert magnus_expand(u * v, 5) == series_mul(magnus_expand(u, 5), magnus_expand(v, 5))

    @given(words(3))
    def test_inverse(self, u):
        assert magnus_expand(~u, 4) == series_inverse(magnus_expand(u, 4))

    def test_big_coefficients_exact(self):
        # x1^200 has coefficient C(200, k) on X1^k
        from math import comb

        w = Word(1, (1,) * 200)
        mu = magnus_expand(w, 40)
        assert mu[(1,) * 40] == comb(200, 40)


class TestGammaDepth:
    def test_examples(self):
        c12 = W.commutator(x(1), x(2))
        assert gamma_depth(x(1), 4) == DepthReport(1)
        assert gamma_depth(c12, 4) == DepthReport(2)
        assert gamma_depth(W.commutator(c12, x(2)), 3) == DepthReport(3)

    def test_identity_marker(self):
        for D in range(1, 7):
            r = gamma_depth(Word.identity(2), D)
            assert r == DepthReport(D + 1, exact=False)
            assert str(r) == f">= {D + 1}"

    def test_beyond_truncation(self):
        c12 = W.commutator(x(1), x(2))
        assert gamma_depth(W.commutator(c12, x(2)), 2) == DepthReport(3, exact=False)

    @given(words(2, 5), words(2, 5))
    def test_filtration_property(self, u, v):
        D = 6
        du, dv = gamma_depth(u, D), gamma_depth(v, D)
        if du.exact and dv.exact:
            assert gamma_depth(W.commutator(u, v), D).value >= min(du.value + dv.value, D + 1)

    def test_residual_nilpotence_spot_check(self):
        # exhaustive over reduced words of length <= 5 in F_2, D = 5
        for length in range(1, 6):
            for letters in itertools.product((1, -1, 2, -2), repeat=length):
                if any(a == -b for a, b in zip(letters, letters[1:])):
                    continue
                assert gamma_depth(Word(2, letters), 5).exact

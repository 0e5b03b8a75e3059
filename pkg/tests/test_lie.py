import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from andreadakis import words as W
from andreadakis.errors import DepthExceedsTruncation, IdentityWord, InvalidModulus, NotLie, ZeroElement
from andreadakis.lie import (
    LieElement, LyndonTree, associative, bracket, center_kernel_rank, dsw_project,
    is_lyndon, leading_lie_part, lift_lie_to_word, lyndon_basis, lyndon_polynomial, lyndon_words,
    witt_rank,
)
from andreadakis.magnus import Series
from andreadakis.words import Word

from conftest import words, x


def brute_lyndon(n, c):
    """Oracle: filter all words by the rotation definition."""
    out = []
    for w in itertools.product(range(1, n + 1), repeat=c):
        if all(w < w[i:] + w[:i] for i in range(1, c)):
            out.append(w)
    return out


def E(n, word):
    return LieElement.basis_element(n, word)


class TestBasis:
    def test_examples(self):
        assert lyndon_basis(2, 2).labels() == ["[x1,x2]"]
        assert lyndon_basis(2, 3).labels() == ["[x1,[x1,x2]]", "[[x1,x2],x2]"]
        assert len(lyndon_basis(1, 2)) == 0

    @pytest.mark.parametrize("n,c", [(n, c) for n in (1, 2, 3) for c in range(1, 7)])
    def test_duval_matches_brute_force(self, n, c):
        assert list(lyndon_words(n, c)) == brute_lyndon(n, c)

    def test_witt_examples(self):
        assert witt_rank(2, 1) == 2
        assert witt_rank(2, 5) == len(brute_lyndon(2, 5)) == 6
        assert witt_rank(3, 2) == len(brute_lyndon(3, 2)) == 3

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_witt_matches_basis(self, n):
        for c in range(1, 9):
            assert len(lyndon_basis(n, c)) == witt_rank(n, c)

    def test_tree(self):
        t = LyndonTree((1, 2, 2))
        assert t.nested() == ((1, 2), 2)
        assert str(t) == "[[x1,x2],x2]"
        with pytest.raises(ValueError):
            LyndonTree((2, 1))

    def test_basis_polynomials_are_triangular(self):
        for n in (2, 3):
            for c in range(1, 7):
                for w in lyndon_words(n, c):
                    p = lyndon_polynomial(w)
                    assert min(p) == w and p[w] == 1


def random_lie(rng, n, c, bound=3):
    return LieElement(n, c, [rng.randint(-bound, bound) for _ in range(witt_rank(n, c))])


def assoc_bracket(a, b):
    pa, pb = associative(a), associative(b)
    out = {}
    for (m1, c1), (m2, c2) in itertools.product(pa.items(), pb.items()):
        out[m1 + m2] = out.get(m1 + m2, 0) + c1 * c2
        out[m2 + m1] = out.get(m2 + m1, 0) - c1 * c2
    return {m: c for m, c in out.items() if c}


class TestBracket:
    def test_examples(self):
        x1, x2 = LieElement.generator(2, 1), LieElement.generator(2, 2)
        assert bracket(x1, x1).is_zero()
        assert bracket(x1, x2) == E(2, (1, 2))
        assert bracket(x2, x1) == -E(2, (1, 2))

    def test_self_bracket_vanishes_on_basis(self):
        for w in lyndon_words(3, 3):
            assert bracket(E(3, w), E(3, w)).is_zero()

    @pytest.mark.parametrize("n", [2, 3])
    def test_rewriting_matches_associative_commutator(self, n):
        rng = random.Random(n)
        for _ in range(60):
            a = random_lie(rng, n, rng.randint(1, 3))
            b = random_lie(rng, n, rng.randint(1, 3))
            assert associative(bracket(a, b)) == assoc_bracket(a, b)

    @given(st.integers(0, 10**6))
    def test_jacobi(self, seed):
        rng = random.Random(seed)
        a, b, c = (random_lie(rng, 3, rng.randint(1, 2)) for _ in range(3))
        total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        assert total.is_zero()


class TestDSW:
    def test_commutator(self):
        assert dsw_project({(1, 2): 1, (2, 1): -1}, 2, 2) == E(2, (1, 2))

    def test_zero(self):
        assert dsw_project({}, 2, 3) == LieElement.zero(2, 3)

    def test_not_lie(self):
        with pytest.raises(NotLie):
            dsw_project({(1, 2): 1}, 2, 2)

    def test_accepts_series(self):
        s = Series(2, 2, {(1, 2): 1, (2, 1): -1})
        assert dsw_project(s, 2, 2) == E(2, (1, 2))

    @given(st.integers(0, 10**6))
    def test_roundtrip(self, seed):
        rng = random.Random(seed)
        n, c = rng.choice((2, 3)), rng.randint(1, 5)
        v = random_lie(rng, n, c)
        assert dsw_project(associative(v), n, c) == v


class TestLeadingPart:
    def test_examples(self):
        c12 = W.commutator(x(1), x(2))
        assert leading_lie_part(x(1) * x(2), 4) == (1, LieElement(2, 1, (1, 1)))
        assert leading_lie_part(c12, 4) == (2, E(2, (1, 2)))
        assert leading_lie_part(W.commutator(c12, x(2)), 4) == (3, E(2, (1, 2, 2)))

    def test_errors(self):
        with pytest.raises(IdentityWord):
            leading_lie_part(Word.identity(2), 3)
        with pytest.raises(DepthExceedsTruncation):
            leading_lie_part(W.commutator(x(1), x(2)), 1)

    @given(words(3, 4), words(3, 4))
    def test_group_compatibility(self, u, v):
        D = 6
        if not u or not v:
            return
        cu, lu = leading_lie_part(u, D)
        cv, lv = leading_lie_part(v, D)
        b = bracket(lu, lv)
        if cu + cv <= D and not b.is_zero():
            assert leading_lie_part(W.commutator(u, v), D) == (cu + cv, b)


class TestLift:
    def test_basis_element(self):
        assert lift_lie_to_word(E(2, (1, 2))) == W.commutator(x(1), x(2))

    def test_double(self):
        assert lift_lie_to_word(2 * E(2, (1, 2))) == W.power(W.commutator(x(1), x(2)), 2)

    def test_sum(self):
        v = E(2, (1, 1, 2)) + E(2, (1, 2, 2))
        word = lift_lie_to_word(v)
        c12 = W.commutator(x(1), x(2))
        assert word == W.commutator(x(1), c12) * W.commutator(c12, x(2))
        assert leading_lie_part(word, 4) == (3, v)

    def test_zero(self):
        with pytest.raises(ZeroElement):
            lift_lie_to_word(LieElement.zero(2, 2))

    @given(st.integers(0, 10**6))
    def test_roundtrip(self, seed):
        rng = random.Random(seed)
        n, c = rng.choice((2, 3)), rng.randint(1, 4)
        v = random_lie(rng, n, c, bound=2)
        if not v.is_zero():
            assert leading_lie_part(lift_lie_to_word(v), 5) == (c, v)


class TestCentre:
    def test_examples(self):
        assert center_kernel_rank(2, 1, 0) == 0
        assert center_kernel_rank(2, 2, 2) == 0
        assert center_kernel_rank(3, 3, 0) == 0

    def test_rank_one_has_centre(self):
        assert center_kernel_rank(1, 1, 0) == 1

    def test_invalid_modulus(self):
        with pytest.raises(InvalidModulus):
            center_kernel_rank(2, 2, 4)
        with pytest.raises(InvalidModulus):
            center_kernel_rank(2, 2, -3)

    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("m", [0, 2, 3, 5])
    def test_centreless(self, n, m):
        for d in range(1, 6):
            assert center_kernel_rank(n, d, m) == 0


def test_is_lyndon():
    assert is_lyndon((1, 1, 2)) and not is_lyndon((1, 2, 1)) and not is_lyndon((1, 1))
